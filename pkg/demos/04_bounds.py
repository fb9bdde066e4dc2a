# Bracketing nonnegative rank
#
# Lower bounds: ordinary rank, and the rectangle covering number of the
# support (each rank-one nonnegative summand is supported on a rectangle).
# Upper bounds: verified certificates only.

from nnrank import build_A, build_V, cert_A, maximal_rectangles, nnr_bracket, support
from nnrank.certificates import cert_trivial_rows

V = build_V()
for r in maximal_rectangles(support(V)):
    print("maximal rectangle", r.rowset, "x", r.colset)
rep = nnr_bracket(V, cert_trivial_rows(V))
print("V: rank", rep.rank_lb, "cover", rep.rectangle_cover_lb, "bracket", rep.bracket)

# For A the cover bound meets the certificate, so the real nonnegative
# rank of A is exactly 19.
rep = nnr_bracket(build_A(), cert_A())
print("A: rank", rep.rank_lb, "cover", rep.rectangle_cover_lb, "bracket", rep.bracket)
for r in rep.cover:
    print("   ", r.rowset, "x", r.colset)
