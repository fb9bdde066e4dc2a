# Certificates: 19 nonnegative rank-one matrices summing exactly to A
#
# A certificate is a list of (u, v) pairs.  verify() adds up the outer
# products with exact arithmetic and checks that every entry of every u
# and v is nonnegative.  There is no tolerance anywhere.

from nnrank import build_A, cert_A, cert_M1, verify, M1
from nnrank.certificates import serialize

cert = cert_M1()
print("M1:", verify(cert, M1()).summary())
for f in cert.factors:
    print("  ", f.label, [str(x) for x in f.u], "x", [str(x) for x in f.v])

A = build_A()
cert = cert_A()
report = verify(cert, A)
print("A: ", report.summary())
print("labels:", cert.labels)

# Dropping any factor breaks the sum.
broken = [k for k in range(1, 20) if not verify(cert.without(k), A).sum_matches]
print("leave-one-out failures:", len(broken), "of 19")

# The JSON form is what `nnrank verify` reads.
print(serialize(cert)[:160].decode(), "...")
