import random
from itertools import combinations

import numpy as np
import pytest
from scipy.optimize import Bounds, LinearConstraint, milp

from nnrank.bounds import (
    PatternTooLarge,
    Rectangle,
    SupportPattern,
    brute_force_cover_number,
    maximal_rectangles,
    minimum_rectangle_cover,
    nnr_bracket,
    rectangle_cover_number,
    support,
)
from nnrank.certificates import CertificateError, cert_A, cert_trivial_rows
from nnrank.constructions import build_A, build_C, build_V
from nnrank.field import QuadraticNumber
from nnrank.matrix import ExactMatrix, identity, zeros


def brute_maximal_rectangles(p: SupportPattern):
    """Oracle: every nonempty row subset, its common columns, kept if closed."""
    out = set()
    for k in range(1, p.rows + 1):
        for rows in combinations(range(1, p.rows + 1), k):
            cols = tuple(j for j in range(1, p.cols + 1) if all(p[i, j] for i in rows))
            if not cols:
                continue
            closure = tuple(i for i in range(1, p.rows + 1) if all(p[i, j] for j in cols))
            if closure == rows:
                out.add(Rectangle(rows, cols))
    return sorted(out)


def random_pattern(rng, m, n, density):
    return SupportPattern.from_lists([[rng.random() < density for _ in range(n)] for _ in range(m)])


def test_support_examples():
    p = support(build_V())
    assert p.count() == 8
    assert p.cells() == {(1, 1), (1, 2), (2, 2), (2, 3), (3, 3), (3, 4), (4, 1), (4, 4)}
    assert support(zeros(3, 3)).count() == 0
    A = build_A()
    assert support(A).cells() == {(i, j) for i in range(1, 22) for j in range(1, 22) if A[i, j] != 0}
    assert support(ExactMatrix([[QuadraticNumber(1, -1), 0]])).cells() == {(1, 1)}


def test_maximal_rectangles_V():
    got = maximal_rectangles(support(build_V()))
    expected = sorted([
        Rectangle((1,), (1, 2)), Rectangle((2,), (2, 3)), Rectangle((3,), (3, 4)), Rectangle((4,), (1, 4)),
        Rectangle((1, 4), (1,)), Rectangle((1, 2), (2,)), Rectangle((2, 3), (3,)), Rectangle((3, 4), (4,)),
    ])
    assert got == expected
    assert got == brute_maximal_rectangles(support(build_V()))


def test_maximal_rectangles_small():
    assert maximal_rectangles(SupportPattern.from_lists([[1, 1], [1, 1]])) == [Rectangle((1, 2), (1, 2))]
    assert maximal_rectangles(support(identity(3))) == [Rectangle((i,), (i,)) for i in (1, 2, 3)]
    assert maximal_rectangles(support(zeros(2, 2))) == []


def test_maximal_rectangles_match_brute_force():
    rng = random.Random(1)
    for _ in range(80):
        p = random_pattern(rng, rng.randint(1, 7), rng.randint(1, 7), rng.choice([0.3, 0.5, 0.8]))
        rects = maximal_rectangles(p)
        assert rects == brute_maximal_rectangles(p)
        assert len(set(rects)) == len(rects)


def test_cover_number_examples():
    assert rectangle_cover_number(support(build_V())) == 4
    assert brute_force_cover_number(support(build_V())) == 4
    assert rectangle_cover_number(SupportPattern.from_lists([[1] * 5] * 3)) == 1
    assert rectangle_cover_number(support(identity(4))) == 4
    assert rectangle_cover_number(support(zeros(2, 3))) == 0


def test_cover_is_a_cover():
    p = support(build_A())
    cover = minimum_rectangle_cover(p)
    assert frozenset().union(*(r.cells() for r in cover)) == p.cells()
    assert all(r.cells() <= p.cells() for r in cover)


def test_branch_and_bound_matches_brute_force():
    rng = random.Random(2)
    checked = 0
    while checked < 60:
        p = random_pattern(rng, rng.randint(2, 6), rng.randint(2, 6), rng.choice([0.4, 0.6, 0.75]))
        if len(maximal_rectangles(p)) > 10:
            continue
        assert rectangle_cover_number(p) == brute_force_cover_number(p)
        checked += 1


def test_cover_number_permutation_and_transpose_invariant():
    rng = random.Random(3)
    for _ in range(30):
        m, n = rng.randint(2, 7), rng.randint(2, 7)
        p = random_pattern(rng, m, n, 0.5)
        rc = rectangle_cover_number(p)
        assert rectangle_cover_number(p.transpose()) == rc
        rows = list(p.bits)
        rng.shuffle(rows)
        perm = list(range(n))
        rng.shuffle(perm)
        q = SupportPattern.from_lists([[r[j] for j in perm] for r in rows])
        assert rectangle_cover_number(q) == rc


def test_cover_deterministic():
    p = support(build_A())
    assert minimum_rectangle_cover(p) == minimum_rectangle_cover(p)


def test_cover_number_of_A_matches_ilp():
    p = support(build_A())
    rects = maximal_rectangles(p)
    cells = sorted(p.cells())
    incidence = np.array([[1 if c in r.cells() else 0 for r in rects] for c in cells])
    res = milp(np.ones(len(rects)), constraints=LinearConstraint(incidence, lb=1),
               integrality=np.ones(len(rects)), bounds=Bounds(0, 1))
    assert res.success
    assert rectangle_cover_number(p) == round(res.fun) == 19


def test_size_guard():
    p = SupportPattern.from_lists([[1] * 25])
    with pytest.raises(PatternTooLarge, match="numeric"):
        maximal_rectangles(p)
    with pytest.raises(PatternTooLarge):
        rectangle_cover_number(p.transpose())


def test_bracket_V():
    rep = nnr_bracket(build_V(), cert_trivial_rows(build_V()))
    assert (rep.rank_lb, rep.rectangle_cover_lb, rep.certificate_ub) == (3, 4, 4)
    assert rep.bracket == (4, 4) and rep.decided


def test_bracket_A():
    rep = nnr_bracket(build_A(), cert_A())
    assert rep.rank_lb == 17
    assert rep.rectangle_cover_lb == 19
    assert rep.bracket == (19, 19)


def test_bracket_C_without_certificate():
    rep = nnr_bracket(build_C(1, 1, 1, 1, 1))
    assert rep.rank_lb >= 3
    assert rep.certificate_ub is None and rep.bracket[1] is None and not rep.decided


def test_bracket_large_matrix_skips_cover():
    rep = nnr_bracket(identity(25))
    assert rep.rank_lb == 25 and rep.rectangle_cover_lb is None


def test_bracket_rejects_bad_certificate():
    with pytest.raises(CertificateError):
        nnr_bracket(build_A(), cert_A().without(3))


def test_lower_bounds_below_certificates():
    rng = random.Random(4)
    for _ in range(25):
        m, n = rng.randint(1, 6), rng.randint(1, 6)
        M = ExactMatrix([[rng.choice([0, 0, 1, 2]) for _ in range(n)] for _ in range(m)])
        if M.is_zero():
            continue
        cert = cert_trivial_rows(M)
        rep = nnr_bracket(M, cert)
        assert rep.rank_lb <= len(cert) and rep.rectangle_cover_lb <= len(cert)
