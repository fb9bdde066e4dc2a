import json
from fractions import Fraction

import pytest

from nnrank.certificates import (
    Certificate,
    CertificateError,
    RankOneFactor,
    cert_A,
    cert_B,
    cert_M1,
    cert_trivial_rows,
    deserialize,
    serialize,
    verify,
)
from nnrank.constructions import M1, alpha, build_A, build_B, build_V, sqrt2
from nnrank.field import QUADRATIC2, QuadraticNumber, quad_sign
from nnrank.matrix import ExactMatrix

Q = QuadraticNumber


@pytest.fixture(scope="module")
def certA():
    return cert_A()


def test_cert_A_valid(certA):
    rep = verify(certA, build_A())
    assert rep.valid and rep.factor_count == 19
    assert certA.field == QUADRATIC2


@pytest.mark.parametrize("k", range(1, 20))
def test_leave_one_out_breaks_sum(certA, k):
    rep = verify(certA.without(k), build_A())
    assert not rep.sum_matches and rep.first_mismatch is not None


def test_single_factor():
    cert = Certificate.from_factors([RankOneFactor([1, 1], [1, 1])])
    rep = verify(cert, ExactMatrix([[1, 1], [1, 1]]))
    assert rep.valid and rep.factor_count == 1


def test_negative_entries_flagged():
    # (1 - sqrt2) * (-1) + ... sums fine but the factors are not nonnegative
    f1 = RankOneFactor([Q(1, -1)], [Q(-1)])
    f2 = RankOneFactor([Q(0, 1)], [Q(1)])
    rep = verify(Certificate.from_factors([f1, f2]), ExactMatrix([[Q(-1, 2)]]))
    assert rep.sum_matches and not rep.all_nonnegative and not rep.valid
    assert rep.negative_factors == (1,)


def test_dimension_and_field_errors():
    cert = cert_trivial_rows(build_V())
    with pytest.raises(CertificateError):
        verify(cert, build_A())
    with pytest.raises(CertificateError):
        Certificate(QUADRATIC2, 2, 2, (RankOneFactor([1], [1, 1]),))
    c3 = Certificate.from_factors([RankOneFactor([Q(1, 0, 3)], [Q(1, 0, 3)])])
    with pytest.raises(CertificateError):
        verify(c3, ExactMatrix([[Q(1, 0, 2)]]))


def test_cert_M1():
    cert = cert_M1()
    rep = verify(cert, M1())
    assert rep.valid and rep.factor_count == 3
    a = alpha()
    gens = [f.v for f in cert.factors]
    assert gens == [(0, 1, 0, 0, a), (0, 0, 1, a, 0), (sqrt2(), 2, sqrt2(), 0, 0)]
    # coefficient columns, read row by row
    coeff = [[f.u[i] for f in cert.factors] for i in range(5)]
    assert coeff == [[0, 2 - sqrt2(), 1], [2 - sqrt2(), 0, sqrt2() / 2], [0, 1, 0], [1, 0, 0], [1, 1, 0]]
    assert (2 - sqrt2()) * a == 1
    assert all(quad_sign(x) >= 0 for f in cert.factors for x in (*f.u, *f.v))


def test_cert_B_quadratic():
    a = alpha()
    rep = verify(cert_B(2 - a, 2 - a), build_B(2 - a, 2 - a))
    assert rep.valid and rep.factor_count == 4


def test_cert_B_coefficients():
    cert = cert_B(0)
    assert [f.u[0] for f in cert.factors] == [0, 1, 0, 1]
    t = Fraction(1, 3)
    assert [f.u[0] for f in cert_B(t, t, t).factors] == [t, 1 - t, t, 1 - t]


@pytest.mark.parametrize("bad", [(2,), (Fraction(1, 2), Fraction(1, 3)), (Q(0, -1),), (Q(2, -1), Q(2, 1))])
def test_cert_B_rejects(bad):
    with pytest.raises(CertificateError):
        cert_B(*bad)


def test_cert_A_labels_and_support(certA):
    labels = certA.labels
    assert labels[:3] == ["M1#1", "M1#2", "M1#3"]
    assert sum(1 for l in labels if l.startswith("M4#")) == 4
    allowed = {1, 18, 19, 20, 21}
    for f in certA.factors:
        if f.label.startswith("M4#"):
            assert {i + 1 for i, x in enumerate(f.u) if x} <= allowed
            assert {j + 1 for j, x in enumerate(f.v) if x} <= allowed


def test_cert_A_irrational_or_local(certA):
    from nnrank.constructions import block_layout
    blocks = [((1, 2, 3, 4, 5), (1, 2, 3, 4, 5))] + [(b.rows, b.cols) for b in block_layout()]
    for f in certA.factors:
        irrational = any(x.b != 0 for x in (*f.u, *f.v))
        rows = {i + 1 for i, x in enumerate(f.u) if x}
        cols = {j + 1 for j, x in enumerate(f.v) if x}
        local = any(rows <= set(r) and cols <= set(c) for r, c in blocks)
        assert irrational or local


def test_scaling_invariance(certA):
    A = build_A()
    for k, t in [(0, Q(3)), (5, Q(1, 1)), (18, Q(Fraction(2, 7), Fraction(1, 9)))]:
        facs = list(certA.factors)
        f = facs[k]
        facs[k] = RankOneFactor([t * x for x in f.u], [x / t for x in f.v], f.label)
        assert verify(Certificate(certA.field, 21, 21, tuple(facs)), A).valid


def test_trivial_rows_certificate():
    cert = cert_trivial_rows(build_V())
    assert len(cert) == 4 and verify(cert, build_V()).valid


def test_serialize_roundtrip(certA):
    data = serialize(certA)
    back = deserialize(data)
    assert back == certA
    assert serialize(back) == data
    doc = json.loads(data)
    assert doc["field"] == "Q(sqrt 2)" and doc["m"] == 21 and len(doc["factors"]) == 19


def test_negative_entry_still_deserializes():
    doc = {"field": "Q", "m": 1, "n": 1, "factors": [{"label": "x#1", "u": ["-1"], "v": ["-1"]}]}
    cert = deserialize(json.dumps(doc))
    rep = verify(cert, ExactMatrix([[1]]))
    assert rep.sum_matches and not rep.all_nonnegative


def test_deserialize_errors():
    with pytest.raises(CertificateError, match="factors"):
        deserialize('{"field": "Q", "m": 1, "n": 1}')
    with pytest.raises(CertificateError, match="malformed"):
        deserialize('{"field": "Q", "m": 1, "n"')
    with pytest.raises(CertificateError, match="factors\\[1\\]"):
        deserialize('{"field": "Q", "m": 1, "n": 1, "factors": [{"u": ["1"], "v": ["x"]}]}')
    with pytest.raises(CertificateError, match="shape"):
        deserialize('{"field": "Q", "m": 2, "n": 1, "factors": [{"u": ["1"], "v": ["1"]}]}')
    with pytest.raises(CertificateError, match="'v'"):
        deserialize('{"field": "Q", "m": 1, "n": 1, "factors": [{"u": ["1"]}]}')


def test_verify_embeds_rational_target():
    # an integer target checked against a Q(sqrt 2) certificate
    cert = Certificate.from_factors([RankOneFactor([Q(0, 1)], [Q(0, 1)])])
    assert verify(cert, ExactMatrix([[2]])).valid
