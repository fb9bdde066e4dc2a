"""Rank-one factorization certificates and their exact verifier.

A certificate is a list of pairs ``(u, v)`` whose outer products are
claimed to sum to a target matrix.  :func:`verify` checks that claim with
exact arithmetic and checks every entry of every ``u`` and ``v`` is
nonnegative.  There is no tolerance parameter anywhere in this module.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from . import constructions as cons
from .field import (
    FieldDescriptor,
    FieldError,
    QuadraticNumber,
    format_scalar,
    parse_scalar,
    sign,
    to_field,
)
from .matrix import ExactMatrix, infer_field

__all__ = [
    "CertificateError",
    "RankOneFactor",
    "Certificate",
    "VerificationReport",
    "verify",
    "cert_M1",
    "cert_B",
    "cert_A",
    "cert_trivial_rows",
    "serialize",
    "deserialize",
]


class CertificateError(ValueError):
    pass


@dataclass(frozen=True)
class RankOneFactor:
    u: tuple
    v: tuple
    label: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "u", tuple(self.u))
        object.__setattr__(self, "v", tuple(self.v))

    def is_nonnegative(self) -> bool:
        return all(sign(x) >= 0 for x in self.u) and all(sign(x) >= 0 for x in self.v)

    def embedded(self, rows: Sequence[int], cols: Sequence[int], shape: tuple[int, int],
                 label: str | None = None) -> RankOneFactor:
        """Lift to a larger matrix: u lives on ``rows``, v on ``cols`` (1-based)."""
        m, n = shape
        zero = 0 * self.u[0]
        u = [zero] * m
        v = [zero] * n
        for i, x in zip(rows, self.u):
            u[i - 1] = x
        for j, x in zip(cols, self.v):
            v[j - 1] = x
        return RankOneFactor(u, v, label if label is not None else self.label)


@dataclass(frozen=True)
class Certificate:
    field: FieldDescriptor
    m: int
    n: int
    factors: tuple = ()

    def __post_init__(self):
        facs = tuple(self.factors)
        object.__setattr__(self, "factors", facs)
        for k, f in enumerate(facs, 1):
            if len(f.u) != self.m or len(f.v) != self.n:
                raise CertificateError(
                    f"factor {k} has shape {len(f.u)}x{len(f.v)}, expected {self.m}x{self.n}")

    @classmethod
    def from_factors(cls, factors: Sequence[RankOneFactor]) -> Certificate:
        if not factors:
            raise CertificateError("need at least one factor to infer dimensions")
        fld = infer_field(x for f in factors for x in (*f.u, *f.v))
        normalized = [RankOneFactor([to_field(x, fld) for x in f.u],
                                    [to_field(x, fld) for x in f.v], f.label) for f in factors]
        return cls(fld, len(factors[0].u), len(factors[0].v), tuple(normalized))

    @property
    def labels(self) -> list[str | None]:
        return [f.label for f in self.factors]

    def __len__(self) -> int:
        return len(self.factors)

    def without(self, k: int) -> Certificate:
        """Drop factor ``k`` (1-based)."""
        facs = list(self.factors)
        del facs[k - 1]
        return Certificate(self.field, self.m, self.n, tuple(facs))

    def total(self) -> ExactMatrix:
        """Exact sum of the outer products."""
        z = to_field(0, self.field)
        acc = [[z] * self.n for _ in range(self.m)]
        for f in self.factors:
            for i, x in enumerate(f.u):
                if not x:
                    continue
                row = acc[i]
                for j, y in enumerate(f.v):
                    if y:
                        row[j] = row[j] + x * y
        return ExactMatrix(acc, self.field)


@dataclass(frozen=True)
class VerificationReport:
    sum_matches: bool
    all_nonnegative: bool
    factor_count: int
    first_mismatch: tuple | None = None
    negative_factors: tuple = ()

    @property
    def valid(self) -> bool:
        return self.sum_matches and self.all_nonnegative

    def summary(self) -> str:
        parts = [f"{self.factor_count} factors",
                 "sum exact" if self.sum_matches else "sum MISMATCH",
                 "all nonnegative" if self.all_nonnegative else "NEGATIVE entries"]
        text = ", ".join(parts)
        if self.first_mismatch is not None:
            i, j, want, got = self.first_mismatch
            text += f"; first mismatch at ({i},{j}): expected {want}, got {got}"
        return text

    def to_json_obj(self) -> dict:
        mm = None
        if self.first_mismatch is not None:
            i, j, want, got = self.first_mismatch
            mm = {"row": i, "col": j, "expected": want, "got": got}
        return {
            "valid": self.valid,
            "sum_matches": self.sum_matches,
            "all_nonnegative": self.all_nonnegative,
            "factor_count": self.factor_count,
            "first_mismatch": mm,
            "negative_factors": list(self.negative_factors),
        }


def _common_field(a: FieldDescriptor, b: FieldDescriptor) -> FieldDescriptor:
    if a == b:
        return a
    if a.is_rational:
        return b
    if b.is_rational:
        return a
    raise CertificateError(f"no common field for {a} and {b}")


def verify(cert: Certificate, target: ExactMatrix) -> VerificationReport:
    if (cert.m, cert.n) != target.shape:
        raise CertificateError(f"certificate is {cert.m}x{cert.n} but target is {target.rows}x{target.cols}")
    fld = _common_field(cert.field, target.field)
    total = cert.total().with_field(fld)
    tgt = target.with_field(fld)
    mismatch = None
    for i in range(1, tgt.rows + 1):
        for j in range(1, tgt.cols + 1):
            if total[i, j] != tgt[i, j]:
                mismatch = (i, j, format_scalar(tgt[i, j]), format_scalar(total[i, j]))
                break
        if mismatch:
            break
    negative = tuple(k for k, f in enumerate(cert.factors, 1) if not f.is_nonnegative())
    return VerificationReport(mismatch is None, not negative, len(cert.factors), mismatch, negative)


def _require_valid(cert: Certificate, target: ExactMatrix, what: str) -> Certificate:
    report = verify(cert, target)
    if not report.valid:
        raise AssertionError(f"{what} failed self-verification: {report.summary()}")
    return cert


def cert_M1() -> Certificate:
    """Three nonnegative factors for C(alpha, alpha, alpha, alpha, sqrt 2) over Q(sqrt 2).

    Rows of C are combinations of g1 = (0,1,0,0,alpha), g2 = (0,0,1,alpha,0),
    g3 = (sqrt2,2,sqrt2,0,0):

        row1 = (2-sqrt2) g2 + g3
        row2 = (2-sqrt2) g1 + (sqrt2/2) g3
        row3 = g2,  row4 = g1,  row5 = g1 + g2

    using (2 - sqrt2) * alpha = 1.
    """
    a, r2 = cons.alpha(), cons.sqrt2()
    one, zero = QuadraticNumber(1), QuadraticNumber(0)
    t = 2 - r2
    g1 = (zero, one, zero, zero, a)
    g2 = (zero, zero, one, a, zero)
    g3 = (r2, QuadraticNumber(2), r2, zero, zero)
    factors = [
        RankOneFactor((zero, t, zero, one, one), g1, "M1#1"),
        RankOneFactor((t, zero, one, zero, one), g2, "M1#2"),
        RankOneFactor((one, r2 / 2, zero, zero, zero), g3, "M1#3"),
    ]
    return _require_valid(Certificate.from_factors(factors), cons.M1(), "cert_M1")


def cert_B(*alphas, label: str = "B") -> Certificate:
    """Four factors for B(a, ..., a) with 0 <= a <= 1.

    The first row equals a*row2 + (1-a)*row3 + a*row4 + (1-a)*row5, so
    factor j is row_j(B) placed against e_j + c_j e_1.
    """
    if len(alphas) == 1 and isinstance(alphas[0], (list, tuple)):
        alphas = tuple(alphas[0])
    if not alphas:
        raise CertificateError("cert_B needs at least one parameter")
    a = alphas[0]
    if any(x != a for x in alphas):
        raise CertificateError("cert_B requires all parameters equal")
    if sign(a) < 0 or sign(1 - a) < 0:
        raise CertificateError(f"cert_B requires 0 <= alpha <= 1, got {format_scalar(a)}")
    B = cons.build_B(*alphas)
    zero, one = 0 * a, 0 * a + 1
    coeffs = (a, 1 - a, a, 1 - a)
    factors = []
    for j, c in zip(range(2, 6), coeffs):
        u = [zero] * 5
        u[0] = c
        u[j - 1] = one
        factors.append(RankOneFactor(u, B.row(j), f"{label}#{j - 1}"))
    return _require_valid(Certificate.from_factors(factors), B, "cert_B")


def cert_trivial_rows(M: ExactMatrix, label: str = "row") -> Certificate:
    """One factor per nonzero row: e_i against row_i.  Valid for any nonnegative M."""
    zero = to_field(0, M.field)
    one = to_field(1, M.field)
    factors = []
    for i in range(1, M.rows + 1):
        r = M.row(i)
        if not any(r):
            continue
        u = [zero] * M.rows
        u[i - 1] = one
        factors.append(RankOneFactor(u, r, f"{label}#{i}"))
    return Certificate(M.field, M.rows, M.cols, tuple(factors))


GREEN = (1, 2, 3, 4, 5)


def cert_A() -> Certificate:
    """19 nonnegative rank-one factors over Q(sqrt 2) summing exactly to A.

    Three come from M1 on the green block, four from each of the B-blocks
    M2, M3, M3, M4.
    """
    shape = (21, 21)
    factors = [f.embedded(GREEN, GREEN, shape) for f in cert_M1().factors]
    for blk in cons.block_layout():
        sub = cert_B(*blk.alphas, label=blk.name)
        factors += [f.embedded(blk.rows, blk.cols, shape) for f in sub.factors]
    return _require_valid(Certificate.from_factors(factors), cons.build_A(), "cert_A")


# -- JSON -------------------------------------------------------------------

def serialize(cert: Certificate, indent: int | None = None) -> bytes:
    doc = {
        "field": cert.field.tag,
        "m": cert.m,
        "n": cert.n,
        "factors": [
            {"label": f.label, "u": [format_scalar(x) for x in f.u], "v": [format_scalar(x) for x in f.v]}
            for f in cert.factors
        ],
    }
    return json.dumps(doc, indent=indent).encode()


def deserialize(data: bytes | str) -> Certificate:
    """Parse certificate JSON.  Signs are not checked here; that is verify's job."""
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise CertificateError(f"malformed certificate JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise CertificateError("certificate document must be a JSON object")
    for key in ("field", "m", "n", "factors"):
        if key not in doc:
            raise CertificateError(f"certificate document is missing field {key!r}")
    try:
        fld = FieldDescriptor.from_tag(doc["field"])
    except FieldError as exc:
        raise CertificateError(f"field: {exc}") from exc
    m, n = doc["m"], doc["n"]
    factors = []
    for k, f in enumerate(doc["factors"], 1):
        for key in ("u", "v"):
            if key not in f:
                raise CertificateError(f"factors[{k}] is missing field {key!r}")
        if len(f["u"]) != m or len(f["v"]) != n:
            raise CertificateError(f"factors[{k}] has shape {len(f['u'])}x{len(f['v'])}, expected {m}x{n}")
        try:
            u = [parse_scalar(s, fld) for s in f["u"]]
            v = [parse_scalar(s, fld) for s in f["v"]]
        except FieldError as exc:
            raise CertificateError(f"factors[{k}]: {exc}") from exc
        factors.append(RankOneFactor(u, v, f.get("label")))
    return Certificate(fld, m, n, tuple(factors))
