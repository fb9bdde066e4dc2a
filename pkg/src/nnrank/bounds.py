"""Exact lower bounds on nonnegative rank and [lower, upper] brackets.

Two lower bounds are available: the ordinary rank, and the rectangle
covering number (boolean rank) of the support.  Each factor of a
nonnegative factorization is supported on a combinatorial rectangle that
lies inside the support of the target, and those rectangles cover the
support, so both numbers are lower bounds.  Upper bounds come only from
verified certificates.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import ceil

from .certificates import Certificate, CertificateError, verify
from .field import sign
from .matrix import ExactMatrix, rank

__all__ = [
    "MAX_PATTERN_SIZE",
    "BoundReport",
    "PatternTooLarge",
    "Rectangle",
    "SupportPattern",
    "brute_force_cover_number",
    "maximal_rectangles",
    "minimum_rectangle_cover",
    "nnr_bracket",
    "rectangle_cover_number",
    "support",
]

MAX_PATTERN_SIZE = 24


class PatternTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class SupportPattern:
    rows: int
    cols: int
    bits: tuple  # tuple of row tuples of bools

    @classmethod
    def from_lists(cls, bits) -> SupportPattern:
        bits = tuple(tuple(bool(x) for x in r) for r in bits)
        return cls(len(bits), len(bits[0]), bits)

    def __getitem__(self, ij) -> bool:
        i, j = ij
        return self.bits[i - 1][j - 1]

    def cells(self) -> frozenset:
        return frozenset((i + 1, j + 1) for i, r in enumerate(self.bits) for j, b in enumerate(r) if b)

    def transpose(self) -> SupportPattern:
        return SupportPattern(self.cols, self.rows, tuple(zip(*self.bits)))

    def count(self) -> int:
        return sum(map(sum, self.bits))


@dataclass(frozen=True, order=True)
class Rectangle:
    rowset: tuple
    colset: tuple

    def cells(self) -> frozenset:
        return frozenset((i, j) for i in self.rowset for j in self.colset)

    def to_json_obj(self) -> dict:
        return {"rows": list(self.rowset), "cols": list(self.colset)}


def support(M: ExactMatrix) -> SupportPattern:
    return SupportPattern(M.rows, M.cols, tuple(
        tuple(sign(x) != 0 for x in M.row(i)) for i in range(1, M.rows + 1)))


def _guard(p: SupportPattern) -> None:
    if p.rows > MAX_PATTERN_SIZE or p.cols > MAX_PATTERN_SIZE:
        raise PatternTooLarge(
            f"{p.rows}x{p.cols} pattern exceeds the {MAX_PATTERN_SIZE}x{MAX_PATTERN_SIZE} "
            "limit for exact rectangle enumeration; use the numeric NMF probe instead")


def _row_masks(p: SupportPattern) -> list[int]:
    return [sum(1 << j for j, b in enumerate(r) if b) for r in p.bits]


def _bits_to_index(mask: int) -> tuple[int, ...]:
    out = []
    j = 0
    while mask:
        if mask & 1:
            out.append(j + 1)
        mask >>= 1
        j += 1
    return tuple(out)


def maximal_rectangles(p: SupportPattern) -> list[Rectangle]:
    """All maximal all-ones rectangles, sorted by (rowset, colset).

    Every maximal rectangle has a column set that is an intersection of
    row supports, and its row set is then every row containing that
    column set.  We close the family of row supports under intersection
    and read off the rectangles.
    """
    _guard(p)
    masks = _row_masks(p)
    closed: set[int] = set()
    for m in masks:
        if not m:
            continue
        new = {m}
        for s in closed:
            t = s & m
            if t:
                new.add(t)
        closed |= new
    rects = []
    for cm in closed:
        rowset = tuple(i + 1 for i, m in enumerate(masks) if m & cm == cm)
        rects.append(Rectangle(rowset, _bits_to_index(cm)))
    rects.sort()
    return rects


def _cell_masks(p: SupportPattern, rects: list[Rectangle]) -> tuple[list[tuple[int, int]], list[int]]:
    cells = sorted(p.cells())
    pos = {c: k for k, c in enumerate(cells)}
    rmasks = []
    for r in rects:
        m = 0
        for c in r.cells():
            m |= 1 << pos[c]
        rmasks.append(m)
    return cells, rmasks


def minimum_rectangle_cover(p: SupportPattern) -> list[Rectangle]:
    """A minimum set of maximal rectangles covering the support.

    Branch and bound: branch on the uncovered cell with the fewest
    covering rectangles; prune with ceil(uncovered / best single-rectangle
    gain).  The greedy cover seeds the incumbent.  Ties always go to the
    lexicographically smallest rectangle, so the witness is deterministic
    and the first cover found at the optimal size is the one returned.
    """
    rects = maximal_rectangles(p)
    cells, rmasks = _cell_masks(p, rects)
    full = (1 << len(cells)) - 1
    if not full:
        return []
    covering = [[k for k, m in enumerate(rmasks) if m >> c & 1] for c in range(len(cells))]

    # greedy incumbent
    covered, greedy = 0, []
    while covered != full:
        k = max(range(len(rmasks)), key=lambda k: (bin(rmasks[k] & ~covered).count("1"), -k))
        greedy.append(k)
        covered |= rmasks[k]
    best = list(greedy)

    def search(covered: int, chosen: list[int]) -> None:
        nonlocal best
        if covered == full:
            if len(chosen) < len(best):
                best = list(chosen)
            return
        left = full & ~covered
        nleft = bin(left).count("1")
        gain = max(bin(m & left).count("1") for m in rmasks)
        if len(chosen) + ceil(nleft / gain) >= len(best):
            return
        # uncovered cell with fewest options
        c = min((c for c in range(len(cells)) if left >> c & 1), key=lambda c: (len(covering[c]), c))
        for k in sorted(covering[c], key=lambda k: (-bin(rmasks[k] & left).count("1"), k)):
            chosen.append(k)
            search(covered | rmasks[k], chosen)
            chosen.pop()

    search(0, [])
    return [rects[k] for k in sorted(best)]


def rectangle_cover_number(p: SupportPattern) -> int:
    return len(minimum_rectangle_cover(p))


def brute_force_cover_number(p: SupportPattern) -> int:
    """Smallest cover found by trying every subset of maximal rectangles, smallest first."""
    rects = maximal_rectangles(p)
    target = p.cells()
    if not target:
        return 0
    for size in range(1, len(rects) + 1):
        for combo in combinations(rects, size):
            if frozenset().union(*(r.cells() for r in combo)) == target:
                return size
    raise AssertionError("maximal rectangles failed to cover the support")


@dataclass(frozen=True)
class BoundReport:
    rank_lb: int
    rectangle_cover_lb: int | None
    certificate_ub: int | None
    cover: tuple = ()

    @property
    def lower(self) -> int:
        return max(self.rank_lb, self.rectangle_cover_lb or 0)

    @property
    def bracket(self) -> tuple[int, int | None]:
        return self.lower, self.certificate_ub

    @property
    def decided(self) -> bool:
        return self.certificate_ub is not None and self.lower == self.certificate_ub

    def to_json_obj(self, with_cover: bool = False) -> dict:
        out = {
            "rank_lb": self.rank_lb,
            "rectangle_cover_lb": self.rectangle_cover_lb,
            "certificate_ub": self.certificate_ub,
            "bracket": list(self.bracket),
        }
        if with_cover:
            out["cover"] = [r.to_json_obj() for r in self.cover]
        return out


def nnr_bracket(M: ExactMatrix, cert: Certificate | None = None) -> BoundReport:
    """Bracket the nonnegative rank of ``M``.

    The rectangle bound is skipped (reported as ``None``) when the matrix
    is beyond the enumeration size limit.  An invalid certificate raises
    rather than silently dropping the upper bound.
    """
    ub = None
    if cert is not None:
        report = verify(cert, M)
        if not report.valid:
            raise CertificateError(f"certificate does not factor the target: {report.summary()}")
        ub = report.factor_count
    p = support(M)
    rc, cover = None, ()
    try:
        cover = tuple(minimum_rectangle_cover(p))
        rc = len(cover)
    except PatternTooLarge:
        pass
    out = BoundReport(rank(M), rc, ub, cover)
    if ub is not None:
        assert out.lower <= ub, "lower bound exceeds a verified upper bound"
    return out
