"""The matrix families B, C, V and the 21x21 integer matrix A.

A is kept as a transcribed literal.  Its block structure is checked
against the builders (see :func:`block_layout` and the certificates
module) rather than used to generate it.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .field import QuadraticNumber, sign
from .matrix import ExactMatrix, submatrix

__all__ = [
    "A_LITERAL",
    "Block",
    "RegionMap",
    "alpha",
    "sqrt2",
    "build_A",
    "build_B",
    "build_C",
    "build_V",
    "block_layout",
    "region_map",
    "M1",
    "M2",
    "M3",
    "M4",
]


def alpha() -> QuadraticNumber:
    """1 + sqrt(1/2), written as 1 + (1/2)*sqrt(2)."""
    return QuadraticNumber(1, Fraction(1, 2), 2)


def sqrt2() -> QuadraticNumber:
    return QuadraticNumber(0, 1, 2)


def _check_nonneg(name: str, values) -> None:
    for k, x in enumerate(values, 1):
        if sign(x) < 0:
            raise ValueError(f"{name}: parameter {k} is negative ({x})")


def build_B(*alphas) -> ExactMatrix:
    """The 5 x (n+4) matrix B(alpha_1, ..., alpha_n).

    Accepts either ``build_B(a1, a2)`` or ``build_B([a1, a2])``.
    """
    if len(alphas) == 1 and isinstance(alphas[0], (list, tuple)):
        alphas = tuple(alphas[0])
    if not alphas:
        raise ValueError("B needs at least one parameter")
    _check_nonneg("B", alphas)
    n = len(alphas)
    return ExactMatrix([
        [*alphas, 1, 1, 1, 1],
        [1] * n + [1, 1, 0, 0],
        [0] * n + [0, 1, 1, 0],
        [0] * n + [0, 0, 1, 1],
        [0] * n + [1, 0, 0, 1],
    ])


def build_C(a1, a2, b, c, d) -> ExactMatrix:
    _check_nonneg("C", (a1, a2, b, c, d))
    return ExactMatrix([
        [d, 2, 2, 1, 0],
        [1, 2, 1, 0, 1],
        [0, 0, 1, b, 0],
        [0, 1, 0, 0, c],
        [0, 1, 1, a1, a2],
    ])


def build_V() -> ExactMatrix:
    return ExactMatrix([
        [1, 1, 0, 0],
        [0, 1, 1, 0],
        [0, 0, 1, 1],
        [1, 0, 0, 1],
    ])


def M1() -> ExactMatrix:
    a = alpha()
    return build_C(a, a, a, a, sqrt2())


def M2() -> ExactMatrix:
    return build_B(2 - alpha(), 2 - alpha())


def M3() -> ExactMatrix:
    return build_B(2 - alpha())


def M4() -> ExactMatrix:
    return build_B(2 - sqrt2())


# Transcribed entry by entry from the displayed 21x21 matrix.
A_LITERAL: tuple[tuple[int, ...], ...] = (
    (2, 2, 2, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1),
    (1, 2, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0),
    (0, 0, 1, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 0, 0, 0, 0),
    (0, 1, 0, 0, 2, 0, 0, 0, 0, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0),
    (0, 1, 1, 2, 2, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0),
    (0, 0, 0, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0),
    (0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0),
    (1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0),
    (0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0),
    (0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1),
    (0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1),
)


def _span(lo: int, hi: int) -> tuple[int, ...]:
    return tuple(range(lo, hi + 1))


@dataclass(frozen=True)
class RegionMap:
    """Named colored regions of A as sets of 1-based (row, col) positions."""

    regions: dict = field(default_factory=dict)

    def __getitem__(self, name: str) -> frozenset:
        return self.regions[name]

    def names(self) -> list[str]:
        return list(self.regions)

    def color_of(self, i: int, j: int) -> str | None:
        for name, cells in self.regions.items():
            if (i, j) in cells:
                return name
        return None


def _square(lo: int, hi: int) -> frozenset:
    return frozenset((i, j) for i in _span(lo, hi) for j in _span(lo, hi))


@lru_cache(maxsize=None)
def region_map() -> RegionMap:
    return RegionMap({
        "green": _square(1, 5),
        "cyan": frozenset({(5, 6), (5, 7), (5, 8), (5, 9), (6, 4), (6, 5)}),
        "red": _square(6, 9),
        "blue": _square(10, 13),
        "yellow": _square(14, 17),
        "magenta": _square(18, 21),
    })


@dataclass(frozen=True)
class Block:
    """One B-shaped block of A left after the green C-part is removed."""

    name: str
    rows: tuple[int, ...]
    cols: tuple[int, ...]
    alphas: tuple

    def matrix(self) -> ExactMatrix:
        return build_B(*self.alphas)


def block_layout() -> list[Block]:
    """The four disjoint B-blocks covering A - embed(M1, green), in order M2, M3, M3, M4."""
    a = alpha()
    return [
        Block("M2", (5, 6, 7, 8, 9), (4, 5, 6, 7, 8, 9), (2 - a, 2 - a)),
        Block("M3", (4, 10, 11, 12, 13), (5, 10, 11, 12, 13), (2 - a,)),
        Block("M3'", (3, 14, 15, 16, 17), (4, 14, 15, 16, 17), (2 - a,)),
        Block("M4", (1, 18, 19, 20, 21), (1, 18, 19, 20, 21), (2 - sqrt2(),)),
    ]


def self_check(A: ExactMatrix) -> list[str]:
    """Structural checks on a candidate A; returns a list of problems (empty if fine).

    Checks the bottom-right 16x16 is diag(V, V, V, V) and the cyan cells
    are all 1.  The green block is not checked here: its agreement with C
    is exactly what the block-decomposition identity tests.
    """
    problems = []
    if A.shape != (21, 21):
        return [f"shape {A.shape} != (21, 21)"]
    V = build_V()
    for k, lo in enumerate((6, 10, 14, 18)):
        for k2, lo2 in enumerate((6, 10, 14, 18)):
            blk = submatrix(A, _span(lo, lo + 3), _span(lo2, lo2 + 3))
            if k == k2 and blk != V:
                problems.append(f"diagonal block at {lo} is not V")
            if k != k2 and not blk.is_zero():
                problems.append(f"off-diagonal block ({lo},{lo2}) is not zero")
    for (i, j) in region_map()["cyan"]:
        if A[i, j] != 1:
            problems.append(f"cyan entry ({i},{j}) is {A[i, j]}, not 1")
    return problems


@lru_cache(maxsize=None)
def build_A() -> ExactMatrix:
    A = ExactMatrix(A_LITERAL)
    problems = self_check(A)
    assert not problems, problems
    return A
