"""Floating-point NMF probe (Lee-Seung multiplicative updates with restarts).

This is evidence gathering only: a small residual at rank k suggests,
but never proves, that the nonnegative rank is at most k.  Exact upper
bounds come from the certificates module.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction

import numpy as np

from .field import QuadraticNumber
from .matrix import ExactMatrix

__all__ = ["NmfConfig", "NmfResult", "RestartRecord", "run_nmf", "scalar_to_float", "to_float"]


def scalar_to_float(x) -> float:
    """Nearest double to an exact scalar, via 50-digit decimal evaluation."""
    if isinstance(x, QuadraticNumber):
        with localcontext() as ctx:
            ctx.prec = 50
            a = Decimal(x.a.numerator) / Decimal(x.a.denominator)
            b = Decimal(x.b.numerator) / Decimal(x.b.denominator)
            return float(a + b * Decimal(x.d).sqrt())
    return float(Fraction(x))


def to_float(M: ExactMatrix) -> np.ndarray:
    return np.array([[scalar_to_float(x) for x in M.row(i)] for i in range(1, M.rows + 1)],
                    dtype=np.float64)


@dataclass(frozen=True)
class NmfConfig:
    k: int
    max_iters: int = 20000
    restarts: int = 1
    seed: int = 0
    eps: float = 1e-12
    # stop a restart (and the sweep) once the relative residual is at or below this
    target: float = 0.0
    check_every: int = 100

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("rank k must be >= 1")
        if self.eps <= 0:
            raise ValueError("eps must be positive")
        if self.restarts < 1 or self.max_iters < 1:
            raise ValueError("restarts and max_iters must be >= 1")


@dataclass
class RestartRecord:
    index: int
    residual: float
    iterations: int
    trace: list[float] = field(default_factory=list)

    def is_monotone(self, tol: float = 1e-12) -> bool:
        return all(b <= a + tol for a, b in zip(self.trace, self.trace[1:]))


@dataclass
class NmfResult:
    W: np.ndarray
    H: np.ndarray
    residual: float
    iterations: int
    best_restart: int
    restarts: list[RestartRecord]

    def table_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["restart", "residual", "iterations"])
        for r in self.restarts:
            w.writerow([r.index, repr(r.residual), r.iterations])
        return buf.getvalue()


def _relres(M, W, H, norm):
    return float(np.linalg.norm(M - W @ H) / norm)


def _one_restart(M, cfg: NmfConfig, rng: np.random.Generator, index: int):
    m, n = M.shape
    # uniform on (0, 1]
    W = 1.0 - rng.random((m, cfg.k))
    H = 1.0 - rng.random((cfg.k, n))
    norm = np.linalg.norm(M) or 1.0
    trace = [_relres(M, W, H, norm)]
    it = 0
    while it < cfg.max_iters:
        H *= (W.T @ M) / (W.T @ W @ H + cfg.eps)
        W *= (M @ H.T) / (W @ (H @ H.T) + cfg.eps)
        it += 1
        if it % cfg.check_every == 0 or it == cfg.max_iters:
            trace.append(_relres(M, W, H, norm))
            if trace[-1] <= cfg.target:
                break
    return W, H, RestartRecord(index, trace[-1], it, trace)


def run_nmf(M, cfg: NmfConfig) -> NmfResult:
    """Best-of-restarts multiplicative-update NMF of ``M`` at rank ``cfg.k``.

    Restart ``i`` draws its initial factors from
    ``np.random.default_rng(SeedSequence(cfg.seed).spawn(restarts)[i])``, so any
    restart can be replayed on its own.  Ties on the residual go to the
    lowest restart index.
    """
    if isinstance(M, ExactMatrix):
        M = to_float(M)
    M = np.asarray(M, dtype=np.float64)
    if M.ndim != 2 or not np.all(np.isfinite(M)):
        raise ValueError("input must be a finite 2-d array")
    if np.any(M < 0):
        raise ValueError("NMF input has a negative entry")
    children = np.random.SeedSequence(cfg.seed).spawn(cfg.restarts)
    best = None
    records = []
    for i, child in enumerate(children):
        W, H, rec = _one_restart(M, cfg, np.random.default_rng(child), i)
        records.append(rec)
        if best is None or rec.residual < best[2].residual:
            best = (W, H, rec)
        if rec.residual <= cfg.target:
            break
    W, H, rec = best
    return NmfResult(W, H, rec.residual, rec.iterations, rec.index, records)
