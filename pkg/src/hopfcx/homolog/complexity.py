"""Complexity estimates from truncated growth data."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator

from ..exceptions import InsufficientDepth

MIN_LENGTH = 6
MAX_PERIOD = 2
MAX_DEGREE = 8


@dataclass
class ComplexityReport:
    complexity: int
    slope: float
    residual: float
    window: tuple
    used: list          # degrees that entered the fit
    depth: int
    method: str = "log-log"
    loglog_complexity: int = 0
    period: int | None = None       # of the detected quasi-polynomial, if any

    def as_dict(self):
        slope = round(self.slope, 6) if math.isfinite(self.slope) else None
        return {"complexity": self.complexity, "slope": slope,
                "residual": round(self.residual, 6), "window": list(self.window),
                "degrees_used": self.used, "depth": self.depth, "method": self.method,
                "loglog_complexity": self.loglog_complexity, "period": self.period}


def quasi_polynomial_degree(seq, max_period=MAX_PERIOD, max_degree=MAX_DEGREE):
    """``(degree, period)`` of a quasi-polynomial matching the end of ``seq``, or ``None``.

    For each residue class mod the period, the last ``degree + 3`` terms must
    have vanishing ``(degree + 1)``-th differences, so every degree is
    confirmed by at least two vanishing differences. Identically zero classes
    are ignored. The smallest degree over all periods wins.
    """
    b = np.asarray(seq, dtype=np.int64)
    best = None
    for period in range(1, max_period + 1):
        for d in range(max_degree + 1):
            if best is not None and d >= best[0]:
                break
            ok, live = True, False
            for r in range(period):
                sub = b[r::period]
                if len(sub) < d + 3:
                    ok = False
                    break
                tail = sub[-(d + 3):]
                if not tail.any():
                    continue
                live = True
                if np.diff(tail, n=d + 1).any():
                    ok = False
                    break
            if ok and live:
                best = (d, period)
                break
    return best


def complexity_estimate(seq, tail_fraction=0.5, min_length=MIN_LENGTH):
    """Growth rate of ``seq[n]`` (``n = 0..N``).

    When the end of the sequence is a quasi-polynomial of degree ``d``
    (period at most 2, confirmed by vanishing finite differences) the
    complexity is ``d + 1``. Otherwise the slope ``s`` of ``log b_n`` against
    ``log n`` over ``n >= (1 - tail_fraction) N`` gives ``c = round(s) + 1``.
    The log-log slope and residual are reported in either case. An
    identically zero tail gives ``c = 0``; vanishing terms inside a nonzero
    window are left out of the fit (Ext groups often vanish in odd degrees).
    """
    b = [int(x) for x in seq]
    if len(b) < min_length:
        raise InsufficientDepth(f"need at least {min_length} terms, got {len(b)}")
    depth = len(b) - 1
    start = max(1, math.ceil((1 - tail_fraction) * depth))
    window = (start, depth)
    tail = b[start:]
    if not any(tail):
        return ComplexityReport(0, float("-inf"), 0.0, window, [], depth)
    degrees = [n for n in range(start, depth + 1) if b[n] > 0]
    if len(degrees) < 2:
        return ComplexityReport(1, 0.0, 0.0, window, degrees, depth, "log-log", 1)
    x = np.log(np.array(degrees, dtype=float))
    y = np.log(np.array([b[n] for n in degrees], dtype=float))
    design = np.vstack([x, np.ones_like(x)]).T
    coef, *_ = np.linalg.lstsq(design, y, rcond=None)
    resid = y - design @ coef
    slope = float(coef[0])
    c = max(1, int(round(slope)) + 1)
    rms = float(np.sqrt(np.mean(resid ** 2)))
    qp = quasi_polynomial_degree(b)
    if qp is None:
        return ComplexityReport(c, slope, rms, window, degrees, depth, "log-log", c)
    return ComplexityReport(qp[0] + 1, slope, rms, window, degrees, depth, "quasi-polynomial", c, qp[1])


class ComplexityEstimator(BaseEstimator):
    """``ComplexityEstimator().fit(betti)`` sets ``complexity_``, ``slope_``, ``residual_``, ``window_``."""

    def __init__(self, tail_fraction=0.5, min_length=MIN_LENGTH):
        self.tail_fraction = tail_fraction
        self.min_length = min_length

    def fit(self, seq, y=None):
        rep = complexity_estimate(seq, self.tail_fraction, self.min_length)
        self.report_ = rep
        self.complexity_ = rep.complexity
        self.slope_ = rep.slope
        self.residual_ = rep.residual
        self.window_ = rep.window
        return self

    def predict(self, seqs):
        return np.array([complexity_estimate(s, self.tail_fraction, self.min_length).complexity
                         for s in seqs])


def module_complexity(module, depth, **kw):
    """``(report, trace)`` for the Betti growth of a module."""
    from .resolution import resolve

    trace = resolve(module, depth)
    return complexity_estimate(trace.betti_table.totals, **kw), trace


def dual_estimates(trace, depth=None, tail_fraction=0.5):
    """Betti growth vs growth of ``dim Ext^n(M, M)``; returns both reports and the agreement flag."""
    from .resolution import ext_dims

    depth = trace.depth if depth is None else depth
    betti = trace.betti_table.totals[:depth + 1]
    ext = ext_dims(trace, trace.module, depth)
    by_betti = complexity_estimate(betti, tail_fraction)
    by_ext = complexity_estimate(ext, tail_fraction)
    return {"betti": betti.tolist(), "ext": ext, "betti_estimate": by_betti,
            "ext_estimate": by_ext, "agree": by_betti.complexity == by_ext.complexity}
