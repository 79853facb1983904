"""Discrete averaging and maximal operators on truncated sequences.

All operators act on nonnegative sequences ``f(1..N)`` and use the window
family ``[1, m]``: the maximal function at ``n`` is the largest average over
windows containing ``n``, i.e. ``Mf(n) = max_{n <= m <= N} (1/m) sum_{k<=m} f(k)``.
This makes ``Mf`` a suffix maximum of Hardy averages, so every operator is
O(N).  The private ``_*`` kernels work on the last axis of 2-D batches too,
which the norm search relies on.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import (
    BadExponent,
    BudgetTooSmall,
    GammaOutOfRange,
    LengthMismatch,
    NegativeEntry,
    UnsupportedOperator,
)
from .weights import _positive, as_array, check_exponent

__all__ = [
    "OPERATORS",
    "OperatorNormEstimate",
    "hardy",
    "maximal",
    "maximal_windows",
    "weighted_maximal",
    "dual_maximal",
    "g_operator",
    "apply_operator",
    "lp_norm",
    "estimate_operator_norm",
]

OPERATORS = ("maximal", "dual_maximal", "hardy")


def _seq(f, what="sequence") -> np.ndarray:
    arr = as_array(f)
    if np.any(arr < 0) or np.any(~np.isfinite(arr)):
        raise NegativeEntry(f"{what} entries must be finite and nonnegative")
    return arr


def _match(f, w):
    if f.shape[-1] != w.size:
        raise LengthMismatch(f"sequence length {f.shape[-1]} != weight length {w.size}")


def _hardy(F):
    n = F.shape[-1]
    return np.cumsum(F, axis=-1) / np.arange(1, n + 1)


def _suffix_max(A):
    return np.flip(np.maximum.accumulate(np.flip(A, -1), axis=-1), -1)


def _maximal(F):
    return _suffix_max(_hardy(F))


def hardy(f) -> np.ndarray:
    """Hardy averages ``(1/n) sum_{k<=n} f(k)``."""
    return _hardy(_seq(f))


def maximal(f) -> np.ndarray:
    """Discrete Hardy-Littlewood maximal function (nonincreasing in n)."""
    return _maximal(_seq(f))


def maximal_windows(f) -> np.ndarray:
    """Right end ``m`` (1-based) of the window realising ``Mf(n)``.

    Ties go to the smallest maximizing ``m``.
    """
    avg = _hardy(_seq(f))
    out = np.empty(avg.size, dtype=int)
    best, at = -np.inf, avg.size - 1
    for k in range(avg.size - 1, -1, -1):
        if avg[k] >= best:
            best, at = avg[k], k
        out[k] = at + 1
    return out


def weighted_maximal(f, w) -> np.ndarray:
    """``max_{m>=n} sum_{s<=m} w(s) f(s) / sum_{s<=m} w(s)``."""
    arr, wt = _seq(f), _positive(w)
    _match(arr, wt)
    return _suffix_max(np.cumsum(wt * arr) / np.cumsum(wt))


def dual_maximal(h, w) -> np.ndarray:
    """``M(w h) / w``."""
    arr, wt = _seq(h), _positive(w)
    _match(arr, wt)
    return _maximal(wt * arr) / wt


def g_operator(g, w, gamma: float) -> np.ndarray:
    """``(M(g^{1/gamma} w) / w)^gamma`` for ``0 < gamma <= 1``."""
    gamma = float(gamma)
    if not (0.0 < gamma <= 1.0):
        raise GammaOutOfRange(f"gamma must lie in (0, 1], got {gamma:g}")
    if gamma == 1.0:
        return dual_maximal(g, w)
    arr, wt = _seq(g), _positive(w)
    _match(arr, wt)
    return (_maximal(arr ** (1.0 / gamma) * wt) / wt) ** gamma


def apply_operator(op: str, f, w=None) -> np.ndarray:
    """Dispatch on an operator descriptor string."""
    if op == "hardy":
        return hardy(f)
    if op == "maximal":
        return maximal(f)
    if op == "dual_maximal":
        if w is None:
            raise UnsupportedOperator("dual_maximal needs a weight")
        return dual_maximal(f, w)
    if op == "weighted_maximal":
        if w is None:
            raise UnsupportedOperator("weighted_maximal needs a weight")
        return weighted_maximal(f, w)
    if op == "identity":
        return _seq(f).copy()
    raise UnsupportedOperator(f"unknown operator {op!r}")


def lp_norm(f, w, p: float) -> float:
    """``(sum_k w(k) |f(k)|^p)^{1/p}``."""
    p = float(p)
    if not p >= 1:
        raise BadExponent(f"lp_norm needs p >= 1, got p = {p:g}")
    arr, wt = as_array(f), as_array(w)
    if np.any(wt < 0):
        raise NegativeEntry("weight entries must be nonnegative")
    _match(arr, wt)
    return float(np.dot(wt, np.abs(arr) ** p) ** (1.0 / p))


# ---------------------------------------------------------------------------
# operator-norm search


@dataclass
class OperatorNormEstimate:
    """Lower bound for ``||op||`` on ``l_p(w)`` together with its witness."""

    value: float
    witness: np.ndarray = field(repr=False)
    strategy: str
    evaluations: int
    is_certified_upper: bool
    op: str = "maximal"
    p: float = 2.0
    seed: int = 0

    def to_dict(self):
        return {"value": float(self.value), "strategy": self.strategy,
                "evaluations": int(self.evaluations),
                "certified": bool(self.is_certified_upper),
                "witness": [float(x) for x in self.witness],
                "op": self.op, "p": float(self.p), "seed": int(self.seed)}


class _Ratio:
    """Batched ``||T f|| / ||f||`` on ``l_p(w)`` for ``T`` in {maximal, hardy}."""

    def __init__(self, op, w, p):
        self.op, self.w, self.p = op, w, p
        self.kernel = _maximal if op == "maximal" else _hardy
        self.evaluations = 0

    def __call__(self, F):
        F = np.atleast_2d(F)
        self.evaluations += F.shape[0]
        num = self.kernel(F) ** self.p @ self.w
        den = F ** self.p @ self.w
        with np.errstate(divide="ignore", invalid="ignore"):
            r = (num / den) ** (1.0 / self.p)
        return np.where(den > 0, r, -np.inf)

    def power_step(self, f):
        """One nonlinear power-method step on the active linearisation.

        For the window selection ``A`` active at ``f`` this is Boyd's
        fixed-point map ``f -> (A^T (w (A f)^{p-1}) / w)^{1/(p-1)}``.  Only
        used to seed coordinate ascent, so no monotonicity is relied on.
        """
        n, p, w = f.size, self.p, self.w
        if self.op == "maximal":
            ends = maximal_windows(f) - 1
            tf = _hardy(f)[ends]
            contrib = np.zeros(n)
            np.add.at(contrib, ends, w * tf ** (p - 1.0) / (ends + 1))
        else:
            tf = _hardy(f)
            contrib = w * tf ** (p - 1.0) / np.arange(1, n + 1)
        adj = np.flip(np.cumsum(np.flip(contrib)))
        g = (adj / w) ** (1.0 / (p - 1.0))
        top = g.max()
        return g / top if top > 0 else f


def _candidates(n, w, p, extra):
    yield np.ones(n)
    for f in extra:
        yield f
    yield w ** (-1.0 / (p - 1.0))
    for m in range(1, n):
        e = np.zeros(n)
        e[:m] = 1.0
        yield e
    for k in range(n):
        e = np.zeros(n)
        e[k] = 1.0
        yield e


def _exhaustive_small(ratio, n):
    """Dense grid on the positive part of the sphere plus zoom refinement."""
    if n == 1:
        f = np.ones(1)
        return float(ratio(f)[0]), f
    if n == 2:
        def to_f(t):
            t = np.atleast_1d(t)
            return np.stack([np.cos(t), np.sin(t)], axis=-1)
        grid = np.linspace(0.0, np.pi / 2, 4097)
        vals = ratio(to_f(grid))
        i = int(np.argmax(vals))
        step = grid[1] - grid[0]
        lo, hi = max(0.0, grid[i] - step), min(np.pi / 2, grid[i] + step)
        res = minimize_scalar(lambda t: -ratio(to_f(t))[0], bounds=(lo, hi),
                              method="bounded", options={"xatol": 1e-13})
        best_t = res.x if -res.fun > vals[i] else grid[i]
        f = to_f(best_t)[0]
        return float(ratio(f)[0]), f

    def to_f3(a, b):
        return np.stack([np.cos(a), np.sin(a) * np.cos(b), np.sin(a) * np.sin(b)], axis=-1)
    lo_a, hi_a, lo_b, hi_b = 0.0, np.pi / 2, 0.0, np.pi / 2
    best = (-np.inf, None)
    for _ in range(12):
        a = np.linspace(lo_a, hi_a, 129)
        b = np.linspace(lo_b, hi_b, 129)
        A, B = np.meshgrid(a, b, indexing="ij")
        F = to_f3(A.ravel(), B.ravel())
        vals = ratio(F)
        i = int(np.argmax(vals))
        if vals[i] > best[0]:
            best = (float(vals[i]), F[i])
        da, db = a[1] - a[0], b[1] - b[0]
        ca, cb = A.ravel()[i], B.ravel()[i]
        lo_a, hi_a = max(0.0, ca - 2 * da), min(np.pi / 2, ca + 2 * da)
        lo_b, hi_b = max(0.0, cb - 2 * db), min(np.pi / 2, cb + 2 * db)
    return best


def _coordinate_ascent(ratio, f, val, budget_left, delta=0.5, tol=1e-6):
    """Multiplicative single-coordinate moves ``f(k) <- f(k)(1 +- delta)``.

    All 2N moves are scored as one batch and the best improving move is
    taken; ``delta`` is halved when none improves.
    """
    n = f.size
    idx = np.arange(n)
    while delta >= tol and budget_left >= 2 * n:
        B = np.repeat(f[None, :], 2 * n, axis=0)
        B[idx, idx] *= 1.0 + delta
        B[n + idx, idx] *= 1.0 - delta
        r = ratio(B)
        budget_left -= 2 * n
        j = int(np.argmax(r))
        if r[j] > val:
            val, f = float(r[j]), B[j]
        else:
            delta *= 0.5
    return val, f, budget_left


def estimate_operator_norm(op: str, w, p: float, budget: int = 20000, seed: int = 0,
                           extra_candidates: Optional[Iterable] = None,
                           power_steps: int = 60) -> OperatorNormEstimate:
    """Lower-bound search for the norm of ``op`` on ``l_p(w)``.

    Strategies, in order: a candidate family (indicators of ``[1, m]``,
    ``w^{-1/(p-1)}``, unit vectors and ``extra_candidates``); a dense grid
    with refinement when ``N <= 3`` (reported as certified); random
    log-uniform restarts warmed up by nonlinear power steps and polished by
    coordinate ascent.  The best ratio found is returned; it is always a
    valid lower bound.  Deterministic for a given ``seed``.  ``budget``
    caps the candidate and restart strategies; the fixed small-N grid is
    always run and counted on top of it.

    ``dual_maximal`` is reduced to ``maximal`` on ``l_p(w^{1-p})`` through
    ``g = w f``, under which the two ratios coincide; the witness is mapped
    back and the value recomputed with ``dual_maximal`` itself.
    """
    if op not in OPERATORS:
        raise UnsupportedOperator(f"operator must be one of {OPERATORS}, got {op!r}")
    budget = int(budget)
    if budget < 1:
        raise BudgetTooSmall("budget must be at least 1 evaluation")
    p = check_exponent(p)
    wt = _positive(w)
    n = wt.size
    extra = [_seq(f, "candidate") for f in (extra_candidates or ())]
    for f in extra:
        _match(f, wt)

    if op == "dual_maximal":
        u = wt ** (1.0 - p)
        est = estimate_operator_norm("maximal", u, p, budget, seed,
                                     [wt * f for f in extra], power_steps)
        witness = est.witness / wt
        value = lp_norm(dual_maximal(witness, wt), wt, p) / lp_norm(witness, wt, p)
        return OperatorNormEstimate(value, witness, est.strategy, est.evaluations,
                                    est.is_certified_upper, op, p, seed)

    ratio = _Ratio(op, wt, p)
    best_val, best_f, best_strategy = -np.inf, None, "candidate_family"

    def offer(val, f, strategy):
        nonlocal best_val, best_f, best_strategy
        if val > best_val:
            best_val, best_f, best_strategy = float(val), np.array(f, dtype=float), strategy

    for f in _candidates(n, wt, p, extra):
        if ratio.evaluations >= budget:
            break
        offer(ratio(f)[0], f, "candidate_family")

    grid_val = None
    if n <= 3:
        grid_val, f = _exhaustive_small(ratio, n)
        offer(grid_val, f, "exhaustive_small")

    rng = np.random.default_rng(seed)
    first = True
    while ratio.evaluations < budget and n > 1:
        if first:
            f = np.where(best_f > 0, best_f, 1e-6 * best_f.max())
            first = False
        else:
            f = np.exp(rng.uniform(np.log(1e-3), 0.0, n))
        for _ in range(power_steps):
            if ratio.evaluations >= budget:
                break
            f = ratio.power_step(f)
            ratio.evaluations += 1
        val = float(ratio(f)[0])
        offer(val, f, "random_restart_ascent")
        left = budget - ratio.evaluations
        val, f, left = _coordinate_ascent(ratio, f, val, left)
        ratio.evaluations = budget - left
        offer(val, f, "random_restart_ascent")
        if left < 2 * n:
            break

    certified = grid_val is not None and grid_val >= best_val * (1 - 1e-9)
    witness = best_f / best_f.max()
    value = lp_norm(apply_operator(op, witness), wt, p) / lp_norm(witness, wt, p)
    return OperatorNormEstimate(value, witness, best_strategy, ratio.evaluations,
                                certified, op, p, seed)
