"""Discrete Hardy-type inequalities with a weighted averaging operator.

For ``0 < alpha < 1`` and ``beta < 0`` or ``beta >= 1`` the forms compare::

    sum_k lam(k) / Lam[1,k]^(1-alpha) * (Av(j))^beta
        <=  C * sum_k lam(k) / Lam[1,k]^(1-alpha) * v(k)^beta

with ``C = (beta / (beta - alpha))^beta``, ``Lam[1,k] = lam(1) + ... + lam(k)``
and ``Av(j)`` the ``lam``-weighted average of ``v`` over ``[1, j]``.  The plain
forms use ``j = k``; the shifted ``ka1`` forms use ``j = k - 1`` and give the
``k = 1`` term the value 0 (the empty average).

The ``_pos``/``_neg`` variants fix ``lam = 1`` and ``beta - alpha = +1/-1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import BadForm, BudgetTooSmall, HypothesisViolation, LengthMismatch, TooShort
from .weights import as_array

__all__ = [
    "FORMS",
    "InequalityInstance",
    "eval_sides",
    "zeta_constant",
    "SearchResult",
    "violation_search",
    "REFERENCE_INSTANCES",
    "reference_instances",
]

FORMS = ("kl1", "kl1_unweighted_pos", "kl1_unweighted_neg", "ka1", "ka1_pos", "ka1_neg")
_SHIFTED = ("ka1", "ka1_pos", "ka1_neg")
_OFFSET = {"kl1_unweighted_pos": 1.0, "ka1_pos": 1.0,
           "kl1_unweighted_neg": -1.0, "ka1_neg": -1.0}


@dataclass
class InequalityInstance:
    form: str
    alpha: float
    beta: float
    v: np.ndarray
    lam: Optional[np.ndarray] = None

    def __post_init__(self):
        if self.form not in FORMS:
            raise BadForm(f"unknown form {self.form!r}; expected one of {', '.join(FORMS)}")
        self.alpha, self.beta = float(self.alpha), float(self.beta)
        self.v = np.array(self.v, dtype=float).ravel()
        if self.v.size < 1:
            raise LengthMismatch("v is empty")
        if not 0.0 < self.alpha < 1.0:
            raise HypothesisViolation(f"need 0 < alpha < 1, got {self.alpha:g}")
        if not (self.beta < 0.0 or self.beta >= 1.0):
            raise HypothesisViolation(f"need beta < 0 or beta >= 1, got {self.beta:g}")
        if self.form in _OFFSET:
            want = _OFFSET[self.form]
            if abs(self.beta - self.alpha - want) > 1e-12:
                raise HypothesisViolation(
                    f"form {self.form} needs beta - alpha = {want:+g}, got {self.beta - self.alpha:g}")
            if self.lam is not None and not np.all(np.asarray(self.lam) == 1.0):
                raise HypothesisViolation(f"form {self.form} is unweighted; lambda must be 1")
            self.lam = None
        if self.lam is not None:
            self.lam = np.array(as_array(self.lam), dtype=float)
            if self.lam.size != self.v.size:
                raise LengthMismatch(f"lambda has {self.lam.size} entries, v has {self.v.size}")
            if np.any(self.lam <= 0):
                raise HypothesisViolation("lambda entries must be positive")
        if np.any(self.v < 0) or np.any(~np.isfinite(self.v)):
            raise HypothesisViolation("v entries must be finite and nonnegative")
        if self.beta < 0 and np.any(self.v == 0):
            raise HypothesisViolation("v must be positive when beta < 0")

    @property
    def N(self) -> int:
        return self.v.size

    @property
    def weights(self) -> np.ndarray:
        return np.ones(self.N) if self.lam is None else self.lam

    @property
    def constant(self) -> float:
        b = self.beta
        return (b / (b - self.alpha)) ** b

    def to_dict(self):
        lhs, rhs, violated = eval_sides(self)
        d = {"form": self.form, "N": self.N, "alpha": self.alpha, "beta": self.beta,
             "v": [float(x) for x in self.v], "lhs": lhs, "rhs": rhs,
             "margin": lhs - rhs, "violated": violated}
        if self.lam is not None:
            d["lambda"] = [float(x) for x in self.lam]
        return d


def _pow(x: float, b: float) -> float:
    return 0.0 if x == 0.0 else x ** b


def eval_sides(inst: InequalityInstance) -> tuple[float, float, bool]:
    """Both sides of the instance as exact finite sums; ``violated = lhs > rhs``."""
    lam, v, a, b = inst.weights, inst.v, inst.alpha, inst.beta
    N = inst.N
    Lam = [math.fsum(lam[:k]) for k in range(1, N + 1)]
    S = [math.fsum(lam[:k] * v[:k]) for k in range(1, N + 1)]
    coef = [lam[k] / Lam[k] ** (1.0 - a) for k in range(N)]
    if inst.form in _SHIFTED:
        avg = [None] + [S[k - 1] / Lam[k - 1] for k in range(1, N)]
        left = [0.0] + [coef[k] * _pow(avg[k], b) for k in range(1, N)]
    else:
        left = [coef[k] * _pow(S[k] / Lam[k], b) for k in range(N)]
    right = [coef[k] * _pow(float(v[k]), b) for k in range(N)]
    lhs = math.fsum(left)
    rhs = inst.constant * math.fsum(right)
    return lhs, rhs, lhs > rhs


def zeta_constant(lam) -> float:
    """``max_{2<=k<=N} Lam[1,k] / Lam[1,k-1]`` for positive ``lam``."""
    arr = as_array(lam)
    if arr.size < 2:
        raise TooShort(f"need at least 2 entries, got {arr.size}")
    if np.any(arr <= 0):
        raise HypothesisViolation("lambda entries must be positive")
    cum = np.cumsum(arr)
    return float(np.max(cum[1:] / cum[:-1]))


@dataclass
class SearchResult:
    instance: InequalityInstance
    lhs: float
    rhs: float
    evaluations: int
    seed: int
    log: list = field(default_factory=list, repr=False)

    @property
    def margin(self) -> float:
        return self.lhs - self.rhs

    def to_dict(self):
        d = self.instance.to_dict()
        d.update({"evaluations": self.evaluations, "seed": self.seed})
        return d


def violation_search(form: str, N: int, alpha: float, beta: float, budget: int = 10000,
                     seed: int = 0, lam=None, restarts: int = 8) -> SearchResult:
    """Search ``v > 0`` maximizing ``lhs - rhs``.

    Both sides are homogeneous of degree ``beta`` in ``v``, so the ascent
    works on the scale-free ratio ``lhs / rhs`` and every returned ``v`` is
    rescaled to ``min v = 1``.  Restarts draw ``v`` log-uniformly from
    ``[1e-3, 1e3]``; moves multiply one coordinate by ``exp(+-delta)`` and
    ``delta`` is halved when a full sweep brings no gain.
    """
    if budget < 1:
        raise BudgetTooSmall(f"budget must be at least 1, got {budget}")
    if int(N) < 1:
        raise TooShort(f"N must be at least 1, got {N}")
    N = int(N)
    rng = np.random.default_rng(seed)
    evals = 0

    def score(v):
        nonlocal evals
        evals += 1
        lhs, rhs, _ = eval_sides(InequalityInstance(form, alpha, beta, v, lam))
        return (lhs / rhs if rhs > 0 else -math.inf), lhs, rhs

    def draw():
        v = np.exp(rng.uniform(math.log(1e-3), math.log(1e3), N))
        return v / v.min()

    best_v = draw()
    best = score(best_v)
    log = [best[0]]
    per_start = max(1, (budget - 1) // max(1, restarts))
    start_v, cur = best_v, best
    while evals < budget:
        v, s = start_v.copy(), cur
        delta, stop = 1.0, evals + per_start
        while evals < min(stop, budget) and delta > 1e-8:
            improved = False
            for i in range(N):
                for sign in (1.0, -1.0):
                    if evals >= budget:
                        break
                    trial = v.copy()
                    trial[i] *= math.exp(sign * delta)
                    t = score(trial)
                    if t[0] > s[0]:
                        v, s, improved = trial, t, True
                        break
            if not improved:
                delta *= 0.5
        if s[0] > best[0]:
            best_v, best = v, s
        log.append(s[0])
        if evals >= budget:
            break
        start_v = draw()
        cur = score(start_v)

    best_v = best_v / best_v.min()
    inst = InequalityInstance(form, alpha, beta, best_v, lam)
    lhs, rhs, _ = eval_sides(inst)
    return SearchResult(inst, lhs, rhs, evals, int(seed), log)


# Printed reference evaluations of the four worked examples.
REFERENCE_INSTANCES = {
    "plain_pos": dict(form="kl1_unweighted_pos", alpha=0.2, beta=1.2, v=(100, 1, 1, 1),
                lhs=359.587, rhs=314.263, violated=True),
    "plain_neg": dict(form="kl1_unweighted_neg", alpha=0.1, beta=-0.9, v=(1, 5, 9, 13, 17),
                   lhs=1.36913, rhs=1.3406, violated=True),
    "shifted_pos": dict(form="ka1_pos", alpha=0.2, beta=1.2, v=(100, 1, 1, 1),
                 lhs=212.922, rhs=314.263, violated=False),
    "shifted_neg": dict(form="ka1_neg", alpha=0.1, beta=-0.9, v=(1, 5, 9, 13, 17),
                 lhs=0.7743, rhs=1.3516, violated=False),
}


def _tol(printed: float) -> float:
    return 5e-6 if printed == 1.36913 else 5e-4


def reference_instances() -> list[dict]:
    """Evaluate the worked examples and compare with the printed values."""
    out = []
    for name, d in REFERENCE_INSTANCES.items():
        inst = InequalityInstance(d["form"], d["alpha"], d["beta"], d["v"])
        lhs, rhs, violated = eval_sides(inst)
        rec = inst.to_dict()
        rec.update({
            "name": name,
            "printed_lhs": d["lhs"], "printed_rhs": d["rhs"],
            "lhs_matches": abs(lhs - d["lhs"]) <= _tol(d["lhs"]),
            "rhs_matches": abs(rhs - d["rhs"]) <= _tol(d["rhs"]),
            "printed_violated": d["violated"],
        })
        rec["matches"] = rec["lhs_matches"] and rec["rhs_matches"] and violated == d["violated"]
        out.append(rec)
    return out
