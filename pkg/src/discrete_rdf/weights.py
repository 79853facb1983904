"""Discrete weights and their truncated class constants.

A weight is a finite nonnegative sequence ``w(1..N)`` standing for the
truncation of a weight on the positive integers.  All suprema over windows
are taken over the initial segments ``[1, n]`` with ``n <= N``; reports carry
``N`` so that convergence can be studied by increasing the truncation.

Every class constant here is computed in O(N) from prefix sums.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy.special import zeta

from .errors import (
    AlphaOutOfRange,
    BadExponent,
    LambdaOutOfRange,
    LengthMismatch,
    NegativeEntry,
    ZeroPrefixSum,
    ZeroWeightEntry,
)

__all__ = [
    "Weight",
    "NormReport",
    "as_array",
    "conjugate",
    "check_exponent",
    "ap_norm",
    "a1_norm",
    "ainf_norm",
    "bp_constant",
    "dual_weight",
    "power_phi",
    "factor_compose",
    "ap_norm_profile",
    "interpolate_weights",
    "interpolation_gap",
]


@dataclass(frozen=True)
class Weight:
    """A truncated discrete weight.

    ``power`` is set by the builtin generators for weights of the form
    ``c * k**power``; it enables the analytic tail in :func:`bp_constant`.
    """

    values: np.ndarray
    label: str = ""
    power: Optional[float] = None

    def __post_init__(self):
        arr = np.array(self.values, dtype=float).ravel()
        if arr.size < 1:
            raise LengthMismatch("a weight needs at least one entry")
        if np.any(~np.isfinite(arr)):
            raise NegativeEntry("weight entries must be finite")
        if np.any(arr < 0):
            raise NegativeEntry("weight entries must be nonnegative")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    def __len__(self):
        return self.values.size

    def __array__(self, dtype=None, copy=None):
        return self.values if dtype is None else self.values.astype(dtype)

    @property
    def N(self) -> int:
        return self.values.size


@dataclass
class NormReport:
    """A truncated class constant with the window where it is attained.

    ``argmax_n`` is 1-based.  ``per_n[n-1]`` is the quantity on window ``[1, n]``.
    """

    kind: str
    value: float
    argmax_n: int
    N: int
    per_n: Optional[np.ndarray] = field(default=None, repr=False)
    p: Optional[float] = None

    def to_dict(self, include_per_n=False):
        d = {"kind": self.kind, "value": float(self.value),
             "argmax_n": int(self.argmax_n), "N": int(self.N), "p": self.p}
        if include_per_n and self.per_n is not None:
            d["per_n"] = [float(x) for x in self.per_n]
        return d


def as_array(w) -> np.ndarray:
    """Float array view of a :class:`Weight` or any array-like."""
    if isinstance(w, Weight):
        return w.values
    return np.asarray(w, dtype=float).ravel()


def conjugate(p: float) -> float:
    """Hölder conjugate ``p / (p - 1)``."""
    check_exponent(p)
    return p / (p - 1.0)


def check_exponent(p: float, lower: float = 1.0, strict: bool = True) -> float:
    p = float(p)
    bad = (p <= lower) if strict else (p < lower)
    if not np.isfinite(p) or bad:
        rel = ">" if strict else ">="
        raise BadExponent(f"exponent must satisfy p {rel} {lower:g}, got p = {p:g}")
    return p


def _positive(w, what="weight") -> np.ndarray:
    arr = as_array(w)
    if arr.size < 1:
        raise LengthMismatch(f"{what} is empty")
    if np.any(arr < 0) or np.any(~np.isfinite(arr)):
        raise NegativeEntry(f"{what} entries must be finite and nonnegative")
    if np.any(arr == 0):
        k = int(np.argmax(arr == 0)) + 1
        raise ZeroWeightEntry(f"{what} has a zero entry at index {k}; "
                              "negative powers are undefined")
    return arr


def _report(kind, per_n, p=None) -> NormReport:
    i = int(np.argmax(per_n))
    return NormReport(kind=kind, value=float(per_n[i]), argmax_n=i + 1,
                      N=per_n.size, per_n=per_n, p=p)


def _window_means(x: np.ndarray) -> np.ndarray:
    return np.cumsum(x) / np.arange(1, x.size + 1)


def _ap_per_window(w: np.ndarray, p: float) -> np.ndarray:
    mean_w = _window_means(w)
    mean_inv = _window_means(w ** (-1.0 / (p - 1.0)))
    return mean_w * mean_inv ** (p - 1.0)


def ap_norm(w, p: float) -> NormReport:
    """Truncated Muckenhoupt constant ``[w]_{A_p}``.

    ``max_n (mean_{[1,n]} w) * (mean_{[1,n]} w^{-1/(p-1)})^{p-1}``.
    """
    p = check_exponent(p)
    arr = _positive(w)
    return _report("Ap", _ap_per_window(arr, p), p=p)


def _suffix_max(x: np.ndarray) -> np.ndarray:
    return np.maximum.accumulate(x[::-1])[::-1]


def a1_norm(w) -> NormReport:
    """Truncated ``[w]_{A_1}``: ``max_n Mw(n) / w(n)``.

    ``Mw(n)`` is the largest average over the windows ``[1, m]``, ``m >= n``.
    """
    arr = _positive(w)
    mw = _suffix_max(_window_means(arr))
    return _report("A1", mw / arr)


def ainf_norm(w) -> NormReport:
    """Truncated ``[w]_{A_inf}``: arithmetic over geometric mean per window."""
    arr = _positive(w)
    per_n = _window_means(arr) * np.exp(_window_means(-np.log(arr)))
    return _report("Ainf", per_n)


def bp_constant(w, p: float, analytic_tail: bool = True) -> NormReport:
    """Truncated ``B_p`` constant.

    ``max_n n^p * sum_{k=n}^{N} w(k)/k^p / sum_{k<=n} w(k)``.  The tail sum is
    cut at ``N`` unless ``w`` is a builtin power weight ``c k^lam``
    (``Weight.power`` set) and ``analytic_tail`` is true, in which case
    ``c sum_{k>N} k^{lam-p}`` is added through the Hurwitz zeta function
    (infinite if it diverges).
    """
    p = float(p)
    if not p > 0:
        raise BadExponent(f"B_p needs p > 0, got p = {p:g}")
    arr = as_array(w)
    if np.any(arr < 0):
        raise NegativeEntry("weight entries must be nonnegative")
    head = np.cumsum(arr)
    if np.any(head <= 0):
        n0 = int(np.argmax(head <= 0)) + 1
        raise ZeroPrefixSum(f"sum of w(1..{n0}) is zero")
    k = np.arange(1, arr.size + 1, dtype=float)
    tail = np.cumsum((arr / k ** p)[::-1])[::-1]
    if analytic_tail and isinstance(w, Weight) and w.power is not None:
        s = p - w.power
        c = arr[-1] / float(arr.size) ** w.power
        extra = c * float(zeta(s, arr.size + 1)) if s > 1 else np.inf
        tail = tail + extra
    per_n = k ** p * tail / head
    return _report("Bp", per_n, p=p)


def dual_weight(w, p: float) -> Weight:
    """The dual weight ``w^{1-p'}``; ``[w^{1-p'}]_{A_{p'}} = [w]_{A_p}^{p'-1}``."""
    p = check_exponent(p)
    arr = _positive(w)
    label = w.label if isinstance(w, Weight) else ""
    return Weight(arr ** (1.0 - conjugate(p)), label=f"dual({label})" if label else "dual")


def power_phi(p: float, lam: float) -> float:
    """Asymptotic ``A_p`` constant of the power weight ``n^lam``.

    ``(1/(1+lam)) * ((p-1)/(p-lam-1))^{p-1}`` for ``-1 < lam < p-1``.
    """
    p = check_exponent(p)
    lam = float(lam)
    if not (-1.0 < lam < p - 1.0):
        raise LambdaOutOfRange(f"need -1 < lambda < p-1 = {p - 1:g}, got {lam:g}")
    return (1.0 / (1.0 + lam)) * ((p - 1.0) / (p - lam - 1.0)) ** (p - 1.0)


def _same_length(a, b):
    if a.size != b.size:
        raise LengthMismatch(f"lengths differ: {a.size} vs {b.size}")


def factor_compose(w1, w2, p: float) -> Weight:
    """Reverse factorization ``w1 * w2^{1-p}``.

    For truncated ``A_1`` weights the result satisfies
    ``[w1 w2^{1-p}]_{A_p} <= [w1]_{A_1} [w2]_{A_1}^{p-1}``.
    """
    p = check_exponent(p)
    a, b = _positive(w1, "w1"), _positive(w2, "w2")
    _same_length(a, b)
    return Weight(a * b ** (1.0 - p), label="w1*w2^(1-p)")


def ap_norm_profile(w, p_grid: Sequence[float]) -> list[NormReport]:
    """``ap_norm`` on an increasing grid of exponents (nonincreasing in p)."""
    grid = [check_exponent(p) for p in p_grid]
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise BadExponent("p_grid must be strictly increasing")
    arr = _positive(w)
    return [_report("Ap", _ap_per_window(arr, p), p=p) for p in grid]


def interpolate_weights(w1, w2, alpha: float, p: Optional[float] = None) -> Weight:
    """Geometric interpolation ``w1^alpha * w2^{1-alpha}``, ``0 < alpha <= 1``.

    For ``A_p`` the truncated constant obeys
    ``[w1^a w2^{1-a}]_{A_p} <= [w1]^a [w2]^{1-a}`` (Hölder per window);
    equality is not guaranteed, see :func:`interpolation_gap`.
    """
    if p is not None:
        check_exponent(p)
    alpha = float(alpha)
    if not (0.0 < alpha <= 1.0):
        raise AlphaOutOfRange(f"alpha must lie in (0, 1], got {alpha:g}")
    a, b = _positive(w1, "w1"), _positive(w2, "w2")
    _same_length(a, b)
    if alpha == 1.0:
        return Weight(a.copy(), label="w1")
    return Weight(a ** alpha * b ** (1.0 - alpha), label=f"w1^{alpha:g}*w2^{1 - alpha:g}")


def interpolation_gap(w1, w2, alpha: float, p: float) -> dict:
    """Measured gap between both sides of the interpolation bound."""
    lhs = ap_norm(interpolate_weights(w1, w2, alpha, p), p).value
    rhs = ap_norm(w1, p).value ** alpha * ap_norm(w2, p).value ** (1.0 - alpha)
    return {"lhs": lhs, "rhs": rhs, "gap": rhs - lhs, "holds": lhs <= rhs * (1 + 1e-9)}
