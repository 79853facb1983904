"""Truncated Rubio de Francia iteration and its dual.

``N_S h = sum_{s=0}^{S} M^s h / (2K)^s`` with ``M`` the maximal operator, and
the dual ``N'_S h`` built the same way from ``M' h = M(w h) / w``.  ``K`` is
supplied by the caller and stands for the operator norm (``||M||`` on
``l_p(w)``, or ``||M'||`` on ``l_{p'}(w)``).

Two of the three attached guarantees do not depend on ``K``:

* ``h <= N_S h`` holds termwise;
* sublinearity gives, pointwise,
  ``M(N_S h) <= 2K (N_S h - h) + M^{S+1} h / (2K)^S``, hence
  ``[N_S h]_{A_1} <= 2K (1 + tail_slack)`` with
  ``tail_slack = max_n M^{S+1}h(n) / ((2K)^{S+1} N_S h(n))``.

The norm bound ``||N_S h|| <= 2 ||h||`` needs ``||M^s h|| <= K^s ||h||``, which
is guaranteed only when ``K`` dominates the true norm.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import BadExponent, NonconvergentSeries
from .operators import _maximal, _match, _seq, lp_norm
from .weights import NormReport, _positive, a1_norm, check_exponent, conjugate

__all__ = ["RdfConfig", "RdfResult", "rdf_iterate", "rdf_dual_iterate"]

ITERATE_ELISION = 1000


@dataclass(frozen=True)
class RdfConfig:
    K: float
    max_terms: int = 40
    tail_tol: float = 1e-12

    def __post_init__(self):
        if not (np.isfinite(self.K) and self.K > 0):
            raise BadExponent(f"K must be positive, got {self.K!r}")
        if int(self.max_terms) != self.max_terms or self.max_terms < 0:
            raise BadExponent(f"max_terms must be a nonnegative integer, got {self.max_terms!r}")
        if not self.tail_tol > 0:
            raise BadExponent(f"tail_tol must be positive, got {self.tail_tol!r}")


@dataclass
class RdfResult:
    kind: str  # "N" or "N_dual"
    iterate: np.ndarray = field(repr=False)
    term_norms: list
    tail_bound: float
    tail_slack: float
    a1_report: Optional[NormReport]
    K: float
    exponent: float  # exponent of the space the norms live in
    h_norm: float
    iterate_norm: float
    checks: dict
    remainder: np.ndarray = field(repr=False, default=None)

    @property
    def terms(self) -> int:
        return len(self.term_norms) - 1

    def to_dict(self, include_iterate: Optional[bool] = None):
        if include_iterate is None:
            include_iterate = self.iterate.size <= ITERATE_ELISION
        d = {
            "kind": self.kind,
            "K": float(self.K),
            "exponent": float(self.exponent),
            "term_norms": [float(x) for x in self.term_norms],
            "tail_bound": float(self.tail_bound),
            "tail_slack": float(self.tail_slack),
            "a1_value": None if self.a1_report is None else float(self.a1_report.value),
            "h_norm": float(self.h_norm),
            "iterate_norm": float(self.iterate_norm),
            "checks": self.checks,
        }
        if include_iterate:
            d["iterate"] = [float(x) for x in self.iterate]
        return d

    def csv_rows(self):
        yield ["s", "term_norm"]
        for s, t in enumerate(self.term_norms):
            yield [s, float(t)]


def _series(h, step, q, w, cfg, kind, a1_of):
    h_norm = lp_norm(h, w, q)
    two_k = 2.0 * cfg.K
    iterate = h.astype(float).copy()
    term_norms = [h_norm]
    g, scale, stalled = h, 1.0, 0
    for _ in range(int(cfg.max_terms)):
        g = step(g)
        scale *= two_k
        term = lp_norm(g, w, q) / scale
        iterate += g / scale
        prev = term_norms[-1]
        term_norms.append(term)
        stalled = stalled + 1 if prev > 0 and term >= prev else 0
        if stalled >= 3:
            raise NonconvergentSeries(
                f"term norms stopped decaying after {len(term_norms) - 1} terms; "
                f"K = {cfg.K:g} is probably below the operator norm")
        if term < cfg.tail_tol * h_norm:
            break
    terms = len(term_norms) - 1
    remainder = step(g) / (scale * two_k)
    pos = iterate > 0
    tail_slack = float(np.max(remainder[pos] / iterate[pos])) if pos.any() else 0.0

    a1 = a1_of(iterate) if np.all(iterate > 0) else None
    iterate_norm = lp_norm(iterate, w, q)
    checks = {
        "i": {"holds": bool(np.all(h <= iterate))},
        "ii": {"lhs": iterate_norm, "rhs": 2.0 * h_norm, "sum_term_norms": float(sum(term_norms)),
               "holds": bool(iterate_norm <= 2.0 * h_norm * (1 + 1e-9))},
        "iii": {"lhs": None if a1 is None else a1.value,
                "rhs": two_k * (1.0 + tail_slack),
                "holds": a1 is None or bool(a1.value <= two_k * (1.0 + tail_slack) * (1 + 1e-12))},
    }
    return RdfResult(kind=kind, iterate=iterate, term_norms=term_norms,
                     tail_bound=h_norm * 2.0 ** (-terms), tail_slack=tail_slack,
                     a1_report=a1, K=cfg.K, exponent=q, h_norm=h_norm,
                     iterate_norm=iterate_norm, checks=checks, remainder=remainder)


def rdf_iterate(h, w, p: float, cfg: RdfConfig) -> RdfResult:
    """Truncated Rubio de Francia majorant of ``h`` in ``l_p(w)``.

    Stops early once a term norm drops below ``tail_tol * ||h||``; raises
    :class:`NonconvergentSeries` if term norms fail to decrease three times
    in a row.
    """
    p = check_exponent(p)
    arr, wt = _seq(h, "h"), _positive(w)
    _match(arr, wt)
    return _series(arr, _maximal, p, wt, cfg, "N", a1_norm)


def rdf_dual_iterate(h, w, p: float, cfg: RdfConfig) -> RdfResult:
    """Dual iteration with ``M' h = M(w h) / w`` in ``l_{p'}(w)``.

    ``cfg.K`` stands for ``||M'||`` on ``l_{p'}(w)``; the attached ``A_1``
    report is for ``w * N'_S h``.
    """
    p = check_exponent(p)
    arr, wt = _seq(h, "h"), _positive(w)
    _match(arr, wt)
    q = conjugate(p)
    return _series(arr, lambda g: _maximal(wt * g) / wt, q, wt, cfg, "N_dual",
                   lambda it: a1_norm(wt * it))
