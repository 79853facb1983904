"""Factorization lemmas, transfer constants and empirical extrapolation.

The two lemma checks build a truncated Rubio de Francia majorant and test
the ``A_{p0}`` bound for the modified weight it produces.  Both bounds follow
per window from the truncated ``A_1`` property of the majorant, so they hold
for any positive ``K``; only the size of the right-hand side depends on it.

:func:`transfer_constant` evaluates the extrapolated constant

* ``p < p0``: ``2^{(p0-p)/p0} phi0((2K)^{p0-p} [w]_{A_p})`` with
  ``K = ||M||`` on ``l_p(w)``;
* ``p > p0``: ``2^{(p-p0)/((p-1)p0)} phi0((2K)^{(p-p0)/(p-1)} [w]_{A_p}^{(p0-1)/(p-1)})``
  with ``K = ||M||`` on ``l_{p'}(w^{1-p'})``.

Both are stated for norms, i.e. ``||f||_{l_p(w)} <= phi_p ||g||_{l_p(w)}``.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import (
    BadExponent,
    BadPhiDescriptor,
    EmptyCorpus,
    ExponentOrder,
    LengthMismatch,
    NegativeEntry,
    UnsupportedOperator,
)
from .operators import apply_operator, estimate_operator_norm, lp_norm
from .rdf import RdfConfig, RdfResult, rdf_dual_iterate, rdf_iterate
from .weights import (
    Weight,
    _positive,
    ap_norm,
    ap_norm_profile,
    as_array,
    check_exponent,
    conjugate,
    dual_weight,
)

__all__ = [
    "Phi0",
    "parse_phi0",
    "LemmaReport",
    "lemma_lstar_check",
    "lemma_l1star_check",
    "TransferConstant",
    "transfer_constant",
    "PairFamily",
    "sequence_corpus",
    "operator_family",
    "fit_phi0_envelope",
    "ExtrapolationReport",
    "extrapolation_verify",
    "corollary_rescale",
    "corollary_ainf_reduce",
    "locate_ap_exponent",
]

SAME_TOL = 1e-12


# ---------------------------------------------------------------------------
# phi0 descriptors


@dataclass(frozen=True)
class Phi0:
    """Positive increasing function ``x -> c x^a`` (``a >= 0``).

    ``form`` only records how it was written: ``linear`` is ``a = 1``,
    ``const`` is ``a = 0``.
    """

    form: str
    c: float
    a: float = 1.0

    def __call__(self, x):
        return self.c * np.power(x, self.a)

    def to_dict(self):
        return {"form": self.form, "c": float(self.c), "a": float(self.a)}

    def __str__(self):
        if self.form == "linear":
            return f"linear:c={self.c:.12g}"
        if self.form == "const":
            return f"const:c={self.c:.12g}"
        return f"power:c={self.c:.12g},a={self.a:.12g}"


def parse_phi0(desc) -> Phi0:
    """Parse ``linear:c=<f>``, ``power:c=<f>,a=<f>`` or ``const:c=<f>``."""
    if isinstance(desc, Phi0):
        return desc
    if not isinstance(desc, str) or ":" not in desc:
        raise BadPhiDescriptor(f"not a phi0 descriptor: {desc!r}")
    form, body = desc.split(":", 1)
    args = {}
    for part in filter(None, body.split(",")):
        key, _, val = part.partition("=")
        try:
            args[key.strip()] = float(val)
        except ValueError:
            raise BadPhiDescriptor(f"bad number in {desc!r}") from None
    if "c" not in args or not args["c"] > 0:
        raise BadPhiDescriptor(f"{desc!r} needs c > 0")
    if form == "linear":
        return Phi0("linear", args["c"], 1.0)
    if form == "const":
        return Phi0("const", args["c"], 0.0)
    if form == "power":
        a = args.get("a", 1.0)
        if a < 0:
            raise BadPhiDescriptor(f"{desc!r}: exponent a must be >= 0")
        return Phi0("power", args["c"], a)
    raise BadPhiDescriptor(f"unknown phi0 form {form!r}")


# ---------------------------------------------------------------------------
# lemma checks


@dataclass
class LemmaReport:
    lemma: str
    lhs: float
    rhs: float
    a1_value: float
    ap_value: float
    instance_digest: str
    rdf: RdfResult = field(repr=False)

    @property
    def gap(self) -> float:
        return self.rhs - self.lhs

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs * (1 + 1e-9)

    def to_dict(self):
        return {"lemma": self.lemma, "lhs": self.lhs, "rhs": self.rhs, "gap": self.gap,
                "holds": self.holds, "a1_value": self.a1_value, "ap_value": self.ap_value,
                "instance_digest": self.instance_digest}


def _digest(*parts) -> str:
    h = hashlib.sha256()
    for part in parts:
        if isinstance(part, np.ndarray):
            h.update(np.ascontiguousarray(part, dtype="<f8").tobytes())
        else:
            h.update(repr(part).encode())
        h.update(b"|")
    return h.hexdigest()[:16]


def lemma_lstar_check(w, h, p: float, p0: float, cfg: RdfConfig) -> LemmaReport:
    """Check ``[w (Nh)^{-(p0-p)}]_{A_p0} <= [Nh]_{A_1}^{p0-p} [w]_{A_p}`` for ``p < p0``."""
    p, p0 = check_exponent(p), check_exponent(p0)
    if not p < p0:
        raise ExponentOrder(f"this lemma needs p < p0, got p = {p:g}, p0 = {p0:g}")
    wt, hv = _positive(w), _positive(h, "h")
    res = rdf_iterate(hv, wt, p, cfg)
    u = wt * res.iterate ** (-(p0 - p))
    lhs = ap_norm(u, p0).value
    apw = ap_norm(wt, p).value
    rhs = res.a1_report.value ** (p0 - p) * apw
    return LemmaReport("L*", lhs, rhs, res.a1_report.value, apw,
                       _digest("L*", wt, hv, p, p0, cfg.K, cfg.max_terms), res)


def lemma_l1star_check(w, h, p: float, p0: float, cfg: RdfConfig) -> LemmaReport:
    """Check ``[w (N'h)^{(p-p0)/(p-1)}]_{A_p0} <= [w N'h]_{A_1}^{(p-p0)/(p-1)} [w]_{A_p}^{(p0-1)/(p-1)}``.

    Requires ``p0 < p``; ``cfg.K`` stands for ``||M'||`` on ``l_{p'}(w)``.
    """
    p, p0 = check_exponent(p), check_exponent(p0)
    if not p0 < p:
        raise ExponentOrder(f"this lemma needs p0 < p, got p = {p:g}, p0 = {p0:g}")
    wt, hv = _positive(w), _positive(h, "h")
    res = rdf_dual_iterate(hv, wt, p, cfg)
    e = (p - p0) / (p - 1.0)
    u = wt * res.iterate ** e
    lhs = ap_norm(u, p0).value
    apw = ap_norm(wt, p).value
    rhs = res.a1_report.value ** e * apw ** ((p0 - 1.0) / (p - 1.0))
    return LemmaReport("L1*", lhs, rhs, res.a1_report.value, apw,
                       _digest("L1*", wt, hv, p, p0, cfg.K, cfg.max_terms), res)


# ---------------------------------------------------------------------------
# transfer constants


@dataclass
class TransferConstant:
    p0: float
    p: float
    regime: str
    K: float
    ap_norm_value: float
    value: float
    phi0: Phi0
    prefactor: float
    argument: float

    @property
    def formula(self) -> str:
        if self.regime == "down":
            return "2^((p0-p)/p0) * phi0((2K)^(p0-p) * [w]_Ap)"
        if self.regime == "up":
            return "2^((p-p0)/((p-1)p0)) * phi0((2K)^((p-p0)/(p-1)) * [w]_Ap^((p0-1)/(p-1)))"
        return "phi0([w]_Ap)"

    def to_dict(self):
        return {"p0": self.p0, "p": self.p, "regime": self.regime, "K": self.K,
                "ap_norm_value": self.ap_norm_value, "value": self.value,
                "phi0": self.phi0.to_dict(), "prefactor": self.prefactor,
                "argument": self.argument, "formula": self.formula}

    def to_text(self):
        return "\n".join([
            f"regime: {self.regime} (p0 = {self.p0:.12g}, p = {self.p:.12g})",
            f"formula: {self.formula}",
            f"phi0: {self.phi0}",
            f"K = {self.K:.12g}, [w]_Ap = {self.ap_norm_value:.12g}",
            f"prefactor = {self.prefactor:.12g}, phi0 argument = {self.argument:.12g}",
            f"value = {self.value:.12g}",
        ])


def transfer_constant(p0: float, p: float, phi0, K: float, apw: float) -> TransferConstant:
    """Extrapolated constant ``phi_p(p0, p, [w]_{A_p})``.

    ``K`` is ``||M||`` on ``l_p(w)`` when ``p < p0`` and ``||M||`` on
    ``l_{p'}(w^{1-p'})`` when ``p > p0``; it is ignored when ``p == p0``.
    """
    p0, p = check_exponent(p0), check_exponent(p)
    phi = parse_phi0(phi0)
    K, apw = float(K), float(apw)
    if not K > 0:
        raise BadExponent(f"K must be positive, got {K:g}")
    if not apw >= 1 - 1e-12:
        raise BadExponent(f"an A_p constant is at least 1, got {apw:g}")
    if abs(p - p0) <= SAME_TOL:
        regime, pre, arg = "same", 1.0, apw
    elif p < p0:
        regime = "down"
        pre = 2.0 ** ((p0 - p) / p0)
        arg = (2.0 * K) ** (p0 - p) * apw
    else:
        regime = "up"
        pre = 2.0 ** ((p - p0) / ((p - 1.0) * p0))
        arg = (2.0 * K) ** ((p - p0) / (p - 1.0)) * apw ** ((p0 - 1.0) / (p - 1.0))
    return TransferConstant(p0, p, regime, K, apw, float(pre * phi(arg)), phi, pre, arg)


# ---------------------------------------------------------------------------
# pair families


@dataclass
class PairFamily:
    """Pairs ``(f, g)`` of nonnegative sequences of equal length."""

    pairs: list
    description: str = ""

    def __post_init__(self):
        clean = []
        for f, g in self.pairs:
            f, g = as_array(f).astype(float), as_array(g).astype(float)
            if f.size != g.size:
                raise LengthMismatch(f"pair lengths differ: {f.size} vs {g.size}")
            if np.any(f < 0) or np.any(g < 0):
                raise NegativeEntry("pair entries must be nonnegative")
            clean.append((f, g))
        self.pairs = clean

    def __len__(self):
        return len(self.pairs)

    def ratios(self, w, p: float):
        """``||f|| / ||g||`` on ``l_p(w)`` per pair; ``None`` when ``g = 0``."""
        out = []
        for f, g in self.pairs:
            den = lp_norm(g, w, p)
            out.append(None if den == 0 else lp_norm(f, w, p) / den)
        return out


def sequence_corpus(n: int, seed: int = 0, n_random: int = 8) -> list:
    """Deterministic test sequences: indicators, powers, spikes, random."""
    n = int(n)
    k = np.arange(1, n + 1, dtype=float)
    seqs = [np.ones(n)]
    for m in sorted({int(x) for x in np.unique(np.geomspace(1, n, 12).astype(int))}):
        e = np.zeros(n)
        e[:m] = 1.0
        seqs.append(e)
    for gamma in np.linspace(0.1, 1.5, 15):
        seqs.append(k ** -gamma)
    for pos in sorted({0, n // 4, n // 2, n - 1}):
        e = np.zeros(n)
        e[pos] = 1.0
        seqs.append(e)
    rng = np.random.default_rng(seed)
    for _ in range(n_random):
        seqs.append(np.exp(rng.uniform(np.log(1e-3), 0.0, n)))
    for _ in range(n_random // 2):
        seqs.append(np.sort(rng.uniform(0.0, 1.0, n))[::-1].copy())
    return seqs


def operator_family(T: str, sequences: Sequence) -> PairFamily:
    """The pairs ``(T f, f)``."""
    if T not in ("hardy", "maximal", "identity"):
        raise UnsupportedOperator(f"T must be hardy, maximal or identity, got {T!r}")
    return PairFamily([(apply_operator(T, f), f) for f in sequences], description=f"({T} f, f)")


def fit_phi0_envelope(points) -> Phi0:
    """Upper envelope ``c x^a`` (``a >= 0``) of ``(x, ratio)`` points.

    Least squares in log-log coordinates fixes the slope (clipped at 0);
    ``c`` is then raised until every point lies on or below the curve.
    """
    pts = np.array([(x, r) for x, r in points if r is not None and r > 0], dtype=float)
    if pts.size == 0:
        raise EmptyCorpus("no usable (A_p norm, ratio) points to fit phi0")
    lx, lr = np.log(pts[:, 0]), np.log(pts[:, 1])
    a = 0.0
    if np.ptp(lx) > 1e-9:
        a = max(0.0, float(np.polyfit(lx, lr, 1)[0]))
    c = float(np.max(lr - a * lx))
    return Phi0("power", math.exp(c) * (1 + 1e-12), a)


@dataclass
class ExtrapolationReport:
    T: str
    p0: float
    p: float
    phi0: Phi0
    stage1: list
    predictions: list
    skipped_pairs: int
    safety: float

    @property
    def violations(self) -> list:
        return [d for d in self.predictions if d["violated"]]

    def to_dict(self):
        return {"T": self.T, "p0": self.p0, "p": self.p, "phi0": self.phi0.to_dict(),
                "safety": self.safety, "stage1": self.stage1,
                "K": [d["K"] for d in self.predictions],
                "predictions": self.predictions, "violations": self.violations,
                "skipped_pairs": self.skipped_pairs}

    def csv_rows(self):
        yield ["label", "ap_norm", "K", "predicted", "measured", "violated"]
        for d in self.predictions:
            yield [d["label"], d["ap_norm"], d["K"], d["predicted"], d["measured"], d["violated"]]


def _measured_ratio(T, family, w, q, budget, seed):
    """Largest ``||Tf|| / ||f||`` over the family and an adversarial search."""
    ratios = family.ratios(w, q)
    skipped = sum(r is None for r in ratios)
    best = max((r for r in ratios if r is not None), default=None)
    if T != "identity" and budget > 0:
        est = estimate_operator_norm(T, w, q, budget=budget, seed=seed)
        best = est.value if best is None else max(best, est.value)
    return best, skipped


def extrapolation_verify(T: str, weights_p0: Sequence, weights_p: Sequence, p0: float,
                         p: float, budget: int = 2000, seed: int = 0,
                         family: Optional[PairFamily] = None, safety: float = 1.5,
                         K_budget: Optional[int] = None) -> ExtrapolationReport:
    """Measure ``phi0`` at ``p0`` and check the transferred bound at ``p``.

    Stage 1 records, for every ``w0`` in ``weights_p0``, the point
    ``([w0]_{A_p0}, sup ||Tf||/||f||)`` and fits an upper envelope ``phi0``.
    Stage 2 predicts ``phi_p`` for every ``w`` in ``weights_p`` with the
    estimated maximal-operator norm times ``safety`` as ``K`` and compares
    it with the measured ratio at ``p``.  Pairs with ``g = 0`` are skipped
    and counted.
    """
    p0, p = check_exponent(p0), check_exponent(p)
    if T not in ("hardy", "maximal", "identity"):
        raise UnsupportedOperator(f"T must be hardy, maximal or identity, got {T!r}")
    if not weights_p0 or not weights_p:
        raise EmptyCorpus("both weight lists must be nonempty")
    n = len(as_array(weights_p0[0]))
    if family is None:
        family = operator_family(T, sequence_corpus(n, seed))
    if len(family) == 0:
        raise EmptyCorpus("pair family is empty")
    K_budget = budget if K_budget is None else K_budget

    def label(w, i):
        return w.label if isinstance(w, Weight) and w.label else f"w{i}"

    stage1, skipped = [], 0
    for i, w0 in enumerate(weights_p0):
        wt = _positive(w0)
        r, s = _measured_ratio(T, family, wt, p0, budget, seed)
        skipped += s
        stage1.append({"label": label(w0, i), "ap_norm": ap_norm(wt, p0).value, "ratio": r})
    phi0 = fit_phi0_envelope([(d["ap_norm"], d["ratio"]) for d in stage1])

    predictions = []
    for i, w in enumerate(weights_p):
        wt = _positive(w)
        apw = ap_norm(wt, p).value
        if p < p0 - SAME_TOL:
            K = estimate_operator_norm("maximal", wt, p, K_budget, seed).value * safety
        elif p > p0 + SAME_TOL:
            q = conjugate(p)
            K = estimate_operator_norm("maximal", dual_weight(wt, p), q, K_budget, seed).value * safety
        else:
            K = 1.0
        tc = transfer_constant(p0, p, phi0, K, apw)
        r, s = _measured_ratio(T, family, wt, p, budget, seed)
        skipped += s
        predictions.append({"label": label(w, i), "ap_norm": apw, "K": K,
                            "predicted": tc.value, "measured": r,
                            "violated": bool(r is not None and r > tc.value * (1 + 1e-12))})
    return ExtrapolationReport(T, p0, p, phi0, stage1, predictions, skipped, safety)


# ---------------------------------------------------------------------------
# corollaries


def corollary_rescale(family: PairFamily, r: float) -> PairFamily:
    """The family of pairs ``(f^r, g^r)``."""
    r = float(r)
    if not r > 0:
        raise BadExponent(f"r must be positive, got {r:g}")
    return PairFamily([(f ** r, g ** r) for f, g in family.pairs],
                      description=f"({family.description})^{r:g}")


def corollary_ainf_reduce(family: PairFamily, p0: float, r: float) -> PairFamily:
    """The family of pairs ``(f^{p0/r}, g^{p0/r})`` for ``p0 > 0``, ``r > 1``."""
    p0, r = float(p0), float(r)
    if not p0 > 0:
        raise BadExponent(f"p0 must be positive, got {p0:g}")
    check_exponent(r)
    e = p0 / r
    return PairFamily([(f ** e, g ** e) for f, g in family.pairs],
                      description=f"({family.description})^({p0:g}/{r:g})")


def locate_ap_exponent(w, p_grid: Sequence[float], bound: float) -> Optional[float]:
    """Smallest grid exponent ``s`` with truncated ``[w]_{A_s} <= bound``."""
    for rep in ap_norm_profile(w, p_grid):
        if rep.value <= bound:
            return rep.p
    return None
