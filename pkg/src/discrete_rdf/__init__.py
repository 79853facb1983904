"""Truncated discrete Muckenhoupt weights, discrete maximal operators,
the Rubio de Francia iteration and extrapolation of weighted inequalities."""

from .errors import *  # noqa: F401,F403
from .weights import (
    NormReport,
    Weight,
    a1_norm,
    ainf_norm,
    ap_norm,
    ap_norm_profile,
    bp_constant,
    conjugate,
    dual_weight,
    factor_compose,
    interpolate_weights,
    interpolation_gap,
    power_phi,
)
from .operators import (
    OperatorNormEstimate,
    apply_operator,
    dual_maximal,
    estimate_operator_norm,
    g_operator,
    hardy,
    lp_norm,
    maximal,
    maximal_windows,
    weighted_maximal,
)
from .rdf import RdfConfig, RdfResult, rdf_dual_iterate, rdf_iterate
from .extrapolation import (
    PairFamily,
    Phi0,
    TransferConstant,
    corollary_ainf_reduce,
    corollary_rescale,
    extrapolation_verify,
    lemma_l1star_check,
    lemma_lstar_check,
    parse_phi0,
    transfer_constant,
)
from .falsifier import InequalityInstance, eval_sides, violation_search, zeta_constant
from .generators import parse_spec, power_family, power_weight, read_values, write_values
from .report import emit_report

__version__ = "0.1.0"
