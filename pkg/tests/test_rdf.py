import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from discrete_rdf import (
    RdfConfig,
    a1_norm,
    dual_maximal,
    estimate_operator_norm,
    lp_norm,
    maximal,
    rdf_dual_iterate,
    rdf_iterate,
)
from discrete_rdf.errors import BadExponent, NonconvergentSeries
from discrete_rdf.generators import random_ap_weight

GOLDEN_N2 = math.sqrt((3 + math.sqrt(5)) / 4)


def test_zero_input():
    res = rdf_iterate([0, 0, 0], [1, 2, 3], 2, RdfConfig(1.0))
    assert np.all(res.iterate == 0)
    assert all(t == 0 for t in res.term_norms)
    res = rdf_dual_iterate([0, 0], [1, 2], 2, RdfConfig(1.0))
    assert np.all(res.iterate == 0)


def test_one_step_by_hand():
    res = rdf_iterate([1, 0], [1, 1], 2, RdfConfig(1.0, max_terms=1))
    assert res.iterate.tolist() == pytest.approx([1.5, 0.25])
    assert res.terms == 1


def test_certified_constant_at_two_points():
    res = rdf_iterate([1, 0], [1, 1], 2, RdfConfig(GOLDEN_N2, max_terms=40))
    assert all(c["holds"] for c in res.checks.values())
    assert res.tail_slack < 1e-9
    assert all(t <= 2.0 ** -s + 1e-12 for s, t in enumerate(res.term_norms))


def test_dual_with_safety_factor():
    w = np.array([1.0, 4.0])
    K = estimate_operator_norm("dual_maximal", w, 2, seed=0).value * 1.5
    res = rdf_dual_iterate([1, 0], w, 2, RdfConfig(K, max_terms=40))
    assert res.checks["i"]["holds"] and res.checks["ii"]["holds"] and res.checks["iii"]["holds"]
    assert res.a1_report.value == pytest.approx(a1_norm(w * res.iterate).value)


def test_dual_reduces_to_primal_for_unit_weight():
    h = np.array([0.3, 1.0, 0.0, 2.0])
    cfg = RdfConfig(1.7, max_terms=25)
    a = rdf_iterate(h, np.ones(4), 2, cfg)
    b = rdf_dual_iterate(h, np.ones(4), 2, cfg)
    assert np.allclose(a.iterate, b.iterate, rtol=1e-14)


def test_small_K_is_reported():
    # K far below the norm makes the terms grow
    with pytest.raises(NonconvergentSeries):
        rdf_iterate([0, 0, 0, 0, 0, 0, 0, 1], np.ones(8), 2, RdfConfig(0.05, max_terms=40))


def test_config_validation():
    for bad in (dict(K=0.0), dict(K=-1.0), dict(K=1.0, max_terms=-1), dict(K=1.0, tail_tol=0)):
        with pytest.raises(BadExponent):
            RdfConfig(**bad)


def test_serialization_elides_long_iterates():
    short = rdf_iterate(np.ones(5), np.ones(5), 2, RdfConfig(1.5)).to_dict()
    long = rdf_iterate(np.ones(1500), np.ones(1500), 2, RdfConfig(1.5)).to_dict()
    assert "iterate" in short and "iterate" not in long
    for key in ("term_norms", "tail_bound", "a1_value", "checks"):
        assert key in long
    rows = list(rdf_iterate([1, 0], [1, 1], 2, RdfConfig(1.2)).csv_rows())
    assert rows[0] == ["s", "term_norm"] and len(rows) > 2


# --- properties --------------------------------------------------------------

instances = st.tuples(st.integers(0, 2**32 - 1), st.integers(2, 48),
                      st.sampled_from([1.5, 2.0, 3.0]), st.floats(1.0, 3.0))


def _draw(seed, n, p):
    rng = np.random.default_rng(seed)
    w = random_ap_weight(n, p, rng)
    h = np.exp(rng.uniform(-3, 0, n)) * (rng.random(n) < 0.7)
    h[rng.integers(n)] = 1.0
    return w, h


@given(instances)
def test_pointwise_a1_step(inst):
    seed, n, p, K = inst
    w, h = _draw(seed, n, p)
    res = rdf_iterate(h, w, p, RdfConfig(K, max_terms=30))
    rhs = 2 * K * (res.iterate - h + res.remainder)
    assert np.all(maximal(res.iterate) <= rhs * (1 + 1e-10) + 1e-300)
    assert res.checks["i"]["holds"] and res.checks["iii"]["holds"]
    assert res.iterate_norm <= sum(res.term_norms) * (1 + 1e-12)


@given(instances)
def test_pointwise_a1_step_dual(inst):
    seed, n, p, K = inst
    w, h = _draw(seed, n, p)
    res = rdf_dual_iterate(h, w, p, RdfConfig(K, max_terms=30))
    rhs = 2 * K * (res.iterate - h + res.remainder)
    assert np.all(dual_maximal(res.iterate, w) <= rhs * (1 + 1e-10) + 1e-300)
    assert res.checks["i"]["holds"] and res.checks["iii"]["holds"]


@given(instances)
def test_monotone_in_number_of_terms(inst):
    seed, n, p, K = inst
    w, h = _draw(seed, n, p)
    prev = None
    for S in (0, 1, 3, 8):
        it = rdf_iterate(h, w, p, RdfConfig(K, max_terms=S, tail_tol=1e-300)).iterate
        if prev is not None:
            assert np.all(prev <= it)
        prev = it


@given(st.integers(0, 2**32 - 1), st.integers(2, 24))
def test_norm_bound_with_brute_forced_constant(seed, n):
    w, h = _draw(seed, n, 2.0)
    # iterates of h are fed in as candidates so K dominates every step ratio
    steps, g = [], h
    for _ in range(40):
        g = maximal(g)
        steps.append(g)
    K = estimate_operator_norm("maximal", w, 2.0, budget=3000, seed=seed % 1000,
                               extra_candidates=[h] + steps).value
    res = rdf_iterate(h, w, 2.0, RdfConfig(K, max_terms=40))
    assert res.checks["ii"]["holds"]
    assert lp_norm(res.iterate, w, 2.0) <= 2 * lp_norm(h, w, 2.0) * (1 + 1e-9)
