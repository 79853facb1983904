import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from discrete_rdf import InequalityInstance, eval_sides, violation_search, zeta_constant
from discrete_rdf.errors import BadForm, BudgetTooSmall, HypothesisViolation, TooShort
from discrete_rdf.falsifier import FORMS


def by_hand_plain_pos():
    # sum 1/k^2 (v1+..+vk)^1.2  and  1.2^1.2 sum k^-0.8 vk^1.2 for v = (100,1,1,1)
    S = [100, 101, 102, 103]
    lhs = math.fsum(s ** 1.2 / k ** 2 for k, s in enumerate(S, 1))
    rhs = 1.2 ** 1.2 * math.fsum(x ** 1.2 / k ** 0.8 for k, x in enumerate([100, 1, 1, 1], 1))
    return lhs, rhs


def test_plain_positive_reproduces_printed_values():
    lhs, rhs, violated = eval_sides(InequalityInstance("kl1_unweighted_pos", 0.2, 1.2, [100, 1, 1, 1]))
    assert (lhs, rhs) == pytest.approx(by_hand_plain_pos(), rel=1e-14)
    assert lhs == pytest.approx(359.587, abs=5e-4)
    assert rhs == pytest.approx(314.263, abs=5e-4)
    assert violated


def test_shifted_positive_reproduces_printed_values():
    lhs, rhs, violated = eval_sides(InequalityInstance("ka1_pos", 0.2, 1.2, [100, 1, 1, 1]))
    hand = math.fsum([0.0, 100 ** 1.2 / 2 ** 0.8, 50.5 ** 1.2 / 3 ** 0.8, 34 ** 1.2 / 4 ** 0.8])
    assert lhs == pytest.approx(hand, rel=1e-14)
    assert lhs == pytest.approx(212.922, abs=5e-4)
    assert rhs == pytest.approx(314.263, abs=5e-4)
    assert not violated


def test_negative_beta_forms_by_hand():
    v = [1, 5, 9, 13, 17]
    S = np.cumsum(v)
    lhs, rhs, violated = eval_sides(InequalityInstance("kl1_unweighted_neg", 0.1, -0.9, v))
    assert lhs == pytest.approx(math.fsum(S ** -0.9), rel=1e-14)
    assert lhs == pytest.approx(1.36913, abs=5e-6)
    hand_rhs = 0.9 ** -0.9 * math.fsum(x ** -0.9 / k ** 0.9 for k, x in enumerate(v, 1))
    assert rhs == pytest.approx(hand_rhs, rel=1e-14)
    assert violated
    lhs2, rhs2, violated2 = eval_sides(InequalityInstance("ka1_neg", 0.1, -0.9, v))
    avg = S[:-1] / np.arange(1, 5)
    assert lhs2 == pytest.approx(math.fsum(avg ** -0.9 / np.arange(2, 6) ** 0.9), rel=1e-14)
    # the shifted and plain negative forms share one right-hand side
    assert rhs2 == rhs
    assert not violated2


def test_zero_sequence():
    for form, a, b in (("kl1", 0.3, 1.5), ("ka1", 0.3, 2.0), ("kl1_unweighted_pos", 0.5, 1.5)):
        lhs, rhs, violated = eval_sides(InequalityInstance(form, a, b, np.zeros(5)))
        assert lhs == rhs == 0 and not violated


def test_weighted_form_reduces_to_unweighted():
    v = [3.0, 0.5, 2.0, 7.0]
    plain = eval_sides(InequalityInstance("kl1", 0.2, 1.2, v))
    weighted = eval_sides(InequalityInstance("kl1", 0.2, 1.2, v, lam=np.ones(4)))
    special = eval_sides(InequalityInstance("kl1_unweighted_pos", 0.2, 1.2, v))
    assert plain == pytest.approx(weighted) and plain == pytest.approx(special)


def test_hypotheses_enforced():
    with pytest.raises(HypothesisViolation):
        InequalityInstance("kl1", 1.2, 2.0, [1, 2])
    with pytest.raises(HypothesisViolation):
        InequalityInstance("kl1", 0.5, 0.5, [1, 2])
    with pytest.raises(HypothesisViolation):
        InequalityInstance("kl1_unweighted_pos", 0.2, 1.5, [1, 2])
    with pytest.raises(HypothesisViolation):
        InequalityInstance("ka1_neg", 0.1, -0.9, [1, 0])
    with pytest.raises(HypothesisViolation):
        InequalityInstance("kl1_unweighted_pos", 0.2, 1.2, [1, 2], lam=[1, 2])
    with pytest.raises(BadForm):
        InequalityInstance("kl2", 0.2, 1.2, [1, 2])


def test_zeta_constant():
    assert zeta_constant(np.ones(5)) == pytest.approx(2.0)
    assert zeta_constant([1, 3]) == pytest.approx(4.0)
    q, N = 1.5, 12
    lam = q ** np.arange(N)
    cum = np.cumsum(lam)
    assert zeta_constant(lam) == pytest.approx(max(cum[k] / cum[k - 1] for k in range(1, N)))
    with pytest.raises(TooShort):
        zeta_constant([1.0])


def test_search_finds_known_violation():
    res = violation_search("kl1_unweighted_pos", 4, 0.2, 1.2, budget=10_000, seed=0)
    assert res.margin > 0
    assert res.instance.v.min() == pytest.approx(1.0)


def test_search_shifted_form_stays_below():
    res = violation_search("ka1_pos", 4, 0.2, 1.2, budget=10_000, seed=0)
    assert res.margin <= 0
    assert max(res.log) <= 1.0


def test_search_budget_one_returns_seed_instance():
    a = violation_search("ka1_neg", 5, 0.1, -0.9, budget=1, seed=7)
    b = violation_search("ka1_neg", 5, 0.1, -0.9, budget=1, seed=7)
    assert a.evaluations == 1
    assert np.array_equal(a.instance.v, b.instance.v) and a.margin == b.margin
    with pytest.raises(BudgetTooSmall):
        violation_search("ka1_neg", 5, 0.1, -0.9, budget=0)


def test_instance_json_fields():
    d = InequalityInstance("kl1", 0.2, 1.2, [1, 2], lam=[1, 3]).to_dict()
    assert set(d) >= {"form", "N", "alpha", "beta", "lambda", "v", "lhs", "rhs", "margin"}


# --- properties --------------------------------------------------------------

vectors = arrays(np.float64, st.integers(1, 20), elements=st.floats(1e-2, 1e2))
alphas = st.floats(0.05, 0.95)
betas = st.one_of(st.floats(-3.0, -0.05), st.floats(1.0, 4.0))


@given(vectors, alphas, betas, st.sampled_from(["kl1", "ka1"]))
def test_summation_order_irrelevant(v, a, b, form):
    lhs, rhs, _ = eval_sides(InequalityInstance(form, a, b, v))
    lam = np.ones(v.size)
    # reversing the order of accumulation in a direct loop
    Lam = np.cumsum(lam)
    S = np.cumsum(v)
    coef = lam / Lam ** (1 - a)
    if form == "ka1":
        terms = [coef[k] * (S[k - 1] / Lam[k - 1]) ** b for k in range(1, v.size)]
    else:
        terms = [coef[k] * (S[k] / Lam[k]) ** b for k in range(v.size)]
    rev = sum(reversed(terms))
    assert rev == pytest.approx(lhs, rel=1e-10, abs=1e-300)


@given(vectors, alphas, betas, st.floats(1e-2, 1e2))
def test_homogeneity(v, a, b, c):
    lam = np.linspace(1, 2, v.size)
    lhs, rhs, viol = eval_sides(InequalityInstance("kl1", a, b, v, lam=lam))
    lhs_c, rhs_c, viol_c = eval_sides(InequalityInstance("kl1", a, b, c * v, lam=lam))
    assert lhs_c == pytest.approx(c ** b * lhs, rel=1e-10)
    assert rhs_c == pytest.approx(c ** b * rhs, rel=1e-10)
    if abs(lhs - rhs) > 1e-9 * max(lhs, rhs):
        assert viol == viol_c


@given(arrays(np.float64, st.integers(2, 30), elements=st.floats(1e-3, 1e3)))
def test_zeta_lower_bound(lam):
    cum = np.cumsum(lam)
    assert zeta_constant(lam) >= 1 + lam.min() / cum[-2] - 1e-12
    assert zeta_constant(lam) > 1


def test_all_forms_listed():
    assert set(FORMS) == {"kl1", "kl1_unweighted_pos", "kl1_unweighted_neg",
                          "ka1", "ka1_pos", "ka1_neg"}
