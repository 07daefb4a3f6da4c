import math

import numpy as np
import pytest

from tailkit.errors import DegenerateTail, DomainError, InsufficientGrid, SampleTooSmall
from tailkit.estimators import (
    adjusted_hill,
    comparison_csv,
    double_bootstrap_k,
    estimator_comparison,
    hill,
    moments,
)
from tailkit.fit import mle_alpha_continuous
from tailkit.powerlaw import PowerLawModel, pl_sample
from tailkit.rng import make_rng
from tailkit.sample import make_sample

from oracles import hill_naive, moments_naive


# -- hill ---------------------------------------------------------------------

def test_hill_log_spaced_ladder():
    e = math.e
    s = make_sample([1.0, e, e**2, e**3])
    est = hill(s, k=3)
    assert est.gamma == pytest.approx(2.0, abs=1e-12)  # (3+2+1)/3
    assert est.alpha == pytest.approx(1.5, abs=1e-12)


def test_hill_recovers_pareto_index():
    s = pl_sample(PowerLawModel(alpha=2.5, xmin=1.0), 100_000, seed=7)
    est = hill(s, k=10_000)
    assert est.gamma == pytest.approx(2.0 / 3.0, abs=0.02)
    assert est.stderr == pytest.approx(est.gamma / 100.0, rel=1e-9)


def test_hill_k_bounds():
    s = make_sample([1.0, 2.0, 3.0, 4.0])
    with pytest.raises(DomainError):
        hill(s, k=4)  # k = n
    with pytest.raises(DomainError):
        hill(s, k=1)


def test_hill_degenerate_top():
    s = make_sample([1.0, 5.0, 5.0, 5.0, 5.0])
    with pytest.raises(DegenerateTail):
        hill(s, k=3)


def test_hill_scale_invariant():
    rng = make_rng(3)
    s = make_sample(rng.lognormal(0, 1, 500))
    a = hill(s, 100)
    # power-of-two scaling is exact in binary floats
    b = hill(make_sample(s.values * 8192.0), 100)
    assert a.gamma == b.gamma
    # arbitrary positive scaling is exact up to rounding of the products
    c = hill(make_sample(s.values * 811.7), 100)
    assert c.gamma == pytest.approx(a.gamma, rel=1e-12)


def test_hill_matches_naive_oracle():
    rng = make_rng(8)
    x = rng.pareto(2.0, 400) + 1.0
    s = make_sample(x)
    for k in (2, 17, 100, 399):
        assert hill(s, k).gamma == pytest.approx(hill_naive(list(x), k), rel=1e-12)


def test_hill_equals_continuous_mle_over_top_k():
    # threshold at the (k+1)-th largest value, tail = top k values
    rng = make_rng(21)
    x = np.sort(rng.pareto(1.5, 1000) + 1.0)
    k = 200
    thresh = x[-(k + 1)]
    est = hill(make_sample(x), k)
    alpha_mle, _, _ = mle_alpha_continuous(x[-k:], xmin=thresh)
    assert est.alpha == pytest.approx(alpha_mle, abs=1e-9)


# -- moments --------------------------------------------------------------------

def test_moments_zipf_ladder_converges():
    # deterministic ladder with j-th largest value j^-gamma, gamma = 0.5
    gamma = 0.5
    n = 30_000
    vals = (np.arange(1, n + 1, dtype=float)) ** -gamma
    s = make_sample(vals)
    k = 10_000
    m1, m2, g_naive = moments_naive(list(vals), k)
    est = moments(s, k)
    assert est.gamma == pytest.approx(g_naive, rel=1e-10)
    assert est.gamma == pytest.approx(gamma, abs=0.01)


def test_moments_equals_hill_m1_when_m2_is_2m1sq():
    # on the exponential ladder log-spacings are linear: construct the
    # algebraic identity case directly
    m1 = 0.7
    # choose two-point logs with mean m1 and second moment exactly 2*m1^2
    # logs = m1 +/- d with d^2 = m1^2  ->  logs in {0, 2*m1}
    logs = np.array([0.0, 2 * m1])
    vals = np.exp(np.concatenate([[0.0], logs]))  # threshold at 1.0
    est = moments(make_sample(vals), k=2)
    assert est.gamma == pytest.approx(m1, rel=1e-9)


def test_moments_recovers_pareto_index():
    s = pl_sample(PowerLawModel(alpha=3.0, xmin=1.0), 100_000, seed=9)
    est = moments(s, k=10_000)
    assert est.gamma == pytest.approx(0.5, abs=0.05)
    assert est.alpha == pytest.approx(3.0, abs=0.2)


def test_moments_short_tail_reports_nonpositive_gamma():
    rng = make_rng(14)
    s = make_sample(rng.uniform(0.0, 1.0, 20_000) + 1e-9)
    est = moments(s, k=2_000)
    assert est.gamma <= 0
    assert est.alpha is None


# -- adjusted hill -----------------------------------------------------------------

def test_adjusted_hill_matches_hill_on_pure_pareto():
    s = pl_sample(PowerLawModel(alpha=2.5, xmin=1.0), 100_000, seed=7)
    k = 10_000
    plain = hill(s, k)
    adj = adjusted_hill(s, k)
    assert adj.gamma == pytest.approx(plain.gamma, abs=0.03)


def test_adjusted_hill_reduces_shift_bias():
    # shifted Pareto x + 0.5 has second-order bias; the corrected estimate
    # should beat plain Hill most of the time
    wins = 0
    trials = 20
    for seed in range(trials):
        rng = make_rng(600 + seed)
        x = (1.0 - rng.random(100_000)) ** -0.5 + 0.5  # gamma = 0.5, shifted
        s = make_sample(x)
        k = 5_000
        plain = hill(s, k)
        adj = adjusted_hill(s, k)
        wins += abs(adj.gamma - 0.5) < abs(plain.gamma - 0.5)
    assert wins >= 0.8 * trials


def test_adjusted_hill_insufficient_grid():
    s = make_sample(np.arange(1.0, 40.0))
    with pytest.raises(InsufficientGrid):
        adjusted_hill(s, k=5)


# -- double bootstrap ----------------------------------------------------------------

def test_double_bootstrap_recovery():
    s = pl_sample(PowerLawModel(alpha=2.5, xmin=1.0), 10_000, seed=3)
    k = double_bootstrap_k(s, seed=3)
    assert 2 <= k < len(s)
    est = hill(s, k)
    assert est.gamma == pytest.approx(2.0 / 3.0, abs=0.05)


def test_double_bootstrap_deterministic():
    s = pl_sample(PowerLawModel(alpha=2.0, xmin=1.0), 2_000, seed=8)
    assert double_bootstrap_k(s, seed=5) == double_bootstrap_k(s, seed=5)


def test_double_bootstrap_small_sample():
    s = pl_sample(PowerLawModel(alpha=2.0, xmin=1.0), 100, seed=1)
    with pytest.raises(SampleTooSmall):
        double_bootstrap_k(s, seed=1)


# -- comparison -------------------------------------------------------------------

def test_estimator_comparison_consistent_on_pareto():
    s = pl_sample(PowerLawModel(alpha=2.5, xmin=1.0), 100_000, seed=7)
    ests = estimator_comparison(s, seed=7)
    assert [e.method for e in ests] == ["cns", "hill", "adjusted_hill", "moments"]
    alphas = [e.alpha for e in ests]
    assert all(a is not None for a in alphas)
    assert 2.4 <= min(alphas) and max(alphas) <= 2.6


def test_estimator_comparison_small_sample():
    s = pl_sample(PowerLawModel(alpha=2.0, xmin=1.0), 100, seed=2)
    with pytest.raises(SampleTooSmall):
        estimator_comparison(s, seed=2)


def test_comparison_csv_shape():
    s = pl_sample(PowerLawModel(alpha=2.5, xmin=1.0), 5_000, seed=4)
    text = comparison_csv(estimator_comparison(s, seed=4))
    lines = text.strip().splitlines()
    assert lines[0] == "method,alpha,gamma,threshold,stderr"
    assert len(lines) == 5
    assert lines[1].startswith("cns,")
