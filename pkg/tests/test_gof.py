import pytest

from tailkit.errors import DomainError
from tailkit.fit import FitOptions, gof_pvalue, select_xmin
from tailkit.powerlaw import PowerLawModel, pl_sample
from tailkit.rng import make_rng
from tailkit.sample import make_sample


@pytest.fixture(scope="module")
def pareto_fit():
    s = pl_sample(PowerLawModel(alpha=2.3, xmin=1.0), 5000, seed=3)
    return s, select_xmin(s)


def test_gof_true_model_plausible(pareto_fit):
    s, fit = pareto_fit
    g = gof_pvalue(s, fit, n_boot=200, seed=3)
    assert g.p_value >= 0.1
    assert g.n_boot == 200
    assert g.observed_ks == fit.ks


def test_gof_pvalue_is_exact_fraction(pareto_fit):
    s, fit = pareto_fit
    g = gof_pvalue(s, fit, n_boot=100, seed=11)
    assert (g.p_value * g.n_boot) == round(g.p_value * g.n_boot)


def test_gof_misspecified_rejected():
    rng = make_rng(5)
    s = make_sample(rng.exponential(3.0, 5000) + 1.0)
    fit = select_xmin(s)
    g = gof_pvalue(s, fit, n_boot=200, seed=5)
    assert g.p_value < 0.1


def test_gof_rejects_tiny_n_boot(pareto_fit):
    s, fit = pareto_fit
    with pytest.raises(DomainError):
        gof_pvalue(s, fit, n_boot=0, seed=1)
    with pytest.raises(DomainError):
        gof_pvalue(s, fit, n_boot=99, seed=1)


def test_gof_deterministic_and_worker_invariant(pareto_fit):
    s, fit = pareto_fit
    a = gof_pvalue(s, fit, n_boot=100, seed=21)
    b = gof_pvalue(s, fit, n_boot=100, seed=21)
    c = gof_pvalue(s, fit, n_boot=100, seed=21, workers=2)
    assert a.p_value == b.p_value == c.p_value
    d = gof_pvalue(s, fit, n_boot=100, seed=22)
    assert d.seed != a.seed


def test_gof_all_tail_sample():
    # xmin at the sample minimum: body is empty, every draw is a tail draw
    s = pl_sample(PowerLawModel(alpha=2.0, xmin=1.0), 2000, seed=9)
    fit = select_xmin(s, FitOptions(xmin_override=s.min))
    g = gof_pvalue(s, fit, n_boot=100, seed=2)
    assert 0.0 <= g.p_value <= 1.0
