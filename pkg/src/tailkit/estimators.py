"""Order-statistics tail-index estimators and the cross-method comparison.

These complement the likelihood/KS fit as a robustness battery: Hill, a
bias-corrected (adjusted) Hill, and the moments estimator, each reading the
extreme-value index gamma = 1/(alpha - 1) off the top-k log-spacings, with a
double-bootstrap rule to pick k automatically.
"""

import io
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateTail, DomainError, InsufficientGrid, SampleTooSmall
from .fit import FitOptions, select_xmin
from .rng import make_rng
from .sample import Sample

__all__ = [
    "TailIndexEstimate",
    "hill",
    "moments",
    "adjusted_hill",
    "double_bootstrap_k",
    "estimator_comparison",
    "comparison_csv",
]

HILL = "hill"
ADJUSTED_HILL = "adjusted_hill"
MOMENTS = "moments"
CNS = "cns"


@dataclass(frozen=True)
class TailIndexEstimate:
    """One estimator's view of the tail.

    `gamma` is the extreme-value index; `alpha = 1 + 1/gamma` is reported
    only where gamma > 0 (a power-law regime). `k_used` is the number of
    order statistics (or the tail size for the likelihood/KS method), and
    `threshold` the corresponding data threshold.
    """

    method: str
    gamma: float
    alpha: float | None
    k_used: int
    threshold: float
    stderr: float | None = None


def _top_log_spacings(s: Sample, k: int):
    x = s.values
    n = x.size
    if not 2 <= k < n:
        raise DomainError(f"need 2 <= k < n, got k={k}, n={n}")
    thresh = x[n - k - 1]  # (k+1)-th largest
    if x[-1] == thresh:
        raise DegenerateTail("top k+1 order statistics are all equal")
    return np.log(x[n - k:] / thresh), float(thresh)


def hill(s: Sample, k: int) -> TailIndexEstimate:
    """Hill estimator: mean log-spacing of the top k order statistics."""
    logs, thresh = _top_log_spacings(s, k)
    gamma = float(logs.mean())
    return TailIndexEstimate(
        method=HILL, gamma=gamma, alpha=1.0 + 1.0 / gamma, k_used=k,
        threshold=thresh, stderr=gamma / math.sqrt(k))


def moments(s: Sample, k: int) -> TailIndexEstimate:
    """Moments (de Haan) estimator, valid beyond the pure power-law regime.

    gamma = M1 + 1 - 0.5 / (1 - M1^2/M2) with Mr the r-th moment of the top-k
    log-spacings. alpha is reported only when gamma > 0.
    """
    logs, thresh = _top_log_spacings(s, k)
    m1 = float(logs.mean())
    m2 = float((logs**2).mean())
    if m2 == m1 * m1:
        raise DegenerateTail("zero variance of log-spacings")
    gamma = m1 + 1.0 - 0.5 / (1.0 - m1 * m1 / m2)
    alpha = 1.0 + 1.0 / gamma if gamma > 0 else None
    return TailIndexEstimate(method=MOMENTS, gamma=gamma, alpha=alpha,
                             k_used=k, threshold=thresh)


_ADJ_GRID_POINTS = 20
_ADJ_MIN_POINTS = 5


def adjusted_hill(s: Sample, k: int, rho: float = -1.0) -> TailIndexEstimate:
    """Hill with a second-order bias correction.

    Hill estimates over a grid of k' <= k are regressed on the bias
    regressor (k'/n)^(-rho) (second-order parameter rho < 0, default -1) and
    extrapolated to k' -> 0; the regression intercept is the corrected gamma.
    """
    if rho >= 0:
        raise DomainError(f"rho must be negative, got {rho}")
    n = len(s)
    grid = np.unique(np.linspace(max(2, k // 5), k, _ADJ_GRID_POINTS).astype(int))
    grid = grid[grid < n]
    if grid.size < _ADJ_MIN_POINTS:
        raise InsufficientGrid(f"only {grid.size} grid points below k={k}")
    gammas = np.array([hill(s, int(kk)).gamma for kk in grid])
    u = (grid / n) ** (-rho)
    slope, intercept = np.polyfit(u, gammas, 1)
    resid = gammas - (slope * u + intercept)
    stderr = float(np.sqrt((resid**2).mean() / grid.size))
    gamma = float(intercept)
    alpha = 1.0 + 1.0 / gamma if gamma > 0 else None
    return TailIndexEstimate(method=ADJUSTED_HILL, gamma=gamma, alpha=alpha,
                             k_used=k, threshold=hill(s, k).threshold,
                             stderr=stderr)


# -- double bootstrap ---------------------------------------------------------

_DBS_REPLICATES = 200
_DBS_K_FRACTION = 0.9  # ignore k above this fraction of the resample size


def _amse_curve(x: np.ndarray, nb: int, rng, replicates: int) -> np.ndarray:
    """Mean over bootstrap resamples of (M2 - 2*M1^2)^2 for every k < nb."""
    acc = np.zeros(nb - 1)
    for _ in range(replicates):
        sub = np.sort(rng.choice(x, size=nb, replace=True))[::-1]  # descending
        logs = np.log(sub)
        k = np.arange(1, nb)
        c1 = np.cumsum(logs[:-1])
        c2 = np.cumsum(logs[:-1] ** 2)
        m1 = c1 / k - logs[1:]
        m2 = c2 / k - 2.0 * logs[1:] / k * c1 + logs[1:] ** 2
        acc += (m2 - 2.0 * m1**2) ** 2
    return acc / replicates


def double_bootstrap_k(s: Sample, seed: int) -> int:
    """Data-driven order-statistics count k* for the Hill-type estimators.

    Two bootstrap sample sizes n1 = floor(n^0.95) and n2 = floor(n1^2/n);
    for each, k minimizing the bootstrap mean of (M2 - 2*M1^2)^2; the final
    k* = (k1^2/k2) * correction, clamped to [2, n-1]. Deterministic for a
    fixed seed.
    """
    x = s.values
    n = x.size
    if n < 500:
        raise SampleTooSmall(f"double bootstrap needs n >= 500, got {n}")
    rng = make_rng(seed)
    n1 = int(n**0.95)
    n2 = int(n1 * n1 / n)
    ks = []
    for nb in (n1, n2):
        amse = _amse_curve(x, nb, rng, _DBS_REPLICATES)
        hi = max(2, int(_DBS_K_FRACTION * nb))
        k_star = int(np.nanargmin(amse[1:hi])) + 2  # k index offset: amse[0] is k=1
        ks.append(k_star)
    k1, k2 = ks
    # finite-sample correction from the two minimizers (ratio form)
    rho = (1.0 - 2.0 * (math.log(k1) - math.log(n1)) / math.log(k1)) ** (
        math.log(k1) / math.log(n1) - 1.0)
    k_star = int(round(k1 * k1 / k2 * rho))
    return min(max(k_star, 2), n - 1)


def estimator_comparison(s: Sample, seed: int) -> list[TailIndexEstimate]:
    """All four tail estimates on one sample: likelihood/KS fit plus the
    three order-statistics estimators at the double-bootstrap k*."""
    if len(s) < 500:
        raise SampleTooSmall(f"comparison needs n >= 500, got {len(s)}")
    fit = select_xmin(s, FitOptions(kind=s.kind))
    cns = TailIndexEstimate(
        method=CNS, gamma=1.0 / (fit.alpha - 1.0), alpha=fit.alpha,
        k_used=fit.n_tail, threshold=fit.xmin, stderr=fit.stderr)
    k_star = double_bootstrap_k(s, seed)
    return [cns, hill(s, k_star), adjusted_hill(s, k_star), moments(s, k_star)]


def comparison_csv(estimates: list[TailIndexEstimate]) -> str:
    """Comparison table: method, alpha, gamma, threshold (k or xmin), stderr."""
    buf = io.StringIO()
    buf.write("method,alpha,gamma,threshold,stderr\n")
    for e in estimates:
        alpha = "" if e.alpha is None else f"{e.alpha:.10g}"
        thresh = f"{e.threshold:.10g}" if e.method == CNS else str(e.k_used)
        stderr = "" if e.stderr is None else f"{e.stderr:.10g}"
        buf.write(f"{e.method},{alpha},{e.gamma:.10g},{thresh},{stderr}\n")
    return buf.getvalue()
