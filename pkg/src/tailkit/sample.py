"""Observation containers and the empirical CCDF.

A Sample is an immutable, ascending-sorted array of strictly positive
observations (monthly earnings in USD, attention counts, node degrees).
"""

from dataclasses import dataclass

import numpy as np

from .errors import EmptySample

CONTINUOUS = "continuous"
DISCRETE = "discrete"


@dataclass(frozen=True)
class Sample:
    """Sorted positive observations plus the kind of support they live on.

    `n_rejected` records how many raw inputs were dropped during
    construction (non-finite, zero or negative values).
    """

    values: np.ndarray
    kind: str = CONTINUOUS
    n_rejected: int = 0

    def __post_init__(self):
        if self.kind not in (CONTINUOUS, DISCRETE):
            raise ValueError(f"unknown sample kind: {self.kind!r}")
        v = np.asarray(self.values, dtype=float).ravel()
        if v.size == 0:
            raise EmptySample("sample needs at least one observation")
        if not np.all(np.isfinite(v)):
            raise ValueError("sample values must be finite")
        if np.all(v[1:] >= v[:-1]):
            v = v.copy()  # detach from caller before freezing
        else:
            v = np.sort(v)
        if v[0] <= 0:
            raise ValueError("sample values must be > 0")
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    def __len__(self):
        return self.values.size

    @property
    def min(self) -> float:
        return float(self.values[0])

    @property
    def max(self) -> float:
        return float(self.values[-1])


def make_sample(values, kind: str = CONTINUOUS) -> Sample:
    """Build a Sample from raw values.

    Non-finite and non-positive entries are filtered out (their count is
    reported on the result as `n_rejected`); the rest are sorted ascending.

    Raises EmptySample if nothing survives the filter.
    """
    v = np.asarray(values, dtype=float).ravel()
    keep = np.isfinite(v) & (v > 0)
    rejected = int(v.size - keep.sum())
    v = np.sort(v[keep])
    if v.size == 0:
        raise EmptySample(f"no positive finite values (rejected {rejected})")
    return Sample(values=v, kind=kind, n_rejected=rejected)


def empirical_ccdf(s: Sample):
    """Empirical complementary CDF, one point per distinct value.

    Returns (xs, fracs) where fracs[i] = (# observations >= xs[i]) / n.
    The first fraction is always 1 and fractions are non-increasing.
    """
    xs, counts = np.unique(s.values, return_counts=True)
    n_ge = counts[::-1].cumsum()[::-1]
    return xs, n_ge / len(s)
