"""Creator-earnings data pipeline.

CSV rows of creator-month records go through: parsing with validation,
linear imputation of missing earnings, an earnings floor, segmentation into
single-platform buckets, and per-bucket summary statistics. Every stage is
a pure function of its inputs; shuffling the input rows changes nothing.

CSV schema (header required, UTF-8):
    creator_id,year,platforms,category,nsfw,members,paid_members,earnings
`platforms` is a semicolon-separated subset of the known platform names;
an empty field means the creator monetizes on the membership platform
alone. `earnings` may be empty (missing, to be imputed).
"""

import csv
import io
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import SampleTooSmall, SchemaError, SingularDesign
from .sample import CONTINUOUS, Sample, make_sample

KNOWN_PLATFORMS = ("facebook", "instagram", "twitch", "twitter", "youtube")
HOME_PLATFORM = "patreon"  # bucket for creators with no other affiliation

CSV_COLUMNS = ("creator_id", "year", "platforms", "category", "nsfw",
               "members", "paid_members", "earnings")


@dataclass(frozen=True)
class EarningsRecord:
    """One creator-month row."""

    creator_id: str
    year: int
    platforms: frozenset
    category: str
    nsfw: bool
    members: int
    paid_members: int
    earnings: float | None = None
    imputed: bool = False


@dataclass(frozen=True)
class PlatformStats:
    """Order-statistics summary of one earnings bucket (USD/month)."""

    platform: str
    obs: int
    mean: float
    median: float
    sd: float
    min: float
    q25: float
    q75: float
    max: float
    sd_degenerate: bool = False  # single observation: sd reported as 0


@dataclass(frozen=True)
class ParseResult:
    records: list
    diagnostics: list = field(default_factory=list)

    @property
    def n_rejected(self) -> int:
        return len(self.diagnostics)


def _parse_bool(text: str) -> bool:
    t = text.strip().lower()
    if t in ("true", "1", "yes"):
        return True
    if t in ("false", "0", "no", ""):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def parse_csv(path) -> ParseResult:
    """Read earnings records, rejecting malformed rows with line-numbered
    diagnostics. Missing required columns raise SchemaError."""
    records, diagnostics = [], []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        missing = [c for c in CSV_COLUMNS if c not in header]
        if missing:
            raise SchemaError(f"missing required columns: {', '.join(missing)}")
        for lineno, row in enumerate(reader, start=2):
            try:
                records.append(_parse_row(row))
            except ValueError as exc:
                diagnostics.append(f"line {lineno}: {exc}")
    return ParseResult(records=records, diagnostics=diagnostics)


def _parse_row(row) -> EarningsRecord:
    year = int(row["year"])
    raw = (row["platforms"] or "").strip()
    platforms = frozenset(p.strip().lower() for p in raw.split(";") if p.strip())
    unknown = platforms - set(KNOWN_PLATFORMS)
    if unknown:
        raise ValueError(f"unknown platform(s): {', '.join(sorted(unknown))}")
    members = int(row["members"])
    paid = int(row["paid_members"])
    if members < 0 or paid < 0:
        raise ValueError("member counts must be nonnegative")
    if paid > members:
        raise ValueError(f"paid_members {paid} exceeds members {members}")
    raw_earn = (row["earnings"] or "").strip()
    earnings = None
    if raw_earn:
        earnings = float(raw_earn)
        if not np.isfinite(earnings) or earnings < 0:
            raise ValueError(f"earnings must be a finite nonnegative number, got {raw_earn}")
    return EarningsRecord(
        creator_id=row["creator_id"].strip(),
        year=year,
        platforms=platforms,
        category=row["category"].strip().lower(),
        nsfw=_parse_bool(row["nsfw"]),
        members=members,
        paid_members=paid,
        earnings=earnings,
        imputed=False,
    )


# -- imputation -----------------------------------------------------------------

def _design_row(rec: EarningsRecord, categories, years) -> np.ndarray:
    """Regression row: intercept, paid_members, members, category one-hots,
    nsfw, year one-hots. The first level of each block is the reference and
    carries no column; unseen levels collapse to the reference."""
    n_cat = max(len(categories) - 1, 0)
    n_year = max(len(years) - 1, 0)
    x = np.zeros(4 + n_cat + n_year)
    x[0] = 1.0
    x[1] = rec.paid_members
    x[2] = rec.members
    if n_cat and rec.category in categories:
        idx = categories.index(rec.category)
        if idx > 0:
            x[2 + idx] = 1.0
    x[3 + n_cat] = 1.0 if rec.nsfw else 0.0
    if n_year and rec.year in years:
        idx = years.index(rec.year)
        if idx > 0:
            x[3 + n_cat + idx] = 1.0
    return x


@dataclass(frozen=True)
class ImputationModel:
    """Linear model of earnings, trained on observed rows only.

    Fit by normal equations with a small ridge jitter for rank safety; see
    `_design_row` for the encoding.
    """

    coef: np.ndarray
    categories: tuple
    years: tuple
    r_squared: float
    n_train: int

    def predict(self, rec: EarningsRecord) -> float:
        return float(_design_row(rec, self.categories, self.years) @ self.coef)

    def knows_category(self, rec: EarningsRecord) -> bool:
        return len(self.categories) <= 1 or rec.category in self.categories


_RIDGE_JITTER = 1e-8
_MIN_TRAIN = 50


def fit_imputation(records) -> ImputationModel:
    """Least-squares earnings model on rows with observed earnings.

    Rows are accumulated in a canonical order so the fit is a pure function
    of the record multiset, not of the input ordering.
    """
    observed = [r for r in records if r.earnings is not None]
    if len(observed) < _MIN_TRAIN:
        raise SampleTooSmall(
            f"imputation needs >= {_MIN_TRAIN} observed rows, got {len(observed)}")
    observed.sort(key=lambda r: (r.creator_id, r.year, r.category, r.earnings))
    categories = tuple(sorted({r.category for r in observed}))
    years = tuple(sorted({r.year for r in observed}))
    X = np.array([_design_row(r, categories, years) for r in observed])
    y = np.array([r.earnings for r in observed])
    gram = X.T @ X + _RIDGE_JITTER * np.eye(X.shape[1])
    try:
        coef = np.linalg.solve(gram, X.T @ y)
    except np.linalg.LinAlgError as exc:
        raise SingularDesign(str(exc)) from None
    if not np.all(np.isfinite(coef)):
        raise SingularDesign("non-finite coefficients")
    resid = y - X @ coef
    tss = float(((y - y.mean()) ** 2).sum())
    r2 = 1.0 - float((resid**2).sum()) / tss if tss > 0 else 1.0
    return ImputationModel(coef=coef, categories=categories, years=years,
                           r_squared=r2, n_train=len(observed))


def impute_earnings(records, model: ImputationModel):
    """Fill missing earnings with model predictions (clamped at 0).

    Observed rows pass through untouched. Rows whose category the model has
    never seen are imputed with the reference-level encoding; their count
    is returned alongside the records.
    """
    out = []
    n_unseen = 0
    for r in records:
        if r.earnings is not None:
            out.append(r)
            continue
        if not model.knows_category(r):
            n_unseen += 1
        pred = max(model.predict(r), 0.0)
        out.append(replace(r, earnings=pred, imputed=True))
    return out, n_unseen


# -- filtering and segmentation ----------------------------------------------------

def filter_floor(records, floor: float = 10.0, inclusive: bool = False):
    """Keep records earning above the floor (or at least it, if inclusive).

    Returns (kept, n_dropped). All records must have earnings by now.
    """
    if inclusive:
        kept = [r for r in records if r.earnings >= floor]
    else:
        kept = [r for r in records if r.earnings > floor]
    return kept, len(records) - len(kept)


def platform_of(rec: EarningsRecord) -> str | None:
    """Single-platform bucket name, or None for multi-platform records."""
    if len(rec.platforms) > 1:
        return None
    if len(rec.platforms) == 1:
        return next(iter(rec.platforms))
    return HOME_PLATFORM


def segment_single_platform(records) -> dict:
    """Earnings samples keyed by platform, multi-platform creators dropped."""
    buckets = {}
    for r in records:
        p = platform_of(r)
        if p is None:
            continue
        buckets.setdefault(p, []).append(r.earnings)
    return {p: make_sample(vals, kind=CONTINUOUS)
            for p, vals in sorted(buckets.items())}


# -- summaries ----------------------------------------------------------------------

def summary_stats(sample: Sample, platform: str = "") -> PlatformStats:
    """Mean, sample SD (n-1), and linear-interpolation quantiles."""
    v = sample.values
    n = v.size
    degenerate = n < 2
    sd = 0.0 if degenerate else float(v.std(ddof=1))
    q25, med, q75 = (float(q) for q in np.quantile(v, [0.25, 0.5, 0.75]))
    return PlatformStats(
        platform=platform, obs=n, mean=float(v.mean()), median=med, sd=sd,
        min=float(v[0]), q25=q25, q75=q75, max=float(v[-1]),
        sd_degenerate=degenerate)


def nsfw_breakdown(records):
    """Per (platform, year): observation count, mean and median earnings,
    and the share of records flagged nsfw. Multi-platform records are
    excluded; empty buckets do not appear."""
    groups = {}
    for r in records:
        p = platform_of(r)
        if p is None:
            continue
        groups.setdefault((p, r.year), []).append(r)
    rows = []
    for (p, year) in sorted(groups):
        recs = groups[(p, year)]
        earn = np.sort(np.array([r.earnings for r in recs], dtype=float))
        share = sum(1 for r in recs if r.nsfw) / len(recs)
        rows.append((p, year, len(recs), float(earn.mean()),
                     float(np.median(earn)), share))
    return rows


# -- table emission -------------------------------------------------------------------

def stats_table_csv(stats_list) -> str:
    buf = io.StringIO()
    buf.write("platform,obs,mean,median,sd,min,q25,q75,max\n")
    for s in stats_list:
        buf.write(f"{s.platform},{s.obs},{s.mean:.10g},{s.median:.10g},"
                  f"{s.sd:.10g},{s.min:.10g},{s.q25:.10g},{s.q75:.10g},{s.max:.10g}\n")
    return buf.getvalue()


def nsfw_table_csv(rows) -> str:
    buf = io.StringIO()
    buf.write("platform,year,obs,mean,median,nsfw_share\n")
    for p, year, obs, mean, median, share in rows:
        buf.write(f"{p},{year},{obs},{mean:.10g},{median:.10g},{share:.10g}\n")
    return buf.getvalue()
