"""Figure- and table-ready outputs.

Every builder here is a pure function of fits and summary statistics
computed elsewhere; nothing re-estimates anything. Figures are emitted as
CSV point series and as self-contained SVG text that is byte-identical for
identical inputs, so golden-file comparisons work.
"""

import hashlib
import io
import math
from dataclasses import dataclass

import numpy as np
from scipy import stats as _scipy_stats

from .errors import RenderError
from .fit import TailFit
from .sample import Sample, empirical_ccdf

__all__ = [
    "PlotSeries",
    "ccdf_figure",
    "alpha_panel",
    "median_vs_alpha",
    "spearman",
    "proportion_figure",
    "category_panel",
    "render_svg",
    "series_csv",
    "save_figures",
]

LOGLOG = "loglog"
LINEAR = "linear"


@dataclass(frozen=True)
class PlotSeries:
    """One drawable series: named points plus style hints.

    style is one of 'points', 'line', 'bar'. Log-scaled series must hold
    strictly positive coordinates. labels, when present, annotate points
    (bar charts use them as tick labels).
    """

    name: str
    points: tuple
    scale: str = LOGLOG
    style: str = "points"
    labels: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "points", tuple((float(x), float(y))
                                                 for x, y in self.points))
        if self.scale == LOGLOG:
            for x, y in self.points:
                if x <= 0 or y <= 0:
                    raise RenderError(
                        f"series {self.name!r}: log-log point ({x}, {y}) not positive")


# -- figure builders -----------------------------------------------------------

def ccdf_figure(sample: Sample, fit: TailFit):
    """Empirical CCDF, fitted tail line and threshold marker.

    The fitted line is anchored at the empirical CCDF value at the
    threshold and falls with log-log slope -(alpha - 1), overlaying the
    tail it was fitted to.
    """
    xs, fr = empirical_ccdf(sample)
    emp = PlotSeries(name="empirical", points=tuple(zip(xs, fr)), scale=LOGLOG)
    anchor_y = float(fr[np.searchsorted(xs, fit.xmin, side="left")])
    slope = -(fit.alpha - 1.0)
    x_hi = float(xs[-1])
    y_hi = anchor_y * (x_hi / fit.xmin) ** slope
    line = PlotSeries(name="fit", style="line", scale=LOGLOG,
                      points=((fit.xmin, anchor_y), (x_hi, y_hi)))
    y_lo = float(fr[-1])
    marker = PlotSeries(name="xmin", style="line", scale=LOGLOG,
                        points=((fit.xmin, y_lo), (fit.xmin, 1.0)))
    return [emp, line, marker]


def alpha_panel(fits: dict):
    """Exponent summary from per-(platform, year) fits.

    Returns (pooled, by_year): pooled rows (platform, mean alpha over its
    years) sorted ascending by alpha; by_year rows (platform, year, alpha)
    sorted by platform then year.
    """
    per_platform = {}
    for (platform, year), fit in fits.items():
        per_platform.setdefault(platform, []).append((year, fit.alpha))
    pooled = sorted(
        ((p, sum(a for _, a in rows) / len(rows))
         for p, rows in per_platform.items()),
        key=lambda t: t[1])
    by_year = [(p, y, a) for p in sorted(per_platform)
               for y, a in sorted(per_platform[p])]
    return pooled, by_year


def spearman(a, b) -> float:
    """Spearman rank correlation with average ranks on ties."""
    rho = _scipy_stats.spearmanr(a, b).statistic
    return float(rho)


def median_vs_alpha(stats_list, fits: dict):
    """Scatter rows (platform, median, alpha) plus the rank correlation.

    Platforms must appear in both inputs; with fewer than 3 common
    platforms the correlation is omitted (None).
    """
    medians = {s.platform: s.median for s in stats_list}
    rows = [(p, medians[p], fits[p].alpha if isinstance(fits[p], TailFit) else float(fits[p]))
            for p in sorted(medians) if p in fits]
    rho = None
    if len(rows) >= 3:
        rho = spearman([r[1] for r in rows], [r[2] for r in rows])
    return rows, rho


def proportion_figure(proportions: dict) -> PlotSeries:
    """Bar series of power-law tail shares, sorted descending."""
    items = sorted(proportions.items(), key=lambda kv: (-kv[1], kv[0]))
    pts = tuple((float(i + 1), float(v)) for i, (_, v) in enumerate(items))
    return PlotSeries(name="power_law_proportion", points=pts, scale=LINEAR,
                      style="bar", labels=tuple(k for k, _ in items))


def category_panel(fits: dict, obs_counts: dict):
    """Per-category exponents plus simple and observation-weighted means."""
    rows = [(c, fits[c].alpha if isinstance(fits[c], TailFit) else float(fits[c]),
             int(obs_counts[c]))
            for c in sorted(fits)]
    alphas = [a for _, a, _ in rows]
    weights = [n for _, _, n in rows]
    simple = sum(alphas) / len(alphas)
    weighted = sum(a * w for a, w in zip(alphas, weights)) / sum(weights)
    return rows, simple, weighted


# -- emission --------------------------------------------------------------------

def series_csv(series: PlotSeries) -> str:
    buf = io.StringIO()
    if series.labels:
        buf.write("x,y,label\n")
        for (x, y), lab in zip(series.points, series.labels):
            buf.write(f"{x:.10g},{y:.10g},{lab}\n")
    else:
        buf.write("x,y\n")
        for x, y in series.points:
            buf.write(f"{x:.10g},{y:.10g}\n")
    return buf.getvalue()


_SVG_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def _ticks_log(lo, hi):
    out = []
    k = math.floor(math.log10(lo))
    while 10.0**k <= hi * (1 + 1e-12):
        if 10.0**k >= lo * (1 - 1e-12):
            out.append(10.0**k)
        k += 1
    return out or [lo]


def _ticks_linear(lo, hi):
    if hi == lo:
        return [lo]
    step = 10.0 ** math.floor(math.log10(hi - lo))
    if (hi - lo) / step < 2:
        step /= 5
    elif (hi - lo) / step < 5:
        step /= 2
    t = math.ceil(lo / step) * step
    out = []
    while t <= hi + step * 1e-9:
        out.append(round(t, 12))
        t += step
    return out


def _fmt(v: float) -> str:
    return f"{v:.6g}"


def render_svg(series_list, width: int = 640, height: int = 480,
               title: str = "") -> str:
    """Self-contained SVG for a set of series sharing one axis system.

    Log-scaled axes (with decade ticks) whenever any series is log-log;
    byte-deterministic for identical inputs. Raises RenderError on empty
    input or nonpositive log coordinates.
    """
    if not series_list:
        raise RenderError("no series to render")
    loglog = any(s.scale == LOGLOG for s in series_list)
    for s in series_list:
        if loglog and s.scale != LOGLOG:
            raise RenderError(f"series {s.name!r}: cannot mix scales in one figure")
        if not s.points:
            raise RenderError(f"series {s.name!r} is empty")

    xs = [x for s in series_list for x, _ in s.points]
    ys = [y for s in series_list for _, y in s.points]
    has_bars = any(s.style == "bar" for s in series_list)
    if loglog:
        tx = lambda v: math.log10(v)
        x_lo, x_hi = tx(min(xs)), tx(max(xs))
        y_lo, y_hi = tx(min(ys)), tx(max(ys))
        xticks = _ticks_log(min(xs), max(xs))
        yticks = _ticks_log(min(ys), max(ys))
    else:
        tx = lambda v: v
        x_lo, x_hi = min(xs), max(xs)
        y_lo, y_hi = (0.0 if has_bars else min(ys)), max(ys)
        xticks = _ticks_linear(x_lo, x_hi)
        yticks = _ticks_linear(y_lo, y_hi)
    if x_hi == x_lo:
        x_hi = x_lo + 1.0
    if y_hi == y_lo:
        y_hi = y_lo + 1.0

    m_left, m_right, m_top, m_bot = 64, 16, 32, 48
    pw, ph = width - m_left - m_right, height - m_top - m_bot

    def px(v):
        return m_left + (tx(v) - x_lo) / (x_hi - x_lo) * pw

    def py(v):
        return m_top + ph - (tx(v) - y_lo) / (y_hi - y_lo) * ph

    out = io.StringIO()
    out.write('<?xml version="1.0" encoding="UTF-8"?>\n')
    out.write(f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
              f'height="{height}" viewBox="0 0 {width} {height}">\n')
    out.write(f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>\n')
    if title:
        out.write(f'<text x="{width/2:.1f}" y="20" text-anchor="middle" '
                  f'font-family="sans-serif" font-size="14">{_escape(title)}</text>\n')
    # axes
    out.write(f'<line x1="{m_left}" y1="{m_top + ph}" x2="{m_left + pw}" '
              f'y2="{m_top + ph}" stroke="black"/>\n')
    out.write(f'<line x1="{m_left}" y1="{m_top}" x2="{m_left}" '
              f'y2="{m_top + ph}" stroke="black"/>\n')
    for t in xticks:
        x = px(t)
        out.write(f'<line x1="{x:.2f}" y1="{m_top + ph}" x2="{x:.2f}" '
                  f'y2="{m_top + ph + 5}" stroke="black"/>\n')
        out.write(f'<text x="{x:.2f}" y="{m_top + ph + 18}" text-anchor="middle" '
                  f'font-family="sans-serif" font-size="11">{_fmt(t)}</text>\n')
    for t in yticks:
        y = py(t)
        out.write(f'<line x1="{m_left - 5}" y1="{y:.2f}" x2="{m_left}" '
                  f'y2="{y:.2f}" stroke="black"/>\n')
        out.write(f'<text x="{m_left - 8}" y="{y + 4:.2f}" text-anchor="end" '
                  f'font-family="sans-serif" font-size="11">{_fmt(t)}</text>\n')
    # series
    for si, s in enumerate(series_list):
        color = _SVG_PALETTE[si % len(_SVG_PALETTE)]
        if s.style == "line":
            pts = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in s.points)
            out.write(f'<polyline points="{pts}" fill="none" stroke="{color}" '
                      f'stroke-width="1.5"/>\n')
        elif s.style == "bar":
            bw = pw / max(len(s.points), 1) * 0.7
            for (x, y), lab in zip(s.points, s.labels or [""] * len(s.points)):
                cx = px(x)
                out.write(f'<rect x="{cx - bw/2:.2f}" y="{py(y):.2f}" '
                          f'width="{bw:.2f}" height="{m_top + ph - py(y):.2f}" '
                          f'fill="{color}" fill-opacity="0.8"/>\n')
                if lab:
                    out.write(f'<text x="{cx:.2f}" y="{m_top + ph + 32}" '
                              f'text-anchor="middle" font-family="sans-serif" '
                              f'font-size="10">{_escape(str(lab))}</text>\n')
        else:
            for x, y in s.points:
                out.write(f'<circle cx="{px(x):.2f}" cy="{py(y):.2f}" r="2" '
                          f'fill="{color}"/>\n')
        out.write(f'<text x="{m_left + pw - 8}" y="{m_top + 14 + 14 * si}" '
                  f'text-anchor="end" font-family="sans-serif" font-size="11" '
                  f'fill="{color}">{_escape(s.name)}</text>\n')
    out.write("</svg>\n")
    return out.getvalue()


def _escape(text: str) -> str:
    return (text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;"))


def save_figures(figures: dict, outdir, width=640, height=480) -> dict:
    """Write each figure (name -> series list) as SVG plus per-series CSVs.

    Returns a manifest dict listing every artifact with the SHA-256 of its
    bytes, keyed by relative path.
    """
    from pathlib import Path

    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    manifest = {}
    for name, series_list in sorted(figures.items()):
        svg = render_svg(series_list, width=width, height=height, title=name)
        svg_path = outdir / f"{name}.svg"
        svg_path.write_text(svg, encoding="utf-8")
        manifest[svg_path.name] = _sha256(svg)
        for s in series_list:
            csv_text = series_csv(s)
            csv_path = outdir / f"{name}_{s.name}.csv"
            csv_path.write_text(csv_text, encoding="utf-8")
            manifest[csv_path.name] = _sha256(csv_text)
    return manifest


def _sha256(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()
