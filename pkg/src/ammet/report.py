"""Emitters for the amplification table, the gain curve, and the scatter.

Three artifact families:

* the amplification table as CSV (`name,alpha,beta`) or a JSON array of
  objects with the same keys, shares printed at three trimmed decimals and
  gains at six (a gain of exactly 5 prints "5");
* the beta = 1/alpha curve sampled on a uniform share grid;
* a standalone SVG 1.1 scatter of classified countries over the curve with
  the three region bands shaded.

All emitters are pure and byte-deterministic for identical input: CSV uses
a fixed line terminator, JSON fixed indentation, and every SVG coordinate
is formatted at two decimals so no platform float-printing quirk can leak
into the bytes.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from xml.sax.saxutils import escape

from ._validate import require_finite
from .errors import DomainError, ParseError, UsageError
from .model import PAIR_RTOL
from .regions import A_LOWER, A_UPPER, B_LOWER, B_UPPER, ClassifiedRecord, Region
from .rounding import format_trimmed
from .worldbank import AmplificationRow

#: Share intervals shaded behind the curve; C is open-ended to the right.
REGION_BANDS: dict[Region, tuple[float, float]] = {
    Region.A: (A_LOWER, A_UPPER),
    Region.B: (B_LOWER, B_UPPER),
    Region.C: (B_UPPER, math.inf),
}

_BAND_COLORS = {Region.A: "#2e7d32", Region.B: "#f9a825", Region.C: "#c62828"}

TABLE_HEADER = ("name", "alpha", "beta")


def format_alpha(alpha: float) -> str:
    """Share display convention: three decimals, trailing zeros trimmed."""
    return format_trimmed(alpha, 3)


def format_beta(beta: float) -> str:
    """Gain display convention: six decimals, trailing zeros trimmed."""
    return format_trimmed(beta, 6)


@dataclass(frozen=True)
class CurveSeries:
    """Sampled beta = 1/alpha curve plus the region bands for shading."""

    points: tuple[tuple[float, float], ...]
    region_bands: dict[Region, tuple[float, float]]

    def __post_init__(self):
        previous = None
        for alpha, beta in self.points:
            if previous is not None and alpha <= previous:
                raise DomainError("curve points must be strictly increasing in alpha")
            if abs(alpha * beta - 1.0) > PAIR_RTOL:
                raise DomainError(f"curve point ({alpha!r}, {beta!r}) is off the 1/alpha curve")
            previous = alpha


def curve_points(alpha_min: float, alpha_max: float, n: int) -> CurveSeries:
    """Sample the gain curve on n uniform shares, endpoints included."""
    alpha_min = require_finite("alpha_min", alpha_min)
    alpha_max = require_finite("alpha_max", alpha_max)
    if not 0.0 < alpha_min < alpha_max <= 1.0:
        raise DomainError(
            f"need 0 < alpha_min < alpha_max <= 1, got ({alpha_min!r}, {alpha_max!r})"
        )
    if not isinstance(n, int) or n < 2:
        raise DomainError(f"n must be an integer >= 2, got {n!r}")
    step = (alpha_max - alpha_min) / (n - 1)
    alphas = [alpha_min + i * step for i in range(n - 1)] + [alpha_max]
    return CurveSeries(
        points=tuple((a, 1.0 / a) for a in alphas),
        region_bands=dict(REGION_BANDS),
    )


def _json_number(value: float):
    # Integral values print bare ("5", not "5.0"), matching the trimmed style.
    return int(value) if value == int(value) else value


def emit_table(rows: list[AmplificationRow], format: str = "csv") -> bytes:
    """Serialize amplification rows; re-parseable via parse_table."""
    if format == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(TABLE_HEADER)
        for row in rows:
            writer.writerow([row.name, format_alpha(row.alpha), format_beta(row.beta)])
        return buffer.getvalue().encode("utf-8")
    if format == "json":
        payload = [
            {
                "name": row.name,
                "alpha": _json_number(row.alpha),
                "beta": _json_number(row.beta),
            }
            for row in rows
        ]
        return (json.dumps(payload, indent=2, ensure_ascii=False) + "\n").encode("utf-8")
    raise UsageError(f"unknown table format {format!r} (expected csv or json)")


def parse_table(data: bytes, format: str = "csv") -> list[AmplificationRow]:
    """Inverse of emit_table."""
    text = data.decode("utf-8") if isinstance(data, bytes) else str(data)
    if format == "csv":
        reader = csv.reader(io.StringIO(text))
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError("empty table: missing header line") from None
        if tuple(header) != TABLE_HEADER:
            raise ParseError(f"line 1: expected header {','.join(TABLE_HEADER)!r}")
        rows = []
        for line_no, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 3:
                raise ParseError(f"line {line_no}: expected 3 columns, got {len(row)}")
            rows.append(AmplificationRow(row[0], float(row[1]), float(row[2])))
        return rows
    if format == "json":
        try:
            payload = json.loads(text)
        except ValueError as exc:
            raise ParseError(f"not valid JSON: {exc}") from exc
        if not isinstance(payload, list):
            raise ParseError("JSON table must be an array of objects")
        return [
            AmplificationRow(str(item["name"]), float(item["alpha"]), float(item["beta"]))
            for item in payload
        ]
    raise UsageError(f"unknown table format {format!r} (expected csv or json)")


def emit_curve(series: CurveSeries, format: str = "csv") -> bytes:
    """Serialize curve samples as `alpha,beta` CSV or a JSON array."""
    if format == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["alpha", "beta"])
        for alpha, beta in series.points:
            writer.writerow([repr(alpha), repr(beta)])
        return buffer.getvalue().encode("utf-8")
    if format == "json":
        payload = [{"alpha": a, "beta": b} for a, b in series.points]
        return (json.dumps(payload, indent=2) + "\n").encode("utf-8")
    raise UsageError(f"unknown curve format {format!r} (expected csv or json)")


# Fixed pixel margins of the plot area inside the SVG viewport.
_MARGIN_LEFT = 60.0
_MARGIN_RIGHT = 15.0
_MARGIN_TOP = 15.0
_MARGIN_BOTTOM = 45.0
_TICKS = 5


def _fmt_px(value: float) -> str:
    # Two decimals everywhere keeps the byte stream platform-independent.
    return f"{value:.2f}"


def render_scatter_svg(
    rows: list[ClassifiedRecord],
    curve: CurveSeries,
    width: int = 800,
    height: int = 600,
) -> bytes:
    """Standalone SVG: region bands, the gain curve, one circle per row.

    Axes are linear, labeled with the share (alpha, x) and the gain
    (beta, y); both start at zero and extend 5% past the largest plotted
    value. Bands are clipped to the plotted share range. Identical input
    yields byte-identical output.
    """
    if width < 100 or height < 100:
        raise UsageError(f"width and height must be >= 100, got {width}x{height}")
    if not curve.points:
        raise DomainError("curve must carry at least one point")

    alphas = [a for a, _ in curve.points] + [r.alpha for r in rows]
    betas = [b for _, b in curve.points] + [r.beta for r in rows]
    x_hi = 1.05 * max(alphas)
    y_hi = 1.05 * max(betas)
    plot_w = width - _MARGIN_LEFT - _MARGIN_RIGHT
    plot_h = height - _MARGIN_TOP - _MARGIN_BOTTOM

    def fx(alpha: float) -> float:
        return _MARGIN_LEFT + (alpha / x_hi) * plot_w

    def fy(beta: float) -> float:
        return _MARGIN_TOP + (1.0 - beta / y_hi) * plot_h

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>\n',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width}" height="{height}" viewBox="0 0 {width} {height}">\n',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>\n',
    ]

    for region, (lo, hi) in sorted(curve.region_bands.items(), key=lambda kv: kv[1][0]):
        lo_c, hi_c = max(lo, 0.0), min(hi, x_hi)
        if hi_c <= lo_c:
            continue  # band outside the plotted range
        out.append(
            f'<rect id="band-{region.value}" x="{_fmt_px(fx(lo_c))}" y="{_fmt_px(_MARGIN_TOP)}" '
            f'width="{_fmt_px(fx(hi_c) - fx(lo_c))}" height="{_fmt_px(plot_h)}" '
            f'fill="{_BAND_COLORS[region]}" fill-opacity="0.12"/>\n'
        )

    # axes
    x0, y0 = _MARGIN_LEFT, _MARGIN_TOP + plot_h
    out.append(
        f'<line x1="{_fmt_px(x0)}" y1="{_fmt_px(y0)}" x2="{_fmt_px(x0 + plot_w)}" '
        f'y2="{_fmt_px(y0)}" stroke="#000000"/>\n'
    )
    out.append(
        f'<line x1="{_fmt_px(x0)}" y1="{_fmt_px(_MARGIN_TOP)}" x2="{_fmt_px(x0)}" '
        f'y2="{_fmt_px(y0)}" stroke="#000000"/>\n'
    )
    for k in range(_TICKS):
        frac = k / (_TICKS - 1)
        xv, yv = frac * x_hi, frac * y_hi
        xt, yt = fx(xv), fy(yv)
        out.append(
            f'<line x1="{_fmt_px(xt)}" y1="{_fmt_px(y0)}" x2="{_fmt_px(xt)}" '
            f'y2="{_fmt_px(y0 + 5)}" stroke="#000000"/>\n'
            f'<text x="{_fmt_px(xt)}" y="{_fmt_px(y0 + 18)}" font-size="11" '
            f'text-anchor="middle">{xv:.2f}</text>\n'
        )
        out.append(
            f'<line x1="{_fmt_px(x0 - 5)}" y1="{_fmt_px(yt)}" x2="{_fmt_px(x0)}" '
            f'y2="{_fmt_px(yt)}" stroke="#000000"/>\n'
            f'<text x="{_fmt_px(x0 - 8)}" y="{_fmt_px(yt + 4)}" font-size="11" '
            f'text-anchor="end">{yv:.1f}</text>\n'
        )
    out.append(
        f'<text x="{_fmt_px(x0 + plot_w / 2)}" y="{_fmt_px(height - 8)}" '
        f'font-size="14" text-anchor="middle">α</text>\n'
    )
    out.append(
        f'<text x="{_fmt_px(16.0)}" y="{_fmt_px(_MARGIN_TOP + plot_h / 2)}" '
        f'font-size="14" text-anchor="middle">β</text>\n'
    )

    polyline = " ".join(f"{_fmt_px(fx(a))},{_fmt_px(fy(b))}" for a, b in curve.points)
    out.append(
        f'<polyline points="{polyline}" fill="none" stroke="#1565c0" stroke-width="1.5"/>\n'
    )

    for row in rows:
        out.append(
            f'<circle cx="{_fmt_px(fx(row.alpha))}" cy="{_fmt_px(fy(row.beta))}" r="3" '
            f'fill="#1565c0" fill-opacity="0.8">'
            f"<title>{escape(row.country.name)}</title></circle>\n"
        )

    out.append("</svg>\n")
    return "".join(out).encode("utf-8")
