"""SVG artifacts: trajectory maps and sweep trend charts.

Hand-rolled SVG keeps the package free of plotting dependencies and makes
the output diff-able: identical inputs produce identical bytes. Trend
charts carry their value-to-pixel mapping as data- attributes so tests
can parse the plotted ranges back out.
"""

import math

from .harness import read_results

TREND_FIELDS = ("n_weeds", "R", "Sd", "Sw")

# One fixed color per planner so series stay recognizable across charts.
PLANNER_COLORS = {
    "BCP": "#555555",
    "BCP_TSP": "#8e44ad",
    "REACT": "#e67e22",
    "JUMP_HIGH": "#1f77b4",
    "JUMP_LOW": "#17becf",
    "SNAKE_STATIC": "#2ca02c",
    "SNAKE_STATIC_LIMITED": "#98df8a",
    "SNAKE_DYNAMIC": "#d62728",
}
_FALLBACK_COLOR = "#333333"


def _color(planner):
    return PLANNER_COLORS.get(planner, _FALLBACK_COLOR)


def _px(v):
    return f"{v:.2f}"


# -------------------------------------------------------------- trajectory


def render_trajectory(pasture, weeds, trajectory, out_path, max_points=4000):
    """Field map: boundary, weeds colored by final status, mower path.

    weeds: sequence with .x/.y/.status (0 unseen, 1 seen, 2 mowed).
    trajectory: (k, 3) pose array; downsampled evenly past max_points.
    """
    width = 900.0
    margin = 30.0
    scale = (width - 2 * margin) / pasture.length
    height = pasture.width * scale + 2 * margin

    def sx(x):
        return margin + x * scale

    def sy(y):
        # Image y grows downward; field y grows upward.
        return height - margin - y * scale

    parts = []
    parts.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_px(width)}" '
        f'height="{_px(height)}" viewBox="0 0 {_px(width)} {_px(height)}">'
    )
    parts.append(f'<rect width="{_px(width)}" height="{_px(height)}" fill="#ffffff"/>')
    parts.append(
        f'<rect x="{_px(sx(0))}" y="{_px(sy(pasture.width))}" '
        f'width="{_px(pasture.length * scale)}" height="{_px(pasture.width * scale)}" '
        f'fill="#f4f9f0" stroke="#444444" stroke-width="1.5"/>'
    )
    if len(trajectory):
        stride = max(1, len(trajectory) // max_points)
        pts = [trajectory[i] for i in range(0, len(trajectory), stride)]
        if (len(trajectory) - 1) % stride:
            pts.append(trajectory[-1])
        coords = " ".join(f"{_px(sx(p[0]))},{_px(sy(p[1]))}" for p in pts)
        parts.append(
            f'<polyline points="{coords}" fill="none" stroke="#1565c0" '
            f'stroke-width="1.2" stroke-opacity="0.85"/>'
        )
    status_fill = {0: "#9e9e9e", 1: "#d32f2f", 2: "#2e7d32"}
    for w in weeds:
        parts.append(
            f'<circle cx="{_px(sx(w.x))}" cy="{_px(sy(w.y))}" r="3.2" '
            f'fill="{status_fill[int(w.status)]}" stroke="#ffffff" stroke-width="0.8"/>'
        )
    parts.append("</svg>")
    with open(out_path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(parts) + "\n")
    return out_path


# ------------------------------------------------------------- trend chart


def _series(rows, x_field):
    """planner -> sorted [(x, mean pct, sd pct)], failed rows dropped."""
    buckets = {}
    for row in rows:
        if row["status"] != "ok":
            continue
        pct = float(row["pct_of_bcp"])
        if math.isnan(pct):
            continue
        key = (row["planner"], float(row[x_field]))
        buckets.setdefault(key, []).append(pct)
    series = {}
    for (planner, x), values in sorted(buckets.items()):
        n = len(values)
        mean = sum(values) / n
        sd = math.sqrt(sum((v - mean) ** 2 for v in values) / n)
        series.setdefault(planner, []).append((x, mean, sd))
    return series


def render_trend(csv_path, x_field, out_path):
    """Line chart of pct_of_bcp vs x_field, one series per planner,
    error bars at one standard deviation. Raises ValueError on an unknown
    field or when the CSV has no usable data rows."""
    if x_field not in TREND_FIELDS:
        raise ValueError(f"unknown x field {x_field!r}; choose from {TREND_FIELDS}")
    rows = read_results(csv_path)
    series = _series(rows, x_field)
    if not series:
        raise ValueError("no data rows to plot")

    xs = [p[0] for pts in series.values() for p in pts]
    los = [p[1] - p[2] for pts in series.values() for p in pts]
    his = [p[1] + p[2] for pts in series.values() for p in pts]
    xmin, xmax = min(xs), max(xs)
    ymin, ymax = min(los), max(his)
    if xmax - xmin < 1e-12:
        xmin, xmax = xmin - 0.5, xmax + 0.5
    if ymax - ymin < 1e-12:
        ymin, ymax = ymin - 0.5, ymax + 0.5
    xpad = 0.05 * (xmax - xmin)
    ypad = 0.05 * (ymax - ymin)
    xmin, xmax = xmin - xpad, xmax + xpad
    ymin, ymax = ymin - ypad, ymax + ypad

    px0, px1 = 70.0, 710.0
    py0, py1 = 420.0, 20.0  # image coordinates: py0 is the axis floor
    width, height = 840.0, 470.0

    def sx(v):
        return px0 + (v - xmin) / (xmax - xmin) * (px1 - px0)

    def sy(v):
        return py0 + (v - ymin) / (ymax - ymin) * (py1 - py0)

    parts = []
    parts.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_px(width)}" '
        f'height="{_px(height)}" viewBox="0 0 {_px(width)} {_px(height)}" '
        f'data-xmin="{xmin!r}" data-xmax="{xmax!r}" '
        f'data-ymin="{ymin!r}" data-ymax="{ymax!r}">'
    )
    parts.append(f'<rect width="{_px(width)}" height="{_px(height)}" fill="#ffffff"/>')
    # Axes and ticks.
    parts.append(
        f'<line x1="{_px(px0)}" y1="{_px(py0)}" x2="{_px(px1)}" y2="{_px(py0)}" '
        f'stroke="#222222" stroke-width="1"/>'
    )
    parts.append(
        f'<line x1="{_px(px0)}" y1="{_px(py0)}" x2="{_px(px0)}" y2="{_px(py1)}" '
        f'stroke="#222222" stroke-width="1"/>'
    )
    for i in range(6):
        fx = xmin + i * (xmax - xmin) / 5
        fy = ymin + i * (ymax - ymin) / 5
        parts.append(
            f'<line x1="{_px(sx(fx))}" y1="{_px(py0)}" x2="{_px(sx(fx))}" '
            f'y2="{_px(py0 + 5)}" stroke="#222222" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{_px(sx(fx))}" y="{_px(py0 + 18)}" font-size="11" '
            f'text-anchor="middle" font-family="sans-serif">{fx:.4g}</text>'
        )
        parts.append(
            f'<line x1="{_px(px0 - 5)}" y1="{_px(sy(fy))}" x2="{_px(px0)}" '
            f'y2="{_px(sy(fy))}" stroke="#222222" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{_px(px0 - 8)}" y="{_px(sy(fy) + 4)}" font-size="11" '
            f'text-anchor="end" font-family="sans-serif">{fy:.4g}</text>'
        )
    parts.append(
        f'<text x="{_px((px0 + px1) / 2)}" y="{_px(py0 + 38)}" font-size="13" '
        f'text-anchor="middle" font-family="sans-serif">{x_field}</text>'
    )
    parts.append(
        f'<text x="16" y="{_px((py0 + py1) / 2)}" font-size="13" text-anchor="middle" '
        f'font-family="sans-serif" transform="rotate(-90 16 {_px((py0 + py1) / 2)})">'
        f"pct_of_bcp</text>"
    )
    # Series, in fixed name order.
    for si, planner in enumerate(sorted(series)):
        pts = series[planner]
        color = _color(planner)
        if len(pts) > 1:
            coords = " ".join(f"{_px(sx(x))},{_px(sy(m))}" for x, m, _ in pts)
            parts.append(
                f'<polyline points="{coords}" fill="none" stroke="{color}" '
                f'stroke-width="1.6"/>'
            )
        for x, mean, sd in pts:
            cx, lo, hi = sx(x), sy(mean - sd), sy(mean + sd)
            parts.append(
                f'<line x1="{_px(cx)}" y1="{_px(lo)}" x2="{_px(cx)}" y2="{_px(hi)}" '
                f'stroke="{color}" stroke-width="1"/>'
            )
            for end in (lo, hi):
                parts.append(
                    f'<line x1="{_px(cx - 3)}" y1="{_px(end)}" x2="{_px(cx + 3)}" '
                    f'y2="{_px(end)}" stroke="{color}" stroke-width="1"/>'
                )
            parts.append(
                f'<circle class="pt" cx="{_px(cx)}" cy="{_px(sy(mean))}" r="3" '
                f'fill="{color}" data-x="{x!r}" data-y="{mean!r}" data-sd="{sd!r}"/>'
            )
        ly = 30 + 16 * si
        parts.append(
            f'<rect x="{_px(px1 + 10)}" y="{_px(ly - 9)}" width="10" height="10" '
            f'fill="{color}"/>'
        )
        parts.append(
            f'<text x="{_px(px1 + 25)}" y="{_px(ly)}" font-size="11" '
            f'font-family="sans-serif">{planner}</text>'
        )
    parts.append("</svg>")
    with open(out_path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(parts) + "\n")
    return out_path
