"""Serialization: numbers, CSV, JSON and SVG figures.

Numbers are written with 12 significant digits, independent of locale.
"""

from __future__ import annotations

import io
import json
import math
import xml.etree.ElementTree as ET
from typing import Dict, Iterable, List, Optional, Sequence

import numpy as np

from . import _kernels, diffgeo
from .core import LimaconParams, classify, endpoint_elements
from .errors import LimaconError
from .inversion import midcircle

SCHEMA = 1
SIG_DIGITS = 12

SVG_NS = "http://www.w3.org/2000/svg"

STYLE = {
    "transition": {"stroke": "#000000", "stroke-width": "2.5", "fill": "none"},
    "mirror": {"stroke": "#7f7f7f", "stroke-width": "1", "fill": "none"},
    "extremal": {"stroke": "#1f4e9c", "stroke-width": "1", "fill": "none", "stroke-dasharray": "6 4"},
    "midcircle": {"stroke": "#b03a2e", "stroke-width": "1", "fill": "none", "stroke-dasharray": "8 3 2 3"},
    "conic": {"stroke": "#2e7d32", "stroke-width": "1", "fill": "none", "stroke-dasharray": "2 2"},
}


def fmt(x: float) -> str:
    x = float(x)
    if x == 0.0:
        return "0"
    if not math.isfinite(x):
        return "nan" if math.isnan(x) else ("inf" if x > 0 else "-inf")
    return format(x, f".{SIG_DIGITS}g")


def jsonable(obj):
    """Recursively convert to JSON-safe values with rounded floats."""
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isnan(x):
            return None
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return float(fmt(x))
    return obj


def dumps_json(obj) -> str:
    return json.dumps(jsonable(obj), indent=2, ensure_ascii=False) + "\n"


def write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def csv_text(header: Sequence[str], rows: Iterable[Sequence[float]]) -> str:
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(fmt(v) for v in row) + "\n")
    return buf.getvalue()


# ---------------------------------------------------------------------------
# SVG
# ---------------------------------------------------------------------------


def path_d(points) -> str:
    pts = np.asarray(points, dtype=np.float64).reshape(-1, 2)
    if len(pts) == 0:
        return ""
    head = f"M{fmt(pts[0, 0])} {fmt(pts[0, 1])}"
    return head + "".join(f" L{fmt(x)} {fmt(y)}" for x, y in pts[1:])


def _styled(parent, tag, style, scale, **attrs):
    """Element with ``style`` whose lengths are given in viewport units."""
    el = ET.SubElement(parent, tag, attrs)
    for k, v in style.items():
        if k in ("stroke-width", "stroke-dasharray"):
            v = " ".join(fmt(float(a) / scale) for a in v.split())
        el.set(k, v)
    return el


class Panel:
    """World-space drawing collected before layout; remembers every sampled path."""

    def __init__(self, title: str = ""):
        self.title = title
        self.paths: List[tuple] = []
        self.circles: List[tuple] = []
        self.dots: List[tuple] = []

    def path(self, name, points, style):
        self.paths.append((name, np.asarray(points, dtype=np.float64), style))

    def circle(self, name, center, radius, style):
        self.circles.append((name, (float(center[0]), float(center[1])), float(radius), style))

    def dot(self, name, point):
        self.dots.append((name, (float(point[0]), float(point[1]))))

    def bounds(self):
        xs, ys = [], []
        for _, pts, _ in self.paths:
            good = np.all(np.isfinite(pts), axis=1)
            xs.extend(pts[good, 0])
            ys.extend(pts[good, 1])
        for _, (cx, cy), r, _ in self.circles:
            xs.extend([cx - r, cx + r])
            ys.extend([cy - r, cy + r])
        for _, (x, y) in self.dots:
            xs.append(x)
            ys.append(y)
        if not xs:
            return -1.0, -1.0, 1.0, 1.0
        return min(xs), min(ys), max(xs), max(ys)


def render_panels(panels: Sequence[Panel], cell: float = 320.0, margin: float = 0.08) -> str:
    """Lay panels out in a row, each mapped y-up world to y-down viewport."""
    width = cell * len(panels)
    height = cell + 24.0
    root = ET.Element(
        "svg",
        {
            "xmlns": SVG_NS,
            "version": "1.1",
            "width": fmt(width),
            "height": fmt(height),
            "viewBox": f"0 0 {fmt(width)} {fmt(height)}",
        },
    )
    for i, panel in enumerate(panels):
        x0, y0, x1, y1 = panel.bounds()
        span = max(x1 - x0, y1 - y0, 1e-12) * (1.0 + 2.0 * margin)
        scale = cell / span
        cx, cy = 0.5 * (x0 + x1), 0.5 * (y0 + y1)
        tx = i * cell + 0.5 * cell - scale * cx
        ty = 0.5 * cell + scale * cy
        outer = ET.SubElement(root, "g", {"id": f"panel{i}"})
        g = ET.SubElement(outer, "g", {"transform": f"matrix({fmt(scale)} 0 0 {fmt(-scale)} {fmt(tx)} {fmt(ty)})"})
        for name, (ccx, ccy), r, style in panel.circles:
            el = _styled(g, "circle", style, scale, cx=fmt(ccx), cy=fmt(ccy), r=fmt(r))
            el.set("class", name)
        for name, pts, style in panel.paths:
            el = _styled(g, "path", style, scale, d=path_d(pts))
            el.set("class", name)
        for name, (px, py) in panel.dots:
            el = ET.SubElement(g, "circle", {"cx": fmt(px), "cy": fmt(py), "r": fmt(3.0 / scale), "fill": "#000000"})
            el.set("class", name)
        if panel.title:
            txt = ET.SubElement(
                outer,
                "text",
                {"x": fmt(i * cell + 0.5 * cell), "y": fmt(cell + 16.0), "text-anchor": "middle", "font-family": "sans-serif", "font-size": "13"},
            )
            txt.text = panel.title
    ET.indent(root)
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(root, encoding="unicode") + "\n"


# ---------------------------------------------------------------------------
# figure content
# ---------------------------------------------------------------------------


def transition_points(params: LimaconParams, n: int) -> np.ndarray:
    """Canonical transition arc from A to B (the upper arc)."""
    w = diffgeo.endpoint_grid(n)
    return _kernels.arc_jets(params.mu, params.f, w)[:, :, 0]


def limacon_panel(params: LimaconParams, n: int, title: Optional[str] = None) -> Panel:
    """Transition arc, its mirror, extremal circles (dashed) and midcircle (dash-dot)."""
    panel = Panel(title if title is not None else f"mu = {fmt(params.mu)} ({classify(params.mu).value})")
    arc = transition_points(params, n)
    panel.path("transition", arc, STYLE["transition"])
    panel.path("mirror", arc * np.array([1.0, -1.0]), STYLE["mirror"])
    try:
        ends = endpoint_elements(params)
    except LimaconError:
        ends = None
    if ends is not None and ends.center is not None:
        c = tuple(ends.center)
        panel.circle("extremal", c, ends.elem_A.radius, STYLE["extremal"])
        panel.circle("extremal", c, ends.elem_B.radius, STYLE["extremal"])
        try:
            mid = midcircle(ends)
        except LimaconError:
            mid = None
        if mid is not None:
            panel.circle("midcircle", c, mid.radius, STYLE["midcircle"])
    # self-intersection, cusp or isolated point
    panel.dot("origin", (0.0, 0.0))
    return panel


def panel_paths(panels: Sequence[Panel]) -> Dict[str, List[np.ndarray]]:
    out: Dict[str, List[np.ndarray]] = {}
    for p in panels:
        for name, pts, _ in p.paths:
            out.setdefault(name, []).append(pts)
    return out
