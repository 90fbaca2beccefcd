"""Deterministic SVG scenes for planar colorings, spheres and configurations."""

from __future__ import annotations

import hashlib
import math
from xml.sax.saxutils import quoteattr

from .colorings import Coloring, Constant, Grid, MergedStrip, Rational2D, Strip


class UnsupportedDimension(ValueError):
    pass


PALETTE = (
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948",
    "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac", "#86bcb6", "#d37295",
)


def fill_for(color) -> str:
    """Fixed palette entry chosen by a hash of the color id."""
    if color is None:
        return "none"
    digest = hashlib.sha256(str(color).encode()).digest()
    return PALETTE[int.from_bytes(digest[:4], "big") % len(PALETTE)]


def _num(x: float) -> str:
    s = f"{float(x):.6f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


class Scene:
    """Accumulates SVG elements in world coordinates over a view box."""

    def __init__(self, view, width: int = 400):
        xmin, xmax, ymin, ymax = (float(v) for v in view)
        if not (xmax > xmin and ymax > ymin):
            raise ValueError("empty view box")
        self.view = (xmin, xmax, ymin, ymax)
        self.scale = width / (xmax - xmin)
        self.width = width
        self.height = int(round((ymax - ymin) * self.scale))
        self.elements: list[str] = []

    def x(self, x) -> float:
        return (float(x) - self.view[0]) * self.scale

    def y(self, y) -> float:
        return (self.view[3] - float(y)) * self.scale

    def rect(self, x0, x1, y0, y1, fill, cls="cell", color=None):
        xmin, xmax, ymin, ymax = self.view
        x0, x1 = max(float(x0), xmin), min(float(x1), xmax)
        y0, y1 = max(float(y0), ymin), min(float(y1), ymax)
        if x1 <= x0 or y1 <= y0:
            return
        data = "" if color is None else f" data-color={quoteattr(str(color))}"
        self.elements.append(
            f'<rect class="{cls}" x="{_num(self.x(x0))}" y="{_num(self.y(y1))}" '
            f'width="{_num((x1 - x0) * self.scale)}" height="{_num((y1 - y0) * self.scale)}" fill="{fill}"{data}/>')

    def circle(self, cx, cy, r, cls="sphere", fill="none", stroke="#000000", width=1.5):
        self.elements.append(
            f'<circle class="{cls}" cx="{_num(self.x(cx))}" cy="{_num(self.y(cy))}" r="{_num(float(r) * self.scale)}" '
            f'fill="{fill}" stroke="{stroke}" stroke-width="{_num(width)}"/>')

    def dot(self, p, cls, fill="#000000", r=3.0):
        self.elements.append(
            f'<circle class="{cls}" cx="{_num(self.x(p[0]))}" cy="{_num(self.y(p[1]))}" r="{_num(r)}" '
            f'fill="{fill}" stroke="#000000" stroke-width="0.75"/>')

    def to_svg(self) -> str:
        head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{self.width}" height="{self.height}" '
                f'viewBox="0 0 {self.width} {self.height}">')
        return "\n".join([head, *self.elements, "</svg>"]) + "\n"


def _check_planar(f: Coloring):
    if f.n is not None and f.n != 2:
        raise UnsupportedDimension(f"only planar colorings can be drawn, got n={f.n}")


def draw_coloring(scene: Scene, f: Coloring, resolution: int = 64):
    _check_planar(f)
    xmin, xmax, ymin, ymax = scene.view
    if isinstance(f, Constant):
        scene.rect(xmin, xmax, ymin, ymax, fill_for(f.color), "band", f.color)
    elif isinstance(f, (Strip, MergedStrip)):
        for c in range(math.floor(ymin), math.ceil(ymax)):
            color = f((0.0, c + 0.5))
            scene.rect(xmin, xmax, c, c + 1, fill_for(color), "band", color)
    elif isinstance(f, Grid):
        d = float(f.delta)
        for i in range(math.floor(xmin / d), math.ceil(xmax / d)):
            for j in range(math.floor(ymin / d), math.ceil(ymax / d)):
                color = f.kappa((i, j))
                scene.rect(i * d, (i + 1) * d, j * d, (j + 1) * d, fill_for(color), "cell", color)
    elif isinstance(f, Rational2D):
        raise ValueError("the rational coloring has no drawable regions")
    else:
        dx, dy = (xmax - xmin) / resolution, (ymax - ymin) / resolution
        for i in range(resolution):
            for j in range(resolution):
                x0, y0 = xmin + i * dx, ymin + j * dy
                color = f((x0 + dx / 2, y0 + dy / 2))
                scene.rect(x0, x0 + dx, y0, y0 + dy, fill_for(color), "pixel", color)


def draw_verdict(scene: Scene, verdict):
    """Circle, witness dots and center dot of a verdict that carries a sphere."""
    s = verdict.sphere
    if s is None:
        return
    if len(s.center) != 2:
        raise UnsupportedDimension("only circles can be drawn")
    scene.circle(s.center[0], s.center[1], s.radius)
    for p in verdict.witness or ():
        scene.dot(p, "witness", fill_for(verdict.witness_color))
    scene.dot(s.center, "center", fill_for(verdict.center_color) if verdict.center_color is not None else "#ffffff", 4.0)


def plot_coloring(f: Coloring, view, verdicts=(), width: int = 400) -> str:
    scene = Scene(view, width)
    draw_coloring(scene, f)
    for v in verdicts:
        draw_verdict(scene, v)
    return scene.to_svg()


def config_view(points, margin: float = 0.5):
    xs = [float(p[0]) for p in points] or [0.0]
    ys = [float(p[1]) for p in points] or [0.0]
    return (min(xs) - margin, max(xs) + margin, min(ys) - margin, max(ys) + margin)


def plot_config(points, colors: dict, view=None, width: int = 400, highlight=None) -> str:
    """One propagation frame: colored points filled, uncolored points hollow."""
    if points and len(points[0]) != 2:
        raise UnsupportedDimension("only planar configurations can be drawn")
    scene = Scene(view or config_view(points), width)
    if highlight is not None:
        center, r2 = highlight
        scene.circle(points[center][0], points[center][1], math.sqrt(float(r2)), "certificate", stroke="#c00000")
    for i, p in enumerate(points):
        c = colors.get(i)
        scene.dot(p, "point" if c is not None else "point uncolored", fill_for(c) if c is not None else "#ffffff", 4.0)
    return scene.to_svg()


def propagation_frames(result, width: int = 400) -> list[str]:
    pts = result.config.points
    view = config_view(pts)
    frames = [plot_config(pts, h, view, width) for h in result.history]
    if result.contradiction is not None:
        for cert in result.contradiction.certificates:
            frames.append(plot_config(pts, result.config.colors, view, width, (cert.center, cert.radius_sq)))
    return frames
