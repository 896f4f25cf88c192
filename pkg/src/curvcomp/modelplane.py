"""Geometry of the constant-curvature model planes.

Comparison-triangle placement, model distances, and the circumradius of three
model points (the right-hand side of the comparison inequality).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .circumradius import CircumResult
from .metricspace import SideLengths, metric_tolerance

_OBTUSE_REL = 1e-12  # b^2 + c^2 - a^2 below this (times a^2) routes to the half-side branch
_THIN_REL = 1e-14  # Heron area below this (times a^2) counts as degenerate


class ChartMismatchError(ValueError):
    pass


class TooLargeForModelError(ValueError):
    pass


@dataclass(frozen=True)
class Kappa:
    """Curvature parameter with its model-plane diameter rule."""

    value: float

    @property
    def diameter(self) -> float:
        return math.pi / math.sqrt(self.value) if self.value > 0 else math.inf


def kappa_value(kappa) -> float:
    return kappa.value if isinstance(kappa, Kappa) else float(kappa)


def model_diameter(kappa) -> float:
    return Kappa(kappa_value(kappa)).diameter


def chart_for(kappa) -> str:
    k = kappa_value(kappa)
    if k > 0:
        return "sphere"
    if k < 0:
        return "hyperboloid"
    return "euclidean"


@dataclass(frozen=True)
class ModelPoint:
    """A model-plane point via its embedding chart coordinates."""

    chart: str  # euclidean | sphere | hyperboloid
    coords: tuple[float, ...]


@dataclass(frozen=True)
class ComparisonTriangle:
    kappa: float
    vertices: tuple[ModelPoint, ModelPoint, ModelPoint]


def _minkowski(u, v) -> float:
    return u[0] * v[0] + u[1] * v[1] - u[2] * v[2]


def model_distance(p: ModelPoint, q: ModelPoint, kappa) -> float:
    """Geodesic distance between two model points in the chart matching kappa."""
    k = kappa_value(kappa)
    chart = chart_for(k)
    if p.chart != chart or q.chart != chart:
        raise ChartMismatchError(f"points in charts ({p.chart}, {q.chart}) do not match kappa={k}")
    if chart == "euclidean":
        return math.hypot(p.coords[0] - q.coords[0], p.coords[1] - q.coords[1])
    if chart == "sphere":
        radius = 1.0 / math.sqrt(k)
        dot = sum(a * b for a, b in zip(p.coords, q.coords)) / radius**2
        return radius * math.acos(max(-1.0, min(1.0, dot)))
    radius = 1.0 / math.sqrt(-k)
    dot = -_minkowski(p.coords, q.coords) / radius**2
    return radius * math.acosh(max(1.0, dot))


def _check_model_size(sides: SideLengths, k: float) -> None:
    if k > 0:
        bound = 2.0 * math.pi / math.sqrt(k)
        if sides.perimeter >= bound - metric_tolerance(bound):
            raise TooLargeForModelError(
                f"perimeter {sides.perimeter} exceeds model bound {bound} for kappa={k}"
            )


def comparison_triangle(sides, kappa) -> ComparisonTriangle:
    """Place a comparison triangle with the given side lengths in the model plane.

    Canonical placement: first vertex at the chart origin (apex/pole), second
    along a fixed axis, third in the upper half of the chart, so the output is
    deterministic. Pairwise model distances reproduce the sides; vertex order
    is descending side length: d(v0,v1)=a, d(v0,v2)=b, d(v1,v2)=c.
    """
    if not isinstance(sides, SideLengths):
        sides = SideLengths(*sides)
    k = kappa_value(kappa)
    _check_model_size(sides, k)
    a, b, c = sides.as_tuple()

    if k == 0:
        x2 = (a * a + b * b - c * c) / (2.0 * a) if a > 0 else 0.0
        y2 = math.sqrt(max(b * b - x2 * x2, 0.0))
        verts = (
            ModelPoint("euclidean", (0.0, 0.0)),
            ModelPoint("euclidean", (a, 0.0)),
            ModelPoint("euclidean", (x2, y2)),
        )
        return ComparisonTriangle(k, verts)

    if k > 0:
        radius = 1.0 / math.sqrt(k)
        alpha, beta, gamma_side = a / radius, b / radius, c / radius
        denom = math.sin(alpha) * math.sin(beta)
        if denom > 0:
            cosg = (math.cos(gamma_side) - math.cos(alpha) * math.cos(beta)) / denom
        else:
            cosg = 1.0
        cosg = max(-1.0, min(1.0, cosg))
        sing = math.sqrt(max(1.0 - cosg * cosg, 0.0))
        verts = (
            ModelPoint("sphere", (0.0, 0.0, radius)),
            ModelPoint("sphere", (radius * math.sin(alpha), 0.0, radius * math.cos(alpha))),
            ModelPoint(
                "sphere",
                (
                    radius * math.sin(beta) * cosg,
                    radius * math.sin(beta) * sing,
                    radius * math.cos(beta),
                ),
            ),
        )
        return ComparisonTriangle(k, verts)

    radius = 1.0 / math.sqrt(-k)
    alpha, beta, gamma_side = a / radius, b / radius, c / radius
    denom = math.sinh(alpha) * math.sinh(beta)
    if denom > 0:
        cosg = (math.cosh(alpha) * math.cosh(beta) - math.cosh(gamma_side)) / denom
    else:
        cosg = 1.0
    cosg = max(-1.0, min(1.0, cosg))
    sing = math.sqrt(max(1.0 - cosg * cosg, 0.0))
    verts = (
        ModelPoint("hyperboloid", (0.0, 0.0, radius)),
        ModelPoint("hyperboloid", (radius * math.sinh(alpha), 0.0, radius * math.cosh(alpha))),
        ModelPoint(
            "hyperboloid",
            (
                radius * math.sinh(beta) * cosg,
                radius * math.sinh(beta) * sing,
                radius * math.cosh(beta),
            ),
        ),
    )
    return ComparisonTriangle(k, verts)


# ---------------------------------------------------------------------------
# Batched circumradius kernels over arrays of side triples (a >= b >= c).


def euclidean_circumradius_batch(a, b, c):
    """Minimum enclosing ball radius of a planar triangle with sides a >= b >= c.

    Obtuse, right, and near-degenerate triangles take half the longest side;
    acute triangles take abc / (4 * Area) with a numerically stable Heron area.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    c = np.asarray(c, dtype=float)
    a2 = a * a
    heron = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c))
    area = 0.25 * np.sqrt(np.maximum(heron, 0.0))
    half_side = (b * b + c * c - a2) <= _OBTUSE_REL * a2
    thin = area < _THIN_REL * a2
    use_half = half_side | thin
    denom = np.where(use_half, 1.0, 4.0 * area)
    return np.where(use_half, 0.5 * a, a * b * c / denom)


def _minmax_over_sphere_candidates(v0, v1, v2, want_center: bool):
    """Min over candidate centers of max angular distance to the unit vectors."""
    verts = (v0, v1, v2)
    m = v0.shape[0]
    best = np.full(m, np.inf)
    centers = np.zeros((m, 3)) if want_center else None

    def consider(cand, valid):
        nonlocal best, centers
        ang = np.zeros(m)
        for v in verts:
            dot = np.clip(np.einsum("ij,ij->i", cand, v), -1.0, 1.0)
            ang = np.maximum(ang, np.arccos(dot))
        ang = np.where(valid, ang, np.inf)
        better = ang < best
        best = np.where(better, ang, best)
        if want_center:
            centers[better] = cand[better]

    w1 = v1 - v0
    w2 = v2 - v0
    u = np.cross(w1, w2)
    norm = np.linalg.norm(u, axis=1)
    safe = np.maximum(norm, 1e-300)
    unit = u / safe[:, None]
    consider(unit, norm > 1e-15)
    consider(-unit, norm > 1e-15)
    for i, j in ((0, 1), (0, 2), (1, 2)):
        s = verts[i] + verts[j]
        norm = np.linalg.norm(s, axis=1)
        safe = np.maximum(norm, 1e-300)
        consider(s / safe[:, None], norm > 1e-15)
    return best, centers


def _minmax_over_hyperboloid_candidates(v0, v1, v2, want_center: bool):
    verts = (v0, v1, v2)
    m = v0.shape[0]
    best = np.full(m, np.inf)
    centers = np.zeros((m, 3)) if want_center else None

    def mdot(x, y):
        return x[:, 0] * y[:, 0] + x[:, 1] * y[:, 1] - x[:, 2] * y[:, 2]

    def consider(cand, valid):
        nonlocal best, centers
        dist = np.zeros(m)
        for v in verts:
            dist = np.maximum(dist, np.arccosh(np.clip(-mdot(cand, v), 1.0, None)))
        dist = np.where(valid, dist, np.inf)
        better = dist < best
        best = np.where(better, dist, best)
        if want_center:
            centers[better] = cand[better]

    w1 = v1 - v0
    w2 = v2 - v0
    u = np.cross(w1, w2)
    u[:, 2] = -u[:, 2]  # apply the Minkowski sign flip to land in the orthogonal complement
    q = mdot(u, u)
    timelike = q < -1e-30
    scale = np.sqrt(np.maximum(-q, 1e-300))
    cand = u / scale[:, None]
    cand = np.where((cand[:, 2] < 0)[:, None], -cand, cand)
    consider(cand, timelike)
    for i, j in ((0, 1), (0, 2), (1, 2)):
        s = verts[i] + verts[j]
        q = mdot(s, s)
        scale = np.sqrt(np.maximum(-q, 1e-300))
        consider(s / scale[:, None], q < -1e-30)
    return best, centers


def _place_sphere_unit(a, b, c):
    """Unit-sphere vertices for angular sides (a, b, c), a >= b >= c."""
    denom = np.sin(a) * np.sin(b)
    cosg = np.where(
        denom > 0, (np.cos(c) - np.cos(a) * np.cos(b)) / np.maximum(denom, 1e-300), 1.0
    )
    cosg = np.clip(cosg, -1.0, 1.0)
    sing = np.sqrt(np.maximum(1.0 - cosg * cosg, 0.0))
    zero = np.zeros_like(a)
    v0 = np.stack([zero, zero, np.ones_like(a)], axis=1)
    v1 = np.stack([np.sin(a), zero, np.cos(a)], axis=1)
    v2 = np.stack([np.sin(b) * cosg, np.sin(b) * sing, np.cos(b)], axis=1)
    return v0, v1, v2


def _place_hyperboloid_unit(a, b, c):
    denom = np.sinh(a) * np.sinh(b)
    cosg = np.where(
        denom > 0,
        (np.cosh(a) * np.cosh(b) - np.cosh(c)) / np.maximum(denom, 1e-300),
        1.0,
    )
    cosg = np.clip(cosg, -1.0, 1.0)
    sing = np.sqrt(np.maximum(1.0 - cosg * cosg, 0.0))
    zero = np.zeros_like(a)
    v0 = np.stack([zero, zero, np.ones_like(a)], axis=1)
    v1 = np.stack([np.sinh(a), zero, np.cosh(a)], axis=1)
    v2 = np.stack([np.sinh(b) * cosg, np.sinh(b) * sing, np.cosh(b)], axis=1)
    return v0, v1, v2


def model_circumradius_batch(a, b, c, kappa):
    """Model circumradii for arrays of side triples (a >= b >= c elementwise)."""
    k = kappa_value(kappa)
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    c = np.asarray(c, dtype=float)
    if k == 0:
        return euclidean_circumradius_batch(a, b, c)
    radius = 1.0 / math.sqrt(abs(k))
    if k > 0:
        v0, v1, v2 = _place_sphere_unit(a / radius, b / radius, c / radius)
        best, _ = _minmax_over_sphere_candidates(v0, v1, v2, want_center=False)
    else:
        v0, v1, v2 = _place_hyperboloid_unit(a / radius, b / radius, c / radius)
        best, _ = _minmax_over_hyperboloid_candidates(v0, v1, v2, want_center=False)
    return radius * best


def euclidean_circumradius(sides) -> CircumResult:
    """Closed-form circumradius of a planar comparison triangle.

    The center witness is given in the canonical placement of
    comparison_triangle(sides, 0).
    """
    if not isinstance(sides, SideLengths):
        sides = SideLengths(*sides)
    a, b, c = sides.as_tuple()
    r = float(euclidean_circumradius_batch(np.array([a]), np.array([b]), np.array([c]))[0])
    if r == 0.5 * a:
        center = (0.5 * a, 0.0)  # midpoint of the longest placed side
    else:
        x2 = (a * a + b * b - c * c) / (2.0 * a)
        y2 = math.sqrt(max(b * b - x2 * x2, 0.0))
        cy = (x2 * x2 + y2 * y2 - a * x2) / (2.0 * y2)
        center = (0.5 * a, cy)
    return CircumResult(radius=r, center=center, attained=True, evaluations=1)


def model_circumradius(sides, kappa) -> CircumResult:
    """Minimum enclosing model-ball radius of the three comparison vertices.

    Candidates: the equidistant point(s) solved in the embedding (both
    antipodal solutions on the sphere) and the three geodesic side midpoints;
    the radius is the smallest max-distance over valid candidates.
    """
    if not isinstance(sides, SideLengths):
        sides = SideLengths(*sides)
    k = kappa_value(kappa)
    _check_model_size(sides, k)
    if k == 0:
        return euclidean_circumradius(sides)
    radius = 1.0 / math.sqrt(abs(k))
    a = np.array([sides.a / radius])
    b = np.array([sides.b / radius])
    c = np.array([sides.c / radius])
    if k > 0:
        v0, v1, v2 = _place_sphere_unit(a, b, c)
        best, centers = _minmax_over_sphere_candidates(v0, v1, v2, want_center=True)
        chart = "sphere"
    else:
        v0, v1, v2 = _place_hyperboloid_unit(a, b, c)
        best, centers = _minmax_over_hyperboloid_candidates(v0, v1, v2, want_center=True)
        chart = "hyperboloid"
    center = ModelPoint(chart, tuple(radius * centers[0]))
    return CircumResult(radius=float(radius * best[0]), center=center, attained=True, evaluations=5)
