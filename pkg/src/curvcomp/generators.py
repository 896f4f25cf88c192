"""Seeded synthetic metric spaces and model-plane distance comparison curves."""
from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist

from .metricspace import (
    Embedding,
    FiniteMetricSpace,
    InvalidParameterError,
    from_graph,
    validate_metric,
)


@dataclass(frozen=True)
class GeneratorSpec:
    """Parameters for the synthetic space generators; seed fully determines output.

    Kinds: euclidean(dim, n, box), sphere(kappa>0, n), hyperbolic(kappa<0, n,
    chart_radius), lp_plane(p, n, box), tree(n, subdivision, edge_length),
    grid(width, height), random_graph(n, edge_prob, weight_min/max).
    """

    kind: str
    n: int = 0
    seed: int = 0
    dim: int = 2
    kappa: float = 0.0
    p: float = 2.0
    box: float = 1.0
    subdivision: int = 0
    edge_length: float = 1.0
    width: int = 0
    height: int = 0
    edge_prob: float = 0.3
    weight_min: float = 0.5
    weight_max: float = 1.5
    chart_radius: float = 2.0


_FIELD_TYPES = {f.name: f.type for f in dataclasses.fields(GeneratorSpec)}


def parse_generator_spec(text: str) -> GeneratorSpec:
    """Parse a `kind:key=value,key=value` string, e.g. `sphere:kappa=1,n=40,seed=7`."""
    kind, _, rest = text.partition(":")
    kind = kind.strip()
    kwargs = {}
    if rest.strip():
        for item in rest.split(","):
            key, _, value = item.partition("=")
            key = key.strip()
            if key not in _FIELD_TYPES or key == "kind":
                raise InvalidParameterError(f"unknown generator parameter {key!r}")
            if _FIELD_TYPES[key] == "int":
                kwargs[key] = int(value)
            else:
                kwargs[key] = float(value)
    return GeneratorSpec(kind=kind, **kwargs)


def sphere_points(kappa: float, n: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform points on the sphere of radius 1/sqrt(kappa), embedded in R^3."""
    if kappa <= 0:
        raise InvalidParameterError("sphere requires kappa > 0")
    x = rng.normal(size=(n, 3))
    x /= np.linalg.norm(x, axis=1, keepdims=True)
    return x / math.sqrt(kappa)


def sphere_distances(points: np.ndarray, kappa: float) -> np.ndarray:
    radius = 1.0 / math.sqrt(kappa)
    gram = np.clip(points @ points.T / radius**2, -1.0, 1.0)
    d = radius * np.arccos(gram)
    np.fill_diagonal(d, 0.0)
    return np.minimum(d, d.T)


def hyperboloid_points(
    kappa: float, n: int, rng: np.random.Generator, chart_radius: float = 2.0
) -> np.ndarray:
    """Points on the hyperboloid model of curvature kappa < 0.

    Sampling convention: uniform on a Euclidean disk of radius `chart_radius`
    in the exponential chart at the apex.
    """
    if kappa >= 0:
        raise InvalidParameterError("hyperbolic requires kappa < 0")
    radius = 1.0 / math.sqrt(-kappa)
    rho = chart_radius * np.sqrt(rng.uniform(size=n))
    phi = rng.uniform(0.0, 2.0 * math.pi, size=n)
    s = np.sinh(rho / radius)
    return radius * np.stack(
        [s * np.cos(phi), s * np.sin(phi), np.cosh(rho / radius)], axis=1
    )


def hyperboloid_distances(points: np.ndarray, kappa: float) -> np.ndarray:
    radius = 1.0 / math.sqrt(-kappa)
    gram = points[:, :2] @ points[:, :2].T - np.outer(points[:, 2], points[:, 2])
    d = radius * np.arccosh(np.clip(-gram / radius**2, 1.0, None))
    np.fill_diagonal(d, 0.0)
    return np.minimum(d, d.T)


def lp_distances(points: np.ndarray, p: float) -> np.ndarray:
    if math.isinf(p):
        d = cdist(points, points, "chebyshev")
    else:
        d = cdist(points, points, "minkowski", p=p)
    np.fill_diagonal(d, 0.0)
    return np.minimum(d, d.T)


def _random_tree_edges(n: int, rng: np.random.Generator, edge_length: float) -> list[tuple]:
    return [(int(rng.integers(0, i)), i, edge_length) for i in range(1, n)]


def _subdivide(edges: list[tuple], steps: int) -> list[tuple]:
    """Split each edge into 2**steps equal pieces, adding fresh vertices."""
    vertices = {u for u, _, _ in edges} | {v for _, v, _ in edges}
    next_id = max(int(v) for v in vertices) + 1
    for _ in range(steps):
        out = []
        for u, v, w in edges:
            out.append((u, next_id, w / 2.0))
            out.append((next_id, v, w / 2.0))
            next_id += 1
        edges = out
    return edges


def sample_space(spec: GeneratorSpec) -> FiniteMetricSpace:
    """Generate a finite metric space; deterministic in the spec's seed."""
    rng = np.random.default_rng(spec.seed)
    kind = spec.kind

    if kind == "euclidean":
        _require(spec.n >= 1 and spec.dim >= 1 and spec.box > 0, "euclidean needs n>=1, dim>=1, box>0")
        pts = rng.uniform(0.0, spec.box, size=(spec.n, spec.dim))
        return validate_metric(lp_distances(pts, 2.0), pseudo_ok=True, embedding=Embedding(pts, 2.0))
    if kind == "sphere":
        _require(spec.n >= 1, "sphere needs n >= 1")
        pts = sphere_points(spec.kappa, spec.n, rng)
        return validate_metric(sphere_distances(pts, spec.kappa), pseudo_ok=True)
    if kind == "hyperbolic":
        _require(spec.n >= 1, "hyperbolic needs n >= 1")
        pts = hyperboloid_points(spec.kappa, spec.n, rng, spec.chart_radius)
        return validate_metric(hyperboloid_distances(pts, spec.kappa), pseudo_ok=True)
    if kind == "lp_plane":
        _require(spec.n >= 1 and (spec.p > 1 or math.isinf(spec.p)), "lp_plane needs n>=1 and p>1")
        pts = rng.uniform(0.0, spec.box, size=(spec.n, 2))
        return validate_metric(lp_distances(pts, spec.p), pseudo_ok=True, embedding=Embedding(pts, spec.p))
    if kind == "tree":
        _require(spec.n >= 2 and spec.edge_length > 0 and spec.subdivision >= 0, "tree needs n>=2, edge_length>0")
        edges = _subdivide(_random_tree_edges(spec.n, rng, spec.edge_length), spec.subdivision)
        return from_graph(edges)
    if kind == "grid":
        _require(spec.width >= 1 and spec.height >= 1 and spec.width * spec.height >= 2, "grid needs width, height >= 1")
        w, h = spec.width, spec.height
        edges = []
        for y in range(h):
            for x in range(w):
                v = y * w + x
                if x + 1 < w:
                    edges.append((v, v + 1, 1.0))
                if y + 1 < h:
                    edges.append((v, v + w, 1.0))
        return from_graph(edges)
    if kind == "random_graph":
        _require(spec.n >= 2 and 0.0 <= spec.edge_prob <= 1.0, "random_graph needs n>=2, edge_prob in [0,1]")
        _require(0.0 < spec.weight_min <= spec.weight_max, "weight range must be positive and ordered")
        edges = []
        for i in range(1, spec.n):
            parent = int(rng.integers(0, i))
            edges.append((parent, i, _w(rng, spec)))
        for i in range(spec.n):
            for j in range(i + 1, spec.n):
                if rng.uniform() < spec.edge_prob:
                    edges.append((i, j, _w(rng, spec)))
        return from_graph(edges)
    raise InvalidParameterError(f"unknown generator kind {kind!r}")


def _w(rng: np.random.Generator, spec: GeneratorSpec) -> float:
    return float(rng.uniform(spec.weight_min, spec.weight_max))


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise InvalidParameterError(message)


def distance_comparison_curve(
    family: str, theta: float, t_grid, kappa: float | None = None
) -> np.ndarray:
    """Normalized divergence of two unit-speed rays at angle theta.

    Returns g(t) = d(exp(tX), exp(tY)) / (t * |X - Y|) for each t in t_grid,
    computed by the closed-form model distance; g - 1 has the opposite sign
    of the curvature for small t.
    """
    if not 0.0 < theta < math.pi:
        raise InvalidParameterError("theta must lie in (0, pi)")
    t = np.asarray(t_grid, dtype=float)
    if np.any(t <= 0.0):
        raise InvalidParameterError("t values must be positive")
    chord = math.sqrt(2.0 - 2.0 * math.cos(theta))

    if family == "euclidean":
        return np.ones_like(t)
    if family == "sphere":
        if kappa is None or kappa <= 0:
            raise InvalidParameterError("sphere curve requires kappa > 0")
        radius = 1.0 / math.sqrt(kappa)
        if np.any(t >= math.pi / (2.0 * math.sqrt(kappa))):
            raise InvalidParameterError("t outside the spherical chart")
        a = t / radius
        d = radius * np.arccos(np.clip(np.cos(a) ** 2 + np.sin(a) ** 2 * math.cos(theta), -1.0, 1.0))
        return d / (t * chord)
    if family == "hyperbolic":
        if kappa is None or kappa >= 0:
            raise InvalidParameterError("hyperbolic curve requires kappa < 0")
        radius = 1.0 / math.sqrt(-kappa)
        a = t / radius
        d = radius * np.arccosh(np.clip(np.cosh(a) ** 2 - np.sinh(a) ** 2 * math.cos(theta), 1.0, None))
        return d / (t * chord)
    raise InvalidParameterError(f"unknown model family {family!r}")
