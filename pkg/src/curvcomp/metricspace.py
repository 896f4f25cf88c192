"""Finite metric spaces: validation, graph ingestion, and file formats."""
from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse.csgraph import shortest_path


def metric_tolerance(scale: float) -> float:
    """Relative slack used for triangle-inequality checks: 1e-9 * (1 + scale)."""
    return 1e-9 * (1.0 + scale)


@dataclass(frozen=True)
class Violation:
    """A single metric-axiom violation, naming the offending indices."""

    kind: str  # asymmetry | negative_entry | nonzero_diagonal | triangle | zero_off_diagonal
    indices: tuple[int, ...]

    def __str__(self) -> str:
        return f"{self.kind}{self.indices}"


class MetricValidationError(ValueError):
    def __init__(self, violations: Sequence[Violation]):
        self.violations = list(violations)
        head = ", ".join(str(v) for v in self.violations[:8])
        more = "" if len(self.violations) <= 8 else f" (+{len(self.violations) - 8} more)"
        super().__init__(f"invalid metric: {head}{more}")


class DisconnectedGraphError(ValueError):
    def __init__(self, u, v):
        self.pair = (u, v)
        super().__init__(f"graph is disconnected: no path between {u!r} and {v!r}")


class NonpositiveWeightError(ValueError):
    pass


class InvalidParameterError(ValueError):
    pass


@dataclass(frozen=True)
class Embedding:
    """Ambient l_p coordinates for a space whose metric is an l_p norm metric.

    Used by augmented candidate policies: extra candidate points are given as
    coordinates and their distances to the space's points are computed here.
    """

    coords: np.ndarray  # (n, d)
    p: float  # norm exponent, 1 < p <= inf

    def distances_to_points(self, extra: np.ndarray) -> np.ndarray:
        """Distances from each row of `extra` to each embedded point, shape (m, n)."""
        extra = np.atleast_2d(np.asarray(extra, dtype=float))
        diff = np.abs(extra[:, None, :] - self.coords[None, :, :])
        if math.isinf(self.p):
            return diff.max(axis=2)
        return (diff ** self.p).sum(axis=2) ** (1.0 / self.p)


@dataclass(frozen=True)
class FiniteMetricSpace:
    """A validated symmetric distance matrix with optional labels and embedding."""

    dist: np.ndarray
    labels: tuple[str, ...] | None = None
    embedding: Embedding | None = None

    @property
    def n(self) -> int:
        return self.dist.shape[0]

    @property
    def diameter(self) -> float:
        return float(self.dist.max()) if self.n else 0.0

    @property
    def tau(self) -> float:
        return metric_tolerance(self.diameter)

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels is not None else str(i)

    def digest(self) -> str:
        return hashlib.sha256(np.ascontiguousarray(self.dist).tobytes()).hexdigest()

    def subspace(self, indices: Sequence[int]) -> "FiniteMetricSpace":
        idx = np.asarray(indices, dtype=int)
        sub = self.dist[np.ix_(idx, idx)].copy()
        sub.flags.writeable = False
        labels = tuple(self.label(i) for i in idx)
        emb = None
        if self.embedding is not None:
            emb = Embedding(self.embedding.coords[idx].copy(), self.embedding.p)
        return FiniteMetricSpace(sub, labels, emb)

    def rescale(self, lam: float) -> "FiniteMetricSpace":
        scaled = self.dist * lam
        scaled.flags.writeable = False
        return FiniteMetricSpace(scaled, self.labels, None)


@dataclass(frozen=True)
class Triple:
    """A triangle as a canonically ordered index triple; repeats are allowed."""

    i: int
    j: int
    k: int

    def __post_init__(self):
        i, j, k = sorted((self.i, self.j, self.k))
        object.__setattr__(self, "i", i)
        object.__setattr__(self, "j", j)
        object.__setattr__(self, "k", k)

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.i, self.j, self.k)


@dataclass(frozen=True)
class SideLengths:
    """Three side lengths sorted descending; degenerate (zero) sides allowed."""

    a: float
    b: float
    c: float

    def __post_init__(self):
        a, b, c = sorted((float(self.a), float(self.b), float(self.c)), reverse=True)
        if c < 0.0:
            raise ValueError(f"negative side length {c}")
        if a > b + c + metric_tolerance(a):
            raise ValueError(f"triangle inequality violated by sides ({a}, {b}, {c})")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)

    @classmethod
    def of_triple(cls, space: FiniteMetricSpace, t: Triple) -> "SideLengths":
        d = space.dist
        return cls(d[t.i, t.j], d[t.i, t.k], d[t.j, t.k])

    @property
    def perimeter(self) -> float:
        return self.a + self.b + self.c

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.a, self.b, self.c)


def validate_metric(
    matrix,
    pseudo_ok: bool = False,
    labels: Sequence[str] | None = None,
    embedding: Embedding | None = None,
) -> FiniteMetricSpace:
    """Validate a square distance matrix and wrap it as a FiniteMetricSpace.

    Raises MetricValidationError carrying the full list of violations; each
    violation names the offending index pair or triple.
    """
    d = np.array(matrix, dtype=float)
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {d.shape}")
    if not np.all(np.isfinite(d)):
        raise ValueError("distance matrix contains non-finite entries")
    n = d.shape[0]
    violations: list[Violation] = []

    for i in np.nonzero(np.diag(d) != 0.0)[0]:
        violations.append(Violation("nonzero_diagonal", (int(i),)))
    asym = np.argwhere(d != d.T)
    for i, j in asym:
        if i < j:
            violations.append(Violation("asymmetry", (int(i), int(j))))
    neg = np.argwhere(d < 0.0)
    for i, j in neg:
        if i < j:
            violations.append(Violation("negative_entry", (int(i), int(j))))
    if not pseudo_ok:
        off = ~np.eye(n, dtype=bool)
        for i, j in np.argwhere((d == 0.0) & off):
            if i < j:
                violations.append(Violation("zero_off_diagonal", (int(i), int(j))))

    tau = metric_tolerance(float(d.max()) if n else 0.0)
    for k in range(n):
        bad = d > d[:, [k]] + d[[k], :] + tau
        bad[:, k] = bad[k, :] = False
        np.fill_diagonal(bad, False)
        for i, j in np.argwhere(bad):
            if i < j:
                violations.append(Violation("triangle", (int(i), int(j), int(k))))

    if violations:
        raise MetricValidationError(violations)

    d.flags.writeable = False
    lab = tuple(labels) if labels is not None else None
    if lab is not None and len(lab) != n:
        raise ValueError("label count does not match matrix size")
    return FiniteMetricSpace(d, lab, embedding)


def from_graph(edges: Iterable[tuple], labels: Sequence[str] | None = None) -> FiniteMetricSpace:
    """All-pairs shortest-path metric of a positive-weight undirected graph.

    Vertex ids may be arbitrary hashables; they are remapped to indices in
    order of first appearance (deterministic for a fixed edge list).
    """
    edge_list = list(edges)
    if not edge_list:
        raise ValueError("empty edge list")
    index: dict = {}
    for u, v, _ in edge_list:
        for x in (u, v):
            if x not in index:
                index[x] = len(index)
    n = len(index)
    w = np.full((n, n), np.inf)
    np.fill_diagonal(w, 0.0)
    for u, v, weight in edge_list:
        weight = float(weight)
        if weight <= 0.0:
            raise NonpositiveWeightError(f"edge ({u!r}, {v!r}) has weight {weight}")
        i, j = index[u], index[v]
        if weight < w[i, j]:
            w[i, j] = w[j, i] = weight

    d = shortest_path(np.where(np.isfinite(w), w, 0.0), method="D", directed=False)
    if not np.all(np.isfinite(d)):
        i, j = map(int, np.argwhere(~np.isfinite(d))[0])
        names = {v: k for k, v in index.items()}
        raise DisconnectedGraphError(names[i], names[j])
    d = np.minimum(d, d.T)  # enforce exact symmetry
    lab = tuple(labels) if labels is not None else tuple(str(k) for k in index)
    return validate_metric(d, labels=lab)


# ---------------------------------------------------------------------------
# File formats.
#
# Distance matrix: first line `n`, then n comma-separated rows of n reals.
# Edge list: whitespace-separated `u v w` lines, `#` comments.


def parse_distance_matrix(text: str) -> np.ndarray:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty matrix file")
    n = int(lines[0])
    if len(lines) != n + 1:
        raise ValueError(f"expected {n} matrix rows, found {len(lines) - 1}")
    rows = []
    for ln in lines[1:]:
        row = [float(x) for x in ln.split(",")]
        if len(row) != n:
            raise ValueError(f"expected {n} entries per row, found {len(row)}")
        rows.append(row)
    return np.array(rows, dtype=float)


def format_distance_matrix(dist: np.ndarray) -> str:
    n = dist.shape[0]
    lines = [str(n)]
    for row in dist:
        lines.append(",".join(format(x, ".17g") for x in row))
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> list[tuple]:
    edges = []
    for ln in text.splitlines():
        ln = ln.split("#", 1)[0].strip()
        if not ln:
            continue
        parts = ln.split()
        if len(parts) != 3:
            raise ValueError(f"expected 'u v w' per line, got {ln!r}")
        u, v, w = parts
        edges.append((u, v, float(w)))
    return edges


def load_space(path: str, fmt: str | None = None, pseudo_ok: bool = False) -> FiniteMetricSpace:
    """Load a space from a file; format auto-detected by extension unless given."""
    with open(path, "r") as fh:
        text = fh.read()
    if fmt is None:
        fmt = "edges" if path.endswith((".tsv", ".edges")) else "matrix"
    if fmt == "matrix":
        return validate_metric(parse_distance_matrix(text), pseudo_ok=pseudo_ok)
    if fmt == "edges":
        return from_graph(parse_edge_list(text))
    raise ValueError(f"unknown format {fmt!r}")
