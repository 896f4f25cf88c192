"""Circumradius inside the space under test.

Discrete min-max over candidate points, and continuous min-max in l_p planes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linprog, minimize

from .metricspace import FiniteMetricSpace, Triple


class EmptyCandidateSetError(ValueError):
    pass


class InvalidPError(ValueError):
    pass


@dataclass(frozen=True)
class CircumResult:
    """Result of a min-max circumradius computation.

    `center` is an attaining witness: a candidate index for discrete spaces or
    a coordinate tuple for continuous ones.
    """

    radius: float
    center: int | tuple[float, ...] | None
    attained: bool
    evaluations: int


@dataclass(frozen=True)
class CandidatePolicy:
    """Which points may serve as circumcenter candidates.

    `all`: every point of the space. `subset`: the listed indices only.
    `augmented`: every point plus extra coordinate points (requires the space
    to carry an l_p embedding).
    """

    mode: str = "all"
    subset: tuple[int, ...] = ()
    extra_points: tuple[tuple[float, ...], ...] = ()

    @classmethod
    def all_points(cls) -> "CandidatePolicy":
        return cls()

    @classmethod
    def of_subset(cls, indices) -> "CandidatePolicy":
        indices = tuple(int(i) for i in indices)
        if not indices:
            raise EmptyCandidateSetError("subset policy requires a nonempty index list")
        return cls(mode="subset", subset=indices)

    @classmethod
    def augmented(cls, points) -> "CandidatePolicy":
        return cls(mode="augmented", extra_points=tuple(tuple(float(x) for x in p) for p in points))


def candidate_rows(space: FiniteMetricSpace, policy: CandidatePolicy) -> np.ndarray:
    """Distance rows (m, n) from each candidate to every point of the space.

    Space points come first in index order, then any augmented extra points
    in the order given; ties in later min-max scans therefore resolve to the
    lowest candidate index.
    """
    if policy.mode == "all":
        return space.dist
    if policy.mode == "subset":
        bad = [i for i in policy.subset if not 0 <= i < space.n]
        if bad:
            raise IndexError(f"candidate indices out of range: {bad}")
        return space.dist[np.asarray(policy.subset, dtype=int)]
    if policy.mode == "augmented":
        if space.embedding is None:
            raise ValueError("augmented candidate policy requires an embedded space")
        if not policy.extra_points:
            return space.dist
        extra = space.embedding.distances_to_points(np.asarray(policy.extra_points, dtype=float))
        return np.vstack([space.dist, extra])
    raise ValueError(f"unknown candidate policy mode {policy.mode!r}")


def discrete_circumradius(
    space: FiniteMetricSpace,
    t: Triple,
    policy: CandidatePolicy = CandidatePolicy(),
) -> CircumResult:
    """Min over candidates x of max_i d(x, a_i) for the triple's vertices.

    Equivalently the smallest r for which the three closed balls B(a_i, r)
    share a candidate; ties between attaining candidates resolve to the
    lowest index.
    """
    for idx in t.as_tuple():
        if not 0 <= idx < space.n:
            raise IndexError(f"triple index {idx} out of range for n={space.n}")
    rows = candidate_rows(space, policy)
    if rows.shape[0] == 0:
        raise EmptyCandidateSetError("no candidates available")
    per_candidate = np.maximum(np.maximum(rows[:, t.i], rows[:, t.j]), rows[:, t.k])
    best = int(np.argmin(per_candidate))
    if policy.mode == "subset":
        center = int(policy.subset[best])  # report the space index, not the row position
    else:
        center = best
    return CircumResult(
        radius=float(per_candidate[best]),
        center=center,
        attained=True,
        evaluations=rows.shape[0],
    )


def linf_circumcenter(points) -> CircumResult:
    """Exact l_inf circumcenter: coordinatewise midpoint of extremes.

    The radius is half the largest coordinate range, which equals half the
    longest pairwise l_inf side of the three points.
    """
    pts = np.asarray(points, dtype=float)
    lo = pts.min(axis=0)
    hi = pts.max(axis=0)
    center = (lo + hi) / 2.0
    radius = float((hi - lo).max()) / 2.0
    return CircumResult(radius=radius, center=tuple(center), attained=True, evaluations=1)


def _lp_norm(u: np.ndarray, p: float) -> float:
    return float(np.sum(np.abs(u) ** p) ** (1.0 / p))


def _lp_grad(u: np.ndarray, p: float) -> np.ndarray:
    nrm = _lp_norm(u, p)
    if nrm == 0.0:
        return np.zeros_like(u)
    return np.sign(u) * np.abs(u) ** (p - 1.0) / nrm ** (p - 1.0)


def _certified_lower_bound(pts: np.ndarray, x: np.ndarray, p: float) -> float:
    """Lower bound on the min-max value, certifying near-optimality of x.

    Combines half the largest pairwise distance (always valid) with the
    supporting-hyperplane bound max{sum l_i f_i(x) : l in simplex,
    sum l_i grad f_i(x) = 0}, valid by convexity of each distance function.
    """
    f = np.array([_lp_norm(x - a, p) for a in pts])
    pair = max(_lp_norm(pts[i] - pts[j], p) for i in range(3) for j in range(i + 1, 3)) / 2.0
    grads = np.array([_lp_grad(x - a, p) for a in pts])
    a_eq = np.vstack([grads.T, np.ones(3)])
    b_eq = np.concatenate([np.zeros(pts.shape[1]), [1.0]])
    res = linprog(-f, A_eq=a_eq, b_eq=b_eq, bounds=[(0, None)] * 3, method="highs")
    lp_bound = -res.fun if res.status == 0 else -math.inf
    return max(pair, lp_bound)


def lp_circumradius(points, p: float, tol: float = 1e-8) -> CircumResult:
    """Circumradius of three points under the l_p norm, p in (1, inf].

    For p = inf the result is exact. For finite p the convex min-max is solved
    by an epigraph SQP with multiple deterministic starts; the returned radius
    carries a verified suboptimality bound below `tol` (duality-style
    certificate, see _certified_lower_bound).
    """
    if math.isinf(p):
        return linf_circumcenter(points)
    if not p > 1.0:
        raise InvalidPError(f"p must exceed 1 (or be inf), got {p}")
    pts = np.asarray(points, dtype=float)
    if pts.shape[0] != 3 or pts.ndim != 2:
        raise ValueError("expected exactly three coordinate points")
    d = pts.shape[1]

    constraints = [
        {
            "type": "ineq",
            "fun": (lambda z, a=a: z[-1] - _lp_norm(z[:-1] - a, p)),
            "jac": (lambda z, a=a: np.concatenate([-_lp_grad(z[:-1] - a, p), [1.0]])),
        }
        for a in pts
    ]
    obj_grad = np.zeros(d + 1)
    obj_grad[-1] = 1.0

    starts = [pts.mean(axis=0)]
    starts += [(pts[i] + pts[j]) / 2.0 for i, j in ((0, 1), (0, 2), (1, 2))]
    solutions = []
    evaluations = 0
    for x0 in starts:
        t0 = max(_lp_norm(x0 - a, p) for a in pts)
        z0 = np.concatenate([x0, [t0 * (1.0 + 1e-9) + 1e-12]])
        res = minimize(
            lambda z: z[-1],
            z0,
            jac=lambda z: obj_grad,
            constraints=constraints,
            method="SLSQP",
            options={"maxiter": 400, "ftol": 1e-14},
        )
        evaluations += res.nit
        x = res.x[:-1]
        solutions.append((max(_lp_norm(x - a, p) for a in pts), x))

    best_radius = min(r for r, _ in solutions)
    # deterministic witness: lexicographically smallest near-optimal iterate
    near = [x for r, x in solutions if r <= best_radius + 1e-12]
    center = min(near, key=lambda x: tuple(x))
    radius = max(_lp_norm(center - a, p) for a in pts)

    lower = _certified_lower_bound(pts, center, p)
    if radius - lower > tol:
        raise RuntimeError(
            f"l_p min-max certificate gap {radius - lower:.3e} exceeds tolerance {tol:.1e}"
        )
    return CircumResult(radius=radius, center=tuple(center), attained=True, evaluations=evaluations)
