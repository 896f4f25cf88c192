"""Independent oracles for the test suite.

Everything here recomputes results from scratch along a different route than
the package: grid-refinement min-max searches, no-pruning brute-force scans,
and law-of-sines circumradii. Nothing imports the implementation paths it
checks beyond input preparation.
"""
from __future__ import annotations

import math

import numpy as np

_OBTUSE_REL = 1e-12  # classification threshold shared with the contract under test


def minmax_grid_lp(points, p, rounds=6, grid=41, polish=False):
    """Min-max l_p distance over a refining planar grid; returns (radius, center).

    With polish=True a Nelder-Mead descent finishes from the best grid point,
    tightening the handful of cases where the shrinking grid strands along the
    flat valley of the max function.
    """
    pts = np.asarray(points, dtype=float)
    lo = pts.min(axis=0)
    hi = pts.max(axis=0)
    center = (lo + hi) / 2.0
    half = float((hi - lo).max()) / 2.0 + 1e-9
    best = math.inf
    best_xy = center
    for _ in range(rounds):
        xs = np.linspace(center[0] - half, center[0] + half, grid)
        ys = np.linspace(center[1] - half, center[1] + half, grid)
        gx, gy = np.meshgrid(xs, ys)
        cand = np.stack([gx.ravel(), gy.ravel()], axis=1)
        diff = np.abs(cand[:, None, :] - pts[None, :, :])
        if math.isinf(p):
            dist = diff.max(axis=2)
        else:
            dist = (diff**p).sum(axis=2) ** (1.0 / p)
        worst = dist.max(axis=1)
        idx = int(np.argmin(worst))
        best = float(worst[idx])
        best_xy = cand[idx]
        center = best_xy
        half = half * 2.0 / (grid - 1) * 1.5
    if polish:
        from scipy.optimize import minimize

        def objective(z):
            diff = np.abs(z[None, :] - pts)
            if math.isinf(p):
                return float(diff.max(axis=1).max())
            return float(((diff**p).sum(axis=1) ** (1.0 / p)).max())

        res = minimize(
            objective,
            best_xy,
            method="Nelder-Mead",
            options={"xatol": 1e-13, "fatol": 1e-14, "maxiter": 4000},
        )
        if res.fun < best:
            best, best_xy = float(res.fun), res.x
    return best, best_xy


def law_of_sines_circumradius(a, b, c):
    """Euclidean enclosing-ball radius via the inscribed-angle route."""
    a, b, c = sorted((a, b, c), reverse=True)
    if b == 0.0 or c == 0.0:
        return a / 2.0
    cos_alpha = (b * b + c * c - a * a) / (2.0 * b * c)
    if b * b + c * c - a * a <= _OBTUSE_REL * a * a:
        return a / 2.0
    sin_alpha = math.sqrt(max(1.0 - cos_alpha * cos_alpha, 0.0))
    if sin_alpha == 0.0:
        return a / 2.0
    return a / (2.0 * sin_alpha)


def _sphere_exp(base, e1, e2, w):
    rho = np.linalg.norm(w, axis=1)
    rho_safe = np.maximum(rho, 1e-300)
    direction = (w[:, [0]] * e1 + w[:, [1]] * e2) / rho_safe[:, None]
    return np.cos(rho)[:, None] * base + np.sin(rho)[:, None] * direction


def _hyper_exp(base, e1, e2, w):
    rho = np.linalg.norm(w, axis=1)
    rho_safe = np.maximum(rho, 1e-300)
    direction = (w[:, [0]] * e1 + w[:, [1]] * e2) / rho_safe[:, None]
    return np.cosh(rho)[:, None] * base + np.sinh(rho)[:, None] * direction


def minmax_grid_model(vertices, kappa, grid=41, half0=None):
    """Min-max geodesic distance to three model points: coarse chart grid plus
    a derivative-free polish.

    `vertices` are embedding coordinates (2D for kappa = 0, 3D otherwise,
    scaled to curvature radius 1 internally). The coarse grid locates the
    basin; Nelder-Mead then descends the (convex but nonsmooth) max function,
    which a pure shrinking-grid scheme tracks poorly along its flat valleys.
    """
    from scipy.optimize import minimize

    verts = np.asarray(vertices, dtype=float)
    if kappa == 0:
        return minmax_grid_lp(verts, 2.0)[0]

    radius = 1.0 / math.sqrt(abs(kappa))
    unit = verts / radius
    if kappa > 0:
        base = unit.sum(axis=0)
        norm = np.linalg.norm(base)
        base = base / norm if norm > 1e-12 else np.array([0.0, 0.0, 1.0])
        exp_map = _sphere_exp

        def distances(points):
            return np.arccos(np.clip(points @ unit.T, -1.0, 1.0))

        half = half0 if half0 is not None else math.pi / 2
        e1 = np.cross(base, [0.0, 0.0, 1.0])
        if np.linalg.norm(e1) < 1e-9:
            e1 = np.cross(base, [1.0, 0.0, 0.0])
        e1 /= np.linalg.norm(e1)
        e2 = np.cross(base, e1)
        e2 /= np.linalg.norm(e2)
    else:
        j = np.diag([1.0, 1.0, -1.0])
        base = unit.sum(axis=0)
        base = base / math.sqrt(-(base @ j @ base))
        exp_map = _hyper_exp

        def distances(points):
            return np.arccosh(np.clip(-(points @ j @ unit.T), 1.0, None))

        pairwise = np.arccosh(np.clip(-(unit @ j @ unit.T), 1.0, None))
        half = half0 if half0 is not None else 1.0 + float(pairwise.max())
        e1 = np.array([1.0, 0.0, 0.0])
        e1 = e1 - (e1 @ j @ base) / (base @ j @ base) * base
        e1 /= math.sqrt(e1 @ j @ e1)
        e2 = np.array([0.0, 1.0, 0.0])
        e2 = e2 - (e2 @ j @ base) / (base @ j @ base) * base - (e2 @ j @ e1) * e1
        e2 /= math.sqrt(e2 @ j @ e2)

    center = np.zeros(2)
    best = math.inf
    start = center
    for _ in range(3):  # coarse-to-fine grids localize the basin for the polish
        xs = np.linspace(center[0] - half, center[0] + half, grid)
        ys = np.linspace(center[1] - half, center[1] + half, grid)
        gx, gy = np.meshgrid(xs, ys)
        w = np.stack([gx.ravel(), gy.ravel()], axis=1)
        worst = distances(exp_map(base, e1, e2, w)).max(axis=1)
        idx = int(np.argmin(worst))
        best = float(worst[idx])
        start = center = w[idx]
        half = half * 2.0 / (grid - 1) * 2.0

    def objective(z):
        return float(distances(exp_map(base, e1, e2, z[None, :])).max())

    # Nelder-Mead stalls on the kinks of the max function, so polish with an
    # epigraph program instead: minimize t subject to d_i(w) <= t, whose
    # constraints are smooth near the optimum
    def dists(z):
        return distances(exp_map(base, e1, e2, z[None, :]))[0]

    constraints = [
        {"type": "ineq", "fun": (lambda z, i=i: z[2] - dists(z[:2])[i])} for i in range(3)
    ]
    res = minimize(
        lambda z: z[2],
        np.array([start[0], start[1], best * (1 + 1e-9) + 1e-12]),
        method="SLSQP",
        constraints=constraints,
        options={"maxiter": 500, "ftol": 1e-15},
    )
    if res.x is not None:
        best = min(best, float(dists(res.x[:2]).max()))
    nm = minimize(
        objective,
        start,
        method="Nelder-Mead",
        options={"xatol": 1e-13, "fatol": 1e-14, "maxiter": 4000},
    )
    best = min(best, float(nm.fun))
    return radius * best


def brute_discrete_circumradius(dist, i, j, k):
    """No-pruning min-max over all points; returns (radius, attaining index)."""
    n = dist.shape[0]
    best = math.inf
    best_x = -1
    for x in range(n):
        worst = max(dist[x, i], dist[x, j], dist[x, k])
        if worst < best:
            best = worst
            best_x = x
    return best, best_x


def brute_certify(dist, kappa=0.0, beta=0.0, degenerate=False):
    """From-scratch scan over canonical triples. Returns a result dict.

    Only kappa = 0 is supported (the model side uses the law-of-sines route).
    """
    assert kappa == 0.0
    n = dist.shape[0]
    eps_upper = 0.0
    eps_lower = 0.0
    worst_upper = None
    worst_lower = None
    count = 0
    for i in range(n):
        if degenerate:
            for j in range(i + 1, n):
                if dist[i, j] < beta:
                    continue
                r_space, _ = brute_discrete_circumradius(dist, i, i, j)
                defect = r_space - dist[i, j] / 2.0
                count += 1
                if defect > eps_upper:
                    eps_upper = defect
                    worst_upper = (i, i, j)
                if -defect > eps_lower:
                    eps_lower = -defect
                    worst_lower = (i, i, j)
        for j in range(i + 1, n):
            if dist[i, j] < beta:
                continue
            for k in range(j + 1, n):
                if dist[i, k] < beta or dist[j, k] < beta:
                    continue
                r_space, _ = brute_discrete_circumradius(dist, i, j, k)
                r_model = law_of_sines_circumradius(dist[i, j], dist[i, k], dist[j, k])
                defect = r_space - r_model
                count += 1
                if defect > eps_upper:
                    eps_upper = defect
                    worst_upper = (i, j, k)
                if -defect > eps_lower:
                    eps_lower = -defect
                    worst_lower = (i, j, k)
    return {
        "eps_upper": eps_upper,
        "eps_lower": eps_lower,
        "worst_upper": worst_upper,
        "worst_lower": worst_lower,
        "count": count,
    }


def brute_delta(dist):
    """Spec-order exhaustive four-point scan; returns (delta, witness)."""
    n = dist.shape[0]
    best = 0.0
    witness = None
    for w in range(n):
        for x in range(n):
            for y in range(n):
                for z in range(n):
                    gxz = (dist[x, w] + dist[z, w] - dist[x, z]) / 2.0
                    gzy = (dist[z, w] + dist[y, w] - dist[z, y]) / 2.0
                    gxy = (dist[x, w] + dist[y, w] - dist[x, y]) / 2.0
                    val = min(gxz, gzy) - gxy
                    if val > best:
                        best = val
                        witness = (x, y, z, w)
    return best, witness


def random_metric_matrix(rng, n, lo=1.0, hi=2.0):
    """A random metric: entries in [lo, hi] with hi <= 2*lo are automatically metric."""
    assert hi <= 2 * lo
    m = rng.uniform(lo, hi, size=(n, n))
    m = np.triu(m, 1)
    m = m + m.T
    return m
