"""Seeded generators and the model distance-comparison curves."""
import math

import numpy as np
import pytest
from scipy.spatial.distance import cdist

from curvcomp import (
    GeneratorSpec,
    distance_comparison_curve,
    parse_generator_spec,
    sample_space,
)
from curvcomp.metricspace import InvalidParameterError


def test_parse_generator_spec_basic():
    spec = parse_generator_spec("sphere:kappa=1,n=40,seed=7")
    assert spec == GeneratorSpec(kind="sphere", kappa=1.0, n=40, seed=7)


def test_parse_generator_spec_rejects_unknown_keys():
    with pytest.raises(InvalidParameterError):
        parse_generator_spec("sphere:radius=2")
    with pytest.raises(InvalidParameterError):
        sample_space(parse_generator_spec("wormhole:n=3"))


@pytest.mark.parametrize(
    "text",
    [
        "euclidean:n=12,seed=3,dim=3",
        "sphere:kappa=0.5,n=10,seed=1",
        "hyperbolic:kappa=-1,n=10,seed=1",
        "lp_plane:p=4,n=10,seed=2",
        "tree:n=9,seed=5,subdivision=1",
        "grid:width=3,height=4",
        "random_graph:n=12,seed=8",
    ],
)
def test_generators_are_seed_deterministic(text):
    a = sample_space(parse_generator_spec(text))
    b = sample_space(parse_generator_spec(text))
    assert np.array_equal(a.dist, b.dist)


def test_different_seeds_differ():
    a = sample_space(parse_generator_spec("euclidean:n=10,seed=1"))
    b = sample_space(parse_generator_spec("euclidean:n=10,seed=2"))
    assert not np.array_equal(a.dist, b.dist)


def test_sphere_distances_bounded_by_model_diameter():
    kappa = 2.0
    space = sample_space(GeneratorSpec(kind="sphere", kappa=kappa, n=50, seed=3))
    assert space.diameter <= math.pi / math.sqrt(kappa) + 1e-12
    assert np.array_equal(space.dist, space.dist.T)


def test_hyperbolic_distances_respect_chart_radius():
    space = sample_space(
        GeneratorSpec(kind="hyperbolic", kappa=-1.0, n=50, seed=4, chart_radius=1.5)
    )
    assert space.diameter <= 3.0 + 1e-9  # two points at most 2 * chart_radius apart


def test_lp_plane_matches_cdist_and_carries_embedding():
    space = sample_space(GeneratorSpec(kind="lp_plane", p=3.0, n=15, seed=6))
    assert space.embedding is not None and space.embedding.p == 3.0
    want = cdist(space.embedding.coords, space.embedding.coords, "minkowski", p=3.0)
    assert np.allclose(space.dist, want, atol=1e-12)


def test_euclidean_embedding_present():
    space = sample_space(GeneratorSpec(kind="euclidean", n=8, seed=0, dim=4))
    assert space.embedding.coords.shape == (8, 4)


def test_tree_subdivision_sizes_and_scales():
    base = sample_space(GeneratorSpec(kind="tree", n=10, seed=1, subdivision=0))
    fine = sample_space(GeneratorSpec(kind="tree", n=10, seed=1, subdivision=1))
    assert base.n == 10
    assert fine.n == 10 + 9  # one new vertex per original edge
    # original vertices keep their pairwise distances (indices follow first
    # appearance in the edge list, so align through the labels)
    idx = [fine.labels.index(lab) for lab in base.labels]
    assert np.allclose(fine.subspace(idx).dist, base.dist, atol=1e-12)
    # all distances are multiples of the halved edge length
    assert np.allclose(fine.dist * 2, np.round(fine.dist * 2), atol=1e-9)


def test_grid_metric_is_manhattan():
    space = sample_space(GeneratorSpec(kind="grid", width=4, height=3))
    assert space.n == 12
    pos = {space.labels.index(str(y * 4 + x)): (x, y) for y in range(3) for x in range(4)}
    for a, (xa, ya) in pos.items():
        for b, (xb, yb) in pos.items():
            assert space.dist[a, b] == abs(xa - xb) + abs(ya - yb)


def test_random_graph_is_validated_metric():
    space = sample_space(GeneratorSpec(kind="random_graph", n=20, seed=9, edge_prob=0.2))
    assert space.n == 20
    assert float(space.dist.min()) == 0.0


def test_generator_parameter_checks():
    with pytest.raises(InvalidParameterError):
        sample_space(GeneratorSpec(kind="sphere", kappa=-1.0, n=5))
    with pytest.raises(InvalidParameterError):
        sample_space(GeneratorSpec(kind="hyperbolic", kappa=1.0, n=5))
    with pytest.raises(InvalidParameterError):
        sample_space(GeneratorSpec(kind="lp_plane", p=1.0, n=5))
    with pytest.raises(InvalidParameterError):
        sample_space(GeneratorSpec(kind="tree", n=1))


def test_comparison_curve_flat_is_one():
    t = np.linspace(0.1, 2.0, 20)
    assert np.array_equal(distance_comparison_curve("euclidean", 1.0, t), np.ones(20))


def test_comparison_curve_signs_and_small_t_limit():
    t = np.array([1e-3, 0.2, 0.5, 1.0])
    sphere = distance_comparison_curve("sphere", 1.2, t, kappa=1.0)
    hyper = distance_comparison_curve("hyperbolic", 1.2, t, kappa=-1.0)
    assert np.all(sphere[1:] < 1.0) and np.all(hyper[1:] > 1.0)
    assert abs(sphere[0] - 1.0) < 1e-6 and abs(hyper[0] - 1.0) < 1e-6
    # divergence is monotone in t for fixed angle
    assert np.all(np.diff(sphere) < 0) and np.all(np.diff(hyper) > 0)


def test_comparison_curve_domain_checks():
    with pytest.raises(InvalidParameterError):
        distance_comparison_curve("sphere", 1.0, [2.0], kappa=1.0)  # outside chart
    with pytest.raises(InvalidParameterError):
        distance_comparison_curve("sphere", 0.0, [0.5], kappa=1.0)
    with pytest.raises(InvalidParameterError):
        distance_comparison_curve("hyperbolic", 1.0, [0.0], kappa=-1.0)
    with pytest.raises(InvalidParameterError):
        distance_comparison_curve("torus", 1.0, [0.5])
