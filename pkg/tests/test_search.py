import numpy as np
import pytest

from macsi.channels import build_example_double, build_example_single
from macsi.errors import MacsiError
from macsi.regions import assemble_single, eval_thm1, eval_thm2, example_aux_thm2, region_polygon
from macsi.search import (
    SearchConfig,
    batch_terms,
    convex_hull,
    hull_contains,
    local_improve,
    project_simplex,
    sample_aux,
    trace_boundary,
)
from macsi.search import _bundle_for, _to_params

from oracles import random_single_channel

EX = build_example_single()


def test_project_simplex():
    y = np.array([[0.2, 0.3, 0.5], [2.0, 0.0, -1.0], [-1.0, -1.0, -1.0]])
    x = project_simplex(y)
    np.testing.assert_allclose(x.sum(axis=-1), 1.0)
    assert np.all(x >= 0)
    np.testing.assert_allclose(x[0], y[0])
    np.testing.assert_allclose(x[1], [1.0, 0.0, 0.0])
    np.testing.assert_allclose(x[2], np.full(3, 1 / 3))


@pytest.mark.parametrize("bound", ["thm1", "thm2"])
def test_batch_terms_match_scalar_evaluation(bound):
    rng = np.random.default_rng(4)
    ev = eval_thm1 if bound == "thm1" else eval_thm2
    for _ in range(5):
        ch = random_single_channel(rng)
        aux = sample_aux(rng, ch, (2, 2, 2, 2), bound)
        ref = ev(assemble_single(ch, aux))
        fast = _bundle_for(ch, bound, aux)
        for k in ref:
            assert fast[k] == pytest.approx(ref[k], abs=1e-10)


def test_batch_terms_shape():
    aux = sample_aux(np.random.default_rng(0), EX, (2, 2, 2, 2), "thm2")
    P = {k: np.stack([v, v]) for k, v in _to_params(aux, "thm2", EX).items()}
    T = batch_terms(EX, "thm2", P)
    assert T.shape == (2, 11)
    np.testing.assert_array_equal(T[0], T[1])


def test_sample_aux_kinds():
    rng = np.random.default_rng(1)
    a = sample_aux(rng, EX, (3, 2), "thm1")
    assert a.p_u.shape == (3,) and a.p_v_w.shape == (4, 2)
    d = sample_aux(rng, build_example_double())
    assert not d.li_form
    with pytest.raises(MacsiError):
        sample_aux(rng, EX, bound="thm3")
    with pytest.raises(ValueError):
        sample_aux(rng, EX, bound="nope")


def test_local_improve_never_decreases():
    rng = np.random.default_rng(3)
    for w in ((1.0, 0.0), (1.0, 1.0), (0.3, 1.0)):
        aux = sample_aux(rng, EX, (2, 2), "thm1")
        _, trace = local_improve(EX, aux, w, "thm1", refine_iters=40, return_trace=True)
        assert np.all(np.diff(trace) >= 0)
        assert trace[-1] >= trace[0]


def test_local_improve_keeps_a_stationary_example():
    # the example distribution already attains R1 + R2 = 1.5 under the new bound
    aux = local_improve(EX, example_aux_thm2(), (1.0, 1.0), "thm2", refine_iters=10)
    poly = region_polygon(eval_thm2(assemble_single(EX, aux)))
    assert poly.weighted_max(1, 1) >= 1.5 - 1e-9


def test_local_improve_rejects_bad_weights():
    aux = sample_aux(np.random.default_rng(0), EX, (2, 2), "thm1")
    with pytest.raises(ValueError):
        local_improve(EX, aux, (0.0, 0.0), "thm1")
    with pytest.raises(ValueError):
        local_improve(EX, aux, (-1.0, 1.0), "thm1")


def test_convex_hull_pareto_vertices():
    pts = [(0, 1), (0.5, 0.9), (0.5, 0.5), (1, 0), (0.9, 0.5), (0.2, 0.2)]
    h = convex_hull(pts)
    np.testing.assert_allclose(h, [[0, 1], [0.5, 0.9], [0.9, 0.5], [1, 0]])
    # collinear middle point is dropped
    np.testing.assert_allclose(convex_hull([(0, 1), (0.5, 0.5), (1, 0)]), [[0, 1], [1, 0]])
    with pytest.raises(ValueError):
        convex_hull(np.zeros((0, 2)))


def test_hull_contains():
    h = convex_hull([(0, 1), (1, 0.5)])
    assert hull_contains(h, (0.5, 0.75))
    assert not hull_contains(h, (0.5, 0.76))
    assert hull_contains(h, (0.0, 0.0))
    assert not hull_contains(h, (1.01, 0.0))
    assert not hull_contains(h, (-0.1, 0.0))


def test_search_config_validation():
    assert SearchConfig(caps=(2, 2)).caps == (2, 2, 3, 3)
    for bad in (dict(caps=(0, 1)), dict(restarts=0), dict(refine_iters=-1), dict(caps=(1, 2, 3))):
        with pytest.raises(ValueError):
            SearchConfig(**bad)


def test_trace_is_deterministic_and_parallel_safe():
    base = dict(caps=(2, 2), restarts=4, refine_iters=20, seed=9, r1_grid=(0.0, 0.5, 1.0))
    a = trace_boundary(EX, "thm1", SearchConfig(workers=1, **base))
    b = trace_boundary(EX, "thm1", SearchConfig(workers=2, **base))
    np.testing.assert_array_equal(a.point_array(), b.point_array())
    np.testing.assert_array_equal(a.hull, b.hull)
    assert [p.source_seed for p in a.points] == [p.source_seed for p in b.points]
    d = a.to_dict()
    assert d["bound"] == "thm1" and len(d["points"]) == len(a.points)


def test_trace_points_are_certified():
    cfg = SearchConfig(caps=(2, 2), restarts=3, refine_iters=20, seed=1, workers=1)
    s = trace_boundary(EX, "thm1", cfg)
    for p in s.points:
        poly = region_polygon(eval_thm1(assemble_single(EX, s.auxes[p.restart])))
        assert poly.contains(p.r1, p.r2, tol=1e-7)


def test_thm2_trace_contains_thm1_trace():
    cfg = SearchConfig(caps=(2, 2, 2, 2), restarts=2, refine_iters=15, seed=3, workers=1)
    new = trace_boundary(EX, "thm2", cfg)
    old = trace_boundary(EX, "thm1", cfg)
    for r1, r2 in old.point_array():
        assert hull_contains(new.hull, (r1, r2), tol=1e-7)


def test_hull_drops_dominated_interior_point():
    h = convex_hull([(1, 0.5), (0.5, 1), (0.6, 0.6)])
    np.testing.assert_allclose(h, [[0.5, 1.0], [1.0, 0.5]])
    assert hull_contains(h, (0.6, 0.6))
