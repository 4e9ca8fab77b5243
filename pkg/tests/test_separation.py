import numpy as np
import pytest
from hypothesis import given, strategies as st

from invbanach.errors import (
    BodyNotInvariant,
    MarginInfeasible,
    NotUnitVector,
    OriginNotInterior,
    PointInsideBody,
    PointNotInvariant,
    UnsupportedDomain,
)
from invbanach.invariance import is_invariant_functional, symmetrize_functional
from invbanach.norms import dual_norm, l1, l2, linf, lp, norm, strict_c0, supporting_functional, unit_ball_vertices
from invbanach.perm_group import generate_group, symmetric_group, transposition, trivial_group
from invbanach.separation import (
    ConvexBody,
    HullOffSphere,
    ambient_distance,
    invariant_supporting_functional,
    minkowski_functional,
    nearest_point,
    separate,
    separate_invariant,
    separate_with_margin,
)

SWAP = generate_group(2, [transposition(2, 1, 2)])
CUBE2 = ConvexBody(unit_ball_vertices(linf(), 2), True)


def test_nearest_point_examples():
    assert nearest_point(CUBE2, [0.2, -0.3])[1] == pytest.approx(0, abs=1e-12)
    proj, d = nearest_point(ConvexBody([[0, 0], [1, 0]]), [2, 1])
    assert np.allclose(proj, [1, 0]) and d == pytest.approx(np.sqrt(2))
    proj, d = nearest_point(ConvexBody(np.eye(2), True), [2, 0])
    assert np.allclose(proj, [1, 0]) and d == pytest.approx(1)


def test_separate_examples():
    r = separate(ConvexBody([[0, 0], [1, 0], [0, 1], [1, 1]]), [2, 2])
    assert np.allclose(r.functional, np.array([1, 1]) / np.sqrt(2)) and r.margin > 0
    r = separate(ConvexBody([[0, 0]]), [1, 0])
    assert np.allclose(r.functional, [1, 0]) and r.margin == pytest.approx(1)
    with pytest.raises(PointInsideBody):
        separate(CUBE2, [1, 0.5])


def test_separate_invariant_examples():
    r = separate_invariant(CUBE2, SWAP, [2, 2], ambient=linf())
    assert np.allclose(r.functional, [0.5, 0.5]) and r.margin == pytest.approx(1)
    with pytest.raises(PointNotInvariant):
        separate_invariant(CUBE2, SWAP, [1.5, -1.5])
    C = ConvexBody([[0, 0], [1, 0], [0, 2]])
    a, b = separate_invariant(C, trivial_group(2), [3, 3]), separate(C, [3, 3])
    assert np.allclose(a.functional, b.functional) and a.margin == pytest.approx(b.margin)


def test_swap_obstruction():
    # every swap-invariant functional vanishes on (t, -t)
    rng = np.random.default_rng(0)
    for _ in range(100):
        f = symmetrize_functional(rng.standard_normal(2), SWAP)
        t = rng.uniform(-10, 10)
        assert abs(f @ np.array([t, -t])) <= 1e-12


def test_body_not_invariant():
    with pytest.raises(BodyNotInvariant):
        separate_invariant(ConvexBody([[0, 0], [1, 0]]), SWAP, [2, 2])


def test_separate_with_margin_examples():
    x0 = np.array([1.0, 1.0]) / np.sqrt(2)
    r = separate_with_margin(ConvexBody([[0, 0]]), SWAP, x0, 0.5)
    assert r.margin > 0.5 and dual_norm(r.functional, l2()) == pytest.approx(1)
    a = separate_with_margin(CUBE2, SWAP, [2, 2], 0.0)
    b = separate_invariant(CUBE2, SWAP, [2, 2])
    assert np.allclose(a.functional, b.functional)
    with pytest.raises(MarginInfeasible):
        separate_with_margin(ConvexBody([[0, 0]]), SWAP, x0, 1.0)


def test_ambient_distance_lp_matches_closed_form():
    # distance from (2,2) to the unit cube: 1 in sup norm, 2 in l1
    assert ambient_distance(CUBE2, [2, 2], linf())[0] == pytest.approx(1)
    assert ambient_distance(CUBE2, [2, 2], l1())[0] == pytest.approx(2)
    with pytest.raises(UnsupportedDomain):
        ambient_distance(CUBE2, [2, 2], lp(3.0))


def test_minkowski_examples():
    assert minkowski_functional(CUBE2, [2, 1]) == pytest.approx(2)
    assert minkowski_functional(ConvexBody(np.eye(2), True), [1, 1]) == pytest.approx(2)
    with pytest.raises(OriginNotInterior):
        minkowski_functional(ConvexBody(np.eye(2)), [1, 1])


def _line_search(D: ConvexBody, x):
    from scipy.spatial import ConvexHull

    eq = ConvexHull(D.points).equations  # rows (a, b) with a.y + b <= 0 inside
    lo, hi = 0.0, 1e3
    for _ in range(80):
        mid = (lo + hi) / 2
        if np.all(eq[:, :-1] @ (mid * np.asarray(x)) + eq[:, -1] <= 1e-14):
            lo = mid
        else:
            hi = mid
    return 1 / lo


def test_minkowski_line_search_oracle():
    rng = np.random.default_rng(1)
    for _ in range(10):
        P = rng.standard_normal((8, 2))
        D = ConvexBody(P, True)
        x = rng.standard_normal(2)
        assert minkowski_functional(D, x) == pytest.approx(_line_search(D, x), rel=1e-7)


def test_invariant_supporting_functional_examples():
    f = invariant_supporting_functional([1, 0, 0], symmetric_group(3), l1())
    assert np.allclose(f, [1, 1, 1]) and dual_norm(f, l1()) == pytest.approx(1)
    r = invariant_supporting_functional([1, 0], SWAP, linf())
    assert isinstance(r, HullOffSphere)
    assert np.allclose(r.barycenter, [0.5, 0.5]) and r.barycenter_norm == pytest.approx(0.5)
    x = np.array([0.6, -0.8])
    assert np.allclose(invariant_supporting_functional(x, trivial_group(2), l2()), supporting_functional(x, l2()))
    with pytest.raises(NotUnitVector):
        invariant_supporting_functional([2, 0], SWAP, l1())


@given(st.integers(2, 4), st.integers(0, 2 ** 32 - 1))
def test_invariant_separation_random(n, seed):
    rng = np.random.default_rng(seed)
    G = symmetric_group(n)
    P = rng.standard_normal((3, n))
    C = ConvexBody(np.vstack([P[:, perm.images] for perm in G.elements]))
    x0 = np.full(n, rng.uniform(-3, 3))
    if nearest_point(C, x0)[1] <= 1e-6:
        return
    r = separate_invariant(C, G, x0)
    assert is_invariant_functional(r.functional, G) and r.margin > 0
    assert r.value_at_x0 - C.support(r.functional) == pytest.approx(r.margin)


def test_strict_c0_ambient_unsupported():
    with pytest.raises(UnsupportedDomain):
        separate_with_margin(CUBE2, SWAP, [2, 2], 0.1, strict_c0(0.1))
