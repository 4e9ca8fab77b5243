"""Separation of a point from a polytope, with and without group invariance."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog

from .errors import (
    BodyNotInvariant,
    MarginInfeasible,
    NormNotInvariant,
    NotUnitVector,
    OriginNotInterior,
    PointInsideBody,
    PointNotInvariant,
    UnsupportedDomain,
)
from .invariance import is_invariant_body, is_invariant_point, symmetrize_functional, symmetrize_point
from .norms import NormSpec, dual_norm, is_norm_invariant, norm, supporting_functional, unit_ball_vertices
from .perm_group import PermutationGroup
from .polytope import gauge, nearest_point as _nearest, origin_interior

INSIDE_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class ConvexBody:
    """conv(generators), or the absolutely convex hull when ``absolutely_convex``."""

    generators: np.ndarray
    absolutely_convex: bool = False

    def __post_init__(self):
        P = np.atleast_2d(np.asarray(self.generators, dtype=float))
        if P.size == 0:
            raise ValueError("a convex body needs at least one generator")
        if not np.all(np.isfinite(P)):
            raise ValueError("generators must be finite")
        P.setflags(write=False)
        object.__setattr__(self, "generators", P)

    @property
    def dim(self) -> int:
        return self.generators.shape[1]

    @property
    def points(self) -> np.ndarray:
        P = self.generators
        return np.vstack([P, -P]) if self.absolutely_convex else P

    def support(self, f) -> float:
        """sup_{x in C} f(x)."""
        return float((self.points @ np.asarray(f, dtype=float)).max())

    def to_json(self) -> dict:
        return {"generators": self.generators.tolist(), "absolutely_convex": self.absolutely_convex}

    @classmethod
    def from_json(cls, obj) -> "ConvexBody":
        if isinstance(obj, list):
            return cls(np.asarray(obj, dtype=float))
        return cls(np.asarray(obj["generators"], dtype=float), bool(obj.get("absolutely_convex", False)))


@dataclass
class SeparationResult:
    functional: np.ndarray
    margin: float
    sup_over_C: float
    value_at_x0: float

    def to_json(self) -> dict:
        return {"functional": self.functional.tolist(), "margin": self.margin,
                "sup_over_C": self.sup_over_C, "value_at_x0": self.value_at_x0}


def _result(C: ConvexBody, f: np.ndarray, x0: np.ndarray) -> SeparationResult:
    s = C.support(f)
    v = float(f @ x0)
    return SeparationResult(f, v - s, s, v)


def nearest_point(C: ConvexBody, x0) -> tuple[np.ndarray, float]:
    """Euclidean projection of x0 onto C and the distance."""
    proj, dist, _ = _nearest(C.points, np.asarray(x0, dtype=float))
    return proj, dist


def separate(C: ConvexBody, x0) -> SeparationResult:
    """Unit Euclidean functional along x0 - proj_C(x0)."""
    x0 = np.asarray(x0, dtype=float)
    proj, dist = nearest_point(C, x0)
    if dist <= INSIDE_TOL:
        raise PointInsideBody(f"x0 is within {dist:.3g} of C")
    return _result(C, (x0 - proj) / dist, x0)


def _check_invariant_pair(C: ConvexBody, G: PermutationGroup, x0: np.ndarray) -> None:
    if not is_invariant_body(C.generators, G, C.absolutely_convex):
        raise BodyNotInvariant("C is not G-invariant")
    if not is_invariant_point(x0, G):
        raise PointNotInvariant("x0 is not G-invariant")


def separate_invariant(C: ConvexBody, G: PermutationGroup, x0, ambient: NormSpec | None = None) -> SeparationResult:
    """A G-invariant separating functional: the average of a classical separator.

    With ``ambient`` the functional is scaled to dual norm 1 in that norm,
    otherwise to Euclidean length 1.
    """
    x0 = np.asarray(x0, dtype=float)
    _check_invariant_pair(C, G, x0)
    f = symmetrize_functional(separate(C, x0).functional, G)
    scale = float(dual_norm(f, ambient)) if ambient is not None else float(np.linalg.norm(f))
    return _result(C, f / scale, x0)


def ambient_distance(C: ConvexBody, x0, spec: NormSpec) -> tuple[float, np.ndarray]:
    """min_{y in C} ||x0 - y|| and a dual-unit functional f with f(x0) - sup_C f equal to it.

    Polyhedral norms: the LP max f.x0 - s subject to f.c <= s on C and
    |f.v| <= 1 on the unit-ball vertices (strong duality gives the distance).
    """
    x0 = np.asarray(x0, dtype=float)
    if spec.kind == "L2":
        proj, dist = nearest_point(C, x0)
        f = (x0 - proj) / dist if dist > 0 else np.zeros_like(x0)
        return dist, f
    if not spec.polyhedral:
        raise UnsupportedDomain(f"ambient distance in {spec.kind} is not implemented")
    n = C.dim
    P = C.points
    V = unit_ball_vertices(spec, n)
    c = np.concatenate([-x0, [1.0]])
    A = np.vstack([np.hstack([P, -np.ones((len(P), 1))]),
                   np.hstack([V, np.zeros((len(V), 1))]),
                   np.hstack([-V, np.zeros((len(V), 1))])])
    b = np.concatenate([np.zeros(len(P)), np.ones(2 * len(V))])
    res = linprog(c, A_ub=A, b_ub=b, bounds=(None, None), method="highs")
    if res.status != 0:
        raise RuntimeError(f"distance LP failed: {res.message}")
    return float(-res.fun), res.x[:n]


def separate_with_margin(C: ConvexBody, G: PermutationGroup, x0, delta: float,
                         ambient: NormSpec | None = None) -> SeparationResult:
    """Invariant f with dual norm 1 and f(x0) > sup_C f + delta (distance measured in ``ambient``)."""
    x0 = np.asarray(x0, dtype=float)
    spec = ambient if ambient is not None else NormSpec("L2")
    _check_invariant_pair(C, G, x0)
    if delta < 0:
        raise ValueError("delta must be non-negative")
    dist, f = ambient_distance(C, x0, spec)
    if dist <= INSIDE_TOL:
        raise PointInsideBody(f"x0 is within {dist:.3g} of C")
    if dist <= delta:
        raise MarginInfeasible(f"distance {dist:.6g} does not exceed delta={delta}")
    ok, _ = is_norm_invariant(spec, G)
    if not ok:
        raise NormNotInvariant("ambient norm is not G-invariant")
    # averaging keeps the margin (x0 and C are fixed) and does not increase the dual norm
    f = symmetrize_functional(f, G)
    f = f / float(dual_norm(f, spec))
    return _result(C, f, x0)


def minkowski_functional(D: ConvexBody, x) -> float:
    """mu_D(x) = inf {lam > 0 : x in lam D}, for 0 in the interior of D."""
    P = D.points
    if not origin_interior(P):
        raise OriginNotInterior("0 is not an interior point of D")
    return gauge(P, np.asarray(x, dtype=float))


@dataclass
class HullOffSphere:
    barycenter: np.ndarray
    barycenter_norm: float

    def to_json(self) -> dict:
        return {"hull_off_sphere": True, "barycenter": self.barycenter.tolist(),
                "barycenter_norm": self.barycenter_norm}


def invariant_supporting_functional(x, G: PermutationGroup, spec: NormSpec, tol: float = 1e-9):
    """An invariant f with f(x) = 1 = ||f||, or HullOffSphere when the orbit hull leaves the sphere.

    For a finite orbit the hull lies on the sphere iff its barycenter does.
    """
    x = np.asarray(x, dtype=float)
    if abs(float(norm(x, spec)) - 1.0) > tol:
        raise NotUnitVector(f"||x|| = {float(norm(x, spec))}")
    ok, _ = is_norm_invariant(spec, G)
    if not ok:
        raise NormNotInvariant(f"{spec.kind} norm is not G-invariant")
    xb = symmetrize_point(x, G)
    nb = float(norm(xb, spec))
    if abs(nb - 1.0) > tol:
        return HullOffSphere(xb, nb)
    return symmetrize_functional(supporting_functional(xb, spec), G)
