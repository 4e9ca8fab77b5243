"""Group averages of points, functionals and operators; the fixed subspace X_G."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NotInvariant, PreconditionFailed
from .operators import Operator
from .perm_group import Permutation, PermutationGroup, apply
from .polytope import halfspace_vertices, in_hull

INVARIANCE_TOL = 1e-12


def _check(x: np.ndarray, G: PermutationGroup) -> None:
    if x.shape[-1] != G.degree:
        raise DimensionMismatch(f"length {x.shape[-1]} vs group degree {G.degree}")


def orbit_points(x, G: PermutationGroup) -> np.ndarray:
    """|G| x n array whose rows are g(x), in the order of G.elements."""
    x = np.asarray(x, dtype=float)
    _check(x, G)
    return x[G.index_array]


def symmetrize_point(x, G: PermutationGroup) -> np.ndarray:
    """Haar average (1/|G|) sum_g g(x)."""
    return orbit_points(x, G).mean(axis=0)


def symmetrize_functional(f, G: PermutationGroup) -> np.ndarray:
    """Coefficients of x -> (1/|G|) sum_g f(g(x)).

    f(g x) = (M_g^T f) . x and M_g^T = M_{g^-1}; averaging over a group is
    unchanged by inversion, so this is the same average as for points.
    """
    f = np.asarray(f, dtype=float)
    _check(f, G)
    return (G.matrices.transpose(0, 2, 1) @ f).mean(axis=0)


def averaging_projector(G: PermutationGroup) -> np.ndarray:
    return G.matrices.mean(axis=0)


def symmetrize_operator(T: Operator, G: PermutationGroup) -> Operator:
    """T_bar(x) = (1/|G|) sum_g T(g(x))."""
    if T.n != G.degree:
        raise DimensionMismatch(f"operator domain {T.n} vs group degree {G.degree}")
    return T.with_matrix(T.matrix @ averaging_projector(G))


@dataclass(frozen=True, eq=False)
class FixedSubspace:
    basis: np.ndarray  # k x n, orthonormal rows
    projector: np.ndarray  # n x n

    @property
    def dim(self) -> int:
        return self.basis.shape[0]


def fixed_subspace(G: PermutationGroup) -> FixedSubspace:
    """X_G, spanned by the indicator vectors of the orbit blocks."""
    blocks = G.orbit_partition.blocks
    B = np.zeros((len(blocks), G.degree))
    for k, b in enumerate(blocks):
        B[k, list(b)] = 1.0 / np.sqrt(len(b))
    return FixedSubspace(B, B.T @ B)


def is_invariant_point(x, G: PermutationGroup, tol: float = INVARIANCE_TOL) -> bool:
    P = orbit_points(x, G)
    return bool(np.abs(P - np.asarray(x, dtype=float)).max(initial=0.0) <= tol)


def is_invariant_functional(f, G: PermutationGroup, tol: float = INVARIANCE_TOL) -> bool:
    # permutation-invariant functionals are exactly the G-fixed coefficient vectors
    return is_invariant_point(f, G, tol)


def is_invariant_operator(T: Operator, G: PermutationGroup, tol: float = INVARIANCE_TOL) -> bool:
    if T.n != G.degree:
        raise DimensionMismatch(f"operator domain {T.n} vs group degree {G.degree}")
    M = T.matrix
    # T(g x) = M[:, g.images] x, so invariance is column-permutation invariance of M
    return bool(np.abs(M[:, G.index_array] - M[:, None, :]).max(initial=0.0) <= tol)


def operator_invariance_witness(T: Operator, G: PermutationGroup, tol: float = INVARIANCE_TOL):
    """(g, i) with row i of T not fixed by g, or None."""
    M = T.matrix
    for g in G:
        D = np.abs(M[:, list(g.images)] - M)
        if D.size and D.max() > tol:
            return g, int(np.argmax(D.max(axis=1)))
    return None


def is_invariant_set(points, G: PermutationGroup, tol: float = INVARIANCE_TOL) -> bool:
    """Setwise equality {g(p)} = {p} for every g, matching within tol."""
    P = np.atleast_2d(np.asarray(points, dtype=float))
    if P.size == 0:
        return True
    _check(P, G)
    for g in G.generators or G.elements:
        Q = apply(g, P)
        D = np.abs(Q[:, None, :] - P[None, :, :]).max(axis=2)
        if np.any(D.min(axis=1) > tol):
            return False
    return True


def is_invariant_body(points, G: PermutationGroup, absolute: bool = False, tol: float = 1e-9) -> bool:
    """conv(points) (or its absolutely convex hull) is mapped into itself by G."""
    P = np.atleast_2d(np.asarray(points, dtype=float))
    if is_invariant_set(np.vstack([P, -P]) if absolute else P, G):
        return True
    for g in G.generators or G.elements:
        for q in apply(g, P):
            if not in_hull(P, q, absolute, tol):
                return False
    return True


@dataclass
class AdjointReport:
    a: bool  # T invariant
    b: bool  # T* y* invariant for every canonical y*
    c: str
    equivalent: bool
    witness: tuple | None  # (g, i): T* e_i* is not fixed by g

    def to_json(self) -> dict:
        w = None if self.witness is None else {"g": self.witness[0].to_json(), "dual_basis_index": self.witness[1] + 1}
        return {"a": self.a, "b": self.b, "c": self.c, "equivalent": self.equivalent, "witness": w}


def adjoint_invariance_equivalence(T: Operator, G: PermutationGroup, tol: float = INVARIANCE_TOL) -> AdjointReport:
    """Check (a) T invariant against (b) T* y* invariant on the canonical dual basis.

    In finite dimension T** = T and G** = G, so (c) coincides with (a).
    """
    a = is_invariant_operator(T, G, tol)
    witness = None
    b = True
    for i in range(T.m):
        f = T.adjoint_apply(np.eye(T.m)[i])
        for g in G:
            if np.abs(apply(g, f) - f).max(initial=0.0) > tol:
                b = False
                witness = (g, i)
                break
        if not b:
            break
    return AdjointReport(a, b, "collapsed (T** = T in finite dimension)", a == b, witness)


def invariant_ball_vertices(spec, G: PermutationGroup) -> np.ndarray:
    """Vertices of B_X intersected with X_G, found by H-to-V enumeration in block coordinates.

    Independent of the averaging projection: facets u of B_X restrict to
    u . (sum_b c_b 1_b) <= 1 in the block coordinates c.
    """
    from .norms import unit_ball_facets

    n = G.degree
    blocks = G.orbit_partition.blocks
    E = np.zeros((len(blocks), n))
    for k, b in enumerate(blocks):
        E[k, list(b)] = 1.0
    U = unit_ball_facets(spec, n) @ E.T
    U = np.unique(np.round(np.vstack([U, -U]), 14), axis=0)
    U = U[np.abs(U).max(axis=1) > 0]
    C = halfspace_vertices(U, np.ones(len(U)))
    return C @ E


def norming_check(T: Operator, G: PermutationGroup) -> float:
    """||T|| - sup { ||T x|| : x in B_X cap X_G }; zero for invariant T."""
    from .attainment import operator_norm
    from .norms import is_norm_invariant

    if not is_invariant_operator(T, G):
        raise NotInvariant("norming_check needs a G-invariant operator")
    ok, _ = is_norm_invariant(T.domain, G)
    if not ok:
        raise NotInvariant("domain norm is not G-invariant")
    full = operator_norm(T).operator_norm
    if G.is_trivial():
        return 0.0
    if T.domain.polyhedral:
        V = invariant_ball_vertices(T.domain, G)
        sub = float(T.image_norms(V).max(initial=0.0))
    else:
        # non-polyhedral domain: the invariant ball is the ball of the block-coordinate norm
        from .attainment import _ascent_norm

        sub = _ascent_norm(T, projector=averaging_projector(G))[0]
    return full - sub


def convex_membership_after_symmetrization(points, G: PermutationGroup, z, absolute: bool = False) -> bool:
    """Membership of the symmetrization of z in conv(points), for invariant bodies containing z."""
    P = np.atleast_2d(np.asarray(points, dtype=float))
    if not is_invariant_body(P, G, absolute):
        raise PreconditionFailed("body is not G-invariant")
    if not in_hull(P, z, absolute):
        raise PreconditionFailed("z is not in the body")
    return in_hull(P, symmetrize_point(z, G), absolute)


__all__ = [
    "FixedSubspace",
    "Operator",
    "Permutation",
    "adjoint_invariance_equivalence",
    "averaging_projector",
    "convex_membership_after_symmetrization",
    "fixed_subspace",
    "invariant_ball_vertices",
    "is_invariant_body",
    "is_invariant_functional",
    "is_invariant_operator",
    "is_invariant_point",
    "is_invariant_set",
    "norming_check",
    "operator_invariance_witness",
    "orbit_points",
    "symmetrize_functional",
    "symmetrize_operator",
    "symmetrize_point",
]
