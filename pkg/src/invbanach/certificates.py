"""Certificates for properties alpha-G, quasi-alpha-G and beta-H, their checks and duality."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .attainment import orbit_constancy_defect
from .errors import CertInvalid, InvBanachError
from .norms import NormSpec, dual_norm, dual_spec, l1, norm, unit_ball_facets, unit_ball_vertices
from .perm_group import PermutationGroup, generate_group, group_from_json
from .polytope import hull_residual

EXACT_TOL = 1e-12
NUM_TOL = 1e-9


def _pairs(pairs) -> tuple[tuple[np.ndarray, np.ndarray], ...]:
    out = []
    for x, f in pairs:
        x = np.array(x, dtype=float)
        f = np.array(f, dtype=float)
        x.setflags(write=False)
        f.setflags(write=False)
        out.append((x, f))
    return tuple(out)


@dataclass(frozen=True, eq=False)
class AlphaCertificate:
    """Pairs (x_lam, x*_lam) with a constant rho, or one rho per pair for the quasi version."""

    pairs: tuple
    rho: float | tuple[float, ...]
    space: NormSpec
    group: PermutationGroup

    def __post_init__(self):
        object.__setattr__(self, "pairs", _pairs(self.pairs))
        if not isinstance(self.rho, (int, float)):
            object.__setattr__(self, "rho", tuple(float(r) for r in self.rho))

    @property
    def rhos(self) -> np.ndarray:
        if isinstance(self.rho, tuple):
            return np.asarray(self.rho, dtype=float)
        return np.full(len(self.pairs), float(self.rho))

    @property
    def rho_max(self) -> float:
        return float(self.rhos.max(initial=0.0))

    @property
    def points(self) -> np.ndarray:
        return np.array([x for x, _ in self.pairs])

    @property
    def functionals(self) -> np.ndarray:
        return np.array([f for _, f in self.pairs])

    def to_json(self) -> dict:
        return {
            "pairs": [[x.tolist(), f.tolist()] for x, f in self.pairs],
            "rho": list(self.rho) if isinstance(self.rho, tuple) else self.rho,
            "spec": self.space.to_json(),
            "group": self.group.to_json(),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "AlphaCertificate":
        rho = obj["rho"]
        return cls(tuple((p[0], p[1]) for p in obj["pairs"]), tuple(rho) if isinstance(rho, list) else float(rho),
                   NormSpec.from_json(obj["spec"]), group_from_json(obj["group"]))


@dataclass(frozen=True, eq=False)
class BetaCertificate:
    """Pairs (y_lam, y*_lam) with constant rho for a group H acting on the space."""

    pairs: tuple
    rho: float
    space: NormSpec
    group: PermutationGroup

    def __post_init__(self):
        object.__setattr__(self, "pairs", _pairs(self.pairs))

    @property
    def points(self) -> np.ndarray:
        return np.array([y for y, _ in self.pairs])

    @property
    def functionals(self) -> np.ndarray:
        return np.array([f for _, f in self.pairs])

    def to_json(self) -> dict:
        return {"pairs": [[y.tolist(), f.tolist()] for y, f in self.pairs], "rho": self.rho,
                "spec": self.space.to_json(), "group": self.group.to_json()}

    @classmethod
    def from_json(cls, obj: dict) -> "BetaCertificate":
        return cls(tuple((p[0], p[1]) for p in obj["pairs"]), float(obj["rho"]),
                   NormSpec.from_json(obj["spec"]), group_from_json(obj["group"]))


@dataclass
class CertReport:
    conditions: dict[str, bool]
    witnesses: dict[str, object] = field(default_factory=dict)
    details: dict[str, object] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.conditions.values())

    def __bool__(self) -> bool:
        return self.passed

    def to_json(self) -> dict:
        def conv(v):
            if isinstance(v, np.ndarray):
                return v.tolist()
            if isinstance(v, (list, tuple)):
                return [conv(u) for u in v]
            if isinstance(v, dict):
                return {k: conv(u) for k, u in v.items()}
            if isinstance(v, (np.floating, np.integer)):
                return v.item()
            return v

        return {"passed": self.passed, "conditions": dict(self.conditions),
                "witnesses": conv(self.witnesses), "details": conv(self.details)}


def _cross_check(F: np.ndarray, X: np.ndarray, bound: np.ndarray, tol: float):
    """|F[l] . X[m]| <= bound[l] for l != m; returns (ok, first offending (l, m) or None, max off-diagonal)."""
    A = np.abs(F @ X.T)
    np.fill_diagonal(A, 0.0)
    bad = np.argwhere(A > bound[:, None] + tol)
    off = float(A.max(initial=0.0))
    return len(bad) == 0, (None if len(bad) == 0 else (int(bad[0][0]), int(bad[0][1]))), off


def _unit_checks(X, F, spec: NormSpec, report: CertReport, key: str, full: bool) -> None:
    vals = np.einsum("ij,ij->i", F, X)
    ok = np.abs(vals - 1.0) <= NUM_TOL
    if full:
        ok &= np.abs(np.atleast_1d(norm(X, spec)) - 1.0) <= NUM_TOL
        ok &= np.abs(np.atleast_1d(dual_norm(F, spec)) - 1.0) <= NUM_TOL
    report.conditions[key] = bool(ok.all())
    if not ok.all():
        report.witnesses[key] = int(np.flatnonzero(~ok)[0])


def _common_alpha(cert: AlphaCertificate, report: CertReport, rho_bound: np.ndarray, full_norms: bool) -> None:
    X, F = cert.points, cert.functionals
    G = cert.group
    defects = [orbit_constancy_defect(f, G) for f in F]
    report.conditions["i"] = all(d <= EXACT_TOL for d in defects)
    if not report.conditions["i"]:
        report.witnesses["i"] = int(np.argmax(defects))
    _unit_checks(X, F, cert.space, report, "ii", full_norms)
    ok, w, off = _cross_check(F, X, rho_bound, NUM_TOL)
    rho_ok = bool(np.all((rho_bound >= 0) & (rho_bound < 1)))
    report.conditions["iii"] = ok and rho_ok
    report.details["max_off_diagonal"] = off
    if w is not None:
        report.witnesses["iii"] = w
    elif not rho_ok:
        report.witnesses["iii"] = "rho outside [0, 1)"


def _orbit_set(cert) -> tuple[np.ndarray, np.ndarray]:
    """All g(x_lam), with the index lam of each row."""
    idx = cert.group.index_array
    rows, lab = [], []
    for k, x in enumerate(cert.points):
        O = np.unique(x[idx], axis=0)
        rows.append(O)
        lab.extend([k] * len(O))
    return np.vstack(rows), np.asarray(lab)


def verify_alpha(cert: AlphaCertificate) -> CertReport:
    report = CertReport({})
    if len(cert.pairs) == 0:
        return CertReport({"i": False, "ii": False, "iii": False, "iv": False}, {"iv": "no pairs"})
    _common_alpha(cert, report, cert.rhos, full_norms=True)
    O, _ = _orbit_set(cert)
    n = O.shape[1]
    in_ball = np.atleast_1d(norm(O, cert.space)) <= 1 + NUM_TOL
    ok = bool(in_ball.all())
    if not ok:
        report.witnesses["iv"] = {"orbit_point_outside_ball": O[np.flatnonzero(~in_ball)[0]]}
    else:
        try:
            V = unit_ball_vertices(cert.space, n)
        except InvBanachError as e:
            V = None
            ok = False
            report.witnesses["iv"] = f"unit ball not enumerable: {e}"
        if V is not None:
            for v in V:
                res, _ = hull_residual(O, v, absolute=True)
                if res > NUM_TOL:
                    ok = False
                    report.witnesses["iv"] = {"vertex_not_in_hull": v, "residual": res}
                    break
    report.conditions["iv"] = ok
    return report


def verify_quasi_alpha(cert: AlphaCertificate) -> CertReport:
    """Per-pair rho; (iv) matches every ball vertex, up to sign, to orbit points of the pairs."""
    report = CertReport({})
    if len(cert.pairs) == 0:
        return CertReport({"i": False, "ii": False, "iii": False, "iv": False}, {"iv": "no pairs"})
    rhos = cert.rhos
    _common_alpha(cert, report, rhos, full_norms=True)
    O, lab = _orbit_set(cert)
    n = O.shape[1]
    try:
        V = unit_ball_vertices(cert.space, n)
    except InvBanachError as e:
        report.conditions["iv"] = False
        report.witnesses["iv"] = f"unit ball not enumerable: {e}"
        return report
    found = []
    ok = True
    for v in V:
        hit = None
        for t in (1.0, -1.0):
            match = np.abs(O - t * v).max(axis=1) <= EXACT_TOL
            if match.any():
                A_e = sorted(set(lab[match].tolist()))
                r_e = float(rhos[A_e].max())
                if r_e < 1:
                    hit = {"vertex": v, "t": t, "A_e": A_e, "r_e": r_e}
                    break
        if hit is None:
            ok = False
            report.witnesses.setdefault("iv", {"vertex": v})
        else:
            found.append(hit)
    report.conditions["iv"] = ok
    report.details["vertices"] = found
    return report


def verify_beta(cert: BetaCertificate, n_random: int = 1000, seed: int = 0) -> CertReport:
    report = CertReport({})
    if len(cert.pairs) == 0:
        return CertReport({"i": False, "ii": False, "iii": False, "iv": False}, {"iv": "no pairs"})
    Y, F = cert.points, cert.functionals
    H = cert.group
    idx = H.index_array
    fixed = [float(np.abs(y[idx] - y).max()) for y in Y]
    report.conditions["i"] = all(d <= EXACT_TOL for d in fixed)
    if not report.conditions["i"]:
        report.witnesses["i"] = int(np.argmax(fixed))
    _unit_checks(Y, F, cert.space, report, "ii", full=True)
    rho = np.full(len(Y), float(cert.rho))
    ok, w, off = _cross_check(F, Y, rho, NUM_TOL)
    report.conditions["iii"] = ok and 0 <= cert.rho < 1
    report.details["max_off_diagonal"] = off
    if w is not None:
        report.witnesses["iii"] = w
    n = Y.shape[1]
    # deterministic points first: primal ball vertices, then dual-ball vertices
    # (e.g. e_i for the cube, where an uncovered coordinate shows up)
    tests = []
    for source in (unit_ball_vertices, unit_ball_facets):
        try:
            tests.append(source(cert.space, n))
        except InvBanachError:
            pass
    tests.append(np.random.default_rng(seed).standard_normal((n_random, n)))
    Z = np.vstack(tests)
    # y*(g z) = (g^{-1} y*)(z), so the sup over lam and g runs over the orbits of the functionals
    FO = np.unique(F[:, idx].reshape(-1, n), axis=0)
    sup = np.abs(Z @ FO.T).max(axis=1)
    gap = np.abs(np.atleast_1d(norm(Z, cert.space)) - sup)
    report.conditions["iv"] = bool(gap.max() <= NUM_TOL)
    report.details["max_norm_gap"] = float(gap.max())
    if not report.conditions["iv"]:
        j = int(np.flatnonzero(gap > NUM_TOL)[0])  # vertices are tested first
        report.witnesses["iv"] = {"point": Z[j], "gap": float(gap[j])}
    return report


def build_alpha_ell1(G: PermutationGroup, n: int | None = None) -> AlphaCertificate:
    """One pair (e_min(O), 1_O) per orbit O, orbits ordered by their minima; rho = 0."""
    n = G.degree if n is None else n
    if n != G.degree:
        raise CertInvalid(f"dimension {n} differs from group degree {G.degree}")
    pairs = []
    for b in G.orbit_partition.blocks:
        x = np.zeros(n)
        x[b[0]] = 1.0
        f = np.zeros(n)
        f[list(b)] = 1.0
        pairs.append((x, f))
    return AlphaCertificate(tuple(pairs), 0.0, l1(), G)


def adjoint_group(G: PermutationGroup) -> PermutationGroup:
    """G* = {g* : g in G}; g* acts by the inverse permutation."""
    return generate_group(G.degree, [g.inverse() for g in G.generators])


def dualize_alpha(cert: AlphaCertificate) -> BetaCertificate:
    """Swap the roles of points and functionals: a beta-G* certificate on the dual space."""
    if not verify_alpha(cert).passed:
        raise CertInvalid("input certificate does not verify")
    if isinstance(cert.rho, tuple):
        raise CertInvalid("dualize_alpha needs a constant rho")
    return BetaCertificate(tuple((f, x) for x, f in cert.pairs), float(cert.rho), dual_spec(cert.space),
                           adjoint_group(cert.group))


def alpha_with_rho(cert: AlphaCertificate, rho: float | Sequence[float]) -> AlphaCertificate:
    return AlphaCertificate(cert.pairs, rho if isinstance(rho, (int, float)) else tuple(rho), cert.space, cert.group)
