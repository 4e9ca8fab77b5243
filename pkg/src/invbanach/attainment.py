"""Operator norms with attainment witnesses, slices S(T, eta) and the A_eps test."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NotInvariant, SetNotInvariant, UnsupportedDomain, WrongDomainKind
from .invariance import is_invariant_operator, is_invariant_set
from .norms import norm, norming_point, supporting_functional, unit_ball_vertices
from .operators import Operator
from .perm_group import PermutationGroup

ATTAINMENT_TOL = 1e-7
FIXED_TOL = 1e-12
N_STARTS = 64
ETA_GRID = 30


@dataclass
class AttainmentReport:
    operator_norm: float
    witness: np.ndarray | None
    defect: float
    attained: bool
    method: str  # "vertex", "svd" or "numeric"

    def to_json(self) -> dict:
        return {
            "operator_norm": self.operator_norm,
            "witness": None if self.witness is None else self.witness.tolist(),
            "defect": self.defect,
            "attained": self.attained,
            "method": self.method,
        }


def _first_max(vals: np.ndarray, tol: float = 1e-12) -> int:
    return int(np.flatnonzero(vals >= vals.max() - tol)[0])


def _starts(n: int, projector: np.ndarray | None, extra=None, count: int = N_STARTS) -> np.ndarray:
    rng = np.random.default_rng(0)
    X = [np.eye(n), -np.eye(n), np.ones((1, n))]
    if extra is not None:
        X.append(np.atleast_2d(extra))
    X = np.vstack(X)
    X = np.vstack([X, rng.standard_normal((max(count - len(X), 0), n))])[: max(count, len(X))]
    if projector is not None:
        X = X @ projector.T
    return X


def _ascent_norm(T: Operator, projector: np.ndarray | None = None, extra_starts=None,
                 max_iter: int = 500, tol: float = 1e-14) -> tuple[float, np.ndarray]:
    """Monotone ascent x <- argmax_{B_X} (T^* f_{Tx}) for sup ||T x|| over B_X.

    Each step cannot decrease ||T x||: with f the supporting functional of T x,
    ||T x'|| >= f(T x') = sup_B f(T .) >= f(T x) = ||T x||.  With ``projector``
    the iterates are kept in its range (used for B_X cap X_G with invariant data).
    """
    n = T.n
    best, best_x = 0.0, np.zeros(n)
    for x in _starts(n, projector, extra_starts):
        nx = float(norm(x, T.domain))
        if nx <= 1e-14:
            continue
        x = x / nx
        val = float(norm(T(x), T.codomain))
        for _ in range(max_iter):
            y = T(x)
            if not np.any(np.abs(y) > 0):
                break
            g = T.adjoint_apply(supporting_functional(y, T.codomain))
            xn = norming_point(g, T.domain)
            if projector is not None:
                xn = projector @ xn
            vn = float(norm(T(xn), T.codomain))
            if vn <= val + tol * max(1.0, val):
                if vn > val:
                    x, val = xn, vn
                break
            x, val = xn, vn
        if val > best + 1e-15:
            best, best_x = val, x
    return best, best_x


def operator_norm(T: Operator) -> AttainmentReport:
    """||T|| = sup ||T x|| over the domain unit ball, with a maximiser when one is found."""
    dom, cod = T.domain, T.codomain
    n = T.n
    if dom.polyhedral:
        V = unit_ball_vertices(dom, n)
        vals = T.image_norms(V)
        i = _first_max(vals)
        return AttainmentReport(float(vals[i]), V[i].copy(), 0.0, True, "vertex")
    if dom.kind == "L2" and cod.kind == "L2":
        _, s, Vt = np.linalg.svd(T.matrix)
        if s.size == 0:
            return AttainmentReport(0.0, np.eye(n)[0], 0.0, True, "svd")
        v = Vt[0]
        j = int(np.argmax(np.abs(v)))
        v = v if v[j] >= 0 else -v
        achieved = float(norm(T(v), cod))
        d = float(s[0]) - achieved
        return AttainmentReport(float(s[0]), v, d, d <= ATTAINMENT_TOL, "svd")
    if dom.kind in ("L2", "StrictC0"):
        val, x = _ascent_norm(T)
        return AttainmentReport(val, x, 0.0, True, "numeric")
    raise UnsupportedDomain(f"operator norm on a {dom.kind} domain is not implemented")


def sup_on_set(T: Operator, B) -> float:
    """||T||_B = max ||T x|| over a finite point list B."""
    B = np.atleast_2d(np.asarray(B, dtype=float))
    if B.size == 0:
        return 0.0
    return float(T.image_norms(B).max())


@dataclass
class Slice:
    eta: float
    members: np.ndarray  # k x n
    sup_on_B: float
    values: np.ndarray = field(default_factory=lambda: np.zeros(0))

    def __len__(self) -> int:
        return len(self.members)

    def to_json(self) -> dict:
        return {"eta": self.eta, "members": self.members.tolist(), "sup_on_B": self.sup_on_B,
                "values": self.values.tolist()}


def fixed_points(B, G: PermutationGroup, tol: float = FIXED_TOL) -> np.ndarray:
    """Rows of B fixed by every element of G."""
    B = np.atleast_2d(np.asarray(B, dtype=float))
    if B.size == 0:
        return B.reshape(0, G.degree)
    D = np.abs(B[:, G.index_array] - B[:, None, :]).max(axis=(1, 2))
    return B[D <= tol]


def _check_set(B, G):
    if not is_invariant_set(B, G):
        raise SetNotInvariant("B is not mapped onto itself by G")


def _slice(T, B, BG, sup_B, eta):
    vals = T.image_norms(BG) if len(BG) else np.zeros(0)
    keep = vals > sup_B - eta
    return Slice(float(eta), BG[keep], sup_B, vals[keep])


def slice(T: Operator, B, G: PermutationGroup, eta: float) -> Slice:
    """S(T, eta) = {x in B cap X_G : ||T x|| > ||T||_B - eta} over the finite set B."""
    if not eta > 0:
        raise ValueError("eta must be positive")
    B = np.atleast_2d(np.asarray(B, dtype=float))
    _check_set(B, G)
    return _slice(T, B, fixed_points(B, G), sup_on_set(T, B), eta)


def eta_grid(sup_B: float, steps: int = ETA_GRID) -> np.ndarray:
    scale = sup_B if sup_B > 0 else 1.0
    return scale * 2.0 ** -np.arange(1, steps + 1)


def _lex_max(S: Slice) -> np.ndarray:
    """Member with the largest ||T x||; ties go to the lexicographically largest."""
    top = np.flatnonzero(S.values >= S.values.max() - FIXED_TOL)
    cands = S.members[top]
    order = np.lexsort(cands.T[::-1])
    return cands[order[-1]].copy()


@dataclass
class AEpsReport:
    member: bool
    eta: float | None
    p: np.ndarray | None
    slice: Slice | None
    caveat: str = "grid search over eta and slice-member candidates for p: sufficient, not exhaustive"

    def __iter__(self):
        return iter((self.member, self.eta, self.p))

    def to_json(self) -> dict:
        return {"member": self.member, "eta": self.eta,
                "p": None if self.p is None else self.p.tolist(),
                "slice": None if self.slice is None else self.slice.to_json(), "caveat": self.caveat}


def in_A_eps(T: Operator, B, G: PermutationGroup, eps: float) -> AEpsReport:
    """Look for eta > 0 and p with S(T, eta) inside B(p, eps) u B(-p, eps), in the domain norm."""
    B = np.atleast_2d(np.asarray(B, dtype=float))
    _check_set(B, G)
    BG = fixed_points(B, G)
    sup_B = sup_on_set(T, B)
    for eta in eta_grid(sup_B):
        S = _slice(T, B, BG, sup_B, eta)
        if len(S) == 0:
            continue
        p = _lex_max(S)
        d = np.minimum(norm(S.members - p, T.domain), norm(S.members + p, T.domain))
        if np.all(np.atleast_1d(d) < eps):
            return AEpsReport(True, float(eta), p, S)
    return AEpsReport(False, None, None, None)


@dataclass
class ExposingReport:
    exposing: bool
    x: np.ndarray | None
    eta: float
    slice_size: int

    def to_json(self) -> dict:
        return {"exposing": self.exposing, "x": None if self.x is None else self.x.tolist(),
                "eta": self.eta, "slice_size": self.slice_size}


def absolutely_exposing_check(T: Operator, B, G: PermutationGroup) -> ExposingReport:
    """Finite surrogate: the smallest slice on the eta grid lies inside {x, -x}."""
    B = np.atleast_2d(np.asarray(B, dtype=float))
    _check_set(B, G)
    BG = fixed_points(B, G)
    sup_B = sup_on_set(T, B)
    eta = float(eta_grid(sup_B)[-1])
    S = _slice(T, B, BG, sup_B, eta)
    if len(S) == 0:
        return ExposingReport(False, None, eta, 0)
    x = _lex_max(S)
    d = np.minimum(np.abs(S.members - x).max(axis=1), np.abs(S.members + x).max(axis=1))
    return ExposingReport(bool(np.all(d <= FIXED_TOL)), x, eta, len(S))


def orbit_constancy_defect(f, G: PermutationGroup) -> float:
    """Largest spread max - min of the coefficients of f on an orbit block."""
    f = np.asarray(f, dtype=float)
    return float(max(np.ptp(f[list(b)]) for b in G.orbit_partition.blocks))


@dataclass
class OrbitColumnRow:
    orbit: tuple[int, ...]
    size: int
    column_norm: float  # max_j in orbit ||T e_j||
    bound: float  # ||T|| ||1_O|| / |O|
    ratio: float  # column_norm / ||T||, 0 for T = 0
    holds: bool


@dataclass
class OrbitColumnReport:
    operator_norm: float
    rows: list[OrbitColumnRow]

    @property
    def holds(self) -> bool:
        return all(r.holds for r in self.rows)

    def to_json(self) -> dict:
        return {"operator_norm": self.operator_norm, "holds": self.holds,
                "rows": [{"orbit": [i + 1 for i in r.orbit], "size": r.size, "column_norm": r.column_norm,
                          "bound": r.bound, "ratio": r.ratio, "holds": r.holds} for r in self.rows]}


def orbit_column_bound(T: Operator, G: PermutationGroup, slack: float = 1e-9) -> OrbitColumnReport:
    """Check ||T e_j|| <= ||T|| ||1_O|| / |O| on each orbit O (||1_O|| = 1 for the sup norm).

    For invariant T, T(1_O) = |O| T(e_j) for every j in O.
    """
    if T.domain.kind not in ("Linf", "StrictC0"):
        raise WrongDomainKind(f"orbit column bound needs a sup-norm type domain, got {T.domain.kind}")
    if not is_invariant_operator(T, G):
        raise NotInvariant("orbit_column_bound needs a G-invariant operator")
    blocks = G.orbit_partition.blocks
    ind = np.zeros((len(blocks), T.n))
    for k, b in enumerate(blocks):
        ind[k, list(b)] = 1.0
    if T.domain.kind == "Linf":
        opn = operator_norm(T).operator_norm
    else:
        opn = _ascent_norm(T, extra_starts=ind)[0]
    cols = np.atleast_1d(norm(T.matrix.T, T.codomain))
    rows = []
    for k, b in enumerate(blocks):
        size = len(b)
        cn = float(cols[list(b)].max())
        bound = opn * float(norm(ind[k], T.domain)) / size
        rows.append(OrbitColumnRow(b, size, cn, bound, cn / opn if opn > 0 else 0.0, cn <= bound + slack))
    return OrbitColumnReport(opn, rows)
