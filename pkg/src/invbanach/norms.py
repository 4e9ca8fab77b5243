"""Sequence-space norms on R^n: evaluation, duality, supporting functionals, unit-ball vertices.

Kinds
-----
``L1``, ``L2``, ``Lp`` (needs ``p``), ``Linf``
``LorentzD``        d(w,1):  sum_i [x]_i w_i   ([x] = non-increasing rearrangement of |x|)
``LorentzPredual``  d*(w,1): max_k (sum_{i<=k} [x]_i) / (sum_{i<=k} w_i)
``Xw``              X(w):    max_i (1-w_i)|x_i| + sum_i w_i |x_i|
``StrictC0``        ||x||_inf + theta ||x||_2, a strictly convex renorming of (R^n, sup)

Vertex lists are returned "up to sign": one representative per antipodal pair,
normalised so that the first nonzero coordinate is positive.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from .errors import (
    DimensionMismatch,
    InvalidSpec,
    NonPolyhedral,
    UnsupportedDual,
    VertexBudgetExceeded,
    ZeroVector,
)
from .perm_group import PermutationGroup, apply

KINDS = ("L1", "L2", "Lp", "Linf", "LorentzD", "LorentzPredual", "Xw", "StrictC0")
WEIGHTED = ("LorentzD", "LorentzPredual", "Xw")
POLYHEDRAL = ("L1", "Linf", "LorentzD", "LorentzPredual", "Xw")
# kinds whose value does not change under any coordinate permutation
SYMMETRIC = ("L1", "L2", "Lp", "Linf", "LorentzD", "LorentzPredual", "StrictC0")

DEFAULT_VERTEX_BUDGET = 2_000_000


@dataclass(frozen=True)
class NormSpec:
    kind: str
    w: Optional[tuple[float, ...]] = None
    p: Optional[float] = None
    theta: Optional[float] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidSpec(f"unknown norm kind {self.kind!r}")
        if self.kind in WEIGHTED:
            if self.w is None or len(self.w) == 0:
                raise InvalidSpec(f"{self.kind} needs a weight sequence w")
            w = np.asarray(self.w, dtype=float)
            if not np.all(np.isfinite(w)) or np.any(w <= 0):
                raise InvalidSpec("weights must be positive and finite")
            if np.any(np.diff(w) > 0):
                raise InvalidSpec("weights must be non-increasing")
            if w[0] >= 1:
                raise InvalidSpec("weights must satisfy w_1 < 1")
        elif self.w is not None:
            raise InvalidSpec(f"{self.kind} takes no weights")
        if self.kind == "Lp":
            if self.p is None or not self.p > 1 or not math.isfinite(self.p):
                raise InvalidSpec("Lp needs a finite exponent p > 1")
        if self.kind == "StrictC0":
            if self.theta is None or not self.theta > 0:
                raise InvalidSpec("StrictC0 needs theta > 0")

    @property
    def dim(self) -> Optional[int]:
        return None if self.w is None else len(self.w)

    @property
    def weights(self) -> np.ndarray:
        return np.asarray(self.w, dtype=float)

    @property
    def polyhedral(self) -> bool:
        return self.kind in POLYHEDRAL

    def check_dim(self, n: int) -> None:
        if self.w is not None and len(self.w) != n:
            raise DimensionMismatch(f"{self.kind} has dimension {len(self.w)}, got vector of length {n}")

    def restrict(self, idx) -> "NormSpec":
        """The norm induced on the coordinate subspace span{e_i : i in idx}."""
        idx = sorted(idx)
        if self.kind == "Xw":
            return NormSpec("Xw", tuple(self.w[i] for i in idx))
        if self.kind in ("LorentzD", "LorentzPredual"):
            return NormSpec(self.kind, tuple(self.w[: len(idx)]))
        return self

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.w is not None:
            out["w"] = list(self.w)
        if self.p is not None:
            out["p"] = self.p
        if self.theta is not None:
            out["theta"] = self.theta
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "NormSpec":
        w = obj.get("w")
        return cls(obj["kind"], tuple(float(v) for v in w) if w is not None else None,
                   obj.get("p"), obj.get("theta"))


def l1() -> NormSpec:
    return NormSpec("L1")


def l2() -> NormSpec:
    return NormSpec("L2")


def lp(p: float) -> NormSpec:
    return NormSpec("Lp", p=float(p))


def linf() -> NormSpec:
    return NormSpec("Linf")


def lorentz_d(w) -> NormSpec:
    return NormSpec("LorentzD", tuple(float(v) for v in w))


def lorentz_predual(w) -> NormSpec:
    return NormSpec("LorentzPredual", tuple(float(v) for v in w))


def xw(w) -> NormSpec:
    return NormSpec("Xw", tuple(float(v) for v in w))


def strict_c0(theta: float = 0.1) -> NormSpec:
    return NormSpec("StrictC0", theta=float(theta))


# -- evaluation -----------------------------------------------------------------

def _sorted_abs(a: np.ndarray) -> np.ndarray:
    return -np.sort(-np.abs(a), axis=-1)


def _l2(a: np.ndarray):
    """Euclidean norm along the last axis, scaled to avoid under/overflow."""
    m = np.abs(a).max(axis=-1, initial=0.0)
    safe = np.where(m > 0, m, 1.0)
    b = a / (safe[..., None] if a.ndim > 1 else safe)
    return m * np.sqrt((b * b).sum(axis=-1))


def norm(x, spec: NormSpec):
    """Norm of a vector, or of each row of a 2-D array."""
    a = np.asarray(x, dtype=float)
    spec.check_dim(a.shape[-1])
    k = spec.kind
    if k == "L1":
        return np.abs(a).sum(axis=-1)
    if k == "L2":
        return _l2(a)
    if k == "Lp":
        m = np.abs(a).max(axis=-1, initial=0.0)
        safe = np.where(m > 0, m, 1.0)
        b = np.abs(a) / (safe[..., None] if a.ndim > 1 else safe)
        return m * (b ** spec.p).sum(axis=-1) ** (1.0 / spec.p)
    if k == "Linf":
        return np.abs(a).max(axis=-1, initial=0.0)
    if k == "StrictC0":
        return np.abs(a).max(axis=-1, initial=0.0) + spec.theta * _l2(a)
    w = spec.weights
    if k == "LorentzD":
        return (_sorted_abs(a) * w).sum(axis=-1)
    if k == "LorentzPredual":
        return (np.cumsum(_sorted_abs(a), axis=-1) / np.cumsum(w)).max(axis=-1)
    # Xw
    b = np.abs(a)
    return ((1.0 - w) * b).max(axis=-1) + (w * b).sum(axis=-1)


def lorentz_d_bruteforce(x, w) -> float:
    """sup over injections sigma of sum |x(sigma(i))| w_i, by enumerating all permutations."""
    x = np.abs(np.asarray(x, dtype=float))
    w = np.asarray(w, dtype=float)
    return max(float(np.dot(x[list(s)], w)) for s in itertools.permutations(range(len(x))))


# -- duality ----------------------------------------------------------------------

def dual_spec(spec: NormSpec) -> NormSpec:
    k = spec.kind
    if k == "L1":
        return linf()
    if k == "Linf":
        return l1()
    if k == "L2":
        return spec
    if k == "Lp":
        return lp(spec.p / (spec.p - 1.0))
    if k == "LorentzD":
        return NormSpec("LorentzPredual", spec.w)
    if k == "LorentzPredual":
        return NormSpec("LorentzD", spec.w)
    raise UnsupportedDual(f"no closed-form dual kind for {k}")


def dual_norm(f, spec: NormSpec):
    """sup { f(x) : ||x|| <= 1 }.

    Closed forms where a dual kind exists; Xw via the primal vertex list (exact,
    but exponential in n); StrictC0 via a one-dimensional concave search.
    """
    f = np.asarray(f, dtype=float)
    spec.check_dim(f.shape[-1])
    if spec.kind == "Xw":
        V = unit_ball_vertices(spec, f.shape[-1])
        return np.abs(f @ V.T).max(axis=-1)
    if spec.kind == "StrictC0":
        if f.ndim == 2:
            return np.array([_strict_c0_dual(row, spec.theta)[0] for row in f])
        return _strict_c0_dual(f, spec.theta)[0]
    return norm(f, dual_spec(spec))


def _box_ball_argmax(a: np.ndarray, t: float, r: float) -> np.ndarray:
    """argmax of a.x over 0 <= x_i <= t, ||x||_2 <= r, for a >= 0 sorted descending."""
    m = len(a)
    if t <= 0 or r <= 0:
        return np.zeros(m)
    if m * t * t <= r * r:
        return np.full(m, t)
    sq = np.concatenate([np.cumsum((a * a)[::-1])[::-1], [0.0]])  # sq[k] = sum_{i>=k} a_i^2
    for k in range(m + 1):
        rest = r * r - k * t * t
        if rest < 0:
            break
        x = np.zeros(m)
        x[:k] = t
        if sq[k] == 0:
            return x
        lam = math.sqrt(rest / sq[k])
        if (k == m or lam * a[k] <= t * (1 + 1e-15)) and (k == 0 or lam * a[k - 1] >= t * (1 - 1e-15)):
            x[k:] = lam * a[k:]
            return x
    # only reached through rounding at a breakpoint: clip the smooth solution
    lam = r / math.sqrt(sq[0])
    return np.minimum(t, lam * a)


def _strict_c0_dual(f: np.ndarray, theta: float) -> tuple[float, np.ndarray]:
    """(dual norm of f, a unit-ball point attaining it) for ||.||_inf + theta ||.||_2."""
    n = f.shape[-1]
    order = np.argsort(-np.abs(f), kind="stable")
    a = np.abs(f)[order]
    if not np.any(a > 0):
        return 0.0, np.zeros(n)
    scale = a[0]  # rescale so tiny inputs do not under/overflow the breakpoint search
    a = a / scale
    a[a < 1e-150] = 0.0  # below float resolution relative to the largest entry

    def phi(t):
        return float(a @ _box_ball_argmax(a, t, (1.0 - t) / theta))

    lo, hi = 0.0, 1.0
    invphi = (math.sqrt(5) - 1) / 2
    c, d = hi - invphi * (hi - lo), lo + invphi * (hi - lo)
    fc, fd = phi(c), phi(d)
    for _ in range(200):
        if hi - lo < 1e-15:
            break
        if fc < fd:
            lo, c, fc = c, d, fd
            d = lo + invphi * (hi - lo)
            fd = phi(d)
        else:
            hi, d, fd = d, c, fc
            c = hi - invphi * (hi - lo)
            fc = phi(c)
    t = c if fc >= fd else d
    xs = _box_ball_argmax(a, t, (1.0 - t) / theta)
    x = np.zeros(n)
    x[order] = xs
    x *= np.where(f < 0, -1.0, 1.0)
    return float(scale * (a @ xs)), x


def norming_point(f, spec: NormSpec) -> np.ndarray:
    """A point x of the closed unit ball with f(x) = dual_norm(f)."""
    f = np.asarray(f, dtype=float)
    spec.check_dim(f.shape[-1])
    n = f.shape[-1]
    if not np.any(f != 0):
        return np.zeros(n)
    k = spec.kind
    if k == "L2":
        f = f / np.abs(f).max()
        return f / _l2(f)
    if k == "Lp":
        q = spec.p / (spec.p - 1.0)
        f = f / np.abs(f).max()
        x = np.sign(f) * np.abs(f) ** (q - 1)
        return x / norm(x, spec)
    if k == "StrictC0":
        return _strict_c0_dual(f, spec.theta)[1]
    V = unit_ball_vertices(spec, n)
    vals = V @ f
    i = int(np.argmax(np.abs(vals)))
    return V[i] * (1.0 if vals[i] >= 0 else -1.0)


def supporting_functional(x, spec: NormSpec) -> np.ndarray:
    """A norming functional f with f(x) = ||x|| and dual norm 1.

    Among several subgradients the lowest active index wins; zero coordinates
    take the sign +1 wherever a sign is needed.
    """
    x = np.asarray(x, dtype=float)
    spec.check_dim(x.shape[-1])
    n = x.shape[-1]
    if not np.any(x != 0):
        raise ZeroVector("supporting functional of the zero vector")
    s = np.where(x < 0, -1.0, 1.0)
    b = np.abs(x)
    k = spec.kind
    if k == "L1":
        return np.sign(x)
    if k == "L2":
        y = x / b.max()
        return y / _l2(y)
    if k == "Lp":
        y = b / b.max()
        return s * y ** (spec.p - 1) / norm(y, spec) ** (spec.p - 1)
    if k in ("Linf", "StrictC0"):
        i = int(np.argmax(b))
        f = np.zeros(n)
        f[i] = s[i]
        if k == "StrictC0":
            y = x / b.max()
            f = f + spec.theta * y / _l2(y)
        return f
    w = spec.weights
    order = np.argsort(-b, kind="stable")
    if k == "LorentzD":
        f = np.empty(n)
        f[order] = w
        return s * f
    if k == "LorentzPredual":
        ratios = np.cumsum(b[order]) / np.cumsum(w)
        kstar = int(np.argmax(ratios)) + 1
        f = np.zeros(n)
        f[order[:kstar]] = 1.0 / np.sum(w[:kstar])
        return s * f
    # Xw
    m = int(np.argmax((1.0 - w) * b))
    f = w.copy()
    f[m] += 1.0 - w[m]
    return s * f


# -- vertices ---------------------------------------------------------------------

def _canonical_half(V: np.ndarray) -> np.ndarray:
    """Keep rows whose first nonzero entry is positive."""
    nz = V != 0
    first = np.argmax(nz, axis=1)
    keep = V[np.arange(len(V)), first] > 0
    return V[keep]


@lru_cache(maxsize=None)
def _ternary(n: int) -> np.ndarray:
    """All vectors in {-1,0,1}^n except 0, first nonzero entry +1."""
    T = np.array(list(itertools.product((0, 1, -1), repeat=n)), dtype=float)[1:]
    return _canonical_half(T)


@lru_cache(maxsize=None)
def _sign_patterns(n: int) -> np.ndarray:
    T = np.array(list(itertools.product((1, -1), repeat=n)), dtype=float)
    return _canonical_half(T)


def vertex_count(spec: NormSpec, n: int) -> int:
    k = spec.kind
    if k == "L1":
        return n
    if k == "Linf":
        return 2 ** (n - 1)
    if k in ("Xw", "LorentzD"):
        return (3 ** n - 1) // 2
    if k == "LorentzPredual":
        return math.factorial(n) * 2 ** (n - 1)
    raise NonPolyhedral(f"{k} ball is not a polytope")


@lru_cache(maxsize=64)
def _vertices_cached(spec: NormSpec, n: int) -> np.ndarray:
    k = spec.kind
    if k == "L1":
        return np.eye(n)
    if k == "Linf":
        return _sign_patterns(n).copy()
    T = _ternary(n)
    w = spec.weights
    if k == "Xw":
        # Basic solutions of (1-w_i)|x_i| + w.|x| <= 1: on a support S every active
        # coordinate sits at the common level t/(1-w_i).
        A = np.abs(T)
        scale = 1.0 / (1.0 + A @ (w / (1.0 - w)))
        return T / (1.0 - w) * scale[:, None]
    if k == "LorentzD":
        sizes = np.abs(T).sum(axis=1).astype(int)
        W = np.concatenate([[np.nan], np.cumsum(w)])
        return T / W[sizes][:, None]
    # LorentzPredual: ball = convex hull of signed rearrangements of w
    perms = set(itertools.permutations(w))
    P = np.array(sorted(perms))
    S = _sign_patterns(n)
    V = (P[:, None, :] * S[None, :, :]).reshape(-1, n)
    return np.unique(V, axis=0)


def unit_ball_vertices(spec: NormSpec, n: int, budget: int = DEFAULT_VERTEX_BUDGET) -> np.ndarray:
    """Vertices (up to sign) of the closed unit ball of (R^n, spec)."""
    spec.check_dim(n)
    if spec.kind not in POLYHEDRAL:
        raise NonPolyhedral(f"{spec.kind} ball is not a polytope")
    if vertex_count(spec, n) > budget:
        raise VertexBudgetExceeded(f"{spec.kind} in dimension {n} has {vertex_count(spec, n)} vertices")
    return _vertices_cached(spec, n)


@lru_cache(maxsize=64)
def _facets_cached(spec: NormSpec, n: int) -> np.ndarray:
    k = spec.kind
    if k == "Xw":
        w = spec.weights
        S = _sign_patterns(n)
        rows = []
        for m in range(n):
            base = w.copy()
            base[m] += 1.0 - w[m]
            rows.append(S * base)
        return np.unique(np.concatenate(rows), axis=0)
    return unit_ball_vertices(dual_spec(spec), n)


def unit_ball_facets(spec: NormSpec, n: int) -> np.ndarray:
    """Outer normals U (up to sign) with B = {x : |u.x| <= 1 for all u in U}.

    These are the vertices of the dual ball.  For Xw they are the points
    theta_m (1-w_m) e_m + sum_i theta_i w_i e_i.
    """
    spec.check_dim(n)
    if spec.kind not in POLYHEDRAL:
        raise NonPolyhedral(f"{spec.kind} ball is not a polytope")
    return _facets_cached(spec, n)


# -- compatibility with a permutation group --------------------------------------

def _candidate_points(n: int):
    for a in range(n):
        for b in range(n):
            if a == b:
                continue
            for t in (1.0, 0.5, 0.25, 0.75):
                x = np.zeros(n)
                x[a], x[b] = 1.0, t
                yield x
    for a, b, c in itertools.permutations(range(n), 3):
        x = np.zeros(n)
        x[a], x[b], x[c] = 1.0, 1.0, 1.0
        yield x


def is_norm_invariant(spec: NormSpec, G: PermutationGroup, tol: float = 1e-12):
    """Return (invariant, witness); witness is (x, g, ||x||, ||g x||) or None.

    Symmetric kinds are always invariant.  Xw is invariant exactly when w is
    constant on every orbit block.
    """
    spec.check_dim(G.degree)
    if spec.kind in SYMMETRIC:
        return True, None
    w = spec.weights
    constant = all(np.ptp(w[list(b)]) == 0 for b in G.orbit_partition.blocks)
    if constant:
        return True, None
    n = G.degree
    elems = [g for g in G if not g.is_identity()]
    for x in _candidate_points(n):
        nx = float(norm(x, spec))
        for g in elems:
            gx = apply(g, x)
            ngx = float(norm(gx, spec))
            if abs(ngx - nx) > tol:
                return False, (x, g, nx, ngx)
    rng = np.random.default_rng(0)
    for _ in range(10_000):
        x = rng.standard_normal(n)
        nx = float(norm(x, spec))
        for g in elems:
            ngx = float(norm(apply(g, x), spec))
            if abs(ngx - nx) > tol:
                return False, (x, g, nx, ngx)
    return False, None
