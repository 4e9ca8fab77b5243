"""Invariant operators that stay at distance 1 from every operator with truncated support.

Each construction maps the orbit block H_j onto the j-th codomain direction
through an averaged block functional f_j of dual norm 1.  Truncating the
support below the minimum of a block cannot reduce the norm restricted to
that block, which is what ``distance_to_truncated`` measures.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .attainment import operator_norm
from .errors import BlockTooBig, DimensionMismatch, NormNotInvariant, NoBlockBeyondCutoff, NoWitness, VertexBudgetExceeded
from .invariance import is_invariant_operator
from .norms import NormSpec, dual_norm, is_norm_invariant, lorentz_predual, lp, linf, l2, norm, strict_c0, unit_ball_vertices, xw
from .operators import Operator
from .perm_group import Permutation, PermutationGroup, apply

TRUNC_TOL = 1e-9
EXACT_BUDGET = 400_000


@dataclass(frozen=True, eq=False)
class Counterexample:
    construction: str  # "c0", "dstar" or "xw"
    operator: Operator
    group: PermutationGroup
    blocks: tuple[tuple[int, ...], ...]  # 0-based orbit blocks, ordered by minima
    coefficients: tuple[float, ...]  # value of f_j on each e_i, i in H_j
    params: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.operator.n

    def to_json(self) -> dict:
        return {"construction": self.construction, "operator": self.operator.to_json(),
                "blocks": [[i + 1 for i in b] for b in self.blocks],
                "coefficients": list(self.coefficients), "params": self.params}


def _blocks(G: PermutationGroup, C: int | None):
    blocks = G.orbit_partition.blocks
    if C is not None and max(len(b) for b in blocks) >= C:
        raise BlockTooBig(f"a block has size >= C={C}")
    return blocks


def _block_matrix(n: int, blocks, coeffs, m: int | None = None, scale=None) -> np.ndarray:
    m = len(blocks) if m is None else m
    if m < len(blocks):
        raise DimensionMismatch(f"codomain dimension {m} < number of blocks {len(blocks)}")
    M = np.zeros((m, n))
    for j, (b, c) in enumerate(zip(blocks, coeffs)):
        M[j, list(b)] = c * (1.0 if scale is None else scale)
    return M


def build_c0_counterexample(G: PermutationGroup, theta: float = 0.1, normalized: bool = False) -> Counterexample:
    """T(e_i) = e_j for i in H_j, from (R^n, sup) into (R^K, ||.||_inf + theta ||.||_2).

    ``normalized`` uses f_j = 1_{H_j}/|H_j| and y_j = e_j/(1 + theta), so that
    both have norm one and the block bound equals 1.
    """
    blocks = _blocks(G, None)
    n, K = G.degree, len(blocks)
    if normalized:
        coeffs = tuple(1.0 / len(b) for b in blocks)
        M = _block_matrix(n, blocks, coeffs, scale=1.0 / (1.0 + theta))
    else:
        coeffs = tuple(1.0 for _ in blocks)
        M = _block_matrix(n, blocks, coeffs)
    T = Operator(M, linf(), strict_c0(theta))
    return Counterexample("c0", T, G, blocks, coeffs, {"theta": theta, "normalized": normalized})


def build_dstar_counterexample(G: PermutationGroup, w, p: float, C: int | None = None) -> Counterexample:
    """T(e_j) = f_k(e_j) e_k for j in H_k, from d*(w, 1) into l_p^K.

    f_k = 1_{H_k} / W_{|H_k|}: the uniform functional with norm one in the
    dual of the block subspace.
    """
    spec = lorentz_predual(w)
    ok, _ = is_norm_invariant(spec, G)
    if not ok:
        raise NormNotInvariant("d*(w,1) norm is not G-invariant")
    blocks = _blocks(G, C)
    W = np.cumsum(spec.weights)
    coeffs = tuple(1.0 / W[len(b) - 1] for b in blocks)
    T = Operator(_block_matrix(G.degree, blocks, coeffs), spec, lp(p))
    return Counterexample("dstar", T, G, blocks, coeffs, {"w": list(spec.w), "p": p, "C": C})


def build_xw_counterexample(G: PermutationGroup, w, m: int | None = None, C: int | None = None) -> Counterexample:
    """T(e_j) = f_k(e_j) y_k with y_k the k-th unit vector of (R^m, l_2)."""
    spec = xw(w)
    ok, _ = is_norm_invariant(spec, G)
    if not ok:
        raise NormNotInvariant("X(w) norm is not G-invariant: w is not constant on every orbit")
    blocks = _blocks(G, C)
    coeffs = []
    for b in blocks:
        sub = spec.restrict(b)
        coeffs.append(1.0 / float(dual_norm(np.ones(len(b)), sub)))
    coeffs = tuple(coeffs)
    m = len(blocks) if m is None else m
    T = Operator(_block_matrix(G.degree, blocks, coeffs, m), spec, l2())
    return Counterexample("xw", T, G, blocks, coeffs, {"w": list(spec.w), "m": m, "C": C})


def block_sup(cx: Counterexample, k: int) -> float:
    """sup { ||T x|| : x in the unit ball of span{e_i : i in H_k} }, by vertex enumeration."""
    b = cx.blocks[k]
    T = cx.operator
    V = unit_ball_vertices(T.domain.restrict(b), len(b))
    X = np.zeros((len(V), T.n))
    X[:, list(b)] = V
    return float(T.image_norms(X).max())


@dataclass
class TruncationReport:
    construction: str
    n: int
    cutoff: int
    blocks_beyond: list[int]  # 1-based block indices
    block_sups: list[float]
    certified_bound: float
    certified: bool
    empirical_min: float | None
    trials: int
    method: str  # "exact" or "block lower bound"
    seed: int

    @property
    def passed(self) -> bool:
        return self.certified and (self.empirical_min is None or self.empirical_min >= 1 - TRUNC_TOL)

    def to_json(self) -> dict:
        d = dict(self.__dict__)
        d["passed"] = self.passed
        return d

    def csv_row(self) -> dict:
        return {"construction": self.construction, "n": self.n, "cutoff": self.cutoff,
                "certified_bound": self.certified_bound, "empirical_min": self.empirical_min}


def distance_to_truncated(cx: Counterexample, N: int, trials: int = 1000, seed: int = 0) -> TruncationReport:
    """Certify ||T - S|| >= 1 for every S with S(e_k) = 0 for k > N (1-based cutoff).

    The bound is the exact block supremum; random truncated S are then
    checked against it with exact operator norms when the domain ball is
    small enough to enumerate, and with the block lower bound otherwise.
    """
    T = cx.operator
    beyond = [k for k, b in enumerate(cx.blocks) if b[0] + 1 > N]
    if not beyond:
        raise NoBlockBeyondCutoff(f"no orbit block starts after coordinate {N}")
    sups = [block_sup(cx, k) for k in beyond]
    bound = min(sups)
    certified = all(abs(s - 1.0) <= TRUNC_TOL for s in sups)
    rng = np.random.default_rng(seed)
    try:
        V = unit_ball_vertices(T.domain, T.n, budget=EXACT_BUDGET)
        method = "exact"
    except VertexBudgetExceeded:
        # the block vertices alone already give ||T - S|| >= bound
        rows = []
        for k in beyond:
            b = cx.blocks[k]
            Vb = unit_ball_vertices(T.domain.restrict(b), len(b))
            X = np.zeros((len(Vb), T.n))
            X[:, list(b)] = Vb
            rows.append(X)
        V = np.vstack(rows)
        method = "block lower bound"
    emp = None
    if trials > 0:
        mask = np.zeros(T.n)
        mask[:N] = 1.0
        base = T.matrix * mask
        TV = V @ T.matrix.T
        emp = np.inf
        for _ in range(trials):
            S = base + rng.standard_normal(T.matrix.shape) * mask * rng.uniform(0, 1)
            D = TV - V @ S.T
            emp = min(emp, float(np.max(norm(D, T.codomain))))
    return TruncationReport(cx.construction, T.n, N, [k + 1 for k in beyond], sups, bound, certified, emp,
                            trials, method, seed)


@dataclass
class JensenReport:
    samples: int
    violations: int  # against sum_k |H_k|^(p-1) sum_{j in H_k} |f_k(e_j)|^p |x_j|^p
    violations_plain: int  # against C^(p-1) ||x||_p^p, which presumes |f_k(e_j)| <= 1
    max_ratio: float
    C: int
    seed: int

    def to_json(self) -> dict:
        return dict(self.__dict__)


def jensen_check(cx: Counterexample, samples: int = 10_000, seed: int = 0, C: int | None = None) -> JensenReport:
    """Sampled check of ||T x||_p^p against the block-wise Jensen bound."""
    if cx.construction != "dstar":
        raise ValueError("the Jensen bound is stated for the d* construction")
    p = cx.params["p"]
    T = cx.operator
    C = C if C is not None else (cx.params.get("C") or max(len(b) for b in cx.blocks))
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((samples, T.n)) * rng.uniform(0.01, 10, size=(samples, 1))
    lhs = (np.abs(X @ T.matrix.T) ** p).sum(axis=1)
    mid = np.zeros(samples)
    for b, c in zip(cx.blocks, cx.coefficients):
        mid += len(b) ** (p - 1) * abs(c) ** p * (np.abs(X[:, list(b)]) ** p).sum(axis=1)
    plain = C ** (p - 1) * (np.abs(X) ** p).sum(axis=1)
    slack = 1e-12 * np.maximum(1.0, mid)
    return JensenReport(samples, int((lhs > mid + slack).sum()), int((lhs > plain + 1e-12 * np.maximum(1.0, plain)).sum()),
                        float((lhs / np.where(mid > 0, mid, 1.0)).max()), int(C), seed)


@dataclass
class AuxWitness:
    x: np.ndarray
    g: Permutation
    norm_x: float
    norm_gx: float
    construction: str  # "proof" or "search"
    n: int | None = None  # 1-based top-weight index of the orbit
    k: int | None = None
    i: int | None = None  # 1-based

    @property
    def gap(self) -> float:
        return self.norm_x - self.norm_gx

    def to_json(self) -> dict:
        return {"x": self.x.tolist(), "g": self.g.to_json(), "norm_x": self.norm_x, "norm_gx": self.norm_gx,
                "gap": self.gap, "construction": self.construction, "n": self.n, "k": self.k, "i": self.i}


def auxlemma_witness(w, G: PermutationGroup, gap_tol: float = 1e-12) -> AuxWitness:
    """x = e_i + e_n + ... (all top-weight indices of an orbit) with ||g(x)|| < ||x|| in X(w).

    n is the minimum of an orbit on which w is not constant, A the indices of
    that orbit carrying the weight w_n (|A| = k + 1), i an orbit index off A.
    A permutation sending both n and i off A gives ||g(x)|| < 1 + (k + 1) w_n = ||x||.
    When no such (g, i) exists, a generic search supplies the witness.
    """
    spec = xw(w)
    spec.check_dim(G.degree)
    wv = spec.weights
    target = [b for b in G.orbit_partition.blocks if np.ptp(wv[list(b)]) > 0]
    if not target:
        raise NoWitness("w is constant on every orbit block, so the X(w) norm is G-invariant")
    elems = sorted(G.elements)
    for O in target:
        n0 = O[0]
        A = [j for j in O if wv[j] == wv[n0]]
        k = len(A) - 1
        rest = [j for j in O if j not in A]
        for i in rest:
            x = np.zeros(G.degree)
            x[A] = 1.0
            x[i] = 1.0
            nx = float(norm(x, spec))
            for g in elems:
                # apply(g, .) moves coordinate j to g^{-1}(j)
                ginv = g.inverse()
                if ginv(n0) in A or ginv(i) in A:
                    continue
                ngx = float(norm(apply(g, x), spec))
                if nx - ngx > gap_tol:
                    return AuxWitness(x, g, nx, ngx, "proof", n0 + 1, k, i + 1)
    ok, wit = is_norm_invariant(spec, G)
    if ok or wit is None:
        raise NoWitness("no strict norm decrease found")
    x, g, nx, ngx = wit
    if ngx > nx:
        # report the decreasing direction: from g(x) back to x via g^{-1}
        x, g, nx, ngx = apply(g, x), g.inverse(), ngx, nx
    return AuxWitness(np.asarray(x, dtype=float), g, float(nx), float(ngx), "search")


__all__ = [
    "AuxWitness",
    "Counterexample",
    "JensenReport",
    "TruncationReport",
    "auxlemma_witness",
    "block_sup",
    "build_c0_counterexample",
    "build_dstar_counterexample",
    "build_xw_counterexample",
    "distance_to_truncated",
    "is_invariant_operator",
    "jensen_check",
    "operator_norm",
]
