"""Perturbations of invariant operators into norm-attaining ones.

Three schemes: the iterated rank-one update with a fast-decaying schedule,
the one-shot update driven by a (quasi-)alpha certificate on the domain, and
the one-shot update driven by a beta certificate on the codomain.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .attainment import ATTAINMENT_TOL, operator_norm
from .certificates import AlphaCertificate, BetaCertificate, verify_alpha, verify_beta, verify_quasi_alpha
from .errors import (
    BadEps,
    CertInvalid,
    DeltaInfeasible,
    NoConvergence,
    NoEligibleLambda,
    NotInvariant,
    UnsupportedDomain,
)
from .invariance import is_invariant_operator, is_invariant_point
from .norms import dual_norm, norm, supporting_functional
from .operators import Operator
from .perm_group import PermutationGroup


@dataclass(frozen=True)
class EpsilonSchedule:
    eps: float
    terms: tuple[float, ...]

    def __len__(self) -> int:
        return len(self.terms)

    def __getitem__(self, k: int) -> float:
        return self.terms[k]

    def check(self) -> dict[str, bool]:
        e = np.asarray(self.terms)
        tails = np.concatenate([np.cumsum(e[::-1])[::-1][1:], [0.0]])
        k = np.arange(1, len(e) + 1)
        return {
            "total": bool(2 * e.sum() < self.eps),
            "tails": bool(np.all(2 * tails < e ** 2)),
            "decay": bool(np.all(e < 1.0 / (10 * k))),
        }


def epsilon_schedule(eps: float, K: int) -> EpsilonSchedule:
    """eps_1 = min(eps/8, 1/10), eps_{k+1} = min(eps_k^2/8, 1/(10(k+1))).

    The sequence is cut short once the square of the next term would fall below
    the smallest normal float, so ``len`` may be smaller than K.
    """
    if not 0 < eps < 1 / 3:
        raise BadEps(f"eps={eps} is outside (0, 1/3)")
    if K < 1:
        raise ValueError("K must be positive")
    terms = [min(eps / 8, 0.1)]
    while len(terms) < K:
        k = len(terms)
        nxt = min(terms[-1] ** 2 / 8, 1 / (10 * (k + 1)))
        if nxt ** 2 < np.finfo(float).tiny:
            break
        terms.append(nxt)
    sched = EpsilonSchedule(float(eps), tuple(terms))
    bad = [name for name, ok in sched.check().items() if not ok]
    if bad:
        raise BadEps(f"schedule violates {bad}")
    return sched


@dataclass(frozen=True)
class TraceRow:
    k: int
    eps_k: float
    norm_Tk: float
    defect_k: float
    step_norm: float  # ||T_{k+1} - T_k|| in the normalised scale, 0 when no update followed

    def to_json(self) -> dict:
        return {"k": self.k, "eps_k": self.eps_k, "norm_Tk": self.norm_Tk, "defect_k": self.defect_k,
                "step_norm": self.step_norm}


def _check_invariant(T: Operator, G: PermutationGroup) -> None:
    if not is_invariant_operator(T, G):
        raise NotInvariant("operator is not G-invariant")


def lindenstrauss_iterate(T: Operator, G: PermutationGroup, eps: float, K: int = 8, tol: float = ATTAINMENT_TOL,
                          min_steps: int = 0, callback=None) -> tuple[Operator, list[TraceRow]]:
    """T_{k+1}(x) = T_k(x) + eps_k x_k*(T_k x) T_k(x_k) on T scaled to norm 1.

    x_k is an exact maximiser and x_k* a supporting functional at T_k(x_k).
    Stops once the attainment defect is <= tol and at least ``min_steps``
    updates were made.  ``callback(k, T_k)`` sees every iterate in the
    normalised scale.
    """
    _check_invariant(T, G)
    if not T.domain.polyhedral:
        raise UnsupportedDomain(f"iteration needs a polyhedral domain, got {T.domain.kind}")
    c = operator_norm(T).operator_norm
    if c == 0:
        return T, []
    sched = epsilon_schedule(eps, max(K, 1))
    Tk = T.with_matrix(T.matrix / c)
    trace: list[TraceRow] = []
    for k in range(len(sched) + 1):
        if callback is not None:
            callback(k, Tk)
        rep = operator_norm(Tk)
        if (rep.defect <= tol and k >= min_steps) or k == len(sched) or k >= K:
            trace.append(TraceRow(k + 1, sched[k] if k < len(sched) else 0.0, rep.operator_norm, rep.defect, 0.0))
            break
        x = rep.witness
        y = Tk(x)
        f = supporting_functional(y, Tk.codomain) @ Tk.matrix  # x_k* o T_k
        step = sched[k] * np.outer(y, f)
        nxt = Tk.with_matrix(Tk.matrix + step)
        _check_invariant(nxt, G)
        step_norm = operator_norm(Tk.with_matrix(step)).operator_norm
        trace.append(TraceRow(k + 1, sched[k], rep.operator_norm, rep.defect, step_norm))
        Tk = nxt
    if trace[-1].defect_k > tol:
        raise NoConvergence(f"defect {trace[-1].defect_k:.3g} > {tol} after {len(trace) - 1} steps")
    if len(trace) == 1:
        return T, trace  # no update was made
    return Tk.with_matrix(Tk.matrix * c), trace


@dataclass
class PerturbationResult:
    S: Operator
    lambda0: int | None
    checks: dict[str, float | bool]

    def to_json(self) -> dict:
        return {"S": self.S.to_json(), "lambda0": None if self.lambda0 is None else self.lambda0 + 1,
                "checks": self.checks}


def quasi_alpha_perturb(T: Operator, cert: AlphaCertificate, G: PermutationGroup, eps: float,
                        delta: float) -> PerturbationResult:
    """S = T + eps x*_{l0}(.) T(x_{l0}) for a pair l0 with ||T x_{l0}|| >= (1 - delta)||T||."""
    _check_invariant(T, G)
    if eps == 0:
        return PerturbationResult(T.with_matrix(T.matrix), None, {"no_op": True})
    rep = verify_quasi_alpha(cert) if isinstance(cert.rho, tuple) else verify_alpha(cert)
    if not rep.passed:
        raise CertInvalid(f"certificate fails conditions {[k for k, v in rep.conditions.items() if not v]}")
    rho = cert.rho_max
    if not (1 + eps) * (1 - delta) > 1 + eps * rho:
        raise DeltaInfeasible(f"(1+eps)(1-delta) = {(1 + eps) * (1 - delta):.6g} <= 1 + eps rho = {1 + eps * rho:.6g}")
    nT = operator_norm(T).operator_norm
    vals = T.image_norms(cert.points)
    l0 = int(np.argmax(vals))
    if not vals[l0] >= (1 - delta) * nT - 1e-12:
        raise NoEligibleLambda(f"max ||T x_l|| = {vals[l0]:.6g} < (1 - delta)||T|| = {(1 - delta) * nT:.6g}")
    x0, f0 = cert.pairs[l0]
    S = T.with_matrix(T.matrix + eps * np.outer(T(x0), f0))
    idx = cert.group.index_array
    others = [S.image_norms(x[idx]).max() for m, (x, _) in enumerate(cert.pairs) if m != l0]
    checks = {
        "invariant": is_invariant_operator(S, G),
        "norm_S_x0": float(norm(S(x0), S.codomain)),
        "lower": (1 + eps) * (1 - delta) * nT,
        "max_other": float(max(others, default=0.0)),
        "upper_other": (1 + eps * rho) * nT,
        "distance": operator_norm(S.with_matrix(S.matrix - T.matrix)).operator_norm,
        "distance_bound": eps * nT,
    }
    return PerturbationResult(S, l0, checks)


def beta_perturb(T: Operator, cert: BetaCertificate, G: PermutationGroup, eps: float,
                 delta: float) -> PerturbationResult:
    """S = T + (eps/2) x*(.) y_{l0} with x* = T* y*_{l0} (already norm attaining here)."""
    _check_invariant(T, G)
    if eps == 0:
        return PerturbationResult(T.with_matrix(T.matrix), None, {"no_op": True})
    rep = verify_beta(cert)
    if not rep.passed:
        raise CertInvalid(f"certificate fails conditions {[k for k, v in rep.conditions.items() if not v]}")
    r = float(cert.rho)
    if not 1 + r * (eps / 2 + delta) < (1 + eps / 2) * (1 - delta):
        raise DeltaInfeasible("1 + r(eps/2 + delta) >= (1 + eps/2)(1 - delta)")
    nT = operator_norm(T).operator_norm
    F = cert.functionals @ T.matrix  # rows T* y*_l
    vals = np.atleast_1d(dual_norm(F, T.domain))
    l0 = int(np.argmax(vals))
    if not vals[l0] > (1 - delta) * nT:
        raise NoEligibleLambda(f"max ||T* y*_l|| = {vals[l0]:.6g} <= (1 - delta)||T||")
    y0 = cert.pairs[l0][0]
    S = T.with_matrix(T.matrix + (eps / 2) * np.outer(y0, F[l0]))
    srep = operator_norm(S)
    checks = {
        "invariant": is_invariant_operator(S, G),
        "y_l0_H_invariant": is_invariant_point(y0, cert.group),
        "distance": operator_norm(S.with_matrix(S.matrix - T.matrix)).operator_norm,
        "distance_bound": eps * nT,
        "norm_S": srep.operator_norm,
        "defect": srep.defect,
        "attained": srep.attained,
    }
    return PerturbationResult(S, l0, checks)
