"""Polytope utilities: hull membership, gauges, nearest points, H-to-V enumeration.

Points are stored row-wise (k x n arrays).  LPs go through scipy's HiGHS.
"""

from __future__ import annotations

import numpy as np
from scipy.optimize import linprog
from scipy.spatial import HalfspaceIntersection

MEMBERSHIP_TOL = 1e-9


def _points(P) -> np.ndarray:
    P = np.atleast_2d(np.asarray(P, dtype=float))
    return P


def hull_residual(P, x, absolute: bool = False) -> tuple[float, np.ndarray]:
    """min ||x - sum l_i p_i||_1 over convex (or absolutely convex) coefficients l.

    Returns the residual and the coefficient vector (length 2k when absolute,
    ordered as +P then -P).
    """
    P = _points(P)
    x = np.asarray(x, dtype=float)
    if absolute:
        P = np.vstack([P, -P])
    k, n = P.shape
    # variables: l (k), s_plus (n), s_minus (n)
    c = np.concatenate([np.zeros(k), np.ones(2 * n)])
    A_eq = np.hstack([P.T, np.eye(n), -np.eye(n)])
    b_eq = x
    if absolute:
        A_ub = np.concatenate([np.ones(k), np.zeros(2 * n)])[None, :]
        res = linprog(c, A_ub=A_ub, b_ub=[1.0], A_eq=A_eq, b_eq=b_eq, bounds=(0, None), method="highs")
    else:
        A_eq = np.vstack([A_eq, np.concatenate([np.ones(k), np.zeros(2 * n)])])
        b_eq = np.concatenate([x, [1.0]])
        res = linprog(c, A_eq=A_eq, b_eq=b_eq, bounds=(0, None), method="highs")
    if res.status != 0:
        raise RuntimeError(f"hull LP failed: {res.message}")
    return float(res.fun), res.x[:k]


def in_hull(P, x, absolute: bool = False, tol: float = MEMBERSHIP_TOL) -> bool:
    return hull_residual(P, x, absolute)[0] <= tol


def gauge(P, x) -> float:
    """Minkowski functional of conv(P) at x: min sum a_i s.t. sum a_i p_i = x, a >= 0.

    Valid when 0 lies in conv(P); returns inf if x is outside the cone of P.
    """
    P = _points(P)
    x = np.asarray(x, dtype=float)
    k = P.shape[0]
    res = linprog(np.ones(k), A_eq=P.T, b_eq=x, bounds=(0, None), method="highs")
    if res.status == 2:
        return float("inf")
    if res.status != 0:
        raise RuntimeError(f"gauge LP failed: {res.message}")
    return float(res.fun)


def origin_interior(P) -> bool:
    """0 in int conv(P) iff P spans R^n and sum c_i p_i = 0 for some c >= 1."""
    P = _points(P)
    k, n = P.shape
    if np.linalg.matrix_rank(P) < n:
        return False
    res = linprog(np.zeros(k), A_eq=P.T, b_eq=np.zeros(n), bounds=(1, None), method="highs")
    return res.status == 0


def _affine_minimizer(Q: np.ndarray) -> np.ndarray:
    """Coefficients a (sum a = 1) minimising ||a @ Q||_2."""
    m = Q.shape[0]
    K = np.zeros((m + 1, m + 1))
    K[:m, :m] = Q @ Q.T
    K[:m, m] = 1.0
    K[m, :m] = 1.0
    rhs = np.zeros(m + 1)
    rhs[m] = 1.0
    sol = np.linalg.lstsq(K, rhs, rcond=None)[0]
    return sol[:m]


def min_norm_point(P, tol: float = 1e-13, max_iter: int = 10_000) -> tuple[np.ndarray, np.ndarray, float]:
    """Wolfe's algorithm: the point of conv(P) closest to the origin.

    Returns (point, convex weights over the rows of P, duality gap).  The gap
    ||x||^2 - min_j p_j.x bounds ||x - x*||^2.
    """
    P = _points(P)
    k = P.shape[0]
    scale = max(1.0, float((P * P).sum(axis=1).max()))
    S = [int(np.argmin((P * P).sum(axis=1)))]
    lam = np.array([1.0])
    x = P[S[0]].copy()
    gap = np.inf
    for _ in range(max_iter):
        dots = P @ x
        j = int(np.argmin(dots))
        gap = float(x @ x - dots[j])
        if gap <= tol * scale or j in S:
            break
        S.append(j)
        lam = np.append(lam, 0.0)
        while True:
            alpha = _affine_minimizer(P[S])
            if np.all(alpha > 1e-14):
                lam = alpha
                break
            mask = alpha <= 1e-14
            with np.errstate(divide="ignore", invalid="ignore"):
                ratios = lam[mask] / (lam[mask] - alpha[mask])
            theta = float(np.min(ratios[np.isfinite(ratios)], initial=1.0))
            theta = min(max(theta, 0.0), 1.0)
            lam = theta * alpha + (1.0 - theta) * lam
            keep = lam > 1e-14
            keep[np.argmax(lam)] = True
            S = [s for s, kp in zip(S, keep) if kp]
            lam = lam[keep]
            lam = lam / lam.sum()
        x = lam @ P[S]
    weights = np.zeros(k)
    weights[S] = lam
    gap = float(x @ x - (P @ x).min())
    return x, weights, max(gap, 0.0)


def nearest_point(P, x0) -> tuple[np.ndarray, float, float]:
    """Euclidean projection of x0 onto conv(P): (projection, distance, gap)."""
    P = _points(P)
    x0 = np.asarray(x0, dtype=float)
    z, weights, gap = min_norm_point(P - x0)
    proj = weights @ P
    return proj, float(np.linalg.norm(x0 - proj)), gap


def halfspace_vertices(A, b) -> np.ndarray:
    """Vertices of the bounded polytope {y : A y <= b} with b > 0 (origin interior)."""
    A = np.atleast_2d(np.asarray(A, dtype=float))
    b = np.asarray(b, dtype=float)
    d = A.shape[1]
    if d == 1:
        a = A[:, 0]
        hi = np.min(b[a > 0] / a[a > 0])
        lo = np.max(b[a < 0] / a[a < 0])
        return np.array([[lo], [hi]])
    hs = HalfspaceIntersection(np.hstack([A, -b[:, None]]), np.zeros(d))
    V = hs.intersections
    return np.unique(np.round(V, 12), axis=0)
