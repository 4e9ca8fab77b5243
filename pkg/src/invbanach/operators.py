"""Dense operators between normed coordinate spaces."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, InputError
from .norms import NormSpec, norm


@dataclass(frozen=True, eq=False)
class Operator:
    """An m x n matrix viewed as a map (R^n, domain) -> (R^m, codomain)."""

    matrix: np.ndarray
    domain: NormSpec
    codomain: NormSpec

    def __post_init__(self):
        M = np.array(self.matrix, dtype=float)
        if M.ndim != 2:
            raise DimensionMismatch("operator matrix must be 2-D")
        if not np.all(np.isfinite(M)):
            raise InputError("operator matrix has non-finite entries")
        M.setflags(write=False)
        object.__setattr__(self, "matrix", M)
        self.domain.check_dim(M.shape[1])
        self.codomain.check_dim(M.shape[0])

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.shape

    @property
    def n(self) -> int:
        return self.matrix.shape[1]

    @property
    def m(self) -> int:
        return self.matrix.shape[0]

    def __call__(self, x) -> np.ndarray:
        return np.asarray(x, dtype=float) @ self.matrix.T

    def image_norms(self, X) -> np.ndarray:
        """||T x|| for each row x of X."""
        return np.atleast_1d(norm(np.atleast_2d(X) @ self.matrix.T, self.codomain))

    def with_matrix(self, M) -> "Operator":
        return Operator(np.asarray(M, dtype=float), self.domain, self.codomain)

    def adjoint_apply(self, f) -> np.ndarray:
        """T* f = f o T, as a coefficient vector on the domain."""
        return np.asarray(f, dtype=float) @ self.matrix

    def to_json(self) -> dict:
        return {
            "matrix": self.matrix.tolist(),
            "domain": self.domain.to_json(),
            "codomain": self.codomain.to_json(),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Operator":
        return cls(np.asarray(obj["matrix"], dtype=float), NormSpec.from_json(obj["domain"]),
                   NormSpec.from_json(obj["codomain"]))
