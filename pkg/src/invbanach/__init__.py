"""Group-invariant operators on finite-dimensional normed spaces.

Permutation groups act on coordinates; everything else (symmetrization,
invariant separation, norm attainment, alpha/beta certificates, perturbation
schemes and the counterexample gallery) is built on that action.
"""

import os as _os

# INVBANACH_THREADS caps BLAS/OpenMP threads; it must be set before numpy loads.
_threads = _os.environ.get("INVBANACH_THREADS")
if _threads:
    for _var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
        _os.environ.setdefault(_var, _threads)

from .errors import InvBanachError, InputError  # noqa: E402
from .norms import NormSpec, dual_norm, norm, supporting_functional  # noqa: E402
from .operators import Operator  # noqa: E402
from .perm_group import (  # noqa: E402
    Permutation,
    PermutationGroup,
    apply,
    block_group,
    cyclic_group,
    generate_group,
    orbits,
    symmetric_group,
    trivial_group,
)

__version__ = "0.1.0"

__all__ = [
    "InputError",
    "InvBanachError",
    "NormSpec",
    "Operator",
    "Permutation",
    "PermutationGroup",
    "apply",
    "block_group",
    "cyclic_group",
    "dual_norm",
    "generate_group",
    "norm",
    "orbits",
    "supporting_functional",
    "symmetric_group",
    "trivial_group",
]
