"""Quaternionic matrix-valued slice-regular functions.

Core layers, bottom to top:

- :mod:`sliceregular.quaternion` -- Hamilton arithmetic, slice geometry,
  sigma distance;
- :mod:`sliceregular.sampling` -- deterministic seeded region sampling;
- :mod:`sliceregular.matrix` -- quaternion matrices via the complex
  adjoint: norms, singular values, maximizing vectors, unitary completion;
- :mod:`sliceregular.series` -- power-series regular functions: the
  *-product, regular conjugate / symmetrization / reciprocal, splitting
  and regular extension;
- :mod:`sliceregular.principles` -- sampling-based checks of the norm
  maximum principles and the constructive decomposition;
- :mod:`sliceregular.approximation` -- Schur-algorithm Blaschke products
  and rational-inner approximation of Schur-class functions;
- :mod:`sliceregular.cli` -- the command-line front door (also exposed as
  the ``sliceregular`` script).
"""

from .errors import (
    AssemblyError,
    ConvergenceError,
    DomainError,
    FormatError,
    NotApplicableError,
    PairingError,
    PreconditionError,
    SliceRegularError,
)
from .quaternion import (
    ComplexPair,
    ImaginaryUnit,
    Quaternion,
    SlicePoint,
    conj_mod_inv,
    mul,
    same_slice,
    sigma_distance,
    similar,
    slice_decompose,
)
from .matrix import (
    ChiBlock,
    QuatMatrix,
    chi,
    is_invertible,
    jacobi_svd,
    maximizing_vector,
    norms,
    singular_values,
    singular_values_batch,
    unchi,
    unitary_complete,
)
from .sampling import Ball, SigmaBall, Shell, SliceDisk, sample

__version__ = "0.1.0"

__all__ = [
    "AssemblyError",
    "Ball",
    "ChiBlock",
    "ComplexPair",
    "ConvergenceError",
    "DomainError",
    "FormatError",
    "ImaginaryUnit",
    "NotApplicableError",
    "PairingError",
    "PreconditionError",
    "Quaternion",
    "QuatMatrix",
    "SigmaBall",
    "Shell",
    "SliceDisk",
    "SlicePoint",
    "SliceRegularError",
    "chi",
    "conj_mod_inv",
    "is_invertible",
    "jacobi_svd",
    "maximizing_vector",
    "mul",
    "norms",
    "same_slice",
    "sample",
    "sigma_distance",
    "similar",
    "singular_values",
    "singular_values_batch",
    "slice_decompose",
    "unchi",
    "unitary_complete",
    "__version__",
]
