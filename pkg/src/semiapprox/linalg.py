"""Dense complex linear-algebra kernels.

An "operator" throughout the package is a square complex ``numpy.ndarray``
(row-major, dimension >= 1, all entries finite).  These wrappers pin down the
conventions the rest of the library relies on: the operator norm is always the
spectral norm, eigenvalues of Hermitian matrices come back sorted descending,
and inversion refuses matrices whose condition number makes the result
meaningless.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg

from .errors import (
    DimensionMismatchError,
    InvalidInputError,
    OverflowRiskError,
    SingularityError,
)
from .tolerances import HERMITIAN_TOL, MAX_CONDITION, MAX_EXPM_NORM


def as_operator(m) -> np.ndarray:
    """Validate and return ``m`` as a square complex128 matrix."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim == 0:
        a = a.reshape(1, 1)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise InvalidInputError(f"operator must be square, got shape {a.shape}")
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise InvalidInputError("operator entries must be finite")
    return a


def identity(dim: int) -> np.ndarray:
    return np.eye(dim, dtype=np.complex128)


def operators_close(a, b, tol: float = 1e-12) -> bool:
    """Entrywise tolerance comparison; operators are never compared bitwise."""
    a = as_operator(a)
    b = as_operator(b)
    if a.shape != b.shape:
        return False
    return bool(np.all(np.abs(a - b) <= tol))


def op_norm(m) -> float:
    """Spectral norm (largest singular value)."""
    a = as_operator(m)
    return float(np.linalg.norm(a, 2))


def condition(m) -> float:
    """2-norm condition number; inf for singular input."""
    a = as_operator(m)
    s = np.linalg.svd(a, compute_uv=False)
    if s[-1] == 0.0:
        return float("inf")
    return float(s[0] / s[-1])


def expm(m) -> np.ndarray:
    """Matrix exponential.

    The zero matrix maps to the identity exactly; norms above
    ``MAX_EXPM_NORM`` are refused instead of silently overflowing.
    """
    a = as_operator(m)
    if not np.any(a):
        return identity(a.shape[0])
    # cheap Frobenius screen first; the spectral norm is only computed when
    # the Frobenius bound cannot already rule out an overflow-risk norm
    if np.linalg.norm(a) > MAX_EXPM_NORM and op_norm(a) > MAX_EXPM_NORM:
        raise OverflowRiskError(
            f"op_norm(M) > {MAX_EXPM_NORM:g}; refusing to exponentiate"
        )
    return np.asarray(scipy.linalg.expm(a), dtype=np.complex128)


def mat_pow(m, n: int) -> np.ndarray:
    """M**n for integer n >= 0 by binary exponentiation (M**0 = identity)."""
    a = as_operator(m)
    if not isinstance(n, (int, np.integer)) or n < 0:
        raise InvalidInputError(f"exponent must be a nonnegative integer, got {n!r}")
    return np.asarray(np.linalg.matrix_power(a, int(n)), dtype=np.complex128)


def inverse(m) -> np.ndarray:
    """Matrix inverse; refuses condition numbers above ``MAX_CONDITION``."""
    a = as_operator(m)
    c = condition(a)
    if not np.isfinite(c) or c > MAX_CONDITION:
        raise SingularityError(f"condition number {c:g} exceeds {MAX_CONDITION:g}")
    return np.asarray(np.linalg.solve(a, identity(a.shape[0])), dtype=np.complex128)


def hermitian_part(m) -> np.ndarray:
    a = as_operator(m)
    return (a + a.conj().T) / 2.0


def hermitian_eig(h) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (real, descending) and orthonormal eigenvectors of Hermitian h."""
    a = as_operator(h)
    scale = op_norm(a)
    if op_norm(a - a.conj().T) > HERMITIAN_TOL * max(scale, 1e-300):
        raise InvalidInputError("matrix is not Hermitian within tolerance")
    w, v = np.linalg.eigh(a)
    order = np.argsort(w)[::-1]
    return w[order].real, v[:, order]


def check_same_dim(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape != b.shape:
        raise DimensionMismatchError(f"dimension mismatch: {a.shape} vs {b.shape}")
