"""Dense complex linear algebra used by every other module.

Matrices are square ``numpy`` arrays of dtype ``complex128``. Functions here
never mutate their inputs and return fresh arrays.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import CapacityError, InvalidArgumentError

DEFAULT_TOL = 1e-10
MAX_KRON_DIM = 2**20

# below this |trace(a^dagger b)| the relative phase is undefined
_PHASE_FLOOR = 1e-12


@dataclass(frozen=True)
class EquivalenceReport:
    equivalent: bool
    phase: float
    max_abs_deviation: float

    def __bool__(self) -> bool:
        return self.equivalent


def as_matrix(data) -> np.ndarray:
    """Coerce ``data`` to a square complex matrix, rejecting NaN/Inf."""
    m = np.array(data, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise InvalidArgumentError(f"expected a non-empty square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise InvalidArgumentError("matrix has non-finite entries")
    return m


def identity(dim: int) -> np.ndarray:
    return np.eye(dim, dtype=np.complex128)


def normalize_angle(angle: float) -> float:
    """Map an angle onto (-pi, pi]."""
    r = math.remainder(angle, 2 * math.pi)
    return math.pi if r <= -math.pi else r


def _check_same_dim(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape != b.shape:
        raise InvalidArgumentError(f"dimension mismatch: {a.shape[0]} vs {b.shape[0]}")


def matmul(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    _check_same_dim(a, b)
    return a @ b


def kron(a, b) -> np.ndarray:
    """Kronecker product; block (r, c) of the result is ``a[r, c] * b``."""
    a, b = as_matrix(a), as_matrix(b)
    dim = a.shape[0] * b.shape[0]
    if dim > MAX_KRON_DIM:
        raise CapacityError(f"kron result dimension {dim} exceeds {MAX_KRON_DIM}")
    return np.kron(a, b)


def dagger(a) -> np.ndarray:
    return as_matrix(a).conj().T.copy()


def is_unitary(a, tol: float = DEFAULT_TOL) -> bool:
    """True iff every entry of ``a @ a^dagger`` is within ``tol`` of the identity."""
    if tol <= 0:
        raise InvalidArgumentError("tol must be positive")
    a = as_matrix(a)
    dev = np.abs(a @ a.conj().T - identity(a.shape[0]))
    return bool(dev.max() <= tol)


def max_abs_deviation(a, b) -> float:
    a, b = as_matrix(a), as_matrix(b)
    _check_same_dim(a, b)
    return float(np.abs(a - b).max())


def equal_up_to_global_phase(a, b, tol: float = DEFAULT_TOL) -> EquivalenceReport:
    """Check whether ``b == exp(i*phase) * a`` for some real phase.

    The candidate phase is the argument of ``trace(a^dagger b) / dim``, which
    stays well defined even when individual entries are close to zero.
    """
    if tol <= 0:
        raise InvalidArgumentError("tol must be positive")
    a, b = as_matrix(a), as_matrix(b)
    _check_same_dim(a, b)
    tr = np.trace(a.conj().T @ b) / a.shape[0]
    if abs(tr) < _PHASE_FLOOR:
        return EquivalenceReport(False, 0.0, float(np.abs(a - b).max()))
    phase = normalize_angle(cmath.phase(tr))
    dev = float(np.abs(a * cmath.exp(1j * phase) - b).max())
    return EquivalenceReport(dev <= tol, phase, dev)
