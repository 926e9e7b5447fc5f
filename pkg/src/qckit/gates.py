"""Gate registry, rotation conventions and the controlled-gate constructor.

Ordering convention: in every multi-qubit matrix the first listed qubit is the
most significant bit of the basis index, so ``|q0 q1>`` with ``q0`` the control
reads off ``controlled(u)`` as ``diag(I, u)``. Hardware toolkits that number
qubits little-endian will show the same gates with rows permuted.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import numerics
from .errors import InvalidArgumentError, UnknownGateError

ANGLE_TOL = 1e-9


@dataclass(frozen=True)
class GateSpec:
    name: str
    arity: int
    param_count: int
    matrix_builder: Callable[..., np.ndarray]

    def matrix(self, params: Sequence[float] = ()) -> np.ndarray:
        if len(params) != self.param_count:
            raise InvalidArgumentError(
                f"gate {self.name!r} takes {self.param_count} parameter(s), got {len(params)}"
            )
        m = self.matrix_builder(*(float(p) for p in params))
        m.flags.writeable = False
        return m


def _fixed(rows) -> Callable[[], np.ndarray]:
    m = np.array(rows, dtype=np.complex128)
    return lambda: m.copy()


def phase(lam: float) -> np.ndarray:
    return np.array([[1, 0], [0, cmath.exp(1j * lam)]], dtype=np.complex128)


def rz(theta: float) -> np.ndarray:
    return np.array(
        [[cmath.exp(-0.5j * theta), 0], [0, cmath.exp(0.5j * theta)]], dtype=np.complex128
    )


def ry(theta: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=np.complex128)


def rx(theta: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -1j * s], [-1j * s, c]], dtype=np.complex128)


_R2 = 1 / math.sqrt(2)
_T = cmath.exp(0.25j * math.pi)

REGISTRY: dict[str, GateSpec] = {
    spec.name: spec
    for spec in (
        GateSpec("id", 1, 0, _fixed([[1, 0], [0, 1]])),
        GateSpec("x", 1, 0, _fixed([[0, 1], [1, 0]])),
        GateSpec("y", 1, 0, _fixed([[0, -1j], [1j, 0]])),
        GateSpec("z", 1, 0, _fixed([[1, 0], [0, -1]])),
        GateSpec("h", 1, 0, _fixed([[_R2, _R2], [_R2, -_R2]])),
        GateSpec("s", 1, 0, _fixed([[1, 0], [0, 1j]])),
        GateSpec("sdg", 1, 0, _fixed([[1, 0], [0, -1j]])),
        GateSpec("t", 1, 0, _fixed([[1, 0], [0, _T]])),
        GateSpec("tdg", 1, 0, _fixed([[1, 0], [0, _T.conjugate()]])),
        GateSpec(
            "cx", 2, 0,
            _fixed([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]),
        ),
        GateSpec("p", 1, 1, phase),
        GateSpec("rz", 1, 1, rz),
        GateSpec("ry", 1, 1, ry),
        GateSpec("rx", 1, 1, rx),
    )
}

# p(lambda) angles that coincide exactly with a named gate
NAMED_PHASES: dict[str, float] = {
    "id": 0.0,
    "t": math.pi / 4,
    "tdg": -math.pi / 4,
    "s": math.pi / 2,
    "sdg": -math.pi / 2,
    "z": math.pi,
}


def gate_spec(name: str) -> GateSpec:
    try:
        return REGISTRY[name]
    except KeyError:
        raise UnknownGateError(name) from None


def gate_matrix(name: str, params: Sequence[float] = ()) -> np.ndarray:
    return gate_spec(name).matrix(params)


def controlled(u) -> np.ndarray:
    """Two-qubit controlled-``u``: identity when the control (first qubit) is 0."""
    u = numerics.as_matrix(u)
    if u.shape != (2, 2):
        raise InvalidArgumentError("controlled() needs a 2x2 matrix")
    if not numerics.is_unitary(u, numerics.DEFAULT_TOL):
        raise InvalidArgumentError("controlled() needs a unitary matrix")
    out = numerics.identity(4)
    out[2:, 2:] = u
    return out


def match_named_phase(lam: float) -> str | None:
    """Name of the fixed gate equal to ``p(lam)``, if there is one."""
    lam = numerics.normalize_angle(lam)
    for name, ref in NAMED_PHASES.items():
        if abs(numerics.normalize_angle(lam - ref)) <= ANGLE_TOL:
            return name
    return None


def match_fixed_gate(m, tol: float = 1e-12) -> str | None:
    """Name of a parameterless 1-qubit registry gate exactly equal to ``m``."""
    m = numerics.as_matrix(m)
    if m.shape != (2, 2):
        return None
    for spec in REGISTRY.values():
        if spec.arity == 1 and spec.param_count == 0:
            if np.abs(spec.matrix() - m).max() <= tol:
                return spec.name
    return None
