"""Controlled single-qubit gates from CNOTs and single-qubit rotations.

Any 2x2 unitary ``u`` is factored as ``u = exp(i*theta) * A X B X C`` with
``A B C = I``. The controlled version is then::

    target:  --C--(+)--B--(+)--A--
    control: ------*--------*--------p(theta)--

When the control is |0> the target sees ``A B C = I``; when it is |1> the
target sees ``A X B X C`` and the phase gate supplies ``exp(i*theta)``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import numerics
from .circuit import Circuit, GateApplication, validate
from .errors import CapacityError, InvalidArgumentError
from .gates import gate_matrix, match_fixed_gate, match_named_phase, phase, ry, rz
from .numerics import EquivalenceReport, normalize_angle
from .simulator import MAX_UNITARY_QUBITS, circuit_unitary

DIAGONAL_TOL = 1e-12
DEGENERATE_TOL = 1e-9
IDENTITY_TOL = 1e-12

# a single-qubit gate in a synthesis recipe: (registry name, params)
Step = tuple[str, tuple[float, ...]]


@dataclass(frozen=True)
class ZyzAngles:
    """``u = exp(i*alpha) * Rz(beta) @ Ry(gamma) @ Rz(delta)``."""

    alpha: float
    beta: float
    gamma: float
    delta: float

    def matrix(self) -> np.ndarray:
        return cmath.exp(1j * self.alpha) * rz(self.beta) @ ry(self.gamma) @ rz(self.delta)


@dataclass(frozen=True, eq=False)
class AbcDecomposition:
    """Factors of ``source = exp(i*theta) * a X b X c`` with ``a b c = I``.

    ``a_steps``/``b_steps``/``c_steps`` list the gates, in application order,
    whose product is exactly the corresponding factor.
    """

    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    theta: float
    source: np.ndarray
    a_steps: tuple[Step, ...] = ()
    b_steps: tuple[Step, ...] = ()
    c_steps: tuple[Step, ...] = ()

    def product(self) -> np.ndarray:
        return self.a @ self.b @ self.c

    def reconstruct(self) -> np.ndarray:
        x = gate_matrix("x")
        return cmath.exp(1j * self.theta) * self.a @ x @ self.b @ x @ self.c


def _require_single_qubit_unitary(u) -> np.ndarray:
    u = numerics.as_matrix(u)
    if u.shape != (2, 2):
        raise InvalidArgumentError(f"expected a 2x2 matrix, got {u.shape[0]}x{u.shape[0]}")
    if not numerics.is_unitary(u, numerics.DEFAULT_TOL):
        dev = float(np.abs(u @ u.conj().T - np.eye(2)).max())
        raise InvalidArgumentError(f"matrix is not unitary (max deviation {dev:.3g})")
    return u


def _arg(z: complex) -> float:
    return cmath.phase(z) if z != 0 else 0.0


def _wrap(angle: float) -> tuple[float, int]:
    """Normalize to (-pi, pi]; also return the number of 2*pi turns removed."""
    wrapped = normalize_angle(angle)
    return wrapped, round((angle - wrapped) / (2 * math.pi))


def zyz_angles(u) -> ZyzAngles:
    u = _require_single_qubit_unitary(u)
    gamma = 2 * math.atan2(abs(u[1, 0]), abs(u[0, 0]))
    alpha = 0.5 * _arg(np.linalg.det(u))
    # v = [[a, -conj(b)], [b, conj(a)]] is special unitary, with
    # a = exp(-i(beta+delta)/2) cos(gamma/2), b = exp(i(beta-delta)/2) sin(gamma/2)
    v = cmath.exp(-1j * alpha) * u
    if gamma < DEGENERATE_TOL:
        beta, delta = -2 * _arg(v[0, 0]), 0.0
    elif abs(gamma - math.pi) < DEGENERATE_TOL:
        beta, delta = 2 * _arg(v[1, 0]), 0.0
    else:
        half_sum, half_diff = -_arg(v[0, 0]), _arg(v[1, 0])
        beta, delta = half_sum + half_diff, half_sum - half_diff
    # Rz(x + 2*pi) = -Rz(x): each turn dropped from beta or delta costs pi of phase
    beta, turns_b = _wrap(beta)
    delta, turns_d = _wrap(delta)
    alpha = normalize_angle(alpha + math.pi * (turns_b + turns_d))
    return ZyzAngles(alpha, beta, gamma, delta)


def _is_identity_step(step: Step) -> bool:
    name, (angle,) = step
    # p has period 2*pi; the rotations only return to +I after 4*pi
    period_angle = angle if name == "p" else angle / 2
    return abs(normalize_angle(period_angle)) <= IDENTITY_TOL


def _rotation_steps(*steps: Step) -> tuple[Step, ...]:
    return tuple(s for s in steps if not _is_identity_step(s))


def abc_decompose(u) -> AbcDecomposition:
    u = _require_single_qubit_unitary(u)
    if abs(u[0, 1]) < DIAGONAL_TOL and abs(u[1, 0]) < DIAGONAL_TOL:
        # u = exp(i*mu) p(lam): A = p(lam/2), B = p(-lam/2), C = I
        mu = _arg(u[0, 0])
        lam = normalize_angle(_arg(u[1, 1]) - mu)
        return AbcDecomposition(
            a=phase(lam / 2),
            b=phase(-lam / 2),
            c=numerics.identity(2),
            theta=normalize_angle(lam / 2 + mu),
            source=u,
            a_steps=_phase_steps(lam / 2),
            b_steps=_phase_steps(-lam / 2),
        )
    z = zyz_angles(u)
    half_gamma = z.gamma / 2
    b_rz = -(z.delta + z.beta) / 2
    c_rz = (z.delta - z.beta) / 2
    return AbcDecomposition(
        a=rz(z.beta) @ ry(half_gamma),
        b=ry(-half_gamma) @ rz(b_rz),
        c=rz(c_rz),
        theta=z.alpha,
        source=u,
        a_steps=_rotation_steps(("ry", (half_gamma,)), ("rz", (z.beta,))),
        b_steps=_rotation_steps(("rz", (b_rz,)), ("ry", (-half_gamma,))),
        c_steps=_rotation_steps(("rz", (c_rz,))),
    )


def _phase_steps(lam: float) -> tuple[Step, ...]:
    return _rotation_steps(("p", (lam,)))


def _single_qubit_op(step: Step, qubit: int) -> GateApplication:
    name, params = step
    m = gate_matrix(name, params)
    named = match_named_phase(params[0]) if name == "p" else match_fixed_gate(m)
    if named is not None:
        return GateApplication(named, (qubit,))
    return GateApplication(name, (qubit,), params)


def synthesize_controlled(dec: AbcDecomposition, control: int, target: int, n: int = 2) -> Circuit:
    """Build controlled-``dec.source`` on ``(control, target)`` of an n-qubit register."""
    if control == target:
        raise InvalidArgumentError("control and target must differ")
    for q in (control, target):
        if not 0 <= q < n:
            raise InvalidArgumentError(f"qubit {q} out of range for {n} qubit(s)")
    ops: list[GateApplication] = [_single_qubit_op(s, target) for s in dec.c_steps]
    target_ops = [_single_qubit_op(s, target) for s in dec.b_steps]
    # with every factor trivial the two CNOTs cancel
    if dec.a_steps or dec.b_steps or dec.c_steps:
        ops.append(GateApplication("cx", (control, target)))
        ops.extend(target_ops)
        ops.append(GateApplication("cx", (control, target)))
    ops.extend(_single_qubit_op(s, target) for s in dec.a_steps)
    theta = normalize_angle(dec.theta)
    if abs(theta) > IDENTITY_TOL:
        ops.append(_single_qubit_op(("p", (theta,)), control))
    return Circuit(n, tuple(op for op in ops if op.gate != "id"))


def decompose_controlled(u, control: int = 0, target: int = 1, n: int = 2) -> Circuit:
    """Decompose, synthesize and discretize in one call."""
    return discretize(synthesize_controlled(abc_decompose(u), control, target, n))


def discretize(c: Circuit) -> Circuit:
    """Replace ``p(lam)`` ops whose angle is on the named-phase table by that gate."""
    problem = validate(c)
    if problem:
        raise InvalidArgumentError(f"invalid circuit: {problem}")
    ops = []
    for op in c.ops:
        if op.gate == "p":
            named = match_named_phase(op.params[0])
            if named is not None:
                op = GateApplication(named, op.qubits)
        ops.append(op)
    return Circuit(c.num_qubits, tuple(ops), c.num_clbits)


def verify_against(c: Circuit, reference, tol: float = numerics.DEFAULT_TOL,
                   mode: str = "exact") -> EquivalenceReport:
    """Compare the unitary of ``c`` with ``reference``.

    ``mode`` is ``"exact"`` (elementwise, phase reported as 0) or ``"phase"``
    (equality up to a global phase). Trailing measurements are ignored.
    """
    reference = numerics.as_matrix(reference)
    if c.num_qubits > MAX_UNITARY_QUBITS:
        raise CapacityError(f"verification supports at most {MAX_UNITARY_QUBITS} qubits")
    if reference.shape[0] != 2**c.num_qubits:
        raise InvalidArgumentError(
            f"reference is {reference.shape[0]}x{reference.shape[0]} but circuit acts on "
            f"{c.num_qubits} qubit(s)"
        )
    if tol <= 0:
        raise InvalidArgumentError("tol must be positive")
    # trailing measurements do not change the unitary part being checked
    u = circuit_unitary(Circuit(c.num_qubits, c.unitary_ops))
    if mode == "exact":
        dev = numerics.max_abs_deviation(u, reference)
        return EquivalenceReport(dev <= tol, 0.0, dev)
    if mode == "phase":
        return numerics.equal_up_to_global_phase(u, reference, tol)
    raise InvalidArgumentError(f"unknown mode {mode!r}; use 'exact' or 'phase'")
