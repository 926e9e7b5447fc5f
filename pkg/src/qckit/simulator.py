"""Pure-state state-vector simulation.

Basis index convention: qubit 0 is the most significant bit, so the bit string
``"01"`` means q0=0, q1=1 and sits at index 1. Global phase is kept; a circuit
that maps |11> to i|11> really produces amplitude ``1j``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import numerics
from .circuit import MAX_QUBITS, Circuit, GateApplication, validate
from .errors import CapacityError, InvalidArgumentError
from .gates import gate_matrix

MAX_UNITARY_QUBITS = 10
NORM_TOL = 1e-10
PROB_FLOOR = 1e-15


@dataclass(frozen=True, eq=False)
class StateVector:
    num_qubits: int
    amps: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amps, dtype=np.complex128).reshape(-1)
        if not 1 <= self.num_qubits <= MAX_QUBITS:
            raise CapacityError(f"register size must be in [1, {MAX_QUBITS}], got {self.num_qubits}")
        if amps.size != 2**self.num_qubits:
            raise InvalidArgumentError(f"expected {2**self.num_qubits} amplitudes, got {amps.size}")
        if not np.all(np.isfinite(amps)):
            raise InvalidArgumentError("amplitudes must be finite")
        amps.flags.writeable = False
        object.__setattr__(self, "amps", amps)

    @classmethod
    def from_amplitudes(cls, amps) -> StateVector:
        amps = np.asarray(amps, dtype=np.complex128).reshape(-1)
        n = amps.size.bit_length() - 1
        if n < 1 or amps.size != 1 << n:
            raise InvalidArgumentError(f"amplitude count {amps.size} is not a power of two >= 2")
        return cls(n, amps)

    @property
    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.amps) ** 2)))

    def is_normalized(self, tol: float = NORM_TOL) -> bool:
        return abs(float(np.sum(np.abs(self.amps) ** 2)) - 1.0) <= tol

    def bitstring(self, index: int) -> str:
        return format(index, f"0{self.num_qubits}b")

    def __eq__(self, other):
        if not isinstance(other, StateVector):
            return NotImplemented
        return self.num_qubits == other.num_qubits and np.array_equal(self.amps, other.amps)

    def __hash__(self):
        return hash((self.num_qubits, self.amps.tobytes()))


@dataclass(frozen=True)
class BlochVector:
    x: float
    y: float
    z: float
    purity: float

    @property
    def length(self) -> float:
        return float(np.sqrt(self.x**2 + self.y**2 + self.z**2))

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.x, self.y, self.z)


@dataclass(frozen=True)
class MeasurementCounts:
    shots: int
    counts: dict[str, int]


def basis_state(bits: str) -> StateVector:
    if not 1 <= len(bits) <= MAX_QUBITS:
        raise InvalidArgumentError(f"bit string length must be in [1, {MAX_QUBITS}], got {len(bits)}")
    if set(bits) - {"0", "1"}:
        raise InvalidArgumentError(f"not a bit string: {bits!r}")
    amps = np.zeros(2 ** len(bits), dtype=np.complex128)
    amps[int(bits, 2)] = 1.0
    return StateVector(len(bits), amps)


def _check_op(op: GateApplication, n: int) -> None:
    if op.is_measurement:
        raise InvalidArgumentError("measurements cannot be applied to a state vector")
    problem = validate(Circuit(n, (op,)))
    if problem:
        raise InvalidArgumentError(str(problem))


def _apply_matrix(amps: np.ndarray, n: int, matrix: np.ndarray, qubits: tuple[int, ...]) -> np.ndarray:
    # view the amplitudes as an n-axis tensor (axis k is qubit k), contract the
    # gate against the target axes, then move those axes back into place
    k = len(qubits)
    psi = amps.reshape((2,) * n)
    gate = matrix.reshape((2,) * (2 * k))
    out = np.tensordot(gate, psi, axes=(list(range(k, 2 * k)), list(qubits)))
    out = np.moveaxis(out, list(range(k)), list(qubits))
    return np.ascontiguousarray(out).reshape(-1)


def apply_gate(state: StateVector, op: GateApplication) -> StateVector:
    """Apply one gate without building the full 2^n x 2^n operator."""
    _check_op(op, state.num_qubits)
    if op.gate == "id":
        return state
    m = gate_matrix(op.gate, op.params)
    return StateVector(state.num_qubits, _apply_matrix(state.amps, state.num_qubits, m, op.qubits))


def run(c: Circuit, initial: StateVector) -> StateVector:
    """Apply every gate of ``c`` in order; trailing measurements are skipped."""
    problem = validate(c)
    if problem:
        raise InvalidArgumentError(f"invalid circuit: {problem}")
    if initial.num_qubits != c.num_qubits:
        raise InvalidArgumentError(
            f"state has {initial.num_qubits} qubit(s) but circuit has {c.num_qubits}"
        )
    state = initial
    for op in c.unitary_ops:
        state = apply_gate(state, op)
    return state


def probabilities(state: StateVector) -> dict[str, float]:
    probs = np.abs(state.amps) ** 2
    return {state.bitstring(i): float(p) for i, p in enumerate(probs) if p >= PROB_FLOOR}


def sample(state: StateVector, shots: int, seed: int = 0) -> MeasurementCounts:
    """Draw ``shots`` full-register measurements, reproducibly for a given seed."""
    if shots < 0:
        raise InvalidArgumentError("shots must be non-negative")
    if shots == 0:
        return MeasurementCounts(0, {})
    probs = np.abs(state.amps) ** 2
    probs = probs / probs.sum()
    rng = np.random.default_rng(seed & 0xFFFF_FFFF_FFFF_FFFF)
    drawn = rng.multinomial(shots, probs)
    counts = {state.bitstring(int(i)): int(drawn[i]) for i in np.flatnonzero(drawn)}
    return MeasurementCounts(shots, counts)


def embed(matrix, qubits: tuple[int, ...], n: int) -> np.ndarray:
    """Full 2^n x 2^n operator of a gate acting on ``qubits`` of an n-qubit register.

    Single-qubit gates are built as ``I (x) g (x) I``. Multi-qubit gates are
    filled entry by entry: entry (r, c) is ``g[sub(r), sub(c)]`` when r and c
    agree on every other qubit, else 0.
    """
    m = numerics.as_matrix(matrix)
    if len(qubits) == 1:
        (q,) = qubits
        left = numerics.identity(2**q)
        right = numerics.identity(2 ** (n - q - 1))
        return numerics.kron(numerics.kron(left, m), right)
    dim = 2**n
    idx = np.arange(dim)
    shifts = [n - 1 - q for q in qubits]
    sub = np.zeros(dim, dtype=np.int64)
    for s in shifts:
        sub = (sub << 1) | ((idx >> s) & 1)
    mask = sum(1 << s for s in shifts)
    rest = idx & ~mask
    same_rest = rest[:, None] == rest[None, :]
    return np.where(same_rest, m[sub[:, None], sub[None, :]], 0).astype(np.complex128)


def circuit_unitary(c: Circuit) -> np.ndarray:
    """Product of the embedded gate matrices, last gate leftmost."""
    if c.num_qubits > MAX_UNITARY_QUBITS:
        raise CapacityError(
            f"circuit_unitary supports at most {MAX_UNITARY_QUBITS} qubits, got {c.num_qubits}"
        )
    problem = validate(c)
    if problem:
        raise InvalidArgumentError(f"invalid circuit: {problem}")
    if c.has_measurements:
        raise InvalidArgumentError("circuit_unitary is undefined for circuits with measurements")
    u = numerics.identity(2**c.num_qubits)
    for op in c.ops:
        u = numerics.matmul(embed(gate_matrix(op.gate, op.params), op.qubits, c.num_qubits), u)
    return u


def reduced_density_matrix(state: StateVector, qubit: int) -> np.ndarray:
    """Partial trace over every qubit except ``qubit``."""
    if not 0 <= qubit < state.num_qubits:
        raise InvalidArgumentError(f"qubit {qubit} out of range for {state.num_qubits} qubit(s)")
    psi = state.amps.reshape(2**qubit, 2, 2 ** (state.num_qubits - qubit - 1))
    return np.einsum("aib,ajb->ij", psi, psi.conj())


def bloch_vector(state: StateVector, qubit: int) -> BlochVector:
    rho = reduced_density_matrix(state, qubit)
    # "+ 0.0" turns -0.0 into 0.0 for cleaner output
    return BlochVector(
        x=float(2 * rho[0, 1].real) + 0.0,
        y=float(-2 * rho[0, 1].imag) + 0.0,
        z=float((rho[0, 0] - rho[1, 1]).real) + 0.0,
        purity=float(np.trace(rho @ rho).real),
    )
