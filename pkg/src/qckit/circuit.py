"""Circuit intermediate representation and structural validation."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

from .gates import REGISTRY

MAX_QUBITS = 20
MEASURE = "measure"


@dataclass(frozen=True)
class GateApplication:
    """One gate instance. For ``cx`` the control comes first in ``qubits``."""

    gate: str
    qubits: tuple[int, ...]
    params: tuple[float, ...] = ()
    clbit: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "qubits", tuple(int(q) for q in self.qubits))
        object.__setattr__(self, "params", tuple(float(p) for p in self.params))

    @property
    def is_measurement(self) -> bool:
        return self.gate == MEASURE

    @classmethod
    def measure(cls, qubit: int, clbit: int) -> GateApplication:
        return cls(MEASURE, (qubit,), (), clbit)


@dataclass(frozen=True)
class Circuit:
    num_qubits: int
    ops: tuple[GateApplication, ...] = field(default=())
    num_clbits: int = 0

    def __post_init__(self):
        object.__setattr__(self, "ops", tuple(self.ops))

    def __len__(self) -> int:
        return len(self.ops)

    def __iter__(self):
        return iter(self.ops)

    def append(self, *ops: GateApplication) -> Circuit:
        """Return a new circuit with ``ops`` added at the end."""
        return Circuit(self.num_qubits, self.ops + ops, self.num_clbits)

    @property
    def unitary_ops(self) -> tuple[GateApplication, ...]:
        return tuple(op for op in self.ops if not op.is_measurement)

    @property
    def has_measurements(self) -> bool:
        return any(op.is_measurement for op in self.ops)


@dataclass(frozen=True)
class Violation:
    kind: str  # register_size | unknown_gate | arity_mismatch | param_mismatch |
    #            bad_param | bad_index | duplicate_operand | bad_clbit | measurement_order
    message: str
    op_index: int | None = None

    def __str__(self) -> str:
        where = "" if self.op_index is None else f"op {self.op_index}: "
        return where + self.message


def _check_op(op: GateApplication, num_qubits: int, num_clbits: int) -> tuple[str, str] | None:
    if op.is_measurement:
        arity, nparams = 1, 0
    elif op.gate in REGISTRY:
        spec = REGISTRY[op.gate]
        arity, nparams = spec.arity, spec.param_count
    else:
        return "unknown_gate", f"unknown gate {op.gate!r}"
    if len(op.qubits) != arity:
        return "arity_mismatch", f"{op.gate} acts on {arity} qubit(s), got {len(op.qubits)}"
    if len(op.params) != nparams:
        return "param_mismatch", f"{op.gate} takes {nparams} parameter(s), got {len(op.params)}"
    if not all(math.isfinite(p) for p in op.params):
        return "bad_param", f"{op.gate} has a non-finite parameter"
    for q in op.qubits:
        if not 0 <= q < num_qubits:
            return "bad_index", f"qubit index {q} out of range for {num_qubits} qubit(s)"
    if len(set(op.qubits)) != len(op.qubits):
        return "duplicate_operand", f"{op.gate} uses qubit {op.qubits[0]} twice"
    if op.is_measurement:
        if op.clbit is None or not 0 <= op.clbit < num_clbits:
            return "bad_clbit", f"classical bit {op.clbit} out of range for {num_clbits} bit(s)"
    elif op.clbit is not None:
        return "bad_clbit", f"{op.gate} cannot target a classical bit"
    return None


def validate(c: Circuit) -> Violation | None:
    """Return the first structural violation in ``c``, or None if it is valid."""
    if not 1 <= c.num_qubits <= MAX_QUBITS:
        return Violation("register_size", f"register size {c.num_qubits} not in [1, {MAX_QUBITS}]")
    if c.num_clbits < 0:
        return Violation("register_size", "negative classical register size")
    seen_measure = False
    for i, op in enumerate(c.ops):
        problem = _check_op(op, c.num_qubits, c.num_clbits)
        if problem:
            return Violation(problem[0], problem[1], i)
        if op.is_measurement:
            seen_measure = True
        elif seen_measure:
            return Violation("measurement_order", "gate after measurement", i)
    return None


def is_valid(c: Circuit) -> bool:
    return validate(c) is None


def circuit_from(num_qubits: int, ops: Iterable[tuple], num_clbits: int = 0) -> Circuit:
    """Shorthand builder: ``circuit_from(2, [("t", 1), ("cx", 0, 1), ("p", 0, 0.3)])``.

    Each tuple is a gate name followed by its qubits, then its parameters;
    ``("measure", q, c)`` measures qubit ``q`` into classical bit ``c``.
    """
    built = []
    for name, *rest in ops:
        if name == MEASURE:
            built.append(GateApplication.measure(rest[0], rest[1]))
            continue
        arity = REGISTRY[name].arity if name in REGISTRY else 1
        built.append(GateApplication(name, tuple(rest[:arity]), tuple(rest[arity:])))
    return Circuit(num_qubits, tuple(built), num_clbits)
