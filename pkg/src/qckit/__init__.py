"""Small quantum-circuit simulator and controlled-gate transpiler."""
from .circuit import Circuit, GateApplication, Violation, circuit_from, validate
from .decomposer import (
    AbcDecomposition,
    ZyzAngles,
    abc_decompose,
    decompose_controlled,
    discretize,
    synthesize_controlled,
    verify_against,
    zyz_angles,
)
from .errors import (
    CapacityError,
    InvalidArgumentError,
    QasmError,
    QcError,
    UnknownGateError,
)
from .gates import controlled, gate_matrix, match_named_phase
from .numerics import (
    EquivalenceReport,
    dagger,
    equal_up_to_global_phase,
    is_unitary,
    kron,
    matmul,
)
from .qasm import emit_qasm, parse_qasm
from .simulator import (
    BlochVector,
    MeasurementCounts,
    StateVector,
    apply_gate,
    basis_state,
    bloch_vector,
    circuit_unitary,
    probabilities,
    run,
    sample,
)

__version__ = "0.1.0"

__all__ = [
    "AbcDecomposition",
    "BlochVector",
    "CapacityError",
    "Circuit",
    "EquivalenceReport",
    "GateApplication",
    "InvalidArgumentError",
    "MeasurementCounts",
    "QasmError",
    "QcError",
    "StateVector",
    "UnknownGateError",
    "Violation",
    "ZyzAngles",
    "abc_decompose",
    "apply_gate",
    "basis_state",
    "bloch_vector",
    "circuit_from",
    "circuit_unitary",
    "controlled",
    "dagger",
    "decompose_controlled",
    "discretize",
    "emit_qasm",
    "equal_up_to_global_phase",
    "gate_matrix",
    "is_unitary",
    "kron",
    "match_named_phase",
    "matmul",
    "parse_qasm",
    "probabilities",
    "run",
    "sample",
    "synthesize_controlled",
    "validate",
    "verify_against",
    "zyz_angles",
]
