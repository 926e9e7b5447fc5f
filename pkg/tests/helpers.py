"""Shared generators and brute-force oracles for the test suite."""
import math

import numpy as np

from qckit.circuit import Circuit, GateApplication
from qckit.gates import REGISTRY

ONE_QUBIT = [n for n, s in REGISTRY.items() if s.arity == 1]
PARAM_GATES = [n for n, s in REGISTRY.items() if s.param_count]


def random_unitary(rng, dim=2):
    """Haar-distributed unitary: QR of a complex Gaussian matrix, phases fixed."""
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_state(rng, n):
    v = rng.standard_normal(2**n) + 1j * rng.standard_normal(2**n)
    return v / np.linalg.norm(v)


def random_op(rng, n, gates=None):
    names = gates or (list(REGISTRY) if n > 1 else ONE_QUBIT)
    name = names[rng.integers(len(names))]
    spec = REGISTRY[name]
    qubits = tuple(int(q) for q in rng.permutation(n)[: spec.arity])
    params = tuple(float(rng.uniform(-2 * math.pi, 2 * math.pi)) for _ in range(spec.param_count))
    return GateApplication(name, qubits, params)


def random_circuit(rng, max_qubits=5, max_depth=20, gates=None, measure=False):
    n = int(rng.integers(1, max_qubits + 1))
    depth = int(rng.integers(0, max_depth + 1))
    ops = [random_op(rng, n, gates) for _ in range(depth)]
    nclbits = 0
    if measure:
        nclbits = int(rng.integers(0, n + 1))
        for c in range(nclbits):
            ops.append(GateApplication.measure(int(rng.integers(n)), c))
    return Circuit(n, tuple(ops), nclbits)


def kron_oracle(a, b):
    """Kronecker product straight from its index definition."""
    da, db = a.shape[0], b.shape[0]
    out = np.zeros((da * db, da * db), dtype=complex)
    for r1 in range(da):
        for c1 in range(da):
            for r2 in range(db):
                for c2 in range(db):
                    out[r1 * db + r2, c1 * db + c2] = a[r1, c1] * b[r2, c2]
    return out


def embed_oracle(gate, qubits, n):
    """Operator of ``gate`` on ``qubits`` built column by column from basis kets."""
    dim = 2**n
    out = np.zeros((dim, dim), dtype=complex)
    for col in range(dim):
        bits = [(col >> (n - 1 - q)) & 1 for q in range(n)]
        sub_in = 0
        for q in qubits:
            sub_in = 2 * sub_in + bits[q]
        for sub_out in range(2 ** len(qubits)):
            amp = gate[sub_out, sub_in]
            if amp == 0:
                continue
            new_bits = list(bits)
            for k, q in enumerate(qubits):
                new_bits[q] = (sub_out >> (len(qubits) - 1 - k)) & 1
            row = int("".join(map(str, new_bits)), 2)
            out[row, col] += amp
    return out


def best_phase_deviation(a, b, steps=20000):
    """Smallest max|e^{i phi} a - b| over a fine grid of phi."""
    phis = np.linspace(-math.pi, math.pi, steps, endpoint=False)
    return min(float(np.abs(np.exp(1j * p) * a - b).max()) for p in phis)


def params_close(c1, c2, tol=1e-15):
    if (c1.num_qubits, c1.num_clbits, len(c1.ops)) != (c2.num_qubits, c2.num_clbits, len(c2.ops)):
        return False
    for a, b in zip(c1.ops, c2.ops):
        if (a.gate, a.qubits, a.clbit, len(a.params)) != (b.gate, b.qubits, b.clbit, len(b.params)):
            return False
        if any(abs(x - y) > tol for x, y in zip(a.params, b.params)):
            return False
    return True
