"""Command-line interface: ``qc simulate|decompose|verify|bloch``.

Exit codes: 0 success / equivalent, 1 verified not equivalent, 2 input error,
3 capacity error. Results go to stdout (JSON, or circuit text for
``decompose``); diagnostics go to stderr.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict

import numpy as np

from . import numerics
from .circuit import Circuit
from .decomposer import abc_decompose, discretize, synthesize_controlled, verify_against
from .errors import CapacityError, QcError
from .gates import REGISTRY, controlled, gate_matrix
from .qasm import emit_qasm, parse_qasm
from .simulator import basis_state, bloch_vector, probabilities, run, sample

EXIT_OK, EXIT_NOT_EQUIVALENT, EXIT_INPUT, EXIT_CAPACITY = 0, 1, 2, 3


class InputError(Exception):
    """Bad command-line input; reported on stderr with exit code 2."""


def reference_matrix(name: str) -> np.ndarray:
    fixed = {
        "csqrtz": controlled(gate_matrix("s")),
        "cz": controlled(gate_matrix("z")),
        "identity2": numerics.identity(2),
        "identity4": numerics.identity(4),
    }
    if name in fixed:
        return fixed[name]
    spec = REGISTRY.get(name)
    if spec is None or spec.param_count:
        known = sorted([n for n, s in REGISTRY.items() if not s.param_count] + list(fixed))
        raise InputError(f"unknown reference {name!r}; choose from {', '.join(known)}")
    return np.array(spec.matrix())


def read_matrix(path: str) -> np.ndarray:
    """Read a matrix file: one row per line, entries like ``0.5-0.5j``."""
    rows = []
    with open(path) as f:
        for lineno, line in enumerate(f, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                rows.append([complex(tok) for tok in line.split()])
            except ValueError as exc:
                raise InputError(f"{path}:{lineno}: bad matrix entry ({exc})") from None
    if not rows or any(len(r) != len(rows) for r in rows):
        raise InputError(f"{path}: matrix must be square and non-empty")
    return numerics.as_matrix(rows)


def read_circuit(path: str) -> Circuit:
    if path == "-":
        return parse_qasm(sys.stdin.read())
    with open(path) as f:
        return parse_qasm(f.read())


def _initial_state(c: Circuit, bits: str | None):
    bits = "0" * c.num_qubits if bits is None else bits
    if len(bits) != c.num_qubits:
        raise InputError(f"--init has {len(bits)} bit(s) but the circuit has {c.num_qubits} qubit(s)")
    return basis_state(bits)


def _bloch_list(state) -> list[dict]:
    return [{"qubit": q, **asdict(bloch_vector(state, q))} for q in range(state.num_qubits)]


def _emit_json(doc) -> None:
    json.dump(doc, sys.stdout, indent=2)
    sys.stdout.write("\n")


def cmd_simulate(args) -> int:
    c = read_circuit(args.file)
    state = run(c, _initial_state(c, args.init))
    report = {
        "num_qubits": state.num_qubits,
        "amplitudes": [[float(a.real), float(a.imag)] for a in state.amps],
        "probabilities": probabilities(state),
        "counts": None,
        "bloch": None,
    }
    if args.shots > 0:
        report["counts"] = asdict(sample(state, args.shots, args.seed))
    if args.bloch:
        report["bloch"] = _bloch_list(state)
    _emit_json(report)
    return EXIT_OK


def cmd_bloch(args) -> int:
    c = read_circuit(args.file)
    _emit_json(_bloch_list(run(c, _initial_state(c, args.init))))
    return EXIT_OK


def cmd_decompose(args) -> int:
    if args.matrix:
        u = read_matrix(args.matrix)
    elif args.gate:
        u = reference_matrix(args.gate)
    else:
        raise InputError("give a gate name or --matrix FILE")
    if u.shape != (2, 2):
        raise InputError(f"decompose needs a single-qubit (2x2) unitary, got {u.shape[0]}x{u.shape[0]}")
    if not numerics.is_unitary(u, numerics.DEFAULT_TOL):
        dev = float(np.abs(u @ u.conj().T - np.eye(2)).max())
        raise InputError(f"matrix is not unitary: max deviation of U U^dagger from I is {dev:.6g}")
    c = discretize(synthesize_controlled(abc_decompose(u), args.control, args.target, args.qubits))
    sys.stdout.write(emit_qasm(c))
    return EXIT_OK


def cmd_verify(args) -> int:
    c = read_circuit(args.file)
    ref = read_matrix(args.matrix) if args.matrix else reference_matrix(args.ref)
    report = verify_against(c, ref, args.tol, args.mode)
    _emit_json({"mode": args.mode, **asdict(report)})
    return EXIT_OK if report.equivalent else EXIT_NOT_EQUIVALENT


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="run a circuit on a basis state and print a JSON report")
    p.add_argument("file", help="circuit file, or - for stdin")
    p.add_argument("--init", help="initial bit string, qubit 0 first (default all zeros)")
    p.add_argument("--shots", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--bloch", action="store_true", help="include per-qubit Bloch vectors")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("bloch", help="print per-qubit Bloch coordinates after a run")
    p.add_argument("file")
    p.add_argument("--init")
    p.set_defaults(func=cmd_bloch)

    p = sub.add_parser("decompose", help="emit a controlled-U circuit over basis gates")
    p.add_argument("gate", nargs="?", help="reference gate name, e.g. s")
    p.add_argument("--matrix", help="2x2 matrix file instead of a gate name")
    p.add_argument("--control", type=int, default=0)
    p.add_argument("--target", type=int, default=1)
    p.add_argument("--qubits", type=int, default=2)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("verify", help="compare a circuit's unitary with a reference")
    p.add_argument("file", nargs="?", default="-")
    ref = p.add_mutually_exclusive_group(required=True)
    ref.add_argument("--ref", help="reference name (e.g. csqrtz, cz, identity4)")
    ref.add_argument("--matrix", help="reference matrix file")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", dest="mode", action="store_const", const="exact")
    mode.add_argument("--phase", dest="mode", action="store_const", const="phase")
    p.add_argument("--tol", type=float, default=numerics.DEFAULT_TOL)
    p.set_defaults(func=cmd_verify, mode="exact")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CapacityError as exc:
        print(f"qc: capacity error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (QcError, InputError, OSError) as exc:
        print(f"qc: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
