import cmath
import math

import numpy as np
import pytest

from helpers import best_phase_deviation, random_state, random_unitary
from qckit.circuit import Circuit, circuit_from
from qckit.decomposer import (
    abc_decompose,
    decompose_controlled,
    discretize,
    synthesize_controlled,
    verify_against,
    zyz_angles,
)
from qckit.errors import CapacityError, InvalidArgumentError
from qckit.gates import controlled, gate_matrix, ry, rz
from qckit.numerics import identity
from qckit.simulator import StateVector, circuit_unitary, run

X = gate_matrix("x")
PI = math.pi


def g(name, *params):
    return gate_matrix(name, params)


def assert_abc_invariants(dec, u, tol=1e-10):
    np.testing.assert_allclose(dec.a @ dec.b @ dec.c, identity(2), atol=tol)
    np.testing.assert_allclose(cmath.exp(1j * dec.theta) * dec.a @ X @ dec.b @ X @ dec.c, u, atol=tol)


# -- ZYZ angles --

def test_zyz_identity():
    z = zyz_angles(identity(2))
    assert (z.alpha, z.beta, z.gamma, z.delta) == pytest.approx((0, 0, 0, 0), abs=1e-12)


def test_zyz_z():
    # e^{i pi/2} Rz(pi) = i diag(-i, i) = diag(1, -1)
    np.testing.assert_allclose(cmath.exp(0.5j * PI) * rz(PI), g("z"), atol=1e-15)
    z = zyz_angles(g("z"))
    assert (z.alpha, z.beta, z.gamma, z.delta) == pytest.approx((PI / 2, PI, 0, 0), abs=1e-12)


def test_zyz_h():
    # e^{i pi/2} Ry(pi/2) Rz(pi) = H
    np.testing.assert_allclose(cmath.exp(0.5j * PI) * ry(PI / 2) @ rz(PI), g("h"), atol=1e-15)
    z = zyz_angles(g("h"))
    assert (z.alpha, z.beta, z.gamma, z.delta) == pytest.approx((PI / 2, 0, PI / 2, PI), abs=1e-12)


@pytest.mark.parametrize("name", ["x", "y", "s", "t", "sdg", "tdg", "h", "z", "id"])
def test_zyz_reconstructs_named(name):
    z = zyz_angles(g(name))
    np.testing.assert_allclose(z.matrix(), g(name), atol=1e-10)


@pytest.mark.parametrize("seed", range(200))
def test_zyz_reconstructs_random(seed):
    u = random_unitary(np.random.default_rng(seed))
    z = zyz_angles(u)
    np.testing.assert_allclose(z.matrix(), u, atol=1e-10)
    assert 0 <= z.gamma <= PI
    for angle in (z.alpha, z.beta, z.delta):
        assert -PI < angle <= PI


@pytest.mark.parametrize("u", [g("rz", 0.3) * cmath.exp(0.7j), g("ry", PI) @ g("rz", 1.2), g("x") @ g("p", 2.0)])
def test_zyz_degenerate_sets_delta_zero(u):
    z = zyz_angles(u)
    assert z.delta == 0.0
    np.testing.assert_allclose(z.matrix(), u, atol=1e-10)


def test_zyz_rejects_non_unitary():
    with pytest.raises(InvalidArgumentError):
        zyz_angles([[1, 0], [0, 2]])
    with pytest.raises(InvalidArgumentError):
        zyz_angles(identity(4))


# -- ABC factors --

def test_abc_sqrt_z_uses_t_gates():
    dec = abc_decompose(g("s"))
    np.testing.assert_allclose(dec.a, g("t"), atol=1e-15)
    np.testing.assert_allclose(dec.b, g("tdg"), atol=1e-15)
    np.testing.assert_array_equal(dec.c, identity(2))
    assert dec.theta == pytest.approx(PI / 4, abs=1e-15)
    assert_abc_invariants(dec, g("s"))


def test_abc_z_uses_s_gates():
    dec = abc_decompose(g("z"))
    np.testing.assert_allclose(dec.a, g("s"), atol=1e-15)
    np.testing.assert_allclose(dec.b, g("sdg"), atol=1e-15)
    np.testing.assert_array_equal(dec.c, identity(2))
    assert dec.theta == pytest.approx(PI / 2, abs=1e-15)
    assert_abc_invariants(dec, g("z"))


def test_abc_identity():
    dec = abc_decompose(identity(2))
    for m in (dec.a, dec.b, dec.c):
        np.testing.assert_allclose(m, identity(2), atol=1e-15)
    assert dec.theta == 0


@pytest.mark.parametrize("seed", range(300))
def test_abc_random(seed):
    u = random_unitary(np.random.default_rng(seed))
    assert_abc_invariants(abc_decompose(u), u, tol=1e-9)


@pytest.mark.parametrize(
    "u",
    [g("s"), g("z"), g("t"), g("tdg"), g("p", 2.9), g("rz", -1.3), cmath.exp(0.4j) * g("p", -3.0), -identity(2)],
)
def test_diagonal_fast_path_and_zyz_path_agree(u):
    fast = abc_decompose(u)
    assert_abc_invariants(fast, u)
    # force the general route by feeding the same angles through the ZYZ branch
    z = zyz_angles(u)
    a = rz(z.beta) @ ry(z.gamma / 2)
    b = ry(-z.gamma / 2) @ rz(-(z.delta + z.beta) / 2)
    c = rz((z.delta - z.beta) / 2)
    np.testing.assert_allclose(a @ b @ c, identity(2), atol=1e-10)
    np.testing.assert_allclose(cmath.exp(1j * z.alpha) * a @ X @ b @ X @ c, u, atol=1e-10)


def test_recipe_steps_rebuild_factors():
    u = random_unitary(np.random.default_rng(42))
    dec = abc_decompose(u)
    for factor, steps in ((dec.a, dec.a_steps), (dec.b, dec.b_steps), (dec.c, dec.c_steps)):
        m = identity(2)
        for name, params in steps:
            m = gate_matrix(name, params) @ m
        np.testing.assert_allclose(m, factor, atol=1e-12)


# -- synthesis --

def test_synthesize_sqrt_z_is_five_ops():
    c = synthesize_controlled(abc_decompose(g("s")), 0, 1, 2)
    assert [(op.gate, op.qubits) for op in c.ops] == [
        ("cx", (0, 1)),
        ("tdg", (1,)),
        ("cx", (0, 1)),
        ("t", (1,)),
        ("t", (0,)),
    ]
    np.testing.assert_allclose(circuit_unitary(c), np.diag([1, 1, 1, 1j]), atol=1e-10)


def test_synthesize_identity_is_empty():
    assert synthesize_controlled(abc_decompose(identity(2)), 0, 1, 2) == Circuit(2)


def test_synthesize_z_is_controlled_z():
    c = synthesize_controlled(abc_decompose(g("z")), 0, 1, 2)
    assert {op.gate for op in c.ops} == {"cx", "s", "sdg"}
    cz = np.block([[identity(2), np.zeros((2, 2))], [np.zeros((2, 2)), g("z")]])
    np.testing.assert_allclose(circuit_unitary(c), cz, atol=1e-10)


def test_synthesize_global_phase_only():
    # e^{i a} I controlled is just a phase gate on the control
    u = cmath.exp(0.9j) * identity(2)
    c = synthesize_controlled(abc_decompose(u), 0, 1, 2)
    assert [op.gate for op in c.ops] == ["p"]
    np.testing.assert_allclose(circuit_unitary(c), controlled(u), atol=1e-12)


@pytest.mark.parametrize("seed", range(150))
def test_synthesize_random_exact(seed):
    u = random_unitary(np.random.default_rng(seed))
    c = synthesize_controlled(abc_decompose(u), 0, 1, 2)
    np.testing.assert_allclose(circuit_unitary(c), controlled(u), atol=1e-9)


@pytest.mark.parametrize("seed", range(40))
def test_control_off_leaves_target_alone(seed):
    rng = np.random.default_rng(seed)
    c = synthesize_controlled(abc_decompose(random_unitary(rng)), 0, 1, 2)
    phi = random_state(rng, 1)
    state = StateVector(2, np.kron([1, 0], phi))
    np.testing.assert_allclose(run(c, state).amps, state.amps, atol=1e-9)


@pytest.mark.parametrize("control, target", [(1, 0), (2, 0), (0, 2)])
def test_synthesize_other_wires(control, target):
    u = random_unitary(np.random.default_rng(control * 3 + target))
    c = synthesize_controlled(abc_decompose(u), control, target, 3)
    ident = identity(2)
    # oracle: controlled-u on (control, target) via projectors
    p0, p1 = np.diag([1, 0]), np.diag([0, 1])
    ops0 = [ident] * 3
    ops1 = [ident] * 3
    ops0[control] = p0
    ops1[control], ops1[target] = p1, u
    ref = np.kron(np.kron(ops0[0], ops0[1]), ops0[2]) + np.kron(np.kron(ops1[0], ops1[1]), ops1[2])
    np.testing.assert_allclose(circuit_unitary(c), ref, atol=1e-9)


def test_synthesize_rejects_clashes():
    dec = abc_decompose(g("s"))
    with pytest.raises(InvalidArgumentError):
        synthesize_controlled(dec, 1, 1, 2)
    with pytest.raises(InvalidArgumentError):
        synthesize_controlled(dec, 0, 2, 2)


# -- discretize --

@pytest.mark.parametrize(
    "angle, name",
    [(PI / 4, "t"), (-PI / 2, "sdg"), (PI / 2, "s"), (-PI / 4, "tdg"), (PI, "z"), (0.0, "id")],
)
def test_discretize_named(angle, name):
    c = circuit_from(1, [("p", 0, angle)])
    out = discretize(c)
    assert out.ops[0].gate == name and out.ops[0].params == ()
    np.testing.assert_allclose(circuit_unitary(out), circuit_unitary(c), atol=1e-12)


def test_discretize_leaves_others():
    c = circuit_from(2, [("p", 0, 0.3), ("rz", 1, PI / 4), ("cx", 0, 1)])
    assert discretize(c) == c


@pytest.mark.parametrize("seed", range(20))
def test_discretize_preserves_unitary(seed):
    rng = np.random.default_rng(seed)
    angles = rng.integers(-8, 9, size=6) * PI / 4 + np.where(rng.random(6) < 0.3, 0.1, 0.0)
    c = circuit_from(2, [("p", int(i % 2), float(a)) for i, a in enumerate(angles)] + [("cx", 0, 1)])
    np.testing.assert_allclose(circuit_unitary(discretize(c)), circuit_unitary(c), atol=1e-12)


# -- verification --

def test_verify_csqrtz_exact():
    c = decompose_controlled(g("s"))
    r = verify_against(c, np.diag([1, 1, 1, 1j]), 1e-10, "exact")
    assert r.equivalent and r.max_abs_deviation <= 1e-10


def test_verify_empty_identity():
    assert verify_against(Circuit(2), identity(4), 1e-3, "exact").equivalent


@pytest.mark.parametrize("mode", ["exact", "phase"])
def test_verify_x_against_z(mode):
    assert best_phase_deviation(g("x"), g("z")) > 0.99
    r = verify_against(circuit_from(1, [("x", 0)]), g("z"), 1e-10, mode)
    assert not r.equivalent


def test_verify_phase_mode_reports_phase():
    c = circuit_from(1, [("rz", 0, 1.0)])
    r = verify_against(c, g("p", 1.0), 1e-10, "phase")
    assert r.equivalent and r.phase == pytest.approx(0.5)
    assert not verify_against(c, g("p", 1.0), 1e-10, "exact").equivalent


def test_verify_errors():
    with pytest.raises(InvalidArgumentError):
        verify_against(Circuit(2), identity(2))
    with pytest.raises(InvalidArgumentError):
        verify_against(Circuit(1), identity(2), mode="fuzzy")
    with pytest.raises(CapacityError):
        verify_against(Circuit(11), identity(2))
