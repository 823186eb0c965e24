import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dense_oracle import circuit_unitary
from pbe.circuit import (
    CX,
    Circuit,
    CircuitError,
    Gate,
    H,
    P,
    X,
    Y,
    adjoint,
    apply_circuit,
    basis_state,
    controlled,
    global_phase,
    is_unitary,
    rz,
    ry,
    unitary_of,
)
from pbe.diag import build_V
from pbe.shift import build_shift


@st.composite
def circuits(draw, max_qubits=5, max_gates=12):
    n = draw(st.integers(1, max_qubits))
    gates = []
    for _ in range(draw(st.integers(0, max_gates))):
        kind = draw(st.sampled_from(["h", "x", "y", "p"]))
        target = draw(st.integers(0, n - 1))
        others = [q for q in range(n) if q != target]
        ctrl_qs = draw(st.lists(st.sampled_from(others), unique=True, max_size=min(2, len(others)))) if others else []
        ctrls = tuple((q, draw(st.integers(0, 1))) for q in ctrl_qs)
        angle = draw(st.floats(-7, 7)) if kind == "p" else 0.0
        gates.append(Gate(kind, target, angle, ctrls))
    return Circuit(n, tuple(gates))


def test_empty_circuit_is_identity():
    psi = np.array([0.6, 0.8j])
    assert np.allclose(apply_circuit(Circuit(1), psi), psi)


def test_phase_on_one():
    out = apply_circuit(Circuit(1, (P(0, 0.9),)), basis_state(1, 1))
    assert out[1] == pytest.approx(np.exp(0.9j), abs=1e-15)


def test_v_on_basis_state():
    out = apply_circuit(build_V(3, 0.7), basis_state(3, 5))
    assert np.allclose(out, np.exp(3.5j) * basis_state(3, 5), atol=1e-14)


def test_hadamard_matrix():
    s = 1 / math.sqrt(2)
    assert np.allclose(unitary_of(Circuit(1, (H(0),))), [[s, s], [s, -s]])


def test_v_quarter_turn():
    assert np.allclose(unitary_of(build_V(2, math.pi / 2)), np.diag([1, 1j, -1, -1j]), atol=1e-15)


def test_left_shift_permutation():
    U = unitary_of(build_shift(2, "left"))
    for k in range(4):
        assert U[(k + 1) % 4, k] == 1


def test_little_endian_cnot():
    # control qubit 0 is the low bit: |01> (index 1) -> |11> (index 3)
    U = unitary_of(Circuit(2, (CX(0, 1),)))
    assert U[3, 1] == 1 and U[0, 0] == 1 and U[2, 2] == 1 and U[1, 3] == 1


def test_adjoint_of_v_negates_angles():
    adj = adjoint(build_V(3, 0.4))
    assert sorted(g.angle for g in adj.gates) == sorted(-g.angle for g in build_V(3, 0.4).gates)
    assert adj.same_as(Circuit(3, tuple(reversed(build_V(3, -0.4).gates))))


def test_adjoint_of_h():
    assert adjoint(Circuit(1, (H(0),))).same_as(Circuit(1, (H(0),)))


def test_select_gate_from_zero_control():
    sel = controlled(build_V(2, 2 * 0.3), [(2, 0)])
    U = unitary_of(sel)
    V2 = np.diag(np.exp(2j * 0.3 * np.arange(4)))
    assert np.allclose(U[:4, :4], V2) and np.allclose(U[4:, 4:], np.eye(4))
    assert np.allclose(U[:4, 4:], 0)


def test_controlled_x_truth_table():
    U = unitary_of(controlled(Circuit(2, (X(1),)), [(0, 1)]))
    assert np.allclose(U, unitary_of(Circuit(2, (CX(0, 1),))))


def test_controlled_rejects_overlap():
    with pytest.raises(CircuitError):
        controlled(Circuit(2, (X(1),)), [(1, 1)])
    with pytest.raises(CircuitError):
        controlled(Circuit(3, (X(2),)), [(0, 1), (0, 0)])


def test_validation_errors():
    with pytest.raises(CircuitError):
        Circuit(2, (X(2),))
    with pytest.raises(CircuitError):
        Gate("p", 0, float("nan"))
    with pytest.raises(CircuitError):
        Gate("z", 0)
    with pytest.raises(CircuitError):
        Gate("x", 0, 0.0, ((0, 1),))
    with pytest.raises(CircuitError):
        apply_circuit(Circuit(2), np.ones(3))


def test_unitary_cap(monkeypatch):
    monkeypatch.setenv("PBE_MAX_QUBITS", "3")
    with pytest.raises(CircuitError):
        unitary_of(Circuit(4))
    assert unitary_of(Circuit(3)).shape == (8, 8)


def test_phase_angle_kept_unreduced():
    assert P(0, 7 * math.pi).angle == 7 * math.pi


def test_gate_kits():
    g = unitary_of(Circuit(1, tuple(global_phase(0, 0.8))))
    assert np.allclose(g, np.exp(0.8j) * np.eye(2))
    assert np.allclose(unitary_of(Circuit(1, tuple(rz(0, 0.6)))), np.diag(np.exp([-0.3j, 0.3j])))
    c, s = math.cos(0.35), math.sin(0.35)
    assert np.allclose(unitary_of(Circuit(1, tuple(ry(0, 0.7)))), [[c, -s], [s, c]])


@settings(max_examples=40, deadline=None)
@given(circuits())
def test_simulator_matches_kronecker_oracle(c):
    assert np.allclose(unitary_of(c), circuit_unitary(c), atol=1e-12)


@settings(max_examples=40, deadline=None)
@given(circuits(), circuits())
def test_composition_homomorphism(a, b):
    n = max(a.num_qubits, b.num_qubits)
    a, b = a.widen(n), b.widen(n)
    assert np.allclose(unitary_of(a.then(b)), unitary_of(b) @ unitary_of(a), atol=1e-12)


@settings(max_examples=40, deadline=None)
@given(circuits(), st.integers(0, 2**32 - 1))
def test_norm_preserved_and_unitary(c, seed):
    rng = np.random.default_rng(seed)
    psi = rng.normal(size=2**c.num_qubits) + 1j * rng.normal(size=2**c.num_qubits)
    psi /= np.linalg.norm(psi)
    assert abs(np.linalg.norm(apply_circuit(c, psi)) - 1) <= 1e-12
    assert is_unitary(unitary_of(c))


@settings(max_examples=40, deadline=None)
@given(circuits())
def test_adjoint_properties(c):
    U = unitary_of(c)
    assert np.allclose(unitary_of(adjoint(c)), U.conj().T, atol=1e-12)
    assert adjoint(adjoint(c)).same_as(c)


@settings(max_examples=30, deadline=None)
@given(circuits(max_qubits=3), st.lists(st.integers(0, 1), min_size=1, max_size=2))
def test_controlled_block_structure(c, pols):
    n = c.num_qubits
    ctrls = [(n + i, p) for i, p in enumerate(pols)]
    full = unitary_of(controlled(c, ctrls))
    N = 2**n
    inner = unitary_of(c)
    match = sum(p << i for i, p in enumerate(pols))
    for block in range(2 ** len(pols)):
        sl = slice(block * N, (block + 1) * N)
        expected = inner if block == match else np.eye(N)
        assert np.allclose(full[sl, sl], expected, atol=1e-12)
