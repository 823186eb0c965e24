import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pbe.circuit import controlled, unitary_of
from pbe.diag import build_UC
from pbe.encoding import extract_block
from pbe.shift import ShiftSpec, build_shift, shift_matrix


def test_left_shift_two_qubits():
    L = np.array([[0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]])
    assert np.array_equal(unitary_of(build_shift(2, "left")).real, L)


def test_full_cycle_is_identity():
    for n in (1, 2, 3):
        assert len(build_shift(n, ShiftSpec("left", 2**n))) == 0
        assert np.allclose(unitary_of(build_shift(n, ShiftSpec("right", 3 * 2**n))), np.eye(2**n))


def test_right_shift_times_cosine():
    R = unitary_of(build_shift(2, "right"))
    C = extract_block(build_UC(2, math.pi / 2))
    RC = R @ C
    w = math.pi / 2
    expected = np.zeros((4, 4))
    for k in range(1, 4):
        expected[k - 1, k] = math.cos(k * w)
    expected[3, 0] = 1.0
    assert np.allclose(RC, expected, atol=1e-12)


def test_bad_specs():
    with pytest.raises(ValueError):
        ShiftSpec("up")
    with pytest.raises(ValueError):
        ShiftSpec("left", -1)
    with pytest.raises(ValueError):
        build_shift(0, "left")


@pytest.mark.parametrize("n", range(1, 7))
def test_shift_matrices(n):
    L = unitary_of(build_shift(n, "left"))
    R = unitary_of(build_shift(n, "right"))
    assert np.allclose(L, shift_matrix(n, "left"), atol=1e-12)
    assert np.allclose(R, shift_matrix(n, "right"), atol=1e-12)
    assert np.allclose(L @ R, np.eye(2**n), atol=1e-12)
    for M in (L, R):
        assert np.all(np.sum(np.abs(M) > 0.5, axis=0) == 1)
        assert np.all(np.sum(np.abs(M) > 0.5, axis=1) == 1)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4), st.integers(0, 40), st.sampled_from(["left", "right"]))
def test_powers(n, s, direction):
    U = unitary_of(build_shift(n, ShiftSpec(direction, s)))
    base = shift_matrix(n, direction)
    assert np.allclose(U, np.linalg.matrix_power(base, s), atol=1e-12)


@pytest.mark.parametrize("pol", [0, 1])
def test_controlled_shift(pol):
    n = 3
    U = unitary_of(controlled(build_shift(n, "left"), [(n, pol)]))
    blocks = [np.eye(8), shift_matrix(n, "left")] if pol else [shift_matrix(n, "left"), np.eye(8)]
    assert np.allclose(U[:8, :8], blocks[0]) and np.allclose(U[8:, 8:], blocks[1])
