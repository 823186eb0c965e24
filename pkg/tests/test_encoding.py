import json
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pbe.circuit import Circuit, CircuitError, H, unitary_of
from pbe.diag import build_UC, cos_matrix, p0_closed_form
from pbe.encoding import BlockEncoding, extract_block, success_probability, verify_block, wrap_unitary
from pbe.lcu import BandedSpec, banded_dense, build_banded
from pbe.shift import build_shift


def test_extract_cosine_quarter_turn():
    assert np.allclose(extract_block(build_UC(2, math.pi / 2)), np.diag([1, 0, -1, 0]), atol=1e-15)


def test_extract_bare_unitary():
    c = build_shift(3, "left")
    assert np.allclose(extract_block(wrap_unitary(c)), unitary_of(c))


def test_extract_respects_cap():
    be = wrap_unitary(Circuit(5))
    with pytest.raises(CircuitError):
        extract_block(be, max_qubits=4)


def test_extract_with_nonzero_flag():
    be = BlockEncoding(build_UC(2, 0.6).circuit, 2, 1, 1.0, flag=(1,))
    U = unitary_of(be.circuit)
    assert np.allclose(extract_block(be), U[4:, 4:])


def test_block_encoding_validation():
    with pytest.raises(CircuitError):
        BlockEncoding(Circuit(3), 2, 2)
    with pytest.raises(ValueError):
        BlockEncoding(Circuit(3), 2, 1, alpha=0.0)
    with pytest.raises(ValueError):
        BlockEncoding(Circuit(3), 2, 1, flag=(0, 0))


def test_verify_identity():
    rep = verify_block(wrap_unitary(Circuit(2)), np.eye(4))
    assert rep.max_abs_error == 0 and rep.passed


def test_verify_wrong_frequency():
    w, wrong = 0.9, 1.2
    rep = verify_block(build_UC(2, w), cos_matrix(2, wrong))
    assert rep.max_abs_error >= abs(math.cos(w) - math.cos(wrong))
    assert not rep.passed


def test_verify_dimension_mismatch():
    with pytest.raises(ValueError):
        verify_block(build_UC(2, 0.3), np.eye(3))


def test_report_json_fields():
    rep = json.loads(verify_block(build_UC(2, 0.3), cos_matrix(2, 0.3)).to_json())
    assert set(rep) == {"max_abs_error", "alpha", "success_probability"}


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 5), st.floats(0, 2 * math.pi))
def test_verify_random_cosines(n, w):
    rep = verify_block(build_UC(n, w), cos_matrix(n, w))
    assert rep.max_abs_error <= 1e-12
    assert 0 <= rep.success_probability <= 1


def test_success_probability_basis_state():
    for k in range(8):
        psi = np.zeros(8)
        psi[k] = 1
        assert success_probability(build_UC(3, 0.7), psi) == pytest.approx(math.cos(0.7 * k) ** 2, abs=1e-12)


def test_success_probability_zero_frequency():
    rng = np.random.default_rng(11)
    psi = rng.normal(size=8) + 1j * rng.normal(size=8)
    assert success_probability(build_UC(3, 0.0), psi / np.linalg.norm(psi)) == pytest.approx(1.0, abs=1e-12)


def test_success_probability_needs_unit_input():
    with pytest.raises(ValueError):
        success_probability(build_UC(2, 0.1), np.ones(4))


def test_success_probability_banded_uniform():
    spec = BandedSpec(0.5, 0.2, (0.4, 0.3, 0.2, 0.6), (1, -1, 1, 1))
    be = build_banded(3, spec)
    psi = np.full(8, 1 / math.sqrt(8))
    expected = np.linalg.norm(banded_dense(3, spec) @ psi) ** 2 / be.alpha**2
    assert success_probability(be, psi) == pytest.approx(expected, abs=1e-12)


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 4), st.floats(0, 2 * math.pi), st.integers(0, 2**32 - 1))
def test_probability_matches_target(n, w, seed):
    rng = np.random.default_rng(seed)
    psi = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
    psi /= np.linalg.norm(psi)
    be = build_UC(n, w)
    assert abs(success_probability(be, psi) - np.linalg.norm(cos_matrix(n, w) @ psi) ** 2) <= 1e-10
    assert abs(success_probability(be, psi) - p0_closed_form(psi, w)) <= 1e-12


def test_block_linear_in_weights():
    base = (0.3, 0.2, 0.1, 0.4)
    a = extract_block(build_banded(2, BandedSpec(0.8, 0.0, base)))
    b = extract_block(build_banded(2, BandedSpec(0.8, 0.0, tuple(3 * w for w in base))))
    assert np.allclose(3 * a, b, atol=1e-12)
    # the normalized block does not move
    assert np.allclose(a / 1.0, b / 3.0, atol=1e-12)


def test_registers_listed():
    be = build_banded(2, BandedSpec(0.8))
    assert be.registers == (("cos", 1), ("data", 2))
    assert be.flag == (0, 0, 0)


def test_hadamard_wrap():
    be = wrap_unitary(Circuit(1, (H(0),)))
    assert be.n_anc == 0 and np.allclose(extract_block(be), unitary_of(Circuit(1, (H(0),))))
