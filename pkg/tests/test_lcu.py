import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pbe.circuit import Circuit, H, apply_circuit, basis_state, unitary_of
from pbe.diag import build_UC, build_US
from pbe.encoding import extract_block
from pbe.lcu import (
    BandedSpec,
    FourierSpec,
    LcuSpec,
    LcuTerm,
    TwoFrequencySpec,
    banded_dense,
    build_banded,
    build_fourier_diagonal,
    build_prep,
    build_select,
    build_two_frequency,
    lcu_dense,
    lcu_encoding,
)
from pbe.shift import build_shift, shift_matrix


def _prep_state(weights):
    c = build_prep(weights)
    return apply_circuit(c, basis_state(c.num_qubits, 0)) if c.num_qubits else np.ones(1)


def test_prep_uniform_is_hadamards():
    assert build_prep([1, 1, 1, 1]).same_as(Circuit(2, (H(0), H(1))))


def test_prep_single_weight():
    assert np.allclose(_prep_state([1, 0]), [1, 0])


def test_prep_three_to_one():
    assert np.allclose(_prep_state([3, 1]), [math.sqrt(0.75), 0.5], atol=1e-15)


def test_prep_rejects_zero():
    with pytest.raises(ValueError):
        build_prep([0, 0])
    with pytest.raises(ValueError):
        build_prep([1, -1])


@settings(max_examples=40, deadline=None)
@given(st.lists(st.floats(0, 5), min_size=1, max_size=9).filter(lambda w: sum(w) > 1e-3))
def test_prep_amplitudes(weights):
    psi = _prep_state(weights)
    w = np.zeros(len(psi))
    w[: len(weights)] = weights
    assert np.allclose(psi, np.sqrt(w / w.sum()), atol=1e-12)
    c = build_prep(weights)
    if c.num_qubits:
        U = unitary_of(c)
        assert np.allclose(U.conj().T @ U, np.eye(len(psi)), atol=1e-12)


def test_select_single_term_is_plain_circuit():
    v = build_shift(2, "left")
    assert build_select([LcuTerm(1.0, v)], 2).same_as(v)


def test_select_signed_identity():
    sel = build_select([LcuTerm(1.0, Circuit(1)), LcuTerm(1.0, Circuit(1), -1)], 1)
    assert np.allclose(unitary_of(sel), np.diag([1, 1, -1, -1]), atol=1e-15)


def test_select_register_too_small():
    terms = [LcuTerm(1.0, Circuit(1)) for _ in range(3)]
    with pytest.raises(ValueError):
        build_select(terms, 1, data=[1])


def test_small_example_matrix():
    block = extract_block(build_banded(2, BandedSpec(math.pi / 2)))
    expected = np.array(
        [[math.cos(0) + 1, 1, 0, 1],
         [1, math.cos(math.pi / 2) + 1, 1, 0],
         [0, 1, math.cos(math.pi) + 1, 1],
         [1, 0, 1, math.cos(3 * math.pi / 2) + 1]]
    ) / 4  # fmt: skip
    assert np.max(np.abs(block - expected)) <= 1e-12


def test_banded_layout():
    be = build_banded(3, BandedSpec(0.4, 0.0, (1, 1, 1, 1)))
    assert be.n_anc == 3 and be.alpha == 4


def test_single_shift_term():
    be = build_banded(3, BandedSpec(0.4, 0.0, (0, 1, 0, 0)))
    assert be.alpha == 1
    assert np.allclose(extract_block(be), shift_matrix(3, "left"), atol=1e-12)


@settings(max_examples=25, deadline=None)
@given(
    st.integers(2, 4),
    st.floats(0, 2 * math.pi),
    st.floats(0, 2 * math.pi),
    st.lists(st.floats(0.01, 3), min_size=4, max_size=4),
    st.lists(st.sampled_from([1, -1]), min_size=4, max_size=4),
)
def test_banded_matches_dense(n, omega, phi, weights, signs):
    spec = BandedSpec(omega, phi, tuple(weights), tuple(signs))
    block = extract_block(build_banded(n, spec))
    dense = banded_dense(n, spec)
    assert np.max(np.abs(block - dense)) <= 1e-12
    # constant wrapped off-diagonals
    N = 2**n
    sub = [block[(i + 1) % N, i] for i in range(N)]
    sup = [block[i, (i + 1) % N] for i in range(N)]
    assert np.ptp(sub) <= 1e-12 and np.ptp(sup) <= 1e-12


def test_two_frequency_coincident():
    be = build_two_frequency(3, TwoFrequencySpec(0.7, 0.7, (0.3, 0.1, 0.1, 0.5)))
    assert be.n_anc == 4
    assert np.allclose(np.diag(extract_block(be)), 0.8 * np.cos(0.7 * np.arange(8)), atol=1e-12)


def test_two_frequency_sum_of_cosines():
    be = build_two_frequency(3, TwoFrequencySpec(2 * math.pi / 8, 6 * math.pi / 8, (0.5, 0, 0, 0.5)))
    k = np.arange(8)
    expected = 0.5 * np.cos(2 * math.pi * k / 8) + 0.5 * np.cos(6 * math.pi * k / 8)
    assert np.allclose(extract_block(be), np.diag(expected), atol=1e-12)


@settings(max_examples=15, deadline=None)
@given(st.floats(0, 6.3), st.floats(0, 6.3), st.lists(st.floats(0.05, 2), min_size=4, max_size=4))
def test_two_frequency_random(w1, w2, weights):
    be = build_two_frequency(3, TwoFrequencySpec(w1, w2, tuple(weights)))
    N = 8
    dense = (
        weights[0] * np.diag(np.cos(w1 * np.arange(N)))
        + weights[1] * shift_matrix(3, "left")
        + weights[2] * shift_matrix(3, "right")
        + weights[3] * np.diag(np.cos(w2 * np.arange(N)))
    )
    assert np.max(np.abs(extract_block(be) - dense)) <= 1e-12


def test_fourier_single_cosine_matches_direct_encoding():
    be = build_fourier_diagonal(3, FourierSpec(0.0, ((1, 1.0, 0.0),), 2 * math.pi / 0.8))
    assert be.alpha == 1
    assert np.allclose(extract_block(be), extract_block(build_UC(3, 0.8)), atol=1e-12)
    be = build_fourier_diagonal(3, FourierSpec(0.0, ((1, 0.0, 1.0),), 2 * math.pi / 0.8))
    assert np.allclose(extract_block(be), extract_block(build_US(3, 0.8)), atol=1e-12)


@pytest.mark.parametrize(
    "series",
    [
        FourierSpec(0.2, ((1, 0.0, 0.01), (3, 0.0, 0.01 / 3)), 16),
        FourierSpec(0.2, ((1, 0.0, -0.01), (3, 0.0, 0.01 / 9)), 16),
    ],
)
def test_fourier_wave_profiles(series):
    be = build_fourier_diagonal(4, series)
    x = np.arange(16)
    pointwise = 0.1 + sum(b * np.sin(2 * math.pi * h * x / 16) for h, _, b in series.terms)
    assert abs(be.alpha - (0.1 + sum(abs(b) for _, _, b in series.terms))) <= 1e-15
    assert np.max(np.abs(np.diag(extract_block(be)) - pointwise)) <= 1e-10


def test_fourier_empty():
    with pytest.raises(ValueError):
        build_fourier_diagonal(2, FourierSpec(0.0, (), 4))


def test_lcu_spec_validation():
    with pytest.raises(ValueError):
        LcuSpec(())
    with pytest.raises(ValueError):
        LcuSpec((LcuTerm(0.0, Circuit(1)),))
    with pytest.raises(ValueError):
        LcuTerm(-1.0, Circuit(1))


@st.composite
def lcu_specs(draw):
    n = draw(st.integers(1, 4))
    J = draw(st.integers(1, 8))
    terms = []
    for _ in range(J):
        kind = draw(st.sampled_from(["cos", "sin", "left", "right", "id"]))
        w = draw(st.floats(0.0, 2.0))
        omega = draw(st.floats(0, 2 * math.pi))
        unit = {
            "cos": lambda: build_UC(n, omega),
            "sin": lambda: build_US(n, omega),
            "left": lambda: build_shift(n, "left"),
            "right": lambda: build_shift(n, "right"),
            "id": lambda: Circuit(n),
        }[kind]()
        terms.append(LcuTerm(w, unit, draw(st.sampled_from([1, -1]))))
    if sum(t.weight for t in terms) == 0:
        terms[0] = LcuTerm(1.0, terms[0].unitary, terms[0].sign)
    return n, LcuSpec(tuple(terms))


@settings(max_examples=20, deadline=None)
@given(lcu_specs())
def test_lcu_identity(case):
    n, spec = case
    be = lcu_encoding(spec, n)
    # every block-encoded term brings its own ancilla, so lift the default cap
    assert np.max(np.abs(extract_block(be, max_qubits=16) - lcu_dense(spec))) <= 1e-12
