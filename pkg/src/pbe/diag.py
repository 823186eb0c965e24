"""Diagonal sinusoidal block encodings.

``V(omega)`` is the diagonal unitary ``diag(e^{i omega k})`` built from one
phase gate per qubit.  Interfering two branches of it through a single
Hadamard-sandwiched ancilla gives exact (alpha = 1) encodings of
``C = diag(cos(k omega + phi))`` and ``S = diag(sin(k omega + phi))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .circuit import CX, Circuit, Gate, H, P, X, Y, adjoint, compose, controlled, global_phase
from .encoding import BlockEncoding


@dataclass(frozen=True)
class SinusoidSpec:
    omega: float
    phi: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.omega) and math.isfinite(self.phi)):
            raise ValueError("omega and phi must be finite")


def cos_matrix(n: int, omega: float, phi: float = 0.0) -> np.ndarray:
    return np.diag(np.cos(np.arange(2**n) * omega + phi))


def sin_matrix(n: int, omega: float, phi: float = 0.0) -> np.ndarray:
    return np.diag(np.sin(np.arange(2**n) * omega + phi))


def build_V(n: int, spec: SinusoidSpec | float) -> Circuit:
    """``prod_q P(2^q omega)`` on qubit ``q``; the phase ``phi`` is left to the caller."""
    if n < 1:
        raise ValueError("need at least one qubit")
    omega = spec.omega if isinstance(spec, SinusoidSpec) else float(spec)
    return Circuit(n, tuple(P(q, (2**q) * omega) for q in range(n)))


def _fold(theta: float) -> float:
    """Angle reduced to [-pi, pi]."""
    return math.remainder(theta, 2 * math.pi)


def truncate_V(n: int, spec: SinusoidSpec | float, epsilon: float) -> Circuit:
    """Drop the smallest phase gates of ``V`` while the total dropped angle stays <= epsilon.

    For a diagonal unitary the spectral error is ``max_k |e^{i delta_k} - 1|``,
    bounded by the sum of the folded angles removed.
    """
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    full = build_V(n, spec)
    order = sorted(range(n), key=lambda q: abs(_fold(full.gates[q].angle)))
    dropped: set[int] = set()
    budget = 0.0
    for q in order:
        cost = abs(_fold(full.gates[q].angle))
        if budget + cost > epsilon:
            break
        budget += cost
        dropped.add(q)
    return Circuit(n, tuple(g for q, g in enumerate(full.gates) if q not in dropped))


def _branch_phase(anc: int, on_zero: float, on_one: float) -> list[Gate]:
    """``diag(e^{i on_zero}, e^{i on_one})`` on the ancilla, skipping zero angles."""
    gates: list[Gate] = []
    if on_zero:
        gates += [X(anc), P(anc, on_zero), X(anc)]
    if on_one:
        gates.append(P(anc, on_one))
    return gates


def build_UC(
    n: int, spec: SinusoidSpec | float, variant: str = "cnot-conjugation"
) -> BlockEncoding:
    """Block encoding of ``C(omega, phi)`` with one ancilla (qubit ``n``) and alpha = 1.

    ``variant="select"``: H, 0-controlled ``V(2 omega)``, ``V(omega)^dagger``, H.
    ``variant="cnot-conjugation"``: H, fan-out CNOT, ``V(omega)``, fan-out CNOT,
    ancilla phase ``-(N-1) omega``, H.  The fan-out maps ``k`` to ``N-1-k``
    rather than ``-k``, hence the ancilla correction.
    """
    if not isinstance(spec, SinusoidSpec):
        spec = SinusoidSpec(float(spec))
    if n < 1:
        raise ValueError("need at least one qubit")
    omega, phi = spec.omega, spec.phi
    anc = n
    gates: list[Gate] = [H(anc)]
    if variant == "select":
        gates += controlled(build_V(n, 2 * omega), [(anc, 0)]).gates
        gates += adjoint(build_V(n, omega)).gates
        gates += _branch_phase(anc, phi, -phi)
    elif variant == "cnot-conjugation":
        fan = [CX(anc, q) for q in range(n)]
        gates += fan + list(build_V(n, omega).gates) + fan
        gates += _branch_phase(anc, phi, -phi - (2**n - 1) * omega)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    gates.append(H(anc))
    return BlockEncoding(Circuit(n + 1, tuple(gates)), n, 1, 1.0, registers=(("cos", 1),))


def build_US(n: int, spec: SinusoidSpec | float, variant: str = "cnot-conjugation") -> BlockEncoding:
    """Block encoding of ``S(omega, phi)``: the cosine encoding followed by Y on the ancilla."""
    uc = build_UC(n, spec, variant)
    circ = uc.circuit.then([Y(n)])
    return BlockEncoding(circ, n, 1, 1.0, registers=(("sin", 1),))


def p0_closed_form(coeffs, omega: float) -> float:
    """Probability that the cosine encoding's ancilla reads 0: ``sum |c_k|^2 cos^2(k omega)``."""
    c = np.asarray(coeffs, dtype=complex)
    w = np.abs(c) ** 2
    if abs(w.sum() - 1.0) > 1e-9:
        raise ValueError("amplitudes must be normalized")
    k = np.arange(len(c))
    return float(np.sum(w * np.cos(k * omega) ** 2))


def _gray(i: int) -> int:
    return i ^ (i >> 1)


def build_dense_baseline(diag_values) -> BlockEncoding:
    """Generic diagonal encoding: a uniformly controlled Z rotation between Hadamards.

    Every basis state gets its own rotation angle ``2 arccos(value_k)``; the
    Gray-code realization uses ``2^n`` phase gates and ``2^n`` CNOTs regardless
    of any structure in the values.
    """
    vals = np.asarray(diag_values, dtype=float)
    N = len(vals)
    n = int(round(math.log2(N))) if N > 0 else -1
    if n < 1 or 2**n != N:
        raise ValueError("need 2^n diagonal values with n >= 1")
    if np.any(np.abs(vals) > 1):
        raise ValueError("diagonal values must satisfy |value| <= 1")
    beta = 2 * np.arccos(vals)
    k = np.arange(N)
    gray = np.array([_gray(i) for i in range(N)])
    parity = np.array([[bin(a & b).count("1") & 1 for b in gray] for a in k])
    M = 1 - 2 * parity
    theta = M.T @ beta / N
    anc = n
    gates: list[Gate] = [H(anc)]
    for i in range(N):
        gates.append(P(anc, theta[i]))
        changed = _gray(i) ^ _gray((i + 1) % N)
        gates.append(CX(changed.bit_length() - 1, anc))
    # each P(t) is e^{i t/2} Rz(t); undo the accumulated global phase
    gates += global_phase(anc, -theta.sum() / 2)
    gates.append(H(anc))
    return BlockEncoding(Circuit(n + 1, tuple(gates)), n, 1, 1.0, registers=(("rotation", 1),))
