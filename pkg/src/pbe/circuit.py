"""Gate-level circuit IR and exact dense simulation.

Qubit ``q`` carries bit ``q`` of the basis-state index (little-endian), so
basis state ``|k>`` has ``k = sum_q k_q 2**q``.  A controlled operation is
stored flat: every gate owns its own list of ``(qubit, polarity)`` controls.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

KINDS = ("h", "x", "y", "p")

DEFAULT_UNITARY_CAP = 12
STATEVECTOR_CAP = 24

_SQ2 = 1.0 / math.sqrt(2.0)
_MATRICES = {
    "h": np.array([[_SQ2, _SQ2], [_SQ2, -_SQ2]], dtype=complex),
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
}


class CircuitError(ValueError):
    """Raised for malformed circuits or out-of-range simulation requests."""


def unitary_cap() -> int:
    """Largest register for which dense unitaries are built (``PBE_MAX_QUBITS``)."""
    value = os.environ.get("PBE_MAX_QUBITS")
    return int(value) if value else DEFAULT_UNITARY_CAP


@dataclass(frozen=True)
class Gate:
    kind: str
    target: int
    angle: float = 0.0
    controls: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise CircuitError(f"unknown gate kind {self.kind!r}")
        if not math.isfinite(self.angle):
            raise CircuitError("gate angle must be finite")
        seen = {self.target}
        for q, pol in self.controls:
            if pol not in (0, 1):
                raise CircuitError(f"control polarity must be 0 or 1, got {pol}")
            if q in seen:
                raise CircuitError(f"qubit {q} used twice in one gate")
            seen.add(q)

    @property
    def qubits(self) -> tuple[int, ...]:
        return (self.target,) + tuple(q for q, _ in self.controls)

    def matrix(self) -> np.ndarray:
        """2x2 matrix of the gate's action on its target."""
        if self.kind == "p":
            return np.diag([1.0, np.exp(1j * self.angle)])
        return _MATRICES[self.kind]

    def dagger(self) -> Gate:
        if self.kind == "p":
            return Gate("p", self.target, -self.angle, self.controls)
        return self

    def with_controls(self, controls: Sequence[tuple[int, int]]) -> Gate:
        return Gate(self.kind, self.target, self.angle, tuple(controls) + self.controls)

    def remap(self, mapping: Sequence[int] | dict) -> Gate:
        return Gate(
            self.kind,
            mapping[self.target],
            self.angle,
            tuple((mapping[q], pol) for q, pol in self.controls),
        )

    def same_as(self, other: Gate, atol: float = 1e-15) -> bool:
        return (
            self.kind == other.kind
            and self.target == other.target
            and self.controls == other.controls
            and abs(self.angle - other.angle) <= atol
        )


# constructors used throughout the builders
def H(q: int) -> Gate:
    return Gate("h", q)


def X(q: int) -> Gate:
    return Gate("x", q)


def Y(q: int) -> Gate:
    return Gate("y", q)


def P(q: int, angle: float) -> Gate:
    return Gate("p", q, float(angle))


def CX(control: int, target: int) -> Gate:
    return Gate("x", target, 0.0, ((control, 1),))


@dataclass(frozen=True)
class Circuit:
    num_qubits: int
    gates: tuple[Gate, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.num_qubits < 0:
            raise CircuitError("num_qubits must be non-negative")
        object.__setattr__(self, "gates", tuple(self.gates))
        for g in self.gates:
            for q in g.qubits:
                if not 0 <= q < self.num_qubits:
                    raise CircuitError(
                        f"gate {g.kind} touches qubit {q} outside [0, {self.num_qubits})"
                    )

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)

    def then(self, other: Circuit | Iterable[Gate]) -> Circuit:
        """Sequential composition: ``self`` first, then ``other``."""
        if isinstance(other, Circuit):
            n = max(self.num_qubits, other.num_qubits)
            return Circuit(n, self.gates + other.gates)
        return Circuit(self.num_qubits, self.gates + tuple(other))

    def widen(self, num_qubits: int) -> Circuit:
        if num_qubits < self.num_qubits:
            raise CircuitError("cannot shrink a circuit")
        return Circuit(num_qubits, self.gates)

    def remap(self, mapping: Sequence[int] | dict, num_qubits: int) -> Circuit:
        """Relabel qubit ``q`` as ``mapping[q]`` inside a register of ``num_qubits``."""
        return Circuit(num_qubits, tuple(g.remap(mapping) for g in self.gates))

    def used_qubits(self) -> set[int]:
        used: set[int] = set()
        for g in self.gates:
            used.update(g.qubits)
        return used

    def same_as(self, other: Circuit, atol: float = 1e-15) -> bool:
        return (
            self.num_qubits == other.num_qubits
            and len(self.gates) == len(other.gates)
            and all(a.same_as(b, atol) for a, b in zip(self.gates, other.gates))
        )


def compose(*circuits: Circuit) -> Circuit:
    n = max((c.num_qubits for c in circuits), default=0)
    gates: list[Gate] = []
    for c in circuits:
        gates.extend(c.gates)
    return Circuit(n, tuple(gates))


def adjoint(circuit: Circuit) -> Circuit:
    return Circuit(circuit.num_qubits, tuple(g.dagger() for g in reversed(circuit.gates)))


def controlled(
    circuit: Circuit, controls: Sequence[tuple[int, int]], num_qubits: int | None = None
) -> Circuit:
    """Condition every gate of ``circuit`` on ``controls`` matching their polarities."""
    controls = tuple((int(q), int(pol)) for q, pol in controls)
    ctrl_qubits = [q for q, _ in controls]
    if len(set(ctrl_qubits)) != len(ctrl_qubits):
        raise CircuitError("duplicate control qubit")
    overlap = circuit.used_qubits().intersection(ctrl_qubits)
    if overlap:
        raise CircuitError(f"control qubits {sorted(overlap)} overlap the circuit")
    n = max([circuit.num_qubits] + [q + 1 for q in ctrl_qubits])
    if num_qubits is not None:
        if num_qubits < n:
            raise CircuitError("num_qubits too small for the controls")
        n = num_qubits
    return Circuit(n, tuple(g.with_controls(controls) for g in circuit.gates))


# ---------------------------------------------------------------- simulation


def _apply_gate(psi: np.ndarray, gate: Gate, n: int) -> None:
    """In-place action on ``psi`` of shape ``(2,)*n + (batch,)``."""
    idx: list = [slice(None)] * psi.ndim
    for q, pol in gate.controls:
        idx[n - 1 - q] = pol
    ax = n - 1 - gate.target
    idx0 = list(idx)
    idx1 = list(idx)
    idx0[ax] = 0
    idx1[ax] = 1
    i0, i1 = tuple(idx0), tuple(idx1)
    kind = gate.kind
    if kind == "p":
        psi[i1] *= np.exp(1j * gate.angle)
    elif kind == "x":
        a = psi[i0].copy()
        psi[i0] = psi[i1]
        psi[i1] = a
    elif kind == "y":
        a = psi[i0].copy()
        psi[i0] = -1j * psi[i1]
        psi[i1] = 1j * a
    else:
        a = psi[i0].copy()
        b = psi[i1]
        psi[i0] = (a + b) * _SQ2
        psi[i1] = (a - b) * _SQ2


def _run(circuit: Circuit, block: np.ndarray) -> np.ndarray:
    """Apply ``circuit`` to the columns of ``block`` (shape ``(2**n, batch)``)."""
    n = circuit.num_qubits
    psi = np.array(block, dtype=complex, copy=True).reshape((2,) * n + (block.shape[1],))
    for g in circuit.gates:
        _apply_gate(psi, g, n)
    return psi.reshape(2**n, block.shape[1])


def apply_circuit(circuit: Circuit, state: np.ndarray) -> np.ndarray:
    state = np.asarray(state)
    n = circuit.num_qubits
    if n > STATEVECTOR_CAP:
        raise CircuitError(f"{n} qubits exceeds the statevector cap of {STATEVECTOR_CAP}")
    if state.shape != (2**n,):
        raise CircuitError(f"state of shape {state.shape} does not match {n} qubits")
    return _run(circuit, state.reshape(-1, 1))[:, 0]


def apply_to_columns(circuit: Circuit, columns: np.ndarray) -> np.ndarray:
    """Apply ``circuit`` to every column of a ``(2**n, batch)`` array."""
    columns = np.asarray(columns)
    n = circuit.num_qubits
    if n > STATEVECTOR_CAP:
        raise CircuitError(f"{n} qubits exceeds the statevector cap of {STATEVECTOR_CAP}")
    if columns.ndim != 2 or columns.shape[0] != 2**n:
        raise CircuitError(f"columns of shape {columns.shape} do not match {n} qubits")
    return _run(circuit, columns)


def unitary_of(circuit: Circuit, max_qubits: int | None = None) -> np.ndarray:
    cap = unitary_cap() if max_qubits is None else max_qubits
    if circuit.num_qubits > cap:
        raise CircuitError(f"{circuit.num_qubits} qubits exceeds the unitary cap of {cap}")
    return _run(circuit, np.eye(2**circuit.num_qubits, dtype=complex))


def basis_state(n: int, k: int) -> np.ndarray:
    psi = np.zeros(2**n, dtype=complex)
    psi[k] = 1.0
    return psi


def is_unitary(u: np.ndarray, atol: float = 1e-12) -> bool:
    u = np.asarray(u)
    return bool(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))) <= atol)


# ---------------------------------------------------------------- small gate kits


def global_phase(q: int, gamma: float) -> list[Gate]:
    """``e^{i gamma} I`` written on qubit ``q`` as ``X P(gamma) X P(gamma)``."""
    return [X(q), P(q, gamma), X(q), P(q, gamma)]


def rz(q: int, theta: float) -> list[Gate]:
    """Exact ``diag(e^{-i theta/2}, e^{i theta/2})``."""
    return [X(q), P(q, -theta / 2), X(q), P(q, theta / 2)]


def ry(q: int, theta: float) -> list[Gate]:
    """Exact real rotation ``[[cos t/2, -sin t/2], [sin t/2, cos t/2]]``.

    ``S H P(theta) H S^dagger`` equals ``e^{i theta/2} Ry(theta)``; the trailing
    global phase removes the factor, which matters once the gate is controlled.
    """
    return [
        P(q, -math.pi / 2),
        H(q),
        P(q, theta),
        H(q),
        P(q, math.pi / 2),
        *global_phase(q, -theta / 2),
    ]
