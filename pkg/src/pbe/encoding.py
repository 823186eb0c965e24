"""Block-encoding container plus block extraction and verification."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .circuit import Circuit, CircuitError, apply_circuit, apply_to_columns, unitary_cap


@dataclass(frozen=True)
class BlockEncoding:
    """``circuit`` block-encodes ``A / alpha`` on the work register.

    Work qubits are ``0 .. n_work-1``; ancillas sit above them.  ``flag`` holds
    the post-selected value of each ancilla, lowest ancilla first.
    """

    circuit: Circuit
    n_work: int
    n_anc: int
    alpha: float = 1.0
    flag: tuple[int, ...] | None = None
    registers: tuple[tuple[str, int], ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.circuit.num_qubits != self.n_work + self.n_anc:
            raise CircuitError(
                f"circuit has {self.circuit.num_qubits} qubits, expected "
                f"{self.n_work} work + {self.n_anc} ancilla"
            )
        if not self.alpha > 0:
            raise ValueError("sub-normalization must be positive")
        if self.flag is None:
            object.__setattr__(self, "flag", (0,) * self.n_anc)
        if len(self.flag) != self.n_anc:
            raise ValueError("flag length must equal the ancilla count")

    @property
    def dim(self) -> int:
        return 2**self.n_work

    @property
    def flag_index(self) -> int:
        return sum(bit << i for i, bit in enumerate(self.flag))


@dataclass(frozen=True)
class VerificationReport:
    max_abs_error: float
    target_norm: float
    alpha_used: float
    success_probability: float
    tol: float = 1e-12

    @property
    def passed(self) -> bool:
        return self.max_abs_error <= self.tol

    def to_json(self) -> str:
        return json.dumps(
            {
                "max_abs_error": self.max_abs_error,
                "alpha": self.alpha_used,
                "success_probability": self.success_probability,
            }
        )


def _flag_columns(be: BlockEncoding) -> np.ndarray:
    N = be.dim
    cols = np.zeros((2 ** be.circuit.num_qubits, N), dtype=complex)
    offset = be.flag_index * N
    cols[offset + np.arange(N), np.arange(N)] = 1.0
    return cols


def extract_block(be: BlockEncoding, max_qubits: int | None = None) -> np.ndarray:
    """``alpha * (<flag| x I) U (|flag> x I)`` as a dense ``N x N`` matrix."""
    cap = unitary_cap() if max_qubits is None else max_qubits
    if be.circuit.num_qubits > cap:
        raise CircuitError(f"{be.circuit.num_qubits} qubits exceeds the unitary cap of {cap}")
    out = apply_to_columns(be.circuit, _flag_columns(be))
    offset = be.flag_index * be.dim
    return be.alpha * out[offset : offset + be.dim, :]


def postselect(be: BlockEncoding, psi: np.ndarray) -> np.ndarray:
    """Unnormalized work-register state left after the ancillas read ``flag``."""
    psi = np.asarray(psi, dtype=complex)
    if psi.shape != (be.dim,):
        raise ValueError(f"input of shape {psi.shape} does not match {be.n_work} work qubits")
    full = np.zeros(2 ** be.circuit.num_qubits, dtype=complex)
    offset = be.flag_index * be.dim
    full[offset : offset + be.dim] = psi
    out = apply_circuit(be.circuit, full)
    return out[offset : offset + be.dim]


def success_probability(be: BlockEncoding, psi: np.ndarray) -> float:
    psi = np.asarray(psi, dtype=complex)
    if abs(np.linalg.norm(psi) - 1.0) > 1e-9:
        raise ValueError("input state must be normalized")
    return float(np.sum(np.abs(postselect(be, psi)) ** 2))


def verify_block(be: BlockEncoding, target: np.ndarray, tol: float = 1e-12) -> VerificationReport:
    target = np.asarray(target)
    if target.shape != (be.dim, be.dim):
        raise ValueError(f"target shape {target.shape} does not match block {be.dim}x{be.dim}")
    block = extract_block(be)
    err = float(np.max(np.abs(block - target)))
    # success probability on the uniform superposition
    uniform = block @ np.full(be.dim, 1 / np.sqrt(be.dim)) / be.alpha
    return VerificationReport(
        max_abs_error=err,
        target_norm=float(np.linalg.norm(target, 2)),
        alpha_used=be.alpha,
        success_probability=float(np.sum(np.abs(uniform) ** 2)),
        tol=tol,
    )


def wrap_unitary(circuit: Circuit) -> BlockEncoding:
    """A bare unitary viewed as a block encoding with no ancillas."""
    return BlockEncoding(circuit, circuit.num_qubits, 0, 1.0)
