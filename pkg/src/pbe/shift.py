"""Cyclic shift permutations ``L|k> = |k+1 mod N>`` and ``R|k> = |k-1 mod N>``."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuit import Circuit, Gate


@dataclass(frozen=True)
class ShiftSpec:
    direction: str = "left"
    power: int = 1

    def __post_init__(self):
        if self.direction not in ("left", "right"):
            raise ValueError(f"direction must be 'left' or 'right', got {self.direction!r}")
        if self.power < 0:
            raise ValueError("power must be non-negative")


def _cascade(n: int, polarity: int) -> list[Gate]:
    # flip the top bit first, each X conditioned on every lower bit
    return [
        Gate("x", q, 0.0, tuple((c, polarity) for c in range(q)))
        for q in range(n - 1, -1, -1)
    ]


def build_shift(n: int, spec: ShiftSpec | str = "left", impl: str = "cascade") -> Circuit:
    """Shift circuit on ``n`` qubits: increment (left) or decrement (right), ``power`` times."""
    if n < 1:
        raise ValueError("need at least one qubit")
    if impl != "cascade":
        raise ValueError(f"unknown shift implementation {impl!r}")
    if isinstance(spec, str):
        spec = ShiftSpec(spec)
    base = _cascade(n, 1 if spec.direction == "left" else 0)
    reps = spec.power % (2**n)
    return Circuit(n, tuple(base * reps))


def shift_matrix(n: int, direction: str = "left") -> np.ndarray:
    """Dense ``L`` (ones on the subdiagonal and top-right corner) or ``R = L^T``."""
    N = 2**n
    L = np.roll(np.eye(N), 1, axis=0)
    return L if direction == "left" else L.T
