"""Decomposition of IR gates into {single-qubit, CNOT} and resource counts.

Multi-controlled X gates with three or more controls use Toffoli networks on
borrowed (dirty) qubits: the V-chain when enough idle qubits exist, otherwise
the split form that needs a single borrowed qubit.  When a register has no
idle qubit at all a scratch wire is appended; its state is left untouched.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from .circuit import CX, Circuit, CircuitError, Gate, H, P, X, KINDS


@dataclass(frozen=True)
class DecompositionPolicy:
    # "dirty-ancilla": Toffoli ladders on borrowed qubits (O(k) Toffolis for k controls)
    mcx: str = "dirty-ancilla"
    cancel_inverse_pairs: bool = True

    def __post_init__(self):
        if self.mcx != "dirty-ancilla":
            raise CircuitError(f"unsupported multi-controlled X strategy {self.mcx!r}")


DEFAULT_POLICY = DecompositionPolicy()


@dataclass(frozen=True)
class GateCounts:
    one_qubit: int = 0
    cnot: int = 0
    depth: int = 0
    by_kind: dict = field(default_factory=dict, compare=False)

    @property
    def total(self) -> int:
        return self.one_qubit + self.cnot

    def as_dict(self) -> dict:
        return {
            "one_qubit": self.one_qubit,
            "cnot": self.cnot,
            "total": self.total,
            "depth": self.depth,
        }


# ---------------------------------------------------------------- Toffoli networks


def toffoli(a: int, b: int, t: int) -> list[Gate]:
    """Textbook 6-CNOT, 9 single-qubit Toffoli."""
    T, Td = math.pi / 4, -math.pi / 4
    return [
        H(t), CX(b, t), P(t, Td), CX(a, t), P(t, T), CX(b, t), P(t, Td), CX(a, t),
        P(b, T), P(t, T), H(t), CX(a, b), P(a, T), P(b, Td), CX(a, b),
    ]  # fmt: skip


def _ccx(a: int, b: int, t: int) -> Gate:
    return Gate("x", t, 0.0, ((a, 1), (b, 1)))


def _vchain(ctrls: Sequence[int], target: int, dirty: Sequence[int]) -> list[Gate]:
    """C^k X with k-2 borrowed qubits: 4(k-2) Toffolis (k >= 3)."""
    k = len(ctrls)
    if k <= 2:
        return [Gate("x", target, 0.0, tuple((c, 1) for c in ctrls))]
    anc = list(dirty[: k - 2])
    if len(anc) < k - 2:
        raise CircuitError("not enough borrowed qubits for the V-chain")
    # up[i] flips anc[i] (or the target) from ctrls[i+2] and the level below
    up = [_ccx(ctrls[k - 1], anc[k - 3], target)]
    for i in range(k - 2, 1, -1):
        up.append(_ccx(ctrls[i], anc[i - 2], anc[i - 1]))
    mid = _ccx(ctrls[0], ctrls[1], anc[0])
    first = up + [mid] + up[::-1]
    second = up[1:] + [mid] + up[1:][::-1]
    return first + second


def mcx_toffolis(ctrls: Sequence[int], target: int, idle: Sequence[int]) -> list[Gate]:
    """Multi-controlled X as X/CNOT/Toffoli gates using borrowed ``idle`` qubits."""
    ctrls = list(ctrls)
    k = len(ctrls)
    if k <= 2:
        return [Gate("x", target, 0.0, tuple((c, 1) for c in ctrls))]
    idle = [q for q in idle if q != target and q not in ctrls]
    if len(idle) >= k - 2:
        return _vchain(ctrls, target, idle)
    if not idle:
        raise CircuitError("multi-controlled X needs one borrowed qubit")
    b = idle[0]
    m1 = (k + 1) // 2
    c1, c2 = ctrls[:m1], ctrls[m1:]
    g1 = _vchain(c1, b, c2 + [target])
    g2 = _vchain(c2 + [b], target, c1)
    return g1 + g2 + g1 + g2


# ---------------------------------------------------------------- lowering


def _h_frame(q: int) -> tuple[list[Gate], list[Gate]]:
    """A, A^dagger (up to a shared phase) with A X A^dagger = H."""
    a = [P(q, -math.pi / 2), H(q), P(q, -math.pi / 4), H(q), P(q, math.pi / 2)]
    a_dag = [g.dagger() for g in reversed(a)]
    return a_dag, a


def _lower_gate(g: Gate, idle: Sequence[int]) -> list[Gate]:
    """Exact rewrite of ``g`` into uncontrolled gates and CNOTs."""
    flips = [X(q) for q, pol in g.controls if pol == 0]
    ctrls = [q for q, _ in g.controls]
    body: list[Gate]
    k = len(ctrls)
    t = g.target
    if k == 0:
        return [g]
    if g.kind == "x":
        if k == 1:
            body = [CX(ctrls[0], t)]
        else:
            body = _expand_toffolis(mcx_toffolis(ctrls, t, idle))
    elif g.kind == "y":
        inner = _lower_gate(Gate("x", t, 0.0, tuple((c, 1) for c in ctrls)), idle)
        body = [P(t, -math.pi / 2)] + inner + [P(t, math.pi / 2)]
    elif g.kind == "h":
        pre, post = _h_frame(t)
        inner = _lower_gate(Gate("x", t, 0.0, tuple((c, 1) for c in ctrls)), idle)
        body = pre + inner + post
    else:
        body = _lower_phase(ctrls, t, g.angle, idle)
    return flips + body + flips


def _expand_toffolis(gates: list[Gate]) -> list[Gate]:
    out: list[Gate] = []
    for g in gates:
        if g.kind == "x" and len(g.controls) == 2:
            (a, _), (b, _) = g.controls
            out.extend(toffoli(a, b, g.target))
        else:
            out.append(g)
    return out


def _lower_phase(ctrls: list[int], t: int, theta: float, idle: Sequence[int]) -> list[Gate]:
    if len(ctrls) == 1:
        c = ctrls[0]
        return [P(c, theta / 2), CX(c, t), P(t, -theta / 2), CX(c, t), P(t, theta / 2)]
    *rest, last = ctrls
    spare = [t] + [q for q in idle if q != t]
    mcx = _lower_gate(Gate("x", last, 0.0, tuple((c, 1) for c in rest)), spare)
    return (
        _lower_phase([last], t, theta / 2, idle)
        + mcx
        + _lower_phase([last], t, -theta / 2, idle)
        + mcx
        + _lower_phase(rest, t, theta / 2, idle)
    )


def _cancel_pairs(gates: list[Gate]) -> list[Gate]:
    """Remove adjacent (per wire) identical self-inverse gates."""
    out: list[Gate] = []
    last_on: dict[int, int] = {}  # qubit -> index in out of the last gate touching it
    for g in gates:
        qs = g.qubits
        if g.kind != "p":
            idxs = {last_on.get(q) for q in qs}
            if len(idxs) == 1:
                (j,) = idxs
                if j is not None and out[j] is not None and out[j] == g and set(out[j].qubits) == set(qs):
                    out[j] = None
                    # restore the previous occupant of each wire
                    for q in qs:
                        last_on.pop(q, None)
                        for m in range(j - 1, -1, -1):
                            if out[m] is not None and q in out[m].qubits:
                                last_on[q] = m
                                break
                    continue
        out.append(g)
        for q in qs:
            last_on[q] = len(out) - 1
    return [g for g in out if g is not None]


def decompose(circuit: Circuit, policy: DecompositionPolicy = DEFAULT_POLICY) -> Circuit:
    """Lower ``circuit`` to uncontrolled gates plus CNOTs.

    The result may carry one extra scratch qubit (appended at the top) that is
    borrowed by multi-controlled X gates and returned in its original state.
    """
    n = circuit.num_qubits
    scratch = None
    lowered: list[Gate] = []
    for g in circuit.gates:
        busy = set(g.qubits)
        idle = [q for q in range(n) if q not in busy]
        if not idle and len(g.controls) >= 3 and g.kind != "p":
            scratch = n
            idle = [n]
        lowered.extend(_lower_gate(g, idle))
    if policy.cancel_inverse_pairs:
        lowered = _cancel_pairs(lowered)
    return Circuit(n + (1 if scratch is not None else 0), tuple(lowered))


def _depth(gates: Sequence[Gate]) -> int:
    level: dict[int, int] = {}
    depth = 0
    for g in gates:
        d = 1 + max((level.get(q, 0) for q in g.qubits), default=0)
        for q in g.qubits:
            level[q] = d
        depth = max(depth, d)
    return depth


def transpile_count(circuit: Circuit, policy: DecompositionPolicy = DEFAULT_POLICY) -> GateCounts:
    low = decompose(circuit, policy)
    kinds: Counter = Counter()
    for g in low.gates:
        if g.controls:
            if g.kind != "x" or len(g.controls) != 1:
                raise CircuitError(f"gate {g} survived lowering")
            kinds["cx"] += 1
        elif g.kind in KINDS:
            kinds[g.kind] += 1
        else:
            raise CircuitError(f"unknown gate kind {g.kind!r}")
    one = sum(v for k, v in kinds.items() if k != "cx")
    return GateCounts(one_qubit=one, cnot=kinds["cx"], depth=_depth(low.gates), by_kind=dict(kinds))
