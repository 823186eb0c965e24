"""Linear combinations of unitaries: PREP/SELECT assembly and banded encodings.

Register layout of every LCU encoding built here, from qubit 0 upward:
work qubits, the ancillas of each block-encoded term (one group per term, in
term order), then the data register.  Data qubit ``b`` holds bit ``b`` of the
term index.  The flag is all zeros over everything above the work register.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .circuit import Circuit, Gate, H, P, X, controlled, ry
from .diag import SinusoidSpec, build_UC, build_US
from .encoding import BlockEncoding
from .shift import build_shift


@dataclass(frozen=True)
class LcuTerm:
    """``sign * weight * U`` where ``U`` is a work-register circuit or a block encoding.

    For a block-encoded term the contributed matrix is its normalized block
    ``A / alpha``, so ``weight`` multiplies that.
    """

    weight: float
    unitary: Circuit | BlockEncoding
    sign: int = 1
    label: str = ""

    def __post_init__(self):
        if not (self.weight >= 0 and math.isfinite(self.weight)):
            raise ValueError(f"LCU weight must be finite and non-negative, got {self.weight}")
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")
        if isinstance(self.unitary, BlockEncoding) and any(self.unitary.flag):
            raise ValueError("nested block encodings must use the all-zeros flag")

    @property
    def n_work(self) -> int:
        u = self.unitary
        return u.n_work if isinstance(u, BlockEncoding) else u.num_qubits

    @property
    def n_anc(self) -> int:
        return self.unitary.n_anc if isinstance(self.unitary, BlockEncoding) else 0


@dataclass(frozen=True)
class LcuSpec:
    terms: tuple[LcuTerm, ...]

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        if not self.terms:
            raise ValueError("an LCU needs at least one term")
        if not self.alpha > 0:
            raise ValueError("at least one LCU weight must be positive")

    @property
    def alpha(self) -> float:
        return float(sum(t.weight for t in self.terms))

    def nonzero(self) -> tuple[LcuTerm, ...]:
        return tuple(t for t in self.terms if t.weight > 0)

    @property
    def n_data(self) -> int:
        return data_width(len(self.nonzero()))


def data_width(num_terms: int) -> int:
    return max(0, math.ceil(math.log2(num_terms))) if num_terms > 0 else 0


def _pattern(j: int, data: Sequence[int]) -> list[tuple[int, int]]:
    return [(q, (j >> b) & 1) for b, q in enumerate(data)]


# ---------------------------------------------------------------- PREP


def build_prep(weights) -> Circuit:
    """State preparation ``|0> -> sum_j sqrt(w_j / sum w) |j>`` on ``ceil(log2 J)`` qubits."""
    w = np.asarray(weights, dtype=float)
    if w.ndim != 1 or len(w) == 0:
        raise ValueError("weights must be a non-empty vector")
    if np.any(w < 0) or not np.all(np.isfinite(w)):
        raise ValueError("weights must be finite and non-negative")
    if not w.sum() > 0:
        raise ValueError("at least one weight must be positive")
    m = data_width(len(w))
    padded = np.zeros(2**m)
    padded[: len(w)] = w
    if m > 0 and np.all(padded == padded[0]):
        return Circuit(m, tuple(H(q) for q in range(m)))

    gates: list[Gate] = []
    # most significant bit first; each level splits every prefix block in two
    for level in range(m):
        q = m - 1 - level
        block = 2 ** (q + 1)
        for prefix in range(2**level):
            chunk = padded[prefix * block : (prefix + 1) * block]
            w0, w1 = chunk[: block // 2].sum(), chunk[block // 2 :].sum()
            if w1 == 0:
                continue
            theta = 2 * math.atan2(math.sqrt(w1), math.sqrt(w0))
            ctrls = [(m - 1 - i, (prefix >> (level - 1 - i)) & 1) for i in range(level)]
            rot = Circuit(m, tuple(ry(q, theta)))
            gates += controlled(rot, ctrls, m).gates if ctrls else rot.gates
    return Circuit(m, tuple(gates))


# ---------------------------------------------------------------- SELECT


def _minus_identity(q: int) -> list[Gate]:
    """``Z X Z X = -I`` on qubit ``q``."""
    return [P(q, math.pi), X(q), P(q, math.pi), X(q)]


def _layout(terms: Sequence[LcuTerm], n_work: int) -> tuple[list[list[int]], list[int], int]:
    anc: list[list[int]] = []
    nxt = n_work
    for t in terms:
        anc.append(list(range(nxt, nxt + t.n_anc)))
        nxt += t.n_anc
    data = list(range(nxt, nxt + data_width(len(terms))))
    return anc, data, nxt + len(data)


def build_select(
    terms: Sequence[LcuTerm], n_work: int, data: Sequence[int] | None = None
) -> Circuit:
    """``sum_j |j><j| (x) sign_j U_j`` on the layout described in the module docstring.

    ``data`` may list the data qubits explicitly; by default they follow the
    term ancillas.
    """
    terms = list(terms)
    for t in terms:
        if t.n_work != n_work:
            raise ValueError(f"term acts on {t.n_work} work qubits, expected {n_work}")
    anc, default_data, total = _layout(terms, n_work)
    data = list(default_data if data is None else data)
    if 2 ** len(data) < len(terms):
        raise ValueError(f"{len(data)} data qubits cannot index {len(terms)} terms")
    total = max([total] + [q + 1 for q in data])
    gates: list[Gate] = []
    for j, term in enumerate(terms):
        u = term.unitary
        if isinstance(u, BlockEncoding):
            mapping = list(range(n_work)) + anc[j]
            body = u.circuit.remap(mapping, total)
        else:
            body = u.widen(total)
        if term.sign < 0:
            body = body.then(_minus_identity(0))
        ctrls = _pattern(j, data)
        gates += controlled(body, ctrls, total).gates if ctrls else body.gates
    return Circuit(total, tuple(gates))


def lcu_encoding(spec: LcuSpec | Sequence[LcuTerm], n_work: int | None = None) -> BlockEncoding:
    """``PREP^dagger SELECT PREP`` encoding ``sum_j sign_j w_j U_j`` with alpha ``sum_j w_j``."""
    if not isinstance(spec, LcuSpec):
        spec = LcuSpec(tuple(spec))
    terms = spec.nonzero()
    n_work = terms[0].n_work if n_work is None else n_work
    sel = build_select(terms, n_work)
    anc, data, total = _layout(terms, n_work)
    prep = build_prep([t.weight for t in terms])
    prep_on_data = prep.remap(data, total)
    circ = prep_on_data.then(sel).then(
        Circuit(total, tuple(g.dagger() for g in reversed(prep_on_data.gates)))
    )
    regs = tuple((t.label or f"term{j}", t.n_anc) for j, t in enumerate(terms) if t.n_anc)
    regs += (("data", len(data)),)
    return BlockEncoding(circ, n_work, total - n_work, spec.alpha, registers=regs)


def lcu_dense(spec: LcuSpec | Sequence[LcuTerm]) -> np.ndarray:
    """Dense ``sum_j sign_j w_j U_j`` computed classically, the oracle for ``lcu_encoding``."""
    from .circuit import unitary_of
    from .encoding import extract_block

    if not isinstance(spec, LcuSpec):
        spec = LcuSpec(tuple(spec))
    out = 0
    for t in spec.terms:
        u = t.unitary
        mat = extract_block(u) / u.alpha if isinstance(u, BlockEncoding) else unitary_of(u)
        out = out + t.sign * t.weight * mat
    return np.asarray(out)


# ---------------------------------------------------------------- banded matrices


@dataclass(frozen=True)
class BandedSpec:
    """``s0 a0 C(omega, phi) + s1 a1 L + s2 a2 R + s3 a3 I``."""

    omega: float
    phi: float = 0.0
    weights: tuple[float, float, float, float] = (0.25, 0.25, 0.25, 0.25)
    signs: tuple[int, int, int, int] = (1, 1, 1, 1)

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))
        object.__setattr__(self, "signs", tuple(int(s) for s in self.signs))
        if len(self.weights) != 4 or len(self.signs) != 4:
            raise ValueError("banded spec needs four weights and four signs")
        if any(w < 0 for w in self.weights):
            raise ValueError("banded weights must be non-negative")

    @property
    def alpha(self) -> float:
        return sum(self.weights)


def banded_terms(n: int, spec: BandedSpec) -> list[LcuTerm]:
    """Terms in the order C, L, R, I (data patterns 00, 01, 10, 11)."""
    units = [
        build_UC(n, SinusoidSpec(spec.omega, spec.phi)),
        build_shift(n, "left"),
        build_shift(n, "right"),
        Circuit(n),
    ]
    labels = ["cos", "left", "right", "identity"]
    return [
        LcuTerm(w, u, s, lab)
        for w, u, s, lab in zip(spec.weights, units, spec.signs, labels)
    ]


def build_banded(n: int, spec: BandedSpec) -> BlockEncoding:
    if n < 1:
        raise ValueError("need at least one work qubit")
    return lcu_encoding(banded_terms(n, spec), n)


def banded_dense(n: int, spec: BandedSpec) -> np.ndarray:
    N = 2**n
    from .shift import shift_matrix

    cos = np.diag(np.cos(np.arange(N) * spec.omega + spec.phi))
    mats = [cos, shift_matrix(n, "left"), shift_matrix(n, "right"), np.eye(N)]
    return sum(s * w * m for s, w, m in zip(spec.signs, spec.weights, mats))


@dataclass(frozen=True)
class TwoFrequencySpec:
    """``a0 C(omega1) + a1 L + a2 R + a3 C(omega2)``."""

    omega1: float
    omega2: float
    weights: tuple[float, float, float, float] = (0.25, 0.25, 0.25, 0.25)
    signs: tuple[int, int, int, int] = (1, 1, 1, 1)


def build_two_frequency(n: int, spec: TwoFrequencySpec) -> BlockEncoding:
    """The last LCU slot carries a second cosine encoding with its own ancilla."""
    if n < 1:
        raise ValueError("need at least one work qubit")
    units = [
        build_UC(n, spec.omega1),
        build_shift(n, "left"),
        build_shift(n, "right"),
        build_UC(n, spec.omega2),
    ]
    labels = ["cos1", "left", "right", "cos2"]
    terms = [
        LcuTerm(float(w), u, int(s), lab)
        for w, u, s, lab in zip(spec.weights, units, spec.signs, labels)
    ]
    return lcu_encoding(terms, n)


# ---------------------------------------------------------------- Fourier diagonals


@dataclass(frozen=True)
class FourierSpec:
    """``f(x) = a0/2 + sum_n a_n cos(2 pi n x / T) + b_n sin(2 pi n x / T)`` with x in index units."""

    a0: float = 0.0
    terms: tuple[tuple[int, float, float], ...] = field(default=())
    period: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple((int(h), float(a), float(b)) for h, a, b in self.terms))
        if not self.period > 0:
            raise ValueError("period must be positive")

    @property
    def p(self) -> int:
        return len(self.terms)

    def __call__(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        out = np.full(x.shape, self.a0 / 2)
        for h, a, b in self.terms:
            w = 2 * np.pi * h / self.period
            out = out + a * np.cos(w * x) + b * np.sin(w * x)
        return out


def fourier_terms(n: int, spec: FourierSpec) -> list[LcuTerm]:
    out: list[LcuTerm] = []
    if spec.a0:
        out.append(LcuTerm(abs(spec.a0) / 2, Circuit(n), 1 if spec.a0 > 0 else -1, "mean"))
    for h, a, b in spec.terms:
        w = 2 * math.pi * h / spec.period
        if a:
            out.append(LcuTerm(abs(a), build_UC(n, w), 1 if a > 0 else -1, f"cos{h}"))
        if b:
            out.append(LcuTerm(abs(b), build_US(n, w), 1 if b > 0 else -1, f"sin{h}"))
    return out


def build_fourier_diagonal(n: int, spec: FourierSpec) -> BlockEncoding:
    """Block encoding of ``diag(f(0), ..., f(N-1))`` with alpha ``|a0|/2 + sum |a_n| + |b_n|``."""
    terms = fourier_terms(n, spec)
    if not terms:
        raise ValueError("Fourier spec has no non-zero coefficient")
    return lcu_encoding(terms, n)
