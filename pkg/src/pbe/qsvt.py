"""QSVT circuits over block encodings and the two end-to-end PDE experiments."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .circuit import Circuit, Gate, H, X, adjoint, controlled, rz
from .encoding import BlockEncoding, postselect
from .lcu import build_banded, lcu_encoding
from .pde import (
    AdrSpec,
    EllipticSpec,
    adr_lcu,
    adr_matrix,
    build_elliptic_matrix,
    classical_expm_apply,
    classical_solve,
    elliptic_lcu,
    gaussian_initial,
    relative_error,
    spectral_shift,
)
from .poly import ChebyshevPoly, ExpTarget, InverseTarget, approx_poly
from .qsp import PhaseFactors, qsp_phases


def reflection_angles(pf: PhaseFactors) -> list[float]:
    """Convert ``W_x`` phases to the projector-rotation phases used in the circuit."""
    psi = list(pf.angles)
    d = len(psi) - 1
    if d == 0:
        return psi
    phi = [p - math.pi / 2 for p in psi]
    phi[0] = psi[0] - math.pi / 4 + d * math.pi / 2
    phi[d] = psi[d] - math.pi / 4
    return phi


def _projector_rotation(anc_qubits: list[int], qsvt_anc: int, angle: float) -> list[Gate]:
    """``e^{i angle (2 Pi - I)}`` with ``Pi`` the all-zeros projector, kicked onto ``qsvt_anc``."""
    flip = Gate("x", qsvt_anc, 0.0, tuple((q, 0) for q in anc_qubits))
    return [flip, *rz(qsvt_anc, 2 * angle), flip]


def build_qsvt_circuit(be: BlockEncoding, phases: PhaseFactors) -> Circuit:
    """Interleave ``U``, ``U^dagger`` and projector rotations; the extra top qubit is sandwiched by H.

    The flag block (all encoding ancillas and the new qubit at zero) equals
    ``P(A / alpha)`` for Hermitian blocks, where ``P`` is the polynomial of
    ``phases`` under ``qsp_eval_scalar``.
    """
    if any(be.flag):
        raise ValueError("QSVT assembly expects the all-zeros flag")
    n = be.circuit.num_qubits
    top = n
    anc = list(range(be.n_work, n))
    phi = reflection_angles(phases)
    d = len(phi) - 1
    U = be.circuit.widen(n + 1)
    Ud = adjoint(be.circuit).widen(n + 1)
    gates: list[Gate] = [H(top)]
    gates += _projector_rotation(anc, top, phi[d])
    for step, k in enumerate(range(d - 1, -1, -1)):
        gates += (U if step % 2 == 0 else Ud).gates
        gates += _projector_rotation(anc, top, phi[k])
    gates.append(H(top))
    return Circuit(n + 1, tuple(gates))


def qsvt_encoding(be: BlockEncoding, phases: PhaseFactors) -> BlockEncoding:
    circ = build_qsvt_circuit(be, phases)
    return BlockEncoding(circ, be.n_work, be.n_anc + 1, 1.0, registers=be.registers + (("qsvt", 1),))


def combine_parts(parts: list[BlockEncoding]) -> BlockEncoding:
    """``(B_0 + B_1) / 2`` from two encodings on the same layout, using one selector qubit."""
    if len(parts) == 1:
        return parts[0]
    a, b = parts
    n = a.circuit.num_qubits
    if b.circuit.num_qubits != n or a.n_work != b.n_work:
        raise ValueError("parts must share their register layout")
    sel = n
    circ = (
        Circuit(n + 1, (H(sel),))
        .then(controlled(a.circuit, [(sel, 0)], n + 1))
        .then(controlled(b.circuit, [(sel, 1)], n + 1))
        .then([H(sel)])
    )
    return BlockEncoding(circ, a.n_work, a.n_anc + 1, 2.0, registers=a.registers + (("parity", 1),))


@dataclass
class QsvtRun:
    problem: str
    parameter: float
    degree: int
    output: np.ndarray
    reference: np.ndarray
    success_probability: float
    error: float
    phases: list[PhaseFactors] = field(default_factory=list)
    num_qubits: int = 0
    num_gates: int = 0

    def row(self) -> dict:
        return {
            "problem": self.problem,
            "parameter": self.parameter,
            "e_r": self.error,
            "success_prob": self.success_probability,
            "degree": self.degree,
        }


def _run(be: BlockEncoding, psi: np.ndarray) -> tuple[np.ndarray, float]:
    out = postselect(be, psi)
    return out, float(np.vdot(out, out).real)


def run_elliptic(spec: EllipticSpec, k: float, epsilon: float = 1e-6) -> QsvtRun:
    """Invert the elliptic matrix on ``f = 1`` with the ``1/x`` polynomial on ``[1/k, 1]``."""
    be = build_banded(spec.n, elliptic_lcu(spec))
    poly = approx_poly(InverseTarget(k), epsilon)
    pf = qsp_phases(poly)
    q = qsvt_encoding(be, pf)
    f = np.ones(spec.N)
    out, prob = _run(q, f / np.linalg.norm(f))
    ref = classical_solve(build_elliptic_matrix(spec), f)
    return QsvtRun(
        f"elliptic-D{spec.D:g}-w{spec.omega_x:g}", k, poly.degree, out, ref, prob,
        relative_error(out, ref), [pf], q.circuit.num_qubits, len(q.circuit),
    )  # fmt: skip


def exp_encoding(spec: AdrSpec, t: float, epsilon: float = 1e-6) -> tuple[BlockEncoding, list[PhaseFactors], int]:
    """Encoding proportional to ``e^{M t}`` built from the shifted LCU ``M + s I``."""
    s = spectral_shift(spec)
    lcu = adr_lcu(spec, "reaction", shift=s)
    be = lcu_encoding(lcu, spec.n)
    poly = approx_poly(ExpTarget(be.alpha * t), epsilon)
    parts = [p for p in (poly.even_part(), poly.odd_part()) if any(p.coeffs)]
    phases = [qsp_phases(p) for p in parts]
    encs = [qsvt_encoding(be, pf) for pf in phases]
    return combine_parts(encs), phases, poly.degree


def run_adr(spec: AdrSpec, t_list, epsilon: float = 1e-6) -> list[QsvtRun]:
    """Evolve the Gaussian initial state to each ``t`` (physical time) and compare with ``e^{M t}``."""
    if spec.c != 0:
        raise ValueError("QSVT evolution is implemented for the symmetric (c = 0) generator only")
    M = adr_matrix(spec, "reaction")
    g = gaussian_initial(spec.N)
    runs = []
    for t in t_list:
        enc, phases, degree = exp_encoding(spec, float(t), epsilon)
        out, prob = _run(enc, g)
        ref = classical_expm_apply(M, float(t), g)
        runs.append(
            QsvtRun(
                "adr", float(t), degree, out, ref, prob, relative_error(out, ref),
                phases, enc.circuit.num_qubits, len(enc.circuit),
            )  # fmt: skip
        )
    return runs
