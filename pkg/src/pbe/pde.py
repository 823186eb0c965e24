"""Finite-difference model problems with periodic coefficients and classical references.

Two families live here: the periodic elliptic problem ``-D u'' + a u = f`` on
(0, 1) and the advection-diffusion-reaction system ``psi' = M psi`` on (0, L).
Each has a dense matrix builder and an LCU decomposition over
``{C, S, L, R, I}`` that the quantum side encodes.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .circuit import Circuit
from .diag import build_UC, build_US
from .encoding import BlockEncoding
from .lcu import BandedSpec, FourierSpec, LcuSpec, LcuTerm, fourier_terms
from .shift import build_shift, shift_matrix


def _log2(N: int) -> int:
    n = int(round(math.log2(N))) if N > 0 else -1
    if n < 1 or 2**n != N:
        raise ValueError(f"grid size must be a power of two >= 2, got {N}")
    return n


def _signed_term(coef: float, unit, label: str) -> LcuTerm:
    return LcuTerm(abs(coef), unit, -1 if coef < 0 else 1, label)


# ---------------------------------------------------------------- elliptic problem


@dataclass(frozen=True)
class EllipticSpec:
    D: float = 1.0
    a0: float = 1.5
    omega_x: float = 2.0
    N: int = 8

    def __post_init__(self):
        _log2(self.N)
        if not self.D > 0:
            raise ValueError("diffusion coefficient must be positive")
        if not self.a0 > 1:
            raise ValueError("a0 must exceed 1 so that the reaction stays positive")

    @property
    def n(self) -> int:
        return _log2(self.N)

    @property
    def h(self) -> float:
        return 1.0 / self.N

    def nodes(self) -> np.ndarray:
        # x_j = j h - h for j = 1..N
        return np.arange(self.N) * self.h

    def reaction(self) -> np.ndarray:
        return self.a0 + np.cos(self.omega_x * self.nodes())


def build_elliptic_matrix(spec: EllipticSpec) -> np.ndarray:
    """``(1/h^2) * tridiag(-D, 2D + a_j h^2, -D)`` with periodic corners."""
    h2 = spec.h**2
    N = spec.N
    A = np.diag(2 * spec.D + spec.reaction() * h2)
    off = shift_matrix(spec.n, "left") + shift_matrix(spec.n, "right")
    if N == 2:
        # both neighbours of a node are the same node
        off = shift_matrix(1, "left")
    A = A - spec.D * off * (1 if N > 2 else 2)
    return A / h2


def elliptic_lcu(spec: EllipticSpec) -> BandedSpec:
    """``C(omega_x h) - (D/h^2) L - (D/h^2) R + (2D/h^2 + a0) I``."""
    dh2 = spec.D / spec.h**2
    weights = [1.0, dh2, dh2, 2 * dh2 + spec.a0]
    if spec.N == 2:
        weights = [1.0, 2 * dh2, 0.0, 2 * dh2 + spec.a0]
    return BandedSpec(spec.omega_x * spec.h, 0.0, tuple(weights), (1, -1, -1, 1))


# ---------------------------------------------------------------- advection-diffusion-reaction


@dataclass(frozen=True)
class AdrSpec:
    """ADR discretization on ``x_i = i dx``, ``dx = length / N``.

    ``reaction`` is the Fourier series of ``a(x)`` with ``x`` in physical
    units; ``omega`` is the velocity frequency of the ``c(x) = sin(omega x)``
    variant.
    """

    D: float = 0.2
    c: float = 0.0
    reaction: FourierSpec = field(default_factory=lambda: FourierSpec(0.2, ((1, 0.0, 0.01),), 16.0))
    N: int = 16
    length: float = 16.0
    omega: float = 0.0
    a: float = 0.1

    def __post_init__(self):
        _log2(self.N)
        if not self.D > 0:
            raise ValueError("diffusion coefficient must be positive")

    @property
    def n(self) -> int:
        return _log2(self.N)

    @property
    def dx(self) -> float:
        return self.length / self.N

    @property
    def tau_d(self) -> float:
        return self.dx**2 / self.D

    def nodes(self) -> np.ndarray:
        return np.arange(self.N) * self.dx

    def reaction_values(self) -> np.ndarray:
        return self.reaction(self.nodes())


def _grid_fourier(spec: AdrSpec) -> FourierSpec:
    """The reaction series re-expressed in index units."""
    r = spec.reaction
    return FourierSpec(r.a0, r.terms, r.period / spec.dx)


def build_adr_matrix(spec: AdrSpec, variant: str = "reaction") -> tuple[np.ndarray, LcuSpec]:
    """Dense ADR generator ``M`` and its LCU decomposition (no spectral shift)."""
    return adr_matrix(spec, variant), adr_lcu(spec, variant)


def adr_matrix(spec: AdrSpec, variant: str = "reaction") -> np.ndarray:
    n, dx, D = spec.n, spec.dx, spec.D
    L, R = shift_matrix(n, "left"), shift_matrix(n, "right")
    diff = D / dx**2
    x = spec.nodes()
    if variant == "reaction":
        diag = -2 * diff - spec.reaction_values()
        return np.diag(diag) + (diff - spec.c / (2 * dx)) * R + (diff + spec.c / (2 * dx)) * L
    if variant == "velocity":
        w = spec.omega
        s = np.diag(np.sin(w * x))
        # d(c psi)/dx = c' psi + c psi', so the effective reaction is a + omega cos(omega x)
        diag = -2 * diff - spec.a - w * np.cos(w * x)
        return np.diag(diag) + diff * (L + R) + s @ L / (2 * dx) - s @ R / (2 * dx)
    raise ValueError(f"unknown ADR variant {variant!r}")


def _product(first: Circuit, then: BlockEncoding) -> BlockEncoding:
    """Block encoding of ``B * U`` from a work-register unitary ``U`` and an encoding of ``B``."""
    circ = first.widen(then.circuit.num_qubits).then(then.circuit)
    return BlockEncoding(circ, then.n_work, then.n_anc, then.alpha)


def adr_lcu(spec: AdrSpec, variant: str = "reaction", shift: float = 0.0) -> LcuSpec:
    """LCU of ``M + shift * I``.

    A positive ``shift`` moves the spectrum of the (negative semidefinite)
    generator towards zero, which only changes the identity weight.
    """
    n, dx = spec.n, spec.dx
    diff = spec.D / dx**2
    left, right = build_shift(n, "left"), build_shift(n, "right")
    ident = Circuit(n)
    if variant == "reaction":
        grid = _grid_fourier(spec)
        terms = [
            _signed_term(diff + spec.c / (2 * dx), left, "left"),
            _signed_term(diff - spec.c / (2 * dx), right, "right"),
            _signed_term(shift - 2 * diff - grid.a0 / 2, ident, "identity"),
        ]
        # the oscillating part of -a(x)
        for t in fourier_terms(n, FourierSpec(0.0, grid.terms, grid.period)):
            terms.append(LcuTerm(t.weight, t.unitary, -t.sign, t.label))
        return LcuSpec(tuple(t for t in terms if t.weight > 0))
    if variant == "velocity":
        w = spec.omega * dx
        sin_enc = build_US(n, w)
        terms = [
            _signed_term(-spec.omega, build_UC(n, w), "cos"),
            _signed_term(diff, left, "left"),
            _signed_term(1 / (2 * dx), _product(left, sin_enc), "sin-left"),
            _signed_term(diff, right, "right"),
            _signed_term(-1 / (2 * dx), _product(right, sin_enc), "sin-right"),
            _signed_term(shift - 2 * diff - spec.a, ident, "identity"),
        ]
        return LcuSpec(tuple(t for t in terms if t.weight > 0))
    raise ValueError(f"unknown ADR variant {variant!r}")


def spectral_shift(spec: AdrSpec) -> float:
    """Midpoint of the Gershgorin interval ``[-4D/dx^2 - max a, -min a]`` of the reaction variant."""
    a = spec.reaction_values()
    return float((4 * spec.D / spec.dx**2 + a.max() + a.min()) / 2)


def cfl_limit(spec: AdrSpec) -> float:
    a = spec.reaction_values()
    return 1.0 / (2 * spec.D / spec.dx**2 + abs(spec.c) / spec.dx + float(np.max(np.abs(a))))


def forward_euler_matrix(M: np.ndarray, dt: float) -> np.ndarray:
    """``I + dt M``; warns when the spectral radius exceeds one."""
    M = np.asarray(M)
    if dt < 0 or not math.isfinite(dt):
        raise ValueError("time step must be non-negative")
    A = np.eye(M.shape[0]) + dt * M
    radius = float(np.max(np.abs(np.linalg.eigvals(A))))
    if radius > 1 + 1e-12:
        warnings.warn(f"forward Euler step is unstable (spectral radius {radius:.6g})", RuntimeWarning)
    return A


# ---------------------------------------------------------------- classical references


def classical_solve(A: np.ndarray, f: np.ndarray) -> np.ndarray:
    """Gaussian elimination with partial pivoting."""
    A = np.asarray(A)
    with warnings.catch_warnings():
        # singularity is reported below as an error
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(A, check_finite=True)
    if np.min(np.abs(np.diag(lu))) < 1e-14:
        raise np.linalg.LinAlgError("matrix is singular to working precision")
    return scipy.linalg.lu_solve((lu, piv), f)


def _expm_taylor(M: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    norm = np.linalg.norm(M, 1)
    s = max(0, int(math.ceil(math.log2(norm))) + 1) if norm > 0 else 0
    X = M / 2**s
    out = np.eye(M.shape[0], dtype=X.dtype)
    term = out.copy()
    for k in range(1, 60):
        term = term @ X / k
        out = out + term
        if np.linalg.norm(term, 1) <= tol * np.linalg.norm(out, 1):
            break
    for _ in range(s):
        out = out @ out
    return out


def classical_expm_apply(M: np.ndarray, t: float, g: np.ndarray) -> np.ndarray:
    """``e^{M t} g``: eigendecomposition for symmetric ``M``, scaled Taylor series otherwise."""
    M = np.asarray(M)
    g = np.asarray(g)
    if M.shape[0] > 2**10:
        raise ValueError("matrix too large for the dense reference")
    if t == 0:
        return g.copy()
    if np.allclose(M, M.T.conj(), atol=0, rtol=0):
        lam, V = np.linalg.eigh(M)
        return V @ (np.exp(lam * t) * (V.conj().T @ g))
    return _expm_taylor(M * t) @ g


def gaussian_initial(N: int, center: float | None = None, width: float | None = None) -> np.ndarray:
    """Normalized ``exp(-(k - center)^2 / (2 width^2))``; defaults to ``N/2 - 1/2`` and ``N/8``."""
    center = N / 2 - 0.5 if center is None else center
    width = N / 8 if width is None else width
    if not width > 0:
        raise ValueError("width must be positive")
    k = np.arange(N)
    if not math.isfinite(width):
        return np.full(N, 1 / math.sqrt(N))
    d2 = (k - center) ** 2
    # measured from the nearest node so far-off centers do not underflow
    g = np.exp(-(d2 - d2.min()) / (2 * width**2))
    return g / np.linalg.norm(g)


def relative_error(u: np.ndarray, v: np.ndarray) -> float:
    """``|| u/|u| - e^{i theta} v/|v| ||`` with the phase chosen to maximize the overlap."""
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    nu, nv = np.linalg.norm(u), np.linalg.norm(v)
    if nu == 0 or nv == 0:
        raise ValueError("relative error is undefined for a zero vector")
    u, v = u / nu, v / nv
    overlap = np.vdot(v, u)
    phase = overlap / abs(overlap) if abs(overlap) > 0 else 1.0
    return float(np.linalg.norm(u - phase * v))
