"""Scalar quantum signal processing and a phase-factor solver.

Convention (signal operator ``W_x``)::

    U(x) = e^{i psi_0 Z} W(x) e^{i psi_1 Z} W(x) ... W(x) e^{i psi_d Z}
    W(x) = [[x, i sqrt(1 - x^2)], [i sqrt(1 - x^2), x]]

and the realized polynomial is ``Re <0|U(x)|0>``.  All-zero phases give the
Chebyshev polynomial ``T_d``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import least_squares

from .poly import ChebyshevPoly

RESIDUAL_GATE = 1e-8


class QspError(RuntimeError):
    """Phase solving failed to reach the requested residual."""


@dataclass(frozen=True)
class PhaseFactors:
    angles: tuple[float, ...]
    parity: str
    residual: float = float("nan")

    def __post_init__(self):
        object.__setattr__(self, "angles", tuple(float(a) for a in self.angles))
        if not self.angles:
            raise ValueError("need at least one phase")

    @property
    def degree(self) -> int:
        return len(self.angles) - 1

    def to_json(self) -> str:
        return json.dumps({"degree": self.degree, "parity": self.parity, "angles": list(self.angles)})

    @classmethod
    def from_json(cls, text: str) -> PhaseFactors:
        data = json.loads(text)
        pf = cls(tuple(data["angles"]), data["parity"])
        if pf.degree != data["degree"]:
            raise ValueError("degree does not match the number of angles")
        return pf


def _signal(x: np.ndarray) -> np.ndarray:
    s = 1j * np.sqrt(np.clip(1 - x**2, 0, None))
    W = np.empty(x.shape + (2, 2), dtype=complex)
    W[..., 0, 0] = x
    W[..., 1, 1] = x
    W[..., 0, 1] = s
    W[..., 1, 0] = s
    return W


def _zrot(psi: float) -> np.ndarray:
    return np.diag([np.exp(1j * psi), np.exp(-1j * psi)])


def qsp_unitary(phases, x) -> np.ndarray:
    """The 2x2 QSP product for each ``x`` (shape ``x.shape + (2, 2)``)."""
    angles = phases.angles if isinstance(phases, PhaseFactors) else tuple(phases)
    x = np.asarray(x, dtype=float)
    W = _signal(x)
    U = np.broadcast_to(_zrot(angles[0]), x.shape + (2, 2)).copy()
    for psi in angles[1:]:
        U = U @ W @ _zrot(psi)
    return U


def qsp_eval_scalar(phases, x):
    x_arr = np.asarray(x, dtype=float)
    if np.any(np.abs(x_arr) > 1 + 1e-12):
        raise ValueError("signal value must lie in [-1, 1]")
    out = qsp_unitary(phases, np.clip(x_arr, -1, 1))[..., 0, 0].real
    return float(out) if np.ndim(x) == 0 else out


def check_grid(points: int = 501) -> np.ndarray:
    return np.cos(np.pi * np.arange(points) / (points - 1))


def phase_residual(phases, poly: ChebyshevPoly, points: int = 501) -> float:
    x = check_grid(points)
    return float(np.max(np.abs(qsp_eval_scalar(phases, x) - poly(x))))


# ---------------------------------------------------------------- solver


def _full(reduced: np.ndarray, d: int) -> np.ndarray:
    full = np.empty(d + 1)
    full[: len(reduced)] = reduced
    full[d + 1 - len(reduced) :] = reduced[::-1]
    return full


def _value_and_jacobian(full: np.ndarray, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """``Re U_00`` at each node and its derivative with respect to every full phase."""
    d = len(full) - 1
    W = _signal(x)
    E = [np.broadcast_to(_zrot(p), x.shape + (2, 2)) for p in full]
    left = [None] * (d + 1)  # product of factors strictly before E_k
    acc = np.broadcast_to(np.eye(2, dtype=complex), x.shape + (2, 2))
    for k in range(d + 1):
        left[k] = acc
        acc = acc @ E[k] @ W if k < d else acc @ E[k]
    value = acc[..., 0, 0].real
    right = [None] * (d + 1)  # E_k and everything after it
    acc = E[d]
    right[d] = acc
    for k in range(d - 1, -1, -1):
        acc = E[k] @ W @ acc
        right[k] = acc
    jac = np.empty((len(x), d + 1))
    z = np.array([1.0, -1.0])
    for k in range(d + 1):
        # d/dpsi_k e^{i psi Z} = i Z e^{i psi Z}
        row = left[k][..., 0, :] * z
        jac[:, k] = np.real(1j * np.einsum("ni,ni->n", row, right[k][..., :, 0]))
    return value, jac


def _fit(target_vals: np.ndarray, nodes: np.ndarray, d: int, start: np.ndarray) -> np.ndarray:
    m = len(start)

    def fun(r):
        return _value_and_jacobian(_full(r, d), nodes)[0] - target_vals

    def jac(r):
        J = _value_and_jacobian(_full(r, d), nodes)[1]
        out = J[:, :m].copy()
        mirror = J[:, ::-1][:, :m]
        for j in range(m):
            if j != d - j:
                out[:, j] += mirror[:, j]
        return out

    sol = least_squares(fun, start, jac=jac, method="lm", xtol=1e-15, ftol=1e-15, gtol=1e-15, max_nfev=200 * (m + 1))
    return sol.x


def qsp_phases(poly: ChebyshevPoly, tol: float = RESIDUAL_GATE, homotopy_steps: int = 8) -> PhaseFactors:
    """Symmetric phases whose QSP polynomial matches ``poly`` within ``tol`` on a 501-point grid.

    A Levenberg-Marquardt fit at the positive Chebyshev nodes starts from the
    standard ``(pi/4, 0, ..., 0, pi/4)`` guess.  If that stalls, the target is
    scaled up from a small multiple in ``homotopy_steps`` stages, each warm
    started from the previous solution.
    """
    parity = poly.parity if poly.parity != "none" else ChebyshevPoly.infer_parity(poly.coeffs)
    if parity not in ("even", "odd", "zero"):
        raise QspError("phase solving needs a polynomial of definite parity")
    c = np.asarray(poly.coeffs)
    if abs(abs(c[-1]) - 1) < 1e-15 and not np.any(c[:-1]):
        # +-T_d: zero phases, or pi/2 at both ends for the sign flip
        angles = [0.0] * len(c)
        if c[-1] < 0:
            angles[0] = angles[-1] = math.pi / 2 if len(c) > 1 else math.pi
        return PhaseFactors(tuple(angles), "odd" if len(c) % 2 == 0 else "even", phase_residual(angles, poly))
    if poly.sup_norm() > 1 - 1e-6:
        raise QspError(f"polynomial sup-norm {poly.sup_norm():.6g} is too close to 1")
    d = poly.degree
    if parity == "zero":
        parity = "even"
    if d % 2 != (parity == "odd"):
        raise QspError("degree parity does not match the polynomial parity")

    if d == 0:
        angles = (math.acos(float(poly.coeffs[0])),)
        return PhaseFactors(angles, parity, phase_residual(angles, poly))

    m = math.ceil((d + 1) / 2)
    nodes = np.cos((2 * np.arange(1, m + 1) - 1) * np.pi / (4 * m))
    start = np.zeros(m)
    start[0] = math.pi / 4

    reduced = _fit(poly(nodes), nodes, d, start)
    angles = _full(reduced, d)
    res = phase_residual(angles, poly)
    if res > tol:
        reduced = start
        for s in np.linspace(1 / homotopy_steps, 1.0, homotopy_steps):
            reduced = _fit(s * poly(nodes), nodes, d, reduced)
        angles = _full(reduced, d)
        res = phase_residual(angles, poly)
    if res > tol:
        raise QspError(f"phase solver stopped at residual {res:.3e} (degree {d})")
    return PhaseFactors(tuple(angles), parity, res)
