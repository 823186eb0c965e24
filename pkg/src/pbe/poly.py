"""Chebyshev-basis polynomial approximations used as QSVT targets."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import chebyshev as cheb
from scipy.special import ive

SUP_NORM_CAP = 1 - 1e-3


@dataclass(frozen=True)
class ChebyshevPoly:
    """``sum_k coeffs[k] T_k(x)`` on [-1, 1]."""

    coeffs: tuple[float, ...]
    parity: str = "none"

    def __post_init__(self):
        c = tuple(float(v) for v in np.atleast_1d(self.coeffs))
        # trim trailing exact zeros so that the degree is meaningful
        while len(c) > 1 and c[-1] == 0.0:
            c = c[:-1]
        object.__setattr__(self, "coeffs", c)
        if self.parity not in ("even", "odd", "none"):
            raise ValueError(f"parity must be even, odd or none, got {self.parity!r}")
        if self.parity != "none" and self.infer_parity(c) not in (self.parity, "zero"):
            raise ValueError(f"coefficients do not have {self.parity} parity")

    @staticmethod
    def infer_parity(coeffs) -> str:
        c = np.asarray(coeffs)
        has_even = np.any(c[0::2] != 0)
        has_odd = np.any(c[1::2] != 0)
        if has_even and has_odd:
            return "none"
        if has_odd:
            return "odd"
        return "even" if has_even else "zero"

    @classmethod
    def from_coeffs(cls, coeffs) -> ChebyshevPoly:
        p = cls.infer_parity(coeffs)
        return cls(tuple(coeffs), "even" if p == "zero" else p)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        return cheb.chebval(x, np.asarray(self.coeffs))

    def even_part(self) -> ChebyshevPoly:
        c = np.array(self.coeffs)
        c[1::2] = 0
        return ChebyshevPoly(tuple(c), "even")

    def odd_part(self) -> ChebyshevPoly:
        c = np.array(self.coeffs)
        c[0::2] = 0
        return ChebyshevPoly(tuple(c), "odd")

    def sup_norm(self, points: int = 2001) -> float:
        x = np.cos(np.linspace(0, np.pi, points))
        return float(np.max(np.abs(self(x))))


@dataclass(frozen=True)
class InverseTarget:
    """``1 / (2 kappa x)`` on ``1/kappa <= |x| <= 1``."""

    kappa: float


@dataclass(frozen=True)
class ExpTarget:
    """``exp(tau (x - 1)) / 2`` on [-1, 1]."""

    tau: float


def inverse_degree(kappa: float, epsilon: float) -> tuple[int, int]:
    """``(b, j0)``: the power in ``(1 - (1 - x^2)^b) / x`` and the number of retained odd terms."""
    b = max(1, math.ceil(kappa**2 * math.log(kappa / epsilon)))
    j0 = math.ceil(math.sqrt(b * math.log(4 * b / epsilon)))
    return b, min(j0, b - 1)


def inverse_coeffs(kappa: float, epsilon: float) -> np.ndarray:
    """Chebyshev coefficients of the truncated ``(1 - (1 - x^2)^b) / x`` expansion, scaled by ``1/(2 kappa)``."""
    b, j0 = inverse_degree(kappa, epsilon)
    c = np.zeros(2 * j0 + 2)
    denom = 4**b
    # tail sums of binomial coefficients in exact integer arithmetic
    tail = 0
    sums = [0] * (b + 1)
    for i in range(b, 0, -1):
        tail += math.comb(2 * b, b + i)
        sums[i - 1] = tail
    for j in range(j0 + 1):
        c[2 * j + 1] = 4 * (-1) ** j * (sums[j] / denom)
    return c / (2 * kappa)


def exp_coeffs(tau: float, epsilon: float) -> np.ndarray:
    """``exp(tau (x - 1)) / 2`` via ``e^{tau x} = I_0(tau) + 2 sum_k I_k(tau) T_k(x)``.

    Scaled Bessel functions ``ive(k, tau) = e^{-tau} I_k(tau)`` keep every
    coefficient in [0, 1].  The series is cut once the neglected tail drops
    below ``epsilon / 4``.
    """
    if tau < 0:
        raise ValueError("tau must be non-negative")
    if tau == 0:
        return np.array([0.5])
    kmax = int(tau + 40 * math.sqrt(tau + 1) + 40)
    c = ive(np.arange(kmax + 1), tau)
    tail = np.cumsum(c[::-1])[::-1]  # tail[k] = sum_{j >= k} c_j
    keep = int(np.argmax(tail < epsilon / 4))
    out = c[: max(keep, 1)].copy()
    out[0] /= 2
    return out


def approx_poly(target: InverseTarget | ExpTarget, epsilon: float) -> ChebyshevPoly:
    if not 0 < epsilon < 0.5:
        raise ValueError("epsilon must lie in (0, 0.5)")
    if isinstance(target, InverseTarget):
        if target.kappa < 1:
            raise ValueError("kappa must be at least 1")
        poly = ChebyshevPoly(tuple(inverse_coeffs(target.kappa, epsilon)), "odd")
        peak = poly.sup_norm()
        if peak > SUP_NORM_CAP:
            # truncation overshoot near 1/kappa; only the overall scale changes
            poly = ChebyshevPoly(tuple(np.asarray(poly.coeffs) * (SUP_NORM_CAP / peak)), "odd")
        return poly
    if isinstance(target, ExpTarget):
        return ChebyshevPoly(tuple(exp_coeffs(target.tau, epsilon)), "none")
    raise TypeError(f"unknown approximation target {target!r}")


def chebyshev_projection(func, degree: int, nodes: int | None = None) -> np.ndarray:
    """Chebyshev coefficients of ``func`` by Gauss-Chebyshev quadrature."""
    m = nodes or 2 * (degree + 1) + 32
    theta = (np.arange(m) + 0.5) * np.pi / m
    fx = func(np.cos(theta))
    k = np.arange(degree + 1)
    c = (2 / m) * np.cos(np.outer(k, theta)) @ fx
    c[0] /= 2
    return c
