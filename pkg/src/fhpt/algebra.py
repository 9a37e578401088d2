"""First-order ladder maps between neighbouring levels and their su(1,1) data.

Both operators act on the envelope-times-polynomial form of a state and land
exactly on the neighbouring polynomial degree, so the implementation is pure
coefficient arithmetic: multiply by y, differentiate, recombine.  The level
shift keeps the envelope exponent fixed; only the polynomial changes.

Sign and prefactor conventions are pinned by the eigenvalue relations

    raise:  image = sqrt((n + 1)(n + 2L + 1)) * state_{n+1}
    lower:  image = sqrt(n (n + 2L))         * state_{n-1}

together with the commutator [lower, raise] = 2 * (n + L + 1/2) on level n
and the Casimir constant L^2 - 1/4.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import DomainError
from .model import BasisState, PotentialParams, build_basis_state, eval_state

__all__ = [
    "EnvelopeImage",
    "LadderCoefficients",
    "apply_lowering",
    "apply_raising",
    "casimir_eigenvalue",
    "commutator_residual",
    "ladder_coefficients",
]


@dataclass(frozen=True)
class LadderCoefficients:
    n: int
    L: float
    raise_eig: float
    lower_eig: float
    gamma0: float


def ladder_coefficients(n: int, L: float) -> LadderCoefficients:
    if not isinstance(n, (int, np.integer)) or n < 0:
        raise DomainError(f"level index must be a nonnegative integer, got {n!r}")
    return LadderCoefficients(
        n=int(n),
        L=L,
        raise_eig=math.sqrt((n + 1.0) * (n + 2.0 * L + 1.0)),
        lower_eig=math.sqrt(n * (n + 2.0 * L)) if n > 0 else 0.0,
        gamma0=n + L + 0.5,
    )


@dataclass(frozen=True, eq=False)
class EnvelopeImage:
    """(1 - y^2)^(lam/2) times a polynomial in y, y = sin(tau)."""

    lam: float
    coeffs: np.ndarray

    def __call__(self, y) -> np.ndarray | float:
        yv = np.asarray(y, dtype=float)
        vals = (1.0 - yv * yv) ** (0.5 * self.lam) * npoly.polyval(yv, self.coeffs)
        if np.isscalar(y):
            return float(vals)
        return vals

    @property
    def is_zero(self) -> bool:
        return bool(np.all(self.coeffs == 0.0))


def _one_minus_y2_deriv(coeffs: np.ndarray) -> np.ndarray:
    du = npoly.polyder(coeffs)
    return npoly.polysub(du, npoly.polymulx(npoly.polymulx(du)))


def _raise_image(k: int, L: float, lam: float, coeffs: np.ndarray) -> np.ndarray:
    pref = math.sqrt((2.0 * k + 2.0 * L + 3.0) / (2.0 * k + 2.0 * L + 1.0))
    poly = npoly.polysub((k + 2.0 * lam) * npoly.polymulx(coeffs), _one_minus_y2_deriv(coeffs))
    return pref * poly


def _lower_image(k: int, L: float, lam: float, coeffs: np.ndarray) -> np.ndarray:
    pref = math.sqrt((2.0 * k + 2.0 * L - 1.0) / (2.0 * k + 2.0 * L + 1.0))
    poly = npoly.polyadd(k * npoly.polymulx(coeffs), _one_minus_y2_deriv(coeffs))
    return pref * poly


def apply_raising(state: BasisState) -> EnvelopeImage:
    """Image of the raising map on a basis state, as envelope-plus-polynomial data."""
    coeffs = state.scale * state.poly.coeffs
    return EnvelopeImage(state.lam, _raise_image(state.n, state.L, state.lam, coeffs))


def apply_lowering(state: BasisState) -> EnvelopeImage:
    """Image of the lowering map; the ground level is annihilated exactly."""
    coeffs = state.scale * state.poly.coeffs
    if state.n == 0:
        return EnvelopeImage(state.lam, np.zeros(1))
    return EnvelopeImage(state.lam, _lower_image(state.n, state.L, state.lam, coeffs))


def commutator_residual(n: int, params: PotentialParams, grid: np.ndarray | None = None) -> float:
    """Pointwise residual of [lower, raise] = 2 gamma0 on level n.

    The two operator chains are composed in coefficient space with the
    level-shifted prefactors, then compared to 2 (n + L + 1/2) psi_n on a tau
    grid.  Returns the max deviation scaled by max |psi_n|.
    """
    if grid is None:
        grid = np.linspace(-0.5 * np.pi + 0.05, 0.5 * np.pi - 0.05, 201)
    else:
        grid = np.asarray(grid, dtype=float)
        if np.any(np.abs(grid) >= 0.5 * np.pi):
            raise DomainError("grid must lie strictly inside (-pi/2, pi/2)")
    state = build_basis_state(n, params)
    L, lam = state.L, state.lam
    base = state.scale * state.poly.coeffs

    up = _raise_image(n, L, lam, base)
    up_down = _lower_image(n + 1, L, lam, up)

    down = _lower_image(n, L, lam, base) if n > 0 else np.zeros(1)
    if np.all(down == 0.0):
        down_up = np.zeros(1)
    else:
        down_up = _raise_image(n - 1, L, lam, down)

    gamma0 = n + L + 0.5
    resid_poly = npoly.polysub(npoly.polysub(up_down, down_up), 2.0 * gamma0 * base)
    y = np.sin(grid)
    env = np.cos(grid) ** lam
    resid = env * npoly.polyval(y, resid_poly)
    psi = eval_state(state, grid)
    return float(np.max(np.abs(resid)) / np.max(np.abs(psi)))


def casimir_eigenvalue(n: int, params: PotentialParams) -> float:
    """gamma0^2 - (raise_eig^2 + lower_eig^2) / 2 at level n; constant L^2 - 1/4."""
    lc = ladder_coefficients(n, params.L)
    return lc.gamma0**2 - 0.5 * (lc.raise_eig**2 + lc.lower_eig**2)
