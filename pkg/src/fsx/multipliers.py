"""Exact Fourier-multiplier engine on band-limited fields.

Symbols are evaluated in double precision at the exact lattice frequencies.
A symbol may be undefined on part of the frequency set (typically xi = 0, or
the plane xi' = 0 for boundary-tangential operators); applying it to a field
carrying non-negligible amplitude there raises HomogeneousDCViolation,
otherwise the offending modes are zeroed.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import HomogeneousDCViolation, InvalidParameter, SpectrumHit
from .lattice import DC_TOL, Field, Lattice, xi_axes, xi_norm, xi_norm_sq


@dataclass(frozen=True)
class Symbol:
    """Fourier multiplier m(xi) with an explicit singular set.

    fn maps the tuple of broadcastable frequency-component arrays to the
    symbol values on the mode grid.  singular (optional) marks frequencies
    where the symbol is undefined; None means defined everywhere.
    """

    fn: Callable[[tuple[np.ndarray, ...]], np.ndarray]
    singular: Callable[[tuple[np.ndarray, ...]], np.ndarray] | None = None
    name: str = "symbol"


def _xi_components(lat: Lattice) -> tuple[np.ndarray, ...]:
    comps = []
    for a, xi in enumerate(xi_axes(lat)):
        shape = [1] * lat.n
        shape[a] = lat.modes_per_axis
        comps.append(xi.reshape(shape))
    return tuple(comps)


def _apply_values(u: Field, values: np.ndarray, singular_mask, opname: str) -> Field:
    coef = u.coef
    if singular_mask is not None and np.any(singular_mask):
        bad = np.abs(coef) * singular_mask
        bound = DC_TOL * u.peak()
        if np.any(bad > bound):
            raise HomogeneousDCViolation(
                f"{opname}: field carries amplitude on frequencies where the "
                "symbol is undefined"
            )
        values = np.where(singular_mask, 0.0, values)
    return Field(u.lattice, coef * values)


def apply_symbol(u: Field, sym: Symbol) -> Field:
    comps = _xi_components(u.lattice)
    values = np.broadcast_to(np.asarray(sym.fn(comps)), u.lattice.mode_shape)
    mask = None
    if sym.singular is not None:
        mask = np.broadcast_to(np.asarray(sym.singular(comps)), u.lattice.mode_shape)
    return _apply_values(u, values, mask, sym.name)


def _zero_freq_mask(lat: Lattice) -> np.ndarray:
    return xi_norm_sq(lat) == 0.0


def fractional_laplacian(u: Field, s: float) -> Field:
    """(-Laplacian)^(s/2): multiplier |xi|^s, undefined at xi = 0."""
    lat = u.lattice
    r = xi_norm(lat)
    mask = r == 0.0
    with np.errstate(divide="ignore", invalid="ignore"):
        values = np.where(mask, 0.0, r) ** float(s)
    values = np.where(mask, 0.0, values)
    return _apply_values(u, values, mask, "fractional_laplacian")


def bessel_potential(u: Field, s: float) -> Field:
    """(I - Laplacian)^(s/2): multiplier (1 + |xi|^2)^(s/2), defined everywhere."""
    values = (1.0 + xi_norm_sq(u.lattice)) ** (0.5 * float(s))
    return _apply_values(u, values, None, "bessel_potential")


def derivative(u: Field, alpha: tuple[int, ...]) -> Field:
    """Partial derivative with multi-index alpha: multiplier prod (i xi_a)^alpha_a."""
    lat = u.lattice
    if len(alpha) != lat.n:
        raise InvalidParameter(f"multi-index length {len(alpha)} != n={lat.n}")
    if any(a < 0 or int(a) != a for a in alpha):
        raise InvalidParameter(f"multi-index must be nonnegative integers: {alpha}")
    values = np.ones(lat.mode_shape, dtype=complex)
    comps = _xi_components(lat)
    for a, order in enumerate(alpha):
        if order:
            values = values * (1j * comps[a]) ** int(order)
    return _apply_values(u, values, None, "derivative")


def gradient(u: Field) -> list[Field]:
    n = u.lattice.n
    out = []
    for a in range(n):
        alpha = [0] * n
        alpha[a] = 1
        out.append(derivative(u, tuple(alpha)))
    return out


def horizontal_norm_sq(lat: Lattice) -> np.ndarray:
    """|xi'|^2 over the mode grid (all axes except the last, vertical one)."""
    comps = _xi_components(lat)
    total = np.zeros(lat.mode_shape)
    for c in comps[:-1]:
        total = total + c**2
    return total


def horizontal_laplacian(u: Field) -> Field:
    """Laplacian in the first n-1 variables: multiplier -|xi'|^2."""
    return _apply_values(u, -horizontal_norm_sq(u.lattice), None, "horizontal_laplacian")


def horizontal_fractional(u: Field, s: float) -> Field:
    """(-Laplacian')^(s/2): multiplier |xi'|^s, undefined on the plane xi' = 0."""
    rsq = horizontal_norm_sq(u.lattice)
    mask = rsq == 0.0
    with np.errstate(divide="ignore", invalid="ignore"):
        values = np.where(mask, 0.0, np.sqrt(rsq)) ** float(s)
    values = np.where(mask, 0.0, values)
    return _apply_values(u, values, mask, "horizontal_fractional")


def poisson_decay(u: Field, t: float) -> Field:
    """Poisson semigroup at depth t: multiplier exp(-t |xi|)."""
    if t < 0:
        raise InvalidParameter(f"depth must be nonnegative, got {t}")
    return _apply_values(u, np.exp(-t * xi_norm(u.lattice)), None, "poisson_decay")


def laplacian(u: Field) -> Field:
    return _apply_values(u, -xi_norm_sq(u.lattice), None, "laplacian")


def resolvent_wholespace(f: Field, lam: complex) -> Field:
    """Solve (lam - Laplacian) u = f exactly, mode-wise.

    lam must avoid the negative real axis; lam = 0 is allowed for zero-DC f,
    giving the inverse Laplacian.
    """
    lam = complex(lam)
    lat = f.lattice
    rsq = xi_norm_sq(lat)
    if lam == 0:
        mask = rsq == 0.0
        with np.errstate(divide="ignore", invalid="ignore"):
            values = np.where(mask, 0.0, 1.0 / np.where(mask, 1.0, rsq))
        return _apply_values(f, values, mask, "inverse_laplacian")
    if lam.imag == 0.0 and lam.real < 0.0:
        denom = lam + rsq
        occupied = np.abs(f.coef) > 0.0
        if np.any(np.abs(denom[occupied]) == 0.0):
            raise SpectrumHit(f"lam={lam} hits an occupied Laplacian eigenvalue")
        raise InvalidParameter(
            f"lam={lam} lies on the negative real axis (outside every sector)"
        )
    values = 1.0 / (lam + rsq)
    return _apply_values(f, values, None, "resolvent_wholespace")


def sector_angle(lam: complex) -> float:
    """|arg lam|; raises for lam = 0."""
    lam = complex(lam)
    if lam == 0:
        raise InvalidParameter("lam = 0 has no argument")
    return abs(cmath.phase(lam))
