"""Boundary trace and the Poisson harmonic extension of boundary data.

The extension of zero-mean boundary data g is kept semi-analytic: a list of
horizontal modes with exponential vertical profiles exp(-x_n |xi'|), exact to
evaluate anywhere in the strip and exactly harmonic mode by mode.  Lattice
materialization (for norm computations) is explicit and residual-audited,
since the profile is not periodic in x_n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionTooSmall, HomogeneousDCViolation, InvalidParameter
from .halfspace import HalfField, _leakage_of_values
from .interp import default_tgrid
from .lattice import (
    DC_TOL,
    Field,
    Lattice,
    SampleGrid,
    default_oversample,
    evaluate,
    is_homogeneous_admissible,
    k_axis,
    project_bandlimited,
    xi_norm,
)
from .multipliers import fractional_laplacian, poisson_decay
from .norms import lp_norm


def trace(u: Field) -> Field:
    """Boundary restriction x' -> u(x', 0): vertical mode amplitudes collapse."""
    lat = u.lattice
    if lat.n < 2:
        raise DimensionTooSmall("trace needs dimension n >= 2")
    return Field(lat.boundary(), u.coef.sum(axis=-1))


@dataclass(frozen=True, eq=False)
class PoissonField:
    """Harmonic extension of zero-mean boundary data into the strip."""

    boundary: Field

    @property
    def decay_rates(self) -> np.ndarray:
        return xi_norm(self.boundary.lattice)

    def slice_field(self, xn: float) -> Field:
        """Horizontal field at height x_n (exact per-mode damping)."""
        damped = self.boundary.coef * np.exp(-xn * self.decay_rates)
        return Field(self.boundary.lattice, damped)

    def evaluate(self, x) -> complex:
        x = np.asarray(x, dtype=float).reshape(-1)
        if x.size != self.boundary.lattice.n + 1:
            raise InvalidParameter("point dimension must be boundary dim + 1")
        return evaluate(self.slice_field(float(x[-1])), x[:-1])


def poisson_extend(g: Field) -> PoissonField:
    """Harmonic extension of zero-mean boundary data."""
    if not is_homogeneous_admissible(g, DC_TOL):
        raise HomogeneousDCViolation("harmonic extension needs zero-mean data")
    h = g.copy()
    h.coef[(g.lattice.K,) * g.lattice.n] = 0.0
    return PoissonField(h)


def trace_poisson(pf: PoissonField) -> Field:
    """Trace of the harmonic extension: recovers the boundary data exactly."""
    return pf.slice_field(0.0)


def materialize_poisson(
    pf: PoissonField, lat: Lattice, M: int | None = None
) -> tuple[HalfField, float]:
    """Sample the extension over the torus grid and project to the lattice.

    The profile keeps decaying past x_n = L/2, so the far face carries leakage
    of order exp(-(L/2) |xi'|) and the periodic seam at x_n = 0/L carries a
    jump of order exp(-L |xi'|); both are reported (leakage on the HalfField,
    seam damage in the projection residual).
    """
    blat = pf.boundary.lattice
    if lat.n != blat.n + 1 or lat.K != blat.K or lat.L != blat.L:
        raise InvalidParameter("target lattice must extend the boundary lattice")
    M = M or default_oversample(lat)
    xn = np.arange(M) * (lat.L / M)
    # (boundary modes..., M): amplitudes damped per height
    damped = pf.boundary.coef[..., None] * np.exp(
        -pf.decay_rates[..., None] * xn
    )
    padded = np.zeros((M,) * lat.n, dtype=complex)
    idx = np.ix_(*([k_axis(blat.K) % M] * blat.n + [np.arange(M)]))
    padded[idx] = damped
    axes = tuple(range(blat.n))
    values = np.fft.ifftn(padded, axes=axes) * float(M) ** blat.n
    field, residual = project_bandlimited(SampleGrid(lat, M, values), lat)
    leakage = _leakage_of_values(values, M, "upper")
    return HalfField(field, leakage, "upper"), residual


def poisson_besov_norm(
    u: Field,
    s: float,
    alpha: float,
    p: float,
    q: float,
    tgrid: np.ndarray | None = None,
) -> float:
    """Semigroup characterization norm || t^s (-Lap)^(a/2) e^(-t sqrt(-Lap)) u ||.

    The outer norm is L^q(dt/t) over a geometric grid; the small-t tail uses
    the monotone envelope (the integrand is below t^s times its t -> 0 limit)
    and integrates in closed form, while the large-t tail is exponentially
    dead far inside the grid.  Comparable to the dyadic-block norm of
    regularity alpha - s.
    """
    if s <= 0.0:
        raise InvalidParameter(f"vertical weight s must be positive, got {s}")
    if alpha < 0.0:
        raise InvalidParameter(f"order alpha must be nonnegative, got {alpha}")
    if not is_homogeneous_admissible(u, DC_TOL):
        raise HomogeneousDCViolation("semigroup norm needs a zero-mean field")
    if u.peak() == 0.0:
        return 0.0
    tgrid = default_tgrid() if tgrid is None else np.asarray(tgrid, dtype=float)
    lat = u.lattice
    base = fractional_laplacian(u, alpha)
    if math.isclose(p, 2.0):
        r = xi_norm(lat).reshape(-1)
        mass = np.abs(base.coef.reshape(-1)) ** 2
        damp = np.exp(-2.0 * np.outer(tgrid, r))
        g = np.sqrt(lat.L**lat.n * damp @ mass)
    else:
        g = np.array([lp_norm(poisson_decay(base, t), p) for t in tgrid])
    g0 = lp_norm(base, p)
    weighted = tgrid**s * g
    if math.isinf(q):
        return float(max(weighted.max(), tgrid[0] ** s * g0))
    integrand = weighted**q
    logt = np.log(tgrid)
    body = np.trapezoid(integrand, logt) if hasattr(np, "trapezoid") else np.trapz(
        integrand, logt
    )
    # Euler-Maclaurin endpoint correction: at the lower edge the integrand
    # still behaves like t^(sq) (log-derivative s q), at the upper edge it is
    # exponentially dead
    h = (logt[-1] - logt[0]) / (len(logt) - 1)
    body += (h * h / 12.0) * (s * q) * float(integrand[0])
    lower = (g0 * tgrid[0] ** s) ** q / (s * q)
    return float((body + lower) ** (1.0 / q))
