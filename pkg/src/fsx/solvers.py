"""Half-space Laplacian solvers by the method of images.

Resolvents extend the source to the torus by odd (Dirichlet) or even
(Neumann) reflection, invert mode-wise on the whole space, and restrict.
Inhomogeneous boundary-value problems split into a whole-space particular
solution plus a Poisson harmonic correction matching the boundary data; the
correction stays semi-analytic so solutions evaluate exactly at arbitrary
strip points.  Outward normal convention: nu = -e_n at x_n = 0.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import InvalidParameter, ZeroField
from .halfspace import HalfField, half_peak, make_half_field, reflect_parity
from .lattice import Field, Lattice, zero_field
from .multipliers import (
    derivative,
    fractional_laplacian,
    gradient,
    laplacian,
    resolvent_wholespace,
)
from .norms import halfspace_product_integral, lp_norm
from .poisson import PoissonField, materialize_poisson, poisson_extend, trace

DIRICHLET = "dirichlet"
NEUMANN = "neumann"


def _check_bc(bc: str) -> str:
    if bc not in (DIRICHLET, NEUMANN):
        raise InvalidParameter(f"boundary condition must be dirichlet|neumann, got {bc!r}")
    return bc


@dataclass(frozen=True)
class SectorPoint:
    """Spectral shift lam inside the sector |arg z| < mu < pi."""

    lam: complex
    mu: float

    def __post_init__(self):
        if self.lam == 0:
            raise InvalidParameter("lam must be nonzero")
        if not (0.0 < self.mu < math.pi):
            raise InvalidParameter(f"mu must lie in (0, pi), got {self.mu}")
        if abs(cmath.phase(complex(self.lam))) >= self.mu:
            raise InvalidParameter(
                f"lam={self.lam} lies outside the sector of angle {self.mu}"
            )


def _lam_value(lam) -> complex:
    return complex(lam.lam) if isinstance(lam, SectorPoint) else complex(lam)


def resolvent_halfspace(
    f: HalfField,
    lam,
    bc: str,
    M: int | None = None,
    max_leakage: float | None = None,
) -> tuple[HalfField, float]:
    """Solve (lam - Laplacian) u = f on the strip with the given condition.

    Returns the solution as a HalfField together with the reflection
    projection residual.
    """
    bc = _check_bc(bc)
    parity = "odd" if bc == DIRICHLET else "even"
    extended, residual = reflect_parity(f, parity, M=M, max_leakage=max_leakage)
    u_full = resolvent_wholespace(extended, _lam_value(lam))
    return make_half_field(u_full), residual


def resolvent_estimate_check(
    f: HalfField, lam, bc: str
) -> tuple[float, float, float]:
    """Scaled resolvent ratios (|lam| ||u||, |lam|^1/2 ||grad u||, ||grad2 u||) / ||f||.

    All norms are L2 over the strip.
    """
    if half_peak(f) == 0.0:
        raise ZeroField("resolvent estimate undefined for zero source")
    lam = _lam_value(lam)
    u, _ = resolvent_halfspace(f, lam, bc)
    norm_f = lp_norm(f.field, 2.0, "halfspace")
    n0 = lp_norm(u.field, 2.0, "halfspace")
    n1 = math.sqrt(sum(lp_norm(d, 2.0, "halfspace") ** 2 for d in gradient(u.field)))
    n2_sq = 0.0
    n = u.field.lattice.n
    for a in range(n):
        for b in range(n):
            alpha = [0] * n
            alpha[a] += 1
            alpha[b] += 1
            n2_sq += lp_norm(derivative(u.field, tuple(alpha)), 2.0, "halfspace") ** 2
    return (
        abs(lam) * n0 / norm_f,
        math.sqrt(abs(lam)) * n1 / norm_f,
        math.sqrt(n2_sq) / norm_f,
    )


@dataclass(eq=False)
class BvpSolution:
    """Solution u = v + w: band-limited particular part plus harmonic correction."""

    v: Field
    w: PoissonField
    bc: str
    source: HalfField
    boundary_data: Field
    reflection_residual: float

    @property
    def lattice(self) -> Lattice:
        return self.v.lattice

    def evaluate(self, x) -> complex:
        from .lattice import evaluate as _eval

        return _eval(self.v, x) + self.w.evaluate(x)

    def materialize(self, M: int | None = None) -> tuple[HalfField, float]:
        mat, residual = materialize_poisson(self.w, self.lattice, M=M)
        return make_half_field(self.v + mat.field), residual

    def interior_residual(self) -> float:
        """L2-strip norm of (-Laplacian v) - f; the harmonic part is exact."""
        r = -1.0 * laplacian(self.v) - self.source.field
        return lp_norm(r, 2.0, "halfspace")

    def boundary_mismatch(self) -> float:
        """Sup over the boundary of the imposed condition's defect."""
        if self.bc == DIRICHLET:
            got = trace(self.v) + self.w.slice_field(0.0)
        else:
            dn_v = -1.0 * trace(derivative(self.v, _vertical_index(self.lattice)))
            dn_w = fractional_laplacian(self.w.slice_field(0.0), 1.0)
            got = dn_v + dn_w
        return lp_norm(got - self.boundary_data, math.inf)


def _vertical_index(lat: Lattice) -> tuple[int, ...]:
    alpha = [0] * lat.n
    alpha[-1] = 1
    return tuple(alpha)


def _drop_dc_dust(g: Field, scale: float) -> Field:
    # the boundary corrections are exactly zero-mean by construction; strip
    # floating-point dust so singular boundary multipliers stay happy, but
    # leave genuine mean content in place for the precondition check
    if abs(g.dc) > 1e-11 * max(scale, abs(g.dc)):
        return g
    out = g.copy()
    out.coef[(g.lattice.K,) * g.lattice.n] = 0.0
    return out


def _as_boundary_zero(lat: Lattice) -> Field:
    return zero_field(lat.boundary())


def bvp_dirichlet(
    f: HalfField | None, g: Field | None, lat: Lattice | None = None
) -> BvpSolution:
    """Solve -Laplacian u = f on the strip with u = g on the boundary.

    The particular part inverts the Laplacian of the odd extension; the
    harmonic part corrects the boundary trace with a Poisson extension of
    g minus the particular trace (both zero-mean by construction/precondition).
    """
    if f is None and g is None:
        raise InvalidParameter("need at least one of f, g")
    if f is None:
        if lat is None:
            if g is None:
                raise InvalidParameter("need a lattice")
            lat = Lattice(g.lattice.n + 1, g.lattice.K, g.lattice.L)
        f = make_half_field(zero_field(lat))
    lat = f.field.lattice
    if g is None:
        g = _as_boundary_zero(lat)
    extended, residual = reflect_parity(f, "odd")
    v = resolvent_wholespace(extended, 0.0)
    tv = trace(v)
    scale = max(g.peak(), tv.peak(), v.peak())
    w = poisson_extend(_drop_dc_dust(g - tv, scale))
    return BvpSolution(v, w, DIRICHLET, f, g, residual)


def bvp_neumann(
    f: HalfField | None, g: Field | None, lat: Lattice | None = None
) -> BvpSolution:
    """Solve -Laplacian u = f on the strip with du/dnu = g on the boundary.

    With nu = -e_n the Poisson extension of (-Laplacian')^(-1/2) h has normal
    derivative exactly h at the boundary, so the harmonic part corrects the
    particular normal derivative in closed form.  Both f (after even
    reflection) and g must be zero-mean.
    """
    if f is None and g is None:
        raise InvalidParameter("need at least one of f, g")
    if f is None:
        if lat is None:
            if g is None:
                raise InvalidParameter("need a lattice")
            lat = Lattice(g.lattice.n + 1, g.lattice.K, g.lattice.L)
        f = make_half_field(zero_field(lat))
    lat = f.field.lattice
    if g is None:
        g = _as_boundary_zero(lat)
    extended, residual = reflect_parity(f, "even")
    v = resolvent_wholespace(extended, 0.0)  # raises if the source has mean
    dn_v = -1.0 * trace(derivative(v, _vertical_index(lat)))
    scale = max(g.peak(), dn_v.peak(), v.peak())
    target = _drop_dc_dust(g - dn_v, scale)
    h = fractional_laplacian(target, -1.0)
    w = poisson_extend(h)
    return BvpSolution(v, w, NEUMANN, f, g, residual)


def energy_form(u: HalfField, v: HalfField, M: int | None = None) -> complex:
    """Sesquilinear Dirichlet form: exact strip integral of grad u . conj grad v."""
    total = 0.0 + 0.0j
    for du, dv in zip(gradient(u.field), gradient(v.field)):
        total += halfspace_product_integral(du, dv, conjugate=True, M=M)
    return total
