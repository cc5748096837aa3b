"""Norm functionals: Lebesgue, Besov, Sobolev (potential), Triebel-type, and
the frequency-block duality pairing.

All L^p quadrature uses the rectangle rule on the oversampled grid, which is
exact for band-limited integrands on the full torus.  Half-space norms
restrict the quadrature to the strip 0 <= x_n < L/2.  Identities needing
exact integrals over the strip (pairings of band-limited products) go through
spectral half-period weights instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping

import numpy as np

from .dyadic import DyadicFamily, build_dyadic_family, delta_dot, delta_inhom
from .errors import HomogeneousDCViolation, InvalidExponent, InvalidParameter
from .lattice import (
    DC_TOL,
    Field,
    Lattice,
    default_oversample,
    is_homogeneous_admissible,
    sample_grid,
)
from .multipliers import bessel_potential, fractional_laplacian

FAMILIES = ("Lp", "Hdot", "H", "Bdot", "B", "Fdot")
DOMAINS = ("whole", "halfspace", "halfspace_zero")


@dataclass(frozen=True)
class SpaceSpec:
    """Descriptor of a function-space norm: family, regularity, exponents, domain."""

    family: str
    s: float = 0.0
    p: float = 2.0
    q: float = math.inf
    domain: str = "whole"

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InvalidParameter(f"unknown family {self.family!r}")
        if self.domain not in DOMAINS:
            raise InvalidParameter(f"unknown domain {self.domain!r}")
        _check_exponent(self.p, "p")
        if self.family in ("B", "Bdot"):
            _check_exponent(self.q, "q")

    def label(self) -> str:
        parts = [f"s={self.s:g}", f"p={_fmt_exp(self.p)}"]
        if self.family in ("B", "Bdot"):
            parts.append(f"q={_fmt_exp(self.q)}")
        return f"{self.family}:" + ",".join(parts)


def _fmt_exp(p: float) -> str:
    return "inf" if math.isinf(p) else f"{p:g}"


def _check_exponent(p: float, name: str) -> None:
    if math.isnan(p) or p < 1.0:
        raise InvalidExponent(f"{name} must lie in [1, inf], got {p}")


def parse_space_spec(text: str, domain: str = "whole") -> SpaceSpec:
    """Parse strings like "Bdot:s=0.5,p=2,q=1" or "Lp:p=inf"."""
    head, _, rest = text.partition(":")
    family = head.strip()
    kwargs: dict[str, float] = {}
    if rest.strip():
        for item in rest.split(","):
            key, _, value = item.partition("=")
            key = key.strip()
            if key not in ("s", "p", "q"):
                raise InvalidParameter(f"unknown space parameter {key!r}")
            value = value.strip().lower()
            kwargs[key] = math.inf if value == "inf" else float(value)
    return SpaceSpec(family=family, domain=domain, **kwargs)


@lru_cache(maxsize=64)
def get_family(lat: Lattice) -> DyadicFamily:
    return build_dyadic_family(lat)


# ---------------------------------------------------------------------------
# Quadrature
# ---------------------------------------------------------------------------


def _domain_values(u: Field, domain: str, M: int | None) -> tuple[np.ndarray, float, int]:
    lat = u.lattice
    M = M or default_oversample(lat)
    values = sample_grid(u, M).values
    if domain == "halfspace":
        values = values[..., : M // 2]
    weight = (lat.L / M) ** lat.n
    return values, weight, M


def lp_norm(u: Field, p: float, domain: str = "whole", M: int | None = None) -> float:
    """Rectangle-rule L^p norm over the torus or the strip 0 <= x_n < L/2."""
    _check_exponent(p, "p")
    if domain not in DOMAINS:
        raise InvalidParameter(f"unknown domain {domain!r}")
    if domain == "halfspace_zero":
        domain = "whole"  # induced norm of zero-extended functions
    values, weight, _ = _domain_values(u, domain, M)
    mags = np.abs(values)
    if math.isinf(p):
        return float(mags.max()) if mags.size else 0.0
    return float((weight * np.sum(mags**p)) ** (1.0 / p))


def halfspace_product_integral(
    u: Field, v: Field, conjugate: bool = False, M: int | None = None
) -> complex:
    """Exact integral of u * v (or u * conj v) over the strip 0 <= x_n < L/2.

    The product of two band-limited fields is band-limited at twice the
    bandlimit, so its DFT on a grid with M >= 4K + 2 recovers the product's
    modes exactly and the strip integral reduces to closed-form half-period
    weights: L/2 at frequency zero, 0 at even vertical frequencies, and
    i L / (pi r) at odd vertical frequency r.
    """
    lat = u.lattice
    if v.lattice != lat:
        raise InvalidParameter("fields live on different lattices")
    M = M or default_oversample(lat)
    if M < 4 * lat.K + 2:
        raise InvalidParameter(f"M={M} too small for exact products (need 4K+2)")
    su = sample_grid(u, M).values
    sv = sample_grid(v, M).values
    prod = su * (np.conj(sv) if conjugate else sv)
    phat = np.fft.fftn(prod) / float(M) ** lat.n
    vertical = phat[(0,) * (lat.n - 1)] if lat.n > 1 else phat
    bins = np.arange(M)
    r = ((bins + M // 2) % M) - M // 2
    weights = np.zeros(M, dtype=complex)
    weights[r == 0] = lat.L / 2.0
    odd = (r % 2) != 0
    weights[odd] = 1j * lat.L / (math.pi * r[odd])
    return complex(lat.L ** (lat.n - 1) * np.sum(vertical * weights))


# ---------------------------------------------------------------------------
# Sequence norms
# ---------------------------------------------------------------------------


@dataclass
class WeightedSeq:
    """Finitely supported nonnegative sequence with a dyadic weight exponent."""

    entries: dict[int, float]
    s: float = 0.0


def seq_norm(a: Mapping[int, float] | WeightedSeq, s: float | None = None,
             q: float = 2.0) -> float:
    """Weighted little-lp norm (sum_j (2^{js} a_j)^q)^(1/q), sup for q = inf."""
    if isinstance(a, WeightedSeq):
        entries = a.entries
        s = a.s if s is None else s
    else:
        entries = dict(a)
        s = 0.0 if s is None else s
    _check_exponent(q, "q")
    terms = [2.0 ** (j * s) * float(v) for j, v in entries.items()]
    if not terms:
        return 0.0
    if math.isinf(q):
        return max(terms)
    return float(sum(t**q for t in terms) ** (1.0 / q))


# ---------------------------------------------------------------------------
# Function-space norms
# ---------------------------------------------------------------------------


def _require_admissible(u: Field, what: str) -> None:
    if not is_homogeneous_admissible(u, DC_TOL):
        raise HomogeneousDCViolation(f"{what} requires a zero-mean field")


def besov_norm(u: Field, spec: SpaceSpec, M: int | None = None) -> float:
    """Dyadic-block Besov norm, homogeneous (Bdot) or inhomogeneous (B)."""
    if spec.family not in ("B", "Bdot"):
        raise InvalidParameter(f"besov_norm got family {spec.family!r}")
    fam = get_family(u.lattice)
    entries: dict[int, float] = {}
    if spec.family == "Bdot":
        _require_admissible(u, "homogeneous Besov norm")
        for j in fam.j_range:
            entries[j] = lp_norm(delta_dot(u, j, fam), spec.p, spec.domain, M)
    else:
        for k in range(-1, fam.j_max + 1):
            entries[k] = lp_norm(delta_inhom(u, k, fam), spec.p, spec.domain, M)
    return seq_norm(entries, spec.s, spec.q)


def sobolev_norm(u: Field, spec: SpaceSpec, M: int | None = None) -> float:
    """Potential-norm Sobolev: Riesz (Hdot) or Bessel (H) multiplier then L^p."""
    if spec.family not in ("H", "Hdot"):
        raise InvalidParameter(f"sobolev_norm got family {spec.family!r}")
    if spec.family == "Hdot":
        _require_admissible(u, "homogeneous Sobolev norm")
        potential = fractional_laplacian(u, spec.s)
    else:
        potential = bessel_potential(u, spec.s)
    return lp_norm(potential, spec.p, spec.domain, M)


def triebel_norm(u: Field, s: float, p: float, domain: str = "whole",
                 M: int | None = None) -> float:
    """Square-function norm: pointwise l2 over scales of 2^{js} blocks, then L^p."""
    _check_exponent(p, "p")
    _require_admissible(u, "square-function norm")
    lat = u.lattice
    fam = get_family(lat)
    M = M or default_oversample(lat)
    agg = None
    for j in fam.j_range:
        vals = sample_grid(delta_dot(u, j, fam), M).values
        term = 4.0 ** (j * s) * np.abs(vals) ** 2
        agg = term if agg is None else agg + term
    g = np.sqrt(agg)
    if domain == "halfspace":
        g = g[..., : M // 2]
    if math.isinf(p):
        return float(g.max())
    weight = (lat.L / M) ** lat.n
    return float((weight * np.sum(g**p)) ** (1.0 / p))


def triebel_fubini_l2(u: Field, s: float) -> float:
    """Exchange-of-sums form of the p = 2 square-function norm."""
    fam = get_family(u.lattice)
    total = 0.0
    for j in fam.j_range:
        total += 4.0 ** (j * s) * lp_norm(delta_dot(u, j, fam), 2.0) ** 2
    return math.sqrt(total)


def _mode_pair(u: Field, v: Field) -> complex:
    """Bilinear torus integral of two band-limited fields: L^n sum c_k(u) c_{-k}(v)."""
    flipped = np.flip(v.coef)
    return complex(u.lattice.L ** u.lattice.n * np.sum(u.coef * flipped))


def pairing(u: Field, v: Field, domain: str = "whole") -> complex:
    """Bilinear duality pairing via near-diagonal frequency blocks.

    On the whole torus this equals the integral of u * v for zero-mean
    fields; on the half-space domain it is the exact strip integral of
    the product.
    """
    if u.lattice != v.lattice:
        raise InvalidParameter("fields live on different lattices")
    if domain == "halfspace":
        return halfspace_product_integral(u, v, conjugate=False)
    _require_admissible(u, "duality pairing")
    _require_admissible(v, "duality pairing")
    fam = get_family(u.lattice)
    ublocks = {j: delta_dot(u, j, fam) for j in fam.j_range}
    vblocks = {j: delta_dot(v, j, fam) for j in fam.j_range}
    total = 0.0 + 0.0j
    for j in fam.j_range:
        for jj in (j - 1, j, j + 1):
            if jj in vblocks:
                total += _mode_pair(ublocks[j], vblocks[jj])
    return total


def space_norm(u: Field, spec: SpaceSpec, M: int | None = None) -> float:
    """Dispatch on the space family."""
    if spec.family == "Lp":
        return lp_norm(u, spec.p, spec.domain, M)
    if spec.family in ("H", "Hdot"):
        return sobolev_norm(u, spec, M)
    if spec.family in ("B", "Bdot"):
        return besov_norm(u, spec, M)
    if spec.family == "Fdot":
        return triebel_norm(u, spec.s, spec.p, spec.domain, M)
    raise InvalidParameter(f"unknown family {spec.family!r}")
