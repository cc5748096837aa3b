"""Real-interpolation machinery: split-functional curves and interpolation norms.

The split functional K(t) = inf { ||a||_X0 + t ||b||_X1 : u = a + b } is
estimated two ways: an upper bound minimizing over dyadic low/high frequency
splits, and a closed-form quadratic-mean value for couples of p = 2 potential
spaces (exact up to the universal factor sqrt(2)).  Interpolation norms put
t^(-theta) K(t) into L^q(dt/t) via trapezoid quadrature on a geometric grid,
with analytic tail terms from the monotonicity envelope of K.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dyadic import lowpass_values
from .errors import FsxError, InvalidParameter, NotHilbertCouple, ZeroField
from .lattice import Field, Lattice, xi_norm, xi_norm_sq
from .norms import SpaceSpec, get_family, sobolev_norm, space_norm

T_EXPONENT = 20
T_POINTS = 81


def default_tgrid() -> np.ndarray:
    return np.logspace(-T_EXPONENT, T_EXPONENT, T_POINTS, base=2.0)


@dataclass(frozen=True)
class Couple:
    """Pair of space descriptors over a common domain."""

    X0: SpaceSpec
    X1: SpaceSpec

    def __post_init__(self):
        if self.X0.domain != self.X1.domain:
            raise InvalidParameter("couple spaces must share a domain")


@dataclass
class KCurve:
    """Sampled split-functional: values K(t) on a t-grid."""

    tgrid: np.ndarray
    values: np.ndarray
    kind: str  # "upper_dyadic" | "exact_hilbert"

    def __post_init__(self):
        t = np.asarray(self.tgrid, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if t.shape != v.shape or t.ndim != 1:
            raise InvalidParameter("tgrid and values must be equal-length vectors")
        scale = float(v.max(initial=0.0))
        slack = 1e-10 * max(scale, 1.0)
        if np.any(np.diff(v) < -slack):
            raise FsxError("split functional must be nondecreasing in t")
        ratio = v / t
        if np.any(np.diff(ratio) > 1e-10 * max(float(ratio.max(initial=0.0)), 1.0)):
            raise FsxError("K(t)/t must be nonincreasing in t")


def _space_s(spec: SpaceSpec) -> float:
    return 0.0 if spec.family == "Lp" else spec.s


def _strip_dc(u: Field) -> Field:
    v = u.copy()
    v.coef[(u.lattice.K,) * u.lattice.n] = 0.0
    return v


def _part_norm(part: Field, spec: SpaceSpec, ref_peak: float) -> float:
    if part.peak() <= 1e-14 * ref_peak:
        return 0.0
    if spec.family in ("Hdot", "Bdot", "Fdot"):
        part = _strip_dc(part)  # DC is invisible to homogeneous norms
    return space_norm(part, spec)


def split_candidates(u: Field, c: Couple) -> list[tuple[float, float, str]]:
    """Cost pairs (A, B) with u = a + b, ||a||_X0 = A, ||b||_X1 = B.

    Candidates: the trivial splits and every dyadic low/high cut, with the
    low-frequency part assigned to the smoother space.
    """
    lat = u.lattice
    fam = get_family(lat)
    peak = u.peak()
    out = [
        (_part_norm(u, c.X0, peak), 0.0, "all_X0"),
        (0.0, _part_norm(u, c.X1, peak), "all_X1"),
    ]
    low_to_x1 = _space_s(c.X0) <= _space_s(c.X1)
    for j in range(fam.j_min, fam.j_max + 2):
        low = Field(lat, u.coef * lowpass_values(lat, j))
        high = u - low
        if low_to_x1:
            a, b = high, low
        else:
            a, b = low, high
        out.append(
            (_part_norm(a, c.X0, peak), _part_norm(b, c.X1, peak), f"cut_j{j}")
        )
    return out


def k_functional_upper(u: Field, c: Couple, t: float) -> float:
    """Upper bound on K(t, u) from the candidate split set."""
    if t <= 0:
        raise InvalidParameter(f"t must be positive, got {t}")
    cands = split_candidates(u, c)
    return min(a + t * b for a, b, _ in cands)


def k_curve_upper(u: Field, c: Couple, tgrid: np.ndarray | None = None) -> KCurve:
    tgrid = default_tgrid() if tgrid is None else np.asarray(tgrid, dtype=float)
    cands = split_candidates(u, c)
    aa = np.array([a for a, _, _ in cands])
    bb = np.array([b for _, b, _ in cands])
    values = np.min(aa[None, :] + tgrid[:, None] * bb[None, :], axis=1)
    return KCurve(tgrid, values, "upper_dyadic")


def _hilbert_weights(spec: SpaceSpec, lat: Lattice) -> np.ndarray:
    """Plancherel weight per mode for p = 2 potential-type spaces."""
    if spec.domain != "whole":
        raise NotHilbertCouple("exact split functional needs whole-domain spaces")
    if not math.isclose(spec.p, 2.0):
        raise NotHilbertCouple(f"exact split functional needs p = 2, got p={spec.p}")
    if spec.family == "Lp":
        return np.ones(lat.mode_shape)
    if spec.family == "Hdot":
        r = xi_norm(lat)
        with np.errstate(divide="ignore", invalid="ignore"):
            w = np.where(r == 0.0, 0.0, r) ** spec.s
        return np.where(r == 0.0, 0.0, w)
    if spec.family == "H":
        return (1.0 + xi_norm_sq(lat)) ** (0.5 * spec.s)
    raise NotHilbertCouple(f"family {spec.family!r} is not a p=2 potential space")


def k_curve_exact_hilbert(
    u: Field, c: Couple, tgrid: np.ndarray | None = None
) -> KCurve:
    """Quadratic-mean split functional; between K/sqrt(2) and K."""
    tgrid = default_tgrid() if tgrid is None else np.asarray(tgrid, dtype=float)
    lat = u.lattice
    w0 = _hilbert_weights(c.X0, lat)
    w1 = _hilbert_weights(c.X1, lat)
    mass = np.abs(u.coef.reshape(-1)) ** 2
    a = (w0.reshape(-1) ** 2)[None, :]
    b = (w1.reshape(-1) ** 2)[None, :] * (tgrid**2)[:, None]
    with np.errstate(divide="ignore", invalid="ignore"):
        harm = np.where(a + b > 0.0, a * b / np.where(a + b > 0.0, a + b, 1.0), 0.0)
    values = np.sqrt(lat.L**lat.n * harm @ mass)
    return KCurve(tgrid, values, "exact_hilbert")


def k_functional_exact_hilbert(u: Field, c: Couple, t: float) -> float:
    if t <= 0:
        raise InvalidParameter(f"t must be positive, got {t}")
    curve = k_curve_exact_hilbert(u, c, np.array([t]))
    return float(curve.values[0])


def best_k_curve(u: Field, c: Couple, tgrid: np.ndarray | None = None) -> KCurve:
    try:
        return k_curve_exact_hilbert(u, c, tgrid)
    except NotHilbertCouple:
        return k_curve_upper(u, c, tgrid)


def interp_norm_from_curve(curve: KCurve, theta: float, q: float) -> float:
    """L^q(dt/t) norm of t^(-theta) K(t) with analytic tail terms.

    Below the grid K is modeled as linear in t (its exact small-t behavior),
    above the grid as constant (its exact large-t limit); both integrate in
    closed form.
    """
    if not (0.0 < theta < 1.0):
        raise InvalidParameter(f"theta must lie in (0, 1), got {theta}")
    if q < 1.0:
        raise InvalidParameter(f"q must lie in [1, inf], got {q}")
    t = curve.tgrid
    v = curve.values
    if float(v.max(initial=0.0)) == 0.0:
        return 0.0
    weighted = t ** (-theta) * v
    if math.isinf(q):
        return float(weighted.max())
    logt = np.log(t)
    integrand = weighted**q
    body = np.trapezoid(integrand, logt) if hasattr(np, "trapezoid") else np.trapz(
        integrand, logt
    )
    # Euler-Maclaurin endpoint correction with the envelope's limiting slopes:
    # K ~ t below the grid (integrand slope (1-theta) q) and K ~ const above
    # (slope -theta q)
    h = (logt[-1] - logt[0]) / (len(logt) - 1)
    body -= (h * h / 12.0) * (
        (-theta * q) * float(integrand[-1]) - (1.0 - theta) * q * float(integrand[0])
    )
    t1, t2 = float(t[0]), float(t[-1])
    k1, k2 = float(v[0]), float(v[-1])
    lower = (k1**q) * t1 ** (-theta * q) / ((1.0 - theta) * q)
    upper = (k2**q) * t2 ** (-theta * q) / (theta * q)
    return float((max(body, 0.0) + lower + upper) ** (1.0 / q))


def real_interp_norm(
    u: Field,
    c: Couple,
    theta: float,
    q: float,
    tgrid: np.ndarray | None = None,
) -> float:
    """Interpolation norm from the best available split-functional curve."""
    if u.peak() == 0.0:
        return 0.0
    curve = best_k_curve(u, c, tgrid)
    return interp_norm_from_curve(curve, theta, q)


def holder_check(
    u: Field, s0: float, s1: float, p0: float, p1: float, theta: float
) -> float:
    """Ratio ||u||_{s,p} / (||u||_{s0,p0}^(1-theta) ||u||_{s1,p1}^theta).

    The target indices interpolate linearly: s = (1-theta) s0 + theta s1 and
    1/p = (1-theta)/p0 + theta/p1.
    """
    if u.peak() == 0.0:
        raise ZeroField("ratio undefined for the zero field")
    if not (0.0 < theta < 1.0):
        raise InvalidParameter(f"theta must lie in (0, 1), got {theta}")
    s = (1.0 - theta) * s0 + theta * s1
    p = 1.0 / ((1.0 - theta) / p0 + theta / p1)
    num = sobolev_norm(u, SpaceSpec("Hdot", s=s, p=p))
    den0 = sobolev_norm(u, SpaceSpec("Hdot", s=s0, p=p0))
    den1 = sobolev_norm(u, SpaceSpec("Hdot", s=s1, p=p1))
    den = den0 ** (1.0 - theta) * den1**theta
    if den == 0.0:
        raise ZeroField("denominator vanished")
    return num / den
