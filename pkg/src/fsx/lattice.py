"""Frequency lattice and band-limited fields with exact pointwise evaluation.

The continuum is modeled by the torus [0, L)^n with default L = 2*pi, so mode
k carries the frequency xi = (2*pi/L) * k and every Fourier multiplier acts
exactly on the finitely many stored modes.  Quadrature error only enters via
oversampled grids.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import AliasingRisk, BandlimitExceeded, InvalidParameter, IoError

TWO_PI = 2.0 * math.pi

# Relative DC tolerance below which a field counts as zero-mean.
DC_TOL = 1e-12


@dataclass(frozen=True)
class Lattice:
    """Frequency lattice: dimension n, per-axis bandlimit K, period L."""

    n: int
    K: int
    L: float = TWO_PI

    @property
    def freq_scale(self) -> float:
        return TWO_PI / self.L

    @property
    def modes_per_axis(self) -> int:
        return 2 * self.K + 1

    @property
    def mode_shape(self) -> tuple[int, ...]:
        return (2 * self.K + 1,) * self.n

    def boundary(self) -> "Lattice":
        """Lattice of the hyperplane spanned by the first n-1 axes."""
        if self.n < 2:
            raise InvalidParameter("boundary lattice needs n >= 2")
        return Lattice(self.n - 1, self.K, self.L)


def make_lattice(n: int, K: int, L: float = TWO_PI) -> Lattice:
    if n < 1:
        raise InvalidParameter(f"dimension must be >= 1, got {n}")
    if K < 1:
        raise InvalidParameter(f"bandlimit must be >= 1, got {K}")
    if not (L > 0):
        raise InvalidParameter(f"period must be positive, got {L}")
    return Lattice(int(n), int(K), float(L))


def default_oversample(lat: Lattice, factor: int = 4) -> int:
    """Samples per axis: factor * 2K rounded up to a power of two."""
    target = max(factor * 2 * lat.K, 2 * lat.K + 2)
    return 1 << (target - 1).bit_length()


@lru_cache(maxsize=128)
def k_axis(K: int) -> np.ndarray:
    ks = np.arange(-K, K + 1)
    ks.flags.writeable = False
    return ks


@lru_cache(maxsize=128)
def xi_axes(lat: Lattice) -> tuple[np.ndarray, ...]:
    """Per-axis frequency values, index i <-> mode k = i - K."""
    out = []
    for _ in range(lat.n):
        xi = lat.freq_scale * k_axis(lat.K).astype(float)
        xi.flags.writeable = False
        out.append(xi)
    return tuple(out)


@lru_cache(maxsize=128)
def xi_norm_sq(lat: Lattice) -> np.ndarray:
    """|xi|^2 on the full mode grid."""
    axes = xi_axes(lat)
    total = np.zeros(lat.mode_shape)
    for a in range(lat.n):
        shape = [1] * lat.n
        shape[a] = lat.modes_per_axis
        total = total + (axes[a] ** 2).reshape(shape)
    total.flags.writeable = False
    return total


@lru_cache(maxsize=128)
def xi_norm(lat: Lattice) -> np.ndarray:
    r = np.sqrt(xi_norm_sq(lat))
    r.flags.writeable = False
    return r


@dataclass(frozen=True, eq=False)
class Field:
    """Band-limited trigonometric polynomial stored as a dense mode array.

    coef[i_1, ..., i_n] is the amplitude of mode k = (i_1 - K, ..., i_n - K).
    Treated as immutable; operations return new fields.
    """

    lattice: Lattice
    coef: np.ndarray

    def __post_init__(self):
        if self.coef.shape != self.lattice.mode_shape:
            raise InvalidParameter(
                f"coef shape {self.coef.shape} != {self.lattice.mode_shape}"
            )

    def copy(self) -> "Field":
        return Field(self.lattice, self.coef.copy())

    def __add__(self, other: "Field") -> "Field":
        _check_same_lattice(self, other)
        return Field(self.lattice, self.coef + other.coef)

    def __sub__(self, other: "Field") -> "Field":
        _check_same_lattice(self, other)
        return Field(self.lattice, self.coef - other.coef)

    def __mul__(self, scalar: complex) -> "Field":
        return Field(self.lattice, self.coef * scalar)

    __rmul__ = __mul__

    def __neg__(self) -> "Field":
        return Field(self.lattice, -self.coef)

    @property
    def dc(self) -> complex:
        return complex(self.coef[(self.lattice.K,) * self.lattice.n])

    def peak(self) -> float:
        return float(np.max(np.abs(self.coef)))


def _check_same_lattice(u: Field, v: Field) -> None:
    if u.lattice != v.lattice:
        raise InvalidParameter("fields live on different lattices")


def zero_field(lat: Lattice) -> Field:
    return Field(lat, np.zeros(lat.mode_shape, dtype=complex))


def constant_field(lat: Lattice, value: complex) -> Field:
    u = zero_field(lat)
    u.coef[(lat.K,) * lat.n] = value
    return u


def plane_wave(lat: Lattice, k: tuple[int, ...], amp: complex = 1.0) -> Field:
    """Single mode amp * exp(i xi_k . x)."""
    k = tuple(int(c) for c in k)
    if len(k) != lat.n:
        raise InvalidParameter(f"mode index has length {len(k)}, lattice n={lat.n}")
    if any(abs(c) > lat.K for c in k):
        raise BandlimitExceeded(f"mode {k} outside bandlimit {lat.K}")
    u = zero_field(lat)
    u.coef[tuple(c + lat.K for c in k)] = amp
    return u


def field_from_modes(lat: Lattice, modes: dict[tuple[int, ...], complex]) -> Field:
    u = zero_field(lat)
    for k, c in modes.items():
        if any(abs(int(ci)) > lat.K for ci in k):
            raise BandlimitExceeded(f"mode {k} outside bandlimit {lat.K}")
        u.coef[tuple(int(ci) + lat.K for ci in k)] = c
    return u


def is_homogeneous_admissible(u: Field, tol: float = DC_TOL) -> bool:
    """Zero-DC surrogate for distributions with vanishing low-frequency part."""
    return abs(u.dc) <= tol * u.peak()


def evaluate(u: Field, x) -> complex:
    """Exact value sum_k c_k exp(i xi_k . x) at an arbitrary point."""
    x = np.asarray(x, dtype=float).reshape(-1)
    if x.size != u.lattice.n:
        raise InvalidParameter(f"point has dim {x.size}, lattice n={u.lattice.n}")
    if not np.all(np.isfinite(x)):
        raise InvalidParameter("evaluation point must be finite")
    v = u.coef
    for a, xi in enumerate(xi_axes(u.lattice)):
        phase = np.exp(1j * xi * x[a])
        v = np.tensordot(v, phase, axes=([0], [0]))
    return complex(v)


def evaluate_points(u: Field, pts: np.ndarray) -> np.ndarray:
    """Vectorized evaluate over an (m, n) array of points."""
    pts = np.asarray(pts, dtype=float)
    if pts.ndim == 1:
        pts = pts[None, :]
    n = u.lattice.n
    letters = "abcdefgh"[:n]
    spec = letters + "," + ",".join("m" + c for c in letters) + "->m"
    phases = [
        np.exp(1j * np.outer(pts[:, a], xi)) for a, xi in enumerate(xi_axes(u.lattice))
    ]
    return np.einsum(spec, u.coef, *phases)


def sample_slices(u: Field, xn_values: np.ndarray, M: int) -> np.ndarray:
    """Values of u on (x'-grid of size M^(n-1)) x (arbitrary vertical points).

    Output shape: (len(xn_values), M, ..., M).  The vertical coordinate is the
    last lattice axis; evaluation there is an exact trigonometric sum.
    """
    lat = u.lattice
    xn_values = np.asarray(xn_values, dtype=float)
    xi_n = xi_axes(lat)[-1]
    # Contract the vertical axis: (modes', T)
    phase = np.exp(1j * np.outer(xi_n, xn_values))
    sliced = np.tensordot(u.coef, phase, axes=([lat.n - 1], [0]))
    sliced = np.moveaxis(sliced, -1, 0)  # (T, modes')
    if lat.n == 1:
        return sliced.reshape(-1)
    if M < 2 * lat.K + 2:
        raise AliasingRisk(f"M={M} < 2K+2={2 * lat.K + 2}")
    shape = (len(xn_values),) + (M,) * (lat.n - 1)
    padded = np.zeros(shape, dtype=complex)
    idx = np.ix_(*([np.arange(len(xn_values))] + [k_axis(lat.K) % M] * (lat.n - 1)))
    padded[idx] = sliced
    axes = tuple(range(1, lat.n))
    return np.fft.ifftn(padded, axes=axes) * float(M) ** (lat.n - 1)


@dataclass(frozen=True, eq=False)
class SampleGrid:
    """Values of a field on the regular grid x = (L/M) * j."""

    lattice: Lattice
    M: int
    values: np.ndarray


def sample_grid(u: Field, M: int) -> SampleGrid:
    """Sample on the M^n grid via zero-padded inverse DFT (exact)."""
    lat = u.lattice
    if M < 2 * lat.K + 2:
        raise AliasingRisk(f"M={M} < 2K+2={2 * lat.K + 2}")
    padded = np.zeros((M,) * lat.n, dtype=complex)
    idx = np.ix_(*([k_axis(lat.K) % M] * lat.n))
    padded[idx] = u.coef
    values = np.fft.ifftn(padded) * float(M) ** lat.n
    return SampleGrid(lat, M, values)


def project_bandlimited(s: SampleGrid, target: Lattice) -> tuple[Field, float]:
    """Truncate the DFT of the samples to the target bandlimit.

    Returns the projected field and the relative l2 magnitude of the
    discarded tail (0 for exactly band-limited input).
    """
    if s.values.ndim != target.n:
        raise InvalidParameter("sample grid dimension != target dimension")
    M = s.M
    if M < 2 * target.K + 2:
        raise AliasingRisk(f"M={M} < 2K+2={2 * target.K + 2}")
    chat = np.fft.fftn(s.values) / float(M) ** target.n
    idx = np.ix_(*([k_axis(target.K) % M] * target.n))
    kept = chat[idx].copy()
    # sum the discarded bins directly; subtracting two near-equal totals would
    # drown small tails in cancellation noise
    chat[idx] = 0.0
    tail = float(np.sum(np.abs(chat) ** 2))
    retained = float(np.sum(np.abs(kept) ** 2))
    total = retained + tail
    residual = math.sqrt(tail / total) if total > 0.0 else 0.0
    return Field(target, kept), residual


def dilate(u: Field, m: int) -> Field:
    """Dyadic dilation: mode k -> 2^m k with amplitudes scaled by 2^(-m n/2).

    The amplitude factor makes the map an L^2 isometry up to the whole-space
    scaling 2^(-m n/2), so potential norms transform like their continuum
    counterparts under u -> u(2^m .).
    """
    if m < 0 or int(m) != m:
        raise InvalidParameter(f"dilation exponent must be a nonneg integer, got {m}")
    lat = u.lattice
    lam = 1 << int(m)
    occupied = np.argwhere(np.abs(u.coef) > 0.0)
    if occupied.size == 0:
        return zero_field(lat)
    ks = occupied - lat.K
    new_ks = ks * lam
    if np.any(np.abs(new_ks) > lat.K):
        raise BandlimitExceeded(f"dilation by 2^{m} leaves the bandlimit {lat.K}")
    out = zero_field(lat)
    factor = 2.0 ** (-m * lat.n / 2.0)
    out.coef[tuple((new_ks + lat.K).T)] = u.coef[tuple(occupied.T)] * factor
    return out


# ---------------------------------------------------------------------------
# JSON field format: {"n", "K", "L", "modes": [[k_1..k_n, re, im], ...]}
# ---------------------------------------------------------------------------

AMPLITUDE_FLOOR = 1e-300


def field_to_dict(u: Field) -> dict:
    lat = u.lattice
    occupied = np.argwhere(np.abs(u.coef) >= AMPLITUDE_FLOOR)
    modes = []
    for idx in occupied:
        c = u.coef[tuple(idx)]
        modes.append([int(i - lat.K) for i in idx] + [float(c.real), float(c.imag)])
    modes.sort(key=lambda row: row[: lat.n])
    return {"n": lat.n, "K": lat.K, "L": lat.L, "modes": modes}


def field_from_dict(data: dict) -> Field:
    try:
        lat = make_lattice(int(data["n"]), int(data["K"]), float(data["L"]))
        modes = data["modes"]
    except (KeyError, TypeError, ValueError) as exc:
        raise IoError(f"malformed field data: {exc}") from exc
    u = zero_field(lat)
    seen = set()
    for row in modes:
        if len(row) != lat.n + 2:
            raise IoError(f"mode row has length {len(row)}, expected {lat.n + 2}")
        k = tuple(int(c) for c in row[: lat.n])
        if k in seen:
            raise IoError(f"duplicate mode {k}")
        seen.add(k)
        if any(abs(c) > lat.K for c in k):
            raise IoError(f"mode {k} outside bandlimit {lat.K}")
        u.coef[tuple(c + lat.K for c in k)] = complex(float(row[-2]), float(row[-1]))
    return u


def save_field(u: Field, path: str, extra: dict | None = None) -> None:
    data = field_to_dict(u)
    if extra:
        data.update(extra)
    try:
        with open(path, "w") as fh:
            json.dump(data, fh)
            fh.write(os.linesep)
    except OSError as exc:
        raise IoError(str(exc)) from exc


def load_field(path: str) -> Field:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise IoError(str(exc)) from exc
    return field_from_dict(data)
