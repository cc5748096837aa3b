"""Deterministic test-field corpora.

Every field is reproducible from (seed, kind, size, lattice): per-field RNG
streams are derived from the seed and the case index, never from scheduling.
Random fields carry independent complex-normal amplitudes with algebraic
spectral decay; strip corpora are exact sine/cosine series in the vertical
variable; bump corpora are periodized Gaussians with audited truncation.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import InvalidParameter
from .lattice import Field, Lattice, k_axis, zero_field, xi_norm

KINDS = (
    "random_bandlimited",
    "sine_strip",
    "cosine_strip",
    "boundary_bump",
    "plane_waves",
)


@dataclass
class Corpus:
    seed: int
    kind: str
    size: int
    lattice: Lattice
    fields: list[Field] = dc_field(default_factory=list)

    def digest(self) -> str:
        h = hashlib.sha256()
        lat = self.lattice
        h.update(f"{lat.n}:{lat.K}:{lat.L!r}:{self.kind}:{self.seed}".encode())
        for u in self.fields:
            h.update(np.ascontiguousarray(u.coef).tobytes())
        return h.hexdigest()


def _rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, index]))


def _decay_weights(lat: Lattice, d: float) -> np.ndarray:
    return (1.0 + xi_norm(lat) / lat.freq_scale) ** (-d)


def random_field(
    lat: Lattice, rng: np.random.Generator, decay: float = 2.0, zero_dc: bool = True
) -> Field:
    shape = lat.mode_shape
    coef = (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / math.sqrt(2)
    coef *= _decay_weights(lat, decay)
    if zero_dc:
        coef[(lat.K,) * lat.n] = 0.0
    return Field(lat, coef)


def sine_strip_field(
    lat: Lattice, rng: np.random.Generator, decay: float = 2.0
) -> Field:
    """Sum of sin(m x_n) * exp(i xi' . x') modes; vanishes at x_n in {0, L/2}."""
    u = zero_field(lat)
    K = lat.K
    horiz = lat.mode_shape[:-1]
    for m in range(1, K + 1):
        amp = (rng.standard_normal(horiz) + 1j * rng.standard_normal(horiz)) / math.sqrt(2)
        kprime_sq = np.zeros(horiz)
        for a in range(lat.n - 1):
            shape = [1] * (lat.n - 1)
            shape[a] = 2 * K + 1
            kprime_sq = kprime_sq + (k_axis(K).astype(float) ** 2).reshape(shape)
        weight = (1.0 + np.sqrt(kprime_sq + m * m)) ** (-decay)
        u.coef[..., K + m] += amp * weight / 2j
        u.coef[..., K - m] -= amp * weight / 2j
    return u


def cosine_strip_field(
    lat: Lattice, rng: np.random.Generator, decay: float = 2.0
) -> Field:
    """Sum of cos(m x_n) * exp(i xi' . x') modes; zero normal derivative at x_n = 0."""
    u = zero_field(lat)
    K = lat.K
    horiz = lat.mode_shape[:-1]
    for m in range(0, K + 1):
        amp = (rng.standard_normal(horiz) + 1j * rng.standard_normal(horiz)) / math.sqrt(2)
        kprime_sq = np.zeros(horiz)
        for a in range(lat.n - 1):
            shape = [1] * (lat.n - 1)
            shape[a] = 2 * K + 1
            kprime_sq = kprime_sq + (k_axis(K).astype(float) ** 2).reshape(shape)
        weight = (1.0 + np.sqrt(kprime_sq + m * m)) ** (-decay)
        if m == 0:
            u.coef[..., K] += amp * weight
        else:
            u.coef[..., K + m] += amp * weight / 2
            u.coef[..., K - m] += amp * weight / 2
    u.coef[(K,) * lat.n] = 0.0  # zero mean, so inverse-Laplacian problems are solvable
    return u


def gaussian_bump_profile(lat: Lattice, center: float, sigma: float) -> np.ndarray:
    """Vertical-mode amplitudes of a periodized Gaussian bump exp(-(x-c)^2/2s^2).

    Also returns (implicitly, through decay) the truncation quality: the
    neglected spectral tail is of order exp(-(K sigma xi_1)^2 / 2).
    """
    ks = k_axis(lat.K).astype(float) * lat.freq_scale
    norm = sigma * math.sqrt(2.0 * math.pi) / lat.L
    return norm * np.exp(-0.5 * (sigma * ks) ** 2) * np.exp(-1j * ks * center)


def bump_field(
    lat: Lattice,
    center: float,
    sigma: float,
    horizontal: np.ndarray | None = None,
    even: bool = False,
) -> Field:
    """Bump in x_n times a horizontal mode profile.

    even=True symmetrizes in x_n (bumps at +-center), making the field an
    exact cosine series in the vertical variable.
    """
    profile = gaussian_bump_profile(lat, center, sigma)
    if even:
        profile = profile + gaussian_bump_profile(lat, -center, sigma)
    u = zero_field(lat)
    if lat.n == 1:
        u.coef[:] = profile
        return u
    if horizontal is None:
        horizontal = np.zeros(lat.mode_shape[:-1], dtype=complex)
        idx = [lat.K] * (lat.n - 1)
        idx[0] += 1
        horizontal[tuple(idx)] = 1.0  # exp(i x_1)
    u.coef[:] = horizontal[..., None] * profile[None if lat.n == 1 else ...]
    return u


def bump_truncation_error(lat: Lattice, sigma: float) -> float:
    """Relative amplitude of the discarded Gaussian tail at the bandlimit."""
    return math.exp(-0.5 * (sigma * lat.freq_scale * (lat.K + 1)) ** 2)


DEFAULT_BUMP_SIGMA = 0.19


def corpus_bump_sigma(lat: Lattice) -> float:
    """Widest of the default width and the resolvability floor of the lattice.

    The spectral tail of a periodized Gaussian at the bandlimit is
    exp(-(sigma xi_{K+1})^2 / 2); keeping it below ~1e-9 needs
    sigma xi_{K+1} >= 6.5.  Note the far-face leakage budget of 1e-8 is then
    attainable only for K >= ~20 (uncertainty tradeoff against the distance
    from the bump center to the measured band).
    """
    return max(DEFAULT_BUMP_SIGMA, 6.5 / (lat.freq_scale * (lat.K + 1)))


def boundary_bump_field(
    lat: Lattice, rng: np.random.Generator, decay: float = 2.0
) -> Field:
    """Even vertical bump at x_n = +-L/8 times a zero-mean horizontal profile."""
    horiz = None
    if lat.n > 1:
        shape = lat.mode_shape[:-1]
        horiz = (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / math.sqrt(2)
        blat = Lattice(lat.n - 1, lat.K, lat.L)
        horiz *= (1.0 + xi_norm(blat) / lat.freq_scale) ** (-decay)
        horiz[(lat.K,) * (lat.n - 1)] = 0.0
    return bump_field(lat, lat.L / 8.0, corpus_bump_sigma(lat), horizontal=horiz, even=True)


def _plane_wave_field(lat: Lattice, rng: np.random.Generator, taken: set) -> Field:
    while True:
        k = tuple(int(c) for c in rng.integers(-lat.K, lat.K + 1, size=lat.n))
        if k != (0,) * lat.n and k not in taken:
            taken.add(k)
            break
    u = zero_field(lat)
    u.coef[tuple(c + lat.K for c in k)] = 1.0
    return u


def generate_corpus(
    seed: int, kind: str, size: int, lat: Lattice, decay: float = 2.0
) -> Corpus:
    """Deterministic corpus; identical (seed, kind, size, lattice) give identical fields."""
    if size < 1:
        raise InvalidParameter(f"corpus size must be >= 1, got {size}")
    if kind not in KINDS:
        raise InvalidParameter(f"unknown corpus kind {kind!r}")
    fields: list[Field] = []
    taken: set = set()
    for i in range(size):
        rng = _rng(seed, i)
        if kind == "random_bandlimited":
            fields.append(random_field(lat, rng, decay))
        elif kind == "sine_strip":
            fields.append(sine_strip_field(lat, rng, decay))
        elif kind == "cosine_strip":
            fields.append(cosine_strip_field(lat, rng, decay))
        elif kind == "boundary_bump":
            fields.append(boundary_bump_field(lat, rng, decay))
        else:
            fields.append(_plane_wave_field(lat, rng, taken))
    return Corpus(seed, kind, size, lat, fields)
