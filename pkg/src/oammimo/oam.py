"""OAM mode multiplexing over UCAs and the Bessel-form mode channel.

Mode ``l`` is radiated by feeding element ``n`` (1-based) with phase
``2 pi (n-1) l / N``.  Phases are reduced as integers modulo ``N`` before
conversion to floating point, so aliased modes produce bit-identical
excitations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import AliasingError, DomainError
from .geometry import UcaPair
from .mimo import LinkBudget
from .numerics import bessel_j_orders

# j**l and (-j)**l by l mod 4, exact
_J_POW = np.array([1, 1j, -1, -1j])


@dataclass(frozen=True)
class ModeSet:
    """Consecutive integer OAM modes ``lower..upper``."""

    lower: int
    upper: int

    def __post_init__(self):
        if self.upper < self.lower:
            raise DomainError(f"empty mode set {self.lower}..{self.upper}")

    @classmethod
    def for_count(cls, count: int) -> "ModeSet":
        """Canonical set of ``count`` modes: ``floor((2-count)/2)..floor(count/2)``."""
        if count < 1:
            raise DomainError(f"element count must be positive, got {count}")
        return cls((2 - count) // 2, count // 2)

    @property
    def modes(self) -> np.ndarray:
        return np.arange(self.lower, self.upper + 1)

    def __len__(self):
        return self.upper - self.lower + 1

    def __contains__(self, l):
        return self.lower <= l <= self.upper

    def index(self, l: int) -> int:
        if l not in self:
            raise KeyError(l)
        return l - self.lower


@dataclass(frozen=True)
class ModeSignal:
    """Complex amplitude per mode of a :class:`ModeSet`."""

    entries: np.ndarray
    modes: ModeSet

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=complex)
        if entries.shape != (len(self.modes),):
            raise DomainError(
                f"expected {len(self.modes)} mode amplitudes, got shape {entries.shape}"
            )
        object.__setattr__(self, "entries", entries)

    def __getitem__(self, l):
        return self.entries[self.modes.index(l)]


def mode_range(geo: UcaPair) -> ModeSet:
    """Usable modes for a UCA pair: ``min(N, M)`` consecutive integers."""
    return ModeSet.for_count(min(geo.N, geo.M))


def alias_canonical(l: int, count: int) -> int:
    """The mode in the canonical range for ``count`` elements congruent to ``l``."""
    lower = (2 - count) // 2
    return lower + (l - lower) % count


def _unit_phases(k: np.ndarray, l: int, count: int) -> np.ndarray:
    # exp(j 2 pi k l / count) with k*l reduced exactly first
    return np.exp(2j * np.pi * ((k * l) % count) / count)


def excitation(l: int, count: int) -> np.ndarray:
    """Unit-norm element feed for mode ``l`` on a ``count``-element UCA."""
    return _unit_phases(np.arange(count), l, count) / math.sqrt(count)


def mux_matrix(modes: ModeSet, count: int) -> np.ndarray:
    """``count x len(modes)`` matrix whose columns are the mode excitations."""
    return np.stack([excitation(int(l), count) for l in modes.modes], axis=1)


def mux_excitation(s: ModeSignal, count: int) -> np.ndarray:
    """Element feeds carrying mode amplitudes ``s`` on a ``count``-element UCA."""
    canonical = ModeSet.for_count(count)
    if s.modes.lower < canonical.lower or s.modes.upper > canonical.upper:
        raise AliasingError(
            f"modes {s.modes.lower}..{s.modes.upper} exceed the canonical range "
            f"{canonical.lower}..{canonical.upper} for {count} elements"
        )
    return mux_matrix(s.modes, count) @ s.entries


def demux_project(samples, modes: ModeSet) -> ModeSignal:
    """Project receive-element samples onto each mode's phase ramp.

    The projection carries ``1/sqrt(M)`` so mux followed by demux is unitary.
    """
    samples = np.asarray(samples, dtype=complex)
    if samples.ndim != 1:
        raise DomainError("samples must be a vector")
    w = mux_matrix(modes, samples.shape[0])
    return ModeSignal(w.conj().T @ samples, modes)


def demux_phase_sum(l: int, l_r: int, count: int) -> complex:
    """Sum over receive elements of ``exp(j 2 pi (m-1)(l - l_r) / count)``.

    Equals ``count`` when ``l = l_r (mod count)`` and zero otherwise.
    """
    return complex(count) if (l - l_r) % count == 0 else 0j


@dataclass(frozen=True)
class OamChannel:
    """Diagonal per-mode channel."""

    gains: np.ndarray
    modes: ModeSet
    bessel_arg: float
    n_tx: int

    def gain(self, l: int) -> complex:
        return self.gains[self.modes.index(l)]

    def matrix(self) -> np.ndarray:
        return np.diag(self.gains)


def _common_factor(geo: UcaPair, lb: LinkBudget) -> complex:
    return lb.path_gain(geo.d) * np.exp(-2j * np.pi * math.fmod(geo.slant, 1.0))


def mode_gain_exact(l: int, m: int, geo: UcaPair, lb: LinkBudget) -> complex:
    """Gain from mode ``l`` into receive element ``m`` by the finite element sum."""
    psi = geo.azimuth_rx(m)
    n = np.arange(geo.N)
    terms = _unit_phases(n, l, geo.N) * np.exp(
        1j * geo.bessel_arg * np.cos(geo.tx_azimuths() - psi)
    )
    return complex(_common_factor(geo, lb) / math.sqrt(geo.N) * terms.sum())


def mode_gain_bessel(l: int, geo: UcaPair, lb: LinkBudget) -> complex:
    """Large-``N`` mode gain ``pg sqrt(N) e^{-j2piS} J_l(alpha) / (-j)^l``."""
    jl = bessel_j_orders([l], geo.bessel_arg)[0]
    return complex(_common_factor(geo, lb) * math.sqrt(geo.N) * _J_POW[l % 4] * jl)


def oam_channel_matrix(geo: UcaPair, lb: LinkBudget) -> OamChannel:
    modes = mode_range(geo)
    ls = modes.modes
    jl = bessel_j_orders(ls, geo.bessel_arg)
    gains = _common_factor(geo, lb) * math.sqrt(geo.N) * _J_POW[ls % 4] * jl
    return OamChannel(gains, modes, geo.bessel_arg, geo.N)


def orthogonality_integral(q1: int, q2: int, s1: complex, s2: complex) -> complex:
    """Azimuthal inner product of two integer-order helical fields."""
    if q1 != q2:
        return 0j
    return complex(2.0 * math.pi * s1 * np.conj(s2))


def fractional_fourier_coeffs(l: float, q_lo: int, q_hi: int) -> np.ndarray:
    """Fourier coefficients of ``exp(j phi l)`` on ``[0, 2 pi)`` for ``q = q_lo..q_hi``.

    Raises ``DomainError`` for (near-)integer ``l``, where the closed form
    has a pole and the expansion is a single term.
    """
    if abs(l - round(l)) < 1e-9:
        raise DomainError(f"order {l!r} is integral; its expansion is a single mode")
    q = np.arange(q_lo, q_hi + 1)
    return np.exp(1j * np.pi * l) * np.sin(np.pi * l) / (np.pi * (l - q))


def fractional_partial_sum(l: float, phi: float, q_max: int) -> complex:
    """Reconstruct ``exp(j phi l)`` from its Fourier terms with ``|q| <= q_max``."""
    q = np.arange(-q_max, q_max + 1)
    c = fractional_fourier_coeffs(l, -q_max, q_max)
    return complex(np.sum(c * np.exp(1j * phi * q)))
