"""Line-of-sight and Kronecker-correlated MIMO channels between two UCAs."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .geometry import UcaPair
from .numerics import erf, psd_sqrt, sample_complex_gaussian

LOS = "los-deterministic"
KRONECKER = "kronecker-fading"


@dataclass(frozen=True)
class LinkBudget:
    """Power, bandwidth and noise for a link.

    Lengths elsewhere are in wavelengths, so the free-space factor
    ``beta * lambda / (4 pi d)`` becomes ``beta / (4 pi d)``; ``wavelength``
    (meters) is informational.
    """

    power: float = 1.0
    bandwidth: float = 1e7
    noise_var: float = 1.0
    beta: float = 1.0
    wavelength: float = 1.0

    def __post_init__(self):
        for name in ("power", "bandwidth", "noise_var", "beta", "wavelength"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise DomainError(f"{name} must be positive and finite, got {value!r}")

    def path_gain(self, d: float) -> float:
        """Free-space amplitude gain at axial distance ``d`` (wavelengths)."""
        return self.beta / (4.0 * math.pi * d)

    def channel_snr(self, d: float) -> float:
        """``P beta^2 lambda^2 / (16 pi^2 d^2 sigma^2)``, the normalised channel SNR."""
        return self.power * self.path_gain(d) ** 2 / self.noise_var

    @classmethod
    def for_channel_snr(cls, snr: float, d: float, **kwargs) -> "LinkBudget":
        """Link budget whose power yields channel SNR ``snr`` at distance ``d``."""
        probe = cls(**kwargs)
        if snr <= 0:
            raise DomainError(f"channel SNR must be positive, got {snr!r}")
        power = snr * probe.noise_var / probe.path_gain(d) ** 2
        return cls(**{**kwargs, "power": power})


def normalization_kappa(std_dev: float) -> float:
    """Normaliser of the angle density truncated to one period around its mean."""
    if not std_dev > 0:
        raise DomainError(f"angular standard deviation must be positive, got {std_dev!r}")
    return 1.0 / erf(math.pi / (math.sqrt(2.0) * std_dev))


@dataclass(frozen=True)
class AngularSpread:
    """Truncated-Gaussian arrival-angle distribution (radians)."""

    mean_aoa: float
    std_dev: float
    kappa: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "kappa", normalization_kappa(self.std_dev))


@dataclass(frozen=True)
class SpatialCorrelation:
    side: str
    matrix: np.ndarray
    spread: AngularSpread
    radius: float

    @property
    def size(self) -> int:
        return self.matrix.shape[0]


def _correlation_terms(psi_u, psi_v, spread, radius):
    # sin(nu) comes from the cosine difference and cos(nu) from the sine
    # difference of the element azimuths.
    chord = np.sqrt(np.maximum(2.0 - 2.0 * np.cos(psi_u - psi_v), 0.0))
    xi = 2.0 * np.pi * radius * chord
    safe = np.where(chord > 0, chord, 1.0)
    sin_nu = (np.cos(psi_u) - np.cos(psi_v)) / safe
    cos_nu = (np.sin(psi_u) - np.sin(psi_v)) / safe
    th = spread.mean_aoa
    sin_shift = sin_nu * math.cos(th) + cos_nu * math.sin(th)
    cos_shift = cos_nu * math.cos(th) - sin_nu * math.sin(th)
    rho = spread.kappa * np.exp(
        -1j * xi * sin_shift - 0.5 * (xi * spread.std_dev * cos_shift) ** 2
    )
    return np.where(chord > 0, rho, spread.kappa + 0j)


def correlation_coeff(u: int, v: int, spread: AngularSpread, radius: float, count: int) -> complex:
    """Spatial correlation between elements ``u`` and ``v`` (1-based) of a UCA.

    ``radius`` is the ring radius in wavelengths and ``count`` the number of
    elements.  Equal indices give ``kappa``.
    """
    if not (1 <= u <= count and 1 <= v <= count):
        raise IndexError(f"element indices ({u}, {v}) outside 1..{count}")
    if u == v:
        return complex(spread.kappa)
    psi_u = 2.0 * math.pi * (u - 1) / count
    psi_v = 2.0 * math.pi * (v - 1) / count
    return complex(_correlation_terms(np.float64(psi_u), np.float64(psi_v), spread, radius))


def correlation_matrix(side: str, spread: AngularSpread, radius: float, count: int) -> SpatialCorrelation:
    """Full ``count x count`` correlation matrix for one side of the link."""
    if side not in ("tx", "rx"):
        raise DomainError(f"side must be 'tx' or 'rx', got {side!r}")
    if count < 1:
        raise DomainError(f"element count must be positive, got {count}")
    if not radius > 0:
        raise DomainError(f"radius must be positive, got {radius!r}")
    psi = 2.0 * np.pi * np.arange(count) / count
    g = _correlation_terms(psi[:, None], psi[None, :], spread, radius)
    # Enforce exact Hermitian symmetry; the two triangles agree to rounding.
    g = np.triu(g) + np.triu(g, 1).conj().T
    return SpatialCorrelation(side, g, spread, radius)


@dataclass(frozen=True)
class MimoChannel:
    matrix: np.ndarray
    kind: str
    path_gain: float

    @property
    def shape(self):
        return self.matrix.shape


def los_matrix(geo: UcaPair, lb: LinkBudget) -> MimoChannel:
    """Deterministic LoS matrix using the far-field phase expansion.

    Entries have constant modulus ``path_gain`` and phase
    ``-2 pi S + 2 pi r R cos(phi_n - psi_m) / S`` with ``S = sqrt(d^2+r^2+R^2)``.
    """
    pg = lb.path_gain(geo.d)
    s = geo.slant
    # Reduce the common phase modulo one wavelength before scaling by 2 pi.
    common = np.exp(-2j * np.pi * math.fmod(s, 1.0))
    h = pg * common * np.exp(1j * geo.bessel_arg * geo.angle_cosines())
    return MimoChannel(h, LOS, pg)


def _check_sides(gt: SpatialCorrelation, gr: SpatialCorrelation):
    if gt.side != "tx" or gr.side != "rx":
        raise DomainError("expected (transmit, receive) correlation matrices")


def synthesize_channel(gt: SpatialCorrelation, gr: SpatialCorrelation, lb: LinkBudget,
                       d: float, seed: int, draw: int = 0) -> MimoChannel:
    """One Kronecker-model realisation ``pg * Gr^1/2 Hg Gt^1/2``.

    ``Hg`` comes from substream ``(seed, draw)`` so any draw can be
    regenerated on its own.
    """
    _check_sides(gt, gr)
    pg = lb.path_gain(d)
    hg = sample_complex_gaussian(gr.size, gt.size, seed, draw)
    h = pg * (psd_sqrt(gr.matrix) @ hg @ psd_sqrt(gt.matrix))
    return MimoChannel(h, KRONECKER, pg)


def synthesize_batch(gt: SpatialCorrelation, gr: SpatialCorrelation, draws: int, seed: int) -> np.ndarray:
    """``(draws, M, N)`` stack of unit-path-gain Kronecker realisations.

    Draw ``k`` equals ``synthesize_channel(..., draw=k).matrix / path_gain``.
    """
    _check_sides(gt, gr)
    if draws < 1:
        raise DomainError(f"draws must be >= 1, got {draws}")
    st = psd_sqrt(gt.matrix)
    sr = psd_sqrt(gr.matrix)
    hg = np.stack([sample_complex_gaussian(gr.size, gt.size, seed, k) for k in range(draws)])
    return sr @ hg @ st
