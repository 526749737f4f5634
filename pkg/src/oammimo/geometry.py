"""Coaxial transmit/receive uniform circular array (UCA) pair.

All lengths are in carrier wavelengths.  Element indices are 1-based to
match the usual array notation; vectorised helpers return 0-based arrays.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

FAR_FIELD_FACTOR = 10.0


class FarFieldWarning(UserWarning):
    """The axial distance is not large compared with the ring radii."""


@dataclass(frozen=True)
class UcaPair:
    """Aligned, parallel UCAs separated by an axial distance.

    Attributes
    ----------
    N, M : int
        Transmit and receive element counts.
    r, R : float
        Transmit and receive ring radii, in wavelengths.
    d : float
        Centre-to-centre axial distance, in wavelengths.
    """

    N: int
    M: int
    r: float
    R: float
    d: float

    def __post_init__(self):
        for name in ("N", "M"):
            value = getattr(self, name)
            if int(value) != value or value < 1:
                raise DomainError(f"{name} must be a positive integer, got {value!r}")
        for name in ("r", "R", "d"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise DomainError(f"{name} must be positive and finite, got {value!r}")
        if self.d < FAR_FIELD_FACTOR * max(self.r, self.R):
            warnings.warn(
                f"d={self.d:g} is below {FAR_FIELD_FACTOR:g} x max(r, R); "
                "the far-field approximation may be poor",
                FarFieldWarning,
                stacklevel=3,
            )

    @classmethod
    def from_meters(cls, N, M, r, R, d, wavelength):
        """Build from lengths in meters, normalising by ``wavelength``."""
        if not wavelength > 0:
            raise DomainError(f"wavelength must be positive, got {wavelength!r}")
        return cls(N, M, r / wavelength, R / wavelength, d / wavelength)

    @property
    def slant(self) -> float:
        """``sqrt(d^2 + r^2 + R^2)``, the mean element-to-element distance."""
        return math.sqrt(self.d**2 + self.r**2 + self.R**2)

    @property
    def bessel_arg(self) -> float:
        """Argument of the Bessel mode gains, ``2 pi r R / sqrt(d^2 + r^2 + R^2)``."""
        return 2.0 * math.pi * self.r * self.R / self.slant

    def azimuth_tx(self, n: int) -> float:
        if not 1 <= n <= self.N:
            raise IndexError(f"transmit index {n} outside 1..{self.N}")
        return 2.0 * math.pi * (n - 1) / self.N

    def azimuth_rx(self, m: int) -> float:
        if not 1 <= m <= self.M:
            raise IndexError(f"receive index {m} outside 1..{self.M}")
        return 2.0 * math.pi * (m - 1) / self.M

    def distance_exact(self, n: int, m: int) -> float:
        """Exact distance from transmit element ``n`` to receive element ``m``."""
        c = math.cos(self.azimuth_tx(n) - self.azimuth_rx(m))
        return math.sqrt(self.d**2 + self.r**2 + self.R**2 - 2.0 * self.r * self.R * c)

    def distance_approx(self, n: int, m: int) -> float:
        """First-order expansion of :meth:`distance_exact` in ``rR / (d^2+r^2+R^2)``."""
        c = math.cos(self.azimuth_tx(n) - self.azimuth_rx(m))
        s = self.slant
        return s - self.r * self.R * c / s

    def tx_azimuths(self) -> np.ndarray:
        return 2.0 * np.pi * np.arange(self.N) / self.N

    def rx_azimuths(self) -> np.ndarray:
        return 2.0 * np.pi * np.arange(self.M) / self.M

    def angle_cosines(self) -> np.ndarray:
        """``M x N`` matrix of ``cos(phi_n - psi_m)``."""
        return np.cos(self.tx_azimuths()[None, :] - self.rx_azimuths()[:, None])

    def distance_matrix(self, exact: bool = True) -> np.ndarray:
        """``M x N`` matrix of element distances (exact or first-order)."""
        c = self.angle_cosines()
        if exact:
            return np.sqrt(self.d**2 + self.r**2 + self.R**2 - 2.0 * self.r * self.R * c)
        s = self.slant
        return s - self.r * self.R * c / s
