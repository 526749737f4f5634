"""Degrees of freedom and Shannon capacity for the MIMO and OAM links."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ShapeError
from .geometry import UcaPair
from .mimo import LinkBudget, MimoChannel, SpatialCorrelation, synthesize_batch
from .numerics import bessel_j_orders, herm_eig
from .oam import OamChannel, mode_range

DEFAULT_RANK_TOL = 1e-3
DEFAULT_DRAWS = 1000


def singular_values(a) -> np.ndarray:
    """Singular values of ``a``, descending.

    Taken from a direct SVD; square roots of the eigenvalues of ``a a^H``
    bottom out near ``sqrt(eps)`` relative and would overstate the rank.
    """
    a = np.atleast_2d(np.asarray(a, dtype=complex))
    if not np.all(np.isfinite(a)):
        raise ShapeError("matrix has non-finite entries")
    return np.linalg.svd(a, compute_uv=False)


def effective_rank(a, rel_tol: float = DEFAULT_RANK_TOL) -> int:
    """Number of singular values above ``rel_tol`` times the largest."""
    if not 0 < rel_tol < 1:
        raise DomainError(f"rel_tol must lie in (0, 1), got {rel_tol!r}")
    s = singular_values(a)
    if s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > rel_tol * s[0]))


def dof_mimo(gt: SpatialCorrelation, gr: SpatialCorrelation, rel_tol: float = DEFAULT_RANK_TOL) -> int:
    """Generic rank of ``Gr^1/2 Hg Gt^1/2`` for a full-rank ``Hg``."""
    return min(effective_rank(gt.matrix, rel_tol), effective_rank(gr.matrix, rel_tol),
               gt.size, gr.size)


def dof_ratio(geo: UcaPair, gt: SpatialCorrelation, gr: SpatialCorrelation,
              rel_tol: float = DEFAULT_RANK_TOL) -> float:
    """OAM-to-MIMO DoF ratio ``min(N, M) / rank``; always >= 1."""
    if (gt.size, gr.size) != (geo.N, geo.M):
        raise DomainError(
            f"correlation sizes ({gt.size}, {gr.size}) do not match geometry ({geo.N}, {geo.M})"
        )
    return min(geo.N, geo.M) / dof_mimo(gt, gr, rel_tol)


def _mimo_scale(h, lb: LinkBudget) -> float:
    n_tx = np.shape(h)[-1]
    return lb.power / (lb.noise_var * n_tx)


def capacity_mimo(h, lb: LinkBudget) -> float:
    """Equal-power MIMO capacity in bits/s, summed over eigenmodes of ``H H^H``.

    ``h`` may be a :class:`MimoChannel` or a bare matrix.
    """
    h = h.matrix if isinstance(h, MimoChannel) else np.asarray(h, dtype=complex)
    gamma = np.clip(herm_eig(h @ h.conj().T).eigenvalues, 0.0, None)
    return float(lb.bandwidth * np.sum(np.log2(1.0 + _mimo_scale(h, lb) * gamma)))


def capacity_mimo_logdet(h, lb: LinkBudget) -> float:
    """Same as :func:`capacity_mimo` via ``log2 det(I + P/(sigma^2 N) H H^H)``."""
    h = h.matrix if isinstance(h, MimoChannel) else np.asarray(h, dtype=complex)
    a = np.eye(h.shape[0]) + _mimo_scale(h, lb) * (h @ h.conj().T)
    sign, logdet = np.linalg.slogdet(a)
    return float(lb.bandwidth * logdet.real / np.log(2.0))


def capacity_oam(ch: OamChannel, lb: LinkBudget) -> float:
    """Sum of per-mode capacities ignoring inter-mode interference.

    Per-mode SNR is ``P |h_l|^2 / (sigma^2 N)`` with ``N`` the transmit
    element count, i.e. ``snr_ch * J_l(alpha)^2``.
    """
    snr = lb.power * np.abs(ch.gains) ** 2 / (lb.noise_var * ch.n_tx)
    return float(lb.bandwidth * np.sum(np.log2(1.0 + snr)))


def capacity_oam_bessel(jl, snr_ch, bandwidth: float) -> np.ndarray:
    """OAM capacity from Bessel mode amplitudes over a grid of channel SNRs."""
    snr_ch = np.atleast_1d(np.asarray(snr_ch, dtype=float))
    jl2 = np.asarray(jl, dtype=float) ** 2
    return bandwidth * np.log2(1.0 + snr_ch[:, None] * jl2[None, :]).sum(axis=1)


def ergodic_capacity_mimo(gt: SpatialCorrelation, gr: SpatialCorrelation, lb: LinkBudget,
                          snr_grid, draws: int = DEFAULT_DRAWS, seed: int = 0):
    """Mean Kronecker-channel capacity over ``draws`` realisations.

    ``snr_grid`` holds channel SNRs (linear).  The path gain is absorbed into
    the channel SNR, so realisations are drawn with unit path gain.

    Returns
    -------
    mean, stderr : ndarray
        Per-SNR sample mean and its standard error, in bits/s.
    """
    if draws < 1:
        raise DomainError(f"draws must be >= 1, got {draws}")
    snr = np.atleast_1d(np.asarray(snr_grid, dtype=float))
    h = synthesize_batch(gt, gr, draws, seed)
    gamma = np.linalg.eigvalsh(h @ np.conj(np.swapaxes(h, -1, -2)))
    gamma = np.clip(gamma, 0.0, None)
    # (draws, snr) capacities, reduced over draws in index order
    caps = lb.bandwidth * np.log2(1.0 + snr[None, :, None] * gamma[:, None, :] / gt.size).sum(axis=2)
    mean = caps.mean(axis=0)
    if draws > 1:
        stderr = caps.std(axis=0, ddof=1) / np.sqrt(draws)
    else:
        stderr = np.zeros_like(mean)
    return mean, stderr


@dataclass(frozen=True)
class CapacityReport:
    snr_ch: float
    c_mimo: float
    c_oam: float
    dof_mimo: int
    dof_oam: int
    dof_ratio: float
    draws: int
    seed: int


def compare(geo: UcaPair, gt: SpatialCorrelation, gr: SpatialCorrelation, snr_ch: float,
            bandwidth: float = 1e7, draws: int = DEFAULT_DRAWS, seed: int = 0,
            rel_tol: float = DEFAULT_RANK_TOL) -> CapacityReport:
    """DoF and capacity of both systems at one channel SNR."""
    lb = LinkBudget(bandwidth=bandwidth)
    c_mimo, _ = ergodic_capacity_mimo(gt, gr, lb, [snr_ch], draws, seed)
    jl = bessel_j_orders(mode_range(geo).modes, geo.bessel_arg)
    c_oam = capacity_oam_bessel(jl, [snr_ch], bandwidth)[0]
    dm = dof_mimo(gt, gr, rel_tol)
    do = min(geo.N, geo.M)
    return CapacityReport(float(snr_ch), float(c_mimo[0]), float(c_oam), dm, do, do / dm, draws, seed)
