"""Numerical kernels shared by the channel models.

Integer-order Bessel functions of the first kind, the error function,
Hermitian eigendecomposition, PSD matrix square roots and seeded
complex-Gaussian sampling.  Everything here is a pure function of its
arguments; random draws take their seed explicitly.
"""

from __future__ import annotations

import math
import operator
from typing import NamedTuple

import numpy as np

from .errors import DomainError, NotPSDError, ShapeError

MAX_BESSEL_ORDER = 64
MAX_BESSEL_ARG = 1e3

# Below this |x| the ascending series is used; its terms then shrink
# monotonically so cancellation costs at most a factor I_0(2)/|J_0(2)| ~ 10.
_SERIES_LIMIT = 2.0
_RESCALE = 1e100


def _bessel_series(n: int, x: float) -> float:
    half = 0.5 * x
    term = 1.0
    for k in range(1, n + 1):
        term *= half / k
    total = term
    q = -half * half
    for k in range(1, 200):
        term *= q / (k * (k + n))
        total += term
        if abs(term) <= 1e-17 * abs(total):
            break
    return total


def _bessel_miller(n: int, x: float) -> float:
    # Backward recurrence from well above the turning point, normalised with
    # J_0^2 + 2*sum_{k>=1} J_k^2 = 1 (no cancellation) and signed with
    # J_0 + 2*sum J_2k = 1.
    top = max(n, int(x))
    m = 2 * ((top + 20 + int(math.sqrt(40.0 * top))) // 2)
    two_over_x = 2.0 / x
    j_above = 0.0
    j_here = 1e-30
    result = 0.0
    sum_sq = 0.0
    sum_even = 0.0
    for k in range(m, 0, -1):
        j_below = k * two_over_x * j_here - j_above
        j_above, j_here = j_here, j_below
        order = k - 1
        if order == n:
            result = j_here
        if order >= 1:
            sum_sq += 2.0 * j_here * j_here
            if order % 2 == 0:
                sum_even += 2.0 * j_here
        if abs(j_here) > _RESCALE:
            j_here /= _RESCALE
            j_above /= _RESCALE
            result /= _RESCALE
            sum_sq /= _RESCALE * _RESCALE
            sum_even /= _RESCALE
    sum_sq += j_here * j_here
    sum_even += j_here
    norm = math.sqrt(sum_sq)
    if sum_even < 0.0:
        norm = -norm
    return result / norm


def bessel_j(order: int, arg: float) -> float:
    """Bessel function of the first kind, ``J_order(arg)``, for integer order.

    Parameters
    ----------
    order : int
        Integer order with ``|order| <= 64``.
    arg : float
        Real argument with ``|arg| <= 1e3``.

    Returns
    -------
    float
        ``J_order(arg)`` with absolute error below 1e-12.  Small values keep
        full relative precision, which the OAM mode gains rely on.

    Raises
    ------
    DomainError
        If the order is not an integer or either argument is out of range.
    """
    try:
        n = operator.index(order)
    except TypeError:
        raise DomainError(f"order must be an integer, got {order!r}") from None
    x = float(arg)
    if abs(n) > MAX_BESSEL_ORDER:
        raise DomainError(f"|order| must be <= {MAX_BESSEL_ORDER}, got {n}")
    if not math.isfinite(x) or abs(x) > MAX_BESSEL_ARG:
        raise DomainError(f"|arg| must be <= {MAX_BESSEL_ARG:g}, got {arg!r}")

    sign = 1.0
    if n < 0:
        n = -n
        if n % 2:
            sign = -sign
    if x < 0.0:
        x = -x
        if n % 2:
            sign = -sign

    if x == 0.0:
        return sign if n == 0 else 0.0
    if x <= _SERIES_LIMIT:
        return sign * _bessel_series(n, x)
    return sign * _bessel_miller(n, x)


def bessel_j_orders(orders, arg: float) -> np.ndarray:
    """Vector of ``J_l(arg)`` over an iterable of integer orders."""
    return np.array([bessel_j(int(l), arg) for l in orders], dtype=float)


def erf(x: float) -> float:
    """Error function; thin wrapper over :func:`math.erf`."""
    return math.erf(x)


class HermitianSpectrum(NamedTuple):
    """Eigen-decomposition ``A = V diag(w) V^H`` with ``w`` sorted descending."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def _as_square(a) -> np.ndarray:
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise ShapeError(f"expected a non-empty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ShapeError("matrix has non-finite entries")
    return a


def herm_eig(a, tol: float = 1e-9) -> HermitianSpectrum:
    """Eigen-decompose a Hermitian matrix.

    Raises ``ShapeError`` if ``a`` is not square or departs from Hermitian
    symmetry by more than ``tol`` relative to its Frobenius norm.
    """
    a = _as_square(a)
    scale = np.linalg.norm(a)
    if np.linalg.norm(a - a.conj().T) > tol * max(scale, np.finfo(float).tiny):
        raise ShapeError("matrix is not Hermitian")
    w, v = np.linalg.eigh(a)
    return HermitianSpectrum(w[::-1].copy(), v[:, ::-1].copy())


def psd_sqrt(a, clamp_tol: float = 1e-6) -> np.ndarray:
    """Hermitian square root ``S`` of a PSD matrix, ``S @ S ~= a``.

    Eigenvalues down to ``-clamp_tol * max(eigenvalue)`` are clamped to zero;
    anything more negative raises ``NotPSDError``.  Eigenvalues at the
    rounding floor (``n * eps * max``) are zeroed so their square roots do not
    inflate the rank of ``S``.
    """
    w, v = herm_eig(a)
    top = max(w[0], 0.0)
    if w[-1] < -clamp_tol * top or (top == 0.0 and w[-1] < 0.0):
        raise NotPSDError(
            f"smallest eigenvalue {w[-1]:.3e} is below -{clamp_tol:g} x largest ({top:.3e})"
        )
    floor = w.shape[0] * np.finfo(float).eps * top
    root = np.sqrt(np.where(w > floor, w, 0.0))
    s = (v * root) @ v.conj().T
    return 0.5 * (s + s.conj().T)


def substream(seed: int, index: int = 0) -> np.random.Generator:
    """Generator for draw ``index`` of the stream rooted at ``seed``.

    Counter-based (Philox) keyed by ``(seed, index)``, so draw ``k`` is the
    same no matter which other draws were made or in what order.
    """
    if seed < 0 or seed >= 2**64:
        raise DomainError(f"seed must be an unsigned 64-bit integer, got {seed}")
    if index < 0:
        raise DomainError(f"substream index must be non-negative, got {index}")
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=(int(index),))
    return np.random.Generator(np.random.Philox(ss))


def sample_complex_gaussian(rows: int, cols: int, seed: int, index: int = 0) -> np.ndarray:
    """``rows x cols`` matrix of i.i.d. CN(0, 1) entries from substream ``(seed, index)``."""
    if rows < 1 or cols < 1:
        raise DomainError(f"shape must be positive, got ({rows}, {cols})")
    z = substream(seed, index).standard_normal((2, rows, cols))
    return (z[0] + 1j * z[1]) * math.sqrt(0.5)
