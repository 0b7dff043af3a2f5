"""Wigner rotation matrices.

Basis order inside a spin-j block is m = j, j-1, ..., -j and
D^j_{m m'}(alpha, theta, chi) = e^{-i m alpha} d^j_{m m'}(theta) e^{-i m' chi}.
"""

from typing import Union

import numpy as np
from scipy.special import gammaln

from fourierlcu.core.su2.haar import EulerAngles
from fourierlcu.core.su2.sectors import two_j_of
from fourierlcu.libs.utils.errors import DecompositionError

ArrayLike = Union[float, np.ndarray]


def _check_numbers(two_j: int, two_m1: int, two_m2: int):
    for two_m in (two_m1, two_m2):
        if abs(two_m) > two_j or (two_j - two_m) % 2:
            raise DecompositionError(f"Invalid quantum numbers j={two_j / 2}, m={two_m / 2}")


def _lf(k: int) -> float:
    return float(gammaln(k + 1))


def small_d_doubled(two_j: int, two_m1: int, two_m2: int, theta: ArrayLike) -> ArrayLike:
    """d^j_{m1 m2}(theta) with doubled quantum numbers, via the explicit factorial sum."""
    _check_numbers(two_j, two_m1, two_m2)
    jpm1 = (two_j + two_m1) // 2
    jmm1 = (two_j - two_m1) // 2
    jpm2 = (two_j + two_m2) // 2
    jmm2 = (two_j - two_m2) // 2
    dm = (two_m1 - two_m2) // 2

    theta = np.asarray(theta, dtype=float)
    c = np.cos(theta / 2)
    s = np.sin(theta / 2)
    log_norm = 0.5 * (_lf(jpm1) + _lf(jmm1) + _lf(jpm2) + _lf(jmm2))

    total = np.zeros_like(theta)
    for k in range(max(0, -dm), min(jpm2, jmm1) + 1):
        log_coef = log_norm - (_lf(jpm2 - k) + _lf(k) + _lf(dm + k) + _lf(jmm1 - k))
        sign = -1.0 if (dm + k) % 2 else 1.0
        # np.power keeps 0**0 == 1 at theta = 0 and pi
        total = total + sign * np.exp(log_coef) * np.power(c, two_j - dm - 2 * k) * np.power(
            s, dm + 2 * k
        )
    return total if total.ndim else float(total)


def wigner_small_d(j: float, m1: float, m2: float, theta: ArrayLike) -> ArrayLike:
    """Wigner d^j_{m1 m2}(theta); j, m1, m2 may be half-integers."""
    return small_d_doubled(two_j_of(j), _two(m1), _two(m2), theta)


def _two(m: float) -> int:
    two_m = int(round(2 * float(m)))
    if abs(2 * float(m) - two_m) > 1e-9:
        raise DecompositionError(f"{m} is not a half-integer")
    return two_m


def magnetic_numbers(two_j: int) -> np.ndarray:
    """Doubled m values in basis order j, j-1, ..., -j."""
    return np.arange(two_j, -two_j - 1, -2)


def wigner_d_matrix(j: float, theta: float) -> np.ndarray:
    two_j = two_j_of(j)
    ms = magnetic_numbers(two_j)
    return np.array([[small_d_doubled(two_j, a, b, theta) for b in ms] for a in ms])


def wigner_big_d(j: float, g: EulerAngles) -> np.ndarray:
    two_j = two_j_of(j)
    m = magnetic_numbers(two_j) / 2
    d = wigner_d_matrix(j, g.theta)
    return np.exp(-1j * m * g.alpha)[:, None] * d * np.exp(-1j * m * g.chi)[None, :]


def spin_matrices(j: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(J_x, J_y, J_z) of spin j in basis order m = j..-j."""
    two_j = two_j_of(j)
    m = magnetic_numbers(two_j) / 2
    jj = two_j / 2
    dim = two_j + 1
    j_plus = np.zeros((dim, dim), dtype=complex)
    for col in range(1, dim):
        # J+ |m> = sqrt(j(j+1) - m(m+1)) |m+1>, and |m+1> sits one row up
        j_plus[col - 1, col] = np.sqrt(jj * (jj + 1) - m[col] * (m[col] + 1))
    jx = (j_plus + j_plus.conj().T) / 2
    jy = (j_plus - j_plus.conj().T) / (2j)
    jz = np.diag(m).astype(complex)
    return jx, jy, jz
