"""Gamma, confluent hypergeometric Φ, spherical harmonics and spherical spinors.

Half-integer quantum numbers are carried as twice their value (``two_j``,
``two_jz``) so that no float comparison is ever made on a quantum number.
Spherical harmonics use the Condon–Shortley phase.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "gamma_fn",
    "confluent_phi",
    "spherical_harmonic",
    "cg_spinor_coeffs",
    "SphericalSpinor",
    "spinor_eval",
    "ConvergenceError",
]


class ConvergenceError(ArithmeticError):
    """A series or iteration failed to converge within its budget."""


# Lanczos approximation, g = 7, n = 9.
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def _lanczos(x: float) -> float:
    # valid for x >= 0.5
    x -= 1.0
    acc = _LANCZOS_COEF[0]
    for i in range(1, len(_LANCZOS_COEF)):
        acc += _LANCZOS_COEF[i] / (x + i)
    t = x + _LANCZOS_G + 0.5
    return math.sqrt(2.0 * math.pi) * t ** (x + 0.5) * math.exp(-t) * acc


def gamma_fn(x: float) -> float:
    """Gamma function for positive real ``x``.

    Integers up to 21 are returned exactly; everything else goes
    through the Lanczos sum, with reflection below 1/2.
    """
    x = float(x)
    if not x > 0.0 or math.isinf(x):
        raise ValueError(f"gamma_fn is defined here for finite x > 0, got {x!r}")
    if x == int(x) and x <= 21:
        return float(math.factorial(int(x) - 1))
    if x < 0.5:
        return math.pi / (math.sin(math.pi * x) * _lanczos(1.0 - x))
    return _lanczos(x)


def _is_nonpositive_int(v: float) -> bool:
    return v <= 0 and float(v) == math.floor(v)


def confluent_phi(a: float, b: float, z, *, max_terms: int = 1_000_000):
    """Kummer's confluent hypergeometric function Φ(a, b; z) = 1F1(a; b; z).

    ``z`` may be a scalar or a numpy array. For nonpositive integer ``a`` the
    series is a finite polynomial and is summed exactly; otherwise terms are
    added until the next one drops below 1e-16 of the partial sum.
    """
    if _is_nonpositive_int(b):
        raise ValueError(f"Φ(a, b; z) undefined for b = {b!r}")
    z_arr = np.asarray(z, dtype=float)
    total = np.ones_like(z_arr)
    term = np.ones_like(z_arr)

    if _is_nonpositive_int(a):
        for k in range(int(-a)):
            term = term * (a + k) / (b + k) * z_arr / (k + 1)
            total = total + term
        return total if total.ndim else float(total)

    for k in range(max_terms):
        term = term * (a + k) / (b + k) * z_arr / (k + 1)
        total = total + term
        if np.all(np.abs(term) <= 1e-16 * np.abs(total)):
            return total if total.ndim else float(total)
    raise ConvergenceError(f"Φ({a}, {b}; z) did not converge in {max_terms} terms")


def _assoc_legendre(l: int, m: int, x):
    """P_l^m(x) for m >= 0 with the Condon–Shortley factor (-1)^m included."""
    x = np.asarray(x, dtype=float)
    somx2 = np.sqrt(np.clip((1.0 - x) * (1.0 + x), 0.0, None))
    pmm = np.ones_like(x)
    fact = 1.0
    for _ in range(m):
        pmm = -pmm * fact * somx2
        fact += 2.0
    if l == m:
        return pmm
    pmmp1 = x * (2 * m + 1) * pmm
    if l == m + 1:
        return pmmp1
    pll = pmmp1
    for ll in range(m + 2, l + 1):
        pll = (x * (2 * ll - 1) * pmmp1 - (ll + m - 1) * pmm) / (ll - m)
        pmm, pmmp1 = pmmp1, pll
    return pll


def spherical_harmonic(l: int, m: int, theta, phi):
    """Orthonormal Y_{l,m}(ϑ, φ), Condon–Shortley phase.

    ``theta`` is the polar angle, ``phi`` the azimuth; both broadcast.
    """
    if l < 0 or abs(m) > l:
        raise ValueError(f"invalid spherical harmonic indices l={l}, m={m}")
    am = abs(m)
    norm = math.sqrt((2 * l + 1) / (4.0 * math.pi) * math.factorial(l - am) / math.factorial(l + am))
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    y = norm * _assoc_legendre(l, am, np.cos(theta)) * np.exp(1j * am * phi)
    if m < 0:
        # Y_{l,-m} = (-1)^m conj(Y_{l,m})
        y = (-1) ** am * np.conj(y)
    return y if y.ndim else complex(y)


def _check_spinor_indices(two_j: int, l: int, two_jz: int) -> None:
    if two_j < 1 or two_j % 2 != 1:
        raise ValueError(f"j must be a positive half-odd-integer, got 2j={two_j}")
    if two_j not in (2 * l + 1, 2 * l - 1):
        raise ValueError(f"j={two_j}/2 cannot couple with l={l} and spin 1/2")
    if abs(two_jz) > two_j or two_jz % 2 != 1:
        raise ValueError(f"j_z={two_jz}/2 is not a projection of j={two_j}/2")


def cg_spinor_coeffs(two_j: int, l: int, two_jz: int) -> tuple[float, float]:
    """Root-factor coefficients of the spin-up and spin-down components.

    For j = l + 1/2: (√((j+j_z)/2j), √((j−j_z)/2j)).
    For j = l − 1/2: (−√((j−j_z+1)/(2j+2)), √((j+j_z+1)/(2j+2))).
    """
    _check_spinor_indices(two_j, l, two_jz)
    if two_j == 2 * l + 1:
        return (
            math.sqrt((two_j + two_jz) / (2.0 * two_j)),
            math.sqrt((two_j - two_jz) / (2.0 * two_j)),
        )
    return (
        -math.sqrt((two_j - two_jz + 2) / (2.0 * two_j + 4)),
        math.sqrt((two_j + two_jz + 2) / (2.0 * two_j + 4)),
    )


@dataclass(frozen=True)
class SphericalSpinor:
    """Two-component spherical spinor Ω_{j,l,j_z}, stored as (2j, l, 2j_z)."""

    two_j: int
    l: int
    two_jz: int

    def __post_init__(self):
        _check_spinor_indices(self.two_j, self.l, self.two_jz)

    @property
    def components(self) -> tuple[tuple[float, int], tuple[float, int]]:
        """((c_up, m_up), (c_down, m_down)) with m the Y_{l,m} index."""
        c_up, c_dn = cg_spinor_coeffs(self.two_j, self.l, self.two_jz)
        return (c_up, (self.two_jz - 1) // 2), (c_dn, (self.two_jz + 1) // 2)


def spinor_eval(s: SphericalSpinor, theta, phi) -> np.ndarray:
    """Evaluate Ω at (ϑ, φ); returns an array of shape (2, *broadcast_shape)."""
    theta, phi = np.broadcast_arrays(np.asarray(theta, float), np.asarray(phi, float))
    out = np.zeros((2,) + theta.shape, dtype=complex)
    for i, (c, m) in enumerate(s.components):
        if abs(m) <= s.l and c != 0.0:
            out[i] = c * spherical_harmonic(s.l, m, theta, phi)
    return out
