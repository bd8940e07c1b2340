"""Dirac–Coulomb bound states of a hydrogen-like atom.

Units: ħ = c = 1, energies in eV, lengths in eV⁻¹. ``coupling_e2`` is the
dimensionless e² (the fine-structure constant), so V(r) = −Ze²/r.

Radial functions follow the large/small pair g, f of

    Ψ = ( g(r) Ω_{j,l,j_z},  i f(r) Ω_{j,l',j_z} ),   l' = 2j − l,

with (σ·n) Ω_{j,l,j_z} = −Ω_{j,l',j_z} for the spinors of
:mod:`ncdirac.special_functions`. With that pairing g, f solve

    g' + (1+κ) g/r = (E + m − V) f
    f' + (1−κ) f/r = −(E − m − V) g.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from .special_functions import confluent_phi, gamma_fn

__all__ = [
    "PhysicalConstants",
    "DomainError",
    "Level",
    "kappa_of",
    "energy",
    "RadialSolution",
    "radial_params",
    "radial_g_f",
]

_ORBITAL_LETTERS = "SPDFGHIK"


class DomainError(ValueError):
    """Quantum numbers or couplings outside the bound-state domain."""


@dataclass(frozen=True)
class PhysicalConstants:
    electron_mass: float = 510_998.9461  # eV
    coupling_e2: float = 7.2973525693e-3  # fine-structure constant
    hbar_c: float = 1.973269804e-7  # eV·m

    def __post_init__(self):
        if not (self.electron_mass > 0 and self.coupling_e2 > 0 and self.hbar_c > 0):
            raise DomainError("physical constants must be strictly positive")
        if not self.coupling_e2 < 1:
            raise DomainError("coupling e² must be below 1")

    @property
    def m2_to_inv_ev2(self) -> float:
        """Multiply an area in m² by this to get eV⁻²."""
        return 1.0 / self.hbar_c**2


def kappa_of(two_j: int, l: int) -> int:
    """Dirac κ: −(j+1/2) for j = l+1/2, +(j+1/2) for j = l−1/2."""
    if two_j == 2 * l + 1:
        return -(two_j + 1) // 2
    if two_j == 2 * l - 1 and two_j > 0:
        return (two_j + 1) // 2
    raise DomainError(f"j={two_j}/2 and l={l} do not satisfy j = l ± 1/2")


def _two_times(j) -> int:
    frac = Fraction(str(j)) if isinstance(j, (str, float)) else Fraction(j)
    twice = 2 * frac
    if twice.denominator != 1:
        raise DomainError(f"{j!r} is not a half-integer")
    return int(twice)


@dataclass(frozen=True)
class Level:
    """Relativistic level nL_j of a nucleus of charge Z.

    Construct with ``Level(n, two_j, l, Z)`` or ``Level.parse("2P3/2")``.
    """

    n: int
    two_j: int
    l: int
    Z: float = 1.0

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"n must be >= 1, got {self.n}")
        if self.l < 0:
            raise DomainError(f"l must be >= 0, got {self.l}")
        kappa_of(self.two_j, self.l)
        if (self.two_j + 1) // 2 > self.n:
            raise DomainError(f"j + 1/2 = {(self.two_j + 1) // 2} exceeds n = {self.n}")
        if not self.Z > 0:
            raise DomainError(f"Z must be positive, got {self.Z}")

    @classmethod
    def make(cls, n: int, j, l: int, Z: float = 1.0) -> Level:
        """Build from j given as Fraction, '3/2', 1.5, ..."""
        return cls(n, _two_times(j), l, Z)

    @classmethod
    def parse(cls, label: str, Z: float = 1.0) -> Level:
        """Parse spectroscopic labels such as '2S1/2', '2p3/2', '3D5/2'."""
        m = re.fullmatch(r"\s*(\d+)\s*([A-Za-z])\s*_?\s*(\d+)\s*/\s*2\s*", label)
        if not m:
            raise DomainError(f"cannot parse level label {label!r}")
        letter = m.group(2).upper()
        if letter not in _ORBITAL_LETTERS:
            raise DomainError(f"unknown orbital letter {letter!r} in {label!r}")
        return cls(int(m.group(1)), int(m.group(3)), _ORBITAL_LETTERS.index(letter), Z)

    @property
    def label(self) -> str:
        return f"{self.n}{_ORBITAL_LETTERS[self.l]}{self.two_j}/2"

    @property
    def j(self) -> Fraction:
        return Fraction(self.two_j, 2)

    @property
    def kappa(self) -> int:
        return kappa_of(self.two_j, self.l)

    @property
    def n_prime(self) -> int:
        """Radial quantum number n' = n − j − 1/2."""
        return self.n - (self.two_j + 1) // 2

    @property
    def l_prime(self) -> int:
        return self.two_j - self.l

    @property
    def sublevels(self) -> tuple[int, ...]:
        """2j_z values, descending."""
        return tuple(range(self.two_j, -self.two_j - 1, -2))

    def gamma(self, c: PhysicalConstants) -> float:
        za = self.Z * c.coupling_e2
        if not za < abs(self.kappa):
            raise DomainError(f"Ze² = {za:.6g} >= |κ| = {abs(self.kappa)} for {self.label}: no bound state")
        return math.sqrt(self.kappa**2 - za * za)


def energy(level: Level, c: PhysicalConstants = PhysicalConstants()) -> float:
    """Bound-state energy E_{n,j} = m / √(1 + (Ze²/(γ + n'))²), rest mass included."""
    za = level.Z * c.coupling_e2
    g = level.gamma(c)
    return c.electron_mass / math.sqrt(1.0 + (za / (g + level.n_prime)) ** 2)


@dataclass(frozen=True)
class RadialSolution:
    """Parameters of the normalized radial functions g(r), f(r) of a level."""

    level: Level
    constants: PhysicalConstants
    energy: float
    gamma: float
    lam: float  # λ = √(m² − E²), eV
    lam_plus: float  # √(1 + E/m)
    lam_minus: float  # √(1 − E/m)
    eta: float  # (n' + γ) m / E
    beta: float  # 2γ + 1

    @property
    def kappa(self) -> int:
        return self.level.kappa

    @property
    def n_prime(self) -> int:
        return self.level.n_prime

    @cached_property
    def _prefactor(self) -> float:
        # (2λ)^{3/2}/(2Γ(β)) · √(Γ(n'+β)/(η(η−κ) n'!)), before the λ± factor
        np_ = self.n_prime
        return (
            (2.0 * self.lam) ** 1.5
            / (2.0 * gamma_fn(self.beta))
            * math.sqrt(gamma_fn(np_ + self.beta) / (self.eta * (self.eta - self.kappa) * gamma_fn(np_ + 1)))
        )

    def leading_coefficients(self) -> tuple[float, float]:
        """(g0, f0) with g ≈ g0·r^(γ−1), f ≈ f0·r^(γ−1) as r → 0."""
        base = self._prefactor * (2.0 * self.lam) ** (self.gamma - 1.0)
        ek = self.eta - self.kappa
        return (
            base * self.lam_plus * (ek - self.n_prime),
            -base * self.lam_minus * (ek + self.n_prime),
        )

    def g_f(self, r):
        return radial_g_f(self, r)


def radial_params(level: Level, c: PhysicalConstants = PhysicalConstants()) -> RadialSolution:
    E = energy(level, c)
    m = c.electron_mass
    g = level.gamma(c)
    lam = math.sqrt((m - E) * (m + E))
    return RadialSolution(
        level=level,
        constants=c,
        energy=E,
        gamma=g,
        lam=lam,
        lam_plus=math.sqrt(1.0 + E / m),
        lam_minus=math.sqrt(1.0 - E / m),
        eta=(level.n_prime + g) * m / E,
        beta=2.0 * g + 1.0,
    )


def radial_g_f(sol: RadialSolution, r):
    """Evaluate (g(r), f(r)); ``r`` in eV⁻¹, scalar or array, r > 0.

    Normalized so that ∫ (g² + f²) r² dr = 1. The λ± factors stand outside
    the square root of the normalization constant.
    """
    r_arr = np.asarray(r, dtype=float)
    if np.any(r_arr <= 0):
        raise DomainError("radial functions need r > 0")
    x = 2.0 * sol.lam * r_arr
    np_ = sol.n_prime
    ek = sol.eta - sol.kappa
    phi0 = confluent_phi(-np_, sol.beta, x)
    phi1 = confluent_phi(1 - np_, sol.beta, x) if np_ > 0 else 0.0
    # (2λr)^{γ−1} e^{−λr} in log form keeps large r from overflowing
    radial = sol._prefactor * np.exp((sol.gamma - 1.0) * np.log(x) - 0.5 * x)
    g = sol.lam_plus * radial * (ek * phi0 - np_ * phi1)
    f = -sol.lam_minus * radial * (ek * phi0 + np_ * phi1)
    if g.ndim == 0:
        return float(g), float(f)
    return g, f
