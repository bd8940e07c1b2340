"""First-order corrections on a noncommutative phase space.

Space–space noncommutativity θ (eV⁻²) and momentum–momentum θ̄ (eV²) enter
the Dirac–Coulomb Hamiltonian through the Bopp shift with scaling constant α.
To first order, and within one (n, j) multiplet,

    ΔE_{j_z} = ΔE_{n,j}(α) + E^θ + E^θ̄,
    E^θ  = −(Ze²/4α³) ρ Θ,       ρ = ∫ g²/r dr,      Θ  = ⟨Ω|L·θ|Ω⟩,
    E^θ̄ = −(1/4α) ρ̄ Θ̄,          ρ̄ = ∫ r³ g f dr,

with Θ̄_{ab} = ⟨Ω_{l′,a}| iσ·(n×θ̄) |Ω_{l,b}⟩ − ⟨Ω_{l,a}| iσ·(n×θ̄) |Ω_{l′,b}⟩.
The sign of E^θ̄ belongs to the bispinor (gΩ_l, i fΩ_{l′}) of
:mod:`ncdirac.dirac`. In its nonrelativistic limit the 2S₁/₂ shift is
−j_z θ̄₃/(2αm), the spin-magnetic-moment analogue.

Angular matrices are built exactly from ladder and multiplication rules on
spherical harmonics; ρ and ρ̄ have closed forms for the n = 2 levels and a
quadrature path for any level.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import angular
from .dirac import DomainError, Level, PhysicalConstants, RadialSolution, energy, radial_g_f, radial_params
from .numerics import SecularMatrix, hermitian_eigen, integrate_radial

__all__ = [
    "NcParams",
    "alpha_from_constraint",
    "delta_E_alpha",
    "rho",
    "rho_bar",
    "rho_small",
    "theta_matrix",
    "thetabar_matrix",
    "SHIFT_FORM_EIGENVALUES",
    "CorrectionBreakdown",
    "corrections",
    "sublevel_label",
    "Spacing",
    "spacings",
]

_CONSTRAINT_TOL = 1e-12


def _vec3(v) -> np.ndarray:
    a = np.asarray(v if v is not None else (0.0, 0.0, 0.0), dtype=float).reshape(-1)
    if a.shape != (3,) or not np.all(np.isfinite(a)):
        raise DomainError(f"expected a finite 3-vector, got {v!r}")
    return a


def alpha_from_constraint(theta_mag: float, thetabar_mag: float) -> float:
    """α on the branch with α(0) = 1 solving |θ||θ̄| = 4α²(1 − α²)."""
    if theta_mag < 0 or thetabar_mag < 0:
        raise DomainError("magnitudes must be non-negative")
    prod = theta_mag * thetabar_mag
    if prod > 1.0:
        raise DomainError(f"|θ||θ̄| = {prod:.6g} > 1: no real α")
    return math.sqrt((1.0 + math.sqrt(1.0 - prod)) / 2.0)


@dataclass(frozen=True)
class NcParams:
    """θ in eV⁻², θ̄ in eV², and α.

    Leave ``alpha`` as None to derive it from the constraint. An explicit α
    together with two nonzero vectors must satisfy the constraint.
    """

    theta: np.ndarray = field(default_factory=lambda: np.zeros(3))
    thetabar: np.ndarray = field(default_factory=lambda: np.zeros(3))
    alpha: float | None = None

    def __post_init__(self):
        th, tb = _vec3(self.theta), _vec3(self.thetabar)
        object.__setattr__(self, "theta", th)
        object.__setattr__(self, "thetabar", tb)
        prod = self.theta_mag * self.thetabar_mag
        if self.alpha is None:
            object.__setattr__(self, "alpha", alpha_from_constraint(self.theta_mag, self.thetabar_mag))
            object.__setattr__(self, "_derived", True)
            return
        a = float(self.alpha)
        if not 0.0 < a <= 1.0:
            raise DomainError(f"alpha must lie in (0, 1], got {a}")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "_derived", False)
        if self.theta_mag > 0 and self.thetabar_mag > 0:
            required = 4.0 * a * a * (1.0 - a * a)
            if abs(prod - required) > _CONSTRAINT_TOL:
                raise DomainError(
                    f"alpha={a} is inconsistent with |θ||θ̄| = {prod:.6g} (constraint needs {required:.6g})"
                )

    @property
    def theta_mag(self) -> float:
        return float(np.linalg.norm(self.theta))

    @property
    def thetabar_mag(self) -> float:
        return float(np.linalg.norm(self.thetabar))

    @property
    def alpha_derived(self) -> bool:
        return self._derived


def delta_E_alpha(level: Level, alpha: float, c: PhysicalConstants = PhysicalConstants(), form: str = "linear") -> float:
    """Shift of E_{n,j} from the α-rescaled Coulomb coupling Ze² → Ze²/α².

    ``form="linear"`` is the first-order expression
    −2m[1+(Ze²/N)²]^{−3/2} · Z²e³[N + Z²e⁴(κ² − Z²e⁴)^{−1/2}]/N³ · e(1−α), N = γ+n′.
    ``form="exact"`` returns E(Ze²/α²) − E(Ze²) without linearizing.
    """
    if not 0.0 < alpha <= 1.0:
        raise DomainError(f"alpha must lie in (0, 1], got {alpha}")
    e2 = c.coupling_e2
    e = math.sqrt(e2)
    Z = level.Z
    N = level.gamma(c) + level.n_prime
    if form == "linear":
        za2 = (Z * e2) ** 2
        bracket = N + za2 / math.sqrt(level.kappa**2 - za2)
        return (
            -2.0 * c.electron_mass * (1.0 + (Z * e2 / N) ** 2) ** -1.5 * Z**2 * e**3 * bracket / N**3 * e * (1.0 - alpha)
        ) + 0.0  # no negative zero at α = 1
    if form == "exact":
        scaled = PhysicalConstants(c.electron_mass, e2 / alpha**2, c.hbar_c)
        return energy(level, scaled) - energy(level, c)
    raise ValueError(f"unknown form {form!r}; use 'linear' or 'exact'")


# ---------------------------------------------------------------- radial

def _closed_key(level: Level) -> str:
    return f"{level.n}{'SP'[level.l] if level.l < 2 else '?'}{level.two_j}/2"


def _rho_closed(level: Level, s: RadialSolution) -> float:
    key = _closed_key(level)
    lam, lp, b, h = s.lam, s.lam_plus, s.beta, s.eta
    if key == "2P1/2":
        brace = b * (h - 2) ** 2 / (h - 1) - 2 * (h - 2) * (b - 3) + (h - 1) / b * (b - 2) * (b - 3)
        return 2 * lam**3 * lp**2 / (h * (b - 1) * (b - 2) * (b - 3)) * brace
    if key == "2P3/2":
        return 4 * lam**3 * lp**2 / ((b - 1) * (b - 2) * (b - 3))
    raise DomainError(f"no closed form for ρ({level.label}); use method='numeric'")


def _rho_bar_closed(level: Level, s: RadialSolution) -> float:
    key = _closed_key(level)
    m, b, h = s.constants.electron_mass, s.beta, s.eta
    if key in ("2S1/2", "2P1/2"):
        h1 = h + 1 if key == "2S1/2" else h - 1
        return (b * b / h1 - b * b * h1 + 2 * b * (b + 1) * h1 - (b + 1) * (b + 2) * h1) / (8 * m * h)
    if key == "2P3/2":
        return -b * (h + 2) / (8 * m * h)
    raise DomainError(f"no closed form for ρ̄({level.label}); use method='numeric'")


def _resolve(level: Level, sol: RadialSolution | None, c: PhysicalConstants | None) -> RadialSolution:
    if sol is None:
        return radial_params(level, c or PhysicalConstants())
    if sol.level != level:
        raise ValueError(f"radial solution is for {sol.level.label}, not {level.label}")
    return sol


def rho(level: Level, sol: RadialSolution | None = None, *, method: str = "auto",
        c: PhysicalConstants | None = None, tol: float = 1e-11) -> float:
    """ρ = ∫₀^∞ g(r)²/r dr in eV.

    For j = 1/2 the integrand behaves as r^{2γ−3} with 2γ − 3 < −1, so the
    integral diverges at the origin. The closed form is its analytic
    continuation in γ, and the quadrature path returns the matching Hadamard
    finite part. ``method`` is "closed", "numeric" or "auto" (closed when
    available).
    """
    s = _resolve(level, sol, c)
    if method in ("closed", "auto"):
        try:
            return _rho_closed(level, s)
        except DomainError:
            if method == "closed":
                raise
    elif method != "numeric":
        raise ValueError(f"unknown method {method!r}")
    g0, _ = s.leading_coefficients()
    p = 2.0 * s.gamma - 3.0
    return integrate_radial(lambda r: radial_g_f(s, r)[0] ** 2 / r, 2.0 * s.lam, tol, singular=(p, g0 * g0))


def rho_small(level: Level, sol: RadialSolution | None = None, *,
              c: PhysicalConstants | None = None, tol: float = 1e-11) -> float:
    """∫₀^∞ f(r)²/r dr, the small-component analogue of ρ (quadrature only)."""
    s = _resolve(level, sol, c)
    _, f0 = s.leading_coefficients()
    p = 2.0 * s.gamma - 3.0
    return integrate_radial(lambda r: radial_g_f(s, r)[1] ** 2 / r, 2.0 * s.lam, tol, singular=(p, f0 * f0))


def rho_bar(level: Level, sol: RadialSolution | None = None, *, method: str = "auto",
            c: PhysicalConstants | None = None, tol: float = 1e-11) -> float:
    """ρ̄ = ∫₀^∞ r³ g(r) f(r) dr in eV⁻¹."""
    s = _resolve(level, sol, c)
    if method in ("closed", "auto"):
        try:
            return _rho_bar_closed(level, s)
        except DomainError:
            if method == "closed":
                raise
    elif method != "numeric":
        raise ValueError(f"unknown method {method!r}")

    def integrand(r):
        g, f = radial_g_f(s, r)
        return r**3 * g * f

    return integrate_radial(integrand, 2.0 * s.lam, tol)


def has_closed_forms(level: Level) -> bool:
    return _closed_key(level) in ("2S1/2", "2P1/2", "2P3/2")


# ---------------------------------------------------------------- angular

def _basis(level: Level, order: str) -> tuple[int, ...]:
    if order == "descending":
        return level.sublevels
    if order == "ascending":
        return tuple(reversed(level.sublevels))
    raise ValueError(f"order must be 'descending' or 'ascending', got {order!r}")


def theta_matrix(level: Level, theta, order: str = "descending", *, l: int | None = None) -> SecularMatrix:
    """Θ_{ab} = ∫ Ω_a† (L·θ) Ω_b dΩ over the j_z basis of ``level``.

    ``l`` overrides the orbital number of the spinors (pass ``level.l_prime``
    for the small-component matrix).
    """
    th = _vec3(theta)
    ll = level.l if l is None else l
    basis = _basis(level, order)
    spinors = [angular.spinor_expansion(level.two_j, ll, t) for t in basis]
    images = [angular.apply_l_dot(th, s) for s in spinors]
    m = np.array([[angular.inner(a, b) for b in images] for a in spinors])
    return SecularMatrix(m, basis, level, "theta")


def thetabar_matrix(level: Level, thetabar, order: str = "descending") -> SecularMatrix:
    """Θ̄_{ab} = ⟨Ω_{l′,a}|iσ·(n×θ̄)|Ω_{l,b}⟩ − ⟨Ω_{l,a}|iσ·(n×θ̄)|Ω_{l′,b}⟩."""
    tb = _vec3(thetabar)
    basis = _basis(level, order)
    big = [angular.spinor_expansion(level.two_j, level.l, t) for t in basis]
    small = [angular.spinor_expansion(level.two_j, level.l_prime, t) for t in basis]
    k_big = [angular.apply_i_sigma_n_cross(tb, s) for s in big]
    k_small = [angular.apply_i_sigma_n_cross(tb, s) for s in small]
    n = len(basis)
    m = np.empty((n, n), dtype=complex)
    for a in range(n):
        for b in range(n):
            m[a, b] = angular.inner(small[a], k_big[b]) - angular.inner(big[a], k_small[b])
    return SecularMatrix(m, basis, level, "thetabar")


# Eigenvalues of the Θ̄ displays reference for the n = 2 levels, per unit |θ̄|,
# keyed by 2|j_z|. They are used only by thetabar_form="shift".
SHIFT_FORM_EIGENVALUES = {
    "2S1/2": {1: 4.0 / 3.0},
    "2P1/2": {1: -4.0 / 3.0},
    "2P3/2": {3: 8.0 / 5.0, 1: 16.0 / 15.0},
}


# ---------------------------------------------------------------- corrections

def sublevel_label(two_jz: int) -> str:
    return f"jz={'+' if two_jz > 0 else '-'}{abs(two_jz)}/2"


@dataclass(frozen=True)
class CorrectionBreakdown:
    """Per-sublevel first-order corrections for one level, in eV.

    The maps are keyed by labels such as "jz=+3/2", in descending j_z.
    ``no_closed_form`` is set when no closed-form radial integrals exist for the
    level and quadrature was used instead.
    """

    level: Level
    delta_E_alpha: float
    e_theta: dict[str, float]
    e_thetabar: dict[str, float]
    total: dict[str, float]
    no_closed_form: bool = False
    e_theta_small: dict[str, float] | None = None

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(self.total)


def _axis(vectors) -> np.ndarray:
    for v in vectors:
        n = np.linalg.norm(v)
        if n > 0:
            return v / n
    return np.array([0.0, 0.0, 1.0])


def _labelled_eigen(mat: np.ndarray, jdot: np.ndarray) -> np.ndarray:
    """Eigenvectors of ``mat`` ordered by descending ⟨J·û⟩.

    Degenerate eigenspaces are resolved by diagonalizing J·û inside them,
    so the result does not depend on the solver's arbitrary basis choice.
    """
    vals, vecs = hermitian_eigen(mat)
    scale = max(float(np.max(np.abs(vals), initial=0.0)), 1e-300)
    cols, start, n = [], 0, len(vals)
    while start < n:
        stop = start + 1
        while stop < n and abs(vals[stop] - vals[start]) <= 1e-10 * scale:
            stop += 1
        block = vecs[:, start:stop]
        if stop - start > 1:
            _, w = hermitian_eigen(block.conj().T @ jdot @ block)
            block = block @ w
        cols.extend(block[:, k] for k in range(block.shape[1]))
        start = stop
    v = np.column_stack(cols)
    proj = np.real(np.einsum("ik,ij,jk->k", v.conj(), jdot, v))
    return v[:, np.argsort(-proj, kind="stable")]


def corrections(level: Level, p: NcParams, c: PhysicalConstants = PhysicalConstants(), *,
                thetabar_form: str = "exact", delta_form: str = "linear",
                include_small_component: bool = False) -> CorrectionBreakdown:
    """First-order corrections of every sublevel of ``level``.

    E^θ + E^θ̄ is diagonalized as one secular matrix and the per-term values
    are expectation values in its eigenvectors. Eigenvectors are labelled by
    descending ⟨J·û⟩ with û along θ, or along θ̄ when the level's Θ vanishes.
    When θ ∥ θ̄ this equals labelling each term's own eigenvalues separately.

    ``thetabar_form="shift"`` replaces E^θ̄ by +(1/4α)ρ̄Λ̄|θ̄| with the table
    SHIFT_FORM_EIGENVALUES (n = 2 levels only); it is kept for comparison
    with published spacing coefficients.
    """
    if thetabar_form not in ("exact", "shift"):
        raise ValueError(f"thetabar_form must be 'exact' or 'shift', got {thetabar_form!r}")
    sol = radial_params(level, c)
    closed = has_closed_forms(level)
    a = p.alpha
    za = level.Z * c.coupling_e2
    d_alpha = delta_E_alpha(level, a, c, delta_form)

    basis = level.sublevels
    labels = [sublevel_label(t) for t in basis]
    zero = np.zeros((len(basis), len(basis)), dtype=complex)

    h_theta = zero
    if p.theta_mag > 0:
        h_theta = -za / (4 * a**3) * rho(level, sol) * theta_matrix(level, p.theta).entries
    h_small = None
    if include_small_component:
        h_small = zero
        if p.theta_mag > 0:
            h_small = -za / (4 * a**3) * rho_small(level, sol) * theta_matrix(level, p.theta, l=level.l_prime).entries

    h_bar = zero
    shift_vals = None
    if p.thetabar_mag > 0:
        if thetabar_form == "exact":
            h_bar = -1.0 / (4 * a) * rho_bar(level, sol) * thetabar_matrix(level, p.thetabar).entries
        else:
            table = SHIFT_FORM_EIGENVALUES.get(level.label)
            if table is None:
                raise DomainError(f"thetabar_form='shift' has no eigenvalue table for {level.label}")
            rb = rho_bar(level, sol)
            shift_vals = [rb * table[abs(t)] * p.thetabar_mag / (4 * a) for t in basis]

    # label along θ, unless Θ vanishes for this level (2S₁/₂), then along θ̄
    active = [v for v, h in ((p.theta, h_theta), (p.thetabar, h_bar)) if np.any(h)]
    jdot = angular.j_dot_matrix(level.two_j, _axis(active + [p.theta, p.thetabar]), basis)
    v = _labelled_eigen(h_theta + h_bar, jdot)

    def expect(h):
        return [float(np.real(v[:, k].conj() @ h @ v[:, k])) for k in range(len(basis))]

    e_t = expect(h_theta)
    e_b = shift_vals if shift_vals is not None else expect(h_bar)
    total = {lab: d_alpha + x + y for lab, x, y in zip(labels, e_t, e_b)}
    return CorrectionBreakdown(
        level=level,
        delta_E_alpha=d_alpha,
        e_theta=dict(zip(labels, e_t)),
        e_thetabar=dict(zip(labels, e_b)),
        total=total,
        no_closed_form=not closed,
        e_theta_small=dict(zip(labels, expect(h_small))) if h_small is not None else None,
    )


# ---------------------------------------------------------------- spacings

@dataclass(frozen=True)
class Spacing:
    """One sublevel transition energy E_upper − E_lower = A|θ|/α³ + B|θ̄|/α.

    ``A`` is in eV/m² (θ in m²). ``B_nat`` is in eV per eV² of θ̄ and
    ``B`` = B_nat/(ħc)², the same conversion applied to θ. ``value`` is the
    spacing in eV for the supplied parameters.
    """

    name: str
    upper: tuple[str, str]
    lower: tuple[str, str]
    A: float
    B: float
    B_nat: float
    value: float


_SPACING_PAIRS = (
    (("2P1/2", "jz=-1/2"), ("2S1/2", "jz=-1/2")),
    (("2S1/2", "jz=+1/2"), ("2P1/2", "jz=+1/2")),
    (("2P3/2", "jz=-3/2"), ("2P3/2", "jz=-1/2")),
    (("2P3/2", "jz=-1/2"), ("2P3/2", "jz=+1/2")),
    (("2P3/2", "jz=+1/2"), ("2P3/2", "jz=+3/2")),
)


def spacings(p: NcParams, c: PhysicalConstants = PhysicalConstants(), Z: float = 1.0, *,
             thetabar_form: str = "exact") -> list[Spacing]:
    """The five n = 2 sublevel spacings and their θ, θ̄ response coefficients.

    A and B are slopes along a common axis ẑ with α = 1; ``value`` uses the
    full parameters ``p``.
    """
    z = np.array([0.0, 0.0, 1.0])
    levels = {k: Level.parse(k, Z) for k in ("2S1/2", "2P1/2", "2P3/2")}

    def table(params):
        return {k: corrections(lv, params, c, thetabar_form=thetabar_form) for k, lv in levels.items()}

    unit_theta = table(NcParams(theta=z, alpha=1.0))
    unit_bar = table(NcParams(thetabar=z, alpha=1.0))
    actual = table(p)
    conv = c.hbar_c**2
    out = []
    for up, lo in _SPACING_PAIRS:
        def diff(t, key):
            return getattr(t[up[0]], key)[up[1]] - getattr(t[lo[0]], key)[lo[1]]

        a_nat = diff(unit_theta, "e_theta")
        b_nat = diff(unit_bar, "e_thetabar")
        dirac = energy(levels[up[0]], c) - energy(levels[lo[0]], c)
        out.append(
            Spacing(
                name=f"{up[0]}({up[1][3:]}) -> {lo[0]}({lo[1][3:]})",
                upper=up,
                lower=lo,
                A=a_nat / conv,
                B=b_nat / conv,
                B_nat=b_nat,
                value=dirac + diff(actual, "total"),
            )
        )
    return out
