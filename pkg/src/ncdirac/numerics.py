"""Quadrature kernels and the small Hermitian eigensolver.

The quadratures here are the independent oracles used to check the
closed-form radial integrals and the analytic angular matrices.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Any, Callable

import numpy as np
from scipy import integrate

__all__ = [
    "QuadratureError",
    "integrate_radial",
    "sphere_rule",
    "integrate_sphere",
    "SecularMatrix",
    "hermitian_eigen",
]


class QuadratureError(ArithmeticError):
    """Quadrature did not reach the requested accuracy, or hit a NaN."""


def _mapped_quad(f, scale, a_t, b_t, tol, abs_tol=0.0):
    # r = scale * t / (1 - t) maps [0, 1) onto [0, inf)
    def g(t):
        r = scale * t / (1.0 - t)
        val = f(r)
        if val != val:
            raise QuadratureError(f"integrand returned NaN at r={r!r}")
        return val * scale / (1.0 - t) ** 2

    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            val, err = integrate.quad(g, a_t, b_t, epsabs=abs_tol, epsrel=tol, limit=400)
        except integrate.IntegrationWarning as exc:
            # QUADPACK's roundoff flag is common at 1e-12-ish requests; recompute
            # quietly and accept the value only if the error estimate is sane.
            warnings.simplefilter("ignore", integrate.IntegrationWarning)
            val, err = integrate.quad(g, a_t, b_t, epsabs=abs_tol, epsrel=tol, limit=400)
            if not err <= max(max(100 * tol, 1e-9) * abs(val), abs_tol):
                raise QuadratureError(str(exc).strip()) from exc
    return val


def integrate_radial(
    f: Callable[[float], float],
    decay_scale: float,
    tol: float = 1e-10,
    *,
    singular: tuple[float, float] | None = None,
    abs_tol: float = 0.0,
) -> float:
    """∫₀^∞ f(r) dr via r = s·t/(1−t), s = 1/decay_scale.

    ``decay_scale`` is the exponential rate of the integrand (≈ 2λ for
    products of bound-state radial functions).

    ``singular=(p, c)`` declares f(r) ≈ c·r^p as r → 0. When p ≤ −1 the
    integral diverges and the Hadamard finite part is returned instead:
    c·r^p is subtracted on [0, a] and its finite part c·a^(p+1)/(p+1) added
    back. For non-integer p this equals the analytic continuation in p.

    ``abs_tol`` adds an absolute error target, needed when the integral is
    expected to vanish (overlaps of orthogonal states).
    """
    if not decay_scale > 0:
        raise ValueError("decay_scale must be positive")
    scale = 1.0 / decay_scale
    if singular is None or singular[0] > -1.0:
        return _mapped_quad(f, scale, 0.0, 1.0, tol, abs_tol)

    p, c = singular
    if p == math.floor(p):
        raise ValueError("finite part needs a non-integer endpoint power")
    a = scale  # split point, t = 1/2

    def head(r):
        return f(r) - c * r**p

    inner = _mapped_quad(head, scale, 0.0, 0.5, tol, abs_tol / 2)
    outer = _mapped_quad(f, scale, 0.5, 1.0, tol, abs_tol / 2)
    return inner + c * a ** (p + 1.0) / (p + 1.0) + outer


def sphere_rule(degree: int = 12) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Nodes (ϑ, φ) and weights exact for spherical polynomials up to ``degree``.

    Gauss–Legendre in cos ϑ times the uniform trapezoid in φ.
    """
    n_theta = degree // 2 + 1
    n_phi = degree + 1
    x, w = np.polynomial.legendre.leggauss(n_theta)
    phi = 2.0 * np.pi * np.arange(n_phi) / n_phi
    theta, phi = np.meshgrid(np.arccos(x), phi, indexing="ij")
    weights = np.outer(w, np.full(n_phi, 2.0 * np.pi / n_phi))
    return theta, phi, weights


def integrate_sphere(f: Callable[[np.ndarray, np.ndarray], Any], tol: float = 1e-12, degree: int = 12) -> complex:
    """∫ f(ϑ, φ) dΩ for a vectorised band-limited integrand.

    The fixed rule is exact to ``degree``; it is cross-checked against the
    rule of degree + 4 and a QuadratureError is raised if they differ by
    more than ``tol``, i.e. if the integrand was not band-limited as assumed.
    """
    th, ph, w = sphere_rule(degree)
    val = complex(np.sum(w * f(th, ph)))
    th2, ph2, w2 = sphere_rule(degree + 4)
    check = complex(np.sum(w2 * f(th2, ph2)))
    if abs(val - check) > tol:
        raise QuadratureError(
            f"sphere rule of degree {degree} insufficient: |Δ| = {abs(val - check):.3e} > {tol:.1e}"
        )
    return val


@dataclass
class SecularMatrix:
    """Hermitian matrix of a perturbation over the j_z basis of one level.

    ``two_jz`` lists the basis in row order (twice-values); the default
    construction order is descending j_z.
    """

    entries: np.ndarray
    two_jz: tuple[int, ...]
    level: Any = None
    kind: str = ""

    def __post_init__(self):
        self.entries = np.asarray(self.entries, dtype=complex)
        n = len(self.two_jz)
        if self.entries.shape != (n, n):
            raise ValueError(f"entries shape {self.entries.shape} does not match basis of size {n}")

    @property
    def dim(self) -> int:
        return len(self.two_jz)

    def hermiticity_error(self) -> float:
        return float(np.max(np.abs(self.entries - self.entries.conj().T), initial=0.0))

    def reordered(self, two_jz_order) -> SecularMatrix:
        """Same operator expressed in a permuted basis order."""
        idx = [self.two_jz.index(k) for k in two_jz_order]
        return SecularMatrix(self.entries[np.ix_(idx, idx)], tuple(two_jz_order), self.level, self.kind)

    def __add__(self, other: SecularMatrix) -> SecularMatrix:
        if other.two_jz != self.two_jz:
            other = other.reordered(self.two_jz)
        return SecularMatrix(self.entries + other.entries, self.two_jz, self.level, "sum")

    def scaled(self, factor: float) -> SecularMatrix:
        return SecularMatrix(factor * self.entries, self.two_jz, self.level, self.kind)


def _eig2(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    p, q = a[0, 0].real, a[1, 1].real
    b = a[0, 1]
    mean = 0.5 * (p + q)
    half = 0.5 * (p - q)
    rad = math.hypot(half, abs(b))
    vals = np.array([mean + rad, mean - rad])
    if abs(b) == 0.0:
        vecs = np.eye(2, dtype=complex) if p >= q else np.array([[0, 1], [1, 0]], dtype=complex)
        return vals, vecs
    vecs = np.empty((2, 2), dtype=complex)
    for k, lam in enumerate(vals):
        # both (b, λ−p) and (λ−q, conj b) are eigenvectors; pick the larger
        v1 = np.array([b, lam - p])
        v2 = np.array([lam - q, np.conj(b)])
        v = v1 if np.linalg.norm(v1) >= np.linalg.norm(v2) else v2
        vecs[:, k] = v / np.linalg.norm(v)
    return vals, vecs


def _jacobi(a: np.ndarray, rtol: float, max_sweeps: int) -> tuple[np.ndarray, np.ndarray]:
    n = a.shape[0]
    a = a.copy()
    v = np.eye(n, dtype=complex)
    scale = np.linalg.norm(a)
    if scale == 0.0:
        return np.zeros(n), v
    for _ in range(max_sweeps):
        off = math.sqrt(sum(abs(a[i, j]) ** 2 for i in range(n) for j in range(n) if i != j))
        if off < rtol * scale:
            return a.diagonal().real.copy(), v
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag < 1e-300:
                    continue
                phase = apq / mag
                tau = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                t = math.copysign(1.0, tau) / (abs(tau) + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                rot = np.eye(n, dtype=complex)
                rot[p, p] = c
                rot[q, q] = c
                rot[p, q] = s * phase
                rot[q, p] = -s * np.conj(phase)
                a = rot.conj().T @ a @ rot
                a[p, q] = a[q, p] = 0.0
                v = v @ rot
    raise ArithmeticError(f"Jacobi iteration did not converge in {max_sweeps} sweeps")


def hermitian_eigen(m, *, rtol: float = 1e-13, max_sweeps: int = 50) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (descending) and orthonormal eigenvector columns.

    Accepts a SecularMatrix or a square array. 1×1 and 2×2 are solved in
    closed form; larger matrices by cyclic complex Jacobi rotations until the
    off-diagonal Frobenius norm falls below ``rtol`` times the matrix norm.
    """
    a = np.asarray(m.entries if isinstance(m, SecularMatrix) else m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("hermitian_eigen needs a square matrix")
    herm_err = float(np.max(np.abs(a - a.conj().T), initial=0.0))
    if herm_err > 1e-12 * max(1.0, float(np.max(np.abs(a), initial=0.0))):
        raise ValueError(f"matrix is not Hermitian (max |A - A^H| = {herm_err:.3e})")
    a = 0.5 * (a + a.conj().T)
    n = a.shape[0]
    if n == 1:
        return a.diagonal().real.copy(), np.eye(1, dtype=complex)
    if n == 2:
        vals, vecs = _eig2(a)
    else:
        vals, vecs = _jacobi(a, rtol, max_sweeps)
    order = np.argsort(-vals, kind="stable")
    return vals[order], vecs[:, order]
