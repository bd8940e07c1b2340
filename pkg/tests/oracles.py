"""Quadrature oracles for the angular secular matrices.

Both work pointwise on the sphere and never touch the ladder algebra used by
the library: L·θ comes from finite differences of rotated spinors, and
iσ·(n×θ̄) is applied as an explicit 2×2 matrix at each node.
"""

import math

import numpy as np

from ncdirac import angular
from ncdirac.numerics import integrate_sphere
from ncdirac.special_functions import SphericalSpinor, spinor_eval

SIGMA = np.array([[[0, 1], [1, 0]], [[0, -1j], [1j, 0]], [[1, 0], [0, -1]]])


def _rotate(th, ph, axis, eps):
    # rotate the point r̂(th, ph) by -eps about ``axis`` (Rodrigues)
    r = np.stack([np.sin(th) * np.cos(ph), np.sin(th) * np.sin(ph), np.cos(th)])
    k = np.asarray(axis, float)[:, None, None]
    c, s = math.cos(-eps), math.sin(-eps)
    kr = np.sum(k * r, axis=0)
    rr = r * c + np.cross(k, r, axis=0) * s + k * kr * (1 - c)
    return np.arccos(np.clip(rr[2], -1, 1)), np.arctan2(rr[1], rr[0])


def l_dot_numeric(spinor, vec, th, ph, eps=2e-3):
    """(L·v)Ω at (th, ph) from (v̂·L) f = i d/dε f(R(−ε) r̂), 5-point stencil."""
    mag = np.linalg.norm(vec)
    if mag == 0:
        return np.zeros((2,) + np.shape(th), complex)
    axis = np.asarray(vec) / mag
    f = {h: spinor_eval(spinor, *_rotate(th, ph, axis, h * eps)) for h in (-2, -1, 1, 2)}
    deriv = (-f[2] + 8 * f[1] - 8 * f[-1] + f[-2]) / (12 * eps)
    return 1j * mag * deriv


def theta_oracle(level, theta):
    basis = level.sublevels
    sp = [SphericalSpinor(level.two_j, level.l, t) for t in basis]
    n = len(basis)
    out = np.empty((n, n), complex)
    for a in range(n):
        for b in range(n):
            out[a, b] = integrate_sphere(
                lambda th, ph: np.sum(np.conj(spinor_eval(sp[a], th, ph)) * l_dot_numeric(sp[b], theta, th, ph), axis=0),
                tol=1e-9,
            )
    return out


def _k_apply(vec, w, th, ph):
    n = np.stack([np.sin(th) * np.cos(ph), np.sin(th) * np.sin(ph), np.cos(th)])
    cross = np.cross(n, np.asarray(vec, float)[:, None, None], axis=0)
    mat = 1j * np.einsum("k...,kab->ab...", cross, SIGMA)
    return np.einsum("ab...,b...->a...", mat, w)


def thetabar_oracle(level, tb):
    basis = level.sublevels
    big = [SphericalSpinor(level.two_j, level.l, t) for t in basis]
    small = [SphericalSpinor(level.two_j, level.l_prime, t) for t in basis]
    n = len(basis)
    out = np.empty((n, n), complex)
    for a in range(n):
        for b in range(n):
            def f(th, ph):
                t1 = np.sum(np.conj(spinor_eval(small[a], th, ph)) * _k_apply(tb, spinor_eval(big[b], th, ph), th, ph), axis=0)
                t2 = np.sum(np.conj(spinor_eval(big[a], th, ph)) * _k_apply(tb, spinor_eval(small[b], th, ph), th, ph), axis=0)
                return t1 - t2

            out[a, b] = integrate_sphere(f)
    return out


def jdot(level, v):
    return angular.j_dot_matrix(level.two_j, v, level.sublevels)
