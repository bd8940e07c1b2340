"""Exact angular algebra on spinor spherical-harmonic expansions.

A spinor field on the sphere is held as ``{(spin, l, m): coeff}`` with spin 0
(up) or 1 (down) and Y_{l,m} in the Condon–Shortley convention. Operators
act on these dictionaries symbolically, so angular matrix elements come out
without any quadrature.
"""

from __future__ import annotations

import math
from collections import defaultdict

from .special_functions import cg_spinor_coeffs

Expansion = dict[tuple[int, int, int], complex]


def spinor_expansion(two_j: int, l: int, two_jz: int) -> Expansion:
    c_up, c_dn = cg_spinor_coeffs(two_j, l, two_jz)
    out: Expansion = {}
    m_up, m_dn = (two_jz - 1) // 2, (two_jz + 1) // 2
    if abs(m_up) <= l and c_up:
        out[(0, l, m_up)] = complex(c_up)
    if abs(m_dn) <= l and c_dn:
        out[(1, l, m_dn)] = complex(c_dn)
    return out


def inner(a: Expansion, b: Expansion) -> complex:
    """⟨a|b⟩ = ∫ a† b dΩ."""
    return sum((a[k].conjugate() * v for k, v in b.items() if k in a), 0j)


def _add(out, key, val):
    if val != 0:
        out[key] += val


def apply_l_dot(vec, psi: Expansion) -> Expansion:
    """(L·v) ψ for a complex 3-vector v, via L_z and the ladder operators."""
    v1, v2, v3 = (complex(x) for x in vec)
    v_plus, v_minus = v1 + 1j * v2, v1 - 1j * v2
    out: defaultdict = defaultdict(complex)
    for (s, l, m), c in psi.items():
        _add(out, (s, l, m), v3 * m * c)
        if m < l:
            _add(out, (s, l, m + 1), 0.5 * v_minus * math.sqrt(l * (l + 1) - m * (m + 1)) * c)
        if m > -l:
            _add(out, (s, l, m - 1), 0.5 * v_plus * math.sqrt(l * (l + 1) - m * (m - 1)) * c)
    return dict(out)


def _mul_nz(l, m):
    # cos ϑ Y_{l,m}
    terms = []
    up = math.sqrt(((l + 1) ** 2 - m * m) / ((2 * l + 1) * (2 * l + 3)))
    terms.append((l + 1, m, up))
    if l > 0 and abs(m) <= l - 1:
        terms.append((l - 1, m, math.sqrt((l * l - m * m) / ((2 * l - 1) * (2 * l + 1)))))
    return terms


def _mul_nplus(l, m):
    # sin ϑ e^{iφ} Y_{l,m}
    terms = [(l + 1, m + 1, -math.sqrt((l + m + 1) * (l + m + 2) / ((2 * l + 1) * (2 * l + 3))))]
    if l > 0 and abs(m + 1) <= l - 1:
        terms.append((l - 1, m + 1, math.sqrt((l - m) * (l - m - 1) / ((2 * l - 1) * (2 * l + 1)))))
    return terms


def _mul_nminus(l, m):
    # sin ϑ e^{−iφ} Y_{l,m}
    terms = [(l + 1, m - 1, math.sqrt((l - m + 1) * (l - m + 2) / ((2 * l + 1) * (2 * l + 3))))]
    if l > 0 and abs(m - 1) <= l - 1:
        terms.append((l - 1, m - 1, -math.sqrt((l + m) * (l + m - 1) / ((2 * l - 1) * (2 * l + 1)))))
    return terms


def multiply_n(axis: int, psi: Expansion) -> Expansion:
    """Multiply by the unit-vector component n_x, n_y or n_z (axis 0, 1, 2)."""
    out: defaultdict = defaultdict(complex)
    for (s, l, m), c in psi.items():
        if axis == 2:
            for L, M, w in _mul_nz(l, m):
                _add(out, (s, L, M), w * c)
            continue
        # n_x = (n₊ + n₋)/2, n_y = (n₊ − n₋)/(2i)
        wp, wm = (0.5, 0.5) if axis == 0 else (-0.5j, 0.5j)
        for L, M, w in _mul_nplus(l, m):
            _add(out, (s, L, M), wp * w * c)
        for L, M, w in _mul_nminus(l, m):
            _add(out, (s, L, M), wm * w * c)
    return dict(out)


def apply_sigma(axis: int, psi: Expansion) -> Expansion:
    """Pauli matrix σ_x, σ_y or σ_z on the spin index."""
    out: dict = {}
    for (s, l, m), c in psi.items():
        if axis == 0:
            out[(1 - s, l, m)] = c
        elif axis == 1:
            out[(1 - s, l, m)] = (1j if s == 0 else -1j) * c
        else:
            out[(s, l, m)] = c if s == 0 else -c
    return out


def apply_i_sigma_n_cross(vec, psi: Expansion) -> Expansion:
    """i σ·(n × v) ψ for a real 3-vector v."""
    out: defaultdict = defaultdict(complex)
    # (n × v)_k = ε_kij n_i v_j
    for k, i, j, sign in ((0, 1, 2, 1), (0, 2, 1, -1), (1, 2, 0, 1), (1, 0, 2, -1), (2, 0, 1, 1), (2, 1, 0, -1)):
        if vec[j] == 0:
            continue
        for key, c in apply_sigma(k, multiply_n(i, psi)).items():
            out[key] += 1j * sign * vec[j] * c
    return {k: v for k, v in out.items() if v != 0}


def j_dot_matrix(two_j: int, unit, basis: tuple[int, ...]):
    """Matrix of J·u in the |j, j_z⟩ basis listed by ``basis`` (2j_z values)."""
    import numpy as np

    u1, u2, u3 = (float(x) for x in unit)
    n = len(basis)
    out = np.zeros((n, n), dtype=complex)
    jj = two_j * (two_j + 2) / 4.0
    for a, ta in enumerate(basis):
        for b, tb in enumerate(basis):
            ma, mb = ta / 2.0, tb / 2.0
            if ta == tb:
                out[a, b] = u3 * ma
            elif ta == tb + 2:  # J₊ raises
                out[a, b] = 0.5 * (u1 - 1j * u2) * math.sqrt(jj - mb * (mb + 1))
            elif ta == tb - 2:
                out[a, b] = 0.5 * (u1 + 1j * u2) * math.sqrt(jj - mb * (mb - 1))
    return out
