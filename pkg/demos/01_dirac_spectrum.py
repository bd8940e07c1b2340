"""
Dirac–Coulomb levels of hydrogen
================================

Exact bound-state energies, the n = 2 fine structure, and a look at the
normalized radial functions g(r), f(r).
"""

import numpy as np

from ncdirac import Level, PhysicalConstants, energy, radial_g_f, radial_params
from ncdirac.numerics import integrate_radial

c = PhysicalConstants()
m = c.electron_mass

# Ground-state binding energy, rest mass subtracted
print(f"1S1/2 binding: {m - energy(Level.parse('1S1/2')):.6f} eV")

# 2S1/2 and 2P1/2 coincide; 2P3/2 sits higher by the fine-structure interval
for label in ("2S1/2", "2P1/2", "2P3/2"):
    print(f"{label}: m - E = {m - energy(Level.parse(label)):.9f} eV")
fs = energy(Level.parse("2P3/2")) - energy(Level.parse("2P1/2"))
h_ev_s = 4.135667696e-15
print(f"fine structure: {fs:.5e} eV = {fs / h_ev_s / 1e6:.1f} MHz")

# Radial functions on a grid in units of the decay length 1/λ
sol = radial_params(Level.parse("2S1/2"))
x = np.linspace(0.1, 12, 7)
g, f = radial_g_f(sol, x / sol.lam)
for xi, gi, fi in zip(x, g, f):
    print(f"  λr = {xi:5.2f}   g = {gi:+.4e}   f = {fi:+.4e}")

# Normalization holds to quadrature precision; the small component carries ~(Ze²)² of it
norm = integrate_radial(lambda r: sum(v * v for v in radial_g_f(sol, r)) * r * r, 2 * sol.lam, 1e-12)
small = integrate_radial(lambda r: radial_g_f(sol, r)[1] ** 2 * r * r, 2 * sol.lam)
print(f"norm = {norm:.15f}, small-component weight = {small:.3e}")

# Heavier nuclei: the 1S level deepens faster than Z²
for Z in (1, 20, 60, 100):
    b = m - energy(Level.parse("1S1/2", Z))
    print(f"Z = {Z:3d}: binding {b:12.3f} eV, Z²·13.6 = {13.6057 * Z * Z:12.3f} eV")
