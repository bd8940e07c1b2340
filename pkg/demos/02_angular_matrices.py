"""
Angular secular matrices
========================

Θ = ⟨Ω|L·θ|Ω⟩ and Θ̄ built from iσ·(n×θ̄) for the n = 2 levels, their
eigenvalues, and the fact that both are multiples of J inside a level.
"""

import numpy as np

from ncdirac import Level, hermitian_eigen, theta_matrix, thetabar_matrix
from ncdirac.angular import j_dot_matrix

np.set_printoptions(precision=4, suppress=True)

theta = np.array([0.0, 0.0, 1.0])
for label in ("2S1/2", "2P1/2", "2P3/2"):
    lv = Level.parse(label)
    m = theta_matrix(lv, theta)
    print(f"Θ({label}) for θ = ẑ, rows 2j_z = {m.two_jz}")
    print(m.entries.real)

# A tilted θ mixes j_z, but the spectrum only sees |θ|
rng = np.random.default_rng(0)
lv = Level.parse("2P3/2")
for _ in range(3):
    v = rng.normal(size=3)
    vals, _ = hermitian_eigen(theta_matrix(lv, v))
    print("eigenvalues / |θ|:", vals / np.linalg.norm(v))

# Inside one (j, l) multiplet every vector operator is proportional to J.
# For L·θ the factor is the Landé-type ratio ⟨L·J⟩/j(j+1); for Θ̄ it comes out as
# −8/3, +8/3 and −16/15.
tb = np.array([0.3, -0.2, 0.9])
for label in ("2S1/2", "2P1/2", "2P3/2"):
    lv = Level.parse(label)
    mb = thetabar_matrix(lv, tb).entries
    jd = j_dot_matrix(lv.two_j, tb, lv.sublevels)
    ratio = (np.vdot(jd, mb) / np.vdot(jd, jd)).real
    vals, _ = hermitian_eigen(mb)
    print(f"Θ̄({label}) = {ratio:+.6f} J·θ̄, eigenvalues / |θ̄| = {vals / np.linalg.norm(tb)}")
