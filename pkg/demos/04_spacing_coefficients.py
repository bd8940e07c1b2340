"""
Spacing coefficients
====================

Each n = 2 sublevel spacing is linear in |θ|/α³ and |θ̄|/α. The slopes A
(eV/m²) and B are computed for the J·θ̄ form of Θ̄ and for the shift table
of fixed eigenvalues.
"""

from ncdirac import NcParams, PhysicalConstants, spacings
from ncdirac.ncps import SHIFT_FORM_EIGENVALUES

c = PhysicalConstants()
print(f"θ conversion: 1 m² = {c.m2_to_inv_ev2:.6e} eV⁻²; B uses the same 1/(ħc)² factor")

for form in ("exact", "shift"):
    print(f"\nthetabar_form = {form}")
    for s in spacings(NcParams(), c, thetabar_form=form):
        print(f"  {s.name:28s} A = {s.A:.4e} eV/m²   B = {s.B:+.4e}")

print("\nshift-form eigenvalues per |θ̄|:", SHIFT_FORM_EIGENVALUES)

# The spacing values for a concrete θ come straight from the corrections
th = 1e-36 * c.m2_to_inv_ev2
for s in spacings(NcParams(theta=[0, 0, th], alpha=1.0), c):
    print(f"  {s.name:28s} {s.value:.4e} eV")
