"""
Multiplicities that jump across a wall
======================================

Take the constant sheaf on the open upper half-plane inside CP^1, extended
by zero.  Its strata are orbits of SL(2, R), which are not unions of torus
orbits, so the attracting cells cut them differently on either side of the
wall X = 0.  The multiplicity vector moves from one fixed point to the
other while the Euler characteristic stays at 1.
"""

from sheafloc import CartanElement, chamber_scan, euler_form_class, multiplicities, multiplicities_local, preset

model, F = preset("cp1-upper-halfplane")

for x in (2, -2):
    X = CartanElement.real([x])
    glob = multiplicities(model, F, X)
    loc = multiplicities_local(model, F, X)
    print(f"X = {x:+d}: chamber {glob.chamber}  m {dict(glob.m)}  costalks {dict(loc.m)}")

# one row per chamber; the Euler-form integral divided by 2 pi gives chi = 1
for row in chamber_scan(model, F, euler_form_class(model)):
    print(row.chamber, row.m, row.value.real / (2 * 3.141592653589793))
