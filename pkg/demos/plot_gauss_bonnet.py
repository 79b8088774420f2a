"""
Euler characteristics from fixed points
=======================================

The equivariant Euler form restricted to a fixed point is the product of
the tangent weights there, so its localized integral is a plain count.
We check this on projective spaces and on the full flag variety of C^3.
"""

import numpy as np

from sheafloc import CartanElement, build_cpn, build_flag3, constant_sheaf, gauss_bonnet, inverse_den_sum

rng = np.random.default_rng(1)

# projective spaces: chi(CP^n) = n + 1
for n in range(1, 5):
    model = build_cpn(n)
    X = CartanElement.real(rng.permutation(n + 1) * 3 + rng.integers(0, 2, n + 1))
    gb = gauss_bonnet(model, constant_sheaf(model), X)
    print(f"CP^{n}: localized {gb.localized.real:.12f}  chi {gb.combinatorial}")

# the flag variety has six fixed points, one per permutation
flag = build_flag3()
X = CartanElement.real([5, 2, 0])
print("flag3:", gauss_bonnet(flag, constant_sheaf(flag), X).as_dict())

# the integral of 1 over a positive-dimensional manifold is zero,
# and the fixed-point sum sees this exactly
print("sum 1/Den on flag3:", inverse_den_sum(flag, X))
