"""
The nilpotent state algebra in five minutes
===========================================

A pure state on n qubits doubles as an element psi = a + r of a
commutative algebra in which every site generator squares to zero.
That makes log and exp finite sums, and the coefficients of log(psi)
are exactly the joint cumulants of the state.
"""

import numpy as np

from luinv import AlgebraElement, cumulant_poly, cumulant_table, exp, inverse, log

# a two-qubit element written out by hand: 1 + e1 + 2 e2 + 5 e1 e2
x = AlgebraElement.from_terms(2, 2, {(0, 0): 1, (1, 0): 1, (0, 1): 2, (1, 1): 5})
print("coefficients of x:", x.coeffs.real)

# the inverse is a polynomial in the nilpotent part, no series truncation
print("x * x^-1:", (x * inverse(x)).coeffs.real)

# log picks out connected correlations; here c_11 = 5 - 1*2 = 3
print("log x:", log(x).coeffs.real)
print("exp(log x) == x:", np.allclose(exp(log(x)).coeffs, x.coeffs))

# on a random state the same bookkeeping runs through the cumulant
# polynomial d = a00^theta c, a plain polynomial in the amplitudes
rng = np.random.default_rng(1)
c = rng.standard_normal(4) + 1j * rng.standard_normal(4)
psi = AlgebraElement(2, 2, c / np.linalg.norm(c))

d11 = cumulant_poly("11").evaluate(psi)
a = psi.coeffs
print("d_11 from the polynomial:", d11)
print("a00 a11 - a01 a10 directly:", a[0] * a[3] - a[1] * a[2])

# and the full cumulant table is just the log coefficient list
table = cumulant_table(psi)
print("a00^2 c_11:", psi.coeffs[0] ** 2 * table[3])
