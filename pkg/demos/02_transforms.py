"""J_alpha and I_alpha, by series and by quadrature with branch tracking."""
import cmath

import numpy as np

from univalent.funclang import as_function, catalog_function
from univalent.subordination import random_R_member
from univalent.transforms import IAlphaFunction, JAlphaFunction, i_alpha_series, j_alpha_series

koebe = catalog_function("koebe")
phi = catalog_function("phi")

# J_alpha[K] has a closed form; the quadrature reproduces it for complex alpha too
alpha, z = 0.3 + 0.4j, 0.7 * cmath.exp(2.5j)
exact = (1 - (1 - z) ** (1 - 2 * alpha)) / (1 - 2 * alpha)
print("J_alpha[K](z):", JAlphaFunction(koebe, alpha).value(z), "closed form:", exact)

# series and pointwise routes agree inside |z| <= 1/2
s = j_alpha_series(phi.series(256), alpha)
print("series vs quadrature at 0.5i:", abs(s(0.5j) - JAlphaFunction(phi, alpha).value(0.5j)))

# I_{-1}[phi] is psi
print("I_-1[phi] - psi at 0.4:", IAlphaFunction(phi, -1).value(0.4) - catalog_function("psi").value(0.4))

# f(z)/z = exp(4iz) winds past the principal branch cut on [0, 0.9];
# the tracked logarithm keeps the integrand continuous
f = as_function("expr:z*exp(4*i*z)")
print("branch-tracked J_0.8:", JAlphaFunction(f, 0.8).value(0.9),
      "exact:", (cmath.exp(3.2j * 0.9) - 1) / 3.2j)

# composition J_alpha[f] = I_alpha[J[f]] coefficientwise
g = random_R_member(seed=1, degree=4, order=256)
d = np.abs(j_alpha_series(g, alpha).coeffs - i_alpha_series(j_alpha_series(g, 1), alpha).coeffs).max()
print(f"max coefficient gap J_a[f] vs I_a[J[f]]: {d:.2e}")
