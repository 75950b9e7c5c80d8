"""Explicit quasiconformal extension of a spirallike map, written out as CSV.

Usage: python3 demos/05_spirallike_extension.py [output.csv]
"""
import sys
from pathlib import Path

import numpy as np

from univalent.errors import ExtensionAborted
from univalent.funclang import as_function, catalog_function
from univalent.loewner import ExtensionOptions, extension_grid, spirallike_extension

lam = np.pi / 4
# spiral-koebe(pi/4) pulled in to radius 1/2: strictly spirallike, smooth boundary curve
f = as_function(f"expr:2*(0.5*z)/(1-0.5*z)^(1+exp(2*i*{lam!r}))")

p = spirallike_extension(f, lam, 1.5 * np.exp(1j * np.pi / 3))
print(f"Phi(1.5 e^(i pi/3)) = {p.phi:.10f}, flow time t = {p.t:.6f}, boundary angle = {p.theta:.6f}")

g = extension_grid(f, lam, ExtensionOptions(r_out_max=3, n_r=50, n_theta=180))
print(f"grid: {g.ok.size} cells, {g.failures} failures, max |mu| = {g.max_mu:.6f}, "
      f"bound sin(pi a/2) = {g.k_bound:.6f} (a = {g.alpha_hat:.6f}), injective: {g.injective_on_grid()}")

out = Path(sys.argv[1] if len(sys.argv) > 1 else "spiral_extension.csv")
out.write_text(g.to_csv())
print(f"wrote {out}")

# the extremal map itself: its boundary image is one spiral flow line, so the
# flow from interior points never reaches it and every cell fails
try:
    extension_grid(catalog_function("spiral-koebe"), lam, ExtensionOptions(n_r=5, n_theta=36))
except ExtensionAborted as exc:
    print("spiral-koebe itself:", exc)
