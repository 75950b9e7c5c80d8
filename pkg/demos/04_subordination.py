"""Range containment against the convex dominant q and the Schwarzian-norm harness."""
import numpy as np

from univalent.funclang import catalog_function
from univalent.subordination import (
    DividedByZ,
    PolynomialMap,
    SelfMap,
    prop_schwarz_harness,
    random_R_function,
    random_univalent_self_map,
    range_hull,
    schwarz_pick_check,
    subordination_check,
)

q = catalog_function("q-dominant")
hull = range_hull(q)
print(f"hull of q on |z| = 1 - 1e-5: {hull.hull.size} vertices, "
      f"real extent [{hull.hull.real.min():.3f}, {hull.hull.real.max():.3f}]")

for seed in range(6):
    f = random_R_function(seed, seed)
    ok, worst, val = subordination_check(DividedByZ(f), q, hull=hull)
    print(f"  {f.label}: f(z)/z in q(D): {ok}")
print("  3 + z:", subordination_check("expr:3+z", q, hull=hull)[0])

om = SelfMap(PolynomialMap([0, 0, 1]), check_radius=0.99)
print("\nSchwarz-Pick for z^2 at 0.5:", schwarz_pick_check(om, 0.5))

# f' = g' o omega: ||S_f|| <= ||S_g|| + ||T_omega|| ||T_g||, with equality for rotations
for g, w in (("koebe", random_univalent_self_map(3)), ("phi", random_univalent_self_map(4)),
             ("koebe", SelfMap(PolynomialMap([0, np.exp(0.3j)])))):
    out = prop_schwarz_harness(catalog_function(g), w)
    print(f"  g = {g:5s} omega = {w.omega.label}: lhs = {out['lhs']:.6f}, rhs = {out['rhs']:.6f}")
