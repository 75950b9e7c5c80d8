"""Hyperbolic norms of the pre-Schwarzian and Schwarzian derivatives."""
from univalent.constants import h, solve_r0
from univalent.funclang import catalog_function
from univalent.norms import norm_of
from univalent.subordination import random_R_function
from univalent.transforms import IAlphaFunction, JAlphaFunction

phi = catalog_function("phi")
for label, f, kind in (("K", catalog_function("koebe"), "T"), ("K", catalog_function("koebe"), "S"),
                       ("phi", phi, "T"), ("hille(eps=0.5)", catalog_function("hille", epsilon=0.5), "S")):
    r = norm_of(f, kind)
    print(f"||{kind}_{label}|| = {r.value:.8f}  attained near z = {r.argmax_z:.5f}")

# the Alexander transform of phi attains the sharp bound h(r0) at z = r0
r = norm_of(JAlphaFunction(phi, 1), "T")
print(f"\n||T_(J[phi])|| = {r.value:.10f} at {r.argmax_z:.6f};  h(r0) = {h(solve_r0()):.10f}")

# random members of the class stay below it, and the norm scales with |alpha|
for seed in range(5):
    f = random_R_function(seed, seed)
    base = norm_of(JAlphaFunction(f, 1), "T").value
    scaled = norm_of(JAlphaFunction(f, 0.6 - 0.3j), "T").value
    print(f"  seed {seed}: ||T_J[f]|| = {base:.6f}, ratio for alpha = 0.6-0.3i: {scaled / (abs(0.6 - 0.3j) * base):.9f}")

# for real alpha, ||S_(I_alpha[phi])|| = 2 alpha (alpha + 2); complex alpha gives 2|alpha||2 + alpha|
for a in (0.5, 1.0, 1.5, 0.6 + 0.8j):
    v = norm_of(IAlphaFunction(phi, a), "S").value
    print(f"  alpha = {a}: {v:.6f} vs 2|a|(|a|+2) = {2 * abs(a) * (abs(a) + 2):.6f}, 2|a||2+a| = {2 * abs(a) * abs(2 + a):.6f}")
