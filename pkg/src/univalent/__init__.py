"""Numerical geometric function theory: transforms J_alpha, I_alpha, Schwarzian norms, qc extensions."""
