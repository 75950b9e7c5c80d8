"""Which criteria say what about a few test functions."""
from univalent.criteria import criteria_report
from univalent.funclang import as_function, catalog_function
from univalent.subordination import random_R_function

cases = [("phi", catalog_function("phi"), 1.0), ("koebe", catalog_function("koebe"), 1.0),
         ("identity", as_function("expr:z"), 0.2), ("random member", random_R_function(5, 3), 0.9)]
for label, f, alpha in cases:
    print(f"\n{label}, alpha = {alpha}")
    for v in criteria_report(f, alpha):
        print(f"  {v.name:24s} {v.passed:12s} measured {v.measured:<12.6g} threshold {v.threshold:.6g}")
