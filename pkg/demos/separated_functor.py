"""
Separating a radical-square-zero algebra
========================================

When J^2 = 0 every module M sits in 0 -> JM -> M -> M/JM -> 0, and the
triple (M/JM, JM, f) is a representation of a bipartite quiver without
relations.  The functor keeps lengths and indecomposability.
"""

from quivx.classify import enumerate_reps
from quivx.presentation import serialize, two_cycle
from quivx.repcat import is_indecomposable
from quivx.separated import apply_F, phi_is_epi, separated_presentation, verify_separated

A = two_cycle()
sep = separated_presentation(A)
print(serialize(sep.gamma))

# Images of all representations of dimension (1, 1).
for M in enumerate_reps(A, (1, 1)):
    FM = apply_F(M, sep).image
    print(M.to_dict()["mats"], "->", FM.dimvec,
          "indecomposable" if is_indecomposable(M) else "decomposable",
          "epi" if phi_is_epi(FM, sep) else "not epi")

# The bounded verification of all five properties.
report = verify_separated(A, 4)
for name, check in report.checks.items():
    print(f"{name:<18} {'pass' if check.passed else 'FAIL'} ({check.checked} cases)")
print("verdict:", report.verdict)
