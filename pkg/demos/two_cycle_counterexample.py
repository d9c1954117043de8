"""
Two modules with the same composition factors
=============================================

The quiver 1 <-> 2 with both length-two paths killed has exactly four
indecomposable representations.  Two of them, P1 and P2, share the
composition factors S1 + S2 without being isomorphic.
"""

from quivx.classify import check_property_x
from quivx.presentation import two_cycle
from quivx.repcat import Representation, are_isomorphic, composition_series, hom_space

A = two_cycle(p=2)
print(A)

# Both projectives have a one-dimensional space at each vertex.
P1 = Representation(A, {"1": 1, "2": 1}, {"alpha": [[1]], "beta": [[0]]})
P2 = Representation(A, {"1": 1, "2": 1}, {"alpha": [[0]], "beta": [[1]]})

# Their composition series list the same simples in opposite order.
print("P1 factors, bottom to top:", composition_series(P1).factor_vertices)
print("P2 factors, bottom to top:", composition_series(P2).factor_vertices)

# Every morphism P1 -> P2 kills the socle, so none is invertible.
print("dim Hom(P1, P2) =", hom_space(P1, P2).dim)
print("P1 isomorphic to P2?", bool(are_isomorphic(P1, P2)))

# The bounded check finds the same pair on its own.
report = check_property_x(A, 4)
print("verdict:", report.verdict)
for v in report.violations:
    print("violation at", v.dimvec, [R.to_dict()["mats"] for R in v.reps])
print("indecomposable classes up to length 4:", report.total_classes)
