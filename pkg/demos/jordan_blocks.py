"""
Jordan blocks of a truncated loop
=================================

Over K[x]/(x^k) the indecomposables are the nilpotent Jordan blocks
J_1, ..., J_k, one per length.  Composition factors therefore determine
indecomposables, and the bounded check holds.
"""

import numpy as np

from quivx.classify import check_property_x
from quivx.presentation import truncated_loop
from quivx.repcat import Representation, are_isomorphic, composition_series

for k in (2, 3, 4):
    A = truncated_loop(k, p=2)
    report = check_property_x(A, 4)
    lengths = [dv[0] for dv, c in report.counts if c]
    print(f"x^{k} = 0: verdict {report.verdict}, indecomposables at lengths {lengths}")

# The class representative in length 3 is conjugate to the standard block.
A = truncated_loop(3)
J3 = Representation(A, {"1": 3}, {"x": np.eye(3, 3, -1, dtype=np.int64)})
(rep,) = check_property_x(A, 3).tables[(3,)].representatives
print("representative:", rep.to_dict()["mats"]["x"])
print("isomorphic to the standard block:", bool(are_isomorphic(rep, J3)))

# Its composition series is the radical filtration K^3 > xK^3 > x^2K^3 > 0.
cs = composition_series(J3)
print("subspace dimensions along the series:", [step["1"].cols for step in cs.chain])
