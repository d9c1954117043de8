"""
Oriented cycles with long paths killed
======================================

On the oriented 3-cycle with every path of length 3 set to zero, the
three uniserial modules of length 3 start at different vertices but each
has one composition factor per vertex.
"""

from quivx.classify import check_property_x
from quivx.presentation import truncated_cycle
from quivx.repcat import composition_series

A = truncated_cycle(3, 3, p=2)
report = check_property_x(A, 3)
print("verdict:", report.verdict)
for v in report.violations:
    print("dimension vector", v.dimvec)
    for R in v.reps:
        cs = composition_series(R)
        print("  factors bottom to top:", cs.factor_vertices, "matrices:", R.to_dict()["mats"])

# Killing paths of length 2 instead leaves only uniserials of length <= 2.
B = truncated_cycle(3, 2, p=2)
print("length-2 version:", check_property_x(B, 3).verdict)
