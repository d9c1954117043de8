"""
Finite type from a binary quadratic form
========================================

For a bimodule of shape (a, b) the form a x^2 - ab xy + b y^2 is positive
definite exactly when ab <= 3.  This script tabulates the shapes up to 4
and shows where a null vector appears.
"""

import itertools

from quivx import forms

print(" a  b   ab  finite  null vector")
for a, b in itertools.product(range(1, 5), repeat=2):
    shape = forms.BimoduleShape(a, b)
    null = forms.find_null_vector(shape)
    print(f"{a:>2} {b:>2} {a * b:>4}  {str(forms.is_finite_type(shape)):<6}  {null}")

# With division-ring dimensions attached the same test runs on q itself.
spec = forms.BimoduleShape(1, 4, f1=1, f2=4, m=4).spec
print("q(2, 1) for (f1, f2, m) = (1, 4, 4):", forms.eval_q(spec, 2, 1))
print("positive definite:", forms.is_positive_definite(spec))

# The dimension-product criterion for a list of bimodule pairs.
print(forms.species_criterion([(1, 1), (1, 3)]))
print(forms.species_criterion([(1, 1), (2, 2)]))
