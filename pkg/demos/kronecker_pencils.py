"""
Kronecker pencils over small fields
===================================

A representation of dimension (1, 1) of the Kronecker quiver is a pair of
scalars (s, t), up to a common nonzero scale.  The nonzero pairs give the
q + 1 points of the projective line, so the number of indecomposable
classes grows with the field.
"""

from quivx import forms
from quivx.classify import classify_indecomposables
from quivx.presentation import kronecker

for q in (2, 3, 5, 7):
    table = classify_indecomposables(kronecker(q), (1, 1))
    points = [(int(R.arr("a1")[0, 0]), int(R.arr("a2")[0, 0])) for R in table.representatives]
    print(f"GF({q}): {table.count} classes, representatives {points}")

# The bimodule shape (2, 2) behind the quiver has a radical vector for its form.
shape = forms.BimoduleShape(2, 2)
print("bilinear form matrix:", forms.tilde_matrix(shape))
null = forms.find_null_vector(shape)
print("null vector:", null, "value", forms.tilde_form(shape, *null))
print("defect of the null vector:", forms.defect(shape, null))
