"""
Splitting a module into indecomposables
=======================================

A direct sum hidden behind a random change of basis is taken apart by
searching its endomorphism ring for idempotents.  The summands come back
up to isomorphism, as Krull-Schmidt predicts.
"""

import numpy as np

from quivx.exactfield import rank_array
from quivx.presentation import truncated_loop
from quivx.repcat import Representation, are_isomorphic, conjugate, decompose, direct_sum_all

A = truncated_loop(3, p=3)
blocks = [Representation(A, {"1": n}, {"x": np.eye(n, n, -1, dtype=np.int64)}) for n in (1, 2, 3)]
M = direct_sum_all([blocks[2], blocks[0], blocks[1], blocks[0]], A)

rng = np.random.default_rng(1)
while True:
    g = rng.integers(0, 3, size=(7, 7))
    if rank_array(g, 3) == 7:
        break
N = conjugate(M, {"1": g})
print("scrambled x:\n", N.arr("x"))

parts = decompose(N)
sizes = sorted(X.total_dim for X in parts)
print("summand lengths:", sizes)
for X in parts:
    match = next(n for n, B in zip((1, 2, 3), blocks) if X.total_dim == n and are_isomorphic(X, B))
    print(f"summand of length {X.total_dim} is J_{match}")
