import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from quivx.exactfield import rank_array
from quivx.presentation import kronecker, linear_quiver, semisimple, truncated_cycle, truncated_loop, two_cycle
from quivx.repcat import (
    NotAdmissibleError,
    Representation,
    ZeroModuleError,
    are_isomorphic,
    comp_vector,
    composition_series,
    conjugate,
    decompose,
    direct_sum,
    direct_sum_all,
    end_algebra,
    evaluate_relations,
    hom_space,
    is_indecomposable,
    is_morphism,
    is_subrepresentation,
    quotient,
    radical,
    radical_filtration,
    rep_from_dict,
    restrict,
    split,
)

import oracles as O

A7 = two_cycle(2)
S1 = Representation.simple(A7, "1")
S2 = Representation.simple(A7, "2")
P1 = Representation(A7, {"1": 1, "2": 1}, {"alpha": [[1]], "beta": [[0]]})
P2 = Representation(A7, {"1": 1, "2": 1}, {"alpha": [[0]], "beta": [[1]]})


def jordan(k, p=2, n=None):
    A = truncated_loop(n or k, p)
    x = np.eye(k, k, -1, dtype=np.int64)
    return Representation(A, {"1": k}, {"x": x})


def random_invertible(n, p, rng):
    while True:
        g = rng.integers(0, p, size=(n, n))
        if rank_array(g, p) == n:
            return g


def random_basis_change(M, rng):
    return {v: random_invertible(M.dims[v], M.p, rng) for v in M.A.vertices}


# --- relations -------------------------------------------------------------

def test_evaluate_relations_examples():
    assert evaluate_relations(P1) and evaluate_relations(P2)
    bad = Representation(A7, {"1": 1, "2": 1}, {"alpha": [[1]], "beta": [[1]]})
    assert not evaluate_relations(bad)
    K = kronecker(3)
    assert evaluate_relations(Representation(K, {"1": 2, "2": 2}, {"a1": [[1, 2], [0, 1]], "a2": [[2, 2], [1, 0]]}))


def test_rep_from_dict_checks_relations():
    with pytest.raises(ValueError):
        rep_from_dict(A7, {"dims": {"1": 1, "2": 1}, "mats": {"alpha": [[1]], "beta": [[1]]}})
    assert rep_from_dict(A7, P1.to_dict()) == P1


def test_shape_validation():
    with pytest.raises(ValueError):
        Representation(A7, {"1": 1, "2": 2}, {"alpha": [[1]]})


# --- hom spaces --------------------------------------------------------------

def test_hom_examples():
    assert hom_space(S1, S2).dim == 0
    assert hom_space(P1, P1).dim == 1
    assert hom_space(P1, S1).dim == 1
    # P1 maps onto its top S1, which is the socle of P2
    assert hom_space(P1, P2).dim == 1 and hom_space(P2, P1).dim == 1


@pytest.mark.parametrize("M,N", [(P1, P2), (P2, P1), (P1, P1), (S1, P2), (P1, S2)])
def test_hom_matches_oracle(M, N):
    V, Ar, _ = O.from_presentation(A7)
    d1, m1 = O.as_tuples(M)
    d2, m2 = O.as_tuples(N)
    assert hom_space(M, N).dim == O.hom_dimension(V, Ar, d1, m1, d2, m2, 2)


def test_hom_basis_elements_are_morphisms():
    K = kronecker(2)
    M = Representation(K, {"1": 2, "2": 1}, {"a1": [[1, 0]], "a2": [[0, 1]]})
    N = Representation(K, {"1": 1, "2": 1}, {"a1": [[1]], "a2": [[0]]})
    assert hom_space(M, N).dim == 0
    H = hom_space(N, M)
    assert H.dim == 1
    for h in H.basis:
        assert is_morphism(N, M, h)


def test_end_examples():
    E = end_algebra(S1)
    assert E.dim == 1
    assert E.table.tolist() == [[[1]]]
    assert end_algebra(direct_sum(P1, P1)).dim == 4
    # the diagonal contributes 2 and each of Hom(P1,P2), Hom(P2,P1) one more
    PQ = direct_sum(P1, P2)
    V, Ar, _ = O.from_presentation(A7)
    d, m = O.as_tuples(PQ)
    assert end_algebra(PQ).dim == O.hom_dimension(V, Ar, d, m, d, m, 2) == 4


def test_end_table_consistent():
    M = jordan(3)
    E = end_algebra(M)
    basis = E.basis
    for i in range(E.dim):
        for j in range(E.dim):
            prod = {v: basis[i][v] @ basis[j][v] for v in M.A.vertices}
            assert E.space.element(E.table[i, j].tolist()) == prod


# --- indecomposability and isomorphism ---------------------------------------

def test_indecomposable_examples():
    assert is_indecomposable(P1).indecomposable
    res = is_indecomposable(direct_sum(P1, P2))
    assert not res.indecomposable
    e = res.witness
    for v in A7.vertices:
        assert e[v] @ e[v] == e[v]
    assert is_morphism(direct_sum(P1, P2), direct_sum(P1, P2), e)
    K = kronecker(2)
    assert is_indecomposable(Representation(K, {"1": 1, "2": 1}, {"a1": [[1]], "a2": [[1]]})).end_dim == 1


def test_zero_module_rejected():
    with pytest.raises(ZeroModuleError, match="zero module"):
        is_indecomposable(Representation.zero(A7))


def test_isomorphism_examples():
    assert not are_isomorphic(P1, P2).isomorphic
    res = are_isomorphic(P1, P1)
    assert res.isomorphic
    assert conjugate(P1, res.witness) == P1
    K = kronecker(2)
    a = Representation(K, {"1": 1, "2": 1}, {"a1": [[1]], "a2": [[0]]})
    b = Representation(K, {"1": 1, "2": 1}, {"a1": [[0]], "a2": [[1]]})
    assert not are_isomorphic(a, b)


def test_isomorphism_dimvec_mismatch():
    assert not are_isomorphic(S1, S2)


# --- composition series -------------------------------------------------------

def test_comp_vector_examples():
    assert comp_vector(P1) == (1, 1)
    assert comp_vector(Representation.zero(A7)) == (0, 0)
    assert comp_vector(jordan(3)) == (3,)


def test_series_bimodule_shape():
    A = linear_quiver(2)
    M = Representation(A, {"1": 2, "2": 1}, {"a1": [[1, 0]]})
    cs = composition_series(M)
    assert cs.length == 3
    assert cs.factor_vertices == ["2", "1", "1"]
    assert cs.multiplicities() == comp_vector(M)


def test_series_simple_and_jordan():
    cs = composition_series(S1)
    assert cs.length == 1 and cs.factor_vertices == ["1"]
    cs = composition_series(jordan(2))
    assert cs.length == 2
    assert [b["1"].cols for b in cs.chain] == [0, 1, 2]
    soc = cs.chain[1]["1"].array
    assert rank_array(np.concatenate([soc, np.array([[0], [1]])], axis=1), 2) == 1


def test_series_p1():
    assert composition_series(P1).factor_vertices == ["2", "1"]


def test_radical_filtration_requires_nilpotence():
    A = truncated_loop(None)
    M = Representation(A, {"1": 1}, {"x": [[1]]})
    with pytest.raises(NotAdmissibleError):
        radical_filtration(M)


def test_radical_and_quotient():
    M = jordan(3)
    rad = radical(M)
    assert rad["1"].shape == (3, 2)
    assert is_subrepresentation(M, rad)
    top = quotient(M, rad)
    assert top.dimvec == (1,)
    assert restrict(M, rad).dimvec == (2,)


# --- sums and decomposition ---------------------------------------------------

def test_direct_sum_examples():
    S = direct_sum(S1, S2)
    assert S.dimvec == (1, 1) and not S.arr("alpha").any() and not S.arr("beta").any()
    assert direct_sum(P1, Representation.zero(A7)) == P1
    PP = direct_sum(P1, P1)
    assert PP.arr("alpha").tolist() == [[1, 0], [0, 1]] and not PP.arr("beta").any()


def test_decompose_examples():
    M = direct_sum_all([P1, P2, S1], A7)
    parts = decompose(M)
    assert len(parts) == 3
    remaining = [P1, P2, S1]
    for X in parts:
        match = next(k for k, Y in enumerate(remaining) if are_isomorphic(X, Y))
        remaining.pop(match)
    assert not remaining
    assert [X.dimvec for X in decompose(P1)] == [(1, 1)]
    assert len(decompose(Representation.zero(A7))) == 0


def test_split_is_direct():
    M = direct_sum(jordan(2), jordan(1, n=2))
    res = is_indecomposable(M)
    a, b = split(M, res.witness)
    assert are_isomorphic(direct_sum(a, b), M)


# --- properties ---------------------------------------------------------------

@st.composite
def kronecker_reps(draw, max_dim=2):
    p = draw(st.sampled_from([2, 3]))
    d1 = draw(st.integers(0, max_dim))
    d2 = draw(st.integers(0, max_dim))
    K = kronecker(p)
    mats = {}
    for a in ("a1", "a2"):
        mats[a] = np.array(draw(st.lists(st.integers(0, p - 1), min_size=d1 * d2, max_size=d1 * d2)),
                           dtype=np.int64).reshape(d2, d1)
    return Representation(K, {"1": d1, "2": d2}, mats)


@st.composite
def cycle_reps(draw):
    """Representations of the 3-cycle with length-2 paths killed, dims <= 1."""
    A = truncated_cycle(3, 2, 2)
    dims = {v: draw(st.integers(0, 1)) for v in A.vertices}
    while True:
        mats = {a.name: np.array([[draw(st.integers(0, 1))] * dims[a.source]] * dims[a.target], dtype=np.int64)
                .reshape(dims[a.target], dims[a.source]) for a in A.arrows}
        M = Representation(A, dims, mats)
        if evaluate_relations(M):
            return M
        # kill one arrow and retry
        dims = {v: draw(st.integers(0, 1)) for v in A.vertices}


@settings(max_examples=60, deadline=None)
@given(kronecker_reps())
def test_indecomposable_matches_oracle(M):
    if M.is_zero():
        return
    V, Ar, _ = O.from_presentation(M.A)
    dims, mats = O.as_tuples(M)
    assert bool(is_indecomposable(M)) == O.tuple_is_indecomposable(V, Ar, dims, mats, M.p)


@settings(max_examples=40, deadline=None)
@given(kronecker_reps(), kronecker_reps())
def test_isomorphism_matches_oracle(M, N):
    if M.p != N.p:
        return
    N = Representation(M.A, N.dims, {k: N.arr(k) for k in ("a1", "a2")})
    V, Ar, _ = O.from_presentation(M.A)
    d1, m1 = O.as_tuples(M)
    d2, m2 = O.as_tuples(N)
    expect = d1 == d2 and O.tuples_isomorphic(V, Ar, d1, m1, m2, M.p)
    assert bool(are_isomorphic(M, N)) == expect


@settings(max_examples=40, deadline=None)
@given(kronecker_reps(max_dim=3), st.integers(0, 2**32 - 1))
def test_basis_change_preserves_class(M, seed):
    rng = np.random.default_rng(seed)
    N = conjugate(M, random_basis_change(M, rng))
    res = are_isomorphic(M, N)
    assert res.isomorphic
    assert conjugate(M, res.witness) == N
    assert hom_space(M, M).dim == hom_space(N, N).dim


@settings(max_examples=40, deadline=None)
@given(kronecker_reps(max_dim=3))
def test_series_matches_comp_vector(M):
    cs = composition_series(M)
    assert cs.length == M.total_dim
    assert cs.multiplicities() == comp_vector(M)
    for lo, hi in zip(cs.chain, cs.chain[1:]):
        assert sum(b.cols for b in hi.values()) == sum(b.cols for b in lo.values()) + 1
        assert is_subrepresentation(M, hi)


@settings(max_examples=30, deadline=None)
@given(kronecker_reps(), kronecker_reps(), kronecker_reps())
def test_hom_additive(M, N, L):
    if len({M.p, N.p, L.p}) > 1:
        return
    assert hom_space(direct_sum(M, N), L).dim == hom_space(M, L).dim + hom_space(N, L).dim
    assert hom_space(L, direct_sum(M, N)).dim == hom_space(L, M).dim + hom_space(L, N).dim


@settings(max_examples=30, deadline=None)
@given(kronecker_reps(max_dim=3))
def test_decompose_reassembles(M):
    parts = decompose(M)
    for X in parts:
        assert is_indecomposable(X)
    assert are_isomorphic(direct_sum_all(list(parts), M.A), M)


@settings(max_examples=30, deadline=None)
@given(cycle_reps())
def test_cycle_reps_satisfy_relations(M):
    assert evaluate_relations(M)
    assert composition_series(M).multiplicities() == comp_vector(M)


def test_probabilistic_path_flags():
    # End of a 6-dimensional module over GF(5) is too large to scan exhaustively
    A = semisimple(1, 5)
    M = Representation(A, {"1": 6})
    res = is_indecomposable(M)
    assert not res.indecomposable
    assert res.end_dim == 36
