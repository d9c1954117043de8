import pytest
from hypothesis import given, settings, strategies as st

from quivx.classify import (
    FAILS,
    HOLDS,
    INCONCLUSIVE,
    AdmissibilityError,
    BudgetExceededError,
    check_property_x,
    classify_all,
    classify_indecomposables,
    count_table,
    dimension_vectors,
    entry_count,
    enumerate_reps,
    plateau_length,
    rank_profile,
    within_budget,
)
from quivx.presentation import kronecker, linear_quiver, semisimple, truncated_cycle, truncated_loop, two_cycle
from quivx.repcat import are_isomorphic, evaluate_relations, is_indecomposable

import oracles as O


def test_enumerate_examples():
    assert len(list(enumerate_reps(kronecker(2), (1, 1)))) == 4
    got = [tuple(M.entries()) for M in enumerate_reps(two_cycle(2), (1, 1))]
    assert got == [(0, 0), (0, 1), (1, 0)]
    zero = list(enumerate_reps(two_cycle(2), (0, 0)))
    assert len(zero) == 1 and zero[0].is_zero()


@pytest.mark.parametrize("A,dv", [
    (two_cycle(2), (2, 2)),
    (two_cycle(3), (1, 2)),
    (truncated_loop(3), (3,)),
    (truncated_cycle(3, 2), (1, 1, 1)),
    (kronecker(2), (2, 1)),
])
def test_enumeration_complete_and_ordered(A, dv):
    V, Ar, R = O.from_presentation(A)
    expect = [tuple(x for n, _, _ in Ar for row in m[n] for x in row)
              for m in O.valid_tuples(V, Ar, R, dict(zip(V, dv)), A.p)]
    got = [M.entries() for M in enumerate_reps(A, dv)]
    assert got == expect
    assert all(evaluate_relations(M) for M in enumerate_reps(A, dv))


def test_budget():
    A = kronecker(3)
    assert entry_count(A, (2, 2)) == 8
    assert within_budget(A, (2, 2), 13) and not within_budget(A, (2, 2), 12)
    with pytest.raises(BudgetExceededError):
        next(iter(enumerate_reps(A, (2, 2), 10)))


def test_dimension_vectors():
    assert dimension_vectors(2, 2) == [(0, 1), (0, 2), (1, 0), (1, 1), (2, 0)]
    assert dimension_vectors(1, 3) == [(1,), (2,), (3,)]


def test_classify_examples():
    assert classify_indecomposables(two_cycle(2), (1, 1)).count == 2
    assert classify_indecomposables(kronecker(2), (1, 1)).count == 3
    assert classify_indecomposables(kronecker(3), (1, 1)).count == 4


@pytest.mark.parametrize("A,dv", [
    (two_cycle(2), (1, 1)),
    (two_cycle(2), (2, 2)),
    (two_cycle(3), (1, 1)),
    (kronecker(2), (1, 1)),
    (kronecker(2), (1, 2)),
    (kronecker(3), (1, 1)),
    (truncated_loop(3), (3,)),
    (truncated_cycle(3, 3), (1, 1, 1)),
    (linear_quiver(3), (1, 1, 1)),
])
def test_classes_match_orbit_oracle(A, dv):
    V, Ar, R = O.from_presentation(A)
    oracle = O.orbit_classes(V, Ar, R, dict(zip(V, dv)), A.p)
    classes = classify_all(A, dv)
    assert sorted((c.size, c.representative.entries(), bool(c.indecomposable)) for c in classes) == \
        sorted((size, least, ind) for size, least, ind in oracle)


def test_table_invariants():
    A = kronecker(3)
    table = classify_indecomposables(A, (1, 1))
    reps = table.representatives
    for i, M in enumerate(reps):
        for N in reps[i + 1:]:
            assert not are_isomorphic(M, N)
    for M in enumerate_reps(A, (1, 1)):
        if is_indecomposable(M):
            assert sum(bool(are_isomorphic(M, R)) for R in reps) == 1


def test_representative_is_least():
    for c in classify_all(two_cycle(3), (2, 1)):
        members = [M.entries() for M in enumerate_reps(two_cycle(3), (2, 1)) if are_isomorphic(M, c.representative)]
        assert c.representative.entries() == min(members)
        assert c.size == len(members)


def test_check_examples():
    r = check_property_x(truncated_loop(2), 4)
    assert r.verdict == HOLDS
    assert [(dv, c) for dv, c in r.counts if c] == [((1,), 1), ((2,), 1)]
    r = check_property_x(two_cycle(2), 4)
    assert r.verdict == FAILS
    assert [v.dimvec for v in r.violations] == [(1, 1)]
    assert len(r.violations[0].reps) == 2
    r = check_property_x(kronecker(2), 2)
    assert r.verdict == FAILS and len(r.violations[0].reps) == 3


def test_count_table_examples():
    rows = dict(count_table(two_cycle(2), 4))
    assert {dv: c for dv, c in rows.items() if c} == {(0, 1): 1, (1, 0): 1, (1, 1): 2}
    assert dict(count_table(truncated_cycle(3, 3), 3))[(1, 1, 1)] == 3
    assert count_table(semisimple(1), 3) == [((1,), 1), ((2,), 0), ((3,), 0)]


def test_plateau():
    assert plateau_length(count_table(truncated_loop(2), 4)) == 2
    assert plateau_length(count_table(kronecker(2), 2)) is None


def test_inconclusive_when_skipped():
    r = check_property_x(truncated_loop(4, 3), 4, budget_log2=10)
    assert r.skipped and r.verdict == INCONCLUSIVE


def test_fails_wins_over_skip():
    r = check_property_x(kronecker(2), 4, budget_log2=4)
    assert r.skipped and r.verdict == FAILS


def test_not_admissible():
    with pytest.raises(AdmissibilityError):
        check_property_x(truncated_loop(None), 3)


def test_threads_do_not_change_result():
    A = two_cycle(3)
    one = [(c.representative.entries(), c.size) for c in classify_all(A, (2, 2), threads=1)]
    four = [(c.representative.entries(), c.size) for c in classify_all(A, (2, 2), threads=4)]
    assert one == four


def test_report_dict_shape():
    d = check_property_x(two_cycle(2), 2).to_dict()
    assert list(d) == ["bound", "verdict", "field", "seed", "probabilistic", "violations", "counts", "skipped"]
    assert d["seed"] == "0xc0ffee"


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([two_cycle(2), kronecker(2), truncated_loop(3), truncated_cycle(3, 2), linear_quiver(3)]),
       st.data())
def test_rank_profile_is_invariant(A, data):
    dv = data.draw(st.sampled_from([d for d in dimension_vectors(len(A.vertices), 3)]))
    for c in classify_all(A, dv):
        for M in enumerate_reps(A, dv):
            if are_isomorphic(M, c.representative):
                assert rank_profile(M) == rank_profile(c.representative)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([two_cycle(2), kronecker(2), truncated_loop(3), truncated_cycle(3, 2)]), st.data())
def test_class_sizes_partition_enumeration(A, data):
    dv = data.draw(st.sampled_from(dimension_vectors(len(A.vertices), 3)))
    classes = classify_all(A, dv)
    assert sum(c.size for c in classes) == len(list(enumerate_reps(A, dv)))
