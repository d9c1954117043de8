import json

import pytest
from hypothesis import given, strategies as st

from quivx.presentation import (
    Relation,
    SpecError,
    add_relations,
    disjoint_union,
    from_dict,
    is_admissible,
    is_radical_square_zero,
    kronecker,
    linear_quiver,
    load_spec,
    make_presentation,
    parse_spec,
    path_nilpotency_bound,
    semisimple,
    serialize,
    truncated_cycle,
    truncated_loop,
    two_cycle,
)

TWO_CYCLE = {
    "field": {"p": 2},
    "vertices": ["1", "2"],
    "arrows": [{"name": "a", "from": "1", "to": "2"}, {"name": "b", "from": "2", "to": "1"}],
    "relations": [[{"coeff": 1, "path": ["a", "b"]}], [{"coeff": 1, "path": ["b", "a"]}]],
}


def spec_text(**changes):
    data = json.loads(json.dumps(TWO_CYCLE))
    data.update(changes)
    return json.dumps(data)


def test_parse_two_cycle():
    A = parse_spec(spec_text())
    assert len(A.vertices) == 2 and len(A.arrows) == 2 and len(A.relations) == 2
    assert A.p == 2


def test_single_vertex_valid():
    A = parse_spec(json.dumps({"field": {"p": 3}, "vertices": ["x"], "arrows": [], "relations": []}))
    assert A.vertices == ("x",) and A.arrows == ()


@pytest.mark.parametrize("text,code", [
    ("{not json", "malformed-json"),
    (spec_text(relations=[[{"coeff": 1, "path": ["a", "a"]}]]), "non-composable"),
    (spec_text(relations=[[{"coeff": 1, "path": ["a", "z"]}]]), "unknown-arrow"),
    (spec_text(arrows=[{"name": "a", "from": "1", "to": "9"}], relations=[]), "unknown-vertex"),
    (spec_text(relations=[[{"coeff": 1, "path": ["a", "b"]}, {"coeff": 1, "path": ["b", "a"]}]]), "non-parallel"),
    (spec_text(relations=[[{"coeff": 1, "path": ["a"]}]]), "short-path"),
    (spec_text(field={"p": 4}), "not-prime"),
    (spec_text(vertices=["1", "1"], arrows=[], relations=[]), "duplicate-vertex"),
    (spec_text(arrows=[{"name": "a", "from": "1", "to": "2"}] * 2, relations=[]), "duplicate-arrow"),
    (json.dumps({"vertices": ["1"]}), "schema"),
])
def test_error_codes(text, code):
    with pytest.raises(SpecError) as info:
        parse_spec(text)
    assert info.value.code == code


def test_error_location():
    with pytest.raises(SpecError) as info:
        parse_spec(spec_text(relations=[[{"coeff": 1, "path": ["a", "b"]}], [{"coeff": 1, "path": ["a", "a"]}]]))
    assert "relations[1]" in str(info.value)


def test_normalization():
    A = parse_spec(spec_text(field={"p": 3}, relations=[[{"coeff": 4, "path": ["a", "b"]}, {"coeff": 3, "path": ["a", "b"]}]]))
    assert A.relations[0].terms == ((1, ("a", "b")),)


def test_round_trip_files():
    import pathlib
    for path in sorted(pathlib.Path(__file__).parent.parent.joinpath("specs").glob("*.json")):
        if path.name.endswith(".rep.json"):
            continue
        A = load_spec(path)
        assert parse_spec(serialize(A)) == A
        assert serialize(parse_spec(serialize(A))) == serialize(A)


def test_serialize_key_order():
    text = serialize(two_cycle())
    assert list(json.loads(text)) == ["field", "vertices", "arrows", "relations"]


def test_nilpotency_examples():
    assert path_nilpotency_bound(two_cycle(), 5) == 2
    assert path_nilpotency_bound(truncated_loop(3), 5) == 3
    assert path_nilpotency_bound(truncated_loop(None), 5) is None
    assert path_nilpotency_bound(truncated_cycle(3, 3), 5) == 3


def test_radical_square_zero_examples():
    assert is_radical_square_zero(two_cycle())
    assert not is_radical_square_zero(truncated_loop(3))
    assert is_radical_square_zero(linear_quiver(2))
    assert not is_radical_square_zero(linear_quiver(3))


def test_admissible():
    assert is_admissible(linear_quiver(4), 1)
    assert is_admissible(truncated_loop(4), 4)
    assert not is_admissible(truncated_loop(None), 4)
    assert not is_admissible(truncated_loop(5), 4)


def test_disjoint_union_examples():
    U = disjoint_union(truncated_loop(2), truncated_loop(2))
    assert len(U.vertices) == 2 and len(U.arrows) == 2 and len(U.relations) == 2
    assert len(set(U.vertices)) == 2 and len({a.name for a in U.arrows}) == 2
    V = disjoint_union(two_cycle(), semisimple(1))
    assert len(V.vertices) == 3 and len(V.arrows) == 2
    empty = make_presentation([], [], [], 2)
    assert disjoint_union(two_cycle(), empty) == two_cycle()


def test_disjoint_union_field_mismatch():
    with pytest.raises(SpecError) as info:
        disjoint_union(two_cycle(2), two_cycle(3))
    assert info.value.code == "field-mismatch"


def test_add_relations_examples():
    with pytest.raises(SpecError):
        add_relations(kronecker(), [Relation.monomial(["a2"])])
    B = add_relations(truncated_loop(3), [Relation.monomial(["x", "x"])])
    assert path_nilpotency_bound(B, 5) == 2
    C = add_relations(two_cycle(), [Relation.monomial(["alpha", "beta"])])
    assert len(C.relations) == 3


@given(st.sampled_from([2, 3, 5]), st.integers(1, 4), st.integers(2, 4))
def test_round_trip_property(p, n, length):
    A = truncated_cycle(n, length, p)
    assert parse_spec(serialize(A)) == A
    assert from_dict(json.loads(serialize(A))) == A
