import itertools

import pytest
from hypothesis import given, settings

from eulercat.category import (
    AssociativityViolation,
    CategorySpec,
    DanglingId,
    IdentityLawViolation,
    MissingComposite,
    NotAMonoid,
    NotAPartialOrder,
    ParseError,
    cyclic_group,
    discrete,
    from_monoid,
    from_poset,
    from_relation,
    is_acyclic,
    is_poset,
    parse,
    serialize,
    validate,
)

from conftest import small_categories, small_posets


def z2_spec(with_square=True):
    compose = {("e", "e"): "e", ("e", "s"): "s", ("s", "e"): "s"}
    if with_square:
        compose[("s", "s")] = "e"
    return CategorySpec(["x"], [("e", "x", "x"), ("s", "x", "x")], {"x": "e"}, compose)


def test_arrow_category_is_valid():
    spec = CategorySpec(
        ["a", "b"],
        [("1a", "a", "a"), ("1b", "b", "b"), ("f", "a", "b")],
        {"a": "1a", "b": "1b"},
        {("1a", "1a"): "1a", ("1b", "1b"): "1b", ("f", "1a"): "f", ("1b", "f"): "f"},
    )
    cat = validate(spec)
    assert len(cat.morphisms) == 3
    assert is_acyclic(cat) and is_poset(cat)


def test_z2_group_axioms_by_table():
    cat = validate(z2_spec())
    elems = cat.end("x")
    # unit, inverses and closure read straight off the table
    assert all(cat.compose("e", a) == a == cat.compose(a, "e") for a in elems)
    assert all(any(cat.compose(a, b) == "e" for b in elems) for a in elems)
    assert not is_acyclic(cat)
    assert not is_poset(cat)


def test_missing_composite_named():
    with pytest.raises(MissingComposite) as exc:
        validate(z2_spec(with_square=False))
    assert (exc.value.g, exc.value.f) == ("s", "s")


def test_identity_law_violation():
    spec = z2_spec()
    spec.compose[("e", "s")] = "e"
    with pytest.raises(IdentityLawViolation):
        validate(spec)


def test_associativity_violation():
    # {e, a, b} with a*a = b, everything else returning the left factor: not associative
    elems = ["e", "a", "b"]
    table = {(x, y): (y if x == "e" else x if y == "e" else ("b" if (x, y) == ("a", "a") else x))
             for x in elems for y in elems}
    spec = CategorySpec(["o"], [(m, "o", "o") for m in elems], {"o": "e"}, table)
    with pytest.raises(AssociativityViolation):
        validate(spec)


def test_dangling_ids():
    spec = z2_spec()
    spec.morphisms.append(("g", "x", "nowhere"))
    with pytest.raises(DanglingId):
        validate(spec)
    spec = z2_spec()
    spec.compose[("s", "s")] = "ghost"
    with pytest.raises(DanglingId):
        validate(spec)


def test_parallel_pair_is_not_a_poset(fixtures):
    cat = fixtures["parallel"]
    assert is_acyclic(cat)
    assert not is_poset(cat)


def test_from_poset_chain():
    cat = from_relation([("0", "1"), ("1", "2")])
    assert len(cat.morphisms) == 6
    assert is_poset(cat)


def test_from_poset_antichain():
    cat = discrete(["a", "b"])
    assert len(cat.morphisms) == 2


def test_boolean_lattice_morphism_count():
    subsets = [frozenset(s) for r in range(3) for s in itertools.combinations("xy", r)]
    names = ["".join(sorted(s)) or "0" for s in subsets]
    leq = [[a <= b for b in subsets] for a in subsets]
    comparable = sum(a <= b for a in subsets for b in subsets)
    cat = from_poset(names, leq)
    assert len(cat.objects) == 4
    assert len(cat.morphisms) == comparable == 9


def test_from_poset_rejects_non_orders():
    with pytest.raises(NotAPartialOrder):
        from_poset(["a", "b"], [[True, True], [True, True]])
    with pytest.raises(NotAPartialOrder):
        from_poset(["a", "b", "c"], [[1, 1, 0], [0, 1, 1], [0, 0, 1]])


def test_from_monoid_z2_and_trivial():
    cat = from_monoid(["1", "s"], [["1", "s"], ["s", "1"]])
    assert cat.end("o") == ("1", "s")
    trivial = from_monoid(["1"], [["1"]])
    assert len(trivial.objects) == 1 and len(trivial.morphisms) == 1
    assert is_poset(trivial)


def test_from_monoid_rejects_magma():
    # rock-paper-scissors style table: has a unit but is not associative
    elems = ["e", "a", "b"]
    table = [["e", "a", "b"], ["a", "b", "e"], ["b", "a", "a"]]
    with pytest.raises(NotAMonoid):
        from_monoid(elems, table)


def test_nontrivial_monoid_is_never_acyclic():
    for k in (2, 3, 4):
        assert not is_acyclic(cyclic_group(k))


def test_round_trip(fixtures):
    for cat in fixtures.values():
        text = serialize(cat)
        assert validate(parse(text)) == cat
        assert serialize(validate(parse(text))) == text


@pytest.mark.parametrize("text, location", [
    ('{"objects": ["x"], "morphisms": [', "line 1"),
    ('{"objects": ["x"]}', "morphisms"),
    ('{"objects": ["x y"], "morphisms": [], "identities": {}, "compose": []}', "objects[0]"),
    ('{"objects": ["x"], "morphisms": [["e", "x"]], "identities": {}, "compose": []}', "morphisms[0]"),
])
def test_parse_errors_name_location(text, location):
    with pytest.raises(ParseError) as exc:
        parse(text)
    assert location in str(exc.value)


@settings(max_examples=40, deadline=None)
@given(small_categories())
def test_random_categories_are_associative(cat):
    for f in cat.morphisms:
        for g in cat.morphisms:
            if cat.target(f) != cat.source(g):
                continue
            for h in cat.morphisms:
                if cat.target(g) == cat.source(h):
                    assert cat.compose(h, cat.compose(g, f)) == cat.compose(cat.compose(h, g), f)


@settings(max_examples=40, deadline=None)
@given(small_categories())
def test_poset_implies_acyclic_and_witness_antisymmetric(cat):
    if is_poset(cat):
        assert is_acyclic(cat)
    if is_acyclic(cat):
        w = cat.order_witness()
        n = len(w)
        assert all(w[i][i] for i in range(n))
        assert not any(w[i][j] and w[j][i] for i in range(n) for j in range(n) if i != j)


@settings(max_examples=30, deadline=None)
@given(small_posets())
def test_from_poset_output_is_a_poset(cat):
    assert is_poset(cat)
    w = cat.order_witness()
    n = len(w)
    # the witness of a category is transitive
    assert all(w[i][k] for i in range(n) for j in range(n) for k in range(n) if w[i][j] and w[j][k])
