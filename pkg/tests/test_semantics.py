import pytest
from hypothesis import given, strategies as st

from program import Program, Rule, Vocabulary
from semantics import (
    NotWellDefined,
    SESet,
    answer_sets,
    answer_sets_by_reduct,
    block_set,
    canonical_program,
    classical_models,
    complement,
    implies_s,
    is_satisfiable,
    is_tautologous,
    is_well_defined,
    reduct,
    se_from_json,
    se_models,
    se_to_json,
    strongly_equivalent,
)

AB = Vocabulary.of("a", "b")

atoms = st.lists(st.sampled_from(["a", "b"]), max_size=2)
rules = st.builds(Rule.make, atoms, atoms, atoms, atoms).filter(
    lambda r: r.head_pos or r.head_neg or r.body_pos or r.body_neg)
programs = st.frozensets(rules, max_size=4).map(Program)


@pytest.mark.parametrize("text, expected", [
    (":- a.", "∅,∅ ∅,b b,b"),
    (":- b.", "∅,∅ ∅,a a,a"),
    ("a :- b.", "∅,∅ ∅,a a,a ∅,ab a,ab ab,ab"),
    ("b :- a.", "∅,∅ ∅,b b,b ∅,ab b,ab ab,ab"),
    (":- a, b.", "∅,∅ ∅,a a,a ∅,b b,b"),
    (":- b, not a.", "∅,∅ ∅,a a,a ∅,ab a,ab b,ab ab,ab"),
    (":- a, not b.", "∅,∅ ∅,b b,b ∅,ab a,ab b,ab ab,ab"),
    ("a ; not b.", "∅,∅ ∅,a a,a a,ab ab,ab"),
    ("b ; not a.", "∅,∅ ∅,b b,b b,ab ab,ab"),
])
def test_se_model_listings(lp, se, text, expected):
    assert se_models(lp(text), AB) == se(expected)


def test_se_set_text(lp):
    assert str(se_models(lp(":- a."), AB)) == "{(∅,∅),(∅,b),(b,b)}"


def test_reduct(lp):
    p = lp("a :- not b. b ; not a.")
    assert reduct(p, {"a"}) == lp("a. b.")
    assert reduct(p, {"b"}) == Program()


@pytest.mark.parametrize("text, expected", [
    ("a ; b.", [{"a"}, {"b"}]),
    ("a :- not b. b :- not a.", [{"a"}, {"b"}]),
    ("a. b :- a.", [{"a", "b"}]),
    ("a :- not a.", []),
    ("", [set()]),
])
def test_answer_sets(lp, text, expected):
    found = answer_sets(lp(text), AB)
    assert found == frozenset(frozenset(s) for s in expected)
    assert answer_sets_by_reduct(lp(text), AB) == found


def test_classical_models_are_there_models(lp):
    p = lp("a ; not b.")
    assert classical_models(p, AB) == frozenset({frozenset(), frozenset("a"), frozenset("ab")})


def test_strong_equivalence(lp):
    assert strongly_equivalent(lp("a. b :- a."), lp("a. b."))
    assert not strongly_equivalent(lp("a :- not b."), lp("a ; b."))
    assert strongly_equivalent(lp("a :- a."), Program(), AB)


def test_implication_and_satisfiability(lp):
    assert implies_s(lp("a. b."), lp("b :- a."))
    assert not implies_s(lp("b :- a."), lp("a."))
    assert not is_satisfiable(lp("a. :- a."))
    assert is_satisfiable(lp("a :- not a."))
    assert is_tautologous(lp("a :- a."), AB)


def test_complement(lp, se):
    assert complement(se_models(lp("a :- b."), AB)) == se("∅,b b,b b,ab")


def test_canonical_program_rejects_ill_defined_sets(se):
    s = se("∅,a")
    assert not is_well_defined(s)
    with pytest.raises(NotWellDefined):
        canonical_program(s)


def test_block_set(se):
    assert block_set(AB, [{"b"}]) == se("∅,b b,b")


def test_se_json(lp):
    s = se_models(lp(":- a."), AB)
    obj = se_to_json(s)
    assert obj == {"vocab": ["a", "b"], "models": [["", ""], ["", "b"], ["b", "b"]]}
    assert se_from_json(obj) == s


def test_se_set_algebra(se):
    s, t = se("∅,∅ ∅,b b,b"), se("∅,∅ ∅,a a,a")
    assert s & t == se("∅,∅")
    assert (s | t) - t == se("∅,b b,b")
    assert se("∅,∅") < s
    assert ({"b"}, {"b"}) in s


@given(programs, programs)
def test_se_models_of_union_intersect(p, q):
    assert se_models(p | q, AB) == se_models(p, AB) & se_models(q, AB)


@given(programs)
def test_canonical_program_has_the_same_se_models(p):
    s = se_models(p, AB)
    assert se_models(canonical_program(s), AB) == s


@given(programs)
def test_answer_set_paths_agree(p):
    assert answer_sets(p, AB) == answer_sets_by_reduct(p, AB)


@given(programs)
def test_complement_is_an_involution(p):
    s = se_models(p, AB)
    assert complement(complement(s)) == s


@given(programs)
def test_se_sets_of_programs_are_well_defined(p):
    assert is_well_defined(se_models(p, AB))
    assert isinstance(se_models(p, AB), SESet)
