import json
from fractions import Fraction

import pytest

import config
from partialmeet import (
    BY_SIZE,
    COMPATIBLE,
    FULL,
    MAXI,
    RELATIONAL,
    REMAINDER,
    SINGLE,
    PolicyError,
    SelectionPolicy,
    Subsets,
    achievable_outcomes,
    compatible_sets,
    load_weights,
    meet,
    parse_policy,
    pm_contract,
    pm_revise,
    remainder_sets,
)
from program import EMPTY, ProgramTooLarge
from semantics import complement, se_models


def test_revision_drops_the_conflicting_fact(lp):
    p, q = lp("a. b :- a."), lp(":- a.")
    assert compatible_sets(p, q).members == (lp("b :- a."),)
    assert pm_revise(p, q, FULL) == lp("b :- a. :- a.")


def test_contraction_keeps_what_avoids_q(lp):
    p, q = lp("a. b :- a."), lp("a :- b.")
    assert remainder_sets(p, q).members == (lp("b :- a."),)
    assert pm_contract(p, q, FULL) == lp("b :- a.")
    # not recovered: a. is lost for good
    assert not p <= pm_contract(p, q) | q


def test_revision_by_complement_is_the_retained_part(lp, ab):
    p, q = lp("a. b :- a."), lp("a :- b.")
    outside = complement(se_models(q, ab))
    assert pm_revise(p, outside, FULL, ab) == lp("b :- a.")


@pytest.mark.parametrize("policy, expected", [
    (FULL, ":- a, b."),
    (MAXI, "a. :- a, b."),
    (SINGLE, "a. :- a, b."),
])
def test_selection_policies(lp, policy, expected):
    p, q = lp("a. b."), lp(":- a, b.")
    assert pm_revise(p, q, policy) == lp(expected)


def test_unsatisfiable_input_expands(lp):
    p, q = lp("b."), lp("a. :- a.")
    assert pm_revise(p, q) == p | q


def test_tautologous_input_contracts_nothing(lp, ab):
    p = lp("a. b :- a.")
    assert pm_contract(p, lp("a :- a."), FULL, ab) == p


def test_consistent_input_is_plain_expansion(lp):
    p, q = lp("a. b :- a."), lp("b.")
    assert pm_revise(p, q, FULL) == p | q


def test_relational_weights_file(tmp_path, lp):
    path = tmp_path / "weights.json"
    path.write_text(json.dumps({"a.": 1, "b.": "3/2"}), encoding="utf-8")
    policy = load_weights(str(path))
    assert policy.kind == RELATIONAL
    assert policy.weight(lp("b.")) == Fraction(3, 2)
    assert pm_revise(lp("a. b."), lp(":- a, b."), policy) == lp("b. :- a, b.")


def test_relational_ties_select_both(lp):
    policy = SelectionPolicy(RELATIONAL, (("a.", Fraction(1)), ("b.", Fraction(1))))
    assert pm_revise(lp("a. b."), lp(":- a, b."), policy) == lp(":- a, b.")


def test_relational_without_ranking_falls_back_to_full_meet(lp):
    policy = SelectionPolicy(RELATIONAL)
    assert pm_revise(lp("a. b."), lp(":- a, b."), policy) == lp(":- a, b.")


def test_size_weights_prefer_larger_members(lp):
    p, q = lp("a. b. b :- a."), lp(":- a, b.")
    assert compatible_sets(p, q).members == (lp("a."), lp("b. b :- a."))
    assert pm_revise(p, q, BY_SIZE) == lp("b. b :- a. :- a, b.")


def test_parse_policy():
    assert parse_policy("full") == FULL
    assert parse_policy("maxichoice") == MAXI
    assert parse_policy("single") == SINGLE
    assert parse_policy("relational:size") == BY_SIZE
    with pytest.raises(PolicyError):
        parse_policy("greedy")
    with pytest.raises(PolicyError):
        SelectionPolicy("full-meet", weights=(("a.", Fraction(1)),))


def test_meet():
    assert meet([]) == EMPTY


def test_achievable_outcomes(lp):
    p, q = lp("a. b."), lp(":- a, b.")
    outcomes = achievable_outcomes(p, q, COMPATIBLE)
    assert outcomes == [lp(":- a, b."), lp("a. :- a, b."), lp("b. :- a, b.")]
    assert achievable_outcomes(p, lp("a."), REMAINDER) == [lp("b.")]


def test_subset_enumeration_is_capped(lp, ab, monkeypatch):
    monkeypatch.setattr(config, "MAX_PROGRAM_RULES", 1)
    with pytest.raises(ProgramTooLarge):
        Subsets(lp("a. b."), ab)
