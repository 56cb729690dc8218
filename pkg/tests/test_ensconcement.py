import pytest

import config
from ensconcement import (
    Ensconcement,
    EnsconcementError,
    all_ensconcements,
    cut,
    cut_minus,
    default_ensconcement,
    ens_contract,
    ens_revise,
    ensconcement_from_partition,
    ensconcement_violations,
    is_valid,
    lift_ensconcement,
    parse_ensconcement,
    print_ensconcement,
    realize_outcome,
    subset_ens_contract,
    subset_ens_revise,
    subset_ensconcement_from_levels,
    validate_ensconcement,
    validate_subset_ensconcement,
)
from partialmeet import FULL, pm_revise
from program import Program, ProgramTooLarge, parse_rule

FACT, A_IF_B, B_IF_A = parse_rule("a."), parse_rule("a :- b."), parse_rule("b :- a.")

# least ensconced level first
LEVELS = {
    1: [[FACT], [A_IF_B], [B_IF_A]],
    2: [[FACT], [A_IF_B, B_IF_A]],
    3: [[FACT], [B_IF_A], [A_IF_B]],
    4: [[FACT, B_IF_A], [A_IF_B]],
    5: [[B_IF_A], [FACT], [A_IF_B]],
}


@pytest.fixture
def p():
    return Program.of(FACT, A_IF_B, B_IF_A)


@pytest.mark.parametrize("n, expected_cut, expected", [
    (1, "a :- b. b :- a.", "a :- b. b :- a. :- b."),
    (2, "a :- b. b :- a.", "a :- b. b :- a. :- b."),
    (3, "a :- b. b :- a.", "a :- b. b :- a. :- b."),
    (4, "a :- b.", "a :- b. :- b."),
    (5, "a. a :- b.", "a. a :- b. :- b."),
])
def test_cuts_and_revisions(p, lp, n, expected_cut, expected):
    e = validate_ensconcement(p, LEVELS[n])
    q = lp(":- b.")
    assert cut(p, e, q) == lp(expected_cut)
    assert ens_revise(p, e, q) == lp(expected)


def test_every_listed_ensconcement_is_valid(p):
    for levels in LEVELS.values():
        assert is_valid(p, levels)
    assert len(list(all_ensconcements(p))) >= len(LEVELS)


def test_contraction(p, lp):
    e = Ensconcement.of(*LEVELS[4])
    q = lp("a.")
    assert cut_minus(p, e, q) == lp("a :- b.")
    assert ens_contract(p, e, q) == lp("a :- b.")


def test_degenerate_inputs(p, lp):
    e = Ensconcement.of(*LEVELS[2])
    assert ens_revise(p, e, lp("a. :- a.")) == p | lp("a. :- a.")
    assert cut(p, e, lp("a. :- a.")) == Program()
    assert ens_contract(p, e, lp("a :- a.")) == p
    # consistent input: the cut is all of P
    assert cut(p, e, lp("b.")) == p


def test_violations(lp):
    p = lp("a. a :- b.")
    found = ensconcement_violations(p, [[A_IF_B], [FACT]])
    assert [v.condition for v in found] == ["(⪯1)"]

    taut = lp("a :- a. b :- b.")
    found = ensconcement_violations(taut, [[parse_rule("a :- a.")], [parse_rule("b :- b.")]])
    assert [v.condition for v in found] == ["(⪯2)"]

    found = ensconcement_violations(p, [[FACT]])
    assert [v.condition for v in found] == ["partition"]
    with pytest.raises(EnsconcementError, match="not ranked"):
        validate_ensconcement(p, [[FACT]])


def test_inequivalent_rules_may_share_a_level(p):
    assert is_valid(p, LEVELS[2])


def test_operators_need_an_associated_ensconcement(p, lp):
    with pytest.raises(EnsconcementError):
        ens_revise(p, Ensconcement.of([FACT]), lp(":- b."))


def test_text_format(p):
    e = parse_ensconcement("% bottom first\na. | b :- a.\n\na :- b.\n", p)
    assert e == Ensconcement.of(*LEVELS[4])
    assert print_ensconcement(e) == "a. | b :- a.\na :- b.\n"
    with pytest.raises(EnsconcementError, match="unknown rule"):
        parse_ensconcement("c.\n", p)


def test_default_ensconcement_is_valid(p, lp):
    for program in (p, lp("a. b."), lp(":- a. a :- b. b."), Program()):
        assert is_valid(program, default_ensconcement(program))


def test_enumeration_is_capped(lp, monkeypatch):
    monkeypatch.setattr(config, "MAX_ENUMERATED_ENSCONCEMENT", 1)
    with pytest.raises(ProgramTooLarge):
        list(all_ensconcements(lp("a. b.")))


def test_partition_gives_a_two_level_ensconcement(p, lp):
    keep, discard = lp("a :- b."), lp("a. b :- a.")
    e = ensconcement_from_partition(keep, discard)
    assert e == Ensconcement.of(*LEVELS[4])


def test_partition_rejects_equivalent_rules_across_groups(lp):
    with pytest.raises(EnsconcementError, match="strongly equivalent"):
        ensconcement_from_partition(lp("a :- a."), lp("b :- b."))


def test_partial_meet_outcome_is_realized(p, lp):
    q = lp(":- b.")
    target = pm_revise(p, q, FULL)
    assert target == lp("a :- b. :- b.")
    e = realize_outcome(p, q, target, "revision")
    assert e is not None
    assert ens_revise(p, e, q) == target


def test_lifted_subset_ensconcement_agrees(p, lp):
    for levels in LEVELS.values():
        e = Ensconcement.of(*levels)
        sens = lift_ensconcement(e)
        assert sens.rank_of(Program()) == len(e.levels)
        for text in (":- b.", "a.", "b.", ":- a."):
            q = lp(text)
            assert subset_ens_revise(p, sens, q) == ens_revise(p, e, q)
            assert subset_ens_contract(p, sens, q) == ens_contract(p, e, q)


def test_lifting_overrides_and_explicit_levels(p):
    e = Ensconcement.of(*LEVELS[2])
    sens = lift_ensconcement(e, {Program.of(FACT): 1})
    assert sens.rank_of(Program.of(FACT)) == 1
    with pytest.raises(EnsconcementError, match="partition"):
        subset_ensconcement_from_levels(p, [[Program()], [Program.of(FACT)]])


def test_subset_validation_reports_equivalent_subsets_on_different_levels(lp):
    p = lp("a :- a. b :- b.")
    a, b = Program.of(parse_rule("a :- a.")), Program.of(parse_rule("b :- b."))
    sens = subset_ensconcement_from_levels(p, [[p], [a], [b], [Program()]])
    with pytest.raises(EnsconcementError) as e:
        validate_subset_ensconcement(sens)
    assert "(⪯R2)" in [v.condition for v in e.value.violations]
