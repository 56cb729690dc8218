import pytest

from baselines import (
    AS,
    SE,
    as_compatible_sets,
    c_update_equivalent,
    distance_revise_se,
    included,
    materialize,
    pm_revise_as,
    screened_consolidation,
    screened_remainders,
    sigma,
    strictly_included,
)
from partialmeet import FULL, MAXI, SINGLE, PolicyError, pm_revise
from program import LPError, Program
from semantics import se_models


def test_distance_revision_keeps_incomparable_closest_models(lp, se, ab):
    # a and b are both minimal differences from SE(P); neither includes the other
    p, q = lp("a :- b."), lp("b. :- a, b.")
    assert se_models(q, ab) == se("b,b")
    assert distance_revise_se(p, q) == se("b,b")


def test_distance_revision_of_unsatisfiable_program(lp, ab):
    q = lp(":- a.")
    assert distance_revise_se(lp("a. :- a."), q, ab) == se_models(q, ab)


def test_materialize(lp, ab):
    s = distance_revise_se(lp("a. b :- a."), lp(":- a."))
    assert se_models(materialize(s), ab) == s


def test_pair_ordering():
    a, b = frozenset("a"), frozenset("ab")
    assert included((a, a), (b, b))
    assert included((a, a), (b, a))
    assert not included((b, a), (a, a))
    assert strictly_included((a, a), (a, b))
    assert not strictly_included((a, a), (a, a))


def test_sigma_keeps_closest_members():
    one, two, both = frozenset({1}), frozenset({2}), frozenset({1, 2})
    assert sigma([one, both], [two]) == {both}
    assert sigma([one], [one]) == {one}
    assert sigma([one, two], [frozenset()]) == {one, two}


def test_answer_set_revision_needs_a_single_choice(lp):
    with pytest.raises(PolicyError):
        pm_revise_as(lp("a."), lp("b."), FULL)


def test_answer_set_revision_drops_incoherent_rules(lp):
    p, q = lp("a :- not a."), lp("b.")
    assert as_compatible_sets(p, q) == (Program(),)
    assert pm_revise_as(p, q, SINGLE) == q
    # under SE models the odd loop is consistent and survives
    assert pm_revise(p, q, MAXI) == p | q


def test_screened_consolidation_under_se(lp):
    p, q = lp("a. b :- a."), lp(":- a.")
    assert screened_remainders(p | q, q, SE) == (lp("b :- a. :- a."),)
    assert screened_consolidation(p | q, q, SE) == pm_revise(p, q, MAXI)


def test_screened_consolidation_under_answer_sets(lp):
    p, q = lp("a :- not a."), lp("b.")
    assert screened_consolidation(p | q, q, AS) == pm_revise_as(p, q, SINGLE)


def test_screened_remainders_need_q_inside(lp):
    assert screened_remainders(lp("a."), lp("b."), SE) == ()
    assert screened_consolidation(lp("a."), lp("b."), SE) == lp("a.")
    with pytest.raises(LPError):
        screened_remainders(lp("a."), lp("a."), "wfs")


@pytest.mark.parametrize("first, second, expected", [
    ("a. b :- not a.", "a.", False),
    ("a. b.", "a. b :- a.", False),
    ("a. b.", "b. a.", True),
    ("a. a :- a.", "a.", True),
])
def test_c_update_equivalence(lp, first, second, expected):
    assert c_update_equivalent(lp(first), lp(second)) is expected
