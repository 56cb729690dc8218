import pytest

from baselines import distance_revise_se
from corpus import Corpus
from ensconcement import all_ensconcements, ens_revise
from operators import (
    CONTRACTION,
    DISTANCE,
    ENS,
    PM,
    PM_AS,
    SUBSET_ENS,
    CachedOperator,
    Operator,
    harper_contract,
    levi_revise,
    operator_ids,
)
from partialmeet import FULL, MAXI, SINGLE, pm_contract, pm_revise
from program import LPError, Vocabulary
from semantics import SESet, se_models


def test_operator_validation():
    with pytest.raises(LPError):
        Operator(DISTANCE, CONTRACTION)
    with pytest.raises(LPError):
        Operator(PM_AS, CONTRACTION)
    with pytest.raises(LPError):
        Operator("dalal")
    with pytest.raises(LPError):
        Operator(PM, "update")


def test_descriptions():
    assert Operator(PM).describe() == "pm_revise[full-meet]"
    assert Operator(PM, CONTRACTION, MAXI).describe() == "pm_contract[maxichoice-lex]"
    assert Operator(PM_AS, policy=SINGLE).describe() == "pm-as_revise[single-choice-lex]"
    assert Operator(ENS, CONTRACTION).describe() == "ens_contract"


def test_operator_ids():
    assert operator_ids("pm, ens,,distance") == ("pm", "ens", "distance")
    assert operator_ids(None) == ()


def test_distance_apply_materializes(lp, ab):
    p, q = lp("a. b :- a."), lp(":- a.")
    op = Operator(DISTANCE)
    assert isinstance(op.outcome(p, q), SESet)
    assert se_models(op.apply(p, q), ab) == op.outcome(p, q)


def test_revision_through_contraction(lp):
    p, q = lp("a. b :- a."), lp(":- a.")
    assert levi_revise(Operator(PM, CONTRACTION), p, q) == pm_revise(p, q)
    with pytest.raises(LPError):
        levi_revise(Operator(PM), p, q)


def test_contraction_through_revision(lp):
    p, q = lp("a. b :- a."), lp("a :- b.")
    assert harper_contract(Operator(PM), p, q) == pm_contract(p, q)
    with pytest.raises(LPError):
        harper_contract(Operator(PM, CONTRACTION), p, q)


@pytest.mark.parametrize("op", [
    Operator(PM),
    Operator(PM, CONTRACTION, MAXI),
    Operator(ENS),
    Operator(ENS, CONTRACTION),
    Operator(SUBSET_ENS),
    Operator(DISTANCE),
    Operator(PM_AS, policy=SINGLE),
])
def test_cached_operator_agrees_with_apply(lp, ab, op):
    p = lp("a. b :- a. :- b, not a.")
    cached = CachedOperator(op, p, ab)
    for q in Corpus.default(max_input_rules=1).inputs():
        assert cached(q) == op.apply(p, q, ab)


ABC = Vocabulary.of("a", "b", "c")

# P, Q, retained-by-partial-meet-and-ensconcement, SE models of the distance revision
LISTINGS = [
    ("a. b :- a.", ":- a.", ":- a. b :- a.", "b,b"),
    (":- a. b :- not a.", "a.", "a. b :- not a.", "ab,ab"),
    (":- a. b :- a.", "a.", "a. b :- a.", "a,a a,ab ab,ab"),
    ("a. b :- not a.", ":- a.", ":- a. b :- not a.", "∅,∅ ∅,b b,b"),
    ("a. b :- not c.", ":- c.", "a. b :- not c. :- c.", "ab,ab"),
]


@pytest.mark.parametrize("p_text, q_text, expected, distance", LISTINGS)
def test_five_listings(lp, se, p_text, q_text, expected, distance):
    vocab = ABC if "c" in p_text else Vocabulary.of("a", "b")
    p, q, out = lp(p_text, vocab), lp(q_text, vocab), lp(expected, vocab)
    for policy in (FULL, MAXI, SINGLE):
        assert pm_revise(p, q, policy, vocab) == out
    levels = list(all_ensconcements(p, vocab))
    assert levels
    for e in levels:
        assert ens_revise(p, e, q, vocab) == out
    assert distance_revise_se(p, q, vocab) == se(distance, vocab)
