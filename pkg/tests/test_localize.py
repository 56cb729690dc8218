import pytest

from localize import ModuleError, extract_module, localized_change, mod_change, relevant_modules
from operators import CONTRACTION, ENS, PM, REVISION, Operator
from partialmeet import COMPATIBLE, REMAINDER, achievable_outcomes, pm_revise
from program import Vocabulary, parse_rule

ABC = Vocabulary.of("a", "b", "c")


@pytest.fixture
def p(lp):
    return lp("a. b :- a. c :- not b.", ABC)


def test_module_extraction(p, lp):
    m = extract_module(p, parse_rule("b :- a."), "a")
    assert m.rules == lp("b :- a. c :- not b.", ABC)
    assert extract_module(p, parse_rule("c :- not b."), "c").rules == p
    assert extract_module(p, parse_rule("a."), "a").rules == lp("a.", ABC)
    assert str(m) == "M^{b :- a.}|a = {b :- a., c :- not b.}"


def test_module_errors(p):
    with pytest.raises(ModuleError):
        extract_module(p, parse_rule("b :- a."), "c")
    with pytest.raises(ModuleError):
        extract_module(p, parse_rule("d."), "d")


def test_relevant_modules(p, lp):
    family = relevant_modules(p, lp(":- a.", ABC))
    assert [(str(m.anchor_rule), m.anchor_atom) for m in family.modules] == [("a.", "a"), ("b :- a.", "a")]
    assert family.union == p
    assert len(family.residue) == 0

    family = relevant_modules(lp("a. b :- not c.", ABC), lp(":- c.", ABC))
    assert family.residue == lp("a.", ABC)


def test_mod_change_resolves_the_conflicting_module(p, lp):
    q = lp(":- a.", ABC)
    family = relevant_modules(p, q)
    changed = mod_change(family, Operator(PM, REVISION), q, ABC)
    assert lp("b :- a. c :- not b.", ABC) in changed


def test_localized_revision_matches_global(p, lp):
    q = lp(":- a.", ABC)
    local = localized_change(p, Operator(PM, REVISION), q, ABC)
    assert local == lp("b :- a. c :- not b. :- a.", ABC)
    assert local == pm_revise(p, q)


def test_consistent_input_leaves_program_alone(lp):
    p, q = lp("a. b :- not c.", ABC), lp(":- c.", ABC)
    assert localized_change(p, Operator(PM, REVISION), q, ABC) == lp("a. b :- not c. :- c.", ABC)


@pytest.mark.parametrize("q_text", [":- a.", ":- b.", "b.", ":- c.", "a :- c."])
def test_localized_outcomes_are_achievable(p, lp, q_text):
    q = lp(q_text, ABC)
    local = localized_change(p, Operator(PM, REVISION), q, ABC)
    assert local in achievable_outcomes(p, q, COMPATIBLE, ABC)
    local = localized_change(p, Operator(PM, CONTRACTION), q, ABC)
    assert local in achievable_outcomes(p, q, REMAINDER, ABC)


def test_localized_ensconcement_revision(p, lp):
    q = lp(":- a.", ABC)
    local = localized_change(p, Operator(ENS, REVISION), q, ABC)
    assert q <= local
    assert lp("a.", ABC) & local == lp("", ABC)
