"""
Frozen counterexamples for postulates the operators are known to violate.

Each fixture realizes an abstract family of SE models with concrete rules:
the rules are constraints (or tautologies), so their SE models are unions of
"blocks" {(X, Y) | X <= Y} for fixed Y, and the inputs Q and R are the
canonical programs of chosen block unions.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from ensconcement import Ensconcement
from operators import CONTRACTION, ENS, PM, REVISION, Operator
from partialmeet import FULL, RELATIONAL, SelectionPolicy
from postulates import FAILS, HOLDS, POSTULATES, Instance, PostulateReport, Witness
from program import Program, Vocabulary, parse_rule
from semantics import block_set, canonical_program


@dataclass(frozen=True)
class Counterexample:
    id: str
    postulate: str
    operator: Operator
    vocab: Vocabulary
    p: Program
    q: Program
    r: Optional[Program] = None


def _rules(*texts: str) -> List:
    return [parse_rule(t) for t in texts]


def _blocks(vocab: Vocabulary, classes: Dict[str, Sequence[str]], names: str,
            extras: Sequence[str] = ()) -> Program:
    """Canonical program of the blocks of the named classes (plus extra Ys)."""
    theres = [set(y) for n in names for y in classes[n]]
    theres += [set(y) for y in extras]
    return canonical_program(block_set(vocab, theres))


def _weights(*pairs: Tuple[Sequence, int]) -> SelectionPolicy:
    return SelectionPolicy(RELATIONAL, tuple(sorted(
        (Program.of(*rules).key, Fraction(w)) for rules, w in pairs)))


def _relational_revision() -> Counterexample:
    vocab = Vocabulary.of("p", "q")
    classes = {"A": ["pq"], "B": ["", "p"], "C": ["q"]}
    r1, r2, r3 = _rules(":- p, q.", ":- not q.", "p :- p.")
    policy = _weights(([r1, r3], 1), ([r2, r3], 1))
    return Counterexample("pm-r7", "r7", Operator(PM, REVISION, policy), vocab, Program.of(r1, r2, r3),
                          _blocks(vocab, classes, "AB"), _blocks(vocab, classes, "A"))


_STU = {"A": ["tu"], "B": ["su"], "C": ["stu"], "D": ["st"], "E": [""]}
_STU_EXTRAS = ("s", "t", "u")


def _stu_program():
    r1, r2, r3, r4, r5 = _rules("s :- s.", ":- s, t, not u.", ":- s.", ":- t.", ":- u.")
    policy = _weights(([r1, r2], 1), ([r1, r5], 2), ([r1, r2, r3], 3), ([r1, r2, r4], 3))
    return Program.of(r1, r2, r3, r4, r5), policy


def _relational_revision_8() -> Counterexample:
    vocab = Vocabulary.of("s", "t", "u")
    p, policy = _stu_program()
    return Counterexample("pm-r8", "r8", Operator(PM, REVISION, policy), vocab, p,
                          _blocks(vocab, _STU, "ABCD"), _blocks(vocab, _STU, "CD"))


def _relational_contraction_8() -> Counterexample:
    vocab = Vocabulary.of("s", "t", "u")
    p, policy = _stu_program()
    return Counterexample("pm-c8", "c8", Operator(PM, CONTRACTION, policy), vocab, p,
                          _blocks(vocab, _STU, "ABE", _STU_EXTRAS), _blocks(vocab, _STU, "E", _STU_EXTRAS))


def _full_meet_contraction_7b() -> Counterexample:
    vocab = Vocabulary.of("x", "y", "z")
    classes = {"A": ["z"], "B": ["yz"], "C": ["x"], "D": ["xy"], "E": [""]}
    extras = ("xyz", "xz", "y")
    p = Program.of(*_rules("x :- x.", ":- x.", ":- y.", ":- z."))
    return Counterexample("pm-c7b", "c7b", Operator(PM, CONTRACTION, FULL), vocab, p,
                          _blocks(vocab, classes, "ADE", extras), _blocks(vocab, classes, "BCE", extras))


def _ensconcement_revision_7() -> Counterexample:
    vocab = Vocabulary.of("p", "q")
    classes = {"A": ["pq"], "B": ["", "p"], "C": ["q"]}
    r1, r2, r3 = _rules(":- p, q.", ":- not q.", "p :- p.")
    e = Ensconcement.of([r1, r2], [r3])
    return Counterexample("ens-r7", "r7", Operator(ENS, REVISION, ensconcement=e), vocab, e.program,
                          _blocks(vocab, classes, "AB"), _blocks(vocab, classes, "A"))


# The two remaining shapes place ':- q.' on the bottom level although the
# rules above it strictly imply it, so these ensconcements are not validated.
_PQ_RULES = (":- p.", ":- q.", ":- q, not p.")


def _pq_ensconcement() -> Ensconcement:
    r1, r2, r3 = _rules(*_PQ_RULES)
    return Ensconcement.of([r1, r2], [r3])


def _ensconcement_case(cid: str, postulate: str, kind: str, classes: Dict[str, Sequence[str]],
                       q: str, r: Optional[str] = None) -> Counterexample:
    vocab = Vocabulary.of("p", "q")
    e = _pq_ensconcement()
    return Counterexample(cid, postulate, Operator(ENS, kind, ensconcement=e), vocab, e.program,
                          _blocks(vocab, classes, q), _blocks(vocab, classes, r) if r else None)


_PQ_FIRST = {"A": ["pq"], "B": ["p"], "C": [""], "D": ["q"]}
_PQ_SECOND = {"A": ["p"], "B": ["pq"], "C": [""], "D": ["q"]}


def all_counterexamples() -> List[Counterexample]:
    return [
        _relational_revision(),
        _relational_revision_8(),
        _relational_contraction_8(),
        _full_meet_contraction_7b(),
        _ensconcement_revision_7(),
        _ensconcement_case("ens-r3b", "r3b", REVISION, _PQ_FIRST, "AB"),
        _ensconcement_case("ens-r4b", "r4b", REVISION, _PQ_SECOND, "AB", "A"),
        _ensconcement_case("ens-c3b", "c3b", CONTRACTION, _PQ_FIRST, "C"),
        _ensconcement_case("ens-c4b", "c4b", CONTRACTION, _PQ_SECOND, "C", "BC"),
    ]


def replay_counterexample(c: Counterexample) -> PostulateReport:
    inst = Instance(c.operator, c.p, c.vocab)
    post = POSTULATES[c.postulate]
    if post.holds(inst, c.q, c.r):
        return PostulateReport(c.operator.describe(), c.postulate, HOLDS, 1,
                               note=f"{c.id}: expected violation not reproduced")
    outputs = [("P o Q", inst.out(c.q).key)]
    if c.r is not None:
        outputs += [("P o R", inst.out(c.r).key), ("P o (Q + R)", inst.out(c.q | c.r).key)]
    return PostulateReport(c.operator.describe(), c.postulate, FAILS, 1,
                           Witness(c.p, c.q, c.r, tuple(outputs)), note=c.id)


def check_counterexamples() -> List[PostulateReport]:
    return [replay_counterexample(c) for c in all_counterexamples()]
