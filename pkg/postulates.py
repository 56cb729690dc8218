"""
Revision and contraction postulates as decidable predicates over corpus
instances, and the checks that run them (postulates, Levi/Harper identities,
characterizations, localization, oracles, screened consolidation).

Every check walks the corpus programs P in order and, for each P, the input
programs Q (and R) in order; the first violating instance becomes the
report's witness. Work is sharded by P over worker.run_shards.
"""

from dataclasses import dataclass, field
from typing import Callable, Dict, Hashable, List, Optional, Sequence, Tuple

import config
import logbot
import worker
from baselines import AS, SE, pm_revise_as, screened_consolidation
from corpus import Corpus
from ensconcement import (
    EnsconcementError,
    Ensconcement,
    default_ensconcement,
    ens_contract,
    ens_revise,
    lift_ensconcement,
    realize_outcome,
    subset_ens_contract,
    subset_ens_revise,
)
from localize import localized_change, relevant_modules
from operators import CONTRACTION, ENS, PM, REVISION, CachedOperator, Operator
from partialmeet import (
    COMPATIBLE,
    FULL,
    MAXI,
    REMAINDER,
    SINGLE,
    Subsets,
    achievable_outcomes,
    pm_revise,
)
from program import LPError, Program, Vocabulary, parse_program
from semantics import (
    answer_sets,
    answer_sets_by_reduct,
    canonical_program,
    classical_models,
    lattice,
    program_se_mask,
    rule_se_mask,
    se_models,
)

HOLDS = "holds"
FAILS = "fails"
SKIPPED = "skipped"


# -----------------------
# Reports
# -----------------------
@dataclass(frozen=True)
class Witness:
    p: Program
    q: Program
    r: Optional[Program] = None
    outputs: Tuple[Tuple[str, str], ...] = ()

    def to_json(self) -> dict:
        out = {"P": self.p.key, "Q": self.q.key}
        if self.r is not None:
            out["R"] = self.r.key
        out["outputs"] = dict(self.outputs)
        return out


@dataclass(frozen=True)
class PostulateReport:
    operator: str
    postulate: str
    verdict: str
    checked: int = 0
    witness: Optional[Witness] = None
    skipped: int = 0
    note: str = ""

    @property
    def label(self) -> str:
        p = POSTULATES.get(self.postulate)
        return p.label if p else self.postulate

    def to_json(self) -> dict:
        out = {
            "operator": self.operator,
            "postulate": self.postulate,
            "label": self.label,
            "verdict": self.verdict,
            "checked": self.checked,
        }
        if self.skipped:
            out["skipped"] = self.skipped
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class Tally:
    checked: int = 0
    skipped: int = 0
    witness: Optional[Witness] = None

    def merge(self, other: "Tally"):
        self.checked += other.checked
        self.skipped += other.skipped
        if self.witness is None:
            self.witness = other.witness

    def report(self, operator: str, postulate: str, note: str = "") -> PostulateReport:
        if self.witness is not None:
            verdict = FAILS
        elif self.checked == 0 and self.skipped:
            verdict = SKIPPED
        else:
            verdict = HOLDS
        return PostulateReport(operator, postulate, verdict, self.checked, self.witness, self.skipped, note)


# -----------------------
# Evaluation context
# -----------------------
class Instance:
    """One operator on one program P, memoised by SE models."""

    def __init__(self, op: Operator, p: Program, vocab: Vocabulary):
        self.op = op
        self.p = p
        self.vocab = vocab
        self.full = lattice(vocab).full
        self._masks: Dict[Program, int] = {}
        self._signatures: Dict[Tuple[int, bool], int] = {}
        self._subsets: Optional[Subsets] = None
        self.run = CachedOperator(op, p, vocab)

    def mask(self, prog: Program) -> int:
        m = self._masks.get(prog)
        if m is None:
            m = program_se_mask(prog, self.vocab)
            self._masks[prog] = m
        return m

    def sat(self, prog: Program) -> bool:
        return bool(self.mask(prog))

    def entails(self, a: Program, b: Program) -> bool:
        return self.mask(a) & ~self.mask(b) == 0

    def valid(self, prog: Program) -> bool:
        return self.mask(prog) == self.full

    def out(self, q: Program) -> Program:
        return self.run(q, self.mask(q))

    @property
    def subsets(self) -> Subsets:
        if self._subsets is None:
            self._subsets = Subsets(self.p, self.vocab)
        return self._subsets

    def signature(self, q: Program, outside: bool = False) -> int:
        """Bit s is set iff subset s of P is consistent with Q (or fails to imply it)."""
        qm = self.mask(q)
        key = (qm, outside)
        sig = self._signatures.get(key)
        if sig is None:
            region = self.full & ~qm if outside else qm
            sig = 0
            for s, m in enumerate(self.subsets.se):
                if m & region:
                    sig |= 1 << s
            self._signatures[key] = sig
        return sig


def _relevant(i: Instance, out: Program, base: Program, ok: Callable[[int, int], bool]) -> bool:
    """Every rule of P missing from out is blocked by some out <= P' < base."""
    missing = (i.p - out).sorted()
    if not missing:
        return True
    if not out <= base:
        return False
    free = (base - out).sorted()
    om = i.mask(out)
    fm = [rule_se_mask(r, i.vocab) for r in free]
    candidates = []
    for s in range((1 << len(free)) - 1):
        m = om
        for k, rm in enumerate(fm):
            if s >> k & 1:
                m &= rm
        candidates.append(m)
    for r in missing:
        rm = rule_se_mask(r, i.vocab)
        if not any(ok(m, m & rm) for m in candidates):
            return False
    return True


# -----------------------
# Revision postulates
# -----------------------
def _r1(i, q, r=None):
    return isinstance(i.out(q), Program)


def _r2(i, q, r=None):
    return q <= i.out(q)


def _r3(i, q, r=None):
    return i.out(q) <= i.p | q


def _r4(i, q, r=None):
    base = i.p | q
    return not i.sat(base) or base <= i.out(q)


def _r5(i, q, r=None):
    return i.sat(i.out(q)) == i.sat(q)


def _r6(i, q, r):
    return i.mask(q) != i.mask(r) or i.mask(i.out(q)) == i.mask(i.out(r))


def _r7(i, q, r):
    return i.out(q | r) <= i.out(q) | r


def _r8(i, q, r):
    expanded = i.out(q) | r
    return not i.sat(expanded) or expanded <= i.out(q | r)


def _r3b(i, q, r=None):
    return _relevant(i, i.out(q), i.p | q, lambda m, m_r: bool(m) and not m_r)


def _r4b(i, q, r):
    if i.signature(q) != i.signature(r):
        return True
    return i.p & i.out(q) == i.p & i.out(r)


def _r5b(i, q, r=None):
    return not i.sat(q) or i.sat(i.out(q))


# -----------------------
# Contraction postulates
# -----------------------
def _c2(i, q, r=None):
    return i.out(q) <= i.p


def _c3(i, q, r=None):
    return i.entails(i.p, q) or i.out(q) == i.p


def _c4(i, q, r=None):
    return i.valid(q) or not i.entails(i.out(q), q)


def _c5(i, q, r=None):
    return i.p <= i.out(q) | q


def _c6(i, q, r):
    return i.mask(q) != i.mask(r) or i.out(q) == i.out(r)


def _c7(i, q, r):
    return i.out(q) & i.out(r) <= i.out(q | r)


def _c8(i, q, r):
    both = i.out(q | r)
    return i.entails(both, q) or both <= i.out(q)


def _c3b(i, q, r=None):
    qm = i.mask(q)
    return _relevant(i, i.out(q), i.p, lambda m, m_r: bool(m & ~qm) and not m_r & ~qm)


def _c4b(i, q, r):
    if i.signature(q, outside=True) != i.signature(r, outside=True):
        return True
    return i.out(q) == i.out(r)


def _c7b(i, q, r):
    a, b = i.out(q), i.out(r)
    return i.out(q | r) in (a, b, a & b)


def _c8b(i, q, r=None):
    out = i.out(q)
    om, qm = i.mask(out), i.mask(q)
    for rule in (i.p - out).sorted():
        if om & ~(qm | rule_se_mask(rule, i.vocab)) == 0:
            return False
    return True


# -----------------------
# Registry
# -----------------------
Predicate = Callable[[Instance, Program, Optional[Program]], bool]
GroupKey = Callable[[Instance, Program], Hashable]


@dataclass(frozen=True)
class Postulate:
    id: str
    label: str
    kind: str
    arity: int
    holds: Predicate
    text: str
    # ternary postulates whose antecedent is an equivalence on (Q, R)
    group: Optional[GroupKey] = field(default=None, compare=False)


def _by_se(i, q):
    return i.mask(q)


def _by_signature(i, q):
    return i.signature(q)


def _by_outside_signature(i, q):
    return i.signature(q, outside=True)


_ALL = (
    Postulate("r1", "(*1)", REVISION, 2, _r1, "P * Q is a program"),
    Postulate("r2", "(*2)", REVISION, 2, _r2, "Q <= P * Q"),
    Postulate("r3", "(*3)", REVISION, 2, _r3, "P * Q <= P + Q"),
    Postulate("r4", "(*4)", REVISION, 2, _r4, "if P + Q is satisfiable, P + Q <= P * Q"),
    Postulate("r5", "(*5)", REVISION, 2, _r5, "P * Q is satisfiable iff Q is"),
    Postulate("r6", "(*6)", REVISION, 3, _r6, "if Q =s R, P * Q =s P * R", _by_se),
    Postulate("r7", "(*7)", REVISION, 3, _r7, "P * (Q + R) <= (P * Q) + R"),
    Postulate("r8", "(*8)", REVISION, 3, _r8,
              "if (P * Q) + R is satisfiable, (P * Q) + R <= P * (Q + R)"),
    Postulate("r1b", "(*1b)", REVISION, 2, _r2, "success: Q <= P * Q"),
    Postulate("r2b", "(*2b)", REVISION, 2, _r3, "inclusion: P * Q <= P + Q"),
    Postulate("r3b", "(*3b)", REVISION, 2, _r3b,
              "relevance: a dropped rule is blocked by some P * Q <= P' < P + Q"),
    Postulate("r4b", "(*4b)", REVISION, 3, _r4b,
              "uniformity: same consistent subsets give the same retained part of P", _by_signature),
    Postulate("r5b", "(*5b)", REVISION, 2, _r5b, "consistency: Q satisfiable gives P * Q satisfiable"),
    Postulate("c1", "(∸1)", CONTRACTION, 2, _r1, "P - Q is a program"),
    Postulate("c2", "(∸2)", CONTRACTION, 2, _c2, "P - Q <= P"),
    Postulate("c3", "(∸3)", CONTRACTION, 2, _c3, "if P does not imply Q, P - Q = P"),
    Postulate("c4", "(∸4)", CONTRACTION, 2, _c4, "if Q is not valid, P - Q does not imply Q"),
    Postulate("c5", "(∸5)", CONTRACTION, 2, _c5, "P <= (P - Q) + Q"),
    Postulate("c6", "(∸6)", CONTRACTION, 3, _c6, "if Q =s R, P - Q = P - R", _by_se),
    Postulate("c7", "(∸7)", CONTRACTION, 3, _c7, "(P - Q) & (P - R) <= P - (Q + R)"),
    Postulate("c8", "(∸8)", CONTRACTION, 3, _c8,
              "if P - (Q + R) does not imply Q, P - (Q + R) <= P - Q"),
    Postulate("c1b", "(∸1b)", CONTRACTION, 2, _c2, "inclusion: P - Q <= P"),
    Postulate("c2b", "(∸2b)", CONTRACTION, 2, _c4, "success: Q not valid gives P - Q not implying Q"),
    Postulate("c3b", "(∸3b)", CONTRACTION, 2, _c3b,
              "relevance: a dropped rule makes some P - Q <= P' < P imply Q"),
    Postulate("c4b", "(∸4b)", CONTRACTION, 3, _c4b,
              "uniformity: same non-implying subsets give the same contraction", _by_outside_signature),
    Postulate("c5b", "(∸5b)", CONTRACTION, 2, _c3, "vacuity: P not implying Q gives P - Q = P"),
    Postulate("c6b", "(∸6b)", CONTRACTION, 3, _c6, "extensionality: Q =s R gives P - Q = P - R", _by_se),
    Postulate("c7b", "(∸7b)", CONTRACTION, 3, _c7b,
              "P - (Q + R) is P - Q, P - R or their intersection"),
    Postulate("c8b", "(∸8b)", CONTRACTION, 2, _c8b,
              "disjunctive elimination: a dropped rule r leaves SE(P - Q) outside SE(Q) | SE(r)"),
)

POSTULATES: Dict[str, Postulate] = {p.id: p for p in _ALL}
REVISION_IDS = tuple(p.id for p in _ALL if p.kind == REVISION)
CONTRACTION_IDS = tuple(p.id for p in _ALL if p.kind == CONTRACTION)

_SYMBOLS = {"*": "r", "∸": "c", "⌀": "c", "-": "c", "r": "r", "c": "c"}


def normalize_id(text: str) -> str:
    """'(*7)', '*7', 'r7' -> 'r7'; '(∸3b)', '-3b', 'c3b' -> 'c3b'."""
    t = text.strip().strip("()")
    if t in POSTULATES:
        return t
    if t and t[0] in _SYMBOLS and _SYMBOLS[t[0]] + t[1:] in POSTULATES:
        return _SYMBOLS[t[0]] + t[1:]
    raise LPError(f"unknown postulate '{text}'")


def select_postulates(spec: Optional[str], kind: str) -> Tuple[str, ...]:
    ids = REVISION_IDS if kind == REVISION else CONTRACTION_IDS
    if not spec or spec == "all":
        return ids
    chosen = [normalize_id(s) for s in spec.split(",") if s.strip()]
    return tuple(i for i in ids if i in chosen)


# -----------------------
# Postulate evaluation
# -----------------------
def _witness(i: Instance, q: Program, r: Optional[Program]) -> Witness:
    outputs = [("P o Q", i.out(q).key)]
    if r is not None:
        outputs.append(("P o R", i.out(r).key))
        outputs.append(("P o (Q + R)", i.out(q | r).key))
    return Witness(i.p, q, r, tuple(outputs))


def evaluate(i: Instance, post: Postulate, inputs: Sequence[Program]) -> Tally:
    t = Tally()
    if post.arity == 2:
        for q in inputs:
            t.checked += 1
            if not post.holds(i, q, None):
                t.witness = _witness(i, q, None)
                break
    elif post.group is not None:
        groups: Dict[Hashable, List[Program]] = {}
        for q in inputs:
            groups.setdefault(post.group(i, q), []).append(q)
        for members in groups.values():
            t.checked += len(members) ** 2
            first = members[0]
            for other in members[1:]:
                if not post.holds(i, first, other):
                    t.witness = _witness(i, first, other)
                    break
            if t.witness:
                break
    else:
        for q in inputs:
            for r in inputs:
                t.checked += 1
                if not post.holds(i, q, r):
                    t.witness = _witness(i, q, r)
                    break
            if t.witness:
                break
    return t


def _postulate_shard(task) -> Dict[str, Tally]:
    op, vocab, inputs, ids, programs = task
    tallies = {pid: Tally() for pid in ids}
    for p in programs:
        try:
            inst = Instance(op, p, vocab)
        except EnsconcementError:
            for t in tallies.values():
                t.skipped += 1
            continue
        for pid in ids:
            if tallies[pid].witness is not None:
                continue
            tallies[pid].merge(evaluate(inst, POSTULATES[pid], inputs))
    return tallies


def _merge(results: Sequence[Dict[Tuple, Tally]]) -> Dict[Tuple, Tally]:
    merged: Dict = {}
    for shard_result in results:
        for key, t in shard_result.items():
            merged.setdefault(key, Tally()).merge(t)
    return merged


def check_postulates(op: Operator, corpus: Corpus, ids: Optional[Sequence[str]] = None,
                     workers: int = 1) -> List[PostulateReport]:
    ids = tuple(ids) if ids else (REVISION_IDS if op.is_revision else CONTRACTION_IDS)
    for pid in ids:
        if POSTULATES[pid].kind != op.kind:
            raise LPError(f"{POSTULATES[pid].label} is not a {op.kind} postulate")
    logbot.logs(f"[Harness] {op.describe()}: {len(ids)} postulates over {corpus.describe()}")
    inputs = corpus.inputs()
    shards = worker.shard(corpus.programs(), workers)
    tasks = [(op, corpus.vocab, inputs, ids, s) for s in shards]
    merged = _merge(worker.run_shards(_postulate_shard, tasks, workers, op.id))
    reports = []
    for pid in ids:
        t = merged.get(pid, Tally())
        note = "skipped programs admit no valid ensconcement" if t.skipped else ""
        reports.append(t.report(op.describe(), pid, note))
    return reports


def check_revision_postulates(op: Operator, corpus: Corpus, ids: Optional[Sequence[str]] = None,
                              workers: int = 1) -> List[PostulateReport]:
    if not op.is_revision:
        raise LPError(f"{op.id} is not a revision operator")
    return check_postulates(op, corpus, ids, workers)


def check_contraction_postulates(op: Operator, corpus: Corpus, ids: Optional[Sequence[str]] = None,
                                 workers: int = 1) -> List[PostulateReport]:
    if op.is_revision:
        raise LPError(f"{op.id} is not a contraction operator")
    return check_postulates(op, corpus, ids, workers)


def replay(report: PostulateReport, op: Operator, vocab: Vocabulary) -> str:
    """Recompute the verdict of a report's witness."""
    if report.witness is None:
        return report.verdict
    w = report.witness
    inst = Instance(op, w.p, vocab)
    return HOLDS if POSTULATES[report.postulate].holds(inst, w.q, w.r) else FAILS


# -----------------------
# Per-program checks
# -----------------------
def _record(tallies: Dict[Tuple[str, str], Tally], key: Tuple[str, str], ok: bool,
            witness: Callable[[], Witness]):
    t = tallies.setdefault(key, Tally())
    t.checked += 1
    if not ok and t.witness is None:
        t.witness = witness()


def _skip(tallies, key, n):
    tallies.setdefault(key, Tally()).skipped += n


def _identity_program(vocab: Vocabulary, p: Program, inputs: Sequence[Program]) -> Dict:
    tallies: Dict = {}
    full = lattice(vocab).full
    for name in (PM, ENS):
        try:
            rev = CachedOperator(Operator(name, REVISION), p, vocab)
            con = CachedOperator(Operator(name, CONTRACTION), p, vocab)
        except EnsconcementError:
            _skip(tallies, (name, "levi"), len(inputs))
            _skip(tallies, (name, "harper"), len(inputs))
            continue
        for q in inputs:
            qm = program_se_mask(q, vocab)
            outside = full & ~qm
            direct_rev, direct_con = rev(q, qm), con(q, qm)
            levi = con.core(outside) | q
            harper = p & rev.core(outside)
            _record(tallies, (name, "levi"), levi == direct_rev,
                    lambda: Witness(p, q, None, (("via contraction", levi.key), ("revision", direct_rev.key))))
            _record(tallies, (name, "harper"), harper == direct_con,
                    lambda: Witness(p, q, None, (("via revision", harper.key), ("contraction", direct_con.key))))
    return tallies


def check_identity_bridges(corpus: Corpus, workers: int = 1) -> List[PostulateReport]:
    merged = _run_program_checks(_identity_program, corpus, workers, "identities")
    return _reports(merged)


def _characterization_program(vocab: Vocabulary, p: Program, inputs: Sequence[Program]) -> Dict:
    tallies: Dict = {}
    for policy in (FULL, MAXI):
        for kind in (REVISION, CONTRACTION):
            op = CachedOperator(Operator(PM, kind, policy), p, vocab)
            key = (op.op.describe(), "realized-by-ensconcement")
            for q in inputs:
                target = op(q)
                ok = realize_outcome(p, q, target, kind, vocab) is not None
                _record(tallies, key, ok, lambda: Witness(p, q, None, (("partial meet", target.key),)))

    try:
        e = default_ensconcement(p, vocab)
    except EnsconcementError:
        e = None
    for kind, direct, lifted in ((REVISION, ens_revise, subset_ens_revise),
                                 (CONTRACTION, ens_contract, subset_ens_contract)):
        key = (Operator(ENS, kind).id, "subset-granularity")
        if e is None:
            _skip(tallies, key, len(inputs))
            continue
        sens = lift_ensconcement(e)
        for q in inputs:
            a, b = direct(p, e, q, vocab), lifted(p, sens, q, vocab)
            _record(tallies, key, a == b,
                    lambda: Witness(p, q, None, (("rules", a.key), ("subsets", b.key))))

    for name in (PM, ENS):
        op = Operator(name, CONTRACTION)
        key = (op.id, "relevance-implies-disjunctive-elimination")
        try:
            inst = Instance(op, p, vocab)
        except EnsconcementError:
            _skip(tallies, key, len(inputs))
            continue
        for q in inputs:
            ok = not _c3b(inst, q) or _c8b(inst, q)
            _record(tallies, key, ok, lambda: _witness(inst, q, None))
    return tallies


def no_gamma_reverse() -> List[PostulateReport]:
    """A rule ensconcement whose outcome no selection function reproduces."""
    p, vocab = parse_program("a. b. c.")
    e = Ensconcement.of([r for r in p.sorted() if str(r) in ("a.", "b.")],
                        [r for r in p.sorted() if str(r) == "c."])
    out = []
    for kind, q_text in ((REVISION, ":- a."), (CONTRACTION, "a.")):
        q, _ = parse_program(q_text, vocab)
        if kind == REVISION:
            result = ens_revise(p, e, q, vocab)
            reachable = achievable_outcomes(p, q, COMPATIBLE, vocab)
        else:
            result = ens_contract(p, e, q, vocab)
            reachable = achievable_outcomes(p, q, REMAINDER, vocab)
        t = Tally(checked=1)
        if result in reachable:
            t.witness = Witness(p, q, None, (("ensconcement", result.key),))
        out.append(t.report(Operator(ENS, kind).id, "not-realizable-by-partial-meet"))
    return out


def check_characterizations(corpus: Corpus, workers: int = 1) -> List[PostulateReport]:
    merged = _run_program_checks(_characterization_program, corpus, workers, "characterizations")
    return _reports(merged) + no_gamma_reverse()


def _minimal_conflicts(subsets: Subsets, qm: int) -> List[int]:
    conflicting = [s for s, m in enumerate(subsets.se) if not m & qm]
    return [s for s in conflicting if not any(t != s and t & s == t for t in conflicting)]


def _localization_program(vocab: Vocabulary, p: Program, inputs: Sequence[Program]) -> Dict:
    tallies: Dict = {}
    subsets = Subsets(p, vocab)
    pm_mask = subsets.se[subsets.everything]
    revise = Operator(PM, REVISION)
    contract = Operator(PM, CONTRACTION)
    for q in inputs:
        qm = program_se_mask(q, vocab)
        family = relevant_modules(p, q)
        union = family.union
        covered = subsets.bits_of(union)
        missed = [s for s in _minimal_conflicts(subsets, qm) if s & ~covered]
        _record(tallies, ("modules", "covers-minimal-conflicts"), not missed,
                lambda: Witness(p, q, None, (("conflict", subsets.program_of(missed[0]).key),
                                             ("modules", union.key))))
        if pm_mask:
            ok = (not pm_mask & qm) == (not program_se_mask(union, vocab) & qm)
            _record(tallies, ("modules", "conflict-detection"), ok,
                    lambda: Witness(p, q, None, (("modules", union.key),)))
        for op, kind in ((revise, COMPATIBLE), (contract, REMAINDER)):
            local = localized_change(p, op, q, vocab)
            ok = local in achievable_outcomes(p, q, kind, vocab)
            _record(tallies, (op.id, "localized-outcome-achievable"), ok,
                    lambda: Witness(p, q, None, (("localized", local.key),)))
    return tallies


def check_localization(corpus: Corpus, workers: int = 1) -> List[PostulateReport]:
    return _reports(_run_program_checks(_localization_program, corpus, workers, "localization"))


def _screened_program(vocab: Vocabulary, p: Program, inputs: Sequence[Program]) -> Dict:
    tallies: Dict = {}
    by_p = lambda s: (s & p).key
    for q in inputs:
        consolidated = screened_consolidation(p | q, q, SE, by_p, vocab)
        revised = pm_revise(p, q, MAXI, vocab)
        _record(tallies, ("pm_revise[maxichoice-lex]", "se-screened-consolidation"), consolidated == revised,
                lambda: Witness(p, q, None, (("consolidation", consolidated.key), ("revision", revised.key))))
        consolidated_as = screened_consolidation(p | q, q, AS, by_p, vocab)
        revised_as = pm_revise_as(p, q, SINGLE, vocab)
        _record(tallies, ("pm-as_revise[single-choice-lex]", "as-screened-consolidation"),
                consolidated_as == revised_as,
                lambda: Witness(p, q, None, (("consolidation", consolidated_as.key),
                                             ("revision", revised_as.key))))
    return tallies


def check_screened_bridges(corpus: Corpus, workers: int = 1) -> List[PostulateReport]:
    return _reports(_run_program_checks(_screened_program, corpus, workers, "screened"))


def check_oracles(corpus: Corpus, samples: int = config.SAMPLES, seed: int = config.SEED) -> List[PostulateReport]:
    vocab = corpus.vocab
    keys = (("answer-sets", "reduct-oracle"), ("se-models", "there-models-are-classical"),
            ("canonical", "round-trip"))
    tallies = {k: Tally() for k in keys}
    empty = Program()
    for prog in corpus.sample(samples, seed):
        via_se, via_reduct = answer_sets(prog, vocab), answer_sets_by_reduct(prog, vocab)
        _record(tallies, keys[0], via_se == via_reduct, lambda: Witness(prog, empty))
        se = se_models(prog, vocab)
        there = frozenset(y for x, y in se.members if x == y)
        _record(tallies, keys[1], there == classical_models(prog, vocab), lambda: Witness(prog, empty))
        _record(tallies, keys[2], se_models(canonical_program(se), vocab) == se, lambda: Witness(prog, empty))
    return [tallies[k].report(*k) for k in keys]


# -----------------------
# Shared plumbing
# -----------------------
def _program_shard(task) -> Dict:
    fn, vocab, inputs, programs = task
    merged: Dict = {}
    for p in programs:
        for key, t in fn(vocab, p, inputs).items():
            merged.setdefault(key, Tally()).merge(t)
    return merged


def _run_program_checks(fn, corpus: Corpus, workers: int, label: str) -> Dict:
    logbot.logs(f"[Harness] {label} over {corpus.describe()}")
    inputs = corpus.inputs()
    tasks = [(fn, corpus.vocab, inputs, s) for s in worker.shard(corpus.programs(), workers)]
    return _merge(worker.run_shards(_program_shard, tasks, workers, label))


def _reports(merged: Dict) -> List[PostulateReport]:
    return [t.report(op, check) for (op, check), t in merged.items()]
