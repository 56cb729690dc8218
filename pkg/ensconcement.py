"""
Ensconcement relations (total preorders on a program's rules, least
ensconced level first), cuts, and the ensconcement revision/contraction
operators, plus the subset-level variant and the construction of an
ensconcement from a kept/discarded partition.

Ensconcement file format: one level per line, rules separated by " | ",
first line least ensconced. Blank lines and '%' comments are ignored.
"""

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple, Union

import config
import logbot
from partialmeet import Subsets
from program import LPError, Program, ProgramTooLarge, Rule, Vocabulary, parse_rule
from semantics import Semantic, lattice, program_se_mask, rule_se_mask, se_mask, vocabulary_for


class Violation(NamedTuple):
    condition: str
    rules: Tuple[Rule, ...]
    message: str

    def __str__(self):
        return f"{self.condition}: {self.message}"


class EnsconcementError(LPError):
    def __init__(self, message: str, violations: Sequence[Violation] = ()):
        detail = "; ".join(str(v) for v in violations)
        super().__init__(f"{message}: {detail}" if detail else message)
        self.violations = list(violations)


@dataclass(frozen=True)
class Ensconcement:
    levels: Tuple[Program, ...]

    def __post_init__(self):
        object.__setattr__(self, "levels", tuple(Program(frozenset(l)) for l in self.levels))

    @classmethod
    def of(cls, *levels: Iterable[Rule]) -> "Ensconcement":
        return cls(tuple(Program(frozenset(l)) for l in levels))

    @property
    def program(self) -> Program:
        out = frozenset()
        for l in self.levels:
            out |= l.rules
        return Program(out)

    def level_of(self, rule: Rule) -> int:
        for i, l in enumerate(self.levels):
            if rule in l.rules:
                return i
        raise EnsconcementError(f"rule '{rule}' is not ranked")

    def upper(self, rule: Rule) -> Program:
        """Rules at least as ensconced as the given one."""
        i = self.level_of(rule)
        return Program(frozenset().union(*(l.rules for l in self.levels[i:])))

    def restrict(self, sub: Program) -> "Ensconcement":
        if not sub <= self.program:
            raise EnsconcementError("restriction to rules outside the ensconcement")
        return Ensconcement(tuple(l & sub for l in self.levels if l & sub))

    def __str__(self):
        return print_ensconcement(self)


LevelsLike = Union[Ensconcement, Sequence[Iterable[Rule]]]


def _levels(levels: LevelsLike) -> Tuple[Program, ...]:
    if isinstance(levels, Ensconcement):
        return levels.levels
    return tuple(Program(frozenset(l)) for l in levels)


# -----------------------
# Validation
# -----------------------
def ensconcement_violations(p: Program, levels: LevelsLike, vocab: Optional[Vocabulary] = None) -> List[Violation]:
    levels = _levels(levels)
    vocab = vocabulary_for(p, *levels, vocab=vocab)
    out: List[Violation] = []

    seen = set()
    for i, l in enumerate(levels):
        if not l:
            out.append(Violation("partition", (), f"level {i + 1} is empty"))
        for r in l.rules:
            if r in seen:
                out.append(Violation("partition", (r,), f"rule '{r}' appears on two levels"))
            seen.add(r)
    for r in sorted(p.rules - seen, key=lambda r: r.sort_key):
        out.append(Violation("partition", (r,), f"rule '{r}' of P is not ranked"))
    for r in sorted(seen - p.rules, key=lambda r: r.sort_key):
        out.append(Violation("partition", (r,), f"rule '{r}' is not in P"))
    if out:
        return out

    full = lattice(vocab).full
    for i, l in enumerate(levels):
        upper = [r for level in levels[i:] for r in level.sorted()]
        for r in l.sorted():
            m = full
            for other in upper:
                if other != r:
                    m &= rule_se_mask(other, vocab)
            rm = rule_se_mask(r, vocab)
            if m & ~rm == 0 and m != rm:
                out.append(Violation(
                    "(⪯1)", (r,),
                    f"rules at least as ensconced as '{r}' strictly imply it",
                ))

    ranked = [(i, r) for i, l in enumerate(levels) for r in l.sorted()]
    for (i, r), (j, s) in combinations(ranked, 2):
        if i != j and rule_se_mask(r, vocab) == rule_se_mask(s, vocab):
            out.append(Violation(
                "(⪯2)", (r, s),
                f"strongly equivalent rules '{r}' and '{s}' are on different levels",
            ))
    return out


def validate_ensconcement(p: Program, levels: LevelsLike, vocab: Optional[Vocabulary] = None) -> Ensconcement:
    violations = ensconcement_violations(p, levels, vocab)
    if violations:
        raise EnsconcementError("invalid ensconcement", violations)
    return Ensconcement(_levels(levels))


def is_valid(p: Program, levels: LevelsLike, vocab: Optional[Vocabulary] = None) -> bool:
    return not ensconcement_violations(p, levels, vocab)


# -----------------------
# Text format
# -----------------------
def parse_ensconcement(text: str, p: Program) -> Ensconcement:
    levels = []
    for n, line in enumerate(text.splitlines(), start=1):
        line = line.split("%", 1)[0].strip()
        if not line:
            continue
        level = []
        for piece in line.split("|"):
            try:
                rule = parse_rule(piece.strip())
            except LPError as e:
                raise EnsconcementError(f"ensconcement line {n}: {e}")
            if rule not in p.rules:
                raise EnsconcementError(f"ensconcement line {n}: unknown rule '{rule}'")
            level.append(rule)
        levels.append(level)
    return Ensconcement.of(*levels)


def read_ensconcement(path: str, p: Program) -> Ensconcement:
    with open(path, encoding="utf-8") as f:
        return parse_ensconcement(f.read(), p)


def print_ensconcement(e: Ensconcement) -> str:
    return "".join(" | ".join(str(r) for r in l.sorted()) + "\n" for l in e.levels)


# -----------------------
# Cuts and operators
# -----------------------
def _associated(p: Program, e: Ensconcement):
    if e.program != p:
        raise EnsconcementError("ensconcement is not associated with the program")


def _cut(p: Program, e: Ensconcement, region: int, vocab: Vocabulary) -> Program:
    _associated(p, e)
    full = lattice(vocab).full
    kept = frozenset()
    m = full
    for l in reversed(e.levels):
        m &= program_se_mask(l, vocab)
        if not m & region:
            break
        kept |= l.rules
    return Program(kept)


def cut(p: Program, e: Ensconcement, q: Semantic, vocab: Optional[Vocabulary] = None) -> Program:
    """{ r in P | SE(rules at least as ensconced as r) meets SE(Q) }."""
    vocab = vocabulary_for(p, q, vocab=vocab)
    return _cut(p, e, se_mask(q, vocab), vocab)


def cut_minus(p: Program, e: Ensconcement, q: Semantic, vocab: Optional[Vocabulary] = None) -> Program:
    vocab = vocabulary_for(p, q, vocab=vocab)
    return _cut(p, e, lattice(vocab).full & ~se_mask(q, vocab), vocab)


def _preserving(p: Program, region: int, vocab: Vocabulary) -> Program:
    return Program(frozenset(r for r in p.rules if region & ~rule_se_mask(r, vocab) == 0))


def ens_revise(p: Program, e: Ensconcement, q: Semantic, vocab: Optional[Vocabulary] = None) -> Program:
    vocab = vocabulary_for(p, q, vocab=vocab)
    qm = se_mask(q, vocab)
    extra = q if isinstance(q, Program) else Program()
    if not qm:
        _associated(p, e)
        return p | extra
    c = _cut(p, e, qm, vocab)
    return _preserving(p, program_se_mask(c, vocab) & qm, vocab) | extra


def ens_contract(p: Program, e: Ensconcement, q: Semantic, vocab: Optional[Vocabulary] = None) -> Program:
    vocab = vocabulary_for(p, q, vocab=vocab)
    outside = lattice(vocab).full & ~se_mask(q, vocab)
    if not outside:
        _associated(p, e)
        return p
    c = _cut(p, e, outside, vocab)
    return _preserving(p, program_se_mask(c, vocab) & outside, vocab)


# -----------------------
# Constructing ensconcements
# -----------------------
def _peel(remaining: List[Rule], candidates: List[Rule], vocab: Vocabulary) -> List[Rule]:
    """Candidates that may sit on the lowest level of `remaining`."""
    full = lattice(vocab).full
    out = []
    for r in candidates:
        m = full
        for s in remaining:
            if s != r:
                m &= rule_se_mask(s, vocab)
        rm = rule_se_mask(r, vocab)
        if not (m & ~rm == 0 and m != rm):
            out.append(r)
    return out


def _peel_levels(p: Program, groups: Sequence[Program], vocab: Vocabulary) -> List[List[Rule]]:
    levels: List[List[Rule]] = []
    remaining = p.sorted()
    for group in groups:
        todo = group.sorted()
        while todo:
            low = _peel(remaining, todo, vocab)
            if not low:
                raise EnsconcementError("no valid ensconcement exists", [
                    Violation("(⪯1)", tuple(todo), "every remaining rule is strictly implied by the rules above it")
                ])
            levels.append(low)
            remaining = [r for r in remaining if r not in low]
            todo = [r for r in todo if r not in low]
    return levels


def default_ensconcement(p: Program, vocab: Optional[Vocabulary] = None) -> Ensconcement:
    """Ensconcement obtained by repeatedly moving every rule that may be least
    ensconced to the bottom. Raises EnsconcementError when P admits none."""
    vocab = vocabulary_for(p, vocab=vocab)
    return Ensconcement.of(*_peel_levels(p, [p], vocab))


def _ordered_partitions(rules: List[Rule]) -> Iterator[List[List[Rule]]]:
    if not rules:
        yield []
        return
    n = len(rules)
    for s in range(1, 1 << n):
        level = [r for i, r in enumerate(rules) if s >> i & 1]
        rest = [r for i, r in enumerate(rules) if not s >> i & 1]
        for tail in _ordered_partitions(rest):
            yield [level] + tail


def all_ensconcements(p: Program, vocab: Optional[Vocabulary] = None) -> Iterator[Ensconcement]:
    """Every valid ensconcement of P (exhaustive; small programs only)."""
    if len(p) > config.MAX_ENUMERATED_ENSCONCEMENT:
        raise ProgramTooLarge(f"enumerating ensconcements is limited to {config.MAX_ENUMERATED_ENSCONCEMENT} rules")
    vocab = vocabulary_for(p, vocab=vocab)
    for levels in _ordered_partitions(p.sorted()):
        if is_valid(p, levels, vocab):
            yield Ensconcement.of(*levels)


def ensconcement_from_partition(keep: Program, discard: Program,
                                vocab: Optional[Vocabulary] = None) -> Ensconcement:
    """Ensconcement with every discarded rule strictly below every kept rule.

    Starts from the two-level ensconcement [discard, keep]. When that is not
    valid, rules are peeled bottom-up inside each group and adjacent levels of
    the same group are merged back wherever validity survives.
    """
    if keep.rules & discard.rules:
        raise EnsconcementError("partition invalid: kept and discarded rules overlap")
    p = keep | discard
    vocab = vocabulary_for(p, vocab=vocab)
    for r in discard.sorted():
        for s in keep.sorted():
            if rule_se_mask(r, vocab) == rule_se_mask(s, vocab):
                raise EnsconcementError("partition invalid", [Violation(
                    "(⪯2)", (r, s), f"discarded '{r}' is strongly equivalent to kept '{s}'")])

    groups = [g for g in (discard, keep) if g]
    two = [g.sorted() for g in groups]
    if is_valid(p, two, vocab):
        return Ensconcement.of(*two)

    levels = _peel_levels(p, groups, vocab)
    group_of = {r: (0 if r in discard.rules else 1) for r in p.rules}
    i = 0
    while i + 1 < len(levels):
        a, b = levels[i], levels[i + 1]
        if group_of[a[0]] == group_of[b[0]]:
            merged = levels[:i] + [a + b] + levels[i + 2:]
            if is_valid(p, merged, vocab):
                levels = merged
                continue
        i += 1
    logbot.logs(f"[Ensconcement] two-level ensconcement repaired into {len(levels)} levels")
    return Ensconcement.of(*levels)


def realize_outcome(p: Program, q: Semantic, target: Program, kind: str,
                    vocab: Optional[Vocabulary] = None) -> Optional[Ensconcement]:
    """An ensconcement whose revision/contraction of P by Q gives target, if any."""
    vocab = vocabulary_for(p, q, vocab=vocab)
    op = ens_revise if kind == "revision" else ens_contract
    try:
        e = ensconcement_from_partition(p & target, p - target, vocab)
        if op(p, e, q, vocab) == target:
            return e
    except EnsconcementError:
        pass
    if len(p) > config.MAX_ENUMERATED_ENSCONCEMENT:
        return None
    for e in all_ensconcements(p, vocab):
        if op(p, e, q, vocab) == target:
            return e
    return None


# -----------------------
# Subset-ensconcements
# -----------------------
@dataclass(frozen=True)
class SubsetEnsconcement:
    """Total preorder on all subsets of a program, as a rank per subset."""

    program: Program
    ranks: Tuple[Tuple[Program, int], ...]

    @property
    def rank_map(self) -> Dict[Program, int]:
        return dict(self.ranks)

    def rank_of(self, sub: Program) -> int:
        try:
            return self.rank_map[sub]
        except KeyError:
            raise EnsconcementError(f"subset {sub!r} is not ranked")

    @property
    def levels(self) -> List[List[Program]]:
        by_rank: Dict[int, List[Program]] = {}
        for sub, k in self.ranks:
            by_rank.setdefault(k, []).append(sub)
        return [sorted(by_rank[k], key=lambda s: (len(s), s.key)) for k in sorted(by_rank)]


def _all_subsets(p: Program) -> List[Program]:
    rules = p.sorted()
    return [Program(frozenset(c)) for n in range(len(rules) + 1) for c in combinations(rules, n)]


def lift_ensconcement(e: Ensconcement, overrides: Optional[Dict[Program, int]] = None) -> SubsetEnsconcement:
    """A subset is as ensconced as its least ensconced rule; the empty subset
    is most ensconced. Explicit overrides replace computed ranks."""
    p = e.program
    if len(p) > config.MAX_PROGRAM_RULES:
        raise ProgramTooLarge(f"subset-ensconcements are limited to {config.MAX_PROGRAM_RULES} rules")
    top = len(e.levels)
    level = {r: i for i, l in enumerate(e.levels) for r in l.rules}
    ranks = {}
    for sub in _all_subsets(p):
        ranks[sub] = min((level[r] for r in sub.rules), default=top)
    for sub, k in (overrides or {}).items():
        if not sub <= p:
            raise EnsconcementError(f"override {sub!r} is not a subset of the program")
        ranks[sub] = k
    return SubsetEnsconcement(p, tuple(sorted(ranks.items(), key=lambda kv: (kv[1], len(kv[0]), kv[0].key))))


def subset_ensconcement_from_levels(p: Program, levels: Sequence[Sequence[Program]]) -> SubsetEnsconcement:
    ranks = {}
    for k, level in enumerate(levels):
        for sub in level:
            sub = Program(frozenset(sub))
            if sub in ranks:
                raise EnsconcementError(f"subset {sub!r} appears on two levels")
            if not sub <= p:
                raise EnsconcementError(f"{sub!r} is not a subset of the program")
            ranks[sub] = k
    if len(ranks) != 1 << len(p):
        raise EnsconcementError("subset levels do not partition all subsets of the program")
    return SubsetEnsconcement(p, tuple(ranks.items()))


def _subset_index(sens: SubsetEnsconcement, vocab: Vocabulary):
    subsets = Subsets(sens.program, vocab)
    rank = [0] * len(subsets)
    for sub, k in sens.ranks:
        rank[subsets.bits_of(sub)] = k
    return subsets, rank


def subset_violations(sens: SubsetEnsconcement, vocab: Optional[Vocabulary] = None) -> List[Violation]:
    p = sens.program
    if len(p) > config.MAX_ENUMERATED_ENSCONCEMENT:
        raise ProgramTooLarge(f"subset-ensconcement validation is limited to {config.MAX_ENUMERATED_ENSCONCEMENT} rules")
    vocab = vocabulary_for(p, vocab=vocab)
    subsets, rank = _subset_index(sens, vocab)
    everything = subsets.everything
    out = []
    for s in range(len(subsets)):
        union = 0
        for t in range(len(subsets)):
            if t & s == 0 and rank[t] >= rank[s]:
                union |= t
        m, sm = subsets.se[union], subsets.se[s]
        if m & ~sm == 0 and m != sm:
            out.append(Violation("(⪯R1)", tuple(subsets.program_of(s).sorted()),
                                 f"subsets outside {subsets.program_of(s)!r} at least as ensconced strictly imply it"))
    seen: Dict[int, int] = {}
    for s in range(everything + 1):
        first = seen.setdefault(subsets.se[s], s)
        if first != s and rank[first] != rank[s]:
            out.append(Violation("(⪯R2)", tuple(subsets.program_of(s).sorted()),
                                 f"{subsets.program_of(first)!r} and {subsets.program_of(s)!r} are strongly "
                                 f"equivalent but ranked differently"))
    return out


def validate_subset_ensconcement(sens: SubsetEnsconcement, vocab: Optional[Vocabulary] = None) -> SubsetEnsconcement:
    violations = subset_violations(sens, vocab)
    if violations:
        raise EnsconcementError("invalid subset-ensconcement", violations)
    return sens


def _subset_change(p: Program, sens: SubsetEnsconcement, region: int, vocab: Vocabulary) -> Program:
    if sens.program != p:
        raise EnsconcementError("subset-ensconcement is not associated with the program")
    subsets, rank = _subset_index(sens, vocab)
    upper_union: Dict[int, int] = {}
    for k in set(rank):
        u = 0
        for t, kt in enumerate(rank):
            if kt >= k:
                u |= t
        upper_union[k] = u
    cut_bits = 0
    for s, k in enumerate(rank):
        if subsets.se[upper_union[k]] & region:
            cut_bits |= s
    shared = subsets.se[cut_bits] & region
    out = 0
    for s, m in enumerate(subsets.se):
        if shared & ~m == 0:
            out |= s
    return subsets.program_of(out)


def subset_ens_revise(p: Program, sens: SubsetEnsconcement, q: Semantic,
                      vocab: Optional[Vocabulary] = None) -> Program:
    vocab = vocabulary_for(p, q, vocab=vocab)
    qm = se_mask(q, vocab)
    extra = q if isinstance(q, Program) else Program()
    if not qm:
        return p | extra
    return _subset_change(p, sens, qm, vocab) | extra


def subset_ens_contract(p: Program, sens: SubsetEnsconcement, q: Semantic,
                        vocab: Optional[Vocabulary] = None) -> Program:
    vocab = vocabulary_for(p, q, vocab=vocab)
    outside = lattice(vocab).full & ~se_mask(q, vocab)
    if not outside:
        return p
    return _subset_change(p, sens, outside, vocab)
