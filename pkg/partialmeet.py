"""
Partial meet revision and contraction of logic programs.

Candidate subsets of P are enumerated as bit masks over P's rules in canonical
order; the SE mask of every subset is built incrementally from its rules.
"""

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import config
import logbot
from program import EMPTY, LPError, Program, ProgramTooLarge, Rule, Vocabulary, parse_program
from semantics import Semantic, lattice, rule_se_mask, se_mask, vocabulary_for

FULL_MEET = "full-meet"
MAXICHOICE = "maxichoice-lex"
SINGLE_CHOICE = "single-choice-lex"
RELATIONAL = "relational"

KINDS = (FULL_MEET, MAXICHOICE, SINGLE_CHOICE, RELATIONAL)

COMPATIBLE = "compatible"
REMAINDER = "remainder"


class PolicyError(LPError):
    pass


# -----------------------
# Selection policies
# -----------------------
@dataclass(frozen=True)
class SelectionPolicy:
    kind: str = FULL_MEET
    weights: Tuple[Tuple[str, Fraction], ...] = ()
    maximised: bool = False
    size_weights: bool = False  # unlisted subsets weigh their cardinality

    def __post_init__(self):
        if self.kind not in KINDS:
            raise PolicyError(f"unknown selection policy '{self.kind}'")
        if self.kind != RELATIONAL and (self.weights or self.maximised or self.size_weights):
            raise PolicyError("weights apply to relational policies only")

    @property
    def weight_map(self) -> Dict[str, Fraction]:
        return dict(self.weights)

    def weight(self, member: Program) -> Optional[Fraction]:
        w = self.weight_map.get(member.key)
        if w is None and self.size_weights:
            return Fraction(len(member))
        return w

    def select(self, family: Sequence[Program]) -> List[Program]:
        """Members chosen from a candidate family (empty family -> empty)."""
        family = sorted(family, key=lambda m: m.key)
        if not family:
            return []
        if self.kind == FULL_MEET:
            return family
        if self.kind in (MAXICHOICE, SINGLE_CHOICE):
            return [family[0]]
        return self._relational(family)

    def _relational(self, family: List[Program]) -> List[Program]:
        n = len(family)
        w = [self.weight(m) for m in family]
        rel = [[False] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                if w[i] is not None and w[j] is not None and w[i] <= w[j]:
                    rel[i][j] = True
                if self.maximised and family[i] < family[j]:
                    rel[i][j] = True
        for k in range(n):
            for i in range(n):
                if rel[i][k]:
                    for j in range(n):
                        if rel[k][j]:
                            rel[i][j] = True
        chosen = [family[j] for j in range(n) if all(rel[i][j] for i in range(n))]
        if not chosen:
            logbot.logs("[PartialMeet] relation selects nothing on a non-empty family; selecting all members")
            return family
        return chosen

    def describe(self) -> str:
        if self.kind != RELATIONAL:
            return self.kind
        extra = []
        if self.weights:
            extra.append(f"{len(self.weights)} weights")
        if self.size_weights:
            extra.append("size")
        if self.maximised:
            extra.append("maximised")
        return f"{self.kind}({', '.join(extra)})" if extra else self.kind


FULL = SelectionPolicy(FULL_MEET)
MAXI = SelectionPolicy(MAXICHOICE)
SINGLE = SelectionPolicy(SINGLE_CHOICE)
BY_SIZE = SelectionPolicy(RELATIONAL, maximised=True, size_weights=True)


def _fraction(value) -> Fraction:
    try:
        if isinstance(value, bool):
            raise ValueError("booleans are not weights")
        return Fraction(str(value)) if not isinstance(value, int) else Fraction(value)
    except (ValueError, ZeroDivisionError) as e:
        raise PolicyError(f"invalid weight {value!r}: {e}")


def load_weights(path: str) -> SelectionPolicy:
    """Weights file: {"<subset key>": 3, "<other key>": "1/2", "maximised": true}.

    A subset key is its rules in canonical order separated by single spaces,
    e.g. "a. b :- a."; the empty subset is "".
    """
    try:
        with open(path, encoding="utf-8") as f:
            raw = json.load(f)
    except json.JSONDecodeError as e:
        raise PolicyError(f"weights file {path}: {e}")
    if not isinstance(raw, dict):
        raise PolicyError(f"weights file {path} must hold a JSON object")
    maximised = bool(raw.pop("maximised", False))
    size_weights = bool(raw.pop("size", False))
    weights = tuple(sorted((_normal_key(k), _fraction(v)) for k, v in raw.items()))
    return SelectionPolicy(RELATIONAL, weights, maximised, size_weights)


def _normal_key(key: str) -> str:
    program, _ = parse_program(key)
    return program.key


def parse_policy(spec: str) -> SelectionPolicy:
    """'full' | 'maxichoice' | 'single' | 'relational' | 'relational:size' | 'relational:weights.json'."""
    name, _, arg = (spec or "full").partition(":")
    name = name.strip().lower()
    if name in ("full", FULL_MEET):
        return FULL
    if name in ("maxichoice", MAXICHOICE):
        return MAXI
    if name in ("single", SINGLE_CHOICE):
        return SINGLE
    if name == RELATIONAL:
        if not arg:
            return SelectionPolicy(RELATIONAL)
        if arg == "size":
            return BY_SIZE
        return load_weights(arg)
    raise PolicyError(f"unknown selection policy '{spec}'")


# -----------------------
# Candidate families
# -----------------------
@dataclass(frozen=True)
class CandidateFamily:
    base: Program
    context: str
    members: Tuple[Program, ...] = field(default_factory=tuple)

    def __iter__(self):
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __bool__(self) -> bool:
        return bool(self.members)


def check_size(program: Program):
    if len(program) > config.MAX_PROGRAM_RULES:
        raise ProgramTooLarge(
            f"program has {len(program)} rules; subset enumeration is capped at {config.MAX_PROGRAM_RULES}"
        )


class Subsets:
    """All subsets of a program with their SE masks, indexed by bit mask."""

    def __init__(self, program: Program, vocab: Vocabulary):
        check_size(program)
        self.program = program
        self.vocab = vocab
        self.rules: List[Rule] = program.sorted()
        n = len(self.rules)
        masks = [0] * (1 << n)
        masks[0] = lattice(vocab).full
        for s in range(1, 1 << n):
            low = s & -s
            masks[s] = masks[s ^ low] & rule_se_mask(self.rules[low.bit_length() - 1], vocab)
        self.se = masks

    def __len__(self) -> int:
        return len(self.se)

    @property
    def everything(self) -> int:
        return len(self.se) - 1

    def program_of(self, s: int) -> Program:
        return Program(frozenset(r for i, r in enumerate(self.rules) if s >> i & 1))

    def bits_of(self, sub: Program) -> int:
        s = 0
        for i, r in enumerate(self.rules):
            if r in sub.rules:
                s |= 1 << i
        return s

    def maximal(self, accept: Callable[[int], bool], required: int = 0) -> List[int]:
        """Subset-maximal subsets s containing `required` with accept(SE mask of s)."""
        ok = [s for s in range(len(self.se)) if s & required == required and accept(self.se[s])]
        ok.sort(key=lambda s: -bin(s).count("1"))
        out: List[int] = []
        for s in ok:
            if not any(t & s == s for t in out):
                out.append(s)
        return out


def _family(subsets: Subsets, context: str, accept: Callable[[int], bool]) -> CandidateFamily:
    members = sorted((subsets.program_of(s) for s in subsets.maximal(accept)), key=lambda m: m.key)
    return CandidateFamily(subsets.program, context, tuple(members))


def compatible_sets(p: Program, q: Semantic, vocab: Optional[Vocabulary] = None) -> CandidateFamily:
    """Maximal R <= P with SE(R) meeting SE(Q)."""
    vocab = vocabulary_for(p, q, vocab=vocab)
    qm = se_mask(q, vocab)
    return _family(Subsets(p, vocab), COMPATIBLE, lambda m: bool(m & qm))


def remainder_sets(p: Program, q: Semantic, vocab: Optional[Vocabulary] = None) -> CandidateFamily:
    """Maximal R <= P with SE(R) meeting the complement of SE(Q)."""
    vocab = vocabulary_for(p, q, vocab=vocab)
    outside = lattice(vocab).full & ~se_mask(q, vocab)
    return _family(Subsets(p, vocab), REMAINDER, lambda m: bool(m & outside))


def meet(members: Sequence[Program]) -> Program:
    """Intersection of a family; the empty family meets to the empty program."""
    if not members:
        return EMPTY
    out = members[0].rules
    for m in members[1:]:
        out = out & m.rules
    return Program(out)


def _with_q(retained: Program, q: Semantic) -> Program:
    return retained | q if isinstance(q, Program) else retained


def pm_revise(p: Program, q: Semantic, policy: SelectionPolicy = FULL,
              vocab: Optional[Vocabulary] = None) -> Program:
    """P *_gamma Q.

    Revision by a raw SE set returns the retained part of P only, which is what
    P n (P * S) needs.
    """
    vocab = vocabulary_for(p, q, vocab=vocab)
    if not se_mask(q, vocab):
        return _with_q(p, q)
    family = compatible_sets(p, q, vocab)
    return _with_q(meet(policy.select(family.members)), q)


def pm_contract(p: Program, q: Semantic, policy: SelectionPolicy = FULL,
                vocab: Optional[Vocabulary] = None) -> Program:
    vocab = vocabulary_for(p, q, vocab=vocab)
    if se_mask(q, vocab) == lattice(vocab).full:
        return p
    family = remainder_sets(p, q, vocab)
    return meet(policy.select(family.members))


def achievable_outcomes(p: Program, q: Semantic, kind: str = COMPATIBLE,
                        vocab: Optional[Vocabulary] = None) -> List[Program]:
    """Every outcome some selection function can produce: the meets of all
    non-empty subfamilies of the candidate family (plus Q for revision)."""
    vocab = vocabulary_for(p, q, vocab=vocab)
    if kind == COMPATIBLE:
        if not se_mask(q, vocab):
            return [_with_q(p, q)]
        family = compatible_sets(p, q, vocab).members
    else:
        if se_mask(q, vocab) == lattice(vocab).full:
            return [p]
        family = remainder_sets(p, q, vocab).members
    if len(family) > config.MAX_PROGRAM_RULES:
        raise ProgramTooLarge(f"candidate family of {len(family)} members is too large to enumerate")
    if not family:
        return [_with_q(EMPTY, q)] if kind == COMPATIBLE else [EMPTY]
    seen = set()
    out = []
    for g in range(1, 1 << len(family)):
        chosen = [m for i, m in enumerate(family) if g >> i & 1]
        m = meet(chosen)
        outcome = _with_q(m, q) if kind == COMPATIBLE else m
        if outcome not in seen:
            seen.add(outcome)
            out.append(outcome)
    return sorted(out, key=lambda o: (len(o), o.key))
