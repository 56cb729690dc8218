"""
Comparison operators: distance-based revision over SE models, partial meet
revision under answer set semantics, screened consolidation, and C-update
equivalence.
"""

from typing import Callable, Iterable, Optional, Set, Tuple, TypeVar

from partialmeet import MAXICHOICE, SINGLE, SINGLE_CHOICE, PolicyError, SelectionPolicy, Subsets
from program import LPError, Program, Vocabulary
from semantics import (
    SESet,
    Semantic,
    canonical_program,
    lattice,
    se_mask,
    strongly_equivalent,
    vocabulary_for,
)

SE = "se"
AS = "as"

T = TypeVar("T")


# -----------------------
# sigma and the pair ordering
# -----------------------
def delta(a, b):
    """Symmetric difference of two sets, componentwise on pairs."""
    if isinstance(a, tuple):
        return tuple(delta(x, y) for x, y in zip(a, b))
    return a ^ b


def _subset(a, b) -> bool:
    if isinstance(a, int):
        return a & ~b == 0
    return a <= b


def included(d, e) -> bool:
    """(X,X') is included in (Y,Y') iff X' <= Y' and, when X' = Y', X <= Y."""
    if isinstance(d, tuple):
        x, x2 = d
        y, y2 = e
        return _subset(x2, y2) and (x2 != y2 or _subset(x, y))
    return _subset(d, e)


def strictly_included(d, e) -> bool:
    return included(d, e) and not included(e, d)


def sigma(e: Iterable[T], e2: Iterable[T]) -> Set[T]:
    """Members A1 of e with a partner B1 in e2 whose difference is minimal:
    no other difference between e and e2 is strictly included in it."""
    e = list(e)
    e2 = list(e2)
    diffs = {}
    for a in e:
        for b in e2:
            diffs.setdefault(delta(a, b), []).append(a)
    minimal = [d for d in diffs if not any(strictly_included(o, d) for o in diffs)]
    return {a for d in minimal for a in diffs[d]}


# -----------------------
# Distance-based revision
# -----------------------
def distance_revise_se(p: Semantic, q: Semantic, vocab: Optional[Vocabulary] = None) -> SESet:
    vocab = vocabulary_for(p, q, vocab=vocab)
    lat = lattice(vocab)
    pm, qm = se_mask(p, vocab), se_mask(q, vocab)
    if not pm:
        return SESet(vocab, qm)
    p_pairs = list(lat.bits(pm))
    q_pairs = list(lat.bits(qm))
    mod_p = [y for x, y in p_pairs if x == y]
    mod_q = [y for x, y in q_pairs if x == y]
    close_y = sigma(mod_q, mod_p)
    close_pairs = sigma(q_pairs, p_pairs)
    out = 0
    for x, y in lat.pairs:
        if y not in close_y:
            continue
        if x == y or (x, y) in close_pairs:
            out |= 1 << lat.index[(x, y)]
    return SESet(vocab, out)


def materialize(s: SESet) -> Program:
    """A program whose SE models are exactly s."""
    return canonical_program(s)


# -----------------------
# Answer-set based change
# -----------------------
def _has_answer_set(vocab: Vocabulary, mask: int) -> bool:
    return bool(lattice(vocab).answer_sets(mask))


def _with_q(retained: Program, q: Semantic) -> Program:
    return retained | q if isinstance(q, Program) else retained


def _single(policy: SelectionPolicy):
    if policy.kind not in (SINGLE_CHOICE, MAXICHOICE):
        raise PolicyError("partial meet revision under answer sets needs a single-choice policy")


def as_compatible_sets(p: Program, q: Semantic, vocab: Optional[Vocabulary] = None) -> Tuple[Program, ...]:
    """Maximal R <= P such that R together with Q has an answer set."""
    vocab = vocabulary_for(p, q, vocab=vocab)
    qm = se_mask(q, vocab)
    subsets = Subsets(p, vocab)
    found = subsets.maximal(lambda m: _has_answer_set(vocab, m & qm))
    return tuple(sorted((subsets.program_of(s) for s in found), key=lambda m: m.key))


def pm_revise_as(p: Program, q: Semantic, policy: SelectionPolicy = SINGLE,
                 vocab: Optional[Vocabulary] = None) -> Program:
    _single(policy)
    vocab = vocabulary_for(p, q, vocab=vocab)
    family = as_compatible_sets(p, q, vocab)
    if not family and not _has_answer_set(vocab, se_mask(q, vocab)):
        return _with_q(p, q)
    chosen = policy.select(family)
    return _with_q(chosen[0] if chosen else Program(), q)


def screened_remainders(p: Program, q: Program, semantics: str = SE,
                        vocab: Optional[Vocabulary] = None) -> Tuple[Program, ...]:
    """Maximal R with Q <= R <= P that is consistent (SE models or answer sets)."""
    if semantics not in (SE, AS):
        raise LPError(f"unknown semantics '{semantics}'")
    vocab = vocabulary_for(p, q, vocab=vocab)
    subsets = Subsets(p, vocab)
    if semantics == SE:
        accept: Callable[[int], bool] = bool
    else:
        accept = lambda m: _has_answer_set(vocab, m)
    if not q <= p:
        return ()
    found = subsets.maximal(accept, required=subsets.bits_of(q))
    return tuple(subsets.program_of(s) for s in found)


def screened_consolidation(p: Program, q: Program, semantics: str = SE,
                           key: Optional[Callable[[Program], str]] = None,
                           vocab: Optional[Vocabulary] = None) -> Program:
    """P !_gamma Q with a lexicographic maxichoice gamma (P itself when no remainder exists)."""
    family = screened_remainders(p, q, semantics, vocab)
    if not family:
        return p
    key = key or (lambda r: r.key)
    return min(family, key=key)


def c_update_equivalent(p1: Program, p2: Program, vocab: Optional[Vocabulary] = None) -> bool:
    return strongly_equivalent(p1 - p2, p2 - p1, vocabulary_for(p1, p2, vocab=vocab))
