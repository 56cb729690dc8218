"""
SE-model semantics over a finite vocabulary.

Interpretations are bit masks over the vocabulary order. The SE lattice (all
pairs X <= Y) is enumerated once per vocabulary and an SE set is a bit mask
over that enumeration, so intersection, inclusion and complement are integer
operations.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from program import LPError, Program, Rule, Vocabulary, VocabularyError

Interpretation = FrozenSet[str]


class NotWellDefined(LPError):
    pass


# -----------------------
# Lattice
# -----------------------
class Lattice:
    """Enumeration of SE interpretations (X, Y) with X <= Y <= vocabulary."""

    def __init__(self, vocab: Vocabulary):
        self.vocab = vocab
        pairs = []
        for y in range(1 << len(vocab)):
            x = 0
            while True:
                pairs.append((x, y))
                if x == y:
                    break
                x = (x - y) & y  # next submask of y in increasing order
        self.pairs: Tuple[Tuple[int, int], ...] = tuple(pairs)
        self.index = {p: i for i, p in enumerate(self.pairs)}
        self.full = (1 << len(self.pairs)) - 1
        self.total_bit = {}  # y -> bit of (y, y)
        self.below_bits = {}  # y -> bits of (x, y) with x < y
        for i, (x, y) in enumerate(self.pairs):
            if x == y:
                self.total_bit[y] = 1 << i
            else:
                self.below_bits[y] = self.below_bits.get(y, 0) | (1 << i)

    def __len__(self) -> int:
        return len(self.pairs)

    def bits(self, mask: int) -> Iterable[Tuple[int, int]]:
        i = 0
        while mask:
            if mask & 1:
                yield self.pairs[i]
            mask >>= 1
            i += 1

    def there_models(self, mask: int) -> List[int]:
        """Y with (Y, Y) in the set."""
        return [y for y, b in self.total_bit.items() if mask & b]

    def answer_sets(self, mask: int) -> List[int]:
        return [y for y, b in self.total_bit.items()
                if mask & b and not mask & self.below_bits.get(y, 0)]


@lru_cache(maxsize=None)
def lattice(vocab: Vocabulary) -> Lattice:
    return Lattice(vocab)


# -----------------------
# SE sets
# -----------------------
@dataclass(frozen=True)
class SESet:
    vocab: Vocabulary
    mask: int = 0

    @classmethod
    def from_pairs(cls, vocab: Vocabulary, pairs: Iterable[Tuple[Iterable[str], Iterable[str]]]) -> "SESet":
        lat = lattice(vocab)
        m = 0
        for here, there in pairs:
            x, y = vocab.mask(here), vocab.mask(there)
            if x & ~y:
                raise VocabularyError(f"({sorted(here)}, {sorted(there)}) is not an SE interpretation")
            m |= 1 << lat.index[(x, y)]
        return cls(vocab, m)

    @classmethod
    def full(cls, vocab: Vocabulary) -> "SESet":
        return cls(vocab, lattice(vocab).full)

    @property
    def members(self) -> List[Tuple[Interpretation, Interpretation]]:
        """Members as (X, Y) atom sets, canonically sorted."""
        out = [(self.vocab.atoms_of(x), self.vocab.atoms_of(y)) for x, y in lattice(self.vocab).bits(self.mask)]
        return sorted(out, key=lambda p: (interpretation_text(p[0]), interpretation_text(p[1])))

    def __iter__(self):
        return iter(self.members)

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __bool__(self) -> bool:
        return self.mask != 0

    def __contains__(self, pair) -> bool:
        here, there = pair
        x, y = self.vocab.mask(here), self.vocab.mask(there)
        i = lattice(self.vocab).index.get((x, y))
        return i is not None and bool(self.mask >> i & 1)

    def _same(self, other: "SESet"):
        if other.vocab != self.vocab:
            raise VocabularyError("SE sets over different vocabularies")

    def __and__(self, other: "SESet") -> "SESet":
        self._same(other)
        return SESet(self.vocab, self.mask & other.mask)

    def __or__(self, other: "SESet") -> "SESet":
        self._same(other)
        return SESet(self.vocab, self.mask | other.mask)

    def __sub__(self, other: "SESet") -> "SESet":
        self._same(other)
        return SESet(self.vocab, self.mask & ~other.mask)

    def __le__(self, other: "SESet") -> bool:
        self._same(other)
        return self.mask & ~other.mask == 0

    def __lt__(self, other: "SESet") -> bool:
        return self <= other and self.mask != other.mask

    def __str__(self) -> str:
        return "{" + ",".join(f"({pair_text(x)},{pair_text(y)})" for x, y in self.members) + "}"


Semantic = Union[Program, SESet]


def interpretation_text(atoms: Iterable[str]) -> str:
    return ",".join(sorted(atoms))


def pair_text(atoms: Iterable[str]) -> str:
    """Compact form used in tables: '∅', 'a', 'ab' (or 'a,bc' for longer names)."""
    atoms = sorted(atoms)
    if not atoms:
        return "∅"
    if all(len(a) == 1 for a in atoms):
        return "".join(atoms)
    return ",".join(atoms)


def se_to_json(s: SESet) -> dict:
    return {
        "vocab": list(s.vocab.atoms),
        "models": [[interpretation_text(x), interpretation_text(y)] for x, y in s.members],
    }


def se_from_json(obj: dict) -> SESet:
    try:
        vocab = Vocabulary(tuple(obj["vocab"]))
        pairs = [([a for a in x.split(",") if a], [a for a in y.split(",") if a]) for x, y in obj["models"]]
    except (KeyError, TypeError, ValueError, AttributeError) as e:
        raise LPError(f"malformed SE-set JSON: {e}")
    return SESet.from_pairs(vocab, pairs)


# -----------------------
# Rule-level evaluation
# -----------------------
def _rule_masks(rule: Rule, vocab: Vocabulary):
    return (vocab.mask(rule.head_pos), vocab.mask(rule.head_neg),
            vocab.mask(rule.body_pos), vocab.mask(rule.body_neg))


def _classically_satisfies(y: int, hp: int, hn: int, bp: int, bn: int) -> bool:
    if bp & ~y or bn & y:
        return True
    return bool(hp & y) or bool(hn & ~y)


@lru_cache(maxsize=None)
def rule_se_mask(rule: Rule, vocab: Vocabulary) -> int:
    hp, hn, bp, bn = _rule_masks(rule, vocab)
    lat = lattice(vocab)
    m = 0
    for i, (x, y) in enumerate(lat.pairs):
        if not _classically_satisfies(y, hp, hn, bp, bn):
            continue
        # x must satisfy the reduct H+ <- B+ whenever the rule survives it
        if hn & ~y == 0 and bn & y == 0 and bp & ~x == 0 and not hp & x:
            continue
        m |= 1 << i
    return m


def program_se_mask(program: Program, vocab: Vocabulary) -> int:
    m = lattice(vocab).full
    for r in program.rules:
        m &= rule_se_mask(r, vocab)
    return m


def vocabulary_for(*items, vocab: Optional[Vocabulary] = None) -> Vocabulary:
    """Effective vocabulary for a group of programs/SE sets/rules.

    An explicit vocabulary or the vocabulary of an SE set wins; otherwise the
    atoms of all programs. Every program atom must be covered.
    """
    ses = [i for i in items if isinstance(i, SESet)]
    if vocab is None and ses:
        vocab = ses[0].vocab
    atoms = set()
    for i in items:
        if isinstance(i, (Program, Rule)):
            atoms |= i.atoms
    if vocab is None:
        return Vocabulary(tuple(atoms))
    for s in ses:
        if s.vocab != vocab:
            raise VocabularyError(f"SE set over {{{', '.join(s.vocab)}}} used with vocabulary {{{', '.join(vocab)}}}")
    missing = atoms - set(vocab.atoms)
    if missing:
        raise VocabularyError(f"atoms {sorted(missing)} are outside vocabulary {{{', '.join(vocab)}}}")
    return vocab


def se_mask(item: Semantic, vocab: Vocabulary) -> int:
    if isinstance(item, SESet):
        if item.vocab != vocab:
            raise VocabularyError("SE set vocabulary does not match")
        return item.mask
    return program_se_mask(item, vocab)


# -----------------------
# Public operations
# -----------------------
def reduct(program: Program, y: Iterable[str]) -> Program:
    """P^Y = { H+ <- B+ | H- <= Y and B- disjoint from Y }."""
    y = frozenset(y)
    return Program(frozenset(
        Rule.make(r.head_pos, (), r.body_pos, ())
        for r in program.rules
        if set(r.head_neg) <= y and not y & set(r.body_neg)
    ))


def classical_models(program: Program, vocab: Optional[Vocabulary] = None) -> FrozenSet[Interpretation]:
    vocab = vocabulary_for(program, vocab=vocab)
    masks = [_rule_masks(r, vocab) for r in program.rules]
    return frozenset(
        vocab.atoms_of(y) for y in range(1 << len(vocab))
        if all(_classically_satisfies(y, *m) for m in masks)
    )


def se_models(program: Program, vocab: Optional[Vocabulary] = None) -> SESet:
    vocab = vocabulary_for(program, vocab=vocab)
    return SESet(vocab, program_se_mask(program, vocab))


def answer_sets(program: Program, vocab: Optional[Vocabulary] = None) -> FrozenSet[Interpretation]:
    """Answer sets read off the SE models: (Y,Y) in SE(P), no (X,Y) with X < Y."""
    vocab = vocabulary_for(program, vocab=vocab)
    m = program_se_mask(program, vocab)
    return frozenset(vocab.atoms_of(y) for y in lattice(vocab).answer_sets(m))


def answer_sets_by_reduct(program: Program, vocab: Optional[Vocabulary] = None) -> FrozenSet[Interpretation]:
    """Answer sets as subset-minimal models of the reduct, without SE models."""
    vocab = vocabulary_for(program, vocab=vocab)
    out = set()
    for y in classical_models(program, vocab):
        models = classical_models(reduct(program, y), vocab)
        if y in models and not any(x < y for x in models):
            out.add(y)
    return frozenset(out)


def complement(s: SESet) -> SESet:
    return SESet(s.vocab, lattice(s.vocab).full & ~s.mask)


def implies_s(p: Semantic, q: Semantic, vocab: Optional[Vocabulary] = None) -> bool:
    """P |=s Q iff SE(P) <= SE(Q)."""
    vocab = vocabulary_for(p, q, vocab=vocab)
    return se_mask(p, vocab) & ~se_mask(q, vocab) == 0


def strongly_equivalent(p: Semantic, q: Semantic, vocab: Optional[Vocabulary] = None) -> bool:
    vocab = vocabulary_for(p, q, vocab=vocab)
    return se_mask(p, vocab) == se_mask(q, vocab)


def is_satisfiable(p: Semantic, vocab: Optional[Vocabulary] = None) -> bool:
    vocab = vocabulary_for(p, vocab=vocab)
    return se_mask(p, vocab) != 0


def is_tautologous(p: Semantic, vocab: Optional[Vocabulary] = None) -> bool:
    vocab = vocabulary_for(p, vocab=vocab)
    return se_mask(p, vocab) == lattice(vocab).full


def is_well_defined(s: SESet) -> bool:
    lat = lattice(s.vocab)
    return all(s.mask & lat.total_bit[y] for _x, y in lat.bits(s.mask))


def canonical_program(s: SESet) -> Program:
    """A program whose SE models are exactly s.

    One constraint ':- Y, not (V-Y).' per missing (Y, Y), and for a missing
    (X, Y) below a present (Y, Y) the rule
    '(Y-X) ; not (Y-X) :- X, not (V-Y).', which is classically valid and whose
    reduct fails exactly at (X, Y).
    """
    if not is_well_defined(s):
        raise NotWellDefined(f"SE set {s} has (X,Y) without (Y,Y)")
    vocab, lat = s.vocab, lattice(s.vocab)
    if not vocab.atoms and not s.mask:
        raise VocabularyError("the empty SE set over an empty vocabulary has no program in the rule language")
    rules = []
    for (x, y), i in lat.index.items():
        if s.mask >> i & 1:
            continue
        outside = vocab.atoms_of(vocab.full_mask & ~y)
        if x == y:
            rules.append(Rule.make((), (), vocab.atoms_of(y), outside))
        elif s.mask & lat.total_bit[y]:
            gap = vocab.atoms_of(y & ~x)
            rules.append(Rule.make(gap, gap, vocab.atoms_of(x), outside))
    return Program(frozenset(rules))


def block_set(vocab: Vocabulary, theres: Iterable[Iterable[str]]) -> SESet:
    """All (X, Y) with Y among the given interpretations."""
    lat = lattice(vocab)
    ys = {vocab.mask(t) for t in theres}
    m = 0
    for i, (_x, y) in enumerate(lat.pairs):
        if y in ys:
            m |= 1 << i
    return SESet(vocab, m)


def mask_members(vocab: Vocabulary, mask: int) -> Sequence[Tuple[int, int]]:
    return list(lattice(vocab).bits(mask))
