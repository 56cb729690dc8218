"""
Modules of a program relevant to an input, and localized revision/contraction
(ModChange): conflicts are resolved module combination by module combination,
smallest combinations first, instead of on the whole program.
"""

from dataclasses import dataclass
from itertools import combinations
from typing import FrozenSet, List, Optional, Tuple

from operators import Operator
from program import LPError, Program, Rule, Vocabulary
from semantics import SESet, Semantic, lattice, program_se_mask, se_mask, vocabulary_for


class ModuleError(LPError):
    pass


@dataclass(frozen=True)
class ProgramModule:
    anchor_rule: Rule
    anchor_atom: str
    rules: Program

    def __str__(self):
        return f"M^{{{self.anchor_rule}}}|{self.anchor_atom} = {{{', '.join(str(r) for r in self.rules.sorted())}}}"


@dataclass(frozen=True)
class ModuleFamily:
    modules: Tuple[ProgramModule, ...]
    residue: Program

    @property
    def programs(self) -> List[Program]:
        """Distinct module rule sets in canonical order."""
        seen = {}
        for m in self.modules:
            seen.setdefault(m.rules, None)
        return sorted(seen, key=lambda p: p.key)

    @property
    def union(self) -> Program:
        out = frozenset()
        for m in self.modules:
            out |= m.rules.rules
        return Program(out)


def extract_module(p: Program, r: Rule, a: str) -> ProgramModule:
    if r not in p.rules:
        raise ModuleError(f"rule '{r}' is not in the program")
    if a not in r.atoms:
        raise ModuleError(f"atom '{a}' does not occur in '{r}'")
    module = {r}
    while True:
        reach = set(r.atoms)
        for m in module:
            reach |= m.atoms
        reach.discard(a)
        grown = module | {s for s in p.rules if s.atoms & reach}
        if grown == module:
            return ProgramModule(r, a, Program(frozenset(module)))
        module = grown


def _atoms_of(q: Semantic) -> FrozenSet[str]:
    # an SE set carries no syntax; every atom of its vocabulary counts
    if isinstance(q, SESet):
        return frozenset(q.vocab.atoms)
    return q.atoms


def relevant_modules(p: Program, q: Semantic) -> ModuleFamily:
    shared = _atoms_of(q)
    modules = []
    for r in p.sorted():
        for a in sorted(r.atoms & shared):
            modules.append(extract_module(p, r, a))
    covered = frozenset()
    for m in modules:
        covered |= m.rules.rules
    return ModuleFamily(tuple(modules), Program(p.rules - covered))


def _collapse(mods: List[Program]) -> List[Program]:
    return sorted(set(mods), key=lambda m: m.key)


def mod_change(family: ModuleFamily, op: Operator, q: Semantic,
               vocab: Optional[Vocabulary] = None) -> List[Program]:
    """Run ModChange over the family; returns the changed module rule sets."""
    mods = family.programs
    vocab = vocabulary_for(family.union, family.residue, q, vocab=vocab)
    qm = se_mask(q, vocab)
    region = qm if op.is_revision else lattice(vocab).full & ~qm
    n = 1
    while n <= len(mods):
        for combo in combinations(range(len(mods)), n):
            union = Program(frozenset().union(*(mods[i].rules for i in combo)))
            if program_se_mask(union, vocab) & region:
                continue
            changed = op.apply(union, q, vocab)
            if op.is_revision and isinstance(q, Program):
                changed = changed - q
            for i in combo:
                mods[i] = changed
        mods = _collapse(mods)
        n += 1
    return mods


def localized_change(p: Program, op: Operator, q: Semantic,
                     vocab: Optional[Vocabulary] = None) -> Program:
    vocab = vocabulary_for(p, q, vocab=vocab)
    family = relevant_modules(p, q)
    changed = mod_change(family, op, q, vocab)
    out = family.residue
    for m in changed:
        out = out | m
    if op.is_revision and isinstance(q, Program):
        out = out | q
    return out
