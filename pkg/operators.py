"""Operator handles: one belief change operator closed over its configuration."""

from dataclasses import dataclass, replace
from typing import Dict, Optional, Tuple

import baselines
import ensconcement as ens
from partialmeet import FULL, SelectionPolicy, pm_contract, pm_revise
from program import LPError, Program, Vocabulary
from semantics import SESet, Semantic, canonical_program, complement, se_mask, vocabulary_for

REVISION = "revision"
CONTRACTION = "contraction"

PM = "pm"
ENS = "ens"
SUBSET_ENS = "subset-ens"
DISTANCE = "distance"
PM_AS = "pm-as"


@dataclass(frozen=True)
class Operator:
    name: str
    kind: str = REVISION
    policy: SelectionPolicy = FULL
    ensconcement: Optional[ens.Ensconcement] = None
    subset_ensconcement: Optional[ens.SubsetEnsconcement] = None

    def __post_init__(self):
        if self.kind not in (REVISION, CONTRACTION):
            raise LPError(f"unknown operator kind '{self.kind}'")
        if self.name not in (PM, ENS, SUBSET_ENS, DISTANCE, PM_AS):
            raise LPError(f"unknown operator '{self.name}'")
        if self.name in (DISTANCE, PM_AS) and self.kind != REVISION:
            raise LPError(f"operator '{self.name}' only revises")

    @property
    def id(self) -> str:
        return f"{self.name}_{'revise' if self.kind == REVISION else 'contract'}"

    @property
    def is_revision(self) -> bool:
        return self.kind == REVISION

    def describe(self) -> str:
        if self.name == PM:
            return f"{self.id}[{self.policy.describe()}]"
        if self.name == PM_AS:
            return f"{self.id}[{self.policy.describe()}]"
        return self.id

    def ensconcement_for(self, p: Program, vocab: Vocabulary) -> ens.Ensconcement:
        """The configured ensconcement restricted to P, or P's default one."""
        e = self.ensconcement
        if e is None:
            return ens.default_ensconcement(p, vocab)
        if e.program == p:
            return e
        return e.restrict(p)

    def subset_ensconcement_for(self, p: Program, vocab: Vocabulary) -> ens.SubsetEnsconcement:
        if self.subset_ensconcement is not None and self.subset_ensconcement.program == p:
            return self.subset_ensconcement
        return ens.lift_ensconcement(self.ensconcement_for(p, vocab))

    def outcome(self, p: Program, q: Semantic, vocab: Optional[Vocabulary] = None):
        """Raw outcome: an SESet for the distance operator, a Program otherwise."""
        vocab = vocabulary_for(p, q, vocab=vocab)
        if self.name == DISTANCE:
            return baselines.distance_revise_se(p, q, vocab)
        return self.apply(p, q, vocab)

    def apply(self, p: Program, q: Semantic, vocab: Optional[Vocabulary] = None) -> Program:
        vocab = vocabulary_for(p, q, vocab=vocab)
        revise = self.is_revision
        if self.name == PM:
            return (pm_revise if revise else pm_contract)(p, q, self.policy, vocab)
        if self.name == ENS:
            e = self.ensconcement_for(p, vocab)
            return (ens.ens_revise if revise else ens.ens_contract)(p, e, q, vocab)
        if self.name == SUBSET_ENS:
            s = self.subset_ensconcement_for(p, vocab)
            return (ens.subset_ens_revise if revise else ens.subset_ens_contract)(p, s, q, vocab)
        if self.name == DISTANCE:
            return canonical_program(baselines.distance_revise_se(p, q, vocab))
        return baselines.pm_revise_as(p, q, self.policy, vocab)


class CachedOperator:
    """Memoises an operator on one program P by the SE models of the input.

    For every operator here the part of P that survives depends on Q only
    through SE(Q), so revision results are that part plus Q.
    """

    def __init__(self, op: Operator, p: Program, vocab: Vocabulary):
        self.op = op
        self.p = p
        self.vocab = vocab
        self._core: Dict[int, Program] = {}
        if op.name in (ENS, SUBSET_ENS):
            # resolve once; raises EnsconcementError when P admits none
            e = op.ensconcement_for(p, vocab)
            op = replace(op, ensconcement=e)
            if op.name == SUBSET_ENS:
                op = replace(op, subset_ensconcement=op.subset_ensconcement_for(p, vocab))
            self.op = op

    def core(self, mask: int) -> Program:
        out = self._core.get(mask)
        if out is None:
            s = SESet(self.vocab, mask)
            if self.op.name == DISTANCE:
                out = canonical_program(baselines.distance_revise_se(self.p, s, self.vocab))
            else:
                out = self.op.apply(self.p, s, self.vocab)
            self._core[mask] = out
        return out

    def __call__(self, q: Program, mask: Optional[int] = None) -> Program:
        if mask is None:
            mask = se_mask(q, self.vocab)
        core = self.core(mask)
        if self.op.name == DISTANCE or not self.op.is_revision:
            return core
        return core | q


def operator_ids(spec: str) -> Tuple[str, ...]:
    return tuple(s.strip() for s in (spec or "").split(",") if s.strip())


def _outside(q: Semantic, vocab: Vocabulary) -> SESet:
    return complement(SESet(vocab, se_mask(q, vocab)))


def levi_revise(contract_op: Operator, p: Program, q: Semantic, vocab: Optional[Vocabulary] = None) -> Program:
    """Revision from contraction: (P - complement(Q)) + Q."""
    if contract_op.is_revision:
        raise LPError(f"{contract_op.id} is not a contraction operator")
    vocab = vocabulary_for(p, q, vocab=vocab)
    out = contract_op.apply(p, _outside(q, vocab), vocab)
    return out | q if isinstance(q, Program) else out


def harper_contract(revise_op: Operator, p: Program, q: Semantic, vocab: Optional[Vocabulary] = None) -> Program:
    """Contraction from revision: P intersected with P * complement(Q)."""
    if not revise_op.is_revision:
        raise LPError(f"{revise_op.id} is not a revision operator")
    vocab = vocabulary_for(p, q, vocab=vocab)
    return p & revise_op.apply(p, _outside(q, vocab), vocab)
