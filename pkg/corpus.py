import random
from dataclasses import dataclass
from itertools import combinations
from typing import List, Optional, Tuple

import config
from program import Program, ProgramTooLarge, Rule, Vocabulary, parse_program, read_program

# P1..P9 over {a, b} plus the two facts
DEFAULT_POOL = """\
:- a.
:- b.
a :- b.
b :- a.
:- a, b.
:- b, not a.
:- a, not b.
a ; not b.
b ; not a.
a.
b.
"""


@dataclass(frozen=True)
class Corpus:
    vocab: Vocabulary
    pool: Tuple[Rule, ...]
    max_rules: int = config.MAX_RULES
    max_input_rules: int = config.MAX_INPUT_RULES

    def __post_init__(self):
        if len(self.vocab) > config.MAX_VOCAB:
            raise ProgramTooLarge(f"corpus vocabulary has {len(self.vocab)} atoms (cap {config.MAX_VOCAB})")
        if len(self.pool) > config.MAX_POOL:
            raise ProgramTooLarge(f"rule pool has {len(self.pool)} rules (cap {config.MAX_POOL})")
        object.__setattr__(self, "pool", tuple(sorted(set(self.pool), key=lambda r: r.sort_key)))

    @classmethod
    def from_text(cls, text: str, vocab: Optional[Vocabulary] = None, **caps) -> "Corpus":
        pool, vocab = parse_program(text, vocab)
        return cls(vocab, tuple(pool.sorted()), **caps)

    @classmethod
    def from_file(cls, path: str, vocab: Optional[Vocabulary] = None, **caps) -> "Corpus":
        pool, vocab = read_program(path, vocab)
        return cls(vocab, tuple(pool.sorted()), **caps)

    @classmethod
    def default(cls, **caps) -> "Corpus":
        return cls.from_text(DEFAULT_POOL, Vocabulary.of("a", "b"), **caps)

    def _upto(self, size: int) -> List[Program]:
        out = []
        for n in range(min(size, len(self.pool)) + 1):
            for combo in combinations(self.pool, n):
                out.append(Program(frozenset(combo)))
        return out

    def programs(self) -> List[Program]:
        """Every program of at most max_rules pool rules, by size then pool order."""
        return self._upto(self.max_rules)

    def inputs(self) -> List[Program]:
        """Programs used as second and third postulate arguments."""
        return self._upto(self.max_input_rules)

    def sample(self, n: int, seed: int = config.SEED) -> List[Program]:
        rng = random.Random(seed)
        out = []
        for _ in range(n):
            size = rng.randint(0, len(self.pool))
            out.append(Program(frozenset(rng.sample(self.pool, size))))
        return out

    def describe(self) -> str:
        return (f"vocab {{{', '.join(self.vocab)}}}, pool {len(self.pool)} rules, "
                f"P <= {self.max_rules} rules, Q/R <= {self.max_input_rules} rules")
