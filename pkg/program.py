"""
Generalized logic programs: rules with disjunctive heads and default negation
in heads and bodies, finite rule sets, and the vocabulary they live in.

Text format (UTF-8, '%' starts a comment running to end of line):

    #vocab a b c.          % optional declaration
    a ; not b :- c, not d.
    :- a, b.               % constraint
    a.                     % fact

Rules are normalized on construction (each part sorted, duplicates dropped),
so two rules that differ only by literal order compare equal and a Program is
a plain set of them.
"""

import re
from dataclasses import dataclass
from typing import FrozenSet, Iterable, Iterator, List, Optional, Tuple

ATOM_PATTERN = r"[a-z][A-Za-z0-9_]*"
_ATOM_RE = re.compile(ATOM_PATTERN + r"\Z")

_TOKEN_RE = re.compile(
    r"(?P<ws>[ \t\r]+)"
    r"|(?P<nl>\n)"
    r"|(?P<comment>%[^\n]*)"
    r"|(?P<vocab>\#vocab\b)"
    r"|(?P<if>:-)"
    r"|(?P<atom>" + ATOM_PATTERN + r")"
    r"|(?P<punct>[.;,])"
)


# -----------------------
# Errors
# -----------------------
class LPError(Exception):
    """Base class for every domain error raised by this project."""


class ParseError(LPError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class VocabularyError(LPError):
    pass


class ProgramTooLarge(LPError):
    pass


# -----------------------
# Vocabulary
# -----------------------
@dataclass(frozen=True)
class Vocabulary:
    """Ordered finite set of atom names; order is lexicographic."""

    atoms: Tuple[str, ...] = ()

    def __post_init__(self):
        for a in self.atoms:
            if not _ATOM_RE.match(a) or a == "not":
                raise VocabularyError(f"invalid atom name '{a}'")
        object.__setattr__(self, "atoms", tuple(sorted(set(self.atoms))))

    @classmethod
    def of(cls, *names: str) -> "Vocabulary":
        return cls(tuple(names))

    @classmethod
    def parse(cls, text: str) -> "Vocabulary":
        """'a,b c' -> Vocabulary(a, b, c)."""
        return cls(tuple(n for n in re.split(r"[,\s]+", text or "") if n))

    def __len__(self) -> int:
        return len(self.atoms)

    def __iter__(self) -> Iterator[str]:
        return iter(self.atoms)

    def __contains__(self, atom) -> bool:
        return atom in self.atoms

    def __str__(self) -> str:
        return " ".join(self.atoms)

    def union(self, atoms: Iterable[str]) -> "Vocabulary":
        return Vocabulary(self.atoms + tuple(atoms))

    def bit(self, atom: str) -> int:
        try:
            return 1 << self.atoms.index(atom)
        except ValueError:
            raise VocabularyError(f"atom '{atom}' is not in vocabulary {{{', '.join(self.atoms)}}}")

    def mask(self, atoms: Iterable[str]) -> int:
        m = 0
        for a in atoms:
            m |= self.bit(a)
        return m

    def atoms_of(self, mask: int) -> FrozenSet[str]:
        return frozenset(a for i, a in enumerate(self.atoms) if mask >> i & 1)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.atoms)) - 1


# -----------------------
# Rules and programs
# -----------------------
def _part(atoms: Iterable[str]) -> Tuple[str, ...]:
    return tuple(sorted(set(atoms)))


@dataclass(frozen=True)
class Rule:
    """a_1 ; ... ; not b_1 ; ... :- c_1, ..., not d_1, ...

    head_pos/head_neg/body_pos/body_neg are H+, H-, B+ and B-.
    """

    head_pos: Tuple[str, ...] = ()
    head_neg: Tuple[str, ...] = ()
    body_pos: Tuple[str, ...] = ()
    body_neg: Tuple[str, ...] = ()

    def __post_init__(self):
        for name in ("head_pos", "head_neg", "body_pos", "body_neg"):
            object.__setattr__(self, name, _part(getattr(self, name)))

    @classmethod
    def make(cls, head_pos=(), head_neg=(), body_pos=(), body_neg=()) -> "Rule":
        return cls(tuple(head_pos), tuple(head_neg), tuple(body_pos), tuple(body_neg))

    @property
    def atoms(self) -> FrozenSet[str]:
        return frozenset(self.head_pos + self.head_neg + self.body_pos + self.body_neg)

    @property
    def is_fact(self) -> bool:
        return len(self.head_pos) == 1 and not (self.head_neg or self.body_pos or self.body_neg)

    @property
    def is_constraint(self) -> bool:
        return not self.head_pos and not self.head_neg

    @property
    def sort_key(self) -> Tuple[bool, str]:
        # constraints print after rules with a head
        return (self.is_constraint, str(self))

    def __str__(self) -> str:
        head = " ; ".join(list(self.head_pos) + [f"not {a}" for a in self.head_neg])
        body = ", ".join(list(self.body_pos) + [f"not {a}" for a in self.body_neg])
        if not body:
            # an empty head with an empty body is the unsatisfiable constraint
            return f"{head}." if head else ":- ."
        if not head:
            return f":- {body}."
        return f"{head} :- {body}."

    def __repr__(self) -> str:
        return f"Rule({str(self)!r})"


@dataclass(frozen=True)
class Program:
    """Finite set of normalized rules."""

    rules: FrozenSet[Rule] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "rules", frozenset(self.rules))

    @classmethod
    def of(cls, *rules: Rule) -> "Program":
        return cls(frozenset(rules))

    def __iter__(self) -> Iterator[Rule]:
        return iter(self.sorted())

    def __len__(self) -> int:
        return len(self.rules)

    def __contains__(self, rule) -> bool:
        return rule in self.rules

    def __bool__(self) -> bool:
        return bool(self.rules)

    def __or__(self, other: "Program") -> "Program":
        return Program(self.rules | other.rules)

    def __and__(self, other: "Program") -> "Program":
        return Program(self.rules & other.rules)

    def __sub__(self, other: "Program") -> "Program":
        return Program(self.rules - other.rules)

    def __le__(self, other: "Program") -> bool:
        return self.rules <= other.rules

    def __lt__(self, other: "Program") -> bool:
        return self.rules < other.rules

    def __ge__(self, other: "Program") -> bool:
        return self.rules >= other.rules

    def __gt__(self, other: "Program") -> bool:
        return self.rules > other.rules

    def __str__(self) -> str:
        return print_program(self)

    def __repr__(self) -> str:
        return "Program{" + " ".join(str(r) for r in self.sorted()) + "}"

    def sorted(self) -> List[Rule]:
        return sorted(self.rules, key=lambda r: r.sort_key)

    @property
    def atoms(self) -> FrozenSet[str]:
        out = set()
        for r in self.rules:
            out |= r.atoms
        return frozenset(out)

    @property
    def key(self) -> str:
        """Canonical one-line serialization used to order and name subsets."""
        return " ".join(str(r) for r in self.sorted())


EMPTY = Program()


# -----------------------
# Parser
# -----------------------
def _tokens(text: str):
    line, col, pos = 1, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        value = m.group(kind)
        if kind == "nl":
            line, col = line + 1, 1
        else:
            if kind not in ("ws", "comment"):
                yield kind, value, line, col
            col += len(value)
        pos = m.end()
    yield "eof", "", line, col


class _Parser:
    def __init__(self, text: str):
        self._toks = list(_tokens(text))
        self._i = 0
        self.rules: List[Rule] = []
        self.declared: List[str] = []
        self.has_directive = False
        self.positions = {}  # atom -> first (line, col)

    def _peek(self):
        return self._toks[self._i]

    def _next(self):
        tok = self._toks[self._i]
        self._i += 1
        return tok

    def _expect(self, value: str):
        kind, v, line, col = self._next()
        if v != value:
            shown = v or "end of input"
            raise ParseError(f"expected '{value}' but found '{shown}'", line, col)

    def _atom(self) -> str:
        kind, v, line, col = self._next()
        if kind != "atom" or v == "not":
            shown = v or "end of input"
            raise ParseError(f"expected an atom but found '{shown}'", line, col)
        self.positions.setdefault(v, (line, col))
        return v

    def _literal(self):
        kind, v, _line, _col = self._peek()
        if kind == "atom" and v == "not":
            self._next()
            return False, self._atom()
        return True, self._atom()

    def _literals(self, sep: str):
        pos, neg = [], []
        while True:
            positive, atom = self._literal()
            (pos if positive else neg).append(atom)
            if self._peek()[1] != sep:
                return pos, neg
            self._next()

    def parse(self):
        while self._peek()[0] != "eof":
            kind, v, line, col = self._peek()
            if kind == "vocab":
                self._next()
                self.has_directive = True
                while self._peek()[0] == "atom":
                    self.declared.append(self._atom())
                self._expect(".")
                continue
            head_pos, head_neg = [], []
            if v != ":-":
                head_pos, head_neg = self._literals(";")
            body_pos, body_neg = [], []
            if self._peek()[1] == ":-":
                self._next()
                body_pos, body_neg = self._literals(",")
            elif not head_pos and not head_neg:
                raise ParseError("empty rule", line, col)
            self._expect(".")
            self.rules.append(Rule.make(head_pos, head_neg, body_pos, body_neg))
        return self


def parse_program(text: str, vocab: Optional[Vocabulary] = None) -> Tuple[Program, Vocabulary]:
    """Parse program text; returns the program and its effective vocabulary.

    The effective vocabulary is the declared one (argument and/or #vocab
    directive) united with the program's atoms. When anything is declared,
    atoms outside the declaration are rejected.
    """
    p = _Parser(text).parse()
    program = Program(frozenset(p.rules))
    declared = None
    if vocab is not None or p.has_directive:
        declared = Vocabulary(tuple(vocab.atoms if vocab is not None else ()) + tuple(p.declared))
        for atom in sorted(program.atoms):
            if atom not in declared:
                line, col = p.positions[atom]
                raise VocabularyError(f"line {line}, column {col}: atom '{atom}' is outside the declared vocabulary")
    base = declared if declared is not None else Vocabulary()
    return program, base.union(program.atoms)


def parse_rule(text: str) -> Rule:
    program, _ = parse_program(text)
    if len(program) != 1:
        raise LPError(f"expected exactly one rule in {text!r}")
    return next(iter(program))


def read_program(path: str, vocab: Optional[Vocabulary] = None) -> Tuple[Program, Vocabulary]:
    with open(path, encoding="utf-8") as f:
        return parse_program(f.read(), vocab)


def print_program(program: Program) -> str:
    return "".join(f"{r}\n" for r in program.sorted())


def program_union(p: Program, q: Program) -> Program:
    """Expansion P + Q."""
    return p | q
