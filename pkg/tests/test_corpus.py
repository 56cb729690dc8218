import pytest

from corpus import Corpus
from program import Program, ProgramTooLarge


def test_default_pool():
    corpus = Corpus.default()
    assert len(corpus.pool) == 11
    assert corpus.vocab.atoms == ("a", "b")


def test_enumeration_sizes():
    corpus = Corpus.default(max_rules=2, max_input_rules=1)
    programs = corpus.programs()
    assert len(programs) == 1 + 11 + 55
    assert programs[0] == Program()
    assert len(corpus.inputs()) == 12
    assert "pool 11 rules" in corpus.describe()


def test_samples_are_seeded():
    corpus = Corpus.default()
    assert corpus.sample(20, seed=7) == corpus.sample(20, seed=7)
    assert all(p <= Program(frozenset(corpus.pool)) for p in corpus.sample(20))


def test_pool_from_file(tmp_path):
    path = tmp_path / "pool.lp"
    path.write_text("#vocab a b c.\na.\nc :- not b.\na.\n", encoding="utf-8")
    corpus = Corpus.from_file(str(path), max_rules=1)
    assert len(corpus.pool) == 2
    assert len(corpus.vocab) == 3
    assert len(corpus.programs()) == 3


def test_caps():
    with pytest.raises(ProgramTooLarge):
        Corpus.from_text("a. b. c. d. e.")
