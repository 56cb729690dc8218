import pytest

import config
import logbot
from program import Vocabulary, parse_program
from semantics import SESet

AB = Vocabulary.of("a", "b")


@pytest.fixture(autouse=True)
def offline(monkeypatch):
    """No webhooks and no progress chatter during tests."""
    for name in ("DISCORD_LOGS_URL", "DISCORD_ERR_URL", "DISCORD_WEBHOOK_URL"):
        monkeypatch.setattr(config, name, None)
    logbot.set_quiet(True)
    yield
    logbot.set_quiet(False)


@pytest.fixture
def ab():
    return AB


@pytest.fixture
def lp():
    def parse(text, vocab=AB):
        program, _ = parse_program(text, vocab)
        return program
    return parse


@pytest.fixture
def se():
    """se("∅,∅ ∅,b b,b") -> SESet over {a, b} (single-letter atoms)."""
    def build(text, vocab=AB):
        pairs = []
        for item in text.split():
            x, y = item.split(",")
            pairs.append(([] if x == "∅" else list(x), [] if y == "∅" else list(y)))
        return SESet.from_pairs(vocab, pairs)
    return build
