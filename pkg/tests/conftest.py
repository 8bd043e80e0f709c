import os
import sys

import pytest

from rfaqo.automata import parse_nfa
from rfaqo.corpus import CorpusSpec, random_nfa

HERE = os.path.dirname(__file__)
sys.path.insert(0, HERE)

FIXTURES = os.path.join(HERE, "fixtures")

# (alphabet size, transition density) per sub-corpus; 90 samples each.
CORPUS_MIX = [(2, 0.15), (2, 0.25), (2, 0.35), (3, 0.15), (3, 0.25), (3, 0.35)]
PER_MIX = 90


def corpus_specs(per_mix=PER_MIX):
    return [
        CorpusSpec(count=per_mix, max_states=6, alphabet_size=k, density=d, seed=1000 + i)
        for i, (k, d) in enumerate(CORPUS_MIX)
    ]


def build_corpus(per_mix=PER_MIX):
    return [(f"s{spec.seed}-{i}", random_nfa(spec, i)) for spec in corpus_specs(per_mix) for i in range(spec.count)]


def load_fixture(name):
    with open(os.path.join(FIXTURES, name), encoding="utf-8") as fh:
        return parse_nfa(fh.read())


@pytest.fixture(scope="session")
def corpus():
    return build_corpus()


@pytest.fixture
def six_state():
    return load_fixture("six_state.nfa")


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
