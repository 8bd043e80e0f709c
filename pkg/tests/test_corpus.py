import pytest

from rfaqo.automata import render_nfa
from rfaqo.corpus import CorpusSpec, corpus, random_nfa

FROZEN = """alphabet a b
states 3
initial 0
final
trans 0 b 1
trans 0 b 2
trans 2 a 2
trans 2 b 1
"""


def test_frozen_sample():
    assert render_nfa(random_nfa(CorpusSpec(seed=7, max_states=3), 0)) == FROZEN


def test_samples_are_independent():
    spec = CorpusSpec(count=20, seed=3)
    full = corpus(spec)
    assert full == corpus(spec)
    assert random_nfa(spec, 13) == full[13]
    # the count does not shift other samples
    assert corpus(CorpusSpec(count=5, seed=3)) == full[:5]


def test_seeds_differ():
    a = corpus(CorpusSpec(count=20, seed=1))
    b = corpus(CorpusSpec(count=20, seed=2))
    assert a != b


def test_shape_bounds():
    spec = CorpusSpec(count=200, max_states=4, alphabet_size=3, seed=5)
    sizes = set()
    for a in corpus(spec):
        assert 1 <= a.n <= 4
        assert a.alphabet == ("a", "b", "c")
        assert a.initial
        sizes.add(a.n)
    assert sizes == {1, 2, 3, 4}


def test_density_extremes():
    for a in corpus(CorpusSpec(count=20, density=0.0, seed=9)):
        assert a.num_transitions == 0
    for a in corpus(CorpusSpec(count=20, density=1.0, seed=9)):
        assert a.num_transitions == a.n * a.n * 2


def test_no_initial_draw_forces_state_zero():
    for a in corpus(CorpusSpec(count=20, p_initial=0.0, p_final=1.0, seed=4)):
        assert a.initial == {0}
        assert a.final == set(range(a.n))


@pytest.mark.parametrize(
    "kw",
    [
        {"count": -1},
        {"max_states": 0},
        {"alphabet_size": 0},
        {"alphabet_size": 27},
        {"density": 1.5},
        {"p_final": -0.1},
        {"seed": -1},
        {"seed": 1 << 64},
    ],
)
def test_invalid_specs(kw):
    with pytest.raises(ValueError):
        CorpusSpec(**kw)
