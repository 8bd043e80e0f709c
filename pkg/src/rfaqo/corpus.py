"""Reproducible random NFAs.

Sample ``index`` of a corpus draws from a Philox-4x64 counter-based generator
(numpy's ``Philox`` bit generator) keyed by ``(seed << 64) | index``, so any
sample can be regenerated on its own.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .automata import Nfa

MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class CorpusSpec:
    count: int = 500
    max_states: int = 6
    alphabet_size: int = 2
    density: float = 0.25
    p_initial: float = 0.3
    p_final: float = 0.4
    seed: int = 0

    def __post_init__(self):
        if self.count < 0:
            raise ValueError("count must be nonnegative")
        if self.max_states < 1:
            raise ValueError("max_states must be at least 1")
        if not 1 <= self.alphabet_size <= 26:
            raise ValueError("alphabet_size must be between 1 and 26")
        for name in ("density", "p_initial", "p_final"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1]")
        if not 0 <= self.seed <= MASK64:
            raise ValueError("seed must be a 64-bit unsigned integer")

    @property
    def alphabet(self) -> tuple:
        return tuple("abcdefghijklmnopqrstuvwxyz"[: self.alphabet_size])


def _generator(seed: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=(seed << 64) | (index & MASK64)))


def random_nfa(spec: CorpusSpec, index: int) -> Nfa:
    """Each (state, symbol, state) triple is a transition with probability
    ``spec.density``; state 0 is forced initial when no state was drawn."""
    rng = _generator(spec.seed, index)
    n = int(rng.integers(1, spec.max_states + 1))
    initial = [q for q in range(n) if rng.random() < spec.p_initial]
    final = [q for q in range(n) if rng.random() < spec.p_final]
    if not initial:
        initial = [0]
    alphabet = spec.alphabet
    trans = [
        (q, a, r)
        for q in range(n)
        for a in alphabet
        for r in range(n)
        if rng.random() < spec.density
    ]
    return Nfa.build(alphabet, n, initial, final, trans)


def corpus(spec: CorpusSpec) -> list:
    return [random_nfa(spec, i) for i in range(spec.count)]
