"""Residual automata built from quasiorders, from subset covering, and from
the residual lattice directly."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Optional

from .automata import (
    Automaton,
    Nfa,
    Word,
    as_nfa,
    determinize,
    format_subset,
    format_word,
    is_embedding,
    language_equiv,
    reverse,
)
from .lattice import LEFT, RIGHT, build_lattice
from .quasiorders import PrincipalSystem, build_automata_qo, build_nerode, closure_of_regular


class NotLanguagePreserving(ValueError):
    """The quasiorder's closure of ``L`` is strictly larger than ``L``."""


@dataclass(frozen=True)
class StateProvenance:
    witness: Word
    key: Hashable
    prime: bool = True


@dataclass(frozen=True)
class ConstructionResult:
    automaton: Nfa
    provenance: tuple

    @property
    def n(self) -> int:
        return self.automaton.n


def _require_preserving(sys: PrincipalSystem, L: Nfa) -> None:
    verdict = language_equiv(closure_of_regular(sys, L), L)
    if not verdict:
        raise NotLanguagePreserving(
            f"closure differs from the language on {format_word(verdict.witness)!r}"
        )


def _assemble(sys: PrincipalSystem, states, initial, final, edges) -> ConstructionResult:
    pos = {i: s for s, i in enumerate(states)}
    reps = sys.reps
    nfa = Nfa.build(
        sys.alphabet,
        len(states),
        (pos[i] for i in initial),
        (pos[i] for i in final),
        ((pos[i], a, pos[j]) for i, a, j in edges),
        names=[format_word(reps[i].witness) for i in states],
    )
    prov = tuple(StateProvenance(reps[i].witness, reps[i].key) for i in states)
    return ConstructionResult(nfa, prov)


def build_h_right(sys: PrincipalSystem, L: Automaton) -> ConstructionResult:
    """States are the L-prime principals; ``cl(u) -a-> cl(v)`` iff
    ``cl(u)·a ⊆ cl(v)``."""
    if sys.side != RIGHT:
        raise ValueError("build_h_right needs a right-sided system")
    L = as_nfa(L)
    _require_preserving(sys, L)
    states = sys.prime_indices()
    eps = sys.class_of(())
    leq = sys.leq
    initial = [i for i in states if leq[i][eps]]
    final = [i for i in states if sys.in_L[i]]
    edges = []
    for i in states:
        w = sys.reps[i].witness
        for a in sys.alphabet:
            c = sys.class_of(w + (a,))
            edges.extend((i, a, j) for j in states if leq[j][c])
    return _assemble(sys, states, initial, final, edges)


def build_h_left(sys: PrincipalSystem, L: Automaton) -> ConstructionResult:
    """Dual of :func:`build_h_right`: ``cl(u) -a-> cl(v)`` iff
    ``a·cl(v) ⊆ cl(u)``; the result is a co-RFA."""
    if sys.side != LEFT:
        raise ValueError("build_h_left needs a left-sided system")
    L = as_nfa(L)
    _require_preserving(sys, L)
    states = sys.prime_indices()
    eps = sys.class_of(())
    leq = sys.leq
    initial = [i for i in states if sys.in_L[i]]
    final = [i for i in states if leq[i][eps]]
    edges = []
    for j in states:
        w = sys.reps[j].witness
        for a in sys.alphabet:
            c = sys.class_of((a,) + w)
            edges.extend((i, a, j) for i in states if leq[i][c])
    edges.sort(key=lambda e: (e[0], sys.alphabet.index(e[1]), e[2]))
    return _assemble(sys, states, initial, final, edges)


def f_right(L: Automaton) -> ConstructionResult:
    return build_h_right(build_nerode(L, RIGHT), L)


def f_left(L: Automaton) -> ConstructionResult:
    return build_h_left(build_nerode(L, LEFT), L)


def g_right(a: Automaton) -> ConstructionResult:
    return build_h_right(build_automata_qo(a, RIGHT), a)


def g_left(a: Automaton) -> ConstructionResult:
    return build_h_left(build_automata_qo(a, LEFT), a)


def coverable_subsets(a: Automaton) -> list:
    """Per reachable subset of the determinization (in discovery order),
    whether it is the union of the reachable subsets it strictly contains."""
    d = determinize(a)
    out = []
    for s in d.labels:
        below = [t for t in d.labels if t < s]
        out.append(frozenset().union(*below) == s)
    return out


def denis_residualize(a: Automaton) -> ConstructionResult:
    """Keep the reachable subsets that are not coverable; a subset ``T`` is a
    successor of ``S`` on ``a`` iff ``T ⊆ post(S, a)``."""
    a = as_nfa(a)
    d = determinize(a)
    cover = coverable_subsets(a)
    states = [i for i in range(d.n) if not cover[i]]
    subsets = [d.labels[i] for i in states]
    initial = [s for s, S in enumerate(subsets) if S <= a.initial]
    final = [s for s, S in enumerate(subsets) if S & a.final]
    edges = []
    for s, i in enumerate(states):
        for k, sym in enumerate(a.alphabet):
            image = d.labels[d.delta[i][k]]
            edges.extend((s, sym, t) for t, T in enumerate(subsets) if T <= image)
    nfa = Nfa.build(
        a.alphabet,
        len(states),
        initial,
        final,
        edges,
        names=[format_subset(S, a.names) for S in subsets],
    )
    access = d.access_words
    prov = tuple(StateProvenance(access[i], d.labels[i]) for i in states)
    return ConstructionResult(nfa, prov)


def canonical_rfa(L: Automaton) -> ConstructionResult:
    """States are the prime quotients; built from the residual lattice alone,
    independently of the quasiorder constructions."""
    lat = build_lattice(L, RIGHT)
    d, incl = lat.min_dfa, lat.incl
    primes = [p for p in range(lat.size) if lat.prime[p]]
    pos = {p: s for s, p in enumerate(primes)}
    initial = [pos[p] for p in primes if incl[p][d.initial]]
    final = [pos[p] for p in primes if p in d.final]
    edges = []
    for p in primes:
        for k, sym in enumerate(d.alphabet):
            image = d.delta[p][k]
            edges.extend((pos[p], sym, pos[q]) for q in primes if incl[q][image])
    nfa = Nfa.build(
        d.alphabet,
        len(primes),
        initial,
        final,
        edges,
        names=[format_word(lat.access_word[p]) for p in primes],
    )
    prov = tuple(StateProvenance(lat.access_word[p], p) for p in primes)
    return ConstructionResult(nfa, prov)


def double_reversal_rfa(a: Automaton) -> ConstructionResult:
    """Right-automata residualization applied twice, around two reversals."""
    first = g_right(reverse(a)).automaton
    return g_right(reverse(first))


def gr_embedding(gr: ConstructionResult, nres: ConstructionResult) -> Optional[dict]:
    """Map each state of ``g_right(a)`` to the ``denis_residualize(a)`` state
    with the same ``post`` subset, if that map is an induced sub-automaton
    embedding."""
    where = {p.key: s for s, p in enumerate(nres.provenance)}
    mapping = {}
    for s, p in enumerate(gr.provenance):
        if p.key not in where:
            return None
        mapping[s] = where[p.key]
    return mapping if is_embedding(gr.automaton, nres.automaton, mapping, induced=True) else None
