"""Finite presentations of the language-based (Nerode) and automata-based
quasiorders over words, on either side, with their principals and closures.

A :class:`PrincipalSystem` keeps one representative per equivalence class of
the quasiorder.  Classes are found with a complete DFA, the *classifier*,
read on ``w`` for right quasiorders and on ``w`` reversed for left ones.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Optional, Sequence

from .automata import (
    Automaton,
    Dfa,
    Nfa,
    Word,
    _same_alphabet,
    as_nfa,
    determinize,
    reverse,
    with_final,
)
from .lattice import LEFT, RIGHT, ResidualLattice, _check_side, build_lattice

LANGUAGE = "language"
AUTOMATON = "automaton"


@dataclass(frozen=True)
class Principal:
    """Representative of one principal ``cl(witness)``.

    ``key`` is what identifies the class: a minimal-DFA state for Nerode
    quasiorders, a ``post``/``pre`` subset for automata-based ones.
    """

    witness: Word
    key: Hashable


@dataclass(frozen=True, eq=False)
class PrincipalSystem:
    side: str
    source: str
    classifier: Dfa
    reps: tuple
    leq: tuple
    in_L: tuple
    lattice: ResidualLattice

    @property
    def alphabet(self) -> tuple:
        return self.classifier.alphabet

    def __len__(self) -> int:
        return len(self.reps)

    def class_of(self, word: Sequence[str]) -> int:
        if self.side == RIGHT:
            return self.classifier.run(word)
        return self.classifier.run(tuple(reversed(tuple(word))))

    def strict(self, i: int, j: int) -> bool:
        return self.leq[i][j] and not self.leq[j][i]

    def word_leq(self, u: Sequence[str], v: Sequence[str]) -> bool:
        return self.leq[self.class_of(u)][self.class_of(v)]

    @cached_property
    def residual_state(self) -> tuple:
        """Lattice state of the quotient of ``L`` by each witness."""
        return tuple(self.lattice.state_of(r.witness) for r in self.reps)

    @cached_property
    def composite(self) -> tuple:
        return tuple(
            self.lattice.is_union(
                self.residual_state[i],
                {self.residual_state[j] for j in range(len(self.reps)) if self.strict(j, i)},
            )
            for i in range(len(self.reps))
        )

    def prime_indices(self) -> list:
        return [i for i in range(len(self.reps)) if not self.composite[i]]

    def accepting_view(self, classes) -> Nfa:
        """Automaton for ``{w : class_of(w) ∈ classes}``."""
        view = with_final(self.classifier, classes)
        return view if self.side == RIGHT else reverse(view)


def _system(side, source, classifier, keys, leq, in_L, lattice) -> PrincipalSystem:
    access = classifier.access_words
    if side == LEFT:
        access = tuple(tuple(reversed(w)) for w in access)
    reps = tuple(Principal(w, k) for w, k in zip(access, keys))
    return PrincipalSystem(side, source, classifier, reps, leq, in_L, lattice)


def build_nerode(L: Automaton, side: str = RIGHT) -> PrincipalSystem:
    """Language-based quasiorder: ``u ⪯ v`` iff the quotient of ``L`` by ``u``
    is included in that by ``v`` (left or right quotients per ``side``)."""
    _check_side(side)
    lat = build_lattice(L, side)
    d = lat.min_dfa
    in_L = tuple((p in d.final) for p in range(d.n))
    return _system(side, LANGUAGE, d, tuple(range(d.n)), lat.incl, in_L, lat)


def build_automata_qo(a: Automaton, side: str = RIGHT) -> PrincipalSystem:
    """Automata-based quasiorder: ``u ⪯ v`` iff ``post_u(I) ⊆ post_v(I)``
    (right) or ``pre_u(F) ⊆ pre_v(F)`` (left)."""
    _check_side(side)
    a = as_nfa(a)
    d = determinize(a if side == RIGHT else reverse(a))
    keys = d.labels
    n = d.n
    leq = tuple(tuple(keys[i] <= keys[j] for j in range(n)) for i in range(n))
    target = a.final if side == RIGHT else a.initial
    in_L = tuple(bool(k & target) for k in keys)
    return _system(side, AUTOMATON, d, keys, leq, in_L, build_lattice(a, side))


def is_L_composite(sys: PrincipalSystem, i: int) -> bool:
    """Whether the quotient by the witness of ``i`` is the union of the
    quotients by all strictly smaller words."""
    return sys.composite[i]


def _classes_meeting(sys: PrincipalSystem, s: Nfa) -> set:
    """Classifier states whose class intersects ``L(s)``."""
    if sys.side == LEFT:
        s = reverse(s)
    d = sys.classifier
    start = (s.init_mask, d.initial)
    seen = {start}
    queue = deque([start])
    hit = set()
    while queue:
        m, p = queue.popleft()
        if m & s.final_mask:
            hit.add(p)
        for k in range(len(s.alphabet)):
            nxt = (s.step(m, k), d.delta[p][k])
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return hit


def closure_of_regular(sys: PrincipalSystem, s: Automaton) -> Nfa:
    """Automaton for the upward closure ``{w : ∃x ∈ L(s), x ⪯ w}``."""
    s = as_nfa(s)
    _same_alphabet(s, sys.classifier)
    seeds = _classes_meeting(sys, s)
    up = {j for j in range(len(sys)) if any(sys.leq[i][j] for i in seeds)}
    return sys.accepting_view(up)


def principal_language(sys: PrincipalSystem, i: int) -> Nfa:
    """Automaton for ``cl(witness_i) = {w : witness_i ⪯ w}``."""
    return sys.accepting_view([j for j in range(len(sys)) if sys.leq[i][j]])


def is_L_preserving(sys: PrincipalSystem, L: Automaton) -> bool:
    from .automata import language_equiv

    return bool(language_equiv(closure_of_regular(sys, L), L))


def prime_count(sys: PrincipalSystem) -> int:
    return len(sys.prime_indices())


def same_relation(a: PrincipalSystem, b: PrincipalSystem) -> bool:
    """Whether two systems on the same side define the same relation on
    words; compared on every pair of representatives of both systems."""
    if a.side != b.side:
        raise ValueError("systems are on different sides")
    words = [r.witness for r in a.reps] + [r.witness for r in b.reps]
    ca = [a.class_of(w) for w in words]
    cb = [b.class_of(w) for w in words]
    return all(
        a.leq[ca[x]][ca[y]] == b.leq[cb[x]][cb[y]] for x in range(len(words)) for y in range(len(words))
    )


def refines(fine: PrincipalSystem, coarse: PrincipalSystem) -> bool:
    """Whether ``fine ⊆ coarse`` as relations on words."""
    if fine.side != coarse.side:
        raise ValueError("systems are on different sides")
    words = [r.witness for r in fine.reps]
    cc = [coarse.class_of(w) for w in words]
    return all(
        coarse.leq[cc[i]][cc[j]]
        for i in range(len(words))
        for j in range(len(words))
        if fine.leq[i][j]
    )
