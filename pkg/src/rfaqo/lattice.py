"""Quotients of a regular language, their inclusion order, and prime/composite
flags; plus the residual-automaton classifiers built on them."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple, Optional, Sequence

from .automata import (
    Automaton,
    Dfa,
    Nfa,
    as_nfa,
    determinize,
    disjoint_union,
    empty_nfa,
    language_equiv,
    minimize,
    reverse,
    right_language_classes,
    with_final,
)

RIGHT = "right"
LEFT = "left"


def _check_side(side: str) -> None:
    if side not in (RIGHT, LEFT):
        raise ValueError(f"side must be 'right' or 'left', not {side!r}")


def _inclusion(d: Dfa) -> tuple:
    """Greatest fixpoint: ``(p, q)`` survives iff acceptance of ``p`` implies
    acceptance of ``q`` and all successor pairs survive."""
    n, nsym = d.n, len(d.alphabet)
    rel = [[(p not in d.final) or (q in d.final) for q in range(n)] for p in range(n)]
    changed = True
    while changed:
        changed = False
        for p in range(n):
            rp = rel[p]
            for q in range(n):
                if rp[q] and not all(rel[d.delta[p][k]][d.delta[q][k]] for k in range(nsym)):
                    rp[q] = False
                    changed = True
    return tuple(tuple(row) for row in rel)


@dataclass(frozen=True, eq=False)
class ResidualLattice:
    """The finitely many quotients of ``L`` as states of its minimal DFA.

    For ``side="right"`` the DFA is the minimal DFA of ``L`` and state ``p``
    stands for ``u⁻¹L`` where ``u`` reaches ``p``.  For ``side="left"`` it is
    the minimal DFA of the reversed language; state ``p`` reached by ``u^R``
    stands for ``Lu⁻¹`` (stored reversed).
    """

    side: str
    min_dfa: Dfa
    incl: tuple
    access_word: tuple
    _union_cache: dict = field(default_factory=dict, repr=False)

    @cached_property
    def prime(self) -> tuple:
        """``prime[p]``: the quotient at ``p`` is not the union of the
        quotients it strictly contains (so the empty quotient is composite)."""
        return tuple(not self.is_union(p, self.strictly_below(p)) for p in range(self.size))

    @property
    def size(self) -> int:
        return self.min_dfa.n

    def state_of(self, word: Sequence[str]) -> int:
        """Lattice state of the quotient of ``L`` by ``word`` on this side."""
        if self.side == RIGHT:
            return self.min_dfa.run(word)
        return self.min_dfa.run(tuple(reversed(tuple(word))))

    def strictly_below(self, p: int) -> list:
        return [q for q in range(self.size) if q != p and self.incl[q][p]]

    def _view(self, states: Iterable[int]) -> Nfa:
        return as_nfa(self.min_dfa).replace(initial=states)

    def residual_view(self, p: int) -> Nfa:
        """Automaton for the quotient at ``p``, in its natural orientation."""
        return self.union_view((p,))

    def union_view(self, states: Iterable[int]) -> Nfa:
        view = self._view(states)
        return view if self.side == RIGHT else reverse(view)

    def is_union(self, p: int, states: Iterable[int]) -> bool:
        """Whether the quotient at ``p`` equals the union of those at ``states``."""
        key = (p, frozenset(states))
        hit = self._union_cache.get(key)
        if hit is None:
            hit = bool(language_equiv(self._view((p,)), self._view(key[1])))
            self._union_cache[key] = hit
        return hit


def build_lattice(a: Automaton, side: str = RIGHT) -> ResidualLattice:
    _check_side(side)
    src = as_nfa(a) if side == RIGHT else reverse(a)
    d = minimize(determinize(src))
    return ResidualLattice(side, d, _inclusion(d), d.access_words)


def prime_residuals(lat: ResidualLattice) -> frozenset:
    return frozenset(p for p in range(lat.size) if lat.prime[p])


def residual_of_states(a: Automaton, lat: ResidualLattice) -> list:
    """For each state ``q`` of ``a``, the lattice state whose quotient equals
    the right language of ``q`` (``None`` when it is no quotient).

    ``lat`` must be a right lattice of ``L(a)``.
    """
    a = as_nfa(a)
    joined, off = disjoint_union(a, lat.min_dfa.to_nfa())
    roots = [(q,) for q in range(a.n)] + [(p + off,) for p in range(lat.size)]
    classes = right_language_classes(joined, roots)
    owner = {}
    for p in range(lat.size):
        owner.setdefault(classes[a.n + p], p)
    return [owner.get(classes[q]) for q in range(a.n)]


def _reached_by_class(a: Nfa, d: Dfa) -> dict:
    """Map each DFA state ``p`` to the list of subsets ``post_w(I)`` over all
    words ``w`` that lead ``d`` into ``p``."""
    start = (a.init_mask, d.initial)
    seen = {start}
    queue = deque([start])
    out: dict = {}
    while queue:
        m, p = queue.popleft()
        out.setdefault(p, []).append(m)
        for k in range(len(a.alphabet)):
            nxt = (a.step(m, k), d.delta[p][k])
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return out


class Classification(NamedTuple):
    is_rfa: bool
    is_corfa: bool
    is_consistent: bool
    is_strongly_consistent: bool


def _is_rfa(a: Nfa, lat: ResidualLattice) -> bool:
    return all(p is not None for p in residual_of_states(a, lat))


def classify(a: Automaton) -> Classification:
    a = as_nfa(a)
    lat = build_lattice(a, RIGHT)
    match = residual_of_states(a, lat)
    is_rfa = all(p is not None for p in match)
    rev = reverse(a)
    is_corfa = _is_rfa(rev, build_lattice(rev, RIGHT))
    reached = _reached_by_class(a, lat.min_dfa)
    consistent = strong = True
    for q, p in enumerate(match):
        if p is None:
            consistent = False
            continue
        subsets = reached.get(p, [])
        hits = [bool(m >> q & 1) for m in subsets]
        if not any(hits):
            consistent = False
        if not all(hits):
            strong = False
    return Classification(is_rfa, is_corfa, consistent, strong)


def characterizing_words(a: Automaton, q: int, lat: Optional[ResidualLattice] = None) -> Nfa:
    """Automaton for ``{w : w⁻¹L = W_{q,F}}``; empty when the right language
    of ``q`` is not a quotient of ``L(a)``."""
    a = as_nfa(a)
    if not 0 <= q < a.n:
        raise IndexError(f"state {q} out of range")
    if lat is None:
        lat = build_lattice(a, RIGHT)
    p = residual_of_states(a, lat)[q]
    if p is None:
        return empty_nfa(a.alphabet)
    return with_final(lat.min_dfa, (p,))
