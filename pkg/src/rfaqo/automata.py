"""Finite automata over small alphabets.

State sets are handled internally as integer bitmasks (bit ``q`` set means
state ``q`` is a member); the public functions take and return ``frozenset``.
Words are tuples of alphabet symbols, the empty tuple being the empty word.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple, Optional, Sequence, Union

Word = tuple
EPSILON: Word = ()


class AlphabetMismatch(ValueError):
    pass


class NfaSyntaxError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(states: Iterable[int]) -> int:
    m = 0
    for q in states:
        m |= 1 << q
    return m


def from_mask(mask: int) -> frozenset:
    return frozenset(iter_bits(mask))


def format_word(word: Sequence[str]) -> str:
    """Render a word as text: ``ε`` for the empty word, symbols concatenated
    when they are all single characters, dot-separated otherwise."""
    if not word:
        return "ε"
    if all(len(s) == 1 for s in word):
        return "".join(word)
    return ".".join(word)


def parse_word(text: str, alphabet: Sequence[str]) -> Word:
    text = text.strip()
    if text in ("", "ε", "eps"):
        return EPSILON
    if all(len(s) == 1 for s in alphabet) and "." not in text:
        word = tuple(text)
    else:
        word = tuple(text.split("."))
    for s in word:
        if s not in alphabet:
            raise ValueError(f"symbol {s!r} is not in the alphabet")
    return word


def format_subset(subset: Iterable[int], names: Optional[Sequence[str]] = None) -> str:
    items = sorted(subset)
    if names is not None:
        return "{" + ",".join(names[q] for q in items) + "}"
    return "{" + ",".join(str(q) for q in items) + "}"


def _check_token(tok: str, what: str) -> None:
    if not tok or any(c.isspace() for c in tok) or "#" in tok:
        raise ValueError(f"invalid {what} {tok!r}")


@dataclass(frozen=True)
class Nfa:
    """A nondeterministic automaton ``(Q, Σ, δ, I, F)`` with ``Q = {0..n-1}``.

    ``delta[q][k]`` is the set of successors of ``q`` on ``alphabet[k]``.
    Instances are immutable; use :meth:`build` to create one from a list of
    ``(source, symbol, target)`` triples.
    """

    alphabet: tuple
    n: int
    initial: frozenset
    final: frozenset
    delta: tuple
    names: tuple

    def __post_init__(self):
        if not self.alphabet:
            raise ValueError("alphabet must be nonempty")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise ValueError("alphabet has duplicate symbols")
        for s in self.alphabet:
            _check_token(s, "symbol")
        if len(self.names) != self.n:
            raise ValueError("need exactly one name per state")
        if len(set(self.names)) != self.n:
            raise ValueError("state names must be distinct")
        for nm in self.names:
            _check_token(nm, "state name")
        if len(self.delta) != self.n or any(len(row) != len(self.alphabet) for row in self.delta):
            raise ValueError("delta must be total over states x symbols")
        for group in (self.initial, self.final, *(t for row in self.delta for t in row)):
            for q in group:
                if not 0 <= q < self.n:
                    raise ValueError(f"state index {q} out of range")

    @classmethod
    def build(
        cls,
        alphabet: Sequence[str],
        n: int,
        initial: Iterable[int],
        final: Iterable[int],
        transitions: Iterable[tuple] = (),
        names: Optional[Sequence[str]] = None,
    ) -> "Nfa":
        alphabet = tuple(alphabet)
        index = {s: k for k, s in enumerate(alphabet)}
        table = [[set() for _ in alphabet] for _ in range(n)]
        for src, sym, dst in transitions:
            if sym not in index:
                raise ValueError(f"symbol {sym!r} is not in the alphabet")
            if not (0 <= src < n and 0 <= dst < n):
                raise ValueError(f"transition ({src}, {sym}, {dst}) out of range")
            table[src][index[sym]].add(dst)
        if names is None:
            names = [str(q) for q in range(n)]
        return cls(
            alphabet=alphabet,
            n=n,
            initial=frozenset(initial),
            final=frozenset(final),
            delta=tuple(tuple(frozenset(t) for t in row) for row in table),
            names=tuple(names),
        )

    @classmethod
    def from_masks(cls, alphabet, n, init_mask, final_mask, succ, names=None) -> "Nfa":
        """Build from bitmask data; ``succ[k][q]`` is the successor mask."""
        if names is None:
            names = [str(q) for q in range(n)]
        delta = tuple(
            tuple(from_mask(succ[k][q]) for k in range(len(alphabet))) for q in range(n)
        )
        return cls(tuple(alphabet), n, from_mask(init_mask), from_mask(final_mask), delta, tuple(names))

    # -- derived data -------------------------------------------------------

    @cached_property
    def symbol_index(self) -> dict:
        return {s: k for k, s in enumerate(self.alphabet)}

    @cached_property
    def succ(self) -> tuple:
        """``succ[k][q]``: successor bitmask of ``q`` on symbol ``k``."""
        return tuple(
            tuple(to_mask(self.delta[q][k]) for q in range(self.n)) for k in range(len(self.alphabet))
        )

    @cached_property
    def pred(self) -> tuple:
        out = [[0] * self.n for _ in self.alphabet]
        for q in range(self.n):
            for k in range(len(self.alphabet)):
                for r in self.delta[q][k]:
                    out[k][r] |= 1 << q
        return tuple(tuple(row) for row in out)

    @cached_property
    def init_mask(self) -> int:
        return to_mask(self.initial)

    @cached_property
    def final_mask(self) -> int:
        return to_mask(self.final)

    @property
    def num_transitions(self) -> int:
        return sum(len(t) for row in self.delta for t in row)

    def transitions(self) -> list:
        """All ``(source, symbol, target)`` triples, sorted by source, symbol
        position in the alphabet, then target."""
        return [
            (q, self.alphabet[k], r)
            for q in range(self.n)
            for k in range(len(self.alphabet))
            for r in sorted(self.delta[q][k])
        ]

    def step(self, mask: int, k: int) -> int:
        row = self.succ[k]
        out = 0
        for q in iter_bits(mask):
            out |= row[q]
        return out

    def back(self, mask: int, k: int) -> int:
        row = self.pred[k]
        out = 0
        for q in iter_bits(mask):
            out |= row[q]
        return out

    def run(self, mask: int, word: Sequence[str]) -> int:
        index = self.symbol_index
        for s in word:
            mask = self.step(mask, index[s])
        return mask

    def word(self, text: str) -> Word:
        return parse_word(text, self.alphabet)

    def replace(self, **changes) -> "Nfa":
        fields = dict(
            alphabet=self.alphabet,
            n=self.n,
            initial=self.initial,
            final=self.final,
            delta=self.delta,
            names=self.names,
        )
        fields.update({k: frozenset(v) if k in ("initial", "final") else v for k, v in changes.items()})
        return Nfa(**fields)

    def __repr__(self) -> str:
        return (
            f"Nfa(n={self.n}, alphabet={self.alphabet}, initial={sorted(self.initial)}, "
            f"final={sorted(self.final)}, transitions={self.num_transitions})"
        )


@dataclass(frozen=True)
class Dfa:
    """A complete deterministic automaton.

    ``labels[q]``, when present, is the subset of source-NFA states that
    state ``q`` stands for (filled in by :func:`determinize`).
    """

    alphabet: tuple
    n: int
    initial: int
    final: frozenset
    delta: tuple
    names: tuple
    labels: Optional[tuple] = None

    @cached_property
    def symbol_index(self) -> dict:
        return {s: k for k, s in enumerate(self.alphabet)}

    def run(self, word: Sequence[str], start: Optional[int] = None) -> int:
        q = self.initial if start is None else start
        index = self.symbol_index
        for s in word:
            q = self.delta[q][index[s]]
        return q

    def accepts(self, word: Sequence[str]) -> bool:
        return self.run(word) in self.final

    @cached_property
    def access_words(self) -> tuple:
        """Length-lexicographically least word reaching each state (``None``
        for unreachable states)."""
        words = [None] * self.n
        words[self.initial] = EPSILON
        queue = deque([self.initial])
        while queue:
            q = queue.popleft()
            for k, s in enumerate(self.alphabet):
                r = self.delta[q][k]
                if words[r] is None:
                    words[r] = words[q] + (s,)
                    queue.append(r)
        return tuple(words)

    def to_nfa(self) -> Nfa:
        delta = tuple(tuple(frozenset((r,)) for r in row) for row in self.delta)
        return Nfa(self.alphabet, self.n, frozenset((self.initial,)), self.final, delta, self.names)


Automaton = Union[Nfa, Dfa]


def as_nfa(a: Automaton) -> Nfa:
    return a.to_nfa() if isinstance(a, Dfa) else a


def _same_alphabet(a: Automaton, b: Automaton) -> None:
    if tuple(a.alphabet) != tuple(b.alphabet):
        raise AlphabetMismatch(f"alphabets differ: {a.alphabet} vs {b.alphabet}")


# -- text format ------------------------------------------------------------


def parse_nfa(text: str) -> Nfa:
    """Parse the line-based ``.nfa`` format.

    ::

        alphabet a b c
        states 3
        names p q r        # optional
        initial p
        final r
        trans p a q
    """
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].split()
        if body:
            lines.append((lineno, body))
    if not lines or lines[0][1][0] != "alphabet":
        where = lines[0][0] if lines else None
        raise NfaSyntaxError("missing 'alphabet' header", where)
    lineno, head = lines[0]
    alphabet = head[1:]
    if not alphabet:
        raise NfaSyntaxError("empty alphabet", lineno)
    if len(set(alphabet)) != len(alphabet):
        raise NfaSyntaxError("duplicate alphabet symbols", lineno)
    if len(lines) < 2 or lines[1][1][0] != "states":
        raise NfaSyntaxError("missing 'states' header", lines[1][0] if len(lines) > 1 else lineno)
    lineno, head = lines[1]
    if len(head) < 2 or not head[1].isdigit():
        raise NfaSyntaxError("'states' needs a nonnegative count", lineno)
    n = int(head[1])
    names = None
    rest = lines[2:]
    if len(head) > 2:
        if head[2] != "names":
            raise NfaSyntaxError(f"unexpected token {head[2]!r}", lineno)
        names = head[3:]
    elif rest and rest[0][1][0] == "names":
        lineno, head = rest[0]
        names = head[1:]
        rest = rest[1:]
    if names is not None:
        if len(names) != n:
            raise NfaSyntaxError(f"expected {n} names, got {len(names)}", lineno)
        if len(set(names)) != n:
            raise NfaSyntaxError("duplicate state names", lineno)
        lookup = {nm: q for q, nm in enumerate(names)}
    else:
        lookup = {str(q): q for q in range(n)}

    def state(tok, lineno):
        if tok not in lookup:
            raise NfaSyntaxError(f"unknown state {tok!r}", lineno)
        return lookup[tok]

    initial = final = None
    transitions = []
    for lineno, body in rest:
        kw = body[0]
        if kw == "initial":
            if initial is not None:
                raise NfaSyntaxError("repeated 'initial' line", lineno)
            initial = [state(t, lineno) for t in body[1:]]
        elif kw == "final":
            if final is not None:
                raise NfaSyntaxError("repeated 'final' line", lineno)
            final = [state(t, lineno) for t in body[1:]]
        elif kw == "trans":
            if len(body) != 4:
                raise NfaSyntaxError("'trans' needs <src> <sym> <dst>", lineno)
            src, sym, dst = body[1:]
            if sym not in alphabet:
                raise NfaSyntaxError(f"unknown symbol {sym!r}", lineno)
            transitions.append((state(src, lineno), sym, state(dst, lineno)))
        else:
            raise NfaSyntaxError(f"unknown keyword {kw!r}", lineno)
    if initial is None:
        raise NfaSyntaxError("missing 'initial' line")
    if final is None:
        raise NfaSyntaxError("missing 'final' line")
    try:
        return Nfa.build(alphabet, n, initial, final, transitions, names)
    except ValueError as exc:
        raise NfaSyntaxError(str(exc)) from None


def render_nfa(a: Automaton) -> str:
    a = as_nfa(a)
    out = ["alphabet " + " ".join(a.alphabet), f"states {a.n}"]
    if a.names != tuple(str(q) for q in range(a.n)):
        out.append("names " + " ".join(a.names))
    out.append(" ".join(["initial"] + [a.names[q] for q in sorted(a.initial)]))
    out.append(" ".join(["final"] + [a.names[q] for q in sorted(a.final)]))
    for q, s, r in a.transitions():
        out.append(f"trans {a.names[q]} {s} {a.names[r]}")
    return "\n".join(out) + "\n"


def to_dot(a: Automaton, title: str = "nfa") -> str:
    a = as_nfa(a)

    def quote(s):
        return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'

    out = [f"digraph {quote(title)} {{", "  rankdir=LR;", "  node [shape=circle];"]
    for q in range(a.n):
        shape = "doublecircle" if q in a.final else "circle"
        out.append(f"  {quote(a.names[q])} [shape={shape}];")
    for q in sorted(a.initial):
        start = quote(f"__start{q}")
        out.append(f"  {start} [shape=point, label=\"\"];")
        out.append(f"  {start} -> {quote(a.names[q])};")
    edges: dict = {}
    for q, s, r in a.transitions():
        edges.setdefault((q, r), []).append(s)
    for (q, r), syms in edges.items():
        out.append(f"  {quote(a.names[q])} -> {quote(a.names[r])} [label={quote(','.join(syms))}];")
    out.append("}")
    return "\n".join(out) + "\n"


# -- basic constructions ----------------------------------------------------


def empty_nfa(alphabet: Sequence[str]) -> Nfa:
    return Nfa.build(alphabet, 0, (), ())


def universal_nfa(alphabet: Sequence[str]) -> Nfa:
    return Nfa.build(alphabet, 1, (0,), (0,), [(0, s, 0) for s in alphabet])


def from_words(alphabet: Sequence[str], words: Iterable[Sequence[str]]) -> Nfa:
    """A trie automaton accepting exactly the given finite set of words."""
    children: list = [{}]
    accepting = set()
    for w in words:
        node = 0
        for s in w:
            nxt = children[node].get(s)
            if nxt is None:
                children.append({})
                nxt = len(children) - 1
                children[node][s] = nxt
            node = nxt
        accepting.add(node)
    trans = [(q, s, r) for q, kids in enumerate(children) for s, r in kids.items()]
    return Nfa.build(alphabet, len(children), (0,), accepting, trans)


def reverse(a: Automaton) -> Nfa:
    a = as_nfa(a)
    trans = [(r, s, q) for q, s, r in a.transitions()]
    return Nfa.build(a.alphabet, a.n, a.final, a.initial, trans, a.names)


def with_initial(a: Automaton, states: Iterable[int]) -> Nfa:
    return as_nfa(a).replace(initial=states)


def with_final(a: Automaton, states: Iterable[int]) -> Nfa:
    return as_nfa(a).replace(final=states)


def right_language(a: Automaton, q: int) -> Nfa:
    """Automaton for the words leading from ``q`` to a final state."""
    return with_initial(a, (q,))


def left_language(a: Automaton, q: int) -> Nfa:
    """Automaton for the words leading from an initial state to ``q``."""
    return with_final(a, (q,))


def disjoint_union(a: Automaton, b: Automaton) -> tuple:
    """Place ``a`` and ``b`` side by side; returns the combined automaton and
    the index offset of ``b``'s states."""
    a, b = as_nfa(a), as_nfa(b)
    _same_alphabet(a, b)
    off = a.n
    trans = a.transitions() + [(q + off, s, r + off) for q, s, r in b.transitions()]
    init = list(a.initial) + [q + off for q in b.initial]
    fin = list(a.final) + [q + off for q in b.final]
    return Nfa.build(a.alphabet, a.n + b.n, init, fin, trans), off


def union(*automata: Automaton) -> Nfa:
    if not automata:
        raise ValueError("union of nothing needs an alphabet; use empty_nfa")
    out = as_nfa(automata[0])
    for b in automata[1:]:
        out, _ = disjoint_union(out, b)
    return out


def intersection(a: Automaton, b: Automaton) -> Nfa:
    """Product automaton restricted to pairs reachable from the initial pairs."""
    a, b = as_nfa(a), as_nfa(b)
    _same_alphabet(a, b)
    index: dict = {}
    order = []
    queue = deque()
    for p in sorted(a.initial):
        for q in sorted(b.initial):
            index[(p, q)] = len(order)
            order.append((p, q))
            queue.append((p, q))
    trans = []
    while queue:
        p, q = queue.popleft()
        for k, s in enumerate(a.alphabet):
            for p2 in sorted(a.delta[p][k]):
                for q2 in sorted(b.delta[q][k]):
                    if (p2, q2) not in index:
                        index[(p2, q2)] = len(order)
                        order.append((p2, q2))
                        queue.append((p2, q2))
                    trans.append((index[(p, q)], s, index[(p2, q2)]))
    n = len(order)
    init = [i for i, (p, q) in enumerate(order) if p in a.initial and q in b.initial]
    fin = [i for i, (p, q) in enumerate(order) if p in a.final and q in b.final]
    return Nfa.build(a.alphabet, n, init, fin, trans)


def concat_symbol(a: Automaton, symbol: str) -> Nfa:
    """Automaton for ``L(a)·symbol``."""
    a = as_nfa(a)
    f = a.n
    trans = a.transitions() + [(q, symbol, f) for q in sorted(a.final)]
    return Nfa.build(a.alphabet, a.n + 1, a.initial, (f,), trans)


# -- images and acceptance --------------------------------------------------


def post(a: Automaton, s: Iterable[int], w: Sequence[str]) -> frozenset:
    a = as_nfa(a)
    return from_mask(a.run(to_mask(s), w))


def pre(a: Automaton, s: Iterable[int], w: Sequence[str]) -> frozenset:
    a = as_nfa(a)
    mask = to_mask(s)
    index = a.symbol_index
    for sym in reversed(tuple(w)):
        mask = a.back(mask, index[sym])
    return from_mask(mask)


def accepts(a: Automaton, w: Sequence[str]) -> bool:
    if isinstance(a, Dfa):
        return a.accepts(w)
    return bool(a.run(a.init_mask, w) & a.final_mask)


def unreachable_states(a: Automaton) -> frozenset:
    a = as_nfa(a)
    seen = a.init_mask
    frontier = seen
    while frontier:
        nxt = 0
        for k in range(len(a.alphabet)):
            nxt |= a.step(frontier, k)
        frontier = nxt & ~seen
        seen |= nxt
    return frozenset(q for q in range(a.n) if not seen >> q & 1)


def empty_states(a: Automaton) -> frozenset:
    a = as_nfa(a)
    seen = a.final_mask
    frontier = seen
    while frontier:
        nxt = 0
        for k in range(len(a.alphabet)):
            nxt |= a.back(frontier, k)
        frontier = nxt & ~seen
        seen |= nxt
    return frozenset(q for q in range(a.n) if not seen >> q & 1)


def is_empty(a: Automaton) -> bool:
    a = as_nfa(a)
    return not (a.final_mask & ~to_mask(unreachable_states(a)))


# -- determinization and minimization ---------------------------------------


def _subset_dfa(a: Nfa, roots: Sequence[int]) -> tuple:
    """Breadth-first subset construction from several root masks.

    Returns ``(masks, table)`` where ``table[i][k]`` is the index of the
    successor of ``masks[i]`` on symbol ``k``.  Discovery order follows the
    length-lexicographic order of access words from the first root.
    """
    index: dict = {}
    masks: list = []
    queue = deque()
    for m in roots:
        if m not in index:
            index[m] = len(masks)
            masks.append(m)
            queue.append(m)
    table: list = []
    ksyms = range(len(a.alphabet))
    pos = 0
    while pos < len(masks):
        m = masks[pos]
        row = []
        for k in ksyms:
            m2 = a.step(m, k)
            j = index.get(m2)
            if j is None:
                j = index[m2] = len(masks)
                masks.append(m2)
            row.append(j)
        table.append(row)
        pos += 1
    return masks, table


def determinize(a: Automaton) -> Dfa:
    """Reachable-subset construction.  The empty subset, when reachable, is
    kept as an explicit rejecting sink so the result is complete."""
    a = as_nfa(a)
    masks, table = _subset_dfa(a, [a.init_mask])
    labels = tuple(from_mask(m) for m in masks)
    final = frozenset(i for i, m in enumerate(masks) if m & a.final_mask)
    names = tuple(format_subset(lab, a.names) for lab in labels)
    return Dfa(
        a.alphabet,
        len(masks),
        0,
        final,
        tuple(tuple(row) for row in table),
        names,
        labels,
    )


def _moore_blocks(n: int, nsym: int, table: Sequence[Sequence[int]], accepting: Sequence[bool]) -> list:
    """Coarsest partition of a complete DFA compatible with acceptance."""
    block = [1 if acc else 0 for acc in accepting]
    count = len(set(block))
    while True:
        sigs: dict = {}
        new = []
        for q in range(n):
            sig = (block[q],) + tuple(block[table[q][k]] for k in range(nsym))
            new.append(sigs.setdefault(sig, len(sigs)))
        if len(sigs) == count:
            return new
        block, count = new, len(sigs)


def minimize(d: Dfa) -> Dfa:
    """Minimal complete DFA, states numbered in length-lexicographic order of
    their access words (state 0 is initial)."""
    nsym = len(d.alphabet)
    access = d.access_words
    reach = [q for q in range(d.n) if access[q] is not None]
    local = {q: i for i, q in enumerate(reach)}
    table = [[local[d.delta[q][k]] for k in range(nsym)] for q in reach]
    blocks = _moore_blocks(len(reach), nsym, table, [q in d.final for q in reach])
    # renumber blocks by breadth-first discovery from the initial block
    rep = {}
    for i, b in enumerate(blocks):
        rep.setdefault(b, i)
    order = {blocks[local[d.initial]]: 0}
    queue = deque([blocks[local[d.initial]]])
    while queue:
        b = queue.popleft()
        for k in range(nsym):
            b2 = blocks[table[rep[b]][k]]
            if b2 not in order:
                order[b2] = len(order)
                queue.append(b2)
    n = len(order)
    delta = [None] * n
    final = set()
    for b, i in order.items():
        delta[i] = tuple(order[blocks[table[rep[b]][k]]] for k in range(nsym))
        if reach[rep[b]] in d.final:
            final.add(i)
    m = Dfa(d.alphabet, n, 0, frozenset(final), tuple(delta), tuple(str(i) for i in range(n)))
    names = tuple(format_word(w) for w in m.access_words)
    return Dfa(d.alphabet, n, 0, frozenset(final), tuple(delta), names)


def right_language_classes(a: Automaton, roots: Sequence[Iterable[int]]) -> list:
    """Group the given state sets by the language they accept from.

    Returns one integer per root; two roots get the same integer iff the
    languages ``W_{root,F}`` coincide.
    """
    a = as_nfa(a)
    root_masks = [to_mask(r) for r in roots]
    masks, table = _subset_dfa(a, root_masks)
    blocks = _moore_blocks(len(masks), len(a.alphabet), table, [bool(m & a.final_mask) for m in masks])
    pos = {m: i for i, m in enumerate(masks)}
    return [blocks[pos[m]] for m in root_masks]


# -- language comparison ----------------------------------------------------


class Verdict(NamedTuple):
    """Outcome of a language comparison; truthy iff the property holds."""

    holds: bool
    witness: Optional[Word] = None

    def __bool__(self) -> bool:
        return self.holds


def _product_search(a: Nfa, b: Nfa, bad) -> Optional[Word]:
    """Breadth-first walk over pairs of subsets; returns the
    length-lexicographically least word whose pair satisfies ``bad``."""
    fa, fb = a.final_mask, b.final_mask
    start = (a.init_mask, b.init_mask)
    parent = {start: None}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        ma, mb = node
        if bad(bool(ma & fa), bool(mb & fb)):
            word = []
            while parent[node] is not None:
                node, s = parent[node]
                word.append(s)
            return tuple(reversed(word))
        for k, s in enumerate(a.alphabet):
            nxt = (a.step(ma, k), b.step(mb, k))
            if nxt not in parent:
                parent[nxt] = (node, s)
                queue.append(nxt)
    return None


def language_equiv(a: Automaton, b: Automaton) -> Verdict:
    a, b = as_nfa(a), as_nfa(b)
    _same_alphabet(a, b)
    w = _product_search(a, b, lambda x, y: x != y)
    return Verdict(w is None, w)


def language_includes(a: Automaton, b: Automaton) -> Verdict:
    """Whether ``L(a) ⊆ L(b)``; the witness is the least word of ``L(a) ∖ L(b)``."""
    a, b = as_nfa(a), as_nfa(b)
    _same_alphabet(a, b)
    w = _product_search(a, b, lambda x, y: x and not y)
    return Verdict(w is None, w)


# -- isomorphism and embeddings ---------------------------------------------


def _refined_colors(auts: Sequence[Nfa]) -> list:
    """Joint colour refinement over several automata, so that equal colours
    are comparable across them."""
    nsym = len(auts[0].alphabet)
    colors = [[(q in a.initial, q in a.final) for q in range(a.n)] for a in auts]
    table: dict = {}
    colors = [[table.setdefault(c, len(table)) for c in cs] for cs in colors]
    count = len(table)
    while True:
        table = {}
        new = []
        for a, cs in zip(auts, colors):
            row = []
            for q in range(a.n):
                sig = (
                    cs[q],
                    tuple(tuple(sorted(cs[r] for r in a.delta[q][k])) for k in range(nsym)),
                    tuple(tuple(sorted(cs[p] for p in iter_bits(a.pred[k][q]))) for k in range(nsym)),
                )
                row.append(table.setdefault(sig, len(table)))
            new.append(row)
        if len(table) == count:
            return new
        colors, count = new, len(table)


def isomorphic(a: Automaton, b: Automaton) -> Optional[dict]:
    """A bijection of states preserving initial states, final states and
    transitions, or ``None``.  Exhaustive backtracking over colour classes."""
    a, b = as_nfa(a), as_nfa(b)
    _same_alphabet(a, b)
    if (a.n, len(a.initial), len(a.final), a.num_transitions) != (
        b.n,
        len(b.initial),
        len(b.final),
        b.num_transitions,
    ):
        return None
    ca, cb = _refined_colors([a, b])
    if sorted(ca) != sorted(cb):
        return None
    by_color: dict = {}
    for q in range(b.n):
        by_color.setdefault(cb[q], []).append(q)
    # order: smallest colour classes first, then by index
    order = sorted(range(a.n), key=lambda q: (len(by_color[ca[q]]), q))
    nsym = len(a.alphabet)
    mapping: dict = {}
    used = set()

    def compatible(q, r):
        for k in range(nsym):
            if (q in a.delta[q][k]) != (r in b.delta[r][k]):
                return False
            for p, s in mapping.items():
                if (p in a.delta[q][k]) != (s in b.delta[r][k]):
                    return False
                if (q in a.delta[p][k]) != (r in b.delta[s][k]):
                    return False
        return True

    def search(i):
        if i == len(order):
            return True
        q = order[i]
        for r in by_color[ca[q]]:
            if r in used or not compatible(q, r):
                continue
            mapping[q] = r
            used.add(r)
            if search(i + 1):
                return True
            del mapping[q]
            used.discard(r)
        return False

    return dict(sorted(mapping.items())) if search(0) else None


def is_embedding(a: Automaton, b: Automaton, mapping: dict, induced: bool = False) -> bool:
    """Whether ``mapping`` is an injection of ``a`` into ``b`` under which
    ``a`` is a sub-automaton of ``b``: initial to initial, final to final,
    and every transition of ``a`` present in ``b``.

    With ``induced=True`` the converse must hold too: on the image of
    ``mapping``, ``b`` has no extra initial/final marks or transitions.
    """
    a, b = as_nfa(a), as_nfa(b)
    _same_alphabet(a, b)
    if set(mapping) != set(range(a.n)) or len(set(mapping.values())) != a.n:
        return False
    if not all(0 <= r < b.n for r in mapping.values()):
        return False
    if any(mapping[q] not in b.initial for q in a.initial):
        return False
    if any(mapping[q] not in b.final for q in a.final):
        return False
    if not all(mapping[r] in b.delta[mapping[q]][b.symbol_index[s]] for q, s, r in a.transitions()):
        return False
    if not induced:
        return True
    back = {r: q for q, r in mapping.items()}
    if any(back[r] not in a.initial for r in b.initial if r in back):
        return False
    if any(back[r] not in a.final for r in b.final if r in back):
        return False
    return all(
        back[t] in a.delta[back[r]][k]
        for r in back
        for k in range(len(b.alphabet))
        for t in b.delta[r][k]
        if t in back
    )


def find_embedding(a: Automaton, b: Automaton) -> Optional[dict]:
    """Search for an injection making ``a`` a sub-automaton of ``b``."""
    a, b = as_nfa(a), as_nfa(b)
    _same_alphabet(a, b)
    if a.n > b.n:
        return None
    nsym = len(a.alphabet)
    mapping: dict = {}
    used = set()

    def ok(q, r):
        if q in a.initial and r not in b.initial:
            return False
        if q in a.final and r not in b.final:
            return False
        for k in range(nsym):
            if q in a.delta[q][k] and r not in b.delta[r][k]:
                return False
            for p, s in mapping.items():
                if p in a.delta[q][k] and s not in b.delta[r][k]:
                    return False
                if q in a.delta[p][k] and r not in b.delta[s][k]:
                    return False
        return True

    def search(q):
        if q == a.n:
            return True
        for r in range(b.n):
            if r in used or not ok(q, r):
                continue
            mapping[q] = r
            used.add(r)
            if search(q + 1):
                return True
            del mapping[q]
            used.discard(r)
        return False

    return dict(mapping) if search(0) else None
