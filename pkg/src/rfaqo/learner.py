"""Active learning of canonical residual automata.

Two learners share one observation table and one teacher but decide
closedness, consistency and primality independently:

* the row-based learner works on table rows, joins and covering;
* the quasiorder-based learner works on the suffix-restricted quotient
  order ``u ⪯ v`` iff ``ux ∈ L ⇒ vx ∈ L`` for every suffix ``x``.

Both resolve choices with the same :class:`Policy`, so their runs can be
compared query by query with :func:`compare_runs`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .automata import (
    EPSILON,
    Automaton,
    Nfa,
    Word,
    accepts,
    as_nfa,
    format_word,
    isomorphic,
    language_equiv,
)
from .constructions import canonical_rfa

Row = tuple


class LearningDiverged(RuntimeError):
    """Raised when a run exceeds its round budget."""


class TableNotReady(ValueError):
    """A hypothesis was requested from a table that is not closed and consistent."""


# -- teacher and log ----------------------------------------------------------


@dataclass
class QueryLog:
    membership: list = field(default_factory=list)
    equivalence: list = field(default_factory=list)

    def lines(self) -> list:
        out = [f"M {format_word(w)} {int(b)}" for w, b in self.membership]
        for n, cex in self.equivalence:
            out.append(f"E {n} {'OK' if cex is None else format_word(cex)}")
        return out


class Teacher:
    """Answers membership and equivalence queries about a hidden automaton.

    Counterexamples are the length-lexicographically least words of the
    symmetric difference.
    """

    def __init__(self, target: Automaton):
        self.target = as_nfa(target)
        self.log = QueryLog()

    @property
    def alphabet(self) -> tuple:
        return self.target.alphabet

    def reset(self) -> None:
        self.log = QueryLog()

    def membership(self, word: Word) -> bool:
        answer = accepts(self.target, word)
        self.log.membership.append((word, answer))
        return answer

    def equivalence(self, hypothesis: Nfa) -> Optional[Word]:
        verdict = language_equiv(hypothesis, self.target)
        cex = None if verdict.holds else verdict.witness
        self.log.equivalence.append((hypothesis.n, cex))
        return cex


@dataclass(frozen=True)
class Policy:
    """Tie-breaking for violation scans.

    Scans visit prefixes in insertion order (newest first with
    ``reverse_prefixes``), then symbols and suffixes in their order.  With
    ``minimal_repairs`` a closedness repair picks the first candidate that
    has no other candidate strictly below it; otherwise the first candidate.
    The two learners only share their choices under ``minimal_repairs``:
    their candidate sets can differ but always have the same minimal
    elements.
    """

    reverse_prefixes: bool = False
    minimal_repairs: bool = True

    def prefixes(self, P: Sequence[Word]) -> list:
        return list(reversed(P)) if self.reverse_prefixes else list(P)

    def pick(self, candidates: Sequence, strictly_below: Callable) -> Optional[Word]:
        if not candidates:
            return None
        if not self.minimal_repairs:
            return candidates[0]
        for c in candidates:
            if not any(strictly_below(d, c) for d in candidates):
                return c
        raise AssertionError("strict order has no minimal element")


DEFAULT_POLICY = Policy()


# -- observation table ----------------------------------------------------------


class ObservationTable:
    """Prefixes ``P`` and suffixes ``S`` in insertion order, with a membership
    cache covering ``(P ∪ P·Σ)·S``."""

    def __init__(self, teacher: Teacher):
        self.teacher = teacher
        self.alphabet = teacher.alphabet
        self.P: list = [EPSILON]
        self.S: list = [EPSILON]
        self.cache: dict = {}
        self.fill()

    def extensions(self) -> list:
        """``P·Σ`` minus ``P``, ordered by prefix then symbol."""
        inP = set(self.P)
        return [u + (a,) for u in self.P for a in self.alphabet if u + (a,) not in inP]

    def row_words(self) -> list:
        return self.P + self.extensions()

    def fill(self) -> None:
        for u in self.row_words():
            for x in self.S:
                w = u + x
                if w not in self.cache:
                    self.cache[w] = self.teacher.membership(w)

    def add_prefix(self, u: Word) -> None:
        if u in self.P:
            raise ValueError(f"{format_word(u)} is already a prefix")
        if u[:-1] not in self.P:
            raise ValueError("prefixes must stay prefix-closed")
        self.P.append(u)
        self.fill()

    def add_suffix(self, x: Word) -> None:
        if x in self.S:
            raise ValueError(f"{format_word(x)} is already a suffix")
        if x[1:] not in self.S:
            raise ValueError("suffixes must stay suffix-closed")
        self.S.append(x)
        self.fill()

    def add_counterexample(self, w: Word) -> None:
        """Add every suffix of ``w``, shortest first, skipping known ones."""
        for i in range(len(w), -1, -1):
            x = w[i:]
            if x not in self.S:
                self.S.append(x)
        self.fill()

    def row(self, u: Word) -> Row:
        return tuple(self.cache[u + x] for x in self.S)


# -- row-based view -------------------------------------------------------------


def join(rows: Sequence[Row], width: int) -> Row:
    """Componentwise disjunction; the join of no rows is all-false."""
    out = [False] * width
    for r in rows:
        for i, bit in enumerate(r):
            if bit:
                out[i] = True
    return tuple(out)


def covered(r1: Row, r2: Row) -> bool:
    """``r1 ⊑ r2``: every ``+`` of ``r1`` is a ``+`` of ``r2``."""
    return all(b or not a for a, b in zip(r1, r2))


def _distinct_rows(t: ObservationTable) -> list:
    return list(dict.fromkeys(t.row(u) for u in t.row_words()))


def _row_is_prime(r: Row, rows: Sequence[Row], width: int) -> bool:
    below = [s for s in rows if s != r and covered(s, r)]
    return join(below, width) != r


def is_prime_row(t: ObservationTable, u: Word) -> bool:
    """Whether ``row(u)`` differs from the join of all table rows it strictly covers."""
    return _row_is_prime(t.row(u), _distinct_rows(t), len(t.S))


def table_closed(t: ObservationTable, policy: Policy = DEFAULT_POLICY) -> tuple:
    """``(closed, ua)``: ``ua`` is the repair chosen by ``policy`` among the
    rows that are prime and equal to no prefix row (``None`` when closed)."""
    width = len(t.S)
    rows = _distinct_rows(t)
    prime = {r: _row_is_prime(r, rows, width) for r in rows}
    prefix_rows = {t.row(v) for v in t.P}
    prime_prefix_rows = [r for r in prefix_rows if prime[r]]
    closed = True
    for u in t.P:
        for a in t.alphabet:
            r = t.row(u + (a,))
            if join([s for s in prime_prefix_rows if covered(s, r)], width) != r:
                closed = False
    candidates = [
        u + (a,)
        for u in policy.prefixes(t.P)
        for a in t.alphabet
        if prime[t.row(u + (a,))] and t.row(u + (a,)) not in prefix_rows
    ]

    def strictly_below(x, y):
        rx, ry = t.row(x), t.row(y)
        return rx != ry and covered(rx, ry)

    violation = policy.pick(candidates, strictly_below)
    if closed != (violation is None):
        raise AssertionError("closedness verdict and repair scan disagree")
    return closed, violation


def table_consistent(t: ObservationTable, policy: Policy = DEFAULT_POLICY) -> tuple:
    """``(consistent, (u, v, a, x))`` for the first ``u, v ∈ P`` with
    ``row(u) ⊑ row(v)`` but ``row(ua)(x) = +`` and ``row(va)(x) = −``."""
    order = policy.prefixes(t.P)
    for u in order:
        ru = t.row(u)
        for v in order:
            if not covered(ru, t.row(v)):
                continue
            for a in t.alphabet:
                rua, rva = t.row(u + (a,)), t.row(v + (a,))
                for i, x in enumerate(t.S):
                    if rua[i] and not rva[i]:
                        return False, (u, v, a, x)
    return True, None


def _hypothesis(alphabet, reps, initial, final, succ) -> Nfa:
    pos = {u: i for i, u in enumerate(reps)}
    edges = [(pos[u], a, pos[v]) for u in reps for a in alphabet for v in succ(u, a)]
    return Nfa.build(
        alphabet,
        len(reps),
        [pos[u] for u in initial],
        [pos[u] for u in final],
        edges,
        names=[format_word(u) for u in reps],
    )


def build_R_table(t: ObservationTable) -> Nfa:
    """States are the distinct prime rows of prefixes, each represented by its
    first prefix; ``row(v) ∈ δ(row(u), a)`` iff ``row(v) ⊑ row(ua)``."""
    if not table_closed(t)[0] or not table_consistent(t)[0]:
        raise TableNotReady("table must be closed and consistent")
    width = len(t.S)
    rows = _distinct_rows(t)
    reps = {}
    for u in t.P:
        r = t.row(u)
        if r not in reps and _row_is_prime(r, rows, width):
            reps[r] = u
    words = list(reps.values())
    eps = t.row(EPSILON)
    eps_col = t.S.index(EPSILON)
    initial = [u for r, u in reps.items() if covered(r, eps)]
    final = [u for r, u in reps.items() if r[eps_col]]

    def succ(u, a):
        target = t.row(u + (a,))
        return [v for r, v in reps.items() if covered(r, target)]

    return _hypothesis(t.alphabet, words, initial, final, succ)


# -- quasiorder-based view ------------------------------------------------------


def qo_leq_S(t: ObservationTable, u: Word, v: Word) -> bool:
    """``u ⪯ v`` restricted to the suffixes: ``ux ∈ L ⇒ vx ∈ L`` for all ``x ∈ S``."""
    c = t.cache
    return all(c[v + x] or not c[u + x] for x in t.S)


def _qo_equal(t: ObservationTable, u: Word, v: Word) -> bool:
    return qo_leq_S(t, u, v) and qo_leq_S(t, v, u)


def ls_prime_wrt_P(t: ObservationTable, u: Word) -> bool:
    """Whether the quotient by ``u`` differs, on ``S``, from the union of the
    quotients by the prefixes strictly below ``u``."""
    below = [x for x in t.P if qo_leq_S(t, x, u) and not qo_leq_S(t, u, x)]
    c = t.cache
    return any(c[u + s] != any(c[x + s] for x in below) for s in t.S)


def qo_closed(t: ObservationTable, policy: Policy = DEFAULT_POLICY) -> tuple:
    """``(closed, ua)``: ``ua`` is the repair chosen by ``policy`` among the
    words whose principal is prime with respect to ``P`` and equal to no
    principal of a prefix."""
    candidates = [
        u + (a,)
        for u in policy.prefixes(t.P)
        for a in t.alphabet
        if ls_prime_wrt_P(t, u + (a,)) and not any(_qo_equal(t, u + (a,), v) for v in t.P)
    ]

    def strictly_below(x, y):
        return qo_leq_S(t, x, y) and not qo_leq_S(t, y, x)

    ua = policy.pick(candidates, strictly_below)
    return ua is None, ua


def qo_consistent(t: ObservationTable, policy: Policy = DEFAULT_POLICY) -> tuple:
    """``(consistent, (u, v, a, x))`` for the first ``u ⪯ v`` in ``P`` with
    ``uax ∈ L`` and ``vax ∉ L``."""
    order = policy.prefixes(t.P)
    c = t.cache
    for u in order:
        for v in order:
            if not qo_leq_S(t, u, v):
                continue
            for a in t.alphabet:
                for x in t.S:
                    if c[u + (a,) + x] and not c[v + (a,) + x]:
                        return False, (u, v, a, x)
    return True, None


def build_R_qo(t: ObservationTable) -> Nfa:
    """States are the principals of prefixes that are prime with respect to
    ``P``, one per class, represented by the first such prefix."""
    if not qo_closed(t)[0] or not qo_consistent(t)[0]:
        raise TableNotReady("quasiorder must be closed and consistent")
    reps: list = []
    for u in t.P:
        if ls_prime_wrt_P(t, u) and not any(_qo_equal(t, u, v) for v in reps):
            reps.append(u)
    initial = [u for u in reps if qo_leq_S(t, u, EPSILON)]
    final = [u for u in reps if t.cache[u]]

    def succ(u, a):
        return [v for v in reps if qo_leq_S(t, v, u + (a,))]

    return _hypothesis(t.alphabet, reps, initial, final, succ)


# -- runs -----------------------------------------------------------------------


@dataclass
class RunResult:
    algorithm: str
    hypothesis: Nfa
    log: QueryLog
    P: list
    S: list
    rounds: int
    hypotheses: list


@dataclass(frozen=True)
class _Engine:
    closed: Callable
    consistent: Callable
    build: Callable


ENGINES = {
    "nl-star": _Engine(table_closed, table_consistent, build_R_table),
    "nl-qo": _Engine(qo_closed, qo_consistent, build_R_qo),
}


def default_round_cap(teacher: Teacher, longest_cex: int) -> int:
    canon = canonical_rfa(teacher.target).n
    return 10 * (canon + longest_cex) * len(teacher.alphabet)


def _run(
    algorithm: str,
    teacher: Teacher,
    policy: Policy,
    max_rounds: Optional[int],
    on_step: Optional[Callable],
) -> RunResult:
    engine = ENGINES[algorithm]
    teacher.reset()
    t = ObservationTable(teacher)
    hypotheses = []
    longest = 0
    while True:
        while True:
            if on_step:
                on_step(t)
            closed, ua = engine.closed(t, policy)
            if not closed:
                t.add_prefix(ua)
            consistent, bad = engine.consistent(t, policy)
            if not consistent:
                _, _, a, x = bad
                t.add_suffix((a,) + x)
            if closed and consistent:
                break
        if on_step:
            on_step(t)
        h = engine.build(t)
        hypotheses.append(h)
        cex = teacher.equivalence(h)
        if cex is None:
            return RunResult(algorithm, h, teacher.log, list(t.P), list(t.S), len(hypotheses), hypotheses)
        longest = max(longest, len(cex))
        cap = max_rounds if max_rounds is not None else default_round_cap(teacher, longest)
        if len(hypotheses) >= cap:
            raise LearningDiverged(f"{algorithm} exceeded {cap} rounds")
        t.add_counterexample(cex)


def run_nl_star(
    teacher: Teacher,
    policy: Policy = DEFAULT_POLICY,
    max_rounds: Optional[int] = None,
    on_step: Optional[Callable] = None,
) -> RunResult:
    return _run("nl-star", teacher, policy, max_rounds, on_step)


def run_nl_qo(
    teacher: Teacher,
    policy: Policy = DEFAULT_POLICY,
    max_rounds: Optional[int] = None,
    on_step: Optional[Callable] = None,
) -> RunResult:
    return _run("nl-qo", teacher, policy, max_rounds, on_step)


@dataclass
class RunComparison:
    equal: bool
    mismatches: list

    def __bool__(self) -> bool:
        return self.equal


def _first_diff(xs: Sequence, ys: Sequence) -> Optional[int]:
    for i, (x, y) in enumerate(zip(xs, ys)):
        if x != y:
            return i
    return None if len(xs) == len(ys) else min(len(xs), len(ys))


def compare_runs(r1: RunResult, r2: RunResult) -> RunComparison:
    """Field-by-field comparison; each mismatch names the first diverging step."""
    out = []
    for name, xs, ys in (
        ("P", r1.P, r2.P),
        ("S", r1.S, r2.S),
        ("membership", r1.log.membership, r2.log.membership),
        ("equivalence", r1.log.equivalence, r2.log.equivalence),
    ):
        i = _first_diff(xs, ys)
        if i is not None:
            out.append(f"{name} differs at step {i}")
    iso = [isomorphic(h1, h2) is not None for h1, h2 in zip(r1.hypotheses, r2.hypotheses)]
    if len(r1.hypotheses) != len(r2.hypotheses):
        out.append(f"hypothesis count {len(r1.hypotheses)} vs {len(r2.hypotheses)}")
    if not all(iso):
        out.append(f"hypothesis {iso.index(False)} not isomorphic")
    return RunComparison(not out, out)
