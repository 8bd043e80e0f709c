"""Decide when residualization yields the canonical RFA.

Two per-state conditions on the left languages ``W_{I,q}`` of an NFA:

* *closed*: ``W_{I,q}`` is upward closed under the right Nerode quasiorder;
  this holds for every state iff ``g_right`` returns the canonical RFA;
* *union of canonical left languages*: ``W_{I,q}`` is a union of left
  languages of states of the canonical RFA; this holds for every state iff
  ``denis_residualize`` returns the canonical RFA.

Every check computes both sides of its biconditional and, in strict mode,
raises :class:`BiconditionalMismatch` if they disagree.  :func:`check` also
requires the second condition to imply the first, state by state.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Optional

from .automata import (
    Automaton,
    Nfa,
    as_nfa,
    empty_nfa,
    isomorphic,
    language_equiv,
    language_includes,
    left_language,
    union,
)
from .constructions import canonical_rfa, denis_residualize, g_right
from .lattice import RIGHT
from .quasiorders import PrincipalSystem, build_nerode, closure_of_regular, principal_language


class BiconditionalMismatch(AssertionError):
    """A per-state condition and the isomorphism it characterizes disagree."""

    def __init__(self, message: str, automaton: Nfa, detail: dict):
        from .automata import render_nfa

        dump = "\n".join(f"{k}: {v}" for k, v in detail.items())
        super().__init__(f"{message}\n{dump}\n--- automaton ---\n{render_nfa(automaton)}")
        self.automaton = automaton
        self.detail = detail


class NotClosed(ValueError):
    """The left language of a state is not a union of co-rests."""


@dataclass(frozen=True)
class StateReport:
    name: str
    closed: bool
    tamm: bool


@dataclass(frozen=True)
class CanonicityReport:
    states: int
    gr_states: int
    nres_states: int
    canonical_states: int
    thm52_holds: bool
    tamm_holds: bool
    gr_is_canonical: bool
    nres_is_canonical: bool
    per_state: tuple

    def to_json(self) -> dict:
        return asdict(self) | {"per_state": [asdict(s) for s in self.per_state]}


@dataclass(frozen=True)
class ConditionResult:
    holds: bool
    per_state: tuple
    is_canonical: bool
    construction_states: int


class _Context:
    """Objects shared by the checks on one automaton."""

    def __init__(self, a: Automaton):
        self.a = as_nfa(a)
        self.nerode: PrincipalSystem = build_nerode(self.a, RIGHT)
        self.canonical = canonical_rfa(self.a).automaton
        self.views = [left_language(self.a, q) for q in range(self.a.n)]


def _closed_flags(ctx: _Context) -> tuple:
    return tuple(
        bool(language_equiv(closure_of_regular(ctx.nerode, v), v)) for v in ctx.views
    )


def theorem52_check(
    a: Automaton, ctx: Optional[_Context] = None, strict: bool = True
) -> ConditionResult:
    """Per state: is ``W_{I,q}`` upward closed under the right Nerode order?"""
    ctx = ctx or _Context(a)
    flags = _closed_flags(ctx)
    gr = g_right(ctx.a).automaton
    iso = isomorphic(gr, ctx.canonical) is not None
    if strict and all(flags) != iso:
        raise BiconditionalMismatch(
            "closure condition disagrees with g_right canonicity",
            ctx.a,
            {"closed": flags, "gr_is_canonical": iso, "gr_states": gr.n},
        )
    return ConditionResult(all(flags), flags, iso, gr.n)


def _tamm_flags(ctx: _Context) -> tuple:
    c = ctx.canonical
    bricks = [left_language(c, p) for p in range(c.n)]
    flags = []
    for v in ctx.views:
        inside = [b for b in bricks if language_includes(b, v)]
        cover = union(*inside) if inside else empty_nfa(v.alphabet)
        flags.append(bool(language_equiv(cover, v)))
    return tuple(flags)


def tamm_check(
    a: Automaton, ctx: Optional[_Context] = None, strict: bool = True
) -> ConditionResult:
    """Per state: is ``W_{I,q}`` a union of left languages of canonical RFA states?"""
    ctx = ctx or _Context(a)
    flags = _tamm_flags(ctx)
    nres = denis_residualize(ctx.a).automaton
    iso = isomorphic(nres, ctx.canonical) is not None
    if strict and all(flags) != iso:
        raise BiconditionalMismatch(
            "union-of-primes condition disagrees with denis_residualize canonicity",
            ctx.a,
            {"tamm": flags, "nres_is_canonical": iso, "nres_states": nres.n},
        )
    return ConditionResult(all(flags), flags, iso, nres.n)


def check(a: Automaton, strict: bool = True) -> CanonicityReport:
    """Both conditions, their biconditionals, and the implication between them.

    With ``strict=False`` disagreements are reported rather than raised.
    """
    ctx = _Context(a)
    t52 = theorem52_check(ctx.a, ctx, strict)
    tamm = tamm_check(ctx.a, ctx, strict)
    for q, (c, u) in enumerate(zip(t52.per_state, tamm.per_state)):
        if strict and u and not c:
            raise BiconditionalMismatch(
                f"state {ctx.a.names[q]} is a union of canonical left languages but not closed",
                ctx.a,
                {"closed": t52.per_state, "tamm": tamm.per_state},
            )
    per_state = tuple(
        StateReport(ctx.a.names[q], t52.per_state[q], tamm.per_state[q]) for q in range(ctx.a.n)
    )
    return CanonicityReport(
        states=ctx.a.n,
        gr_states=t52.construction_states,
        nres_states=tamm.construction_states,
        canonical_states=ctx.canonical.n,
        thm52_holds=t52.holds,
        tamm_holds=tamm.holds,
        gr_is_canonical=t52.is_canonical,
        nres_is_canonical=tamm.is_canonical,
        per_state=per_state,
    )


def state_corests(sys: PrincipalSystem, view: Nfa) -> frozenset:
    """Inclusion-maximal right Nerode principals inside ``view``; raises
    :class:`NotClosed` when their union falls short of ``view``."""
    inside = [i for i in range(len(sys)) if language_includes(principal_language(sys, i), view)]
    union = sys.accepting_view({j for j in range(len(sys)) if any(sys.leq[i][j] for i in inside)})
    verdict = language_equiv(union, view)
    if not verdict:
        raise NotClosed(f"no decomposition: missing word {verdict.witness!r}")
    return frozenset(i for i in inside if not any(sys.strict(j, i) for j in inside))


def corest_decomposition(a: Automaton) -> list:
    """For every state, the co-rests (as right Nerode principal indices) whose
    union is its left language."""
    a = as_nfa(a)
    sys = build_nerode(a, RIGHT)
    out = []
    for q in range(a.n):
        try:
            out.append(state_corests(sys, left_language(a, q)))
        except NotClosed as exc:
            raise NotClosed(f"state {a.names[q]}: {exc}") from None
    return out
