"""Law checks shared by the property tests and the acceptance suite.

Each function returns ``None`` when the law holds and a short description
of the first failure otherwise.
"""

from rfaqo.automata import (
    concat_symbol,
    determinize,
    intersection,
    isomorphic,
    language_equiv,
    language_includes,
    left_language,
    minimize,
    reverse,
    universal_nfa,
)
from rfaqo.constructions import (
    canonical_rfa,
    denis_residualize,
    double_reversal_rfa,
    f_left,
    f_right,
    g_left,
    g_right,
    gr_embedding,
)
from rfaqo.lattice import LEFT, RIGHT
from rfaqo.quasiorders import (
    build_automata_qo,
    build_nerode,
    is_L_preserving,
    principal_language,
    prime_count,
    refines,
    same_relation,
)


def _small(a):
    return minimize(determinize(a)).to_nfa()


def meet(parts, alphabet):
    """Intersection of ``parts``; ``Σ*`` for no parts.  Minimized at every
    step to keep the product small."""
    acc = universal_nfa(alphabet)
    for p in parts:
        acc = _small(intersection(acc, p))
    return acc


def _prepend(a, sym):
    return reverse(concat_symbol(reverse(a), sym))


def constructions(a):
    return {
        "F_r": f_right(a).automaton,
        "F_l": f_left(a).automaton,
        "G_r": g_right(a).automaton,
        "G_l": g_left(a).automaton,
        "N_res": denis_residualize(a).automaton,
        "canonical": canonical_rfa(a).automaton,
    }


def language_preservation(a):
    for name, b in constructions(a).items():
        v = language_equiv(b, a)
        if not v:
            return f"{name} differs on {v.witness!r}"
    return None


def size_and_embedding(a):
    gr, nres = g_right(a), denis_residualize(a)
    c = canonical_rfa(a).n
    if not c <= gr.n <= nres.n:
        return f"sizes canonical={c} G_r={gr.n} N_res={nres.n}"
    if gr_embedding(gr, nres) is None:
        return "no embedding of G_r into N_res"
    return None


def double_reversal(a):
    canon = canonical_rfa(a).automaton
    if isomorphic(double_reversal_rfa(a).automaton, canon) is None:
        return "double reversal is not the canonical RFA"
    if isomorphic(g_right(g_left(a).automaton).automaton, f_right(a).automaton) is None:
        return "G_r(G_l(N)) is not F_r(L)"
    return None


def duality(a):
    r = reverse(a)
    if isomorphic(f_left(a).automaton, reverse(f_right(r).automaton)) is None:
        return "F_l(L) is not (F_r(L^R))^R"
    if isomorphic(g_left(a).automaton, reverse(g_right(r).automaton)) is None:
        return "G_l(N) is not (G_r(N^R))^R"
    return None


def automata_refines_nerode(a):
    for side in (RIGHT, LEFT):
        if not refines(build_automata_qo(a, side), build_nerode(a, side)):
            return f"{side} automata quasiorder is not inside the Nerode one"
    return None


def closure_concatenation(sys):
    """``cl(u)·a ⊆ cl(ua)`` on the right, ``a·cl(u) ⊆ cl(au)`` on the left."""
    for i, rep in enumerate(sys.reps):
        cl = principal_language(sys, i)
        for sym in sys.alphabet:
            if sys.side == RIGHT:
                lhs, j = concat_symbol(cl, sym), sys.class_of(rep.witness + (sym,))
            else:
                lhs, j = _prepend(cl, sym), sys.class_of((sym,) + rep.witness)
            if not language_includes(lhs, principal_language(sys, j)):
                return f"{sys.side} principal {i} on {sym}"
    return None


def closure_concatenation_both_sides(a):
    for side in (RIGHT, LEFT):
        for sys in (build_automata_qo(a, side), build_nerode(a, side)):
            bad = closure_concatenation(sys)
            if bad:
                return f"{sys.source}: {bad}"
    return None


def principals_as_intersections(a):
    """Right automata principal of ``u`` = meet of ``W_{I,q}`` over ``q ∈ post_u(I)``."""
    sys = build_automata_qo(a, RIGHT)
    views = [_small(left_language(a, q)) for q in range(a.n)]
    for i, rep in enumerate(sys.reps):
        want = meet([views[q] for q in sorted(rep.key)], a.alphabet)
        if not language_equiv(principal_language(sys, i), want):
            return f"principal {i} keyed {sorted(rep.key)}"
    return None


def corfa_orders_agree(a):
    """On a co-RFA without empty states both right quasiorders coincide; the
    co-RFA is ``g_left(a)``."""
    g = g_left(a).automaton
    if not same_relation(build_automata_qo(g, RIGHT), build_nerode(g, RIGHT)):
        return "automata and Nerode orders differ on G_l(N)"
    return None


def prime_count_monotone(a):
    for side in (RIGHT, LEFT):
        fine, coarse = build_automata_qo(a, side), build_nerode(a, side)
        if not (is_L_preserving(fine, a) and is_L_preserving(coarse, a)):
            return f"{side} order is not L-preserving"
        if prime_count(fine) < prime_count(coarse):
            return f"{side}: {prime_count(fine)} < {prime_count(coarse)}"
    return None


def composite_as_meet(a):
    """Every composite Nerode principal is the meet of the principals of its
    strict predecessors."""
    sys = build_nerode(a, RIGHT)
    for i in range(len(sys)):
        if not sys.composite[i]:
            continue
        parts = [principal_language(sys, j) for j in range(len(sys)) if sys.strict(j, i)]
        if not language_equiv(principal_language(sys, i), meet(parts, a.alphabet)):
            return f"composite principal {i}"
    return None


QUASIORDER_LAWS = {
    "automata order inside Nerode order": automata_refines_nerode,
    "closure-concatenation": closure_concatenation_both_sides,
    "principals as intersections": principals_as_intersections,
    "co-RFA orders agree": corfa_orders_agree,
    "prime-count monotonicity": prime_count_monotone,
    "composite as intersection": composite_as_meet,
}
