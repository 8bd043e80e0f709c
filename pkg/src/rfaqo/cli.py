"""Command-line interface.

Exit codes: 0 on success or when the tested property holds, 1 when it does
not, 2 on usage or input errors.  Reports go to stdout as JSON; diagnostics
go to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Optional, Sequence

from . import __version__
from .automata import (
    AlphabetMismatch,
    Nfa,
    NfaSyntaxError,
    determinize,
    format_word,
    is_empty,
    isomorphic,
    language_equiv,
    minimize,
    parse_nfa,
    render_nfa,
    to_dot,
)
from .canonicity import BiconditionalMismatch, check
from .constructions import canonical_rfa, denis_residualize, double_reversal_rfa, g_right
from .corpus import CorpusSpec, random_nfa
from .lattice import classify
from .learner import LearningDiverged, Teacher, compare_runs, run_nl_qo, run_nl_star

OK, FALSE, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _load(path: str) -> Nfa:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None
    try:
        return parse_nfa(text)
    except NfaSyntaxError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _emit(doc) -> None:
    json.dump(doc, sys.stdout, indent=2, ensure_ascii=False)
    sys.stdout.write("\n")


def cmd_info(args) -> int:
    a = _load(args.file)
    flags = classify(a)
    _emit(
        {
            "states": a.n,
            "transitions": a.num_transitions,
            "alphabet": list(a.alphabet),
            "initial": [a.names[q] for q in sorted(a.initial)],
            "final": [a.names[q] for q in sorted(a.final)],
            "empty_language": is_empty(a),
            "dfa_states": determinize(a).n,
            "minimal_dfa_states": minimize(determinize(a)).n,
            "canonical_states": canonical_rfa(a).n,
            **flags._asdict(),
        }
    )
    return OK


def cmd_residualize(args) -> int:
    a = _load(args.file)
    build = g_right if args.method == "qo" else denis_residualize
    sys.stdout.write(render_nfa(build(a).automaton))
    return OK


def cmd_canonical(args) -> int:
    sys.stdout.write(render_nfa(canonical_rfa(_load(args.file)).automaton))
    return OK


def cmd_double_reversal(args) -> int:
    sys.stdout.write(render_nfa(double_reversal_rfa(_load(args.file)).automaton))
    return OK


def cmd_check(args) -> int:
    a = _load(args.file)
    try:
        report = check(a, strict=not args.no_strict)
    except BiconditionalMismatch as exc:
        print(f"biconditional mismatch: {exc}", file=sys.stderr)
        return FALSE
    _emit(report.to_json())
    if args.require_canonical == "gr" and not report.gr_is_canonical:
        return FALSE
    if args.require_canonical == "nres" and not report.nres_is_canonical:
        return FALSE
    return OK


def _run_summary(result) -> dict:
    return {
        "algorithm": result.algorithm,
        "rounds": result.rounds,
        "membership_queries": len(result.log.membership),
        "equivalence_queries": len(result.log.equivalence),
        "states": result.hypothesis.n,
        "P": [format_word(u) for u in result.P],
        "S": [format_word(x) for x in result.S],
    }


def cmd_learn(args) -> int:
    target = _load(args.target)
    teacher = Teacher(target)
    names = ["nl-star", "nl-qo"] if args.algorithm == "both" else [args.algorithm]
    runners = {"nl-star": run_nl_star, "nl-qo": run_nl_qo}
    results = []
    try:
        for name in names:
            results.append(runners[name](teacher, max_rounds=args.max_rounds))
    except LearningDiverged as exc:
        print(str(exc), file=sys.stderr)
        return FALSE
    doc = {"runs": [_run_summary(r) for r in results]}
    code = OK
    if len(results) == 2:
        cmp = compare_runs(*results)
        doc["same_run"] = cmp.equal
        doc["mismatches"] = cmp.mismatches
        code = OK if cmp.equal else FALSE
    if args.log:
        with open(args.log, "w", encoding="utf-8") as fh:
            for r in results:
                if len(results) > 1:
                    fh.write(f"# {r.algorithm}\n")
                fh.write("\n".join(r.log.lines()) + "\n")
    if args.hypothesis:
        with open(args.hypothesis, "w", encoding="utf-8") as fh:
            fh.write(render_nfa(results[-1].hypothesis))
    _emit(doc)
    return code


def cmd_equiv(args) -> int:
    a, b = _load(args.first), _load(args.second)
    verdict = language_equiv(a, b)
    witness = None if verdict.witness is None else format_word(verdict.witness)
    _emit({"equivalent": verdict.holds, "witness": witness})
    return OK if verdict.holds else FALSE


def cmd_iso(args) -> int:
    a, b = _load(args.first), _load(args.second)
    m = isomorphic(a, b)
    mapping = None if m is None else {a.names[q]: b.names[r] for q, r in sorted(m.items())}
    _emit({"isomorphic": m is not None, "mapping": mapping})
    return OK if m is not None else FALSE


def _sample(job) -> tuple:
    spec, index, report = job
    a = random_nfa(spec, index)
    doc = check(a, strict=False).to_json() if report else None
    return render_nfa(a), doc


def cmd_random(args) -> int:
    spec = CorpusSpec(
        count=args.count,
        max_states=args.max_states,
        alphabet_size=args.alphabet_size,
        density=args.density,
        p_initial=args.p_initial,
        p_final=args.p_final,
        seed=args.seed,
    )
    jobs = [(spec, i, args.report) for i in range(spec.count)]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_sample, jobs, chunksize=16))
    else:
        results = [_sample(j) for j in jobs]
    width = max(4, len(str(max(spec.count - 1, 0))))
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        for i, (text, _) in enumerate(results):
            with open(os.path.join(args.out, f"{i:0{width}d}.nfa"), "w", encoding="utf-8") as fh:
                fh.write(text)
    elif not args.report:
        for i, (text, _) in enumerate(results):
            sys.stdout.write(f"# sample {i}\n{text}\n")
    if args.report:
        for i, (_, doc) in enumerate(results):
            sys.stdout.write(json.dumps({"index": i, **doc}, ensure_ascii=False) + "\n")
    return OK


def cmd_dot(args) -> int:
    a = _load(args.file)
    title = args.title or os.path.splitext(os.path.basename(args.file))[0]
    sys.stdout.write(to_dot(a, title))
    return OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="rfaqo", description="Residual automata from quasiorders.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("info", help="summary and RFA classification")
    s.add_argument("file")
    s.set_defaults(func=cmd_info)

    s = sub.add_parser("residualize", help="residual automaton of an NFA")
    s.add_argument("--method", choices=("qo", "denis"), default="qo")
    s.add_argument("file")
    s.set_defaults(func=cmd_residualize)

    s = sub.add_parser("canonical", help="canonical RFA of the language")
    s.add_argument("file")
    s.set_defaults(func=cmd_canonical)

    s = sub.add_parser("double-reversal", help="canonical RFA via reverse/residualize twice")
    s.add_argument("file")
    s.set_defaults(func=cmd_double_reversal)

    s = sub.add_parser("check", help="canonicity conditions report")
    s.add_argument("file")
    s.add_argument("--require-canonical", choices=("gr", "nres"))
    s.add_argument(
        "--no-strict",
        action="store_true",
        help="report biconditional disagreements instead of aborting",
    )
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("learn", help="learn the canonical RFA of a target")
    s.add_argument("--target", required=True)
    s.add_argument("--algorithm", choices=("nl-star", "nl-qo", "both"), default="both")
    s.add_argument("--max-rounds", type=int)
    s.add_argument("--log", help="write the query log here")
    s.add_argument("--hypothesis", help="write the learned automaton here")
    s.set_defaults(func=cmd_learn)

    for name, fn, helptext in (
        ("equiv", cmd_equiv, "language equivalence"),
        ("iso", cmd_iso, "automaton isomorphism"),
    ):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("first")
        s.add_argument("second")
        s.set_defaults(func=fn)

    s = sub.add_parser("random", help="reproducible random NFA corpus")
    d = CorpusSpec()
    s.add_argument("--count", type=int, default=d.count)
    s.add_argument("--max-states", type=int, default=d.max_states)
    s.add_argument("--alphabet-size", type=int, default=d.alphabet_size)
    s.add_argument("--density", type=float, default=d.density)
    s.add_argument("--p-initial", type=float, default=d.p_initial)
    s.add_argument("--p-final", type=float, default=d.p_final)
    s.add_argument("--seed", type=int, default=d.seed)
    s.add_argument("--out", help="directory for one .nfa file per sample")
    s.add_argument("--report", action="store_true", help="print a canonicity report per sample")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_random)

    s = sub.add_parser("dot", help="Graphviz rendering")
    s.add_argument("file")
    s.add_argument("--title")
    s.set_defaults(func=cmd_dot)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "jobs", 1) < 1:
            raise UsageError("--jobs must be at least 1")
        return args.func(args)
    except UsageError as exc:
        print(f"rfaqo: error: {exc}", file=sys.stderr)
        return USAGE
    except (ValueError, AlphabetMismatch) as exc:
        print(f"rfaqo: error: {exc}", file=sys.stderr)
        return USAGE
