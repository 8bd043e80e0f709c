import json
import os

import pytest

from conftest import FIXTURES
from rfaqo.automata import isomorphic, language_equiv, parse_nfa
from rfaqo.cli import FALSE, OK, USAGE, main

SIX_STATE = os.path.join(FIXTURES, "six_state.nfa")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_info(capsys):
    code, out, _ = run(capsys, "info", SIX_STATE)
    doc = json.loads(out)
    assert code == OK
    assert doc["states"] == 6 and doc["transitions"] == 14
    assert doc["canonical_states"] == 4 and doc["minimal_dfa_states"] == 6
    assert doc["is_rfa"] is False


@pytest.mark.parametrize("method, n", [("denis", 5), ("qo", 4)])
def test_residualize(capsys, method, n):
    code, out, _ = run(capsys, "residualize", "--method", method, SIX_STATE)
    assert code == OK
    assert parse_nfa(out).n == n


def test_canonical_and_double_reversal(capsys):
    _, canon, _ = run(capsys, "canonical", SIX_STATE)
    _, dr, _ = run(capsys, "double-reversal", SIX_STATE)
    assert isomorphic(parse_nfa(canon), parse_nfa(dr)) is not None


def test_check(capsys):
    code, out, _ = run(capsys, "check", SIX_STATE)
    doc = json.loads(out)
    assert code == OK
    assert doc["thm52_holds"] and not doc["tamm_holds"]
    assert run(capsys, "check", "--require-canonical", "gr", SIX_STATE)[0] == OK
    assert run(capsys, "check", "--require-canonical", "nres", SIX_STATE)[0] == FALSE


def test_check_mismatch(capsys, tmp_path):
    path = tmp_path / "m.nfa"
    path.write_text("alphabet a b\nstates 2\ninitial 0 1\nfinal 0 1\ntrans 0 a 0\ntrans 0 b 0\n")
    code, out, err = run(capsys, "check", str(path))
    assert code == FALSE and "biconditional mismatch" in err and not out
    code, out, _ = run(capsys, "check", "--no-strict", str(path))
    assert code == OK and json.loads(out)["gr_is_canonical"]


def test_learn(capsys, tmp_path):
    log, hyp = tmp_path / "log.txt", tmp_path / "h.nfa"
    code, out, _ = run(capsys, "learn", "--target", SIX_STATE, "--log", str(log), "--hypothesis", str(hyp))
    doc = json.loads(out)
    assert code == OK and doc["same_run"] and doc["mismatches"] == []
    assert [r["membership_queries"] for r in doc["runs"]] == [58, 58]
    assert [r["equivalence_queries"] for r in doc["runs"]] == [3, 3]
    lines = log.read_text().splitlines()
    assert lines[0] == "# nl-star" and lines[1] == "M ε 0"
    assert language_equiv(parse_nfa(hyp.read_text()), parse_nfa(open(SIX_STATE).read()))


def test_learn_single_and_capped(capsys):
    code, out, _ = run(capsys, "learn", "--target", SIX_STATE, "--algorithm", "nl-qo")
    assert code == OK and len(json.loads(out)["runs"]) == 1
    code, _, err = run(capsys, "learn", "--target", SIX_STATE, "--max-rounds", "1")
    assert code == FALSE and "exceeded" in err


def test_equiv_and_iso(capsys, tmp_path):
    path = tmp_path / "c.nfa"
    _, canon, _ = run(capsys, "canonical", SIX_STATE)
    path.write_text(canon)
    code, out, _ = run(capsys, "equiv", SIX_STATE, str(path))
    assert code == OK and json.loads(out) == {"equivalent": True, "witness": None}
    code, out, _ = run(capsys, "iso", SIX_STATE, str(path))
    assert code == FALSE and json.loads(out)["isomorphic"] is False
    code, out, _ = run(capsys, "iso", str(path), str(path))
    assert code == OK


def test_equiv_witness(capsys, tmp_path):
    path = tmp_path / "e.nfa"
    path.write_text("alphabet a b c\nstates 1\ninitial 0\nfinal\n")
    code, out, _ = run(capsys, "equiv", SIX_STATE, str(path))
    assert code == FALSE and json.loads(out)["witness"] == "aa"


def test_random(capsys, tmp_path):
    out_dir = tmp_path / "corpus"
    code, _, _ = run(capsys, "random", "--count", "12", "--seed", "3", "--out", str(out_dir))
    assert code == OK
    files = sorted(os.listdir(out_dir))
    assert files[0] == "0000.nfa" and len(files) == 12
    code, out, _ = run(capsys, "random", "--count", "12", "--seed", "3", "--report", "--jobs", "2")
    docs = [json.loads(line) for line in out.splitlines()]
    assert [d["index"] for d in docs] == list(range(12))
    _, serial, _ = run(capsys, "random", "--count", "12", "--seed", "3", "--report")
    assert serial == out


def test_dot(capsys):
    code, out, _ = run(capsys, "dot", SIX_STATE)
    assert code == OK and out.startswith('digraph "six_state"')


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["bogus"],
        ["info", "/nonexistent.nfa"],
        ["residualize", "--method", "magic", SIX_STATE],
        ["random", "--jobs", "0"],
        ["random", "--density", "2"],
    ],
)
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == USAGE and "error" in err


def test_syntax_error_reports_line(capsys, tmp_path):
    path = tmp_path / "bad.nfa"
    path.write_text("alphabet a\nstates 1\ninitial 0\nfinal 0\ntrans 0 z 0\n")
    code, _, err = run(capsys, "info", str(path))
    assert code == USAGE and "line 5" in err


def test_alphabet_mismatch(capsys, tmp_path):
    path = tmp_path / "ab.nfa"
    path.write_text("alphabet a b\nstates 1\ninitial 0\nfinal 0\n")
    code, _, err = run(capsys, "equiv", SIX_STATE, str(path))
    assert code == USAGE
