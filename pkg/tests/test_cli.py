import json
import random
import shutil
import subprocess
from importlib import resources

from builders import quantifier_proof
from htlg import generators, nd
from htlg import sequent as sq
from htlg.cli import main
from htlg.lexicon import builtin_path
from htlg.serialize import dumps_proof, loads_proof

FIXTURE = str(resources.files("htlg") / "data" / "quantifier_proof.json")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_exit_codes(capsys):
    code, out, _ = run(capsys, "parse", "-l", "demo.lex", "-g", "s", "everyone sleeps")
    assert code == 0
    doc = json.loads(out)
    assert doc["count"] == 1 and doc["derivations"][0]["term"] == "everyone+sleeps"
    assert doc["stats"]["linkings"] == 2
    code, out, _ = run(capsys, "parse", "-l", "demo.lex", "-g", "s", "sleeps everyone")
    assert code == 1 and json.loads(out)["count"] == 0
    code, _, err = run(capsys, "parse", "-l", "missing.lex", "-g", "s", "everyone sleeps")
    assert code == 2 and "missing.lex" in err
    code, _, err = run(capsys, "parse", "-l", "demo.lex", "walks")
    assert code == 2


def test_parse_uses_environment_lexicon(capsys, monkeypatch):
    monkeypatch.setenv("HTLG_LEXICON", builtin_path("demo"))
    code, out, _ = run(capsys, "parse", "-f", "text", "everyone", "sleeps")
    assert code == 0 and "everyone+sleeps" in out


def test_output_formats_agree(capsys):
    outs = {}
    for fmt in ("json", "latex", "dot", "text"):
        code, outs[fmt], _ = run(capsys, "parse", "-l", "quantifiers.lex", "-f", fmt,
                                 "someone delivers everything to its destination")
        assert code == 0
    assert json.loads(outs["json"])["count"] == 2
    assert outs["latex"].count("\\begin{prooftree}") == 2
    assert outs["dot"].count("digraph") == 2
    assert outs["text"].startswith("2 derivation(s)")
    term = "someone+delivers+everything+to+its+destination"
    assert outs["text"].count(term) >= 2 and outs["latex"].count(term) >= 2


def test_check(capsys, tmp_path):
    code, out, _ = run(capsys, "check", FIXTURE)
    assert code == 0 and out.startswith("valid nd proof")
    doc = json.loads(open(FIXTURE).read())
    doc["proof"]["premises"][0]["rule"] = "UnderE"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "check", str(bad))
    assert code == 1 and "invalid" in out
    empty = tmp_path / "empty.json"
    empty.write_text("")
    assert run(capsys, "check", str(empty))[0] == 2
    assert run(capsys, "check", str(tmp_path / "absent.json"))[0] == 2


def test_normalize_fixture_is_byte_identical(capsys, tmp_path):
    out = tmp_path / "n.json"
    assert run(capsys, "transform", "normalize", FIXTURE, "-o", str(out))[0] == 0
    assert out.read_text() == open(FIXTURE).read()


def test_cut_elimination_of_an_injected_principal_cut(capsys, tmp_path):
    seq = sq.nd_to_seq(quantifier_proof())
    assert sq.count_cuts(seq) > 0
    src = tmp_path / "seq.json"
    src.write_text(dumps_proof(seq))
    code, out, _ = run(capsys, "transform", "cut-eliminate", str(src))
    assert code == 0
    kind, p, _ = loads_proof(out)
    assert kind == "seq" and sq.is_cut_free(p)
    sq.check_seq(p)
    assert p.conclusion.term == seq.conclusion.term
    assert sorted(map(str, p.antecedent)) == sorted(map(str, seq.antecedent))


def test_translation_round_trip(capsys, tmp_path):
    p = generators.random_nd_proof(random.Random(5))
    src = tmp_path / "p.json"
    src.write_text(dumps_proof(p))
    code, seq_text, _ = run(capsys, "transform", "nd2seq", str(src))
    assert code == 0
    mid = tmp_path / "s.json"
    mid.write_text(seq_text)
    assert run(capsys, "check", str(mid))[0] == 0
    code, back_text, _ = run(capsys, "transform", "seq2nd", str(mid))
    back = loads_proof(back_text)[1]
    assert nd.proof_key(nd.normalize_nd(back)) == nd.proof_key(nd.normalize_nd(p))
    code, _, _ = run(capsys, "transform", "seq2nd", str(src))
    assert code == 2


def test_to_net(capsys):
    code, out, _ = run(capsys, "transform", "to-net", FIXTURE)
    doc = json.loads(out)
    assert code == 0 and doc["success"]
    assert doc["term"] == "someone+delivers+everything+to+its+destination"
    code, out, _ = run(capsys, "transform", "to-net", FIXTURE, "-f", "dot")
    assert out.startswith("digraph")


def test_usage_errors(capsys):
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "parse", "-l", "demo.lex", "-g", "(s", "everyone")[0] == 2


def test_selftest_subset(capsys):
    code, out, _ = run(capsys, "selftest", "--only", "1", "7")
    assert code == 0
    assert out.count("[PASS]") == 2


def test_console_script_is_installed():
    exe = shutil.which("htlg")
    assert exe is not None
    out = subprocess.run([exe, "parse", "-l", "demo.lex", "-f", "text", "everyone sleeps"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and "everyone+sleeps" in out.stdout
