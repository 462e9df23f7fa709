import json
import random

import pytest
from hypothesis import given, strategies as st

from builders import coordination_proof, quantifier_proof
from htlg import generators, nd, prover
from htlg import sequent as sq
from htlg.formulas import parse_formula as F
from htlg.lexicon import builtin
from htlg.serialize import (ProofFormatError, derivation_to_json, dumps_proof, formula_latex,
                            loads_proof, to_latex, to_text)
from htlg.terms import show


def test_fixture_round_trips_byte_for_byte():
    p = quantifier_proof()
    text = dumps_proof(p)
    kind, q, assoc = loads_proof(text)
    assert (kind, assoc) == ("nd", True)
    assert q == p
    assert dumps_proof(q) == text


@given(st.integers(0, 10 ** 6))
def test_random_proofs_round_trip(seed):
    rng = random.Random(seed)
    p = generators.random_nd_proof(rng)
    assert loads_proof(dumps_proof(p))[1] == p
    s = generators.random_seq_with_cuts(rng)
    kind, t, _ = loads_proof(dumps_proof(s))
    assert kind == "seq" and t == s


def test_malformed_input():
    for text in ["", "{", '{"kind": "tree"}', '{"kind": "nd", "proof": {"rule": "Ax"}}']:
        with pytest.raises(ProofFormatError):
            loads_proof(text)


def test_tampered_file_loads_but_fails_checking():
    doc = json.loads(dumps_proof(coordination_proof()))
    doc["proof"]["rule"] = "UnderE"
    _, p, _ = loads_proof(json.dumps(doc))
    with pytest.raises(nd.RuleViolation):
        nd.check_nd(p)


def test_latex_and_text():
    p = coordination_proof()
    tex = to_latex(p)
    assert tex.startswith("\\begin{prooftree}") and tex.rstrip().endswith("\\end{prooftree}")
    assert tex.count("\\AxiomC") == sum(1 for _, n in nd.nodes(p) if not n.premises)
    assert formula_latex(F("(np\\s)/np")) == "(np\\backslash s)/np"
    assert formula_latex(F("(np -o s) -o s")) == "(np \\multimap s) \\multimap s"
    assert "Ahmed+loves+and+Johani+dislikes+the+pizza" in to_text(p)
    seq_tex = to_latex(sq.nd_to_seq(p))
    assert "\\vdash" in seq_tex


def test_derivation_json():
    res = prover.parse("everyone sleeps", F("s"), builtin("demo"))
    doc = derivation_to_json(res[0], {"linkings": res.stats.linkings})
    assert doc["term"] == "everyone+sleeps"
    assert [r for r, _ in doc["trace"]] == ["Beta", "Beta", "LimpI", "Beta"]
    assert doc["stats"]["steps"] == 4 and doc["stats"]["linkings"] == 2
    rebuilt = loads_proof(json.dumps({"kind": "nd", "proof": doc["ndProof"]}))[1]
    nd.check_nd(rebuilt, builtin("demo"))
    assert show(nd.display_term(rebuilt.conclusion)) == "everyone+sleeps"
