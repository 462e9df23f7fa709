import random
from collections import Counter

import pytest
from hypothesis import given, strategies as st

from builders import coordination_proof, quantifier_proof, word
from htlg import generators, nd
from htlg import sequent as sq
from htlg.formulas import parse_formula as F
from htlg.lexicon import builtin
from htlg.nd import Binding, RuleViolation
from htlg.terms import equivalent, show


def _term(p):
    return show(nd.display_term(p.conclusion))


def test_axiom_translations_are_axioms():
    a = nd.ax("x", F("np"))
    s = sq.nd_to_seq(a)
    assert s.rule == "Ax" and not s.premises
    assert sq.seq_to_nd(s) == a


def test_lexical_leaf_becomes_lex_over_axiom():
    e = word(builtin("demo"), "sleeps")
    s = sq.nd_to_seq(nd.lex(e, "p"))
    assert s.rule == "Lex"
    assert [c.rule for c in s.premises] == ["Ax"]
    sq.check_seq(s, builtin("demo"))


@pytest.mark.parametrize("build,lexicon", [(coordination_proof, "coordination_lambek"), (quantifier_proof, "quantifiers")])
def test_translation_round_trip(build, lexicon):
    p = build()
    s = sq.nd_to_seq(p)
    sq.check_seq(s, builtin(lexicon))
    assert equivalent(s.term, p.term)
    back = sq.seq_to_nd(s)
    nd.check_nd(back, builtin(lexicon))
    assert nd.proof_key(nd.normalize_nd(back)) == nd.proof_key(nd.normalize_nd(p))


def test_over_right_needs_the_variable_on_the_right():
    prem = sq.under_l(sq.s_ax("x", F("np")), sq.s_ax("q", F("s")), "q", "y")
    assert _term(prem) == "x+y"
    with pytest.raises(RuleViolation):
        sq.over_r(prem, "x")
    assert sq.under_r(prem, "x").formula == F("np\\s")


def test_cut_against_axiom_is_removed():
    body = sq.prove_seq([Binding("y", F("np")), word(builtin("coordination_lambek"), "loves"), Binding("z", F("np"))], F("s"))[0]
    q = sq.cut(sq.s_ax("a0", F("np")), body, "y")
    out = sq.eliminate_cuts(q)
    assert sq.is_cut_free(out)
    expected = sq.rename(body, "y", "a0")
    assert out.conclusion == expected.conclusion
    assert nd.rule_counts(out) == nd.rule_counts(expected)


def test_cut_free_proof_is_a_fixpoint():
    p = sq.prove_seq([F("np"), F("(np\\s)/np"), F("np")], F("s"))[0]
    assert sq.is_cut_free(p)
    assert sq.eliminate_cuts(p) == p


def test_principal_linear_cut():
    # f : np -o s  =>  \x. f x : np -o s     and     a : np, g : np -o s  =>  g a : s
    left = sq.limp_r(sq.limp_l(sq.s_ax("x", F("np")), sq.s_ax("q", F("s")), "q", "f"), "x")
    right = sq.limp_l(sq.s_ax("a", F("np")), sq.s_ax("r", F("s")), "r", "g")
    p = sq.cut(left, right, "g")
    sq.check_seq(p)
    cases = []
    out = sq.eliminate_cuts(p, on_reduce=lambda parent, m, case: cases.append((m, case)))
    assert cases[0][1] == "principal--o"
    measures = [m for m, _ in cases]
    assert sq.is_cut_free(out)
    sq.check_seq(out)
    assert _term(out) == "f a"
    assert measures[0] == sq.cut_measure(left, right, "g")


def test_prove_seq_examples():
    lx = builtin("demo")
    proofs = sq.prove_seq([word(lx, "everyone"), word(lx, "sleeps")], F("s"))
    assert [_term(p) for p in proofs] == ["everyone+sleeps"]
    assert sq.prove_seq([F("np")], F("s")) == []
    loves = word(builtin("coordination_lambek"), "loves")
    proofs = sq.prove_seq([Binding("x", F("np")), loves, Binding("y", F("np"))], F("s"))
    # the antecedent is a multiset, so either hypothesis can be the subject
    assert sorted(_term(p) for p in proofs) == ["x+loves+y", "y+loves+x"]
    for p in proofs:
        sq.check_seq(p, builtin("coordination_lambek"))
        assert sq.is_cut_free(p)


seeds = st.integers(0, 10 ** 6)


@given(seeds)
def test_cut_elimination_properties(seed):
    s = generators.random_seq_with_cuts(random.Random(seed))
    sq.check_seq(s)
    assert not sq.is_cut_free(s)
    out = sq.eliminate_cuts(s)   # raises MeasureError if the measure fails to decrease
    sq.check_seq(out)
    assert sq.is_cut_free(out)
    assert equivalent(out.term, s.term)
    assert Counter(out.antecedent) == Counter(s.antecedent) and out.formula == s.formula


@given(seeds)
def test_nd_sequent_round_trip(seed):
    p = generators.random_nd_proof(random.Random(seed))
    s = sq.nd_to_seq(p)
    sq.check_seq(s)
    back = sq.seq_to_nd(s)
    nd.check_nd(back)
    assert nd.proof_key(nd.normalize_nd(back)) == nd.proof_key(nd.normalize_nd(p))
