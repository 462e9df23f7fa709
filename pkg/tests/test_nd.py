import random
from collections import Counter

import pytest
from hypothesis import given, strategies as st

from builders import coordination_proof, everyone_sleeps_detour, quantifier_proof, the_pizza, word
from htlg import generators, nd
from htlg.formulas import parse_formula as F
from htlg.lexicon import builtin
from htlg.nd import RuleViolation
from htlg.terms import alpha_eq, equivalent, show


def test_quantifier_proof_is_valid_and_normal():
    p = quantifier_proof()
    nd.check_nd(p, builtin("quantifiers"))
    assert nd.is_normal(p)
    assert nd.subformula_check(p) is None
    assert nd.normalize_nd(p) == p
    assert show(nd.display_term(p.conclusion)) == "someone+delivers+everything+to+its+destination"


def test_coordination_proof_is_valid_and_normal():
    p = coordination_proof()
    nd.check_nd(p, builtin("coordination_lambek"))
    assert nd.is_normal(p)
    assert show(nd.display_term(p.conclusion)) == "Ahmed+loves+and+Johani+dislikes+the+pizza"


def test_swapped_premisses_are_rejected():
    p = quantifier_proof()
    swapped = nd.NDProof(p.rule, p.premises[::-1], p.conclusion, p.discharged, p.entry)
    with pytest.raises(RuleViolation):
        nd.check_nd(swapped)


def test_wrong_conclusion_formula_is_rejected():
    p = coordination_proof()
    bad = nd.NDProof(p.rule, p.premises, nd.Judgment(p.antecedent, p.term, F("np")))
    with pytest.raises(RuleViolation) as exc:
        nd.check_nd(bad)
    assert exc.value.path == ""


def test_substituting_into_an_axiom_returns_the_inner_proof():
    inner = the_pizza(builtin("coordination_lambek"))
    assert nd.substitute(nd.ax("x", F("np")), "x", inner) == inner


def test_substituting_an_axiom_gives_an_alpha_variant():
    lx = builtin("coordination_lambek")
    outer = nd.over_e(nd.lex(word(lx, "loves"), "p2"), nd.ax("y", F("np")))
    out = nd.substitute(outer, "y", nd.ax("z", F("np")))
    nd.check_nd(out)
    assert out == nd.rename_hypothesis(outer, "y", "z")


def test_grafting_a_subproof_into_a_hypothesis():
    lx = builtin("coordination_lambek")
    clause = coordination_proof().premises[0].premises[0]
    assert clause.formula == F("s/np")
    outer = nd.over_e(nd.ax("z", F("s/np")), the_pizza(lx))
    out = nd.substitute(outer, "z", clause)
    nd.check_nd(out, lx)
    assert show(nd.display_term(out.conclusion)) == "Ahmed+loves+the+pizza"


def test_detour_is_removed():
    p = everyone_sleeps_detour()
    nd.check_nd(p)
    assert not nd.is_normal(p)
    assert len(nd.redexes(p)) == 1
    q = nd.normalize_nd(p)
    assert nd.is_normal(q)
    assert nd.rule_counts(q) == Counter({"LimpE": 1, "Ax": 1, "Lex": 1})
    assert show(nd.display_term(q.conclusion)) == "z+sleeps"


def test_slash_detour_is_not_normal():
    lx = builtin("coordination_lambek")
    body = nd.under_e(nd.lex(word(lx, "Ahmed"), "p1"),
                      nd.over_e(nd.lex(word(lx, "loves"), "p2"), nd.ax("y", F("np"))))
    p = nd.over_e(nd.over_i(body, "y"), the_pizza(lx))
    nd.check_nd(p, lx)
    assert not nd.is_normal(p)
    assert nd.is_normal(nd.normalize_nd(p))


def test_leaves_are_normal():
    assert nd.is_normal(nd.ax("x", F("np")))
    assert nd.is_normal(nd.lex(word(builtin("demo"), "sleeps"), "p"))
    leaf = nd.ax("x", F("np"))
    assert nd.normalize_nd(leaf) == leaf


def test_introduction_edge_condition():
    lx = builtin("coordination_lambek")
    s = nd.under_e(nd.ax("x", F("np")), nd.over_e(nd.lex(word(lx, "loves"), "p2"), nd.ax("y", F("np"))))
    with pytest.raises(RuleViolation):
        nd.over_i(s, "x")
    with pytest.raises(RuleViolation):
        nd.under_i(s, "y")
    assert nd.under_i(s, "x").formula == F("np\\s")


seeds = st.integers(0, 10 ** 6)


@given(seeds)
def test_normalization_properties(seed):
    p = generators.random_nd_proof(random.Random(seed), max_size=15)
    nd.check_nd(p)
    steps = []
    q = nd.normalize_nd(p, on_step=lambda *a: steps.append(a))
    nd.check_nd(q)
    assert len(steps) <= nd.proof_size(p)
    assert nd.is_normal(q)
    assert Counter(q.antecedent) == Counter(p.antecedent) and q.formula == p.formula
    assert equivalent(q.term, p.term)
    assert nd.subformula_check(q) is None


@given(seeds)
def test_all_reduction_orders_agree(seed):
    p = generators.random_nd_proof(random.Random(seed), max_size=12, require_redex=True)
    forms = nd.all_normal_forms(p)
    assert len([k for k in forms if k != "_longest"]) == 1
    assert forms["_longest"] <= nd.proof_size(p)


@given(seeds)
def test_alpha_renaming_preserves_validity(seed):
    p = generators.random_nd_proof(random.Random(seed))
    hyps = [b for b in p.antecedent if not b.lexical]
    if hyps:
        q = nd.rename_hypothesis(p, hyps[0].var, "fresh_name")
        nd.check_nd(q)
        assert alpha_eq(nd.canon(q.term), nd.canon(nd.substitute(p, hyps[0].var, nd.ax("fresh_name", hyps[0].formula)).term))
