import math
import random

import pytest
from hypothesis import given, strategies as st

from builders import word
from htlg import nd, prover
from htlg.formulas import Polarity, atom_balance, parse_formula as F
from htlg.generators import random_formula
from htlg.lexicon import builtin
from htlg.proofnet import (CountMismatch, NotContractible, OccurrenceClass, apply_linking,
                           build_unlinked, classify, contract_vertices, count_linkings,
                           enumerate_linkings, leaf_classes, linkings, to_dot, unfold)


def _everyone_sleeps():
    lx = builtin("demo")
    return build_unlinked([word(lx, "everyone"), word(lx, "sleeps")], F("s"))


def test_unfold_quantifier_type():
    ps = unfold(F("(np -o s) -o s"), Polarity.POS)
    kinds = sorted((l.kind, l.index) for l in ps.links.values())
    assert kinds == [("par", "lambda"), ("tensor", "@")]
    par = next(l for l in ps.links.values() if l.kind == "par")
    tensor = next(l for l in ps.links.values() if l.kind == "tensor")
    assert par.conclusions[0] == tensor.premisses[1]          # the par hangs above the @ argument
    assert [ps.vertices[v].formula for v in par.conclusions] == [F("np -o s"), F("np")]
    assert ps.vertices[par.premisses[0]].formula == F("s")
    assert sorted((a, p.value) for _, a, p in ps.leaves) == [("np", "+"), ("s", "+"), ("s", "-")]


def test_unfold_atom_and_transitive_verb():
    ps = unfold(F("np"), Polarity.NEG)
    assert not ps.links and ps.leaves == [(ps.goal, "np", Polarity.NEG)]
    ps = unfold(F("(np\\s)/np"), Polarity.POS)
    assert [l.kind for l in ps.links.values()] == ["tensor", "tensor"]
    assert sorted((a, p.value) for _, a, p in ps.leaves) == [("np", "-"), ("np", "-"), ("s", "+")]


@given(st.integers(0, 10 ** 6), st.sampled_from([Polarity.POS, Polarity.NEG]))
def test_unfold_leaves_match_atom_balance(seed, pol):
    f = random_formula(random.Random(seed), 3)
    ps = unfold(f, pol)
    counts = {}
    for _, a, p in ps.leaves:
        counts[(a, p)] = counts.get((a, p), 0) + 1
    assert counts == atom_balance(f, pol)
    ps.check()


def test_linking_counts():
    ps = _everyone_sleeps()
    assert count_linkings(ps) == 2
    assert len(list(linkings(ps))) == 2
    one = build_unlinked([F("np")], F("np"))
    assert list(linkings(one)) == [[(one.goal, one.hyps[0])]]
    with pytest.raises(CountMismatch):
        count_linkings(build_unlinked([F("np")], F("s")))


@given(st.integers(0, 10 ** 6))
def test_linking_count_is_product_of_factorials(seed):
    rng = random.Random(seed)
    hyps = [random_formula(rng, 2) for _ in range(rng.randint(1, 3))]
    ps = build_unlinked(hyps, random_formula(rng, 2))
    try:
        n = count_linkings(ps)
    except CountMismatch:
        return
    expected = math.prod(math.factorial(len(neg)) for neg, _ in leaf_classes(ps).values())
    assert n == expected == len(list(linkings(ps)))
    for linked in enumerate_linkings(hyps, ps.vertices[ps.goal].formula):
        linked.check()
        assert not linked.leaves


def test_contracting_the_sentence_atoms():
    ps = _everyone_sleeps()
    par = next(l for l in ps.links.values() if l.kind == "par")
    s_hyp = par.premisses[0]
    app = next(l for l in ps.links.values() if l.index == "@" and ps.vertices[l.premisses[0]].entry.word == "sleeps")
    s_concl = app.conclusions[0]
    merged = contract_vertices(ps, s_hyp, s_concl)
    assert merged == s_concl and s_hyp not in ps.vertices
    assert par.premisses == [s_concl]
    ps.check()


def test_contraction_errors():
    ps = _everyone_sleeps()
    lexical = ps.hyps[0]
    with pytest.raises(NotContractible):
        contract_vertices(ps, lexical, ps.goal)
    leaf = ps.leaves[0][0]
    with pytest.raises(NotContractible):
        contract_vertices(ps, leaf, leaf)


def test_occurrence_classes():
    lx = builtin("demo")
    good = prover.parse("everyone sleeps", F("s"), lx)[0].linking
    for v, info in good.vertices.items():
        if info.formula.__class__.__name__ == "Atom":
            assert classify(good, v) is OccurrenceClass.AXIOMATIC
    flows = [v for v, i in good.vertices.items() if i.formula == F("np -o s")]
    assert flows and all(classify(good, v) is OccurrenceClass.FLOW for v in flows)
    body = nd.limp_e(nd.ax("y", F("np")), nd.lex(word(lx, "sleeps"), "q"))
    detour = nd.limp_e(nd.ax("z", F("np")), nd.limp_i(body, "y"))
    ps, _ = prover.net_from_nd(detour)
    cuts = [v for v in ps.vertices if classify(ps, v) is OccurrenceClass.CUT]
    assert [ps.vertices[v].formula for v in cuts] == [F("np -o s")]


def test_dot_export():
    ps = apply_linking(_everyone_sleeps(), next(linkings(_everyone_sleeps())))
    dot = to_dot(ps)
    assert dot.startswith("digraph") and "everyone" in dot and "λ" in dot
