import random
import warnings

from hypothesis import given, strategies as st

from builders import coordination_proof, quantifier_proof, word
from htlg import generators, nd, prover
from htlg import sequent as sq
from htlg.formulas import all_formulas, parse_formula as F
from htlg.lexicon import builtin
from htlg.terms import show

S = F("s")
QUANTIFIER_SENTENCE = "someone delivers everything to its destination"


def test_everyone_sleeps():
    res = prover.parse("everyone sleeps", S, builtin("demo"))
    assert [show(d.term) for d in res] == ["everyone+sleeps"]
    assert res.stats.linkings == 2 and res.stats.successes == 1
    assert len(prover.parse("sleeps everyone", S, builtin("demo"))) == 0
    raw = prover.parse("sleeps everyone", S, builtin("demo"), order_check=False)
    assert [show(d.term) for d in raw] == ["everyone+sleeps"]


def test_quantifier_scope_ambiguity():
    res = prover.parse(QUANTIFIER_SENTENCE, S, builtin("quantifiers"))
    assert len(res) == 2
    assert {show(d.term) for d in res} == {QUANTIFIER_SENTENCE.replace(" ", "+")}
    assert len({str(nd.proof_key(d.nd_proof)) for d in res}) == 2
    target = nd.proof_key(quantifier_proof())
    assert sum(nd.proof_key(nd.normalize_nd(d.nd_proof)) == target for d in res) == 1


def test_unbalanced_types_cannot_be_linked():
    res = prover.parse(QUANTIFIER_SENTENCE, S, builtin("quantifiers_unbalanced"))
    assert len(res) == 0 and res.stats.count_mismatches == 1


def test_coordination_under_both_lexicons():
    coordination = "Ahmed loves and Johani dislikes the pizza"
    shifted = "Ahmed loves and the pizza dislikes Johani"
    directional = prover.parse(coordination, S, builtin("coordination_lambek"))
    assert [show(d.term) for d in directional] == [coordination.replace(" ", "+")]
    # The directional lexicon still accepts the other order, as [Ahmed loves] and
    # [the pizza dislikes] sharing the object Johani.
    other = prover.parse(shifted, S, builtin("coordination_lambek"))
    assert len(other) == 1
    linear = prover.parse(shifted, S, builtin("coordination_linear"))
    assert len(linear) == 2


def test_every_derivation_sequentialises_to_a_valid_proof():
    for lexicon, sentence in [("demo", "everyone sleeps"), ("quantifiers", QUANTIFIER_SENTENCE),
                              ("coordination_lambek", "Ahmed loves and Johani dislikes the pizza")]:
        lx = builtin(lexicon)
        for d in prover.parse(sentence, S, lx):
            nd.check_nd(d.nd_proof, lx)
            assert nd.subformula_check(nd.normalize_nd(d.nd_proof)) is None
            assert d.trace and len(d.trace) <= d.initial_size


def test_sequentialised_proof_matches_sequent_search():
    lx = builtin("demo")
    (d,) = prover.parse("everyone sleeps", S, lx)
    (s,) = sq.prove_seq([word(lx, "everyone"), word(lx, "sleeps")], S)
    a = nd.proof_key(nd.normalize_nd(d.nd_proof))
    b = nd.proof_key(nd.normalize_nd(sq.seq_to_nd(s)))
    assert a == b


def test_axiom_structure():
    (d,) = prover.prove([F("np")], F("np"))
    assert d.nd_proof.rule == "Ax" and d.trace == []
    ps, res = prover.net_from_nd(nd.ax("x", F("np")))
    assert len(ps.vertices) == 1 and not ps.links
    assert res.success and res.trace == []


def test_net_from_coordination_proof():
    ps, res = prover.net_from_nd(coordination_proof())
    assert res.success
    assert show(res.term()) == "Ahmed+loves+and+Johani+dislikes+the+pizza"


def test_quantifier_proof_net_is_one_of_the_parse_nets():
    ps, res = prover.net_from_nd(prover.eta_long(quantifier_proof()))
    assert res.success
    parsed = prover.parse(QUANTIFIER_SENTENCE, S, builtin("quantifiers"))
    assert sorted(prover.isomorphic(ps, d.linking) for d in parsed) == [False, True]


def test_goal_without_string_type_warns():
    lx = builtin("demo")
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        prover.parse("sleeps", F("np -o s"), lx)
    assert any("string type" in str(w.message) for w in caught)


def test_parallel_search_is_deterministic():
    lx = builtin("coordination_linear")
    sentence = "Ahmed loves and the pizza dislikes Johani"
    one = prover.parse(sentence, S, lx, jobs=1)
    two = prover.parse(sentence, S, lx, jobs=2)
    assert [d.key() for d in one] == [d.key() for d in two]


def test_ordered_derivability():
    assert prover.derivable([F("np"), F("np\\s")], S, ordered=True)
    assert not prover.derivable([F("np\\s"), F("np")], S, ordered=True)
    assert prover.derivable([F("np\\s"), F("np")], S)


FORMULAS = all_formulas(["np", "s"], 1)


@given(st.lists(st.sampled_from(FORMULAS), min_size=1, max_size=3), st.sampled_from(FORMULAS))
def test_nets_and_sequents_agree(ant, goal):
    assert prover.derivable(ant, goal) == bool(sq.prove_seq(ant, goal, limit=1))


@given(st.lists(st.sampled_from(FORMULAS), min_size=1, max_size=3), st.sampled_from(FORMULAS))
def test_sequent_proofs_give_contractible_nets(ant, goal):
    for p in sq.prove_seq(ant, goal, limit=2):
        proof = sq.seq_to_nd(p)
        _, res = prover.net_from_nd(proof)
        assert res.success
        assert res.steps <= res.initial_size


@given(st.integers(0, 10 ** 6))
def test_random_proofs_give_contractible_nets(seed):
    p = nd.normalize_nd(generators.random_nd_proof(random.Random(seed)))
    _, res = prover.net_from_nd(p)
    assert res.success
