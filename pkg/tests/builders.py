"""Hand-built proofs shared by several test modules."""
from htlg import nd
from htlg.acceptance import fixture_proof
from htlg.formulas import parse_formula as F
from htlg.lexicon import builtin


def word(lexicon, w):
    return lexicon.lookup(w)[0]


def clause_with_gap(lx, subj, verb, gap, ps, pv):
    """subj verb [gap] : s/np"""
    vp = nd.over_e(nd.lex(word(lx, verb), pv), nd.ax(gap, F("np")))
    return nd.over_i(nd.under_e(nd.lex(word(lx, subj), ps), vp), gap)


def the_pizza(lx, pt="p6", pp="p7"):
    return nd.over_e(nd.lex(word(lx, "the"), pt), nd.lex(word(lx, "pizza"), pp))


def coordination_proof():
    """Ahmed loves and Johani dislikes the pizza : s, directional lexicon."""
    lx = builtin("coordination_lambek")
    left = clause_with_gap(lx, "Ahmed", "loves", "x", "p1", "p2")
    right = clause_with_gap(lx, "Johani", "dislikes", "x2", "p3", "p4")
    conj = nd.over_e(nd.lex(word(lx, "and"), "p5"), right)
    return nd.over_e(nd.under_e(left, conj), the_pizza(lx))


def everyone_sleeps_detour():
    """(λy. y + sleeps) applied to a hypothesis z, as an explicit ⊸I/⊸E detour."""
    lx = builtin("demo")
    body = nd.limp_e(nd.ax("y", F("np")), nd.lex(word(lx, "sleeps"), "q"))
    return nd.limp_e(nd.ax("z", F("np")), nd.limp_i(body, "y"))


def quantifier_proof():
    return fixture_proof()
