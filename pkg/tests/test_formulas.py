import random

import pytest
from hypothesis import given, strategies as st

from htlg.formulas import (Atom, FormulaSyntaxError, Limp, Over, Polarity, Under,
                           WellFormednessError, all_formulas, atom_balance, connectives, is_lambek,
                           parse_formula, pros)
from htlg.generators import random_formula
from htlg.terms import ST, arrow

NP, S = Atom("np"), Atom("s")


def test_parse_examples():
    assert parse_formula("(np\\s)/np") == Over(Under(NP, S), NP)
    assert parse_formula("np -o s") == Limp(NP, S)
    assert parse_formula("np -o np -o s") == Limp(NP, Limp(NP, S))
    with pytest.raises(WellFormednessError):
        parse_formula("(np -o s)/np")
    with pytest.raises(FormulaSyntaxError):
        parse_formula("np /")


def test_prosodic_types():
    assert pros(parse_formula("(np\\s)/np")) == ST
    assert pros(parse_formula("(np -o s) -o s")) == arrow(arrow(ST, ST), ST)
    assert pros(NP) == ST


def test_is_lambek():
    assert is_lambek(parse_formula("((np\\s)/np)/np"))
    assert not is_lambek(parse_formula("np -o (np -o s)"))
    assert is_lambek(S)


def test_atom_balance_of_transitive_verb():
    bal = atom_balance(parse_formula("(np\\s)/np"))
    assert bal == {("np", Polarity.NEG): 2, ("s", Polarity.POS): 1}


def test_all_formulas_counts():
    # 2 atoms, then every connective over formulas of the level below:
    # 3 * 2 * 2 at one connective; at two, -o over 14 * 14 plus / and \ over 10 * 10 Lambek ones
    assert len(all_formulas(["np", "s"], 1)) == 2 + 3 * 2 * 2
    assert len(all_formulas(["np", "s"], 1, lambek_only=True)) == 2 + 2 * 2 * 2
    assert len(all_formulas(["np", "s"], 2)) == 2 + 14 * 14 + 2 * 10 * 10
    assert all(connectives(f) <= 1 for f in all_formulas(["np", "s"], 1))


@given(st.integers(0, 10 ** 6), st.integers(0, 3))
def test_show_parse_round_trip(seed, depth):
    f = random_formula(random.Random(seed), depth)
    assert parse_formula(str(f)) == f


@given(st.integers(0, 10 ** 6))
def test_lambek_formulas_have_string_type(seed):
    f = random_formula(random.Random(seed), 3, lambek=True)
    assert is_lambek(f)
    assert pros(f) == ST
