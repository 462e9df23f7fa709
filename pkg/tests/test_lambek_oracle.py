import itertools

import pytest

from htlg import sequent as sq
from htlg.formulas import all_formulas, parse_formula as F
from htlg.lambek_oracle import encode, lambek_derivable
from htlg.nd import Binding
from htlg.prover import hypothesis_order_ok


@pytest.mark.parametrize("ant,goal,expected", [
    (["np", "np\\s"], "s", True),
    (["s/np", "np"], "s", True),
    (["np"], "s/(np\\s)", True),
    (["a/b", "b/c"], "a/c", True),
    (["np", "(np\\s)/np", "np"], "s", True),
    (["np\\s", "np"], "s", False),
    (["np", "np"], "np", False),
    (["np/np"], "np", False),
])
def test_hand_cases(ant, goal, expected):
    assert lambek_derivable([F(a) for a in ant], F(goal)) is expected


def test_encoding():
    assert encode(F("(np\\s)/np")) == ("/", ("\\", "np", "s"), "np")
    with pytest.raises(ValueError):
        encode(F("np -o s"))


def test_agrees_with_ordered_sequent_search_on_two_hypotheses():
    fs = all_formulas(["np", "s"], 1, lambek_only=True)
    names = ["x1", "x2"]
    for ant in itertools.product(fs, repeat=2):
        for g in fs:
            proofs = sq.prove_seq([Binding(n, f) for n, f in zip(names, ant)], g)
            ordered = any(hypothesis_order_ok(p.term, names) for p in proofs)
            assert lambek_derivable(list(ant), g) == ordered
