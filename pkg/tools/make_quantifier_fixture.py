"""Regenerate src/htlg/data/quantifier_proof.json: the wide-scope reading of
'someone delivers everything to its destination' with the balanced quantifier lexicon."""
import os

from htlg import nd
from htlg.lexicon import builtin
from htlg.serialize import dumps_proof
from htlg.formulas import parse_formula as F


def build():
    lx = builtin("quantifiers")
    e = {w: lx.lookup(w)[0] for w in ("someone", "delivers", "everything", "to", "its", "destination")}
    dx = nd.over_e(nd.lex(e["delivers"], "p2"), nd.ax("x", F("np")))
    its_dest = nd.over_e(nd.lex(e["its"], "p5"), nd.lex(e["destination"], "p6"))
    pp = nd.over_e(nd.lex(e["to"], "p4"), its_dest)
    vp = nd.over_e(dx, pp)
    s = nd.under_e(nd.ax("y", F("np")), vp)
    inner = nd.limp_e(nd.limp_i(s, "y"), nd.lex(e["someone"], "p1"))
    return nd.limp_e(nd.limp_i(inner, "x"), nd.lex(e["everything"], "p3"))


if __name__ == "__main__":
    p = build()
    nd.check_nd(p, builtin("quantifiers"))
    out = os.path.join(os.path.dirname(__file__), "..", "src", "htlg", "data", "quantifier_proof.json")
    with open(out, "w", encoding="utf-8") as fh:
        fh.write(dumps_proof(p))
    print(out)
