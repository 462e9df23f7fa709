# Two quantifiers in one sentence give two proofs with the same string.
from htlg import builtin, nd, parse, parse_formula, prover, show
from htlg.acceptance import fixture_proof

sentence = "someone delivers everything to its destination"
lexicon = builtin("quantifiers")
result = parse(sentence, parse_formula("s"), lexicon)

print(len(result), "derivations")
for d in result:
    # the surface string is identical; the proofs differ in which quantifier applies last
    last = d.nd_proof.premises[1].entry.word
    print(show(d.term), "| widest scope:", last, "| contraction steps:", len(d.trace))

# The shipped proof is one of the two readings
shipped = fixture_proof()
print([nd.proof_key(nd.normalize_nd(d.nd_proof)) == nd.proof_key(shipped) for d in result])

# Going the other way: the net of the shipped proof is isomorphic to one parse net
net, run = prover.net_from_nd(prover.eta_long(shipped))
print(run.success, [prover.isomorphic(net, d.linking) for d in result])

# With the unbalanced types the atom counts rule out every linking up front
bad = parse(sentence, parse_formula("s"), builtin("quantifiers_unbalanced"))
print(len(bad), bad.stats)
