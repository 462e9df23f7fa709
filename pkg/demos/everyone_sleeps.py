# Walk through the parsing pipeline on the smallest interesting sentence.
from htlg import builtin, parse, parse_formula, show
from htlg import aps, proofnet
from htlg.proofnet import apply_linking, build_unlinked, count_linkings, linkings

lexicon = builtin("demo")
for e in lexicon:
    print(e)  # each word has a type and a prosodic term

s = parse_formula("s")
words = [lexicon.lookup(w)[0] for w in ["everyone", "sleeps"]]

# Unfold every type into links; the goal is unfolded with negative polarity
unlinked = build_unlinked(words, s)
print(len(unlinked.links), "links,", len(unlinked.leaves), "atomic leaves")
print(count_linkings(unlinked), "ways to pair the atoms")

# Try both pairings by hand and contract each abstract structure
for pairs in linkings(unlinked):
    linked = apply_linking(unlinked, pairs)
    result = aps.contract(aps.to_aps(linked))
    if result.success:
        print("contracts:", [str(step) for step in result.trace], "->", show(result.term()))
    else:
        print("stuck:", result.reason, list(result.stuck.values()))

# parse does all of the above and reads the net back as a natural deduction proof
result = parse("everyone sleeps", s, lexicon)
print(len(result), "derivation;", result.stats)
print(result[0].nd_proof)

# Changing the word order leaves the logic happy but fails the string check
print(len(parse("sleeps everyone", s, lexicon)))
print(len(parse("sleeps everyone", s, lexicon, order_check=False)))

print(proofnet.to_dot(result[0].linking)[:200])  # Graphviz source of the linked structure
