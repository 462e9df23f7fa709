# Directional slashes constrain word order; linear implications do not.
from htlg import builtin, parse, parse_formula, show

s = parse_formula("s")
lambek = builtin("coordination_lambek")
linear = builtin("coordination_linear")

coordination = "Ahmed loves and Johani dislikes the pizza"
shifted = "Ahmed loves and the pizza dislikes Johani"

for name, lexicon in [("lambek", lambek), ("linear", linear)]:
    for sentence in (coordination, shifted):
        result = parse(sentence, s, lexicon)
        print(f"{name:7s} {len(result)}  {sentence}")

# The shifted order still parses with slashes: "Ahmed loves" and "the pizza dislikes"
# are both s/np, coordinated, and applied to "Johani"
d = parse(shifted, s, lambek)[0]
print(show(d.term))
print(d.nd_proof)

# With linear types the lexical terms place the words; two different proofs
# produce this string, sharing different noun phrases
for d in parse(shifted, s, linear):
    print(show(d.term))
