# Normalization, cut elimination and the translations between proof formats.
import random

from htlg import generators, nd, show
from htlg import sequent as sq
from htlg.serialize import dumps_proof, loads_proof, to_latex

rng = random.Random(3)

# A random natural deduction proof with at least one detour
p = generators.random_nd_proof(rng, max_size=12, require_redex=True)
print(p)
print("redexes:", nd.redexes(p))

steps = []
q = nd.normalize_nd(p, on_step=lambda path, kind, proof: steps.append(kind))
print(q)
print("steps:", steps, "size:", nd.proof_size(p), "normal:", nd.is_normal(q))
print(show(nd.canon(p.term)), "==", show(nd.canon(q.term)))

# Every reduction order reaches the same normal form
forms = nd.all_normal_forms(p)
print(len([k for k in forms if k != "_longest"]), "normal form; longest path", forms["_longest"])

# Sequent proofs: translate (each elimination becomes a cut) and eliminate the cuts
s = sq.nd_to_seq(q)
print(sq.count_cuts(s), "cuts after translation")
cases = []
cut_free = sq.eliminate_cuts(s, on_reduce=lambda parent, measure, case: cases.append((measure, case)))
print(cases)  # measures go down along every chain of reductions
print(cut_free)
print(sq.is_cut_free(cut_free), show(cut_free.term))

# Proof files round trip and can be typeset
text = dumps_proof(cut_free)
kind, back, assoc = loads_proof(text)
print(kind, back == cut_free)
print(to_latex(q))
