"""Seeded random proofs for property tests: checked ND proofs with detours and
sequent proofs with injected cuts."""
from __future__ import annotations

import random

from . import nd, sequent as sq
from .formulas import Atom, Formula, Limp, Over, Under, is_lambek
from .nd import NDProof, Namer, RuleViolation
from .sequent import SeqProof

ATOMS = ("np", "s", "n")


def random_formula(rng: random.Random, depth: int = 2, lambek: bool | None = None) -> Formula:
    if depth == 0 or rng.random() < 0.4:
        return Atom(rng.choice(ATOMS))
    if lambek is None:
        lambek = rng.random() < 0.6
    a = random_formula(rng, depth - 1, True if lambek else None)
    b = random_formula(rng, depth - 1, True if lambek else None)
    if lambek:
        return Over(a, b) if rng.random() < 0.5 else Under(a, b)
    return Limp(a, b)


class _Gen:
    def __init__(self, rng: random.Random, assoc: bool):
        self.rng = rng
        self.assoc = assoc
        self.names = Namer(prefix="v")

    def proof(self, budget: int) -> NDProof:
        rng = self.rng
        if budget <= 1:
            return nd.ax(self.names(), random_formula(rng, 1))
        pick = rng.random()
        if pick < 0.3:
            return self.elim(budget)
        if pick < 0.55:
            p = self.intro(budget)
            if p is not None:
                return p
        if pick < 0.95:
            p = self.detour(budget)
            if p is not None:
                return p
        return self.elim(budget)

    def elim(self, budget: int) -> NDProof:
        rng = self.rng
        minor = self.proof(rng.randint(1, max(1, budget - 2)))
        a = minor.formula
        b = random_formula(rng, 1, lambek=is_lambek(a) and rng.random() < 0.7)
        kind = rng.choice(["limp", "over", "under"]) if is_lambek(a) and is_lambek(b) else "limp"
        x = self.names()
        if kind == "limp":
            return nd.limp_e(minor, nd.ax(x, Limp(a, b)), self.assoc)
        if kind == "over":
            return nd.over_e(nd.ax(x, Over(b, a)), minor, self.assoc)
        return nd.under_e(minor, nd.ax(x, Under(a, b)), self.assoc)

    def intro(self, budget: int) -> NDProof | None:
        prem = self.proof(budget - 1)
        logical = [b for b in prem.antecedent if not b.lexical]
        self.rng.shuffle(logical)
        makers = [nd.over_i, nd.under_i, nd.limp_i]
        self.rng.shuffle(makers)
        for b in logical:
            for make in makers:
                try:
                    return make(prem, b.var, self.assoc)
                except RuleViolation:
                    continue
        return None

    def detour(self, budget: int) -> NDProof | None:
        """An introduction immediately eliminated, or a βη node."""
        rng = self.rng
        if rng.random() < 0.2:
            return nd.beta_eta(self.proof(budget - 1), None, self.assoc)
        body = self.proof(budget - 3)
        logical = [b for b in body.antecedent if not b.lexical]
        if not logical:
            return None
        b = rng.choice(logical)
        y = self.names()
        body = nd.rename_hypothesis(body, b.var, y, self.assoc)
        arg = self.proof(rng.randint(1, 2)) if rng.random() < 0.3 else nd.ax(self.names(), b.formula)
        if arg.formula != b.formula:
            arg = nd.ax(self.names(), b.formula)
        options = [("limp", nd.limp_i), ("over", nd.over_i), ("under", nd.under_i)]
        rng.shuffle(options)
        for kind, make in options:
            try:
                lam = make(body, y, self.assoc)
            except RuleViolation:
                continue
            if kind == "limp":
                return nd.limp_e(arg, lam, self.assoc)
            if kind == "over":
                return nd.over_e(lam, arg, self.assoc)
            return nd.under_e(arg, lam, self.assoc)
        return None


def random_nd_proof(rng: random.Random, max_size: int = 15, assoc: bool = True,
                    require_redex: bool = False) -> NDProof:
    """A checked ND proof with at most ``max_size`` nodes."""
    while True:
        g = _Gen(rng, assoc)
        try:
            p = g.proof(rng.randint(3, max_size))
        except RuleViolation:
            continue
        if nd.proof_size(p) > max_size:
            continue
        if require_redex and nd.is_normal(p):
            continue
        return p


def identity_seq(f: Formula, x: str, names: Namer, assoc: bool = True) -> SeqProof:
    """Cut-free proof of x:A ⇒ x:A with atomic axioms."""
    if isinstance(f, Atom):
        return sq.s_ax(x, f)
    z, q = names(), names()
    left = identity_seq(f.arg, z, names, assoc)
    right = identity_seq(f.result, q, names, assoc)
    if isinstance(f, Over):
        return sq.over_r(sq.over_l(left, right, q, x, assoc), z, assoc)
    if isinstance(f, Under):
        return sq.under_r(sq.under_l(left, right, q, x, assoc), z, assoc)
    return sq.limp_r(sq.limp_l(left, right, q, x, assoc), z, assoc)


def inject_cut(p: SeqProof, rng: random.Random, names: Namer, assoc: bool = True) -> SeqProof:
    """Add a cut against an expanded identity, on a hypothesis or on the succedent."""
    hyps = [b for b in p.antecedent if not b.lexical]
    if hyps and rng.random() < 0.6:
        b = rng.choice(hyps)
        return sq.cut(identity_seq(b.formula, names(), names, assoc), p, b.var, assoc)
    z = names()
    return sq.cut(p, identity_seq(p.formula, z, names, assoc), z, assoc)


def random_seq_with_cuts(rng: random.Random, max_size: int = 12, assoc: bool = True) -> SeqProof:
    """Translate a random ND proof (each elimination becomes a cut) and inject extra cuts."""
    p = random_nd_proof(rng, max_size, assoc)
    names = Namer(nd.bound_names(p) | {b.var for _, n in nd.nodes(p) for b in n.antecedent}, "k")
    s = sq.nd_to_seq(p, assoc, names)
    for _ in range(rng.randint(0, 2)):
        s = inject_cut(s, rng, names, assoc)
    if sq.is_cut_free(s):
        s = inject_cut(s, rng, names, assoc)
    return s
