"""Sequent calculus: proofs, translations to and from natural deduction,
cut elimination and an exhaustive cut-free backward prover.

Node metadata: ``active`` is the variable consumed from a premiss (the cut
variable, the left-rule variable ``q``, the discharged right-rule variable,
or the variable replaced by a lexical entry); ``principal`` is the variable a
left rule or lexical rule introduces into the conclusion.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from itertools import combinations
from typing import Callable

from . import nd
from .formulas import (Atom, Formula, Limp, Over, Polarity, Under, atom_balance, connectives,
                       is_lambek, pros)
from .lexicon import LexEntry, Lexicon
from .nd import (Binding, Judgment, Namer, RuleViolation, _disjoint, canon, lexical_term, ms,
                 remove_binding)
from .terms import (ST, App, Plus, Term, TermError, Var, alpha_key, equivalent, free_vars,
                    show, subst, type_of)

RULES = ("Ax", "Cut", "OverL", "OverR", "UnderL", "UnderR", "LimpL", "LimpR", "Lex", "BetaEta")
L_RULES = {"OverL": Over, "UnderL": Under, "LimpL": Limp}
R_RULES = {"OverR": Over, "UnderR": Under, "LimpR": Limp}


@dataclass(frozen=True)
class SeqProof:
    rule: str
    premises: tuple["SeqProof", ...]
    conclusion: Judgment
    active: str | None = None
    principal: str | None = None
    entry: LexEntry | None = None

    @property
    def term(self) -> Term:
        return self.conclusion.term

    @property
    def formula(self) -> Formula:
        return self.conclusion.formula

    @property
    def antecedent(self) -> tuple[Binding, ...]:
        return self.conclusion.antecedent

    def __str__(self) -> str:
        return render_text(self)


def render_text(p: SeqProof, indent: str = "") -> str:
    meta = ",".join(x for x in (p.active, p.principal) if x)
    j = p.conclusion
    ant = ", ".join(str(b) for b in j.antecedent)
    line = f"{indent}{p.rule}{f' [{meta}]' if meta else ''}: {ant} => {show(nd.display_term(j))} : {j.formula}"
    return "\n".join([line] + [render_text(c, indent + "  ") for c in p.premises])


# ---------------------------------------------------------------- constructors

def s_ax(var: str, formula: Formula) -> SeqProof:
    return SeqProof("Ax", (), Judgment((Binding(var, formula),), Var(var, pros(formula)), formula))


def cut(left: SeqProof, right: SeqProof, var: str, assoc: bool = True) -> SeqProof:
    rest, b = remove_binding(right.antecedent, var)
    if b.lexical:
        raise RuleViolation("", f"cannot cut on the lexical hypothesis {b.word}")
    if b.formula != left.formula:
        raise RuleViolation("", f"cut formula {b.formula} does not match {left.formula}")
    _disjoint(rest, left.antecedent)
    t = canon(subst(right.term, var, left.term), assoc)
    return SeqProof("Cut", (left, right), Judgment(rest + left.antecedent, t, right.formula), active=var)


def _left(rule: str, left: SeqProof, right: SeqProof, q: str, p: str, assoc: bool) -> SeqProof:
    rest, b = remove_binding(right.antecedent, q)
    if b.lexical:
        raise RuleViolation("", "left rule on a lexical hypothesis")
    a, res = left.formula, b.formula
    if rule == "OverL":
        f, inner = Over(res, a), Plus(Var(p, ST), left.term)
    elif rule == "UnderL":
        f, inner = Under(a, res), Plus(left.term, Var(p, ST))
    else:
        f, inner = Limp(a, res), App(Var(p, pros(Limp(a, res))), left.term)
    if rule != "LimpL" and not (is_lambek(a) and is_lambek(res)):
        raise RuleViolation("", "slash rule over a linear formula")
    _disjoint(rest, left.antecedent, (Binding(p, f),))
    t = canon(subst(right.term, q, inner), assoc)
    ant = rest + left.antecedent + (Binding(p, f),)
    return SeqProof(rule, (left, right), Judgment(ant, t, right.formula), active=q, principal=p)


def over_l(left, right, q, p, assoc=True):
    return _left("OverL", left, right, q, p, assoc)


def under_l(left, right, q, p, assoc=True):
    return _left("UnderL", left, right, q, p, assoc)


def limp_l(left, right, q, p, assoc=True):
    return _left("LimpL", left, right, q, p, assoc)


def _right(rule: str, prem: SeqProof, var: str, assoc: bool) -> SeqProof:
    make = {"OverR": nd.over_i, "UnderR": nd.under_i, "LimpR": nd.limp_i}[rule]
    shadow = nd.NDProof("Ax", (), prem.conclusion)
    j = make(shadow, var, assoc).conclusion
    return SeqProof(rule, (prem,), j, active=var)


def over_r(prem, var, assoc=True):
    return _right("OverR", prem, var, assoc)


def under_r(prem, var, assoc=True):
    return _right("UnderR", prem, var, assoc)


def limp_r(prem, var, assoc=True):
    return _right("LimpR", prem, var, assoc)


def s_lex(prem: SeqProof, var: str, e: LexEntry, p: str, assoc: bool = True) -> SeqProof:
    rest, b = remove_binding(prem.antecedent, var)
    if b.lexical or b.formula != e.formula:
        raise RuleViolation("", f"lexical rule: {b.formula} is not the entry formula {e.formula}")
    _disjoint(rest, (Binding(p, e.formula, e.word),))
    t = canon(subst(prem.term, var, lexical_term(e, p)), assoc)
    ant = rest + (Binding(p, e.formula, e.word),)
    return SeqProof("Lex", (prem,), Judgment(ant, t, prem.formula), active=var, principal=p, entry=e)


def s_beta_eta(prem: SeqProof, term: Term | None = None, assoc: bool = True) -> SeqProof:
    t = canon(prem.term, assoc) if term is None else term
    if not equivalent(t, prem.term, assoc):
        raise RuleViolation("", "βη step relates non-equivalent terms")
    return SeqProof("BetaEta", (prem,), Judgment(prem.antecedent, t, prem.formula))


def rebuild(node: SeqProof, premises, assoc: bool = True) -> SeqProof:
    r = node.rule
    if r == "Ax":
        b = node.antecedent[0]
        return s_ax(b.var, b.formula)
    if r == "Cut":
        return cut(premises[0], premises[1], node.active, assoc)
    if r in L_RULES:
        return _left(r, premises[0], premises[1], node.active, node.principal, assoc)
    if r in R_RULES:
        return _right(r, premises[0], node.active, assoc)
    if r == "Lex":
        return s_lex(premises[0], node.active, node.entry, node.principal, assoc)
    if r == "BetaEta":
        return s_beta_eta(premises[0], None, assoc)
    raise RuleViolation("", f"unknown rule {r!r}")


# ---------------------------------------------------------------- checking

def check_seq(p: SeqProof, lexicon: Lexicon | None = None, assoc: bool = True) -> None:
    def go(node: SeqProof, path: str):
        for i, c in enumerate(node.premises):
            go(c, f"{path}.{i}" if path else str(i))
        try:
            _check_node(node, lexicon, assoc)
        except RuleViolation as exc:
            raise RuleViolation(path, exc.reason) from None
        except TermError as exc:
            raise RuleViolation(path, str(exc)) from None

    go(p, "")


def _check_node(node: SeqProof, lexicon, assoc) -> None:
    if node.rule not in RULES:
        raise RuleViolation("", f"unknown rule {node.rule!r}")
    arity = {"Ax": 0, "Cut": 2, "Lex": 1, "BetaEta": 1}.get(node.rule, 2 if node.rule in L_RULES else 1)
    if len(node.premises) != arity:
        raise RuleViolation("", f"{node.rule} needs {arity} premisses")
    j = node.conclusion
    ty = type_of(j.term, j.env())
    if ty != pros(j.formula):
        raise RuleViolation("", f"term type {ty} differs from {pros(j.formula)}")
    if dict(free_vars(j.term)) != {b.var: 1 for b in j.antecedent} or len(j.antecedent) != len({b.var for b in j.antecedent}):
        raise RuleViolation("", "term variables do not match the antecedent")
    if node.rule == "Lex" and lexicon is not None and not lexicon.has_entry(node.entry):
        raise RuleViolation("", f"no lexicon entry {node.entry}")
    expected = rebuild(node, node.premises, assoc)
    if ms(expected.antecedent) != ms(j.antecedent):
        raise RuleViolation("", "antecedent does not match the rule")
    if expected.formula != j.formula:
        raise RuleViolation("", f"expected formula {expected.formula}, found {j.formula}")
    if not equivalent(expected.term, j.term, assoc):
        raise RuleViolation("", f"expected term {show(expected.term)}, found {show(j.term)}")


def is_cut_free(p: SeqProof) -> bool:
    return p.rule != "Cut" and all(is_cut_free(c) for c in p.premises)


def count_cuts(p: SeqProof) -> int:
    return (p.rule == "Cut") + sum(count_cuts(c) for c in p.premises)


# ---------------------------------------------------------------- renaming

def relabel(p: SeqProof, names: Namer, assoc: bool = True) -> tuple[SeqProof, dict[str, str]]:
    """Give every variable in the proof a fresh, globally unique name.
    Also returns the renaming of the endsequent's hypotheses."""
    def go(node: SeqProof) -> tuple[SeqProof, dict[str, str]]:
        if node.rule == "Ax":
            b = node.antecedent[0]
            new = names()
            return s_ax(new, b.formula), {b.var: new}
        done = [go(c) for c in node.premises]
        prem = tuple(d[0] for d in done)
        maps = [d[1] for d in done]
        mapping: dict[str, str] = {}
        for m in maps:
            mapping.update(m)
        active = None
        if node.active is not None:
            src = maps[1] if node.rule in L_RULES or node.rule == "Cut" else maps[0]
            active = src[node.active]
        principal = names() if node.principal is not None else None
        out = rebuild(replace(node, active=active, principal=principal), prem, assoc)
        mapping.pop(node.active, None)
        if node.principal is not None:
            mapping[node.principal] = principal
        return out, mapping

    return go(p)


def all_vars(p: SeqProof) -> set[str]:
    out = {b.var for b in p.antecedent} | {p.active, p.principal} - {None}
    for c in p.premises:
        out |= all_vars(c)
    return out


def rename(p: SeqProof, old: str, new: str, assoc: bool = True) -> SeqProof:
    """Rename the free hypothesis ``old`` of the conclusion (names assumed unique)."""
    if p.rule == "Ax":
        b = p.antecedent[0]
        return s_ax(new, b.formula) if b.var == old else p
    if p.principal == old:
        return rebuild(replace(p, principal=new), p.premises, assoc)
    prem = tuple(rename(c, old, new, assoc) if any(b.var == old for b in c.antecedent) and not
                 (c is p.premises[-1] and p.active == old) else c for c in p.premises)
    return rebuild(p, prem, assoc)


# ---------------------------------------------------------------- translations

def nd_to_seq(p: nd.NDProof, assoc: bool = True, names: Namer | None = None) -> SeqProof:
    names = names or Namer(nd.bound_names(p), "c")

    def go(n: nd.NDProof) -> SeqProof:
        r = n.rule
        if r == "Ax":
            b = n.antecedent[0]
            return s_ax(b.var, b.formula)
        if r == "Lex":
            x = names()
            b = n.antecedent[0]
            return s_lex(s_ax(x, b.formula), x, n.entry, b.var, assoc)
        if r in nd.I_RULES:
            make = {"LimpI": limp_r, "OverI": over_r, "UnderI": under_r}[r]
            return make(go(n.premises[0]), n.discharged, assoc)
        if r == "BetaEta":
            return s_beta_eta(go(n.premises[0]), None, assoc)
        major = n.premises[nd.MAJOR[r]]
        minor = n.premises[1 - nd.MAJOR[r]]
        z, y = names(), names()
        leaf = s_ax(z, n.formula)
        rule = {"LimpE": "LimpL", "OverE": "OverL", "UnderE": "UnderL"}[r]
        lft = _left(rule, go(minor), leaf, z, y, assoc)
        return cut(go(major), lft, y, assoc)

    return go(p)


def seq_to_nd(p: SeqProof, assoc: bool = True) -> nd.NDProof:
    def go(s: SeqProof) -> nd.NDProof:
        r = s.rule
        if r == "Ax":
            b = s.antecedent[0]
            return nd.ax(b.var, b.formula)
        if r in R_RULES:
            make = {"LimpR": nd.limp_i, "OverR": nd.over_i, "UnderR": nd.under_i}[r]
            return make(go(s.premises[0]), s.active, assoc)
        if r == "BetaEta":
            return nd.beta_eta(go(s.premises[0]), None, assoc)
        if r == "Cut":
            return nd.substitute(go(s.premises[1]), s.active, go(s.premises[0]), assoc)
        if r == "Lex":
            return nd.substitute(go(s.premises[0]), s.active, nd.lex(s.entry, s.principal, assoc), assoc)
        left = go(s.premises[0])
        right = go(s.premises[1])
        f = [b for b in s.antecedent if b.var == s.principal][0].formula
        hyp = nd.ax(s.principal, f)
        if r == "OverL":
            elim = nd.over_e(hyp, left, assoc)
        elif r == "UnderL":
            elim = nd.under_e(left, hyp, assoc)
        else:
            elim = nd.limp_e(left, hyp, assoc)
        return nd.substitute(right, s.active, elim, assoc)

    return go(p)


# ---------------------------------------------------------------- cut elimination

def _left_depth(p: SeqProof) -> int:
    if p.rule in R_RULES or p.rule == "Ax":
        return 1
    if p.rule in L_RULES:
        return 1 + _left_depth(p.premises[1])
    return 1 + _left_depth(p.premises[0])


def _right_depth(p: SeqProof, var: str) -> int:
    if p.rule == "Ax" or p.principal == var:
        return 1
    for c in p.premises:
        if any(b.var == var for b in c.antecedent) and not (p.rule in L_RULES and c is p.premises[1] and p.active == var):
            return 1 + _right_depth(c, var)
    raise ValueError(f"{var} not found")


def cut_measure(left: SeqProof, right: SeqProof, var: str) -> tuple[int, int]:
    """(degree, depth) of the cut between ``left`` and ``right`` on ``var``."""
    return connectives(left.formula), _left_depth(left) + _right_depth(right, var)


class MeasureError(AssertionError):
    pass


def eliminate_cuts(p: SeqProof, assoc: bool = True,
                   on_reduce: Callable[[tuple | None, tuple, str], None] | None = None) -> SeqProof:
    """Remove every cut.  ``on_reduce(parent_measure, measure, case)`` is called for each
    reduction step; a step whose measure does not decrease raises :class:`MeasureError`."""
    if is_cut_free(p):
        return p
    names = Namer(all_vars(p), "u")
    p, mapping = relabel(p, names, assoc)

    def reduce(left: SeqProof, right: SeqProof, x: str, parent) -> SeqProof:
        m = cut_measure(left, right, x)
        if parent is not None and not m < parent:
            raise MeasureError(f"measure {m} does not decrease below {parent}")
        case = _case(left, right, x)
        if on_reduce:
            on_reduce(parent, m, case)
        if case == "axiom-left":
            return rename(right, x, left.antecedent[0].var, assoc)
        if case == "axiom-right":
            return left
        if case == "left-commutative":
            r = left.rule
            if r in L_RULES:
                return rebuild(left, (left.premises[0], reduce(left.premises[1], right, x, m)), assoc)
            return rebuild(left, (reduce(left.premises[0], right, x, m),), assoc)
        if case == "right-commutative":
            r = right.rule
            if r in L_RULES:
                l0, l1 = right.premises
                if any(b.var == x for b in l0.antecedent):
                    return rebuild(right, (reduce(left, l0, x, m), l1), assoc)
                return rebuild(right, (l0, reduce(left, l1, x, m)), assoc)
            return rebuild(right, (reduce(left, right.premises[0], x, m),), assoc)
        # principal case: the right rule introducing the cut formula meets the left rule using it
        body = left.premises[0]
        arg_proof, rest = right.premises
        inner = reduce(arg_proof, body, left.active, m)
        return reduce(inner, rest, right.active, m)

    def go(node: SeqProof) -> SeqProof:
        if is_cut_free(node):
            return node
        prem = tuple(go(c) for c in node.premises)
        if node.rule == "Cut":
            return reduce(prem[0], prem[1], node.active, None)
        return rebuild(node, prem, assoc)

    out = go(p)
    for old, new in mapping.items():
        out = rename(out, new, old, assoc)
    return out


def _case(left: SeqProof, right: SeqProof, x: str) -> str:
    if left.rule == "Ax":
        return "axiom-left"
    if right.rule == "Ax":
        return "axiom-right"
    if left.rule not in R_RULES:
        return "left-commutative"
    if right.principal != x or right.rule == "Lex":
        return "right-commutative"
    conn = R_RULES[left.rule]
    if conn is not L_RULES[right.rule]:
        raise RuleViolation("", "principal cut with mismatched connectives")
    return "principal-" + {Over: "/", Under: "\\", Limp: "-o"}[conn]


# ---------------------------------------------------------------- backward search

def _balanced(ant, goal: Formula) -> bool:
    count: dict = {}
    for b in ant:
        for k, v in atom_balance(b.formula).items():
            count[k] = count.get(k, 0) + v
    for k, v in atom_balance(goal, Polarity.NEG).items():
        count[k] = count.get(k, 0) + v
    atoms = {a for a, _ in count}
    return all(count.get((a, Polarity.POS), 0) == count.get((a, Polarity.NEG), 0) for a in atoms)


def prove_seq(antecedent, goal: Formula, assoc: bool = True, limit: int | None = None) -> list[SeqProof]:
    """All cut-free proofs of the sequent, one per distinct normal term.

    ``antecedent`` items may be formulas, lexical entries or bindings."""
    names = Namer(prefix="x")
    bindings: list[Binding] = []
    lexical: list[tuple[str, LexEntry, str]] = []
    for item in antecedent:
        if isinstance(item, LexEntry):
            x = names("h")
            p = names("w")
            bindings.append(Binding(x, item.formula))
            lexical.append((x, item, p))
        elif isinstance(item, Binding):
            names.avoid.add(item.var)
            bindings.append(item)
        else:
            bindings.append(Binding(names(), item))
    if not bindings:
        return []
    found = _search(tuple(bindings), goal, names, assoc)
    out = []
    for proof in found:
        for x, e, p in lexical:
            proof = s_lex(proof, x, e, p, assoc)
        out.append(proof)
    out = _dedupe(out, assoc)
    return out[:limit] if limit else out


def _dedupe(proofs, assoc):
    seen = set()
    out = []
    for q in proofs:
        k = _key(q, assoc)
        if k not in seen:
            seen.add(k)
            out.append(q)
    return out


def _key(q: SeqProof, assoc: bool):
    return alpha_key(canon(q.term, assoc))


def _search(ant: tuple[Binding, ...], goal: Formula, names: Namer, assoc: bool) -> list[SeqProof]:
    if not ant or not _balanced(ant, goal):
        return []
    out: list[SeqProof] = []
    if len(ant) == 1 and isinstance(goal, Atom) and ant[0].formula == goal:
        out.append(s_ax(ant[0].var, goal))
    if isinstance(goal, Limp):
        v = names()
        for sub in _search(ant + (Binding(v, goal.arg),), goal.result, names, assoc):
            out.append(limp_r(sub, v, assoc))
    elif isinstance(goal, (Over, Under)):
        v = names()
        make = over_r if isinstance(goal, Over) else under_r
        for sub in _search(ant + (Binding(v, goal.arg),), goal.result, names, assoc):
            try:
                out.append(make(sub, v, assoc))
            except RuleViolation:
                pass
    for i, b in enumerate(ant):
        f = b.formula
        if isinstance(f, Atom):
            continue
        rule = {Over: "OverL", Under: "UnderL", Limp: "LimpL"}[type(f)]
        rest = ant[:i] + ant[i + 1:]
        idx = range(len(rest))
        for k in range(1, len(rest) + 1):
            for chosen in combinations(idx, k):
                delta = tuple(rest[j] for j in chosen)
                gamma = tuple(rest[j] for j in idx if j not in chosen)
                lefts = _search(delta, f.arg, names, assoc)
                if not lefts:
                    continue
                q = names()
                rights = _search(gamma + (Binding(q, f.result),), goal, names, assoc)
                for lp in lefts:
                    for rp in rights:
                        out.append(_left(rule, lp, rp, q, b.var, assoc))
    return _dedupe(out, assoc)
