"""Natural deduction proofs: construction, checking, substitution and normalisation.

A proof is a tree of :class:`NDProof` nodes, each carrying its conclusion
judgment.  Antecedents are multisets of :class:`Binding`; a binding with a
``word`` is a lexical hypothesis, whose variable stands for the word inside
terms until :func:`display_term` puts the word back.

Terms stored in proofs are kept in canonical form (beta-normal, eta-reduced,
ε erased, and in associative mode concatenations flattened).  The checker
compares terms up to that equivalence, so externally supplied proofs may
carry unnormalised terms.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, replace
from typing import Callable, Iterator

from .formulas import Formula, Limp, Over, Under, pros, subformulas
from .lexicon import LexEntry, Lexicon
from .terms import (ST, Abs, App, Plus, Term, TermError, Var, Word, alpha_key, equivalent,
                    free_vars, from_spine, normal_form, rename_free, show, spine,
                    string_canon, subst, type_of)

RULES = ("Lex", "Ax", "LimpE", "LimpI", "OverE", "OverI", "UnderE", "UnderI", "BetaEta")
E_RULES = {"LimpE": Limp, "OverE": Over, "UnderE": Under}
I_RULES = {"LimpI": Limp, "OverI": Over, "UnderI": Under}
MAJOR = {"LimpE": 1, "OverE": 0, "UnderE": 1}


class RuleViolation(Exception):
    def __init__(self, path: str, reason: str):
        super().__init__(f"{path or 'root'}: {reason}")
        self.path = path
        self.reason = reason


class VariableClash(Exception):
    pass


class FormulaMismatch(Exception):
    pass


@dataclass(frozen=True)
class Binding:
    var: str
    formula: Formula
    word: str | None = None

    @property
    def lexical(self) -> bool:
        return self.word is not None

    def __str__(self) -> str:
        if self.word is not None:
            return f"{self.word}:{self.formula}"
        return f"{self.var}:{self.formula}"


@dataclass(frozen=True)
class Judgment:
    antecedent: tuple[Binding, ...]
    term: Term
    formula: Formula

    def env(self) -> dict:
        return {b.var: (ST if b.lexical else pros(b.formula)) for b in self.antecedent}

    def __str__(self) -> str:
        ant = ", ".join(str(b) for b in self.antecedent)
        return f"{ant} |- {show(display_term(self))} : {self.formula}"


@dataclass(frozen=True)
class NDProof:
    rule: str
    premises: tuple["NDProof", ...]
    conclusion: Judgment
    discharged: str | None = None
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


# ---------------------------------------------------------------- helpers

def canon(t: Term, assoc: bool = True) -> Term:
    return string_canon(normal_form(t), assoc)


def display_term(j: Judgment) -> Term:
    """The judgment's term with lexical variables replaced by their words."""
    t = j.term
    for b in j.antecedent:
        if b.lexical:
            t = subst(t, b.var, Word(b.word))
    return t


def lexical_term(e: LexEntry, var: str) -> Term:
    """The entry's term with its word occurrence replaced by the variable ``var``."""
    def go(t: Term) -> Term:
        if isinstance(t, Word) and t.surface == e.word:
            return Var(var, ST)
        if isinstance(t, Plus):
            return Plus(go(t.left), go(t.right))
        if isinstance(t, App):
            return App(go(t.fun), go(t.arg))
        if isinstance(t, Abs):
            return Abs(t.var, t.var_ty, go(t.body))
        return t

    return go(e.term)


def ms(ant) -> Counter:
    return Counter(ant)


def remove_binding(ant: tuple[Binding, ...], var: str) -> tuple[tuple[Binding, ...], Binding]:
    hit = [b for b in ant if b.var == var]
    if len(hit) != 1:
        raise RuleViolation("", f"variable {var} is not a unique hypothesis")
    return tuple(b for b in ant if b.var != var), hit[0]


def _disjoint(*ants: tuple[Binding, ...]) -> None:
    seen: set[str] = set()
    for ant in ants:
        names = {b.var for b in ant}
        clash = seen & names
        if clash:
            raise RuleViolation("", f"premisses share the variable {sorted(clash)[0]}")
        seen |= names


def split_edge(t: Term, var: str, right: bool, assoc: bool) -> Term:
    """Given ``M+var`` (right edge) or ``var+M`` (left edge) return ``M``."""
    t = canon(t, assoc)
    if assoc:
        items = spine(t)
        edge = items[-1] if right else items[0] if items else None
        if len(items) < 2 or not (isinstance(edge, Var) and edge.name == var):
            side = "right" if right else "left"
            raise RuleViolation("", f"{var} is not at the {side} edge of {show(t)}")
        return from_spine(items[:-1] if right else items[1:])
    if isinstance(t, Plus):
        edge, rest = (t.right, t.left) if right else (t.left, t.right)
        if isinstance(edge, Var) and edge.name == var:
            return rest
    side = "right" if right else "left"
    raise RuleViolation("", f"{var} is not at the {side} edge of {show(t)}")


# ---------------------------------------------------------------- constructors

def ax(var: str, formula: Formula) -> NDProof:
    return NDProof("Ax", (), Judgment((Binding(var, formula),), Var(var, pros(formula)), formula))


def lex(e: LexEntry, var: str, assoc: bool = True) -> NDProof:
    j = Judgment((Binding(var, e.formula, e.word),), canon(lexical_term(e, var), assoc), e.formula)
    return NDProof("Lex", (), j, entry=e)


def limp_e(minor: NDProof, major: NDProof, assoc: bool = True) -> NDProof:
    f = major.formula
    if not isinstance(f, Limp):
        raise RuleViolation("", f"major premiss {f} is not a linear implication")
    if f.arg != minor.formula:
        raise RuleViolation("", f"minor premiss {minor.formula} does not match {f.arg}")
    _disjoint(minor.antecedent, major.antecedent)
    t = canon(App(major.term, minor.term), assoc)
    return NDProof("LimpE", (minor, major), Judgment(minor.antecedent + major.antecedent, t, f.result))


def over_e(major: NDProof, minor: NDProof, assoc: bool = True) -> NDProof:
    f = major.formula
    if not isinstance(f, Over):
        raise RuleViolation("", f"major premiss {f} is not of the form A/B")
    if f.arg != minor.formula:
        raise RuleViolation("", f"minor premiss {minor.formula} does not match {f.arg}")
    _disjoint(major.antecedent, minor.antecedent)
    t = canon(Plus(major.term, minor.term), assoc)
    return NDProof("OverE", (major, minor), Judgment(major.antecedent + minor.antecedent, t, f.result))


def under_e(minor: NDProof, major: NDProof, assoc: bool = True) -> NDProof:
    f = major.formula
    if not isinstance(f, Under):
        raise RuleViolation("", f"major premiss {f} is not of the form B\\A")
    if f.arg != minor.formula:
        raise RuleViolation("", f"minor premiss {minor.formula} does not match {f.arg}")
    _disjoint(minor.antecedent, major.antecedent)
    t = canon(Plus(minor.term, major.term), assoc)
    return NDProof("UnderE", (minor, major), Judgment(minor.antecedent + major.antecedent, t, f.result))


def _intro_parts(prem: NDProof, var: str) -> tuple[tuple[Binding, ...], Binding]:
    rest, b = remove_binding(prem.antecedent, var)
    if b.lexical:
        raise RuleViolation("", f"cannot discharge the lexical hypothesis {b}")
    if not rest:
        raise RuleViolation("", "introduction would leave an empty antecedent")
    return rest, b


def limp_i(prem: NDProof, var: str, assoc: bool = True) -> NDProof:
    rest, b = _intro_parts(prem, var)
    t = canon(Abs(var, pros(b.formula), prem.term), assoc)
    return NDProof("LimpI", (prem,), Judgment(rest, t, Limp(b.formula, prem.formula)), discharged=var)


def over_i(prem: NDProof, var: str, assoc: bool = True) -> NDProof:
    rest, b = _intro_parts(prem, var)
    _lambek_pair(prem.formula, b.formula)
    m = split_edge(prem.term, var, right=True, assoc=assoc)
    return NDProof("OverI", (prem,), Judgment(rest, m, Over(prem.formula, b.formula)), discharged=var)


def under_i(prem: NDProof, var: str, assoc: bool = True) -> NDProof:
    rest, b = _intro_parts(prem, var)
    _lambek_pair(prem.formula, b.formula)
    m = split_edge(prem.term, var, right=False, assoc=assoc)
    return NDProof("UnderI", (prem,), Judgment(rest, m, Under(b.formula, prem.formula)), discharged=var)


def _lambek_pair(a: Formula, b: Formula) -> None:
    from .formulas import is_lambek
    if not (is_lambek(a) and is_lambek(b)):
        raise RuleViolation("", "slash introduction over a linear formula")


def beta_eta(prem: NDProof, term: Term | None = None, assoc: bool = True) -> NDProof:
    t = canon(prem.term, assoc) if term is None else term
    if not equivalent(t, prem.term, assoc):
        raise RuleViolation("", f"{show(t)} is not βη-equal to {show(prem.term)}")
    return NDProof("BetaEta", (prem,), Judgment(prem.antecedent, t, prem.formula))


def rebuild(node: NDProof, premises: tuple[NDProof, ...], assoc: bool = True) -> NDProof:
    """Re-derive ``node``'s conclusion from new premisses using the same rule."""
    r = node.rule
    if r == "Ax":
        b = node.antecedent[0]
        return ax(b.var, b.formula)
    if r == "Lex":
        return lex(node.entry, node.antecedent[0].var, assoc)
    if r == "LimpE":
        return limp_e(*premises, assoc=assoc)
    if r == "OverE":
        return over_e(*premises, assoc=assoc)
    if r == "UnderE":
        return under_e(*premises, assoc=assoc)
    if r == "LimpI":
        return limp_i(premises[0], node.discharged, assoc)
    if r == "OverI":
        return over_i(premises[0], node.discharged, assoc)
    if r == "UnderI":
        return under_i(premises[0], node.discharged, assoc)
    if r == "BetaEta":
        return beta_eta(premises[0], None, assoc)
    raise RuleViolation("", f"unknown rule {r!r}")


# ---------------------------------------------------------------- checking

def check_nd(p: NDProof, lexicon: Lexicon | None = None, assoc: bool = True,
             lax_pros: bool = False) -> None:
    """Raise :class:`RuleViolation` at the first node that does not follow from its premisses."""
    def go(node: NDProof, path: str) -> None:
        for i, c in enumerate(node.premises):
            go(c, f"{path}.{i}" if path else str(i))
        try:
            _check_node(node, lexicon, assoc, lax_pros)
        except RuleViolation as exc:
            raise RuleViolation(path, exc.reason) from None
        except TermError as exc:
            raise RuleViolation(path, str(exc)) from None

    go(p, "")


def _check_node(node: NDProof, lexicon, assoc, lax_pros) -> None:
    if node.rule not in RULES:
        raise RuleViolation("", f"unknown rule {node.rule!r}")
    arity = {"Lex": 0, "Ax": 0, "LimpI": 1, "OverI": 1, "UnderI": 1, "BetaEta": 1}.get(node.rule, 2)
    if len(node.premises) != arity:
        raise RuleViolation("", f"{node.rule} needs {arity} premisses, got {len(node.premises)}")
    j = node.conclusion
    if not lax_pros:
        ty = type_of(j.term, j.env())
        if ty != pros(j.formula):
            raise RuleViolation("", f"term type {ty} differs from {pros(j.formula)}")
    fv = free_vars(j.term)
    names = Counter(b.var for b in j.antecedent)
    if fv != names:
        raise RuleViolation("", "term variables do not match the antecedent")
    if node.rule == "Lex":
        if node.entry is None or len(j.antecedent) != 1 or not j.antecedent[0].lexical:
            raise RuleViolation("", "malformed lexical leaf")
        e = node.entry
        b = j.antecedent[0]
        if b.word != e.word or b.formula != e.formula or j.formula != e.formula:
            raise RuleViolation("", "lexical leaf disagrees with its entry")
        if lexicon is not None and not lexicon.has_entry(e):
            raise RuleViolation("", f"no lexicon entry {e}")
    if node.rule == "Ax" and j.antecedent and j.antecedent[0].lexical:
        raise RuleViolation("", "axiom on a lexical hypothesis")
    if node.rule == "BetaEta":
        prem = node.premises[0]
        if ms(prem.antecedent) != ms(j.antecedent) or prem.formula != j.formula:
            raise RuleViolation("", "βη step changes the sequent")
        if not equivalent(prem.term, j.term, assoc):
            raise RuleViolation("", "βη step relates non-equivalent terms")
        return
    expected = rebuild(node, node.premises, assoc)
    if ms(expected.antecedent) != ms(j.antecedent):
        raise RuleViolation("", "antecedent does not match the rule")
    if expected.formula != j.formula:
        raise RuleViolation("", f"expected formula {expected.formula}, found {j.formula}")
    if not equivalent(expected.term, j.term, assoc):
        raise RuleViolation("", f"expected term {show(expected.term)}, found {show(j.term)}")


def is_valid(p: NDProof, lexicon: Lexicon | None = None, assoc: bool = True) -> bool:
    try:
        check_nd(p, lexicon, assoc)
        return True
    except RuleViolation:
        return False


# ---------------------------------------------------------------- traversal

def nodes(p: NDProof, path: tuple = ()) -> Iterator[tuple[tuple, NDProof]]:
    yield path, p
    for i, c in enumerate(p.premises):
        yield from nodes(c, path + (i,))


def proof_size(p) -> int:
    return 1 + sum(proof_size(c) for c in p.premises)


def proof_depth(p) -> int:
    return 1 + max((proof_depth(c) for c in p.premises), default=0)


def at(p, path: tuple):
    for i in path:
        p = p.premises[i]
    return p


def replace_at(p: NDProof, path: tuple, new: NDProof, assoc: bool = True) -> NDProof:
    if not path:
        return new
    i = path[0]
    prem = list(p.premises)
    prem[i] = replace_at(prem[i], path[1:], new, assoc)
    return rebuild(p, tuple(prem), assoc)


def bound_names(p: NDProof) -> set[str]:
    out = set()
    for _, n in nodes(p):
        out |= {b.var for b in n.antecedent}
    return out


def rename_hypothesis(p: NDProof, old: str, new: str, assoc: bool = True) -> NDProof:
    """Rename a hypothesis variable throughout the subtree where it is in scope."""
    if p.rule == "Ax":
        b = p.antecedent[0]
        return ax(new, b.formula) if b.var == old else p
    if p.rule == "Lex":
        return lex(p.entry, new, assoc) if p.antecedent[0].var == old else p
    if p.discharged == old:
        prem = rename_hypothesis(p.premises[0], old, new, assoc)
        return _rebuild_meta(p, (prem,), new, assoc)
    if old not in {b.var for _, n in nodes(p) for b in n.antecedent}:
        return p
    return rebuild(p, tuple(rename_hypothesis(c, old, new, assoc) for c in p.premises), assoc)


def _rebuild_meta(p: NDProof, premises, discharged: str, assoc: bool) -> NDProof:
    return rebuild(replace(p, discharged=discharged), premises, assoc)


class Namer:
    """Deterministic supply of fresh variable names."""

    def __init__(self, avoid=(), prefix: str = "v"):
        self.avoid = set(avoid)
        self.prefix = prefix
        self.n = 0

    def __call__(self, prefix: str | None = None) -> str:
        pre = prefix or self.prefix
        while True:
            self.n += 1
            name = f"{pre}{self.n}"
            if name not in self.avoid:
                self.avoid.add(name)
                return name


def freshen(p: NDProof, avoid: set[str], assoc: bool = True) -> NDProof:
    """Rename every discharged variable that occurs in ``avoid``."""
    names = Namer(avoid | bound_names(p), "h")
    for _, n in list(nodes(p)):
        if n.discharged and n.discharged in avoid:
            p = _rename_discharged(p, n.discharged, names(), assoc)
    return p


def _rename_discharged(p: NDProof, old: str, new: str, assoc: bool) -> NDProof:
    if p.discharged == old:
        return _rebuild_meta(p, (rename_hypothesis(p.premises[0], old, new, assoc),), new, assoc)
    if not p.premises:
        return p
    return rebuild(p, tuple(_rename_discharged(c, old, new, assoc) for c in p.premises), assoc)


# ---------------------------------------------------------------- substitution

def substitute(outer: NDProof, var: str, inner: NDProof, assoc: bool = True) -> NDProof:
    """Graft ``inner`` (proving Δ ⊢ N:A) onto the hypothesis ``var``:A of ``outer``."""
    ant = {b.var: b for b in outer.antecedent}
    if var not in ant:
        raise VariableClash(f"{var} is not a hypothesis of the outer proof")
    if ant[var].lexical:
        raise VariableClash(f"{var} is a lexical hypothesis")
    if ant[var].formula != inner.formula:
        raise FormulaMismatch(f"hypothesis {ant[var].formula} vs inner conclusion {inner.formula}")
    inner_vars = {b.var for b in inner.antecedent}
    clash = inner_vars & (set(ant) - {var})
    if clash:
        raise VariableClash(f"shared free variable {sorted(clash)[0]}")
    outer = freshen(outer, inner_vars | bound_names(inner), assoc)
    inner = freshen(inner, bound_names(outer) - inner_vars, assoc)

    def go(node: NDProof) -> NDProof:
        if node.rule == "Ax" and node.antecedent[0].var == var:
            return inner
        prem = list(node.premises)
        for i, c in enumerate(prem):
            if any(b.var == var for b in c.antecedent):
                prem[i] = go(c)
                return rebuild(node, tuple(prem), assoc)
        raise VariableClash(f"no axiom leaf for {var}")

    return go(outer)


# ---------------------------------------------------------------- normalisation

def _major_chain(node: NDProof) -> tuple[list[int], NDProof]:
    """Follow the major premiss through βη steps; return the path and the node reached."""
    path = [MAJOR[node.rule]]
    cur = node.premises[MAJOR[node.rule]]
    while cur.rule == "BetaEta":
        path.append(0)
        cur = cur.premises[0]
    return path, cur


def redexes(p: NDProof) -> list[tuple[tuple, str]]:
    """(path, kind) for every conversion site: ``detour`` (E over I) or ``betaeta``."""
    out = []
    for path, n in nodes(p):
        if n.rule in E_RULES:
            _, m = _major_chain(n)
            if m.rule in I_RULES and I_RULES[m.rule] is E_RULES[n.rule]:
                out.append((path, "detour"))
        elif n.rule == "BetaEta":
            out.append((path, "betaeta"))
    return out


def is_normal(p: NDProof) -> bool:
    for _, n in nodes(p):
        if n.rule in E_RULES:
            major = n.premises[MAJOR[n.rule]]
            if major.rule in I_RULES or major.rule == "BetaEta":
                return False
    return True


def contract(p: NDProof, path: tuple, assoc: bool = True) -> NDProof:
    node = at(p, path)
    if node.rule == "BetaEta":
        return replace_at(p, path, node.premises[0], assoc)
    if node.rule not in E_RULES:
        raise ValueError(f"no redex at {path}")
    _, intro = _major_chain(node)
    minor = node.premises[1 - MAJOR[node.rule]]
    if intro.rule not in I_RULES or I_RULES[intro.rule] is not E_RULES[node.rule]:
        raise ValueError(f"no detour at {path}")
    new = substitute(intro.premises[0], intro.discharged, minor, assoc)
    return replace_at(p, path, new, assoc)


def normalize_nd(p: NDProof, assoc: bool = True, choose: Callable | None = None,
                 on_step: Callable | None = None) -> NDProof:
    """Apply conversions until none is left (leftmost-outermost unless ``choose`` picks)."""
    while True:
        rs = redexes(p)
        if not rs:
            return p
        path, kind = choose(rs) if choose else rs[0]
        p = contract(p, path, assoc)
        if on_step:
            on_step(path, kind, p)


def all_normal_forms(p: NDProof, assoc: bool = True, limit: int = 20000) -> dict:
    """Explore every conversion order.  Returns {proof key: proof} of the normal forms
    reached and the length of the longest sequence under key ``'_longest'``."""
    seen: dict = {}
    finals: dict = {}

    def go(q: NDProof) -> int:
        k = proof_key(q)
        if k in seen:
            return seen[k]
        if len(seen) > limit:
            raise RuntimeError("strategy space too large")
        rs = redexes(q)
        if not rs:
            finals[k] = q
            seen[k] = 0
            return 0
        longest = 1 + max(go(contract(q, path, assoc)) for path, _ in rs)
        seen[k] = longest
        return longest

    longest = go(p)
    return {"_longest": longest, **finals}


def proof_key(p, assoc: bool = True):
    """Structural key, invariant under renaming of hypothesis variables."""
    order: dict[str, str] = {}

    def leaves(n):
        if not n.premises:
            for b in n.antecedent:
                order.setdefault(b.var, f"#{len(order)}")
        for c in n.premises:
            leaves(c)

    leaves(p)

    def go(n):
        t = n.conclusion.term
        for old, new in order.items():
            t = rename_free(t, old, new)
        ant = tuple(sorted((order.get(b.var, b.var), str(b.formula), b.word or "")
                           for b in n.antecedent))
        ent = (n.entry.word, str(n.entry.formula), alpha_key(n.entry.term)) if getattr(n, "entry", None) else None
        return (n.rule, str(n.conclusion.formula), alpha_key(canon(t, assoc)), ant,
                order.get(n.discharged, n.discharged) if getattr(n, "discharged", None) else None,
                ent, tuple(go(c) for c in n.premises))

    return go(p)


def subformula_check(p: NDProof) -> tuple[Formula, tuple] | None:
    """None if every formula is a subformula of a hypothesis or the conclusion,
    otherwise the first offending (formula, path)."""
    allowed = subformulas(p.formula)
    for b in p.antecedent:
        allowed |= subformulas(b.formula)
    for path, n in nodes(p):
        for f in [n.formula] + [b.formula for b in n.antecedent]:
            if f not in allowed:
                return f, path
    return None


def rule_counts(p) -> Counter:
    return Counter(n.rule for _, n in nodes(p))


# ---------------------------------------------------------------- rendering

def render_text(p: NDProof, indent: str = "") -> str:
    extra = f" [{p.discharged}]" if p.discharged else ""
    lines = [f"{indent}{p.rule}{extra}: {p.conclusion}"]
    for c in p.premises:
        lines.append(render_text(c, indent + "  "))
    return "\n".join(lines)
