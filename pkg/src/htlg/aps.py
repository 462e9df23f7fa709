"""Abstract proof structures: term graphs, the graph rewriting system and the
lambda-graph correctness check.

Links reuse :class:`htlg.proofnet.Link`.  Indices: ``+`` (concatenation,
n-ary in associative mode, the zero-premiss case standing for the empty
string), ``eps`` (empty string, non-associative mode), ``@`` (application)
and ``lambda``.  A ``lambda`` tensor has the body as premiss and conclusions
[abstraction, bound variable].
"""
from __future__ import annotations

from dataclasses import dataclass, field

import networkx as nx

from .formulas import Formula, pros
from .proofnet import Link, ProofStructure
from .terms import (EPS, ST, Abs, App, Eps, Plus, Term, Var, Word, annotate, fresh)

TENSOR_RULES = ("Beta", "Eta", "EpsL", "EpsR", "Assoc")
PAR_RULES = ("OverI", "UnderI", "LimpI")


class SiteMismatch(Exception):
    pass


class NotALambdaGraph(Exception):
    def __init__(self, condition: int, detail: str):
        super().__init__(f"condition {condition}: {detail}")
        self.condition = condition
        self.detail = detail


@dataclass
class APS:
    vertices: set[int] = field(default_factory=set)
    links: dict[int, Link] = field(default_factory=dict)
    lex: dict[int, tuple[str, str]] = field(default_factory=dict)          # vertex -> (word, variable)
    hyp: dict[int, tuple[str, Formula | None]] = field(default_factory=dict)
    concl: dict[int, Formula | None] = field(default_factory=dict)
    assoc: bool = True
    next_id: int = 0

    def copy(self) -> "APS":
        return APS(set(self.vertices),
                   {k: Link(l.kind, l.index, list(l.premisses), list(l.conclusions), l.main)
                    for k, l in self.links.items()},
                   dict(self.lex), dict(self.hyp), dict(self.concl), self.assoc, self.next_id)

    def new_vertex(self) -> int:
        v = self.next_id
        self.next_id += 1
        self.vertices.add(v)
        return v

    def new_link(self, link: Link) -> int:
        k = self.next_id
        self.next_id += 1
        self.links[k] = link
        return k

    def size(self) -> int:
        return len(self.vertices) + len(self.links)

    def producer(self, v: int) -> int | None:
        for k, l in self.links.items():
            if v in l.conclusions:
                return k
        return None

    def consumer(self, v: int) -> int | None:
        for k, l in self.links.items():
            if v in l.premisses:
                return k
        return None

    def hypotheses(self) -> list[int]:
        made = {v for l in self.links.values() for v in l.conclusions}
        return sorted(v for v in self.vertices if v not in made)

    def conclusions(self) -> list[int]:
        used = {v for l in self.links.values() for v in l.premisses}
        return sorted(v for v in self.vertices if v not in used)

    def pars(self) -> list[int]:
        return sorted(k for k, l in self.links.items() if l.kind == "par")

    def identify(self, keep: int, drop: int) -> None:
        """Merge ``drop`` into ``keep`` (links and labels follow)."""
        if keep == drop:
            return
        for l in self.links.values():
            l.premisses = [keep if v == drop else v for v in l.premisses]
            l.conclusions = [keep if v == drop else v for v in l.conclusions]
            if l.main == drop:
                l.main = keep
        for table in (self.lex, self.hyp, self.concl):
            if drop in table:
                table[keep] = table.pop(drop)
        self.vertices.discard(drop)

    def remove_link(self, k: int) -> Link:
        return self.links.pop(k)


# ---------------------------------------------------------------- term graphs

def add_term(g: APS, t: Term, env: dict[str, int] | None = None,
             hyp_types: dict[str, Formula | None] | None = None) -> int:
    """Add the graph of a linear term; returns its root vertex."""
    env = dict(env or {})
    hyp_types = hyp_types or {}

    def go(t: Term, env: dict[str, int]) -> int:
        if isinstance(t, Var):
            if t.name in env:
                return env[t.name]
            v = g.new_vertex()
            g.hyp[v] = (t.name, hyp_types.get(t.name))
            return v
        if isinstance(t, Word):
            v = g.new_vertex()
            g.lex[v] = (t.surface, t.surface)
            return v
        if isinstance(t, Eps):
            v = g.new_vertex()
            g.new_link(Link("tensor", "+" if g.assoc else "eps", [], [v]))
            return v
        if isinstance(t, Plus):
            a, b = go(t.left, env), go(t.right, env)
            v = g.new_vertex()
            g.new_link(Link("tensor", "+", [a, b], [v]))
            return v
        if isinstance(t, App):
            f, a = go(t.fun, env), go(t.arg, env)
            v = g.new_vertex()
            g.new_link(Link("tensor", "@", [f, a], [v], main=f))
            return v
        if isinstance(t, Abs):
            x = g.new_vertex()
            body = go(t.body, {**env, t.var: x})
            v = g.new_vertex()
            g.new_link(Link("tensor", "lambda", [body], [v, x], main=v))
            return v
        raise TypeError(f"not a term: {t!r}")

    return go(t, env)


def term_to_graph(t: Term, assoc: bool = True) -> APS:
    g = APS(assoc=assoc)
    root = add_term(g, t)
    g.concl[root] = None
    return g


def graph_to_term(g: APS, words: bool = True, check: bool = True) -> Term:
    """Read a lambda graph back as a term.  Lexical hypotheses become words
    (``words=True``) or their variables."""
    if check:
        check_lambda_graph(g)
    (root,) = g.conclusions()
    prod = {v: k for k, l in g.links.items() for v in l.conclusions}
    names: dict[int, str] = {}
    used = {n for n, _ in g.hyp.values()} | {w for w, _ in g.lex.values()} | {p for _, p in g.lex.values()}
    env = {}
    for v, (n, f) in g.hyp.items():
        env[n] = pros(f) if f is not None else None
    for v, (w, p) in g.lex.items():
        env[p] = ST

    def go(v: int) -> Term:
        if v in g.lex:
            w, p = g.lex[v]
            return Word(w) if words else Var(p, ST)
        if v in g.hyp:
            n, f = g.hyp[v]
            return Var(n, pros(f) if f is not None else None)
        k = prod.get(v)
        if k is None:
            raise NotALambdaGraph(4, f"vertex {v} has no label and no link")
        l = g.links[k]
        if l.index == "lambda":
            if v == l.conclusions[1]:
                return Var(names[k])
            names[k] = fresh("x", used)
            used.add(names[k])
            return Abs(names[k], None, go(l.premisses[0]))
        if l.index == "@":
            return App(go(l.premisses[0]), go(l.premisses[1]))
        if l.index == "eps" or not l.premisses:
            return EPS
        t = go(l.premisses[0])
        for p in l.premisses[1:]:
            t = Plus(t, go(p))
        return t

    t = go(root)
    return annotate(t, {k: v for k, v in env.items() if v is not None})


def check_lambda_graph(g: APS) -> None:
    concl = g.conclusions()
    if len(concl) != 1:
        raise NotALambdaGraph(1, f"{len(concl)} conclusions")
    pars = g.pars()
    if pars:
        raise NotALambdaGraph(2, f"par link {pars[0]} remains")
    for k, l in g.links.items():
        if l.index == "lambda" and not reaches_upward(g, l.premisses[0], l.conclusions[1]):
            raise NotALambdaGraph(3, f"bound vertex of lambda link {k} is not an ancestor of its body")
    inc = nx.Graph()
    inc.add_nodes_from(("v", v) for v in g.vertices)
    for k, l in g.links.items():
        inc.add_node(("l", k))
        cut = l.conclusions[1] if l.index == "lambda" else None
        for v in l.vertices:
            if v != cut:
                if inc.has_edge(("l", k), ("v", v)):
                    raise NotALambdaGraph(4, f"link {k} touches vertex {v} twice")
                inc.add_edge(("l", k), ("v", v))
    if not nx.is_tree(inc):
        why = "disconnected" if not nx.is_connected(inc) else "cyclic"
        raise NotALambdaGraph(4, why)


def is_lambda_graph(g: APS) -> bool:
    try:
        check_lambda_graph(g)
        return True
    except NotALambdaGraph:
        return False


def reaches_upward(g: APS, start: int, target: int, tensor_only: bool = True) -> bool:
    """Is ``target`` reachable from ``start`` going from conclusions to premisses?
    Bound-variable conclusions of lambda tensors are leaves."""
    prod = {v: k for k, l in g.links.items() for v in l.conclusions}
    stack, seen = [start], set()
    while stack:
        v = stack.pop()
        if v == target:
            return True
        if v in seen:
            continue
        seen.add(v)
        k = prod.get(v)
        if k is None:
            continue
        l = g.links[k]
        if tensor_only and l.kind != "tensor":
            continue
        if l.index == "lambda" and v == l.conclusions[1]:
            continue
        stack.extend(l.premisses)
    return False


# ---------------------------------------------------------------- proof structures

def to_aps(ps: ProofStructure, assoc: bool = True) -> APS:
    """Erase internal labels and replace lexical hypotheses by the graphs of their terms."""
    g = APS(assoc=assoc, next_id=ps.next_id)
    g.vertices = set(ps.vertices)
    g.links = {k: Link(l.kind, l.index, list(l.premisses), list(l.conclusions), l.main)
               for k, l in ps.links.items()}
    made = {v for l in ps.links.values() for v in l.conclusions}
    for v, info in ps.vertices.items():
        if info.origin == "lexical" and v not in made:
            root = add_term(g, info.entry.term)
            for w in list(g.lex):
                if g.lex[w][0] == info.entry.word and g.lex[w][1] == info.entry.word:
                    g.lex[w] = (info.entry.word, info.name)
            g.identify(v, root)
        elif v not in made:
            g.hyp[v] = (info.name or f"h{v}", info.formula)
        if v == ps.goal:
            g.concl[v] = info.formula
    return g


# ---------------------------------------------------------------- rewrites

@dataclass(frozen=True)
class Step:
    rule: str
    site: tuple[int, ...]

    def __str__(self) -> str:
        return f"{self.rule}{list(self.site)}"


def _prod_cons(g: APS):
    prod, cons = {}, {}
    for k, l in g.links.items():
        for v in l.conclusions:
            prod[v] = k
        for v in l.premisses:
            cons[v] = k
    return prod, cons


def find_sites(g: APS, rule: str) -> list[tuple[int, ...]]:
    prod, cons = _prod_cons(g)
    out = []
    for k in sorted(g.links):
        l = g.links[k]
        if l.kind == "tensor" and cons.get(l.conclusions[0] if l.conclusions else None) == k:
            continue
        if rule == "Beta" and l.index == "lambda" and l.kind == "tensor":
            m = cons.get(l.conclusions[0])
            if m is not None and g.links[m].index == "@" and g.links[m].premisses[0] == l.conclusions[0]:
                out.append((k, m))
        elif rule == "Eta" and l.index == "@":
            m = cons.get(l.conclusions[0])
            if m is not None:
                lam = g.links[m]
                if lam.index == "lambda" and lam.kind == "tensor" and lam.conclusions[1] == l.premisses[1]:
                    out.append((k, m))
        elif rule in ("EpsL", "EpsR") and l.index == "eps":
            m = cons.get(l.conclusions[0])
            if m is not None and g.links[m].index == "+" and g.links[m].kind == "tensor":
                pos = g.links[m].premisses.index(l.conclusions[0])
                if (rule == "EpsL") == (pos == 0):
                    out.append((k, m))
        elif rule == "Assoc" and l.index == "+" and l.kind == "tensor":
            m = cons.get(l.conclusions[0])
            if m is not None and g.links[m].index == "+" and g.links[m].kind == "tensor":
                out.append((k, m))
        elif rule in PAR_RULES and l.kind == "par" and par_rule(l) == rule:
            if par_obstacle(g, k) is None:
                out.append((k,))
    return out


def par_rule(l: Link) -> str:
    if l.index == "lambda":
        return "LimpI"
    return "OverI" if l.main == l.conclusions[0] else "UnderI"


def par_obstacle(g: APS, k: int) -> str | None:
    """Why the par link ``k`` cannot be contracted now (None if it can)."""
    l = g.links[k]
    (p,) = l.premisses
    rule = par_rule(l)
    if rule == "LimpI":
        if not reaches_upward(g, p, l.conclusions[1]):
            return "ancestor: the bound conclusion is not reachable from the premiss through tensor links"
        return None
    aux = l.conclusions[1] if rule == "OverI" else l.conclusions[0]
    q = g.producer(p)
    if q is None or g.links[q].index != "+" or g.links[q].kind != "tensor":
        return "no concatenation link above the premiss"
    prem = g.links[q].premisses
    edge = prem[-1] if rule == "OverI" else prem[0]
    if edge != aux or len(prem) < 2:
        side = "right" if rule == "OverI" else "left"
        return f"the auxiliary conclusion is not the {side}most premiss of the concatenation"
    if not _other_hypothesis(g, p, aux):
        return "side condition: no hypothesis other than the auxiliary conclusion"
    return None


def _other_hypothesis(g: APS, start: int, aux: int) -> bool:
    """Does the tensor component of ``start`` have a hypothesis besides ``aux``?"""
    prod, cons = _prod_cons(g)
    seen, stack = set(), [start]
    while stack:
        v = stack.pop()
        if v in seen:
            continue
        seen.add(v)
        for k in (prod.get(v), cons.get(v)):
            if k is not None and g.links[k].kind == "tensor":
                stack.extend(g.links[k].vertices)
    for v in seen:
        k = prod.get(v)
        if v != aux and (k is None or g.links[k].kind == "par"):
            return True
    return False


def apply_rewrite(g: APS, rule: str, site: tuple[int, ...]) -> None:
    """Apply ``rule`` at ``site`` in place."""
    if site not in find_sites(g, rule):
        raise SiteMismatch(f"{rule} does not apply at {site}")
    if rule == "Beta":
        lam, app = g.remove_link(site[0]), g.remove_link(site[1])
        g.vertices.discard(lam.conclusions[0])
        body, x = lam.premisses[0], lam.conclusions[1]
        arg, res = app.premisses[1], app.conclusions[0]
        g.identify(arg, x)
        body = arg if body == x else body
        g.identify(body, res)
    elif rule == "Eta":
        app, lam = g.remove_link(site[0]), g.remove_link(site[1])
        g.vertices -= {app.conclusions[0], app.premisses[1]}
        g.identify(app.premisses[0], lam.conclusions[0])
    elif rule in ("EpsL", "EpsR"):
        eps, plus = g.remove_link(site[0]), g.remove_link(site[1])
        g.vertices.discard(eps.conclusions[0])
        other = plus.premisses[1] if rule == "EpsL" else plus.premisses[0]
        g.identify(other, plus.conclusions[0])
    elif rule == "Assoc":
        inner = g.remove_link(site[0])
        outer = g.links[site[1]]
        v = inner.conclusions[0]
        i = outer.premisses.index(v)
        outer.premisses[i:i + 1] = inner.premisses
        g.vertices.discard(v)
        _collapse_unary(g, site[1])
    elif rule == "LimpI":
        l = g.links[site[0]]
        l.kind = "tensor"
    else:
        par = g.remove_link(site[0])
        (p,) = par.premisses
        q = g.producer(p)
        plus = g.links[q]
        if rule == "OverI":
            main, aux = par.conclusions
            plus.premisses = plus.premisses[:-1]
        else:
            aux, main = par.conclusions
            plus.premisses = plus.premisses[1:]
        g.vertices -= {aux, p}
        plus.conclusions = [main]
        _collapse_unary(g, q)


def _collapse_unary(g: APS, k: int) -> None:
    l = g.links[k]
    if l.index == "+" and len(l.premisses) == 1:
        g.remove_link(k)
        g.identify(l.premisses[0], l.conclusions[0])


@dataclass
class ContractionResult:
    success: bool
    graph: APS
    trace: list[Step]
    initial_size: int
    stuck: dict[int, str] = field(default_factory=dict)
    reason: str | None = None

    @property
    def steps(self) -> int:
        return len(self.trace)

    def term(self, words: bool = True) -> Term:
        return graph_to_term(self.graph, words=words)


def contract(aps: APS, eta: bool = False, structural_first: bool = True) -> ContractionResult:
    """Run the contraction strategy on a private copy of ``aps``."""
    g = aps.copy()
    start = g.size()
    trace: list[Step] = []
    structural = ("EpsL", "EpsR") if not g.assoc else ("Assoc",)
    while True:
        step = None
        for rule in ("Beta",) + structural:
            sites = find_sites(g, rule)
            if sites:
                step = Step(rule, sites[0])
                break
        if step is None:
            for k in g.pars():
                if par_obstacle(g, k) is None:
                    step = Step(par_rule(g.links[k]), (k,))
                    break
        if step is None and eta:
            sites = find_sites(g, "Eta")
            if sites:
                step = Step("Eta", sites[0])
        if step is None:
            break
        apply_rewrite(g, step.rule, step.site)
        trace.append(step)
    stuck = {k: par_obstacle(g, k) or "" for k in g.pars()}
    if stuck:
        return ContractionResult(False, g, trace, start, stuck, "par links remain")
    try:
        check_lambda_graph(g)
    except NotALambdaGraph as exc:
        return ContractionResult(False, g, trace, start, {}, str(exc))
    return ContractionResult(True, g, trace, start)


def replay(aps: APS, trace) -> APS:
    g = aps.copy()
    for step in trace:
        apply_rewrite(g, step.rule, step.site)
    return g


def all_strategy_outcomes(aps: APS, eta: bool = False, limit: int = 20000) -> set[bool]:
    """Success/failure over every order of rule application (exhaustive search)."""
    outcomes: set[bool] = set()
    rules = TENSOR_RULES + PAR_RULES if eta else tuple(r for r in TENSOR_RULES if r != "Eta") + PAR_RULES
    if aps.assoc:
        rules = tuple(r for r in rules if r not in ("EpsL", "EpsR"))
    else:
        rules = tuple(r for r in rules if r != "Assoc")
    count = 0

    def go(g: APS):
        nonlocal count
        count += 1
        if count > limit:
            raise RuntimeError("strategy enumeration limit reached")
        moves = [(r, s) for r in rules for s in find_sites(g, r)]
        if not moves:
            outcomes.add(not g.pars() and is_lambda_graph(g))
            return
        for r, s in moves:
            h = g.copy()
            apply_rewrite(h, r, s)
            go(h)

    go(aps.copy())
    return outcomes


def to_dot(g: APS, name: str = "aps") -> str:
    lines = [f"digraph {name} {{", "  node [shape=point];"]
    for v in sorted(g.vertices):
        if v in g.lex:
            lines.append(f'  v{v} [shape=plaintext, label="{g.lex[v][0]}"];')
        elif v in g.hyp:
            lines.append(f'  v{v} [shape=plaintext, label="{g.hyp[v][0]}"];')
        elif v in g.concl:
            f = g.concl[v]
            lines.append(f'  v{v} [shape=plaintext, label="{f if f is not None else "root"}"];')
        else:
            lines.append(f"  v{v};")
    for k, l in sorted(g.links.items()):
        style = "filled" if l.kind == "par" else "solid"
        sym = {"lambda": "λ", "eps": "ε"}.get(l.index, l.index)
        lines.append(f'  l{k} [shape=circle, style={style}, fillcolor=black, fontcolor=white, label="{sym}"];')
        for v in l.premisses:
            lines.append(f"  v{v} -> l{k} [arrowhead=none];")
        for v in l.conclusions:
            head = "normal" if l.main == v and l.kind == "par" else "none"
            lines.append(f"  l{k} -> v{v} [arrowhead={head}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
