"""Formula-level proof structures: links, polarity-driven unfolding, axiom
linkings and vertex contraction.

A structure is a hypergraph.  Each link has ordered premisses (above) and
conclusions (below).  Hypotheses are vertices that are the conclusion of no
link; conclusions are vertices that are the premiss of no link.
"""
from __future__ import annotations

import copy
import enum
import math
from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Iterator

from .formulas import Atom, Formula, Limp, Over, Polarity, Under
from .lexicon import LexEntry


class CountMismatch(Exception):
    def __init__(self, atom: str, pos: int, neg: int):
        super().__init__(f"atom {atom}: {pos} positive vs {neg} negative occurrences")
        self.atom, self.pos, self.neg = atom, pos, neg


class NotContractible(Exception):
    pass


class OccurrenceClass(enum.Enum):
    CUT = "cut"
    AXIOMATIC = "axiomatic"
    FLOW = "flow"


@dataclass
class Link:
    kind: str                   # "tensor" | "par"
    index: str                  # "+" | "@" | "lambda" | "eps"
    premisses: list[int]
    conclusions: list[int]
    main: int | None = None

    @property
    def vertices(self) -> list[int]:
        return self.premisses + self.conclusions


@dataclass
class Vertex:
    formula: Formula | None = None
    origin: str = "internal"    # lexical | hypothesis | internal | conclusion
    name: str | None = None     # variable name of a hypothesis
    entry: LexEntry | None = None


@dataclass
class ProofStructure:
    vertices: dict[int, Vertex] = field(default_factory=dict)
    links: dict[int, Link] = field(default_factory=dict)
    goal: int | None = None
    hyps: list[int] = field(default_factory=list)       # hypothesis roots in input order
    leaves: list[tuple[int, str, Polarity]] = field(default_factory=list)
    next_id: int = 0

    def new_vertex(self, **kw) -> int:
        v = self.next_id
        self.next_id += 1
        self.vertices[v] = Vertex(**kw)
        return v

    def new_link(self, link: Link) -> int:
        k = self.next_id
        self.next_id += 1
        self.links[k] = link
        return k

    def copy(self) -> "ProofStructure":
        return ProofStructure({v: copy.copy(i) for v, i in self.vertices.items()},
                              {k: Link(l.kind, l.index, list(l.premisses), list(l.conclusions), l.main)
                               for k, l in self.links.items()},
                              self.goal, list(self.hyps), list(self.leaves), self.next_id)

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
        return [v for v in self.vertices if v not in made]

    def conclusions(self) -> list[int]:
        used = {v for l in self.links.values() for v in l.premisses}
        return [v for v in self.vertices if v not in used]

    def check(self) -> None:
        """Each vertex is at most once a premiss and at most once a conclusion;
        every link matches its schema."""
        seen_p: set[int] = set()
        seen_c: set[int] = set()
        for l in self.links.values():
            for v in l.premisses:
                if v in seen_p:
                    raise ValueError(f"vertex {v} is premiss of two links")
                seen_p.add(v)
            for v in l.conclusions:
                if v in seen_c:
                    raise ValueError(f"vertex {v} is conclusion of two links")
                seen_c.add(v)
            _check_schema(self, l)


def _check_schema(ps: ProofStructure, l: Link) -> None:
    f = {v: ps.vertices[v].formula for v in l.vertices}
    if l.kind == "tensor":
        a, b = l.premisses
        (c,) = l.conclusions
        if l.index == "@":
            ok = f[a] == Limp(f[b], f[c]) and l.main == a
        elif l.main == a:
            ok = f[a] == Over(f[c], f[b])
        else:
            ok = l.main == b and f[b] == Under(f[a], f[c])
    else:
        (p,) = l.premisses
        x, y = l.conclusions
        if l.index == "lambda":
            ok = l.main == x and f[x] == Limp(f[y], f[p])
        elif l.main == x:
            ok = f[x] == Over(f[p], f[y])
        else:
            ok = l.main == y and f[y] == Under(f[x], f[p])
    if not ok:
        raise ValueError(f"link {l} does not match its schema")


def unfold_into(ps: ProofStructure, f: Formula, pol: Polarity, v: int) -> None:
    """Expand the formula at vertex ``v`` with polarity ``pol``."""
    if isinstance(f, Atom):
        ps.leaves.append((v, f.name, pol))
        return
    if pol is Polarity.POS:
        c = ps.new_vertex(formula=f.result)
        a = ps.new_vertex(formula=f.arg)
        if isinstance(f, Over):
            ps.new_link(Link("tensor", "+", [v, a], [c], main=v))
        elif isinstance(f, Under):
            ps.new_link(Link("tensor", "+", [a, v], [c], main=v))
        else:
            ps.new_link(Link("tensor", "@", [v, a], [c], main=v))
        unfold_into(ps, f.arg, Polarity.NEG, a)
        unfold_into(ps, f.result, Polarity.POS, c)
    else:
        c = ps.new_vertex(formula=f.result)
        a = ps.new_vertex(formula=f.arg)
        if isinstance(f, Over):
            ps.new_link(Link("par", "+", [c], [v, a], main=v))
        elif isinstance(f, Under):
            ps.new_link(Link("par", "+", [c], [a, v], main=v))
        else:
            ps.new_link(Link("par", "lambda", [c], [v, a], main=v))
        unfold_into(ps, f.result, Polarity.NEG, c)
        unfold_into(ps, f.arg, Polarity.POS, a)


def unfold(f: Formula, pol: Polarity) -> ProofStructure:
    ps = ProofStructure()
    v = ps.new_vertex(formula=f, origin="hypothesis" if pol is Polarity.POS else "conclusion")
    if pol is Polarity.POS:
        ps.hyps.append(v)
    else:
        ps.goal = v
    unfold_into(ps, f, pol, v)
    return ps


def build_unlinked(hyps, goal: Formula, names=None) -> ProofStructure:
    """Unfold every hypothesis positively and the goal negatively.

    ``hyps`` holds formulas (logical hypotheses) or lexical entries; ``names``
    gives the variable of each hypothesis (default x1.. / p1..)."""
    ps = ProofStructure()
    for i, h in enumerate(hyps):
        if isinstance(h, LexEntry):
            name = names[i] if names else f"p{i + 1}"
            v = ps.new_vertex(formula=h.formula, origin="lexical", name=name, entry=h)
            f = h.formula
        else:
            name = names[i] if names else f"x{i + 1}"
            v = ps.new_vertex(formula=h, origin="hypothesis", name=name)
            f = h
        ps.hyps.append(v)
        unfold_into(ps, f, Polarity.POS, v)
    g = ps.new_vertex(formula=goal, origin="conclusion")
    ps.goal = g
    unfold_into(ps, goal, Polarity.NEG, g)
    return ps


def leaf_classes(ps: ProofStructure) -> dict[str, tuple[list[int], list[int]]]:
    """Per atom: (negative leaves, positive leaves) in creation order."""
    out: dict[str, tuple[list[int], list[int]]] = {}
    for v, a, pol in ps.leaves:
        neg, pos = out.setdefault(a, ([], []))
        (pos if pol is Polarity.POS else neg).append(v)
    return out


def check_counts(ps: ProofStructure) -> None:
    for a, (neg, pos) in sorted(leaf_classes(ps).items()):
        if len(neg) != len(pos):
            raise CountMismatch(a, len(pos), len(neg))


def count_linkings(ps: ProofStructure) -> int:
    check_counts(ps)
    return math.prod(math.factorial(len(neg)) for neg, _ in leaf_classes(ps).values())


def linkings(ps: ProofStructure) -> Iterator[list[tuple[int, int]]]:
    """Every bijection between negative and positive leaves of each atom,
    as (negative, positive) pairs; raises CountMismatch eagerly."""
    check_counts(ps)
    classes = sorted(leaf_classes(ps).items())
    per_atom = [[list(zip(neg, perm)) for perm in permutations(pos)] for _, (neg, pos) in classes]
    for choice in product(*per_atom):
        yield [pair for part in choice for pair in part]


def apply_linking(ps: ProofStructure, pairs) -> ProofStructure:
    out = ps.copy()
    alias: dict[int, int] = {}
    for x, y in pairs:
        z = contract_vertices(out, alias.get(x, x), alias.get(y, y))
        alias[x] = alias[y] = z
    out.leaves = []
    return out


def enumerate_linkings(hyps, goal: Formula, names=None) -> Iterator[ProofStructure]:
    ps = build_unlinked(hyps, goal, names)
    for pairs in linkings(ps):
        yield apply_linking(ps, pairs)


def contract_vertices(ps: ProofStructure, x: int, y: int) -> int:
    """Identify hypothesis ``x`` with conclusion ``y`` in place; returns the merged vertex.

    The merged vertex keeps the link ``x`` is a premiss of and the link ``y``
    is a conclusion of."""
    if x == y:
        raise NotContractible("cannot contract a vertex with itself")
    vx, vy = ps.vertices[x], ps.vertices[y]
    if vx.origin == "lexical":
        raise NotContractible("lexical hypotheses are not contractible")
    if ps.producer(x) is not None:
        raise NotContractible(f"vertex {x} is not a hypothesis")
    if ps.consumer(y) is not None:
        raise NotContractible(f"vertex {y} is not a conclusion")
    if vx.formula != vy.formula:
        raise NotContractible(f"labels differ: {vx.formula} vs {vy.formula}")
    for l in ps.links.values():
        l.premisses = [y if v == x else v for v in l.premisses]
        if l.main == x:
            l.main = y
    if vx.origin == "conclusion":
        vy.origin = "conclusion" if vy.origin == "internal" else vy.origin
        ps.goal = y
    elif vx.origin == "hypothesis" and vy.origin == "internal":
        vy.origin, vy.name = "hypothesis", vx.name
    if x in ps.hyps:
        ps.hyps[ps.hyps.index(x)] = y
    del ps.vertices[x]
    return y


def classify(ps: ProofStructure, v: int) -> OccurrenceClass:
    n = sum(1 for l in ps.links.values() if l.main == v)
    if n == 0:
        return OccurrenceClass.AXIOMATIC
    return OccurrenceClass.FLOW if n == 1 else OccurrenceClass.CUT


def to_dot(ps: ProofStructure, name: str = "proof_structure") -> str:
    lines = [f"digraph {name} {{", "  node [shape=plaintext];"]
    for v, info in sorted(ps.vertices.items()):
        label = str(info.formula) if info.formula is not None else ""
        if info.entry is not None:
            label = f"{info.entry.word} : {label}"
        elif info.name:
            label = f"{info.name} : {label}"
        lines.append(f'  v{v} [label="{_esc(label)}"];')
    for k, l in sorted(ps.links.items()):
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


def _esc(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')
