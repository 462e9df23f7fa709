"""Parsing pipeline: lexical choice, axiom linking, contraction, read-back and
sequentialisation into natural deduction; plus the converse direction from
natural deduction proofs to proof structures."""
from __future__ import annotations

import time
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product

import networkx as nx

from . import nd
from .aps import ContractionResult, Step, contract, to_aps
from .formulas import Formula, Limp, Over, Under, pros
from .lexicon import LexEntry, Lexicon
from .nd import NDProof, Namer
from .proofnet import (CountMismatch, Link, ProofStructure, apply_linking, build_unlinked,
                       linkings)
from .terms import ST, Term, Var, Word, alpha_eq, show, spine, string_canon


class InvalidTrace(Exception):
    pass


@dataclass
class ParseRequest:
    tokens: list[str]
    goal: Formula
    assoc: bool = True
    eta: bool = False
    order_check: bool = True
    max_derivations: int | None = None


@dataclass
class Derivation:
    tokens: list[str]
    goal: Formula
    lex_choice: tuple[LexEntry, ...]
    linking: ProofStructure
    pairs: list[tuple[int, int]]
    trace: list[Step]
    term: Term
    nd_proof: NDProof
    initial_size: int

    def key(self):
        return (show(self.term), str(nd.proof_key(self.nd_proof)))


@dataclass
class Stats:
    linkings: int = 0
    count_mismatches: int = 0
    contraction_steps: int = 0
    successes: int = 0
    seconds: float = 0.0

    def add(self, other: "Stats") -> None:
        self.linkings += other.linkings
        self.count_mismatches += other.count_mismatches
        self.contraction_steps += other.contraction_steps
        self.successes += other.successes


@dataclass
class ParseResult:
    derivations: list[Derivation]
    stats: Stats = field(default_factory=Stats)

    def __len__(self) -> int:
        return len(self.derivations)

    def __iter__(self):
        return iter(self.derivations)

    def __getitem__(self, i):
        return self.derivations[i]


# ---------------------------------------------------------------- search

def _derive(hyps, goal: Formula, names, assoc: bool, eta: bool, first: bool,
            lexicon: Lexicon | None, keep=None) -> tuple[list[Derivation], Stats]:
    stats = Stats()
    ps0 = build_unlinked(hyps, goal, names)
    out: list[Derivation] = []
    try:
        stream = linkings(ps0)
        pairs_list = iter(stream)
        first_pairs = next(pairs_list, None)
    except CountMismatch:
        stats.count_mismatches += 1
        return out, stats
    if first_pairs is None:
        return out, stats
    for pairs in _chain(first_pairs, pairs_list):
        stats.linkings += 1
        ps = apply_linking(ps0, pairs)
        res = contract(to_aps(ps, assoc), eta=eta)
        stats.contraction_steps += res.steps
        if not res.success:
            continue
        stats.successes += 1
        proof = sequentialise(ps, res, assoc, lexicon)
        term = nd.display_term(proof.conclusion)
        d = Derivation([], goal, tuple(h for h in hyps if isinstance(h, LexEntry)), ps, pairs,
                       res.trace, term, proof, res.initial_size)
        if keep is not None and not keep(d):
            continue
        out.append(d)
        if first:
            break
    return out, stats


def _chain(first, rest):
    yield first
    yield from rest


def _parse_choice(args):
    choice, tokens, goal, assoc, eta, order_check, lexicon = args
    names = [f"p{i + 1}" for i in range(len(tokens))]
    ds, stats = _derive(list(choice), goal, names, assoc, eta, False, lexicon)
    kept = []
    for d in ds:
        d.tokens = list(tokens)
        if order_check and pros(goal) == ST and not word_order_ok(d.term, tokens, assoc):
            continue
        kept.append(d)
    return kept, stats


def word_order_ok(term: Term, tokens, assoc: bool = True) -> bool:
    items = spine(string_canon(term, assoc))
    return [i.surface if isinstance(i, Word) else None for i in items] == list(tokens)


def parse(tokens, goal: Formula, lexicon: Lexicon, assoc: bool = True, eta: bool = False,
          order_check: bool = True, max_derivations: int | None = None, jobs: int = 1) -> ParseResult:
    """All derivations of the token sequence at ``goal``, in canonical order."""
    if isinstance(tokens, str):
        tokens = tokens.split()
    tokens = list(tokens)
    start = time.perf_counter()
    if not tokens:
        return ParseResult([])
    entries = [lexicon.lookup(t) for t in tokens]
    if order_check and pros(goal) != ST:
        warnings.warn(f"goal {goal} is not of string type; reporting raw derivability")
    work = [(choice, tokens, goal, assoc, eta, order_check, lexicon) for choice in product(*entries)]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_parse_choice, work))
    else:
        results = [_parse_choice(w) for w in work]
    stats = Stats()
    found: dict = {}
    for ds, st in results:
        stats.add(st)
        for d in ds:
            found.setdefault(d.key(), d)
    ders = [found[k] for k in sorted(found)]
    if max_derivations is not None:
        ders = ders[:max_derivations]
    stats.seconds = time.perf_counter() - start
    return ParseResult(ders, stats)


def parse_request(req: ParseRequest, lexicon: Lexicon, jobs: int = 1) -> ParseResult:
    return parse(req.tokens, req.goal, lexicon, req.assoc, req.eta, req.order_check,
                 req.max_derivations, jobs)


def prove(hyps, goal: Formula, assoc: bool = True, eta: bool = False, first: bool = False,
          lexicon: Lexicon | None = None, ordered: bool = False) -> list[Derivation]:
    """Proof-net search for a sequent of formulas and/or lexical entries.

    With ``ordered`` only derivations whose term is the concatenation of the
    hypotheses in the given order are kept."""
    names = []
    for i, h in enumerate(hyps):
        names.append(f"p{i + 1}" if isinstance(h, LexEntry) else f"x{i + 1}")
    keep = (lambda d: hypothesis_order_ok(d.nd_proof.term, names, assoc)) if ordered else None
    ds, _ = _derive(list(hyps), goal, names, assoc, eta, first, lexicon, keep)
    found: dict = {}
    for d in ds:
        found.setdefault(d.key(), d)
    return [found[k] for k in sorted(found)]


def hypothesis_order_ok(term: Term, names, assoc: bool = True) -> bool:
    items = spine(string_canon(term, assoc))
    return [i.name if isinstance(i, Var) else None for i in items] == list(names)


def derivable(hyps, goal: Formula, assoc: bool = True, ordered: bool = False) -> bool:
    return bool(prove(hyps, goal, assoc, first=True, ordered=ordered))


# ---------------------------------------------------------------- sequentialisation

def sequentialise(ps: ProofStructure, result: ContractionResult | None, assoc: bool = True,
                  lexicon: Lexicon | None = None) -> NDProof:
    """Read the proof net as a natural deduction proof, from the conclusion upwards.

    Tensor links become elimination rules, contracted par links introduction
    rules whose discharged hypothesis is the auxiliary conclusion."""
    if result is not None and not result.success:
        raise InvalidTrace("the trace does not end in a lambda graph")
    prod = {v: k for k, l in ps.links.items() for v in l.conclusions}
    taken = {v.name for v in ps.vertices.values() if v.name}
    names = Namer(taken, "z")
    aux_name: dict[int, str] = {}
    active: set[int] = set()

    def go(v: int) -> NDProof:
        if v in active:
            raise InvalidTrace(f"cycle through vertex {v}")
        active.add(v)
        try:
            return build(v)
        finally:
            active.discard(v)

    def build(v: int) -> NDProof:
        info = ps.vertices[v]
        k = prod.get(v)
        if k is None:
            if info.origin == "lexical":
                return nd.lex(info.entry, info.name, assoc)
            return nd.ax(info.name, info.formula)
        l = ps.links[k]
        if l.kind == "par":
            if k not in aux_name:
                aux_name[k] = names()
            if v != l.main:
                return nd.ax(aux_name[k], info.formula)
            prem = go(l.premisses[0])
            make = nd.limp_i if l.index == "lambda" else nd.over_i if l.main == l.conclusions[0] else nd.under_i
            return make(prem, aux_name[k], assoc)
        major = l.main
        minor = [u for u in l.premisses if u != major][0]
        if l.index == "@":
            return nd.limp_e(go(minor), go(major), assoc)
        if l.premisses[0] == major:
            return nd.over_e(go(major), go(minor), assoc)
        return nd.under_e(go(minor), go(major), assoc)

    try:
        proof = go(ps.goal)
        nd.check_nd(proof, lexicon, assoc)
    except (nd.RuleViolation, nd.VariableClash, RecursionError) as exc:
        raise InvalidTrace(str(exc)) from exc
    if result is not None:
        net_term = result.term(words=False)
        if not alpha_eq(nd.canon(proof.term, assoc), nd.canon(net_term, assoc)):
            raise InvalidTrace(f"read-back {show(net_term)} differs from {show(proof.term)}")
    return proof


# ---------------------------------------------------------------- nets from proofs

def net_from_nd(p: NDProof, assoc: bool = True, eta: bool = False) -> tuple[ProofStructure, ContractionResult]:
    """The proof structure of ``p`` (eliminations as tensors, introductions as
    pars) and the contraction run on its abstract structure."""
    ps = ProofStructure()

    def go(n: NDProof) -> tuple[int, dict[str, int]]:
        r = n.rule
        if r == "Ax":
            b = n.antecedent[0]
            v = ps.new_vertex(formula=b.formula, origin="hypothesis", name=b.var)
            return v, {b.var: v}
        if r == "Lex":
            b = n.antecedent[0]
            v = ps.new_vertex(formula=b.formula, origin="lexical", name=b.var, entry=n.entry)
            return v, {b.var: v}
        if r == "BetaEta":
            return go(n.premises[0])
        if r in nd.I_RULES:
            v0, open_ = go(n.premises[0])
            d = open_.pop(n.discharged)
            ps.vertices[d].origin = "internal"
            m = ps.new_vertex(formula=n.formula)
            concl = [d, m] if r == "UnderI" else [m, d]
            ps.new_link(Link("par", "lambda" if r == "LimpI" else "+", [v0], concl, main=m))
            return m, open_
        major = n.premises[nd.MAJOR[r]]
        minor = n.premises[1 - nd.MAJOR[r]]
        vmaj, o1 = go(major)
        vmin, o2 = go(minor)
        c = ps.new_vertex(formula=n.formula)
        if r == "LimpE":
            ps.new_link(Link("tensor", "@", [vmaj, vmin], [c], main=vmaj))
        elif r == "OverE":
            ps.new_link(Link("tensor", "+", [vmaj, vmin], [c], main=vmaj))
        else:
            ps.new_link(Link("tensor", "+", [vmin, vmaj], [c], main=vmaj))
        return c, {**o1, **o2}

    root, open_ = go(p)
    ps.goal = root
    if ps.vertices[root].origin == "internal":
        ps.vertices[root].origin = "conclusion"
    ps.hyps = sorted(open_.values())
    res = contract(to_aps(ps, assoc), eta=eta)
    return ps, res


def expand_axioms(p: NDProof, assoc: bool = True) -> NDProof:
    """Replace every hypothesis and lexical leaf of complex formula by its
    expansion down to atomic axioms."""
    names = Namer(nd.bound_names(p) | {b.var for _, n in nd.nodes(p) for b in n.antecedent}, "e")

    def expand(prf: NDProof) -> NDProof:
        f = prf.formula
        if isinstance(f, Limp):
            y = names()
            return nd.limp_i(expand(nd.limp_e(expand(nd.ax(y, f.arg)), prf, assoc)), y, assoc)
        if isinstance(f, Over):
            y = names()
            return nd.over_i(expand(nd.over_e(prf, expand(nd.ax(y, f.arg)), assoc)), y, assoc)
        if isinstance(f, Under):
            y = names()
            return nd.under_i(expand(nd.under_e(expand(nd.ax(y, f.arg)), prf, assoc)), y, assoc)
        return prf

    def go(n: NDProof) -> NDProof:
        if n.rule in ("Ax", "Lex"):
            return expand(n)
        return nd.rebuild(n, tuple(go(c) for c in n.premises), assoc)

    return go(p)


def eta_long(p: NDProof, assoc: bool = True) -> NDProof:
    """Normal proof with atomic axioms: the shape proof-net search produces."""
    return nd.normalize_nd(expand_axioms(p, assoc), assoc)


# ---------------------------------------------------------------- isomorphism

def structure_graph(ps: ProofStructure) -> nx.DiGraph:
    g = nx.DiGraph()
    for v, info in ps.vertices.items():
        word = info.entry.word if info.entry is not None else None
        g.add_node(("v", v), label=(str(info.formula), word, v == ps.goal))
    for k, l in ps.links.items():
        g.add_node(("l", k), label=(l.kind, l.index))
        for i, v in enumerate(l.premisses):
            g.add_edge(("v", v), ("l", k), role=("p", i, v == l.main))
        for i, v in enumerate(l.conclusions):
            g.add_edge(("l", k), ("v", v), role=("c", i, v == l.main))
    return g


def isomorphic(a: ProofStructure, b: ProofStructure) -> bool:
    return nx.is_isomorphic(structure_graph(a), structure_graph(b),
                            node_match=lambda x, y: x["label"] == y["label"],
                            edge_match=lambda x, y: x["role"] == y["role"])
