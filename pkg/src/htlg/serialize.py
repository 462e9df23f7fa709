"""JSON, LaTeX and text renderings of proofs and derivations.

Proof files are JSON objects ``{"kind": "nd"|"seq", "assoc": bool, "proof": node}``.
Loading builds the nodes exactly as written (no recomputation) so that a
tampered file is caught by the checker rather than silently repaired.
"""
from __future__ import annotations

import json

from . import nd
from .formulas import Atom, Formula, Limp, Over, Under, parse_formula, pros
from .lexicon import LexEntry, validate_entry
from .nd import Binding, Judgment, NDProof
from .sequent import SeqProof
from .terms import ST, Term, parse_term, show


class ProofFormatError(ValueError):
    pass


# ---------------------------------------------------------------- JSON

def entry_to_json(e: LexEntry) -> dict:
    return {"word": e.word, "formula": str(e.formula), "term": show(e.term, types=True)}


def entry_from_json(d: dict) -> LexEntry:
    f = parse_formula(d["formula"])
    e = LexEntry(d["word"], f, parse_term(d["term"], expected=pros(f)))
    validate_entry(e)
    return e


def _judgment_to_json(j: Judgment) -> dict:
    return {
        "antecedent": [{"var": b.var, "formula": str(b.formula), "word": b.word} for b in j.antecedent],
        "term": show(j.term, types=True),
        "display": show(nd.display_term(j)),
        "formula": str(j.formula),
    }


def _judgment_from_json(d: dict) -> Judgment:
    ant = tuple(Binding(b["var"], parse_formula(b["formula"]), b.get("word")) for b in d["antecedent"])
    env = {b.var: (ST if b.lexical else pros(b.formula)) for b in ant}
    f = parse_formula(d["formula"])
    return Judgment(ant, parse_term(d["term"], env=env, expected=pros(f)), f)


def nd_to_json(p: NDProof) -> dict:
    node = {"rule": p.rule, **_judgment_to_json(p.conclusion)}
    if p.discharged is not None:
        node["discharged"] = p.discharged
    if p.entry is not None:
        node["entry"] = entry_to_json(p.entry)
    node["premises"] = [nd_to_json(c) for c in p.premises]
    return node


def nd_from_json(d: dict) -> NDProof:
    return NDProof(d["rule"], tuple(nd_from_json(c) for c in d.get("premises", [])),
                   _judgment_from_json(d), d.get("discharged"),
                   entry_from_json(d["entry"]) if d.get("entry") else None)


def seq_to_json(p: SeqProof) -> dict:
    node = {"rule": p.rule, **_judgment_to_json(p.conclusion)}
    for k in ("active", "principal"):
        if getattr(p, k) is not None:
            node[k] = getattr(p, k)
    if p.entry is not None:
        node["entry"] = entry_to_json(p.entry)
    node["premises"] = [seq_to_json(c) for c in p.premises]
    return node


def seq_from_json(d: dict) -> SeqProof:
    return SeqProof(d["rule"], tuple(seq_from_json(c) for c in d.get("premises", [])),
                    _judgment_from_json(d), d.get("active"), d.get("principal"),
                    entry_from_json(d["entry"]) if d.get("entry") else None)


def dumps_proof(p, assoc: bool = True) -> str:
    if isinstance(p, NDProof):
        doc = {"kind": "nd", "assoc": assoc, "proof": nd_to_json(p)}
    else:
        doc = {"kind": "seq", "assoc": assoc, "proof": seq_to_json(p)}
    return json.dumps(doc, indent=1, ensure_ascii=False) + "\n"


def loads_proof(text: str):
    """Returns (kind, proof, assoc)."""
    try:
        doc = json.loads(text)
        kind = doc["kind"]
        if kind == "nd":
            return kind, nd_from_json(doc["proof"]), doc.get("assoc", True)
        if kind == "seq":
            return kind, seq_from_json(doc["proof"]), doc.get("assoc", True)
        raise ProofFormatError(f"unknown proof kind {kind!r}")
    except ProofFormatError:
        raise
    except Exception as exc:
        raise ProofFormatError(f"malformed proof file: {exc}") from exc


def derivation_to_json(d, stats=None) -> dict:
    ps = d.linking
    return {
        "tokens": d.tokens,
        "goal": str(d.goal),
        "term": show(d.term),
        "lexicon": [entry_to_json(e) for e in d.lex_choice],
        "ndProof": nd_to_json(d.nd_proof),
        "linking": {
            "vertices": [{"id": v, "formula": str(i.formula), "origin": i.origin, "name": i.name}
                         for v, i in sorted(ps.vertices.items())],
            "links": [{"id": k, "kind": l.kind, "index": l.index, "premisses": l.premisses,
                       "conclusions": l.conclusions, "main": l.main} for k, l in sorted(ps.links.items())],
            "pairs": [list(p) for p in d.pairs],
        },
        "trace": [[s.rule, list(s.site)] for s in d.trace],
        "stats": {"initial_size": d.initial_size, "steps": len(d.trace), **(stats or {})},
    }


# ---------------------------------------------------------------- LaTeX

def formula_latex(f: Formula) -> str:
    def inner(f):
        return go(f) if isinstance(f, Atom) else f"({go(f)})"

    def go(f):
        if isinstance(f, Atom):
            return f.name
        if isinstance(f, Over):
            return f"{inner(f.result)}/{inner(f.arg)}"
        if isinstance(f, Under):
            return f"{inner(f.arg)}\\backslash {inner(f.result)}"
        right = go(f.result) if isinstance(f.result, (Atom, Limp)) else inner(f.result)
        return f"{inner(f.arg)} \\multimap {right}"

    return go(f)


def term_latex(t: Term) -> str:
    s = show(t)
    return (s.replace("\\", "\\lambda ").replace("eps", "\\epsilon").replace("+", " + ")
            .replace("_", "\\_"))


_LABELS = {"OverE": "/E", "UnderE": "$\\backslash$E", "LimpE": "$\\multimap$E", "OverI": "/I",
           "UnderI": "$\\backslash$I", "LimpI": "$\\multimap$I", "BetaEta": "$\\beta\\eta$",
           "OverL": "/L", "UnderL": "$\\backslash$L", "LimpL": "$\\multimap$L", "OverR": "/R",
           "UnderR": "$\\backslash$R", "LimpR": "$\\multimap$R"}


def to_latex(p) -> str:
    """bussproofs source for an ND or sequent proof."""
    lines: list[str] = []
    seq = isinstance(p, SeqProof)

    def go(n):
        for c in n.premises:
            go(c)
        j = n.conclusion
        body = f"{term_latex(nd.display_term(j))} : {formula_latex(j.formula)}"
        if seq:
            ant = ", ".join(f"{b.word if b.lexical else b.var} : {formula_latex(b.formula)}" for b in j.antecedent)
            body = f"{ant} \\vdash {body}"
        if not n.premises:
            lines.append("\\AxiomC{}")
        lines.append(f"\\RightLabel{{{_LABELS.get(n.rule, n.rule)}}}")
        inf = {0: "UnaryInfC", 1: "UnaryInfC", 2: "BinaryInfC"}[len(n.premises)]
        lines.append(f"\\{inf}{{$" + body + "$}")

    go(p)
    return "\\begin{prooftree}\n" + "\n".join(lines) + "\n\\end{prooftree}\n"


def to_text(p) -> str:
    return p.__str__() + "\n"
