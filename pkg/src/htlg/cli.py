"""Command-line front end: ``htlg parse | check | transform | selftest``.

Exit codes: 0 success, 1 no derivation or invalid proof, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import acceptance, nd, prover, proofnet
from . import sequent as sq
from .formulas import FormulaSyntaxError, WellFormednessError, parse_formula
from .lexicon import LexiconError, builtin_path, load
from .serialize import (ProofFormatError, derivation_to_json, dumps_proof, loads_proof, to_latex,
                        to_text)
from .terms import show

FORMATS = ("json", "latex", "dot", "text")


class UsageError(Exception):
    pass


def resolve_lexicon(path: str | None) -> str:
    """An existing file, or the name of a shipped lexicon such as ``demo.lex``."""
    path = path or os.environ.get("HTLG_LEXICON")
    if not path:
        raise UsageError("no lexicon given (use -l or set HTLG_LEXICON)")
    if os.path.exists(path):
        return path
    name = os.path.basename(path)
    if name.endswith(".lex") and os.path.dirname(path) == "":
        try:
            return builtin_path(name[:-4])
        except FileNotFoundError:
            pass
    raise UsageError(f"lexicon not found: {path}")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(text: str, path: str | None) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


# ---------------------------------------------------------------- parse

def render_derivations(result, fmt: str) -> str:
    ders = list(result)
    if fmt == "json":
        stats = vars(result.stats)
        return json.dumps({"count": len(ders), "derivations": [derivation_to_json(d) for d in ders],
                           "stats": stats}, indent=1, ensure_ascii=False) + "\n"
    if fmt == "latex":
        return "".join(f"% derivation {i + 1}: {show(d.term)}\n{to_latex(d.nd_proof)}\n"
                       for i, d in enumerate(ders))
    if fmt == "dot":
        return "".join(proofnet.to_dot(d.linking, f"derivation_{i + 1}") for i, d in enumerate(ders))
    parts = [f"{len(ders)} derivation(s)\n"]
    for i, d in enumerate(ders):
        trace = " ".join(s.rule for s in d.trace)
        parts.append(f"\n# {i + 1}: {show(d.term)}\n# trace: {trace}\n{to_text(d.nd_proof)}")
    return "".join(parts)


def cmd_parse(args) -> int:
    lexicon = load(resolve_lexicon(args.lexicon), lax_pros=args.lax_pros)
    goal = parse_formula(args.goal)
    tokens = " ".join(args.sentence).split()
    if not tokens:
        raise UsageError("empty sentence")
    result = prover.parse(tokens, goal, lexicon, assoc=not args.nonassoc, eta=args.eta,
                          order_check=not args.no_order_check,
                          max_derivations=args.max_derivations, jobs=args.jobs)
    _write(render_derivations(result, args.format), args.output)
    return 0 if len(result) else 1


# ---------------------------------------------------------------- check

def _load_proof(path: str, kind: str | None):
    text = _read(path)
    if not text.strip():
        raise ProofFormatError(f"{path}: empty proof file")
    found, proof, assoc = loads_proof(text)
    if kind and found != kind:
        raise ProofFormatError(f"{path}: expected a {kind} proof, found {found}")
    return found, proof, assoc


def cmd_check(args) -> int:
    lexicon = load(resolve_lexicon(args.lexicon)) if (args.lexicon or os.environ.get("HTLG_LEXICON")) else None
    kind, proof, assoc = _load_proof(args.proof, args.kind)
    try:
        if kind == "nd":
            nd.check_nd(proof, lexicon, assoc, lax_pros=args.lax_pros)
        else:
            sq.check_seq(proof, lexicon, assoc)
    except nd.RuleViolation as exc:
        print(f"invalid: {exc}", file=sys.stdout)
        return 1
    print(f"valid {kind} proof: {proof.conclusion}")
    return 0


# ---------------------------------------------------------------- transform

def render_proof(proof, assoc: bool, fmt: str) -> str:
    if fmt == "json":
        return dumps_proof(proof, assoc)
    if fmt == "latex":
        return to_latex(proof)
    if fmt == "text":
        return to_text(proof)
    if isinstance(proof, sq.SeqProof):
        proof = sq.seq_to_nd(proof, assoc)
    ps, _ = prover.net_from_nd(proof, assoc)
    return proofnet.to_dot(ps)


def render_net(proof: nd.NDProof, assoc: bool, eta: bool, fmt: str) -> str:
    ps, res = prover.net_from_nd(proof, assoc, eta)
    if fmt == "dot":
        return proofnet.to_dot(ps)
    term = show(res.term()) if res.success else None
    doc = {"success": res.success, "term": term, "initial_size": res.initial_size,
           "trace": [[s.rule, list(s.site)] for s in res.trace],
           "vertices": [{"id": v, "formula": str(i.formula), "origin": i.origin, "name": i.name}
                        for v, i in sorted(ps.vertices.items())],
           "links": [{"id": k, "kind": l.kind, "index": l.index, "premisses": l.premisses,
                      "conclusions": l.conclusions, "main": l.main} for k, l in sorted(ps.links.items())]}
    if fmt == "json":
        return json.dumps(doc, indent=1, ensure_ascii=False) + "\n"
    return f"term: {term}\ntrace: {' '.join(s.rule for s in res.trace)}\n"


TRANSFORMS = {"normalize": "nd", "cut-eliminate": "seq", "nd2seq": "nd", "seq2nd": "seq", "to-net": "nd"}


def cmd_transform(args) -> int:
    lexicon = load(resolve_lexicon(args.lexicon)) if (args.lexicon or os.environ.get("HTLG_LEXICON")) else None
    kind, proof, assoc = _load_proof(args.proof, TRANSFORMS[args.transform])
    try:
        if kind == "nd":
            nd.check_nd(proof, lexicon, assoc)
        else:
            sq.check_seq(proof, lexicon, assoc)
    except nd.RuleViolation as exc:
        print(f"invalid input proof: {exc}", file=sys.stderr)
        return 1
    t = args.transform
    if t == "to-net":
        fmt = args.format if args.format != "latex" else "json"
        _write(render_net(proof, assoc, args.eta, fmt), args.output)
        return 0
    if t == "normalize":
        out = proof if nd.is_normal(proof) else nd.normalize_nd(proof, assoc)
    elif t == "cut-eliminate":
        out = sq.eliminate_cuts(proof, assoc)
    elif t == "nd2seq":
        out = sq.nd_to_seq(proof, assoc)
    else:
        out = sq.seq_to_nd(proof, assoc)
    _write(render_proof(out, assoc, args.format), args.output)
    return 0


# ---------------------------------------------------------------- selftest

def cmd_selftest(args) -> int:
    only = set(args.only) if args.only else None
    results = []
    for k in sorted(acceptance.CHECKS):
        if only is None or k in only:
            check = acceptance.CHECKS[k]
            r = check(seed=args.seed) if args.seed is not None and k in (5, 6) else check()
            results.append(r)
            if args.format != "json":
                print(r.line(), flush=True)
    if args.format == "json":
        sys.stdout.write(acceptance.results_json(results))
    return 0 if all(r.passed for r in results) else 1


# ---------------------------------------------------------------- main

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="htlg", description="Type-logical grammar parser and proof tools.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, formats=FORMATS, default="json"):
        p.add_argument("-l", "--lexicon", help="lexicon file (default: $HTLG_LEXICON)")
        p.add_argument("-f", "--format", choices=formats, default=default)
        p.add_argument("-o", "--output", help="output file (default: stdout)")
        p.add_argument("--nonassoc", action="store_true", help="non-associative + (keep ε)")
        p.add_argument("--eta", action="store_true", help="allow η contraction")
        p.add_argument("--lax-pros", action="store_true", help="skip the prosodic-type check on lexical terms")

    p = sub.add_parser("parse", help="parse a sentence")
    common(p)
    p.add_argument("-g", "--goal", default="s", help="goal formula (default: s)")
    p.add_argument("--no-order-check", action="store_true", help="report raw derivability")
    p.add_argument("--max-derivations", type=int)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("sentence", nargs="+")
    p.set_defaults(run=cmd_parse)

    p = sub.add_parser("check", help="check a JSON proof file")
    common(p)
    p.add_argument("--kind", choices=("nd", "seq"))
    p.add_argument("proof")
    p.set_defaults(run=cmd_check)

    p = sub.add_parser("transform", help="transform a JSON proof file")
    common(p)
    p.add_argument("transform", choices=sorted(TRANSFORMS))
    p.add_argument("proof")
    p.set_defaults(run=cmd_transform)

    p = sub.add_parser("selftest", help="run the acceptance checks")
    p.add_argument("-f", "--format", choices=("text", "json"), default="text")
    p.add_argument("--seed", type=int, help="seed for the randomized proof checks")
    p.add_argument("--only", type=int, nargs="*", help="check numbers to run")
    p.set_defaults(run=cmd_selftest)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.run(args)
    except (UsageError, LexiconError, FormulaSyntaxError, WellFormednessError, ProofFormatError,
            OSError) as exc:
        print(f"htlg: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
