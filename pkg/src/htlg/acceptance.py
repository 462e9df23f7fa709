"""End-to-end acceptance checks, shared by the test suite and ``htlg selftest``.

Each check returns a :class:`CheckResult`; none of them raise on failure.
"""
from __future__ import annotations

import itertools
import json
import random
import time
from collections import Counter
from dataclasses import dataclass
from importlib import resources

from . import generators, nd, prover
from . import sequent as sq
from .aps import contract, to_aps
from .formulas import Formula, all_formulas, parse_formula
from .lambek_oracle import lambek_derivable
from .lexicon import builtin
from .nd import Binding
from .proofnet import CountMismatch, apply_linking, build_unlinked, check_counts, linkings
from .serialize import loads_proof
from .terms import equivalent, show

QUANTIFIER_SENTENCE = "someone delivers everything to its destination"
SHIFTED_COORDINATION = "Ahmed loves and the pizza dislikes Johani"
COORDINATION_SENTENCE = "Ahmed loves and Johani dislikes the pizza"
S = parse_formula("s")

# Time limits in seconds.
LIMIT_GOLDEN = 1.0
LIMIT_SENTENCE = 30.0
LIMIT_DIRECTIONALITY = 30.0
LIMIT_EQUIVALENCE = 600.0

# Random sequents of depth-2 formulas added to the exhaustive grid.
DEPTH2_SAMPLE = 500
DEPTH2_SEED = 7


@dataclass
class CheckResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number}. {self.name}: {self.detail} ({self.seconds:.2f}s)"


def fixture_proof() -> nd.NDProof:
    text = resources.files("htlg").joinpath("data/quantifier_proof.json").read_text(encoding="utf-8")
    _, proof, _ = loads_proof(text)
    return proof


def _timed(fn):
    start = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - start


# ---------------------------------------------------------------- 1

def golden_run() -> CheckResult:
    res, secs = _timed(lambda: prover.parse("everyone sleeps", S, builtin("demo")))
    terms = [show(d.term) for d in res]
    rules = [s.rule for s in res[0].trace] if len(res) == 1 else []
    ok_terms = terms == ["everyone+sleeps"]
    ok_trace = sorted(rules) == sorted(["Beta", "Beta", "LimpI", "Beta"])
    passed = ok_terms and ok_trace and secs < LIMIT_GOLDEN
    detail = f"derivations={len(res)} terms={terms} trace={rules}"
    return CheckResult(1, "everyone sleeps golden run", passed, detail, secs)


# ---------------------------------------------------------------- 2

def quantifier_readings(lexicon_name: str = "quantifiers_unbalanced") -> CheckResult:
    """Two readings of the quantifier sentence, one matching the shipped proof."""
    lx = builtin(lexicon_name)
    res, secs = _timed(lambda: prover.parse(QUANTIFIER_SENTENCE, S, lx))
    tokens = QUANTIFIER_SENTENCE.split()
    surface = all(prover.word_order_ok(d.term, tokens) for d in res)
    target = nd.proof_key(fixture_proof())
    matches = sum(nd.proof_key(nd.normalize_nd(d.nd_proof)) == target for d in res)
    passed = len(res) == 2 and surface and matches >= 1 and secs < LIMIT_SENTENCE
    detail = f"lexicon={lexicon_name} derivations={len(res)} fixture_matches={matches}"
    if not res:
        try:
            for choice in itertools.product(*(lx.lookup(t) for t in tokens)):
                check_counts(build_unlinked(list(choice), S))
        except CountMismatch as exc:
            detail += f" ({exc})"
    return CheckResult(2, "quantifier scope readings", passed, detail, secs)


# ---------------------------------------------------------------- 3

def directionality() -> CheckResult:
    def run():
        lambek, linear = builtin("coordination_lambek"), builtin("coordination_linear")
        return (prover.parse(COORDINATION_SENTENCE, S, lambek), prover.parse(SHIFTED_COORDINATION, S, lambek),
                prover.parse(SHIFTED_COORDINATION, S, linear))

    (r3, r2, r2_linear), secs = _timed(run)
    ok3 = len(r3) >= 1 and all(show(d.term) == COORDINATION_SENTENCE.replace(" ", "+") for d in r3)
    passed = ok3 and len(r2) == 0 and len(r2_linear) >= 1 and secs < LIMIT_DIRECTIONALITY
    detail = (f"directional: coordination={len(r3)} shifted={len(r2)} "
              f"[{', '.join(show(d.term) for d in r2)}]; linear: shifted={len(r2_linear)}")
    return CheckResult(3, "directionality contrast", passed, detail, secs)


# ---------------------------------------------------------------- 4 and 7

def grid_sequents(max_antecedents: int = 3, atoms=("np", "s"), depth: int = 1,
                  lambek_only: bool = False):
    """Every sequent with 1..max_antecedents hypotheses and a goal drawn from
    the formulas of at most ``depth`` connectives."""
    fs = all_formulas(list(atoms), depth, lambek_only)
    for k in range(1, max_antecedents + 1):
        for ant in itertools.product(fs, repeat=k):
            for g in fs:
                yield list(ant), g


def depth2_sample(n: int = DEPTH2_SAMPLE, seed: int = DEPTH2_SEED):
    """Random count-balanced sequents over formulas with up to two connectives."""
    fs = all_formulas(["np", "s"], 2)
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        ant = [rng.choice(fs) for _ in range(rng.randint(1, 3))]
        g = rng.choice(fs)
        if sq._balanced(tuple(Binding(f"x{i}", a) for i, a in enumerate(ant)), g):
            out.append((ant, g))
    return out


def calculus_equivalence(sample: int = DEPTH2_SAMPLE) -> CheckResult:
    def run():
        seen = agree = derivable = 0
        bad = []
        for ant, g in itertools.chain(grid_sequents(), depth2_sample(sample)):
            a = prover.derivable(ant, g)
            b = bool(sq.prove_seq(ant, g, limit=1))
            seen += 1
            derivable += a
            if a == b:
                agree += 1
            else:
                bad.append((ant, g, a, b))
        return seen, agree, derivable, bad

    (seen, agree, derivable, bad), secs = _timed(run)
    passed = not bad and secs < LIMIT_EQUIVALENCE
    detail = f"sequents={seen} derivable={derivable} disagreements={len(bad)}"
    if bad:
        ant, g, a, b = bad[0]
        detail += f" first: {', '.join(map(str, ant))} => {g} net={a} sequent={b}"
    return CheckResult(4, "proof nets agree with sequent search", passed, detail, secs)


def conservativity() -> CheckResult:
    def run():
        seen = derivable = 0
        bad = []
        for ant, g in grid_sequents(lambek_only=True):
            a = prover.derivable(ant, g, ordered=True)
            b = lambek_derivable(ant, g)
            seen += 1
            derivable += b
            if a != b:
                bad.append((ant, g, a, b))
        return seen, derivable, bad

    (seen, derivable, bad), secs = _timed(run)
    detail = f"Lambek sequents={seen} derivable={derivable} disagreements={len(bad)}"
    if bad:
        ant, g, a, b = bad[0]
        detail += f" first: {', '.join(map(str, ant))} => {g} net={a} oracle={b}"
    return CheckResult(7, "conservative over the Lambek calculus", not bad, detail, secs)


# ---------------------------------------------------------------- 5

def normalization(n: int = 1000, seed: int = 1, max_size: int = 15) -> CheckResult:
    def run():
        rng = random.Random(seed)
        problems = []
        redexes = 0
        for i in range(n):
            p = generators.random_nd_proof(rng, max_size)
            nd.check_nd(p)
            redexes += not nd.is_normal(p)
            steps = []
            q = nd.normalize_nd(p, on_step=lambda *a: steps.append(a))
            issues = []
            if len(steps) > nd.proof_size(p):
                issues.append(f"{len(steps)} steps > size {nd.proof_size(p)}")
            if not nd.is_normal(q):
                issues.append("not normal")
            try:
                nd.check_nd(q)
            except nd.RuleViolation as exc:
                issues.append(f"invalid result: {exc}")
            if Counter(q.antecedent) != Counter(p.antecedent) or q.formula != p.formula:
                issues.append("endsequent changed")
            if not equivalent(p.term, q.term):
                issues.append("term changed")
            if nd.subformula_check(q) is not None:
                issues.append("subformula property fails")
            forms = [k for k in nd.all_normal_forms(p) if k != "_longest"]
            if len(forms) != 1:
                issues.append(f"{len(forms)} distinct normal forms")
            if issues:
                problems.append((i, issues))
        return redexes, problems

    (redexes, problems), secs = _timed(run)
    detail = f"proofs={n} with_redexes={redexes} failures={len(problems)}"
    if problems:
        detail += f" first: #{problems[0][0]} {problems[0][1]}"
    return CheckResult(5, "normalization properties", not problems, detail, secs)


# ---------------------------------------------------------------- 6

def cut_elimination(n: int = 500, seed: int = 2, max_size: int = 12) -> CheckResult:
    def run():
        rng = random.Random(seed)
        cases = Counter()
        problems = []
        for i in range(n):
            s = generators.random_seq_with_cuts(rng, max_size)
            sq.check_seq(s)
            try:
                r = sq.eliminate_cuts(s, on_reduce=lambda parent, m, case: cases.update([case]))
                sq.check_seq(r)
            except (sq.MeasureError, nd.RuleViolation) as exc:
                problems.append((i, str(exc)))
                continue
            if not sq.is_cut_free(r):
                problems.append((i, "cuts remain"))
            elif not equivalent(s.term, r.term) or Counter(s.antecedent) != Counter(r.antecedent):
                problems.append((i, "endsequent or term changed"))
        return cases, problems

    (cases, problems), secs = _timed(run)
    wanted = {"axiom-left", "axiom-right", "left-commutative", "right-commutative",
              "principal-/", "principal-\\", "principal--o"}
    missing = sorted(wanted - set(cases))
    passed = not problems and not missing
    detail = f"proofs={n} failures={len(problems)} reductions={dict(sorted(cases.items()))}"
    if missing:
        detail += f" unexercised={missing}"
    if problems:
        detail += f" first: #{problems[0][0]} {problems[0][1]}"
    return CheckResult(6, "cut elimination", passed, detail, secs)


# ---------------------------------------------------------------- 8

def contraction_bounds(hyps, goal: Formula, assoc: bool = True):
    """(steps, initial size) of the contraction of every axiom linking."""
    ps0 = build_unlinked(hyps, goal)
    try:
        for pairs in linkings(ps0):
            res = contract(to_aps(apply_linking(ps0, pairs), assoc))
            yield res.steps, res.initial_size
    except CountMismatch:
        return


def suite_inputs():
    """Every lexical sequent behind the sentence checks, then the formula grid."""
    for lexicon_name, sentence in [("demo", "everyone sleeps"), ("demo", "sleeps everyone"),
                                   ("quantifiers", QUANTIFIER_SENTENCE), ("quantifiers_unbalanced", QUANTIFIER_SENTENCE),
                                   ("coordination_linear", SHIFTED_COORDINATION), ("coordination_linear", COORDINATION_SENTENCE),
                                   ("coordination_lambek", SHIFTED_COORDINATION), ("coordination_lambek", COORDINATION_SENTENCE)]:
        lx = builtin(lexicon_name)
        for choice in itertools.product(*(lx.lookup(t) for t in sentence.split())):
            yield list(choice), S
    yield from grid_sequents()


def contraction_complexity() -> CheckResult:
    def run():
        runs = worst = 0
        over = []
        for hyps, goal in suite_inputs():
            for steps, size in contraction_bounds(hyps, goal):
                runs += 1
                worst = max(worst, steps / size)
                if steps > size:
                    over.append((hyps, goal, steps, size))
        return runs, worst, over

    (runs, worst, over), secs = _timed(run)
    detail = f"contractions={runs} max steps/size={worst:.2f} violations={len(over)}"
    return CheckResult(8, "contraction steps bounded by size", not over, detail, secs)


CHECKS = {1: golden_run, 2: quantifier_readings, 3: directionality, 4: calculus_equivalence,
          5: normalization, 6: cut_elimination, 7: conservativity, 8: contraction_complexity}


def run_all(only=None) -> list[CheckResult]:
    return [CHECKS[k]() for k in sorted(CHECKS) if only is None or k in only]


def report(results: list[CheckResult]) -> str:
    return "\n".join(r.line() for r in results) + "\n"


def results_json(results: list[CheckResult]) -> str:
    return json.dumps([r.__dict__ for r in results], indent=1) + "\n"
