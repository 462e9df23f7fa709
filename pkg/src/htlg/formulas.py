"""Formulas of the hybrid logic: atoms, the two Lambek slashes and linear implication.

Text syntax: atoms are lowercase identifiers; ``A/B`` and ``B\\A`` must be
parenthesised when nested (``a/b/c`` is rejected); ``A -o B`` is right
associative and binds looser than the slashes.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass

from .terms import ST, Arrow, ProsType

DEFAULT_ATOMS = frozenset({"n", "np", "s", "pp"})


class Formula:
    __slots__ = ()

    def __str__(self) -> str:
        return show_formula(self)


@dataclass(frozen=True)
class Atom(Formula):
    name: str


@dataclass(frozen=True)
class Over(Formula):
    """``result/arg``: looks for ``arg`` on the right."""
    result: Formula
    arg: Formula


@dataclass(frozen=True)
class Under(Formula):
    """``arg\\result``: looks for ``arg`` on the left."""
    arg: Formula
    result: Formula


@dataclass(frozen=True)
class Limp(Formula):
    arg: Formula
    result: Formula


class Polarity(enum.Enum):
    POS = "+"
    NEG = "-"

    def flip(self) -> "Polarity":
        return Polarity.NEG if self is Polarity.POS else Polarity.POS


class FormulaSyntaxError(ValueError):
    def __init__(self, msg: str, position: int):
        super().__init__(f"{msg} (at {position})")
        self.position = position


class WellFormednessError(ValueError):
    pass


def pros(f: Formula) -> ProsType:
    if isinstance(f, Limp):
        return Arrow(pros(f.arg), pros(f.result))
    return ST


def is_lambek(f: Formula) -> bool:
    if isinstance(f, Atom):
        return True
    if isinstance(f, Limp):
        return False
    return is_lambek(f.result) and is_lambek(f.arg)


def check_well_formed(f: Formula) -> Formula:
    if isinstance(f, (Over, Under)):
        for sub in (f.result, f.arg):
            if not is_lambek(sub):
                raise WellFormednessError(f"Lambek connective over a linear formula in {f}")
            check_well_formed(sub)
    elif isinstance(f, Limp):
        check_well_formed(f.arg)
        check_well_formed(f.result)
    return f


def parts(f: Formula) -> tuple[Formula, Formula]:
    """(argument, result) of an implication."""
    if isinstance(f, Atom):
        raise ValueError(f"{f} is atomic")
    return f.arg, f.result


def connectives(f: Formula) -> int:
    return 0 if isinstance(f, Atom) else 1 + connectives(f.arg) + connectives(f.result)


def depth(f: Formula) -> int:
    """Height of the formula tree; atoms have depth 0."""
    return 0 if isinstance(f, Atom) else 1 + max(depth(f.arg), depth(f.result))


def atoms_of(f: Formula) -> set[str]:
    if isinstance(f, Atom):
        return {f.name}
    return atoms_of(f.arg) | atoms_of(f.result)


def subformulas(f: Formula) -> set[Formula]:
    if isinstance(f, Atom):
        return {f}
    return {f} | subformulas(f.arg) | subformulas(f.result)


def atom_balance(f: Formula, pol: Polarity = Polarity.POS) -> dict[tuple[str, Polarity], int]:
    """Counts of atomic leaves by (atom, polarity) after unfolding ``f`` at ``pol``."""
    out: dict = {}

    def go(f: Formula, pol: Polarity):
        if isinstance(f, Atom):
            out[(f.name, pol)] = out.get((f.name, pol), 0) + 1
        else:
            go(f.arg, pol.flip())
            go(f.result, pol)

    go(f, pol)
    return out


# ---------------------------------------------------------------- syntax

_TOK = re.compile(r"\s*(?:(?P<limp>-o|⊸)|(?P<sym>[()/\\])|(?P<atom>[a-z][a-z0-9_]*)|(?P<other>\S))")


def parse_formula(text: str, atoms: set[str] | frozenset | None = None) -> Formula:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOK.match(text, pos)
        if not m:
            break
        if m.lastgroup == "other":
            raise FormulaSyntaxError(f"unexpected character {m.group('other')!r}", m.start("other"))
        toks.append((m.lastgroup, m.group(m.lastgroup), m.start(m.lastgroup)))
        pos = m.end()
    i = 0

    def peek():
        return toks[i] if i < len(toks) else ("end", "", len(text))

    def linear() -> Formula:
        nonlocal i
        left = lambek()
        if peek()[0] == "limp":
            i += 1
            return Limp(left, linear())
        return left

    def lambek() -> Formula:
        nonlocal i
        left = primary()
        kind, v, at = peek()
        if v in ("/", "\\"):
            i += 1
            right = primary()
            if peek()[1] in ("/", "\\"):
                raise FormulaSyntaxError("slashes do not associate; add parentheses", peek()[2])
            f = Over(left, right) if v == "/" else Under(left, right)
            return check_well_formed(f)
        return left

    def primary() -> Formula:
        nonlocal i
        kind, v, at = peek()
        if kind == "atom":
            i += 1
            if atoms is not None and v not in atoms:
                raise FormulaSyntaxError(f"undeclared atom {v!r}", at)
            return Atom(v)
        if v == "(":
            i += 1
            f = linear()
            if peek()[1] != ")":
                raise FormulaSyntaxError("expected ')'", peek()[2])
            i += 1
            return f
        raise FormulaSyntaxError(f"unexpected {v or 'end of input'!r}", at)

    if not toks:
        raise FormulaSyntaxError("empty formula", 0)
    f = linear()
    if i != len(toks):
        raise FormulaSyntaxError(f"trailing input {peek()[1]!r}", peek()[2])
    return f


def show_formula(f: Formula) -> str:
    def inner(f: Formula) -> str:
        return str_(f) if isinstance(f, Atom) else f"({str_(f)})"

    def str_(f: Formula) -> str:
        if isinstance(f, Atom):
            return f.name
        if isinstance(f, Over):
            return f"{inner(f.result)}/{inner(f.arg)}"
        if isinstance(f, Under):
            return f"{inner(f.arg)}\\{inner(f.result)}"
        left = inner(f.arg) if not isinstance(f.arg, Atom) else f.arg.name
        right = str_(f.result) if isinstance(f.result, (Atom, Limp)) else inner(f.result)
        return f"{left} -o {right}"

    return str_(f)


def all_formulas(atom_names, max_depth: int, lambek_only: bool = False) -> list[Formula]:
    """Every well-formed formula up to ``max_depth`` (atoms at depth 0), sorted by size then text."""
    levels: list[list[Formula]] = [[Atom(a) for a in sorted(atom_names)]]
    seen = set(levels[0])
    for _ in range(max_depth):
        pool = [f for lvl in levels for f in lvl]
        lam_pool = [f for f in pool if is_lambek(f)]
        new = []
        for a in lam_pool:
            for b in lam_pool:
                for f in (Over(a, b), Under(a, b)):
                    if f not in seen:
                        seen.add(f)
                        new.append(f)
        if not lambek_only:
            for a in pool:
                for b in pool:
                    f = Limp(a, b)
                    if f not in seen:
                        seen.add(f)
                        new.append(f)
        levels.append(new)
    out = [f for lvl in levels for f in lvl]
    return sorted(out, key=lambda f: (connectives(f), str(f)))
