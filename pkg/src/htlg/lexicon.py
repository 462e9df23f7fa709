"""Lexical entries (word, formula, prosodic term) and the lexicon file format.

File format, one item per line::

    # comment
    @atoms n np s pp
    loves : (np\\s)/np
    everyone : (np -o s) -o s := \\P.P everyone
    @schema and : (X\\X)/X
    @instantiate and AT s/np

Lambek entries without ``:=`` get the bare word as their term.  Uppercase
letters are schema variables and are only allowed inside ``@schema`` lines.
"""
from __future__ import annotations

import os
import re
from dataclasses import dataclass, field

from .formulas import (DEFAULT_ATOMS, Formula, FormulaSyntaxError, WellFormednessError,
                       is_lambek, parse_formula, pros, show_formula)
from .terms import (IllTyped, TermError, Term, Word, free_vars, linearity_violations, parse_term,
                    show, type_of, words)


class LexiconError(Exception):
    pass


class TypeMismatch(LexiconError):
    pass


class MissingWordOccurrence(LexiconError):
    pass


class DuplicateWordOccurrence(LexiconError):
    pass


class LexNonLinear(LexiconError):
    pass


class UnknownWord(LexiconError):
    def __init__(self, word: str):
        super().__init__(f"unknown word {word!r}")
        self.word = word


class LexiconSyntaxError(LexiconError):
    def __init__(self, msg: str, line: int | None = None):
        super().__init__(f"line {line}: {msg}" if line else msg)
        self.line = line


@dataclass(frozen=True)
class LexEntry:
    word: str
    formula: Formula
    term: Term

    def __str__(self) -> str:
        if self.term == Word(self.word):
            return f"{self.word} : {self.formula}"
        return f"{self.word} : {self.formula} := {show(self.term)}"


def entry(word: str, formula: str | Formula, term: str | Term | None = None,
          atoms=None, lax_pros: bool = False) -> LexEntry:
    """Build and validate an entry from text or objects."""
    f = parse_formula(formula, atoms) if isinstance(formula, str) else formula
    if term is None:
        if not is_lambek(f):
            raise LexiconError(f"{word}: a term is required for the non-Lambek formula {f}")
        t: Term = Word(word)
    elif isinstance(term, str):
        try:
            t = parse_term(term, expected=None if lax_pros else pros(f))
        except IllTyped as exc:
            raise TypeMismatch(f"{word}: {exc}") from exc
    else:
        t = term
    e = LexEntry(word, f, t)
    validate_entry(e, lax_pros=lax_pros)
    return e


def validate_entry(e: LexEntry, lax_pros: bool = False) -> None:
    try:
        ty = type_of(e.term)
    except TermError as exc:
        raise TypeMismatch(f"{e.word}: {exc}") from exc
    if not lax_pros and ty != pros(e.formula):
        raise TypeMismatch(f"{e.word}: expected {pros(e.formula)}, found {ty}")
    ws = words(e.term)
    n = ws.count(e.word)
    bad = linearity_violations(e.term)
    if n == 0:
        raise MissingWordOccurrence(f"{e.word}: term {show(e.term)} never mentions the word"
                                    + (f" (also non-linear in {bad[0][0]})" if bad else ""))
    if n > 1:
        raise DuplicateWordOccurrence(f"{e.word}: term {show(e.term)} mentions the word {n} times")
    if bad:
        raise LexNonLinear(f"{e.word}: variable {bad[0][0]} occurs {bad[0][1]} times")
    others = [w for w in ws if w != e.word]
    if others or free_vars(e.term):
        extra = others or sorted(free_vars(e.term))
        raise LexiconError(f"{e.word}: unexpected free leaf {extra[0]!r}")


@dataclass
class Lexicon:
    entries: dict[str, list[LexEntry]] = field(default_factory=dict)
    atoms: frozenset = DEFAULT_ATOMS

    def add(self, e: LexEntry) -> None:
        self.entries.setdefault(e.word, []).append(e)

    def lookup(self, word: str) -> list[LexEntry]:
        if word not in self.entries:
            raise UnknownWord(word)
        return list(self.entries[word])

    def __contains__(self, word: str) -> bool:
        return word in self.entries

    def __iter__(self):
        for es in self.entries.values():
            yield from es

    def __len__(self) -> int:
        return sum(len(v) for v in self.entries.values())

    def has_entry(self, e: LexEntry) -> bool:
        from .terms import alpha_eq
        return any(x.formula == e.formula and alpha_eq(x.term, e.term)
                   for x in self.entries.get(e.word, []))

    @classmethod
    def from_entries(cls, entries, atoms=DEFAULT_ATOMS) -> "Lexicon":
        lex = cls(atoms=frozenset(atoms))
        for e in entries:
            lex.add(e)
        return lex

    def dumps(self) -> str:
        lines = ["@atoms " + " ".join(sorted(self.atoms))]
        lines += [str(e) for e in self]
        return "\n".join(lines) + "\n"


_SCHEMA_VAR = re.compile(r"\b[A-Z]\b")


def loads(text: str, lax_pros: bool = False) -> Lexicon:
    lex = Lexicon()
    atoms = set(DEFAULT_ATOMS)
    schemas: dict[str, tuple[str, str | None, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            if line.startswith("@atoms"):
                atoms.update(line.split()[1:])
                continue
            if line.startswith("@schema"):
                word, ftext, ttext = _split_entry(line[len("@schema"):].strip(), lineno)
                schemas[word] = (ftext, ttext, lineno)
                continue
            if line.startswith("@instantiate"):
                m = re.fullmatch(r"@instantiate\s+(\S+)\s+AT\s+(.+)", line)
                if not m:
                    raise LexiconSyntaxError("expected '@instantiate NAME AT FORMULA'", lineno)
                name, at = m.group(1), m.group(2).strip()
                if name not in schemas:
                    raise LexiconSyntaxError(f"unknown schema {name!r}", lineno)
                parse_formula(at, atoms)
                ftext, ttext, _ = schemas[name]
                ftext = _SCHEMA_VAR.sub(f"({at})", ftext)
                lex.add(entry(name, ftext, ttext, atoms, lax_pros))
                continue
            if line.startswith("@"):
                raise LexiconSyntaxError(f"unknown directive {line.split()[0]!r}", lineno)
            word, ftext, ttext = _split_entry(line, lineno)
            lex.add(entry(word, ftext, ttext, atoms, lax_pros))
        except LexiconSyntaxError:
            raise
        except (FormulaSyntaxError, WellFormednessError, TermError) as exc:
            raise LexiconSyntaxError(str(exc), lineno) from exc
        except LexiconError as exc:
            raise type(exc)(f"line {lineno}: {exc}") from exc
    lex.atoms = frozenset(atoms)
    return lex


def _split_entry(line: str, lineno: int) -> tuple[str, str, str | None]:
    if ":" not in line:
        raise LexiconSyntaxError("expected 'word : FORMULA [:= TERM]'", lineno)
    word, rest = line.split(":", 1)
    word = word.strip()
    if not word or " " in word:
        raise LexiconSyntaxError(f"bad word {word!r}", lineno)
    if rest.startswith("="):
        raise LexiconSyntaxError("missing formula", lineno)
    if ":=" in rest:
        ftext, ttext = rest.split(":=", 1)
        return word, ftext.strip(), ttext.strip()
    return word, rest.strip(), None


def load(path: str | os.PathLike, lax_pros: bool = False) -> Lexicon:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read(), lax_pros=lax_pros)


def builtin_path(name: str) -> str:
    """Path of a lexicon shipped with the package (``demo``, ``quantifiers``, ...)."""
    here = os.path.join(os.path.dirname(__file__), "data", f"{name}.lex")
    if not os.path.exists(here):
        raise FileNotFoundError(here)
    return here


def builtin(name: str) -> Lexicon:
    return load(builtin_path(name))


__all__ = ["LexEntry", "Lexicon", "entry", "validate_entry", "loads", "load", "builtin",
           "builtin_path", "LexiconError", "TypeMismatch", "MissingWordOccurrence",
           "DuplicateWordOccurrence", "LexNonLinear", "UnknownWord", "LexiconSyntaxError",
           "show_formula"]
