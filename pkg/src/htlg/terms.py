"""Prosodic types and linear lambda terms over words, concatenation and the empty string.

Terms are immutable dataclasses.  The concrete syntax is::

    \\x.M        abstraction (body extends as far right as possible)
    M N         application, left associative
    M + N       concatenation, left associative, looser than application
    eps         the empty string
    ( ... )     grouping

Bare identifiers are variables when bound (or listed in an environment) and
words otherwise.
"""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterator


# ---------------------------------------------------------------- types

class ProsType:
    """Simple type over the single base type ``st``."""

    def __str__(self) -> str:
        return _type_str(self)

    def __repr__(self) -> str:
        return f"ProsType({_type_str(self)!r})"


@dataclass(frozen=True, repr=False)
class Str(ProsType):
    pass


@dataclass(frozen=True, repr=False)
class Arrow(ProsType):
    arg: ProsType
    res: ProsType


ST = Str()


def _type_str(t: ProsType) -> str:
    if isinstance(t, Str):
        return "st"
    if isinstance(t, Arrow):
        left = _type_str(t.arg)
        if isinstance(t.arg, Arrow):
            left = f"({left})"
        return f"{left}->{_type_str(t.res)}"
    return f"?{getattr(t, 'n', '')}"


def arrow(*tys: ProsType) -> ProsType:
    """``arrow(a, b, c)`` is ``a -> (b -> c)``."""
    out = tys[-1]
    for t in reversed(tys[:-1]):
        out = Arrow(t, out)
    return out


def parse_type(text: str) -> ProsType:
    toks = re.findall(r"st|->|\(|\)", text.replace(" ", ""))
    if "".join(toks) != text.replace(" ", ""):
        raise TermSyntaxError(f"bad type {text!r}", 0)
    pos = 0

    def atom() -> ProsType:
        nonlocal pos
        if pos < len(toks) and toks[pos] == "st":
            pos += 1
            return ST
        if pos < len(toks) and toks[pos] == "(":
            pos += 1
            t = arr()
            if pos >= len(toks) or toks[pos] != ")":
                raise TermSyntaxError(f"unbalanced type {text!r}", pos)
            pos += 1
            return t
        raise TermSyntaxError(f"bad type {text!r}", pos)

    def arr() -> ProsType:
        nonlocal pos
        left = atom()
        if pos < len(toks) and toks[pos] == "->":
            pos += 1
            return Arrow(left, arr())
        return left

    t = arr()
    if pos != len(toks):
        raise TermSyntaxError(f"trailing input in type {text!r}", pos)
    return t


# ---------------------------------------------------------------- terms

class Term:
    __slots__ = ()

    def __str__(self) -> str:
        return show(self)


@dataclass(frozen=True)
class Var(Term):
    name: str
    ty: ProsType | None = None


@dataclass(frozen=True)
class Word(Term):
    surface: str


@dataclass(frozen=True)
class Eps(Term):
    pass


EPS = Eps()


@dataclass(frozen=True)
class Plus(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class App(Term):
    fun: Term
    arg: Term


@dataclass(frozen=True)
class Abs(Term):
    var: str
    var_ty: ProsType | None
    body: Term


@dataclass(frozen=True)
class _Hole(Term):
    pass


HOLE = _Hole()


# ---------------------------------------------------------------- errors

class TermError(Exception):
    pass


class TermSyntaxError(TermError):
    def __init__(self, msg: str, position: int):
        super().__init__(f"{msg} (at {position})")
        self.position = position


class IllTyped(TermError):
    def __init__(self, position: str, expected: str, found: str):
        super().__init__(f"ill-typed at {position or 'root'}: expected {expected}, found {found}")
        self.position = position
        self.expected = expected
        self.found = found


class NonLinear(TermError):
    def __init__(self, var: str, count: int):
        super().__init__(f"variable {var} occurs {count} times")
        self.var = var
        self.count = count


# ---------------------------------------------------------------- basics

def children(t: Term) -> tuple[Term, ...]:
    if isinstance(t, Plus):
        return (t.left, t.right)
    if isinstance(t, App):
        return (t.fun, t.arg)
    if isinstance(t, Abs):
        return (t.body,)
    return ()


def size(t: Term) -> int:
    return 1 + sum(size(c) for c in children(t))


def free_vars(t: Term) -> Counter:
    """Occurrence counts of free variables (words are not variables)."""
    out: Counter = Counter()

    def go(t: Term, bound: frozenset):
        if isinstance(t, Var):
            if t.name not in bound:
                out[t.name] += 1
        elif isinstance(t, Abs):
            go(t.body, bound | {t.var})
        else:
            for c in children(t):
                go(c, bound)

    go(t, frozenset())
    return out


def words(t: Term) -> list[str]:
    """Word leaves, left to right."""
    if isinstance(t, Word):
        return [t.surface]
    return [w for c in children(t) for w in words(c)]


def all_names(t: Term) -> set[str]:
    if isinstance(t, Var):
        return {t.name}
    if isinstance(t, Abs):
        return {t.var} | all_names(t.body)
    return set().union(*(all_names(c) for c in children(t))) if children(t) else set()


def fresh(base: str, avoid) -> str:
    stem = base.rstrip("0123456789'") or "x"
    if base not in avoid:
        return base
    i = 1
    while f"{stem}{i}" in avoid:
        i += 1
    return f"{stem}{i}"


def subst(t: Term, name: str, s: Term) -> Term:
    """Capture-avoiding ``t[name := s]``."""
    fv = set(free_vars(s))

    def go(t: Term) -> Term:
        if isinstance(t, Var):
            return s if t.name == name else t
        if isinstance(t, (Word, Eps, _Hole)):
            return t
        if isinstance(t, Plus):
            return Plus(go(t.left), go(t.right))
        if isinstance(t, App):
            return App(go(t.fun), go(t.arg))
        if isinstance(t, Abs):
            if t.var == name:
                return t
            if t.var in fv:
                new = fresh(t.var, fv | all_names(t.body) | {name})
                body = rename_free(t.body, t.var, new)
                return Abs(new, t.var_ty, go(body))
            return Abs(t.var, t.var_ty, go(t.body))
        raise TypeError(t)

    return go(t)


def rename_free(t: Term, old: str, new: str) -> Term:
    """Rename free occurrences of ``old``, keeping their type annotation."""
    def go(t: Term) -> Term:
        if isinstance(t, Var):
            return Var(new, t.ty) if t.name == old else t
        if isinstance(t, Plus):
            return Plus(go(t.left), go(t.right))
        if isinstance(t, App):
            return App(go(t.fun), go(t.arg))
        if isinstance(t, Abs):
            return t if t.var == old else Abs(t.var, t.var_ty, go(t.body))
        return t

    return go(t)


def rename_vars(t: Term, mapping: dict[str, str]) -> Term:
    for old, new in mapping.items():
        if old != new:
            t = rename_free(t, old, "\0" + new)
    for new in mapping.values():
        t = rename_free(t, "\0" + new, new)
    return t


# ---------------------------------------------------------------- typing

def type_of(t: Term, env: dict[str, ProsType] | None = None) -> ProsType:
    """Type of an annotated term; free variables take their annotation or ``env``."""
    env = dict(env or {})

    def go(t: Term, pos: str) -> ProsType:
        if isinstance(t, (Word, Eps)):
            return ST
        if isinstance(t, Var):
            ty = env.get(t.name, t.ty)
            if ty is None:
                raise IllTyped(pos, "annotated variable", t.name)
            if t.ty is not None and t.ty != ty:
                raise IllTyped(pos, str(ty), str(t.ty))
            return ty
        if isinstance(t, Plus):
            for side, c in (("left", t.left), ("right", t.right)):
                ty = go(c, _join(pos, side))
                if ty != ST:
                    raise IllTyped(_join(pos, side), "st", str(ty))
            return ST
        if isinstance(t, App):
            f = go(t.fun, _join(pos, "fun"))
            if not isinstance(f, Arrow):
                raise IllTyped(_join(pos, "fun"), "arrow type", str(f))
            a = go(t.arg, _join(pos, "arg"))
            if a != f.arg:
                raise IllTyped(_join(pos, "arg"), str(f.arg), str(a))
            return f.res
        if isinstance(t, Abs):
            if t.var_ty is None:
                raise IllTyped(pos, "annotated binder", t.var)
            saved = env.get(t.var)
            env[t.var] = t.var_ty
            try:
                body = go(t.body, _join(pos, "body"))
            finally:
                if saved is None:
                    env.pop(t.var, None)
                else:
                    env[t.var] = saved
            return Arrow(t.var_ty, body)
        raise IllTyped(pos, "term", type(t).__name__)

    return go(t, "")


def _join(pos: str, step: str) -> str:
    return f"{pos}.{step}" if pos else step


def linearity_violations(t: Term) -> list[tuple[str, int]]:
    out = []

    def go(t: Term):
        if isinstance(t, Abs):
            n = free_vars(t.body)[t.var]
            if n != 1:
                out.append((t.var, n))
        for c in children(t):
            go(c)

    go(t)
    out.extend((v, n) for v, n in free_vars(t).items() if n > 1)
    return out


def check_linear(t: Term) -> None:
    bad = linearity_violations(t)
    if bad:
        raise NonLinear(*bad[0])


def is_linear(t: Term) -> bool:
    return not linearity_violations(t)


# ---------------------------------------------------------------- inference

@dataclass(frozen=True, repr=False)
class _Meta(ProsType):
    n: int


class _Unifier:
    def __init__(self):
        self.sub: dict[int, ProsType] = {}
        self.count = 0

    def new(self) -> ProsType:
        self.count += 1
        return _Meta(self.count)

    def walk(self, t: ProsType) -> ProsType:
        while isinstance(t, _Meta) and t.n in self.sub:
            t = self.sub[t.n]
        return t

    def resolve(self, t: ProsType) -> ProsType:
        t = self.walk(t)
        if isinstance(t, Arrow):
            return Arrow(self.resolve(t.arg), self.resolve(t.res))
        if isinstance(t, _Meta):
            return ST
        return t

    def occurs(self, n: int, t: ProsType) -> bool:
        t = self.walk(t)
        if isinstance(t, _Meta):
            return t.n == n
        if isinstance(t, Arrow):
            return self.occurs(n, t.arg) or self.occurs(n, t.res)
        return False

    def unify(self, a: ProsType, b: ProsType, pos: str) -> None:
        a, b = self.walk(a), self.walk(b)
        if a == b:
            return
        if isinstance(a, _Meta):
            if self.occurs(a.n, b):
                raise IllTyped(pos, str(self.resolve(b)), "infinite type")
            self.sub[a.n] = b
            return
        if isinstance(b, _Meta):
            self.unify(b, a, pos)
            return
        if isinstance(a, Arrow) and isinstance(b, Arrow):
            self.unify(a.arg, b.arg, pos)
            self.unify(a.res, b.res, pos)
            return
        raise IllTyped(pos, str(self.resolve(a)), str(self.resolve(b)))


def annotate(t: Term, env: dict[str, ProsType] | None = None,
             expected: ProsType | None = None) -> Term:
    """Infer binder and variable types (unification); leftover unknowns default to st."""
    env = dict(env or {})
    u = _Unifier()
    scope: dict[str, ProsType] = {}

    def go(t: Term, pos: str, local: dict[str, ProsType]) -> ProsType:
        if isinstance(t, (Word, Eps)):
            return ST
        if isinstance(t, Var):
            if t.name in local:
                ty = local[t.name]
            elif t.name in env:
                ty = env[t.name]
            elif t.ty is not None:
                ty = t.ty
            else:
                ty = scope.setdefault(t.name, u.new())
            if t.ty is not None:
                u.unify(ty, t.ty, pos)
            return ty
        if isinstance(t, Plus):
            u.unify(go(t.left, _join(pos, "left"), local), ST, _join(pos, "left"))
            u.unify(go(t.right, _join(pos, "right"), local), ST, _join(pos, "right"))
            return ST
        if isinstance(t, App):
            f = go(t.fun, _join(pos, "fun"), local)
            a = go(t.arg, _join(pos, "arg"), local)
            r = u.new()
            u.unify(f, Arrow(a, r), _join(pos, "fun"))
            return r
        if isinstance(t, Abs):
            a = t.var_ty if t.var_ty is not None else u.new()
            binders.append((id(t), a))
            body = go(t.body, _join(pos, "body"), {**local, t.var: a})
            return Arrow(a, body)
        raise TypeError(t)

    binders: list = []
    root = go(t, "", {})
    if expected is not None:
        u.unify(root, expected, "")
    bty = {k: v for k, v in binders}

    def build(t: Term, local: dict[str, ProsType]) -> Term:
        if isinstance(t, Var):
            if t.name in local:
                return Var(t.name, local[t.name])
            ty = env.get(t.name) or scope.get(t.name) or t.ty
            return Var(t.name, u.resolve(ty))
        if isinstance(t, Plus):
            return Plus(build(t.left, local), build(t.right, local))
        if isinstance(t, App):
            return App(build(t.fun, local), build(t.arg, local))
        if isinstance(t, Abs):
            a = u.resolve(bty[id(t)])
            return Abs(t.var, a, build(t.body, {**local, t.var: a}))
        return t

    return build(t, {})


# ---------------------------------------------------------------- reduction

def _beta_redex(t: Term) -> bool:
    return isinstance(t, App) and isinstance(t.fun, Abs)


def _eta_redex(t: Term) -> bool:
    return (isinstance(t, Abs) and isinstance(t.body, App)
            and isinstance(t.body.arg, Var) and t.body.arg.name == t.var
            and t.var not in free_vars(t.body.fun))


def _step(t: Term, redex, contract) -> Term | None:
    if redex(t):
        return contract(t)
    if isinstance(t, Plus):
        r = _step(t.left, redex, contract)
        if r is not None:
            return Plus(r, t.right)
        r = _step(t.right, redex, contract)
        return None if r is None else Plus(t.left, r)
    if isinstance(t, App):
        r = _step(t.fun, redex, contract)
        if r is not None:
            return App(r, t.arg)
        r = _step(t.arg, redex, contract)
        return None if r is None else App(t.fun, r)
    if isinstance(t, Abs):
        r = _step(t.body, redex, contract)
        return None if r is None else Abs(t.var, t.var_ty, r)
    return None


def beta_step(t: Term) -> Term | None:
    """Contract the leftmost-outermost beta redex, or return None."""
    return _step(t, _beta_redex, lambda r: subst(r.fun.body, r.fun.var, r.arg))


def eta_step(t: Term) -> Term | None:
    """Contract the leftmost-outermost eta redex ``\\x.(P x)``, or return None."""
    return _step(t, _eta_redex, lambda r: r.body.fun)


def redex_positions(t: Term, path: tuple = ()) -> Iterator[tuple[tuple, str]]:
    """All (path, kind) pairs of beta/eta redexes, in leftmost-outermost order."""
    if _beta_redex(t):
        yield path, "beta"
    if _eta_redex(t):
        yield path, "eta"
    for i, c in enumerate(children(t)):
        yield from redex_positions(c, path + (i,))


def contract_at(t: Term, path: tuple, kind: str) -> Term:
    if not path:
        if kind == "beta":
            return subst(t.fun.body, t.fun.var, t.arg)
        return t.body.fun
    i, rest = path[0], path[1:]
    if isinstance(t, Plus):
        return Plus(contract_at(t.left, rest, kind), t.right) if i == 0 else Plus(t.left, contract_at(t.right, rest, kind))
    if isinstance(t, App):
        return App(contract_at(t.fun, rest, kind), t.arg) if i == 0 else App(t.fun, contract_at(t.arg, rest, kind))
    return Abs(t.var, t.var_ty, contract_at(t.body, rest, kind))


def beta_normal(t: Term) -> Term:
    if isinstance(t, App):
        f = beta_normal(t.fun)
        if isinstance(f, Abs):
            return beta_normal(subst(f.body, f.var, t.arg))
        return App(f, beta_normal(t.arg))
    if isinstance(t, Plus):
        return Plus(beta_normal(t.left), beta_normal(t.right))
    if isinstance(t, Abs):
        return Abs(t.var, t.var_ty, beta_normal(t.body))
    return t


def eta_normal(t: Term) -> Term:
    if isinstance(t, Abs):
        body = eta_normal(t.body)
        if (isinstance(body, App) and isinstance(body.arg, Var) and body.arg.name == t.var
                and t.var not in free_vars(body.fun)):
            return body.fun
        return Abs(t.var, t.var_ty, body)
    if isinstance(t, Plus):
        return Plus(eta_normal(t.left), eta_normal(t.right))
    if isinstance(t, App):
        return App(eta_normal(t.fun), eta_normal(t.arg))
    return t


def normal_form(t: Term, long: bool = False, env: dict[str, ProsType] | None = None) -> Term:
    """Beta-normal, eta-reduced form; ``long=True`` gives the eta-long form instead."""
    t = beta_normal(t)
    if long:
        return long_normal_form(t, env)
    while True:
        r = eta_normal(t)
        if r == t:
            return t
        t = beta_normal(r)


def long_normal_form(t: Term, env: dict[str, ProsType] | None = None) -> Term:
    """Beta-normal eta-long form.  Needs annotated binders (or ``env`` for free variables)."""
    env = dict(env or {})
    t = beta_normal(t)
    ty = type_of(t, env)
    avoid = set(all_names(t)) | set(env)

    def neutral(t: Term, local: dict) -> tuple[Term, ProsType]:
        if isinstance(t, Var):
            return t, local.get(t.name) or env.get(t.name) or t.ty
        if isinstance(t, (Word, Eps)):
            return t, ST
        if isinstance(t, Plus):
            return Plus(expand(t.left, ST, local), expand(t.right, ST, local)), ST
        if isinstance(t, App):
            f, fty = neutral(t.fun, local)
            return App(f, expand(t.arg, fty.arg, local)), fty.res
        raise TypeError(t)

    def expand(t: Term, ty: ProsType, local: dict) -> Term:
        if isinstance(t, Abs):
            return Abs(t.var, t.var_ty, expand(t.body, ty.res, {**local, t.var: t.var_ty}))
        if isinstance(ty, Arrow):
            x = fresh("v", avoid)
            avoid.add(x)
            inner = {**local, x: ty.arg}
            return Abs(x, ty.arg, expand(App(t, Var(x, ty.arg)), ty.res, inner))
        return neutral(t, local)[0]

    return expand(t, ty, {})


# ---------------------------------------------------------------- equality

def _canon(t: Term, env: dict[str, int], depth: int):
    if isinstance(t, Var):
        return ("b", depth - env[t.name]) if t.name in env else ("f", t.name)
    if isinstance(t, Word):
        return ("w", t.surface)
    if isinstance(t, Eps):
        return ("e",)
    if isinstance(t, Plus):
        return ("+", _canon(t.left, env, depth), _canon(t.right, env, depth))
    if isinstance(t, App):
        return ("@", _canon(t.fun, env, depth), _canon(t.arg, env, depth))
    if isinstance(t, Abs):
        return ("l", _canon(t.body, {**env, t.var: depth + 1}, depth + 1))
    if isinstance(t, _Hole):
        return ("h",)
    raise TypeError(t)


def alpha_key(t: Term):
    return _canon(t, {}, 0)


def alpha_eq(a: Term, b: Term) -> bool:
    return alpha_key(a) == alpha_key(b)


def spine(t: Term) -> list[Term]:
    """Operands of a maximal concatenation, ε erased."""
    if isinstance(t, Plus):
        return spine(t.left) + spine(t.right)
    if isinstance(t, Eps):
        return []
    return [t]


def from_spine(items: list[Term]) -> Term:
    if not items:
        return EPS
    out = items[0]
    for x in items[1:]:
        out = Plus(out, x)
    return out


def string_canon(t: Term, assoc: bool = True) -> Term:
    """Erase ε under concatenation; with ``assoc`` also rebracket every spine to the left."""
    if isinstance(t, Plus):
        if assoc:
            return from_spine([string_canon(x, assoc) for x in spine(t)])
        left, right = string_canon(t.left, assoc), string_canon(t.right, assoc)
        if isinstance(left, Eps):
            return right
        if isinstance(right, Eps):
            return left
        return Plus(left, right)
    if isinstance(t, App):
        return App(string_canon(t.fun, assoc), string_canon(t.arg, assoc))
    if isinstance(t, Abs):
        return Abs(t.var, t.var_ty, string_canon(t.body, assoc))
    return t


def equivalent(a: Term, b: Term, assoc: bool = True) -> bool:
    """βη-equality modulo the string laws (ε unit, associativity when ``assoc``)."""
    return alpha_eq(string_canon(normal_form(a), assoc), string_canon(normal_form(b), assoc))


def term_key(t: Term, assoc: bool = True):
    return alpha_key(string_canon(normal_form(t), assoc))


# ---------------------------------------------------------------- contexts

@dataclass(frozen=True)
class TermContext:
    """A term with one hole."""
    body: Term

    def __post_init__(self):
        n = _count_holes(self.body)
        if n != 1:
            raise TermError(f"context needs exactly one hole, found {n}")

    def plug(self, t: Term) -> Term:
        def go(s: Term) -> Term:
            if isinstance(s, _Hole):
                return t
            if isinstance(s, Plus):
                return Plus(go(s.left), go(s.right))
            if isinstance(s, App):
                return App(go(s.fun), go(s.arg))
            if isinstance(s, Abs):
                return Abs(s.var, s.var_ty, go(s.body))
            return s

        return go(self.body)

    @classmethod
    def around(cls, t: Term, var: str) -> "TermContext":
        """The context obtained by punching a hole at the free variable ``var``."""
        return cls(subst(t, var, HOLE))


def _count_holes(t: Term) -> int:
    return int(isinstance(t, _Hole)) + sum(_count_holes(c) for c in children(t))


# ---------------------------------------------------------------- syntax

_TOKEN = re.compile(r"\s*(?:(?P<lam>\\|λ)|(?P<eps>ε)|(?P<sym>[().+:])|(?P<arrow>->)"
                    r"|(?P<id>[A-Za-z0-9_'][A-Za-z0-9_']*))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out, pos = [], 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise TermSyntaxError(f"unexpected character {text[pos:pos + 1]!r}", pos)
        kind = m.lastgroup
        val = m.group(kind)
        if kind == "id" and val == "eps":
            kind = "eps"
        out.append((kind, val, m.start(kind)))
        pos = m.end()
    return out


def parse_term(text: str, env: dict[str, ProsType] | None = None,
               expected: ProsType | None = None, infer: bool = True) -> Term:
    """Parse concrete syntax.  Identifiers bound by a lambda or listed in ``env``
    become variables, all others become words.  With ``infer`` the result is
    annotated with types."""
    toks = _tokenize(text)
    env = dict(env or {})
    pos = 0

    def peek(k: int = 0):
        return toks[pos + k] if pos + k < len(toks) else ("end", "", len(text))

    def expect(val: str):
        nonlocal pos
        kind, v, at = peek()
        if v != val:
            raise TermSyntaxError(f"expected {val!r}, found {v or 'end of input'!r}", at)
        pos += 1

    def lam(bound: frozenset) -> Term:
        nonlocal pos
        pos += 1
        kind, name, at = peek()
        if kind != "id":
            raise TermSyntaxError("expected a variable after lambda", at)
        pos += 1
        ty = None
        if peek()[1] == ":":
            pos += 1
            start = pos
            depth = 0
            while pos < len(toks):
                v = toks[pos][1]
                if v == "." and depth == 0:
                    break
                depth += v == "("
                depth -= v == ")"
                pos += 1
            ty = parse_type("".join(v for _, v, _ in toks[start:pos]))
        expect(".")
        return Abs(name, ty, term(bound | {name}))

    def term(bound: frozenset) -> Term:
        if peek()[0] == "lam":
            return lam(bound)
        left = app(bound)
        while peek()[1] == "+":
            nonlocal pos
            pos += 1
            right = lam(bound) if peek()[0] == "lam" else app(bound)
            left = Plus(left, right)
        return left

    def app(bound: frozenset) -> Term:
        fun = atom(bound)
        while True:
            kind, v, _ = peek()
            if kind in ("id", "eps") or v == "(":
                fun = App(fun, atom(bound))
            elif kind == "lam":
                return App(fun, lam(bound))
            else:
                return fun

    def atom(bound: frozenset) -> Term:
        nonlocal pos
        kind, v, at = peek()
        if kind == "eps":
            pos += 1
            return EPS
        if kind == "id":
            pos += 1
            if v in bound or v in env:
                return Var(v, env.get(v) if v not in bound else None)
            return Word(v)
        if v == "(":
            pos += 1
            t = term(bound)
            expect(")")
            return t
        raise TermSyntaxError(f"unexpected {v or 'end of input'!r}", at)

    t = term(frozenset())
    if pos != len(toks):
        raise TermSyntaxError(f"trailing input {peek()[1]!r}", peek()[2])
    return annotate(t, env, expected) if infer else t


def show(t: Term, types: bool = False) -> str:
    """Print in concrete syntax; ``parse_term`` reads the output back."""
    def binder(t: Abs) -> str:
        if types and t.var_ty is not None:
            return f"\\{t.var}:{t.var_ty}."
        return f"\\{t.var}."

    def top(t: Term) -> str:
        if isinstance(t, Abs):
            return binder(t) + top(t.body)
        return plus(t)

    def plus(t: Term) -> str:
        if isinstance(t, Plus):
            left = plus(t.left) if isinstance(t.left, Plus) else operand(t.left)
            right = f"({plus(t.right)})" if isinstance(t.right, Plus) else operand(t.right)
            return f"{left}+{right}"
        return app(t)

    def operand(t: Term) -> str:
        if isinstance(t, App):
            return f"({app(t)})"
        return atom(t)

    def app(t: Term) -> str:
        if isinstance(t, App):
            f = app(t.fun) if isinstance(t.fun, App) else atom(t.fun)
            return f"{f} {atom(t.arg)}"
        return atom(t)

    def atom(t: Term) -> str:
        if isinstance(t, Var):
            return t.name
        if isinstance(t, Word):
            return t.surface
        if isinstance(t, Eps):
            return "eps"
        if isinstance(t, _Hole):
            return "[]"
        return f"({top(t)})"

    return top(t)
