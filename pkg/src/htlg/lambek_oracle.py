"""Brute-force decision procedure for the product-free associative Lambek
calculus (no empty antecedents), written independently of the rest of the
package and used to cross-check it.

Formulas are nested tuples: an atom is a string, ``("/", c, b)`` is c/b and
``("\\\\", b, c)`` is b\\c.
"""
from __future__ import annotations

from functools import lru_cache


def encode(f) -> object:
    """Convert a package formula by reading its text form."""
    return _parse(str(f))


def _parse(text: str):
    toks = text.replace("(", " ( ").replace(")", " ) ").replace("/", " / ").replace("\\", " \\ ").split()
    pos = 0

    def primary():
        nonlocal pos
        t = toks[pos]
        pos += 1
        if t == "(":
            f = expr()
            pos += 1
            return f
        return t

    def expr():
        nonlocal pos
        left = primary()
        if pos < len(toks) and toks[pos] in ("/", "\\"):
            op = toks[pos]
            pos += 1
            right = primary()
            return (op, left, right)
        if pos < len(toks) and toks[pos] == "-o":
            raise ValueError("not a Lambek formula")
        return left

    f = expr()
    if pos != len(toks):
        raise ValueError(f"cannot read {text!r}")
    return f


@lru_cache(maxsize=None)
def derivable(ant: tuple, goal) -> bool:
    if not ant:
        return False
    if len(ant) == 1 and ant[0] == goal:
        return True
    if isinstance(goal, tuple):
        op, x, y = goal
        if op == "/" and derivable(ant + (y,), x):
            return True
        if op == "\\" and derivable((x,) + ant, y):
            return True
    n = len(ant)
    for i, f in enumerate(ant):
        if not isinstance(f, tuple):
            continue
        op, x, y = f
        if op == "/":
            # x/y consumes a non-empty block to its right proving y
            for j in range(i + 2, n + 1):
                if derivable(ant[i + 1:j], y) and derivable(ant[:i] + (x,) + ant[j:], goal):
                    return True
        else:
            # x\y consumes a non-empty block to its left proving x
            for k in range(0, i):
                if derivable(ant[k:i], x) and derivable(ant[:k] + (y,) + ant[i + 1:], goal):
                    return True
    return False


def lambek_derivable(antecedent, goal) -> bool:
    return derivable(tuple(encode(f) for f in antecedent), encode(goal))
