"""Multilinear nonassociative identities: parsing, a named catalog, exhaustive checks.

Expression grammar::

    identity := side [ "=" side ]            # one side means "= 0"
    side     := ["+"|"-"] term (("+"|"-") term)*
    term     := factor ("*" factor)*          # left-normed: a*b*c = (a*b)*c
    factor   := NUMBER | VAR | "(" side ")" | "[" side "," side "]"
              | "(" side "," side "," side ")"
    NUMBER   := digits ["/" digits]
    VAR      := "x" digits

``[u, v]`` expands to ``u*v - v*u`` and ``(u, v, w)`` to ``(u*v)*w - u*(v*w)``
during parsing, so stored bodies contain only product trees.
"""

from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction

from . import _multilinear as ml
from .algebra import Algebra, Verdict, check_body

__all__ = [
    "CATALOG",
    "EnumerationGuardError",
    "HypothesisViolation",
    "Identity",
    "IdentityError",
    "MAX_VARIABLES",
    "check_identity",
    "get_identity",
    "is_lie_metabelian",
    "is_multilinear",
    "parse_identity",
]

MAX_VARIABLES = 7
# n**7 enumerations need n <= 8 unless forced.
GUARD_ARITY = 7
GUARD_DIM = 8


class IdentityError(ValueError):
    """Grammar error, unknown name, or a non-multilinear body."""


class HypothesisViolation(Exception):
    """The identity is only asserted away from characteristic 2."""


class EnumerationGuardError(RuntimeError):
    """Exhaustive enumeration too large without an explicit override."""


@dataclass(frozen=True)
class Identity:
    name: str
    arity: int
    body: ml.Body
    requires_char_not_2: bool = False
    text: str = ""
    variables: tuple[str, ...] = ()

    def __str__(self) -> str:
        if not self.body:
            return "0"
        names = list(self.variables) or None
        parts = []
        for t, c in self.body:
            mono = ml.format_tree(t, names)
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            parts.append(f"{sign} {mono}" if mag == 1 else f"{sign} {mag}*{mono}")
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|(x\d+)|(.))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        num, var, sym = m.groups()
        if num:
            out.append(("num", num))
        elif var:
            out.append(("var", var))
        elif sym in "+-*=,()[]":
            out.append((sym, sym))
        else:
            raise IdentityError(f"unknown symbol {sym!r} at position {m.start(3)}")
        pos = m.end()
    out.append(("end", ""))
    return out


# A polynomial is {tree_or_None: Fraction}; the key None is the scalar part.
def _add(p: dict, q: dict, sign: int = 1) -> dict:
    out = dict(p)
    for t, c in q.items():
        s = out.get(t, 0) + sign * c
        if s:
            out[t] = s
        else:
            out.pop(t, None)
    return out


def _mul(p: dict, q: dict) -> dict:
    out: dict = defaultdict(Fraction)
    for s, a in p.items():
        for t, b in q.items():
            if s is None:
                key = t
            elif t is None:
                key = s
            else:
                key = (s, t)
            out[key] += a * b
    return {t: c for t, c in out.items() if c}


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> str:
        return self.toks[self.i][0]

    def take(self, kind: str | None = None) -> str:
        k, v = self.toks[self.i]
        if kind is not None and k != kind:
            raise IdentityError(f"expected {kind!r}, found {v or 'end of input'!r}")
        self.i += 1
        return v

    def identity(self) -> dict:
        lhs = self.side()
        if self.peek() == "=":
            self.take()
            lhs = _add(lhs, self.side(), -1)
        self.take("end")
        return lhs

    def side(self) -> dict:
        sign = 1
        if self.peek() in "+-":
            sign = -1 if self.take() == "-" else 1
        acc = _add({}, self.term(), sign)
        while self.peek() in ("+", "-"):
            sign = -1 if self.take() == "-" else 1
            acc = _add(acc, self.term(), sign)
        return acc

    def term(self) -> dict:
        acc = self.factor()
        while self.peek() == "*":
            self.take()
            acc = _mul(acc, self.factor())
        return acc

    def factor(self) -> dict:
        kind = self.peek()
        if kind == "num":
            return {None: Fraction(self.take())}
        if kind == "var":
            name = self.take()
            return {("var", name): Fraction(1)}
        if kind == "[":
            self.take()
            u = self.side()
            self.take(",")
            v = self.side()
            self.take("]")
            return _add(_mul(u, v), _mul(v, u), -1)
        if kind == "(":
            self.take()
            parts = [self.side()]
            while self.peek() == ",":
                self.take()
                parts.append(self.side())
            self.take(")")
            if len(parts) == 1:
                return parts[0]
            if len(parts) == 3:
                u, v, w = parts
                return _add(_mul(_mul(u, v), w), _mul(u, _mul(v, w)), -1)
            raise IdentityError(f"parenthesized list of {len(parts)} items (need 1 or 3)")
        raise IdentityError(f"unexpected {self.toks[self.i][1] or 'end of input'!r}")


def _var_names(t, acc: set) -> None:
    if t[0] == "var":
        acc.add(t[1])
    else:
        _var_names(t[0], acc)
        _var_names(t[1], acc)


def _renumber(t, index: dict):
    if t[0] == "var":
        return index[t[1]]
    return (_renumber(t[0], index), _renumber(t[1], index))


def _canonical(body) -> ml.Body:
    return tuple(sorted(body, key=lambda tc: ml.tree_key(tc[0])))


def is_multilinear(identity: Identity) -> bool:
    want = list(range(1, identity.arity + 1))
    return all(sorted(ml.leaves(t)) == want for t, _ in identity.body)


def parse_identity(
    text: str,
    name: str | None = None,
    *,
    requires_char_not_2: bool | None = None,
    require_multilinear: bool = True,
) -> Identity:
    """Parse and expand an identity expression.

    Variables are renumbered 1..k in increasing order of their ``x`` index.
    ``requires_char_not_2`` defaults to whether any coefficient has an even
    denominator.
    """
    poly = _Parser(text).identity()
    if None in poly:
        raise IdentityError("constant term in identity")
    names: set = set()
    for t in poly:
        _var_names(t, names)
    ordered = sorted(names, key=lambda s: int(s[1:]))
    if len(ordered) > MAX_VARIABLES:
        raise IdentityError(f"{len(ordered)} variables; at most {MAX_VARIABLES} supported")
    index = {v: i + 1 for i, v in enumerate(ordered)}
    body = _canonical((_renumber(t, index), c) for t, c in poly.items())
    if requires_char_not_2 is None:
        requires_char_not_2 = any(c.denominator % 2 == 0 for _, c in body)
    ident = Identity(name or text.strip(), len(ordered), body, requires_char_not_2, text.strip(), tuple(ordered))
    if require_multilinear and not is_multilinear(ident):
        bad = next(t for t, _ in body if sorted(ml.leaves(t)) != list(range(1, ident.arity + 1)))
        raise IdentityError(f"not multilinear: monomial {ml.format_tree(bad, ordered)}")
    return ident


_CATALOG_TEXT = {
    "f1": ("(x1,x2,x3) = (x2,x1,x3)", False),
    "f2": ("(x1*x2)*x3 = (x1*x3)*x2", False),
    "f3": ("[[x1,x2],x3] + [[x2,x3],x1] + [[x3,x1],x2]", False),
    "f4": ("[x1,x2]*x3 + [x2,x3]*x1 + [x3,x1]*x2", False),
    "f5": ("x1*[x2,x3] + x2*[x3,x1] + x3*[x1,x2]", False),
    "f6": ("x1*[x2,x3] = (x1,x3,x2) - (x1,x2,x3)", False),
    "f7": ("(x3,x1,x2) = [x1*x2,x3] - [x1,x3]*x2", False),
    "f8": ("(x1*x2,x3,x4) = (x1,x3,x4)*x2", False),
    "f9": ("(x1,x2*x3,x4) = (x1,x2,x4)*x3", False),
    "f10": ("(x1,x2,x3*x4) = (x1,x2*x3,x4) - (x1*x2,x3,x4) + x1*(x2,x3,x4) + (x1,x2,x3)*x4", False),
    "f11": ("(x1,x2,x3*x4) = (x1,x2,x4)*x3 - (x1,x3,x4)*x2 + x1*(x2,x3,x4) + (x1,x2,x3)*x4", False),
    "f12": ("(x1,x2,x3) = 1/2*[x1*x3,x2] - 1/2*[x1,x2*x3]", True),
    "f13": ("[x1,x2]*x3 = 1/2*[x1*x3,x2] + 1/2*[x1,x2*x3]", True),
    "f14": ("x3*[x1,x2] = [[x3,x1],x2] + [x1,[x3,x2]] + 1/2*[x1*x3,x2] + 1/2*[x1,x2*x3]", True),
    "jacobi": ("[x1,[x2,x3]] + [x2,[x3,x1]] + [x3,[x1,x2]]", False),
    "g1": ("[[x1,x2],[x3,x4]]", False),
    "g2": ("([x1,x2],[x3,x4],x5)", False),
    "g3": ("(x1,[x2,x3],x4)*[x5,x6]", False),
    "g4": ("([x1,x2]*[x3,x4],x5,x6)", False),
    "g5": ("([x1,x2]*[x3,x4])*(x5,x6,x7)", False),
}

CATALOG: dict[str, Identity] = {
    name: parse_identity(text, name, requires_char_not_2=flag) for name, (text, flag) in _CATALOG_TEXT.items()
}


def get_identity(name: str) -> Identity:
    try:
        return CATALOG[name]
    except KeyError:
        raise IdentityError(f"unknown identity {name!r}; known: {', '.join(CATALOG)}") from None


def check_identity(A: Algebra, identity: Identity | str, *, workers: int = 1, force: bool = False) -> Verdict:
    """Evaluate ``identity`` on every basis tuple (x1 slowest).

    Raises :class:`HypothesisViolation` for a characteristic-2 field when the
    identity is flagged, and :class:`EnumerationGuardError` for seven-variable
    identities on algebras of dimension above 8 unless ``force``.
    """
    if isinstance(identity, str):
        identity = get_identity(identity)
    if not is_multilinear(identity):
        raise IdentityError(f"{identity.name} is not multilinear")
    if identity.requires_char_not_2 and A.field.characteristic == 2:
        raise HypothesisViolation(f"{identity.name} is only claimed in characteristic != 2")
    if identity.arity >= GUARD_ARITY and A.dim > GUARD_DIM and not force:
        raise EnumerationGuardError(
            f"{identity.name}: {A.dim}**{identity.arity} tuples exceeds the n <= {GUARD_DIM} guard (use force)"
        )
    return check_body(A, identity.body, identity.arity, identity.name, workers)


def is_lie_metabelian(A: Algebra, workers: int = 1) -> Verdict:
    return check_identity(A, "g1", workers=workers)
