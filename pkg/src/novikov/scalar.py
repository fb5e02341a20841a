"""Exact scalars: rationals via :class:`fractions.Fraction`, prime fields via :class:`Mod`.

A :class:`Field` coerces integers, fractions and literal strings into its
canonical scalar type.  Scalars of different fields never mix silently.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

__all__ = [
    "Field",
    "FieldError",
    "FieldMismatchError",
    "Mod",
    "QQ",
    "Scalar",
    "arith",
    "characteristic",
    "is_prime",
    "make_field",
    "smallest_divisor",
]


class FieldError(ValueError):
    """Invalid field descriptor or scalar literal."""


class FieldMismatchError(TypeError):
    """Operands belong to different fields."""


# Deterministic Miller-Rabin bases, valid below 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for b in _MR_BASES:
        x = pow(b, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def smallest_divisor(n: int) -> int:
    """Least divisor of ``n`` greater than 1 (``n`` itself when prime)."""
    if n < 2:
        raise ValueError(f"no prime divisor for {n}")
    if is_prime(n):
        return n
    if n % 2 == 0:
        return 2
    if n % 3 == 0:
        return 3
    f = 5
    limit = math.isqrt(n)
    while f <= limit:
        if n % f == 0:
            return f
        if n % (f + 2) == 0:
            return f + 2
        f += 6
    return n


class Mod:
    """Residue class modulo a prime ``p``, stored in ``[0, p)``."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _other(self, other) -> int:
        if isinstance(other, Mod):
            if other.p != self.p:
                raise FieldMismatchError(f"GF({self.p}) vs GF({other.p})")
            return other.value
        if isinstance(other, int):
            return other % self.p
        if isinstance(other, Fraction):
            raise FieldMismatchError(f"GF({self.p}) vs rational {other}")
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Mod(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Mod(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Mod(o - self.value, self.p)

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Mod(self.value * o, self.p)

    __rmul__ = __mul__

    def inverse(self) -> Mod:
        if self.value == 0:
            raise ZeroDivisionError(f"0 has no inverse in GF({self.p})")
        return Mod(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self * Mod(o, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Mod(o, self.p) * self.inverse()

    def __neg__(self) -> Mod:
        return Mod(-self.value, self.p)

    def __pos__(self) -> Mod:
        return self

    def __bool__(self) -> bool:
        return self.value != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, Mod):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.value, self.p))

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"Mod({self.value}, {self.p})"

    def __str__(self) -> str:
        return str(self.value)


Scalar = Union[Fraction, Mod]

_INT_RE = re.compile(r"[+-]?\d+\Z")
_FRAC_RE = re.compile(r"[+-]?\d+/\d+\Z")


@dataclass(frozen=True)
class Field:
    """The rationals (``p is None``) or the prime field GF(p)."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None:
            if not isinstance(self.p, int) or isinstance(self.p, bool) or self.p < 2:
                raise FieldError(f"prime modulus must be an integer >= 2, got {self.p!r}")
            d = smallest_divisor(self.p)
            if d != self.p:
                raise FieldError(f"{self.p} is not prime (divisible by {d})")

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    @property
    def is_rational(self) -> bool:
        return self.p is None

    @property
    def zero(self) -> Scalar:
        return self(0)

    @property
    def one(self) -> Scalar:
        return self(1)

    def __call__(self, value) -> Scalar:
        """Coerce an int, Fraction, Mod or literal string into this field."""
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, bool):
            raise FieldError("booleans are not scalars")
        if self.p is None:
            if isinstance(value, (int, Fraction)):
                return Fraction(value)
            raise FieldMismatchError(f"cannot coerce {value!r} into Q")
        if isinstance(value, Mod):
            if value.p != self.p:
                raise FieldMismatchError(f"GF({value.p}) element in GF({self.p})")
            return value
        if isinstance(value, int):
            return Mod(value, self.p)
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise FieldError(f"{value} is not defined in GF({self.p})")
            return Mod(value.numerator, self.p) / value.denominator
        raise FieldMismatchError(f"cannot coerce {value!r} into GF({self.p})")

    def parse(self, text: str) -> Scalar:
        """Parse ``"3"``, ``"-7"`` or (rationals only) ``"a/b"``."""
        s = text.strip()
        if _INT_RE.match(s):
            return self(int(s))
        if self.p is None and _FRAC_RE.match(s):
            num, den = s.split("/")
            if int(den) == 0:
                raise FieldError(f"zero denominator in {text!r}")
            return Fraction(int(num), int(den))
        raise FieldError(f"unparsable scalar {text!r} for {self}")

    def format(self, c: Scalar) -> str:
        return str(c)

    def contains(self, c) -> bool:
        if self.p is None:
            return isinstance(c, Fraction)
        return isinstance(c, Mod) and c.p == self.p

    def descriptor(self) -> dict:
        if self.p is None:
            return {"kind": "rationals"}
        return {"kind": "prime-field", "p": self.p}

    def __str__(self) -> str:
        return "Q" if self.p is None else f"GF({self.p})"


QQ = Field()


def make_field(spec) -> Field:
    """Build a field from a descriptor.

    Accepts a :class:`Field`, a mapping ``{"kind": "rationals"}`` /
    ``{"kind": "prime-field", "p": 7}``, or the short strings ``"Q"``,
    ``"F7"``, ``"GF(7)"``.  A composite modulus raises :class:`FieldError`
    naming its smallest divisor.
    """
    if isinstance(spec, Field):
        return spec
    if isinstance(spec, str):
        s = spec.strip()
        if s.upper() in ("Q", "QQ", "RATIONALS"):
            return QQ
        m = re.fullmatch(r"(?:F|GF|Fp)\(?(\d+)\)?", s, flags=re.IGNORECASE)
        if m:
            return Field(int(m.group(1)))
        raise FieldError(f"unknown field {spec!r}")
    if isinstance(spec, dict):
        kind = spec.get("kind")
        if kind == "rationals":
            return QQ
        if kind == "prime-field":
            if "p" not in spec:
                raise FieldError("prime-field descriptor needs 'p'")
            return Field(spec["p"])
        raise FieldError(f"unknown field kind {kind!r}")
    raise FieldError(f"cannot build a field from {spec!r}")


def characteristic(f: Field) -> int:
    return f.characteristic


def _field_of(c) -> int | None:
    if isinstance(c, Mod):
        return c.p
    if isinstance(c, (int, Fraction)):
        return None
    raise FieldMismatchError(f"not a scalar: {c!r}")


def arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    """Apply ``op`` in {"add", "sub", "mul", "div"} to two scalars of one field."""
    if _field_of(a) != _field_of(b):
        raise FieldMismatchError(f"mixed-field operands {a!r}, {b!r}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if not b:
            raise ZeroDivisionError("division by zero")
        return a / b
    raise ValueError(f"unknown operation {op!r}")
