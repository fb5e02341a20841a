"""Finite-dimensional algebras given by sparse structure constants.

``table[(i, j)]`` lists the pairs ``(k, c)`` with ``e_i * e_j = sum c e_k``;
missing keys mean a zero product.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import _multilinear as ml
from .scalar import Field, FieldError, make_field

__all__ = [
    "Algebra",
    "AlgebraError",
    "Element",
    "MAX_DIM",
    "Verdict",
    "associator",
    "commutator",
    "is_novikov",
    "make_algebra",
    "multiply",
    "right_normed_product",
]

# Dense enumerations are n**3 and worse; override per call with max_dim=.
MAX_DIM = 512


class AlgebraError(ValueError):
    """Malformed algebra definition or mismatched parent algebras."""


class Algebra:
    """Immutable structure-constant algebra over an exact field."""

    __slots__ = ("field", "dim", "labels", "table", "_hash")

    def __init__(self, field: Field, dim: int, labels: Sequence[str], table: Mapping):
        self.field = field
        self.dim = dim
        self.labels = tuple(labels)
        self.table = dict(table)
        self._hash = None

    def basis(self, i: int) -> Element:
        if not 0 <= i < self.dim:
            raise AlgebraError(f"basis index {i} out of range [0, {self.dim})")
        return Element(self, {i: self.field.one})

    def basis_elements(self) -> list[Element]:
        return [self.basis(i) for i in range(self.dim)]

    def zero(self) -> Element:
        return Element(self, {})

    def element(self, coeffs) -> Element:
        """Element from ``{index: scalar}`` or a dense coefficient sequence."""
        if isinstance(coeffs, Mapping):
            items = coeffs.items()
        else:
            items = enumerate(coeffs)
        out = {}
        for i, c in items:
            if not 0 <= i < self.dim:
                raise AlgebraError(f"basis index {i} out of range [0, {self.dim})")
            c = self.field(c)
            if c:
                out[i] = c
        return Element(self, out)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise AlgebraError(f"no basis element labelled {label!r}") from None

    def __getitem__(self, label: str) -> Element:
        return self.basis(self.index(label))

    def product_of_basis(self, i: int, j: int) -> Element:
        return Element(self, dict(self.table.get((i, j), ())))

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, Algebra):
            return NotImplemented
        return (self.field, self.dim, self.labels, self.table) == (other.field, other.dim, other.labels, other.table)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.field, self.dim, self.labels, tuple(sorted(self.table.items()))))
        return self._hash

    def __repr__(self) -> str:
        return f"Algebra(dim={self.dim}, field={self.field}, nonzero_products={len(self.table)})"


def _same(a: Algebra, b: Algebra) -> bool:
    return a is b or a == b


class Element:
    """Sparse coefficient vector; ``x * y`` is the algebra product."""

    __slots__ = ("parent", "coeffs")

    def __init__(self, parent: Algebra, coeffs: dict):
        self.parent = parent
        self.coeffs = coeffs

    def _check(self, other: Element) -> None:
        if not _same(self.parent, other.parent):
            raise AlgebraError("elements of different algebras")

    def __add__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        self._check(other)
        out = dict(self.coeffs)
        for i, c in other.coeffs.items():
            s = out.get(i, 0) + c
            if s:
                out[i] = s
            else:
                out.pop(i, None)
        return Element(self.parent, out)

    def __neg__(self) -> Element:
        return Element(self.parent, {i: -c for i, c in self.coeffs.items()})

    def __sub__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> Element:
        c = self.parent.field(c)
        if not c:
            return self.parent.zero()
        return Element(self.parent, {i: c * a for i, a in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, Element):
            return multiply(self.parent, self, other)
        if isinstance(other, (int, Fraction)) or self.parent.field.contains(other):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, Element):
            return NotImplemented
        return self.__mul__(other)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if isinstance(other, Element):
            return _same(self.parent, other.parent) and self.coeffs == other.coeffs
        if other == 0:
            return not self.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(tuple(sorted((i, c) for i, c in self.coeffs.items())))

    def __getitem__(self, i: int):
        return self.coeffs.get(i, self.parent.field.zero)

    def dense(self) -> list:
        z = self.parent.field.zero
        return [self.coeffs.get(i, z) for i in range(self.parent.dim)]

    def support(self) -> list[int]:
        return sorted(self.coeffs)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in sorted(self.coeffs):
            c = self.coeffs[i]
            label = self.parent.labels[i]
            if c == 1:
                parts.append(label)
            elif c == -1 and self.parent.field.characteristic != 2:
                parts.append(f"-{label}")
            else:
                parts.append(f"{c}*{label}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"Element({self})"


@dataclass(frozen=True)
class Verdict:
    """Outcome of an exhaustive check.

    On failure ``witness`` is the least failing index tuple and ``value`` the
    nonzero discrepancy there; ``reason`` names what failed.
    """

    holds: bool
    witness: tuple | None = None
    value: Element | None = None
    reason: str | None = None

    def __post_init__(self):
        if self.holds == (self.witness is not None):
            raise ValueError("witness must be present exactly when the check fails")

    def __bool__(self) -> bool:
        return self.holds

    def describe(self, labels: Sequence[str] | None = None) -> str:
        if self.holds:
            return "holds"
        names = [labels[i] if labels and isinstance(i, int) else str(i) for i in self.witness]
        what = f"{self.reason} " if self.reason else ""
        return f"fails {what}at ({', '.join(names)}): {self.value}"


def make_algebra(definition: Mapping, *, max_dim: int | None = None) -> Algebra:
    """Validate and canonicalize an algebra definition.

    ``definition`` carries ``field`` (anything :func:`make_field` accepts),
    ``dim``, optional ``basis`` labels, and ``table`` given either as a
    mapping ``{(i, j): [(k, c), ...]}`` or as a list of
    ``{"i": .., "j": .., "terms": [{"k": .., "c": ..}, ...]}`` entries.
    Coefficients may be scalars or literal strings.  Repeated ``k`` within
    an entry are summed; zero results are dropped.
    """
    try:
        field = make_field(definition.get("field", "Q"))
    except FieldError as exc:
        raise AlgebraError(f"field: {exc}") from exc
    dim = definition.get("dim")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise AlgebraError(f"dim must be a positive integer, got {dim!r}")
    cap = MAX_DIM if max_dim is None else max_dim
    if dim > cap:
        raise AlgebraError(f"dim {dim} exceeds the dense cap {cap} (pass max_dim to override)")
    labels = definition.get("basis") or [f"e{i}" for i in range(dim)]
    labels = [str(s) for s in labels]
    if len(labels) != dim:
        raise AlgebraError(f"{len(labels)} basis labels for dim {dim}")
    if len(set(labels)) != dim:
        dup = next(s for s in labels if labels.count(s) > 1)
        raise AlgebraError(f"duplicate basis label {dup!r}")

    raw = definition.get("table", {})
    if isinstance(raw, Mapping):
        entries = [(key, terms, f"table[{key!r}]") for key, terms in raw.items()]
    else:
        entries = []
        for pos, entry in enumerate(raw):
            try:
                key = (entry["i"], entry["j"])
                terms = [(t["k"], t["c"]) for t in entry["terms"]]
            except (KeyError, TypeError) as exc:
                raise AlgebraError(f"table[{pos}]: malformed entry ({exc})") from exc
            entries.append((key, terms, f"table[{pos}]"))

    table: dict = {}
    for (i, j), terms, where in entries:
        for idx in (i, j):
            if not isinstance(idx, int) or isinstance(idx, bool) or not 0 <= idx < dim:
                raise AlgebraError(f"{where}: index {idx!r} out of range [0, {dim})")
        if (i, j) in table:
            raise AlgebraError(f"{where}: duplicate entry for ({i}, {j})")
        acc: dict = {}
        for t, (k, c) in enumerate(terms):
            if not isinstance(k, int) or isinstance(k, bool) or not 0 <= k < dim:
                raise AlgebraError(f"{where}.terms[{t}]: index {k!r} out of range [0, {dim})")
            try:
                c = field(c)
            except (FieldError, TypeError) as exc:
                raise AlgebraError(f"{where}.terms[{t}]: {exc}") from exc
            acc[k] = acc.get(k, field.zero) + c
        row = tuple(sorted((k, c) for k, c in acc.items() if c))
        table[i, j] = row
    table = {key: row for key, row in sorted(table.items()) if row}
    return Algebra(field, dim, labels, table)


def _parent(A: Algebra, *xs: Element) -> None:
    for x in xs:
        if not _same(A, x.parent):
            raise AlgebraError("element does not belong to this algebra")


def multiply(A: Algebra, x: Element, y: Element) -> Element:
    _parent(A, x, y)
    acc: dict = {}
    table = A.table
    for i, a in x.coeffs.items():
        for j, b in y.coeffs.items():
            row = table.get((i, j))
            if not row:
                continue
            ab = a * b
            for k, c in row:
                acc[k] = acc.get(k, 0) + ab * c
    return Element(A, {k: c for k, c in acc.items() if c})


def commutator(A: Algebra, x: Element, y: Element) -> Element:
    return multiply(A, x, y) - multiply(A, y, x)


def associator(A: Algebra, x: Element, y: Element, z: Element) -> Element:
    """``(xy)z - x(yz)``."""
    return multiply(A, multiply(A, x, y), z) - multiply(A, x, multiply(A, y, z))


def right_normed_product(A: Algebra, xs: Iterable[Element]) -> Element:
    """``(...((x1 x2) x3) ...) xk``."""
    xs = list(xs)
    if not xs:
        raise AlgebraError("right-normed product of an empty list")
    _parent(A, *xs)
    out = xs[0]
    for x in xs[1:]:
        out = multiply(A, out, x)
    return out


# (x1,x2,x3) - (x2,x1,x3), expanded
LEFT_SYMMETRY: ml.Body = (
    (((1, 2), 3), Fraction(1)),
    ((1, (2, 3)), Fraction(-1)),
    (((2, 1), 3), Fraction(-1)),
    ((2, (1, 3)), Fraction(1)),
)
# (x1 x2) x3 - (x1 x3) x2
RIGHT_COMMUTATIVITY: ml.Body = (
    (((1, 2), 3), Fraction(1)),
    (((1, 3), 2), Fraction(-1)),
)


def basis_value(A: Algebra, body: ml.Body, tup: Sequence[int]) -> Element:
    """Exact value of ``body`` at the basis tuple ``tup``."""
    return ml.evaluate(body, [A.basis(i) for i in tup], lambda u, v: multiply(A, u, v), A.zero())


def check_body(A: Algebra, body: ml.Body, k: int, reason: str | None = None, workers: int = 1) -> Verdict:
    tup = ml.first_failure(A, body, k, workers=workers)
    if tup is None:
        return Verdict(True)
    value = basis_value(A, body, tup)
    if not value:
        raise AssertionError(f"modular search and exact evaluation disagree at {tup}")
    return Verdict(False, tuple(tup), value, reason)


def is_novikov(A: Algebra, workers: int = 1) -> Verdict:
    """Exhaustive check of left-symmetry and right-commutativity on basis triples.

    The witness is the least failing triple; on a tie left-symmetry is reported.
    """
    found = []
    for order, (name, body) in enumerate((("left-symmetry", LEFT_SYMMETRY), ("right-commutativity", RIGHT_COMMUTATIVITY))):
        v = check_body(A, body, 3, name, workers)
        if not v.holds:
            found.append((v.witness, order, v))
    if not found:
        return Verdict(True)
    return min(found, key=lambda f: f[:2])[2]
