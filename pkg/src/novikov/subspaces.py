"""Subspaces in reduced row-echelon form and the ideal calculus built on them."""

from __future__ import annotations

from typing import Iterable, Sequence

from .algebra import Algebra, AlgebraError, Element, Verdict, _same, associator, commutator, multiply

__all__ = [
    "Subspace",
    "associator_space",
    "commutator_space",
    "contains",
    "dim",
    "equal",
    "full_space",
    "ideal_closure",
    "is_ideal",
    "is_subalgebra",
    "product_space",
    "span",
    "sum",
    "zero_space",
]


def rref(rows: list[list], zero) -> tuple[list[tuple], list[int]]:
    """Gauss-Jordan with the leftmost nonzero pivot; returns (rows, pivots)."""
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        sel = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        prow = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], prow)]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return [tuple(row) for row in rows[:r]], pivots


class Subspace:
    """A linear subspace of an algebra, stored canonically (RREF basis rows)."""

    __slots__ = ("parent", "rows", "pivots")

    def __init__(self, parent: Algebra, rows: Sequence[tuple], pivots: Sequence[int]):
        self.parent = parent
        self.rows = tuple(rows)
        self.pivots = tuple(pivots)

    @classmethod
    def from_vectors(cls, A: Algebra, vectors: Iterable[list]) -> Subspace:
        rows, pivots = rref(list(vectors), A.field.zero)
        return cls(A, rows, pivots)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def basis(self) -> list[Element]:
        return [self.parent.element(r) for r in self.rows]

    def reduce(self, v: Element) -> Element:
        """Remainder of ``v`` after elimination against the pivots."""
        _check(self.parent, v.parent)
        coeffs = dict(v.coeffs)
        for row, p in zip(self.rows, self.pivots):
            f = coeffs.get(p)
            if not f:
                continue
            for col, x in enumerate(row):
                if x:
                    s = coeffs.get(col, 0) - f * x
                    if s:
                        coeffs[col] = s
                    else:
                        coeffs.pop(col, None)
        return Element(self.parent, coeffs)

    def __contains__(self, v: Element) -> bool:
        return self.reduce(v).is_zero

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return _same(self.parent, other.parent) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __le__(self, other: Subspace) -> bool:
        return all(b in other for b in self.basis())

    def __add__(self, other: Subspace) -> Subspace:
        return sum(self, other)

    def __bool__(self) -> bool:
        return bool(self.rows)

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, pivots={list(self.pivots)})"

    def describe(self) -> str:
        return "span{" + ", ".join(str(b) for b in self.basis()) + "}"


def _check(A: Algebra, B: Algebra) -> None:
    if not _same(A, B):
        raise AlgebraError("subspaces/elements of different algebras")


def span(A: Algebra, vs: Iterable[Element]) -> Subspace:
    vs = list(vs)
    for v in vs:
        _check(A, v.parent)
    return Subspace.from_vectors(A, (v.dense() for v in vs if v))


def zero_space(A: Algebra) -> Subspace:
    return Subspace(A, (), ())


def full_space(A: Algebra) -> Subspace:
    return span(A, A.basis_elements())


def contains(S: Subspace, v: Element) -> bool:
    return v in S


def sum(S: Subspace, T: Subspace) -> Subspace:  # noqa: A001 - mirrors the subspace operation name
    _check(S.parent, T.parent)
    return Subspace.from_vectors(S.parent, list(S.rows) + list(T.rows))


def equal(S: Subspace, T: Subspace) -> bool:
    _check(S.parent, T.parent)
    return S == T


def dim(S: Subspace) -> int:
    return S.dim


def product_space(A: Algebra, U: Subspace, V: Subspace) -> Subspace:
    """Span of ``u * v`` over basis vectors of ``U`` and ``V``."""
    _check(A, U.parent)
    _check(A, V.parent)
    vs = V.basis()
    return span(A, (multiply(A, u, v) for u in U.basis() for v in vs))


def commutator_space(A: Algebra, U: Subspace, V: Subspace) -> Subspace:
    _check(A, U.parent)
    _check(A, V.parent)
    vs = V.basis()
    return span(A, (commutator(A, u, v) for u in U.basis() for v in vs))


def associator_space(A: Algebra) -> Subspace:
    """Span of all associators of basis triples, i.e. ``(A, A, A)``."""
    es = A.basis_elements()
    return span(A, (associator(A, x, y, z) for x in es for y in es for z in es))


def ideal_closure(A: Algebra, S: Subspace) -> Subspace:
    """Smallest two-sided ideal containing ``S``."""
    _check(A, S.parent)
    es = A.basis_elements()
    cur = S
    while True:
        layer = [multiply(A, e, u) for u in cur.basis() for e in es]
        layer += [multiply(A, u, e) for u in cur.basis() for e in es]
        nxt = Subspace.from_vectors(A, list(cur.rows) + [v.dense() for v in layer if v])
        if nxt.dim == cur.dim:
            return cur
        cur = nxt


def is_ideal(A: Algebra, U: Subspace, side: str = "two-sided") -> Verdict:
    """Check ``A U`` and/or ``U A`` against ``U``.

    ``side`` is ``"left"``, ``"right"`` or ``"two-sided"``.  The witness is
    ``(basis index, U-row index)`` for the least violating pair, scanning
    basis elements slowest and the left product first.
    """
    _check(A, U.parent)
    if side not in ("left", "right", "two-sided"):
        raise ValueError(f"unknown side {side!r}")
    us = U.basis()
    for i, e in enumerate(A.basis_elements()):
        for r, u in enumerate(us):
            if side != "right":
                v = multiply(A, e, u)
                if v not in U:
                    return Verdict(False, (i, r), v, f"left product e{i}*u{r}")
            if side != "left":
                v = multiply(A, u, e)
                if v not in U:
                    return Verdict(False, (i, r), v, f"right product u{r}*e{i}")
    return Verdict(True)


def is_subalgebra(A: Algebra, U: Subspace) -> bool:
    return product_space(A, U, U) <= U
