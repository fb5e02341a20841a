"""Factories for the algebras studied here.

Graded truncations stand in for infinite-dimensional algebras: the
non-negative part of the Novikov-Witt algebra ``e_i e_j = (j+1) e_{i+j}``
modulo ``span{e_i : i >= d}``, and for the zero split extensions the module
part ``f_-1 .. f_d``, which the actions of ``e_-1`` and ``e_0`` preserve.
Every factory output is meant to pass :func:`~novikov.algebra.is_novikov`;
the test-suite checks that rather than assuming it.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

from .algebra import Algebra, AlgebraError, Verdict, is_novikov, make_algebra, multiply
from .scalar import QQ, Field, make_field

__all__ = [
    "ConstructionError",
    "DifferentialAlgebra",
    "NotNovikovError",
    "SplitExtensionSpec",
    "binomial",
    "binomial_mishchenko",
    "binomial_truncated_witt",
    "build",
    "euler_derivation",
    "example1",
    "extract_split_spec",
    "gelfand_dorfman",
    "mishchenko",
    "random_differential_algebra",
    "split_extension",
    "truncated_polynomial",
    "truncated_witt",
    "CONSTRUCTIONS",
]


class ConstructionError(ValueError):
    """Bad construction parameters or invalid input data."""


class NotNovikovError(ConstructionError):
    def __init__(self, message: str, verdict: Verdict):
        super().__init__(message)
        self.verdict = verdict


def binomial(n: int, k: int) -> int:
    """``C(n, k)``, zero when ``n < k`` (including negative ``n``)."""
    if k < 0 or n < k:
        return 0
    return math.comb(n, k)


def _witt_coeff(i: int, j: int) -> int:
    return j + 1


def _binomial_coeff(i: int, j: int) -> int:
    return binomial(i + j + 1, i + 1)


def example1(field: Field | str = QQ) -> Algebra:
    """``ab = b`` and all other products of ``a, b`` zero."""
    return make_algebra({"field": make_field(field), "dim": 2, "basis": ["a", "b"], "table": {(0, 1): [(1, 1)]}})


def _graded_truncation(d: int, field, rule: Callable[[int, int], int], letter: str) -> Algebra:
    if not isinstance(d, int) or d < 1:
        raise ConstructionError(f"d must be a positive integer, got {d!r}")
    table = {}
    for i in range(d):
        for j in range(d - i):
            c = rule(i, j)
            if c:
                table[i, j] = [(i + j, c)]
    return make_algebra({"field": make_field(field), "dim": d, "basis": [f"{letter}{i}" for i in range(d)], "table": table})


def truncated_witt(d: int, field: Field | str = QQ) -> Algebra:
    """Basis ``e_0..e_(d-1)`` with ``e_i e_j = (j+1) e_(i+j)`` for ``i+j < d``."""
    return _graded_truncation(d, field, _witt_coeff, "e")


def binomial_truncated_witt(d: int, field: Field | str = QQ) -> Algebra:
    """Basis ``E_0..E_(d-1)`` with ``E_i E_j = C(i+j+1, i+1) E_(i+j)``, reduced into the field."""
    return _graded_truncation(d, field, _binomial_coeff, "E")


@dataclass
class SplitExtensionSpec:
    """Data of a zero split extension ``R + M`` with ``M M = 0``.

    ``left[(a, j)]`` lists ``(k, c)`` with ``r_a m_j = sum c m_k``;
    ``right[(j, a)]`` lists ``(k, c)`` with ``m_j r_a = sum c m_k``.
    """

    R: Algebra
    module_labels: Sequence[str]
    left: Mapping = field(default_factory=dict)
    right: Mapping = field(default_factory=dict)

    @property
    def module_dim(self) -> int:
        return len(self.module_labels)


def split_extension(spec: SplitExtensionSpec, *, validate: bool = True) -> Algebra:
    """Assemble ``R + M`` and reject it unless it is Novikov."""
    R, r, m = spec.R, spec.R.dim, spec.module_dim
    if m < 1:
        raise ConstructionError("module must be nonzero")
    table: dict = {key: list(row) for key, row in R.table.items()}
    for (a, j), terms in spec.left.items():
        if not (0 <= a < r and 0 <= j < m):
            raise ConstructionError(f"left action index ({a}, {j}) out of range")
        table[a, r + j] = [(r + k, c) for k, c in terms]
    for (j, a), terms in spec.right.items():
        if not (0 <= a < r and 0 <= j < m):
            raise ConstructionError(f"right action index ({j}, {a}) out of range")
        table[r + j, a] = [(r + k, c) for k, c in terms]
    try:
        A = make_algebra({"field": R.field, "dim": r + m, "basis": list(R.labels) + list(spec.module_labels), "table": table})
    except AlgebraError as exc:
        raise ConstructionError(str(exc)) from exc
    if validate:
        v = is_novikov(A)
        if not v.holds:
            raise NotNovikovError(f"split extension is not Novikov: {v.describe(A.labels)}", v)
    return A


def extract_split_spec(A: Algebra, r: int) -> SplitExtensionSpec:
    """Read ``R`` = first ``r`` basis vectors and ``M`` = the rest back out of ``A``."""
    R_table, left, right = {}, {}, {}
    for (i, j), row in A.table.items():
        if i < r and j < r:
            if any(k >= r for k, _ in row):
                raise ConstructionError(f"R is not a subalgebra: product ({i}, {j})")
            R_table[i, j] = list(row)
        elif i >= r and j >= r:
            raise ConstructionError(f"M*M is not zero: product ({i}, {j})")
        else:
            if any(k < r for k, _ in row):
                raise ConstructionError(f"action leaves M: product ({i}, {j})")
            terms = [(k - r, c) for k, c in row]
            if i < r:
                left[i, j - r] = terms
            else:
                right[i - r, j] = terms
    R = make_algebra({"field": A.field, "dim": r, "basis": list(A.labels[:r]), "table": R_table})
    return SplitExtensionSpec(R, list(A.labels[r:]), left, right)


def _l1_split_extension(d: int, field, rule, r_letter: str, m_letter: str) -> Algebra:
    if not isinstance(d, int) or d < 1:
        raise ConstructionError(f"d must be a positive integer, got {d!r}")
    field = make_field(field)
    grades = (-1, 0)
    R_table = {}
    for a, i in enumerate(grades):
        for b, j in enumerate(grades):
            c = rule(i, j)
            if c and i + j in grades:
                R_table[a, b] = [(grades.index(i + j), c)]
    R = make_algebra({"field": field, "dim": 2, "basis": [f"{r_letter}{g}" for g in grades], "table": R_table})
    # module index of f_j is j + 1, for j = -1 .. d
    left, right = {}, {}
    for a, i in enumerate(grades):
        for j in range(-1, d + 1):
            if i + j < -1:
                continue
            c = rule(i, j)
            if c:
                left[a, j + 1] = [(i + j + 1, c)]
            c = rule(j, i)
            if c:
                right[j + 1, a] = [(i + j + 1, c)]
    spec = SplitExtensionSpec(R, [f"{m_letter}{j}" for j in range(-1, d + 1)], left, right)
    return split_extension(spec)


def mishchenko(d: int, field: Field | str = QQ) -> Algebra:
    """Zero split extension of ``R = K e_-1 + K e_0`` by ``M = span{f_-1..f_d}``.

    ``e_i f_j = (j+1) f_(i+j)`` and ``f_j e_i = (i+1) f_(j+i)``; dimension ``d + 4``.
    """
    return _l1_split_extension(d, field, _witt_coeff, "e", "f")


def binomial_mishchenko(d: int, field: Field | str = QQ) -> Algebra:
    """Binomial-basis analogue of :func:`mishchenko`, valid in every characteristic.

    ``E_i F_j = C(i+j+1, i+1) F_(i+j)`` and ``F_j E_i = C(i+j+1, j+1) F_(j+i)``.
    """
    return _l1_split_extension(d, field, _binomial_coeff, "E", "F")


class DifferentialAlgebraError(ConstructionError):
    pass


@dataclass
class DifferentialAlgebra:
    """Commutative associative algebra with a derivation; ``D[i]`` holds the coordinates of ``D(e_i)``."""

    algebra: Algebra
    derivation: Sequence[Sequence]

    def apply(self, i: int):
        return self.algebra.element(self.derivation[i])

    def validate(self) -> None:
        A = self.algebra
        n = A.dim
        if len(self.derivation) != n or any(len(row) != n for row in self.derivation):
            raise DifferentialAlgebraError(f"derivation must be a {n}x{n} matrix")
        es = A.basis_elements()
        for i in range(n):
            for j in range(n):
                if multiply(A, es[i], es[j]) != multiply(A, es[j], es[i]):
                    raise DifferentialAlgebraError(f"not commutative at ({A.labels[i]}, {A.labels[j]})")
        for i in range(n):
            for j in range(n):
                ij = multiply(A, es[i], es[j])
                for k in range(n):
                    if multiply(A, ij, es[k]) != multiply(A, es[i], multiply(A, es[j], es[k])):
                        raise DifferentialAlgebraError(
                            f"not associative at ({A.labels[i]}, {A.labels[j]}, {A.labels[k]})"
                        )
        D = [self.apply(i) for i in range(n)]

        def apply(x):
            out = A.zero()
            for i, c in x.coeffs.items():
                out = out + D[i].scale(c)
            return out

        for i in range(n):
            for j in range(n):
                lhs = apply(multiply(A, es[i], es[j]))
                rhs = multiply(A, D[i], es[j]) + multiply(A, es[i], D[j])
                if lhs != rhs:
                    raise DifferentialAlgebraError(f"Leibniz rule fails at ({A.labels[i]}, {A.labels[j]})")


def gelfand_dorfman(da: DifferentialAlgebra, *, validate: bool = True) -> Algebra:
    """Novikov product ``u o v = u D(v)`` on the space of ``da.algebra``."""
    if validate:
        da.validate()
    A = da.algebra
    table = {}
    for i in range(A.dim):
        for j in range(A.dim):
            v = multiply(A, A.basis(i), da.apply(j))
            if v:
                table[i, j] = sorted(v.coeffs.items())
    return make_algebra({"field": A.field, "dim": A.dim, "basis": list(A.labels), "table": table})


def truncated_polynomial(n: int, field: Field | str = QQ) -> Algebra:
    """``K[x]/(x^n)`` with basis ``1, x, .., x^(n-1)``."""
    if not isinstance(n, int) or n < 1:
        raise ConstructionError(f"n must be a positive integer, got {n!r}")
    labels = ["1", "x"] + [f"x^{i}" for i in range(2, n)]
    table = {(i, j): [(i + j, 1)] for i in range(n) for j in range(n - i)}
    return make_algebra({"field": make_field(field), "dim": n, "basis": labels[:n], "table": table})


def _x_times_poly_derivation(n: int, q: Sequence[int]) -> list[list[int]]:
    # D(x^i) = i x^i q(x) mod x^n
    D = [[0] * n for _ in range(n)]
    for i in range(n):
        for s, c in enumerate(q):
            if i + s < n:
                D[i][i + s] += i * c
    return D


def euler_derivation(n: int) -> list[list[int]]:
    """``x d/dx`` on ``K[x]/(x^n)``: ``D(x^i) = i x^i``."""
    return _x_times_poly_derivation(n, [1])


def random_differential_algebra(
    rng: random.Random, field: Field | str = QQ, n: int | None = None, max_n: int = 6, coeff_range: int = 3
) -> DifferentialAlgebra:
    """``K[x]/(x^n)`` with ``D = x q(x) d/dx`` for a random integer polynomial ``q``.

    ``D`` maps ``(x^n)`` into itself, so it descends to the quotient.  ``n`` is
    drawn from ``2..max_n`` when not given.
    """
    if n is None:
        n = rng.randint(2, max_n)
    q = [rng.randint(-coeff_range, coeff_range) for _ in range(n)]
    return DifferentialAlgebra(truncated_polynomial(n, field), _x_times_poly_derivation(n, q))


CONSTRUCTIONS = ("example1", "truncated-witt", "binomial-truncated-witt", "mishchenko", "binomial-mishchenko", "gelfand-dorfman")


def build(name: str, *, d: int | None = None, field: Field | str = QQ, seed: int | None = None) -> Algebra:
    """Construct an algebra by its command-line name.

    For ``gelfand-dorfman``, ``d`` is the dimension of ``K[x]/(x^d)``.  With a
    ``seed`` the derivation is random (``x q(x) d/dx``, and ``d`` is drawn
    when omitted); otherwise it is ``x d/dx``.
    """
    field = make_field(field)
    if name == "example1":
        return example1(field)
    factories = {
        "truncated-witt": truncated_witt,
        "binomial-truncated-witt": binomial_truncated_witt,
        "mishchenko": mishchenko,
        "binomial-mishchenko": binomial_mishchenko,
    }
    if name in factories:
        if d is None:
            raise ConstructionError(f"{name} needs d")
        return factories[name](d, field)
    if name == "gelfand-dorfman":
        if seed is not None:
            return gelfand_dorfman(random_differential_algebra(random.Random(seed), field, n=d))
        if d is None or d < 1:
            raise ConstructionError("gelfand-dorfman needs d >= 1 or a seed")
        return gelfand_dorfman(DifferentialAlgebra(truncated_polynomial(d, field), euler_derivation(d)))
    raise ConstructionError(f"unknown construction {name!r}; known: {', '.join(CONSTRUCTIONS)}")
