"""Power, right-power, derived and Lie-derived series, and classification.

Index convention: the index of a series is the least exponent whose term is
the zero subspace, counted in that series' own numbering.  Powers and right
powers start at exponent 1 (``U^1 = U``); derived and Lie-derived series
start at step 0 (``U^(0) = U``).
"""

from __future__ import annotations

import logging
from dataclasses import asdict, dataclass, field

from .algebra import Algebra
from .subspaces import (
    Subspace,
    commutator_space,
    full_space,
    ideal_closure,
    is_subalgebra,
    product_space,
    zero_space,
)

__all__ = [
    "ClassificationReport",
    "SeriesError",
    "SeriesReport",
    "classify",
    "derived_series",
    "lie_derived_series",
    "power_series",
    "right_power_series",
]

log = logging.getLogger(__name__)

# Safety net only; every loop below has a proven stopping rule.
MAX_STEPS = 10_000


class SeriesError(ValueError):
    """Input subspace does not satisfy the series' precondition."""


@dataclass
class SeriesReport:
    kind: str
    start: int
    dims: list[int]
    terminated: bool
    index: int | None
    stabilized_nonzero: bool
    terms: list[Subspace] = field(default_factory=list, repr=False, compare=False)

    def __post_init__(self):
        assert self.terminated != self.stabilized_nonzero
        assert (self.index is not None) == self.terminated

    def term(self, m: int) -> Subspace:
        """The term with exponent ``m`` (the chain is constant past its end)."""
        pos = m - self.start
        if pos < 0:
            raise IndexError(m)
        return self.terms[min(pos, len(self.terms) - 1)]

    def to_dict(self) -> dict:
        d = asdict(self)
        d.pop("terms")
        return d


def _report(kind: str, start: int, terms: list[Subspace]) -> SeriesReport:
    dims = [t.dim for t in terms]
    done = dims[-1] == 0
    return SeriesReport(kind, start, dims, done, start + len(dims) - 1 if done else None, not done, terms)


def _require_subalgebra(A: Algebra, U: Subspace) -> None:
    if not is_subalgebra(A, U):
        raise SeriesError("subspace is not closed under the product")


def _iterate(A: Algebra, U: Subspace, step, kind: str, start: int) -> SeriesReport:
    terms = [U]
    while terms[-1].dim:
        nxt = step(terms[-1])
        if nxt == terms[-1]:
            break
        terms.append(nxt)
        if len(terms) > MAX_STEPS:
            raise RuntimeError(f"{kind} series did not stabilize")
    return _report(kind, start, terms)


def power_series(A: Algebra, U: Subspace) -> SeriesReport:
    """``U^m = sum_{i<m} U^i U^(m-i)``.

    The chain is non-increasing.  If ``U^j`` is the same subspace ``W`` for
    all ``j`` in ``[m, 2m]`` then every later term is ``W`` as well (each
    summand of ``U^t``, ``t > 2m``, has one factor with exponent >= m), so the
    loop stops there.
    """
    _require_subalgebra(A, U)
    terms = [U]
    products: dict = {}

    def prod(i: int, j: int) -> Subspace:
        if (i, j) not in products:
            products[i, j] = product_space(A, terms[i - 1], terms[j - 1])
        return products[i, j]

    plateau = 1
    while terms[-1].dim:
        m = len(terms) + 1
        acc = zero_space(A)
        for i in range(1, m):
            acc = acc + prod(i, m - i)
        terms.append(acc)
        if acc != terms[-2]:
            plateau = m
        elif m >= 2 * plateau:
            break
        if m > MAX_STEPS:
            raise RuntimeError("power series did not stabilize")
    return _report("power", 1, terms)


def right_power_series(A: Algebra, U: Subspace) -> SeriesReport:
    """``U^[1] = U``, ``U^[m+1] = U^[m] U``."""
    _require_subalgebra(A, U)
    return _iterate(A, U, lambda V: product_space(A, V, U), "right-power", 1)


def derived_series(A: Algebra, U: Subspace) -> SeriesReport:
    """``U^(0) = U``, ``U^(m) = U^(m-1) U^(m-1)``."""
    _require_subalgebra(A, U)
    return _iterate(A, U, lambda V: product_space(A, V, V), "derived", 0)


def lie_derived_series(A: Algebra, U: Subspace) -> SeriesReport:
    """Derived series of the commutator algebra: ``D_0 = U``, ``D_m = [D_(m-1), D_(m-1)]``."""
    if not commutator_space(A, U, U) <= U:
        raise SeriesError("subspace is not closed under the commutator")
    return _iterate(A, U, lambda V: commutator_space(A, V, V), "lie-derived", 0)


@dataclass
class ClassificationReport:
    dim: int
    nilpotent: bool
    right_nilpotent: bool
    solvable: bool
    lie_solvable: bool
    square_nilpotent: bool
    commutator_ideal_right_nilpotent: bool
    solvability_consistent: bool
    power: SeriesReport
    right_power: SeriesReport
    derived: SeriesReport
    lie_derived: SeriesReport
    square_power: SeriesReport
    commutator_ideal_right_power: SeriesReport

    def to_dict(self) -> dict:
        out = {}
        for k, v in self.__dict__.items():
            out[k] = v.to_dict() if isinstance(v, SeriesReport) else v
        return out


def classify(A: Algebra, *, novikov: bool = True) -> ClassificationReport:
    """Run all series on the whole algebra.

    For a Novikov algebra, solvable, right nilpotent and "A^2 nilpotent"
    are equivalent; a disagreement is logged as an internal error and
    reported via ``solvability_consistent``.  Pass ``novikov=False`` to
    skip that expectation for arbitrary tables.
    """
    N = full_space(A)
    power = power_series(A, N)
    right = right_power_series(A, N)
    derived = derived_series(A, N)
    lie = lie_derived_series(A, N)
    square = power_series(A, product_space(A, N, N))
    comm_ideal = ideal_closure(A, commutator_space(A, N, N))
    comm_right = right_power_series(A, comm_ideal)
    consistent = derived.terminated == right.terminated == square.terminated
    if novikov and not consistent:
        log.error(
            "solvable=%s, right nilpotent=%s, A^2 nilpotent=%s disagree on a Novikov algebra",
            derived.terminated, right.terminated, square.terminated,
        )
    return ClassificationReport(
        dim=A.dim,
        nilpotent=power.terminated,
        right_nilpotent=right.terminated,
        solvable=derived.terminated,
        lie_solvable=lie.terminated,
        square_nilpotent=square.terminated,
        commutator_ideal_right_nilpotent=comm_right.terminated,
        solvability_consistent=consistent,
        power=power,
        right_power=right,
        derived=derived,
        lie_derived=lie,
        square_power=square,
        commutator_ideal_right_power=comm_right,
    )
