"""Instance-wise verification of the structural results on Novikov algebras.

Check ids:

* ``L1``  associators span an ideal
* ``C1``  commutators span an ideal (char != 2)
* ``L2``  identities f12, f13, f14 (char != 2)
* ``C2a`` associator space inside commutator space (char != 2)
* ``C2b`` commutator and associator ideals are commutative and associative
  (Lie-metabelian instances)
* ``L3``  identity g2 (Lie-metabelian)
* ``L4``  identities g3, g4, g5 (Lie-metabelian)
* ``L5``  ``(N,N,N)^3 = 0`` and ``[N,N]^4 = 0`` (Lie-metabelian)
* ``T1``  Lie-solvable iff the commutator ideal is right nilpotent (char != 2)
* ``SZ``  solvable, right nilpotent and ``N^2`` nilpotent agree
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .algebra import Algebra, associator, is_novikov, make_algebra, multiply
from .constructions import NotNovikovError, binomial_mishchenko, binomial_truncated_witt, build
from .identities import EnumerationGuardError, check_identity, is_lie_metabelian
from .scalar import Field
from .series import SeriesError, derived_series, lie_derived_series, power_series, right_power_series
from .subspaces import Subspace, associator_space, commutator_space, full_space, is_ideal, product_space

__all__ = [
    "CHECK_IDS",
    "CheckResult",
    "CorpusReport",
    "DEFAULT_SEED",
    "SuiteResult",
    "default_corpus",
    "explore_char2",
    "run_corpus",
    "run_suite",
]

PASS = "pass"
FAIL = "fail"
HYPOTHESIS = "hypothesis-not-satisfied"
NOT_APPLICABLE = "not-applicable"

CHECK_IDS = ("L1", "C1", "L2", "C2a", "C2b", "L3", "L4", "L5", "T1", "SZ")
CHAR_FLAGGED = frozenset({"C1", "L2", "C2a", "C2b", "L3", "L4", "L5", "T1"})
DEFAULT_SEED = 20211

T1_DEFECT = "a failure here contradicts a proven theorem: treat it as an implementation defect and triage"


@dataclass
class CheckResult:
    status: str
    detail: str = ""
    witness: list | None = None

    def to_dict(self) -> dict:
        d = {"status": self.status, "detail": self.detail}
        if self.witness is not None:
            d["witness"] = self.witness
        return d


@dataclass
class SuiteResult:
    checks: dict[str, CheckResult]
    facts: dict = field(default_factory=dict)

    def __post_init__(self):
        assert tuple(self.checks) == CHECK_IDS

    @property
    def failed(self) -> list[str]:
        return [k for k, c in self.checks.items() if c.status == FAIL]

    @property
    def ok(self) -> bool:
        return not self.failed

    def to_dict(self) -> dict:
        return {"checks": {k: c.to_dict() for k, c in self.checks.items()}, "facts": self.facts}


def _labels(A: Algebra, idx: Iterable[int]) -> list[str]:
    return [A.labels[i] for i in idx]


def _ideal_result(A: Algebra, S: Subspace, what: str) -> CheckResult:
    v = is_ideal(A, S)
    if v.holds:
        return CheckResult(PASS, f"{what} (dim {S.dim}) is an ideal")
    i, r = v.witness
    return CheckResult(FAIL, f"{what}: {v.reason} = {v.value} leaves the subspace", [A.labels[i], r])


def _identities(A: Algebra, names: Sequence[str], workers: int, force: bool) -> CheckResult:
    passed = []
    for name in names:
        try:
            v = check_identity(A, name, workers=workers, force=force)
        except EnumerationGuardError as exc:
            return CheckResult(NOT_APPLICABLE, f"{', '.join(passed)} pass; {exc}")
        if not v.holds:
            return CheckResult(FAIL, v.describe(A.labels), list(_labels(A, v.witness)))
        passed.append(name)
    return CheckResult(PASS, ", ".join(names) + " hold on all basis tuples")


def _commutative_associative(A: Algebra, S: Subspace, what: str) -> CheckResult | None:
    us = S.basis()
    for (r, u), (s, v) in itertools.product(enumerate(us), repeat=2):
        if multiply(A, u, v) != multiply(A, v, u):
            return CheckResult(FAIL, f"{what} not commutative at basis rows ({r}, {s})", [r, s])
    for (r, u), (s, v), (t, w) in itertools.product(enumerate(us), repeat=3):
        if associator(A, u, v, w):
            return CheckResult(FAIL, f"{what} not associative at basis rows ({r}, {s}, {t})", [r, s, t])
    return None


def run_suite(A: Algebra, *, workers: int = 1, force: bool = False) -> SuiteResult:
    """Run every check on a Novikov algebra ``A``."""
    v = is_novikov(A, workers=workers)
    if not v.holds:
        raise NotNovikovError(f"not a Novikov algebra: {v.describe(A.labels)}", v)
    char2 = A.field.characteristic == 2
    N = full_space(A)
    assoc = associator_space(A)
    comm = commutator_space(A, N, N)
    checks: dict[str, CheckResult] = {}
    facts: dict = {"dim": A.dim, "field": str(A.field), "associator_dim": assoc.dim, "commutator_dim": comm.dim}

    def gated(name: str) -> bool:
        if char2 and name in CHAR_FLAGGED:
            checks[name] = CheckResult(HYPOTHESIS, "requires characteristic != 2")
            return True
        return False

    checks["L1"] = _ideal_result(A, assoc, "(N,N,N)")
    if not gated("C1"):
        checks["C1"] = _ideal_result(A, comm, "[N,N]")
    if not gated("L2"):
        checks["L2"] = _identities(A, ("f12", "f13", "f14"), workers, force)
    if not gated("C2a"):
        missing = next((b for b in assoc.basis() if b not in comm), None)
        checks["C2a"] = (
            CheckResult(PASS, "(N,N,N) is contained in [N,N]")
            if missing is None
            else CheckResult(FAIL, f"associator {missing} not in [N,N]", [str(missing)])
        )

    metabelian = is_lie_metabelian(A, workers=workers).holds
    facts["lie_metabelian"] = metabelian
    for name in ("C2b", "L3", "L4", "L5"):
        if gated(name):
            continue
        if not metabelian:
            checks[name] = CheckResult(NOT_APPLICABLE, "not Lie-metabelian")
            continue
        if name == "C2b":
            bad = _commutative_associative(A, comm, "[N,N]") or _commutative_associative(A, assoc, "(N,N,N)")
            checks[name] = bad or CheckResult(PASS, "[N,N] and (N,N,N) are commutative and associative")
        elif name == "L3":
            checks[name] = _identities(A, ("g2",), workers, force)
        elif name == "L4":
            checks[name] = _identities(A, ("g3", "g4", "g5"), workers, force)
        else:
            try:
                a_idx = power_series(A, assoc).index
                c_idx = power_series(A, comm).index
            except SeriesError as exc:
                checks[name] = CheckResult(FAIL, str(exc), [str(exc)])
                continue
            facts["associator_power_index"] = a_idx
            facts["commutator_power_index"] = c_idx
            ok = a_idx is not None and a_idx <= 3 and c_idx is not None and c_idx <= 4
            detail = f"(N,N,N)^m = 0 from m = {a_idx}; [N,N]^m = 0 from m = {c_idx}"
            checks[name] = CheckResult(PASS, detail) if ok else CheckResult(FAIL, detail, [a_idx, c_idx])

    if not gated("T1"):
        try:
            lie = lie_derived_series(A, N)
            right = right_power_series(A, comm)
        except SeriesError as exc:
            checks["T1"] = CheckResult(FAIL, f"{exc}; {T1_DEFECT}", [str(exc)])
        else:
            facts["lie_solvable_index"] = lie.index
            facts["commutator_right_power_index"] = right.index
            detail = (
                f"Lie-solvable: {lie.terminated} (index {lie.index}); "
                f"[N,N] right nilpotent: {right.terminated} (index {right.index})"
            )
            if lie.terminated == right.terminated:
                checks["T1"] = CheckResult(PASS, detail)
            else:
                checks["T1"] = CheckResult(FAIL, f"{detail}; {T1_DEFECT}", [lie.index, right.index])

    derived = derived_series(A, N)
    right_n = right_power_series(A, N)
    square = power_series(A, product_space(A, N, N))
    trio = (derived.terminated, right_n.terminated, square.terminated)
    facts.update(solvable=trio[0], right_nilpotent=trio[1], square_nilpotent=trio[2])
    detail = f"solvable={trio[0]}, right nilpotent={trio[1]}, N^2 nilpotent={trio[2]}"
    checks["SZ"] = CheckResult(PASS, detail) if len(set(trio)) == 1 else CheckResult(FAIL, detail, list(trio))

    return SuiteResult({k: checks[k] for k in CHECK_IDS}, facts)


def default_corpus(seed: int = DEFAULT_SEED, gelfand_dorfman_count: int = 50) -> list[dict]:
    """Construction descriptors for the standard verification run."""
    items: list[dict] = [{"name": "example1", "field": "Q"}]
    items += [{"name": "truncated-witt", "d": d, "field": "Q"} for d in range(2, 9)]
    items += [{"name": "mishchenko", "d": d, "field": "Q"} for d in range(1, 9)]
    items += [{"name": "binomial-mishchenko", "d": d, "field": f"F{p}"} for p in (2, 3, 5, 7) for d in range(1, 9)]
    rng = random.Random(seed)
    items += [{"name": "gelfand-dorfman", "seed": rng.randrange(2**32), "field": "Q"} for _ in range(gelfand_dorfman_count)]
    return items


def describe_item(desc: dict) -> str:
    parts = [desc.get("name", "?")]
    for key in ("d", "seed", "field", "path"):
        if key in desc:
            parts.append(f"{key}={desc[key]}")
    if "perturb" in desc:
        parts.append(f"perturb={desc['perturb']}")
    return " ".join(parts)


def perturb(A: Algebra, i: int, j: int, k: int, delta) -> Algebra:
    """Copy of ``A`` with ``c_ij^k`` increased by ``delta``."""
    table = {key: dict(row) for key, row in A.table.items()}
    row = table.setdefault((i, j), {})
    row[k] = row.get(k, A.field.zero) + A.field(delta)
    return make_algebra(
        {"field": A.field, "dim": A.dim, "basis": list(A.labels), "table": {key: list(r.items()) for key, r in table.items()}}
    )


def build_item(desc: dict) -> Algebra:
    if "algebra" in desc:
        A = desc["algebra"]
    elif "path" in desc:
        from .io import read_definition

        A = read_definition(desc["path"])
    else:
        A = build(desc["name"], d=desc.get("d"), field=desc.get("field", "Q"), seed=desc.get("seed"))
    if "perturb" in desc:
        A = perturb(A, *desc["perturb"])
    return A


@dataclass
class ItemResult:
    label: str
    status: str  # "ok" | "fail" | "error"
    suite: SuiteResult | None = None
    error: str | None = None

    def to_dict(self) -> dict:
        d: dict = {"item": self.label, "status": self.status}
        if self.suite is not None:
            d.update(self.suite.to_dict())
        if self.error is not None:
            d["error"] = self.error
        return d


@dataclass
class CorpusReport:
    items: list[ItemResult]
    seed: int | None = None

    @property
    def failures(self) -> int:
        return sum(1 for it in self.items if it.status != "ok")

    @property
    def exit_code(self) -> int:
        return 0 if self.failures == 0 else 1

    def counts(self) -> dict:
        out = {cid: {PASS: 0, FAIL: 0, HYPOTHESIS: 0, NOT_APPLICABLE: 0} for cid in CHECK_IDS}
        for it in self.items:
            if it.suite:
                for cid, c in it.suite.checks.items():
                    out[cid][c.status] += 1
        return out

    def metabelian_bounds(self) -> dict:
        a = [it.suite.facts["associator_power_index"] for it in self.items if it.suite and "associator_power_index" in it.suite.facts]
        c = [it.suite.facts["commutator_power_index"] for it in self.items if it.suite and "commutator_power_index" in it.suite.facts]
        return {
            "instances": len(a),
            "max_associator_power_index": max(a, default=None),
            "max_commutator_power_index": max(c, default=None),
            "associator_bound_attained": 3 in a,
            "commutator_bound_attained": 4 in c,
        }

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "items": [it.to_dict() for it in self.items],
            "counts": self.counts(),
            "failures": self.failures,
            "metabelian_bounds": self.metabelian_bounds(),
        }


def run_corpus(specs: Sequence[dict], *, seed: int | None = None, workers: int = 1, force: bool = False) -> CorpusReport:
    items = []
    for desc in specs:
        label = describe_item(desc)
        try:
            A = build_item(desc)
            suite = run_suite(A, workers=workers, force=force)
        except NotNovikovError as exc:
            items.append(ItemResult(label, "fail", error=str(exc)))
            continue
        except (ValueError, OSError) as exc:
            items.append(ItemResult(label, "error", error=f"construction failed: {exc}"))
            continue
        items.append(ItemResult(label, "ok" if suite.ok else "fail", suite))
    return CorpusReport(items, seed)


def _all_tables(field: Field, dim: int) -> Iterable[Algebra]:
    p = field.p
    slots = [(i, j, k) for i in range(dim) for j in range(dim) for k in range(dim)]
    for values in itertools.product(range(p), repeat=len(slots)):
        table: dict = {}
        for (i, j, k), c in zip(slots, values):
            if c:
                table.setdefault((i, j), []).append((k, c))
        yield make_algebra({"field": field, "dim": dim, "table": table})


def _random_table(field: Field, dim: int, rng: random.Random, density: float = 0.3) -> Algebra:
    table: dict = {}
    for i, j, k in itertools.product(range(dim), repeat=3):
        if rng.random() < density:
            c = rng.randrange(1, field.p) if field.p else rng.choice((-2, -1, 1, 2))
            table.setdefault((i, j), []).append((k, c))
    return make_algebra({"field": field, "dim": dim, "table": table})


def explore_char2(seed: int = DEFAULT_SEED, samples: int = 2000, max_d: int = 6) -> dict:
    """Look for characteristic-2 Novikov algebras where ``[N,N]`` is not an ideal.

    Exhaustive over 2-dimensional GF(2) tables, the binomial constructions
    over GF(2), and ``samples`` random 3-dimensional GF(2) tables.  Nothing
    here is asserted; the counts are reported as found.
    """
    F2 = Field(2)
    rng = random.Random(seed)
    sources: list[tuple[str, Algebra]] = [(f"dim-2 table #{n}", A) for n, A in enumerate(_all_tables(F2, 2))]
    sources += [(f"binomial-truncated-witt d={d}", binomial_truncated_witt(d, F2)) for d in range(1, max_d + 1)]
    sources += [(f"binomial-mishchenko d={d}", binomial_mishchenko(d, F2)) for d in range(1, max_d + 1)]
    sources += [(f"random dim-3 #{n}", _random_table(F2, 3, rng)) for n in range(samples)]
    novikov = 0
    not_ideal: list[str] = []
    not_contained: list[str] = []
    for label, A in sources:
        if not is_novikov(A).holds:
            continue
        novikov += 1
        N = full_space(A)
        comm = commutator_space(A, N, N)
        if not is_ideal(A, comm).holds:
            not_ideal.append(label)
        if not associator_space(A) <= comm:
            not_contained.append(label)
    return {
        "seed": seed,
        "tables_examined": len(sources),
        "novikov": novikov,
        "commutator_space_not_ideal": not_ideal,
        "associators_outside_commutators": not_contained,
    }
