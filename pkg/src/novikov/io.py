"""JSON definition files for algebras.

Layout (keys sorted on output, coefficients as exact strings)::

    {
      "basis": ["a", "b"],
      "dim": 2,
      "field": {"kind": "rationals"},          # or {"kind": "prime-field", "p": 7}
      "table": [{"i": 0, "j": 1, "terms": [{"c": "1", "k": 1}]}]
    }

Table entries are sorted by ``(i, j)``, terms by ``k``, and zero terms are
omitted, so emitting a parsed canonical file reproduces it byte for byte.
"""

from __future__ import annotations

import json
from pathlib import Path

from .algebra import Algebra, AlgebraError, make_algebra
from .scalar import FieldError, make_field

__all__ = ["DefinitionError", "definition_of", "dumps_definition", "loads_definition", "read_definition", "write_definition"]


class DefinitionError(ValueError):
    """Unreadable or malformed definition file."""


def definition_of(A: Algebra) -> dict:
    return {
        "field": A.field.descriptor(),
        "dim": A.dim,
        "basis": list(A.labels),
        "table": [
            {"i": i, "j": j, "terms": [{"k": k, "c": A.field.format(c)} for k, c in row]}
            for (i, j), row in sorted(A.table.items())
        ],
    }


def dumps_definition(A: Algebra) -> str:
    return json.dumps(definition_of(A), indent=2, sort_keys=True) + "\n"


def _require(cond: bool, where: str, msg: str) -> None:
    if not cond:
        raise DefinitionError(f"{where}: {msg}")


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def loads_definition(text: str, source: str = "<string>") -> Algebra:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DefinitionError(f"{source}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    _require(isinstance(doc, dict), source, "top level must be an object")
    for key in ("field", "dim", "table"):
        _require(key in doc, source, f"missing field {key!r}")
    try:
        field = make_field(doc["field"])
    except FieldError as exc:
        raise DefinitionError(f"{source}: field: {exc}") from exc
    _require(_is_int(doc["dim"]) and doc["dim"] >= 1, f"{source}: dim", "must be a positive integer")
    basis = doc.get("basis")
    if basis is not None:
        _require(isinstance(basis, list) and all(isinstance(s, str) for s in basis), f"{source}: basis", "must be a list of strings")
    _require(isinstance(doc["table"], list), f"{source}: table", "must be a list")
    entries = []
    for n, entry in enumerate(doc["table"]):
        where = f"{source}: table[{n}]"
        _require(isinstance(entry, dict), where, "must be an object")
        for key in ("i", "j", "terms"):
            _require(key in entry, where, f"missing field {key!r}")
        _require(_is_int(entry["i"]) and _is_int(entry["j"]), where, "i and j must be integers")
        _require(isinstance(entry["terms"], list), f"{where}.terms", "must be a list")
        terms = []
        for t, term in enumerate(entry["terms"]):
            tw = f"{where}.terms[{t}]"
            _require(isinstance(term, dict) and "k" in term and "c" in term, tw, "needs 'k' and 'c'")
            _require(_is_int(term["k"]), f"{tw}.k", "must be an integer")
            c = term["c"]
            _require(isinstance(c, str) or _is_int(c), f"{tw}.c", "must be a string (or integer); floats are not exact")
            terms.append({"k": term["k"], "c": str(c)})
        entries.append({"i": entry["i"], "j": entry["j"], "terms": terms})
    try:
        return make_algebra({"field": field, "dim": doc["dim"], "basis": basis, "table": entries})
    except AlgebraError as exc:
        raise DefinitionError(f"{source}: {exc}") from exc


def read_definition(path) -> Algebra:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise DefinitionError(f"{path}: {exc.strerror}") from exc
    return loads_definition(text, str(path))


def write_definition(A: Algebra, path) -> None:
    Path(path).write_text(dumps_definition(A))
