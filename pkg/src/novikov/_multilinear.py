"""Exhaustive evaluation of multilinear bodies on basis tuples.

A monomial is a full binary tree: a leaf is a variable number (``int``,
1-based) and an inner node is a pair ``(left, right)`` meaning the product
``left * right``.  A body is a tuple of ``(tree, Fraction)`` terms.

The search over all ``n**k`` basis tuples is vectorized with numpy.  Prime
fields are evaluated with int64 residues.  Rational tables are cleared of
denominators and evaluated modulo enough word-sized primes that their
product exceeds twice an a priori bound on every evaluation, so "zero modulo
every prime" means zero over the integers.  The search only locates the
least failing tuple; the caller recomputes the value there with exact
scalars.
"""

from __future__ import annotations

import math
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from functools import reduce
from typing import Callable, Iterable, Sequence, Union

import numpy as np

Tree = Union[int, tuple]
Body = tuple  # tuple[tuple[Tree, Fraction], ...]

_INT64_LIMIT = 2**63 - 1
_CHUNK_ENTRIES = 1 << 22
_WORD_PRIME_CEILING = 1 << 26


def leaves(t: Tree) -> tuple[int, ...]:
    if isinstance(t, int):
        return (t,)
    return leaves(t[0]) + leaves(t[1])


def tree_key(t: Tree):
    if isinstance(t, int):
        return (0, t)
    return (1, tree_key(t[0]), tree_key(t[1]))


def degree(t: Tree) -> int:
    return 1 if isinstance(t, int) else degree(t[0]) + degree(t[1])


def format_tree(t: Tree, names: Sequence[str] | None = None) -> str:
    if isinstance(t, int):
        return names[t - 1] if names else f"x{t}"
    left = format_tree(t[0], names)
    right = format_tree(t[1], names)
    if not isinstance(t[0], int):
        left = f"({left})"
    if not isinstance(t[1], int):
        right = f"({right})"
    return f"{left}*{right}"


def evaluate(body: Body, values: Sequence, mul: Callable, zero):
    """Evaluate ``body`` on concrete values (``values[v-1]`` for variable v)."""
    memo: dict = {}

    def ev(t):
        if isinstance(t, int):
            return values[t - 1]
        if t not in memo:
            memo[t] = mul(ev(t[0]), ev(t[1]))
        return memo[t]

    total = zero
    for t, c in body:
        total = total + c * ev(t)
    return total


def _primes_below(ceiling: int) -> Iterable[int]:
    q = ceiling - 1
    while q > 2:
        if all(q % f for f in range(3, math.isqrt(q) + 1, 2)) and q % 2:
            yield q
        q -= 1


_PRIME_CACHE: list[int] = []


def _word_primes(count: int) -> list[int]:
    if len(_PRIME_CACHE) < count:
        gen = _primes_below(_WORD_PRIME_CEILING if not _PRIME_CACHE else _PRIME_CACHE[-1])
        while len(_PRIME_CACHE) < count:
            _PRIME_CACHE.append(next(gen))
    return _PRIME_CACHE[:count]


def _dtype_for(q: int, n: int):
    return np.int64 if n * (q - 1) ** 2 < _INT64_LIMIT else object


class _Residues:
    """The structure tensor and body coefficients reduced modulo ``q``."""

    def __init__(self, n: int, entries: dict, coeffs: dict, q: int):
        self.n = n
        self.q = q
        self.dtype = _dtype_for(q, n)
        T = np.zeros((n, n, n), dtype=self.dtype)
        for (i, j, k), c in entries.items():
            T[i, j, k] = c % q
        self.T = T.reshape(n, n * n)
        self.coeffs = {t: c % q for t, c in coeffs.items()}


class _Evaluator:
    """Tensor evaluation of linear combinations of trees over one variable set.

    A value over the sorted variables ``V`` has shape ``(s_v for v in V) + (n,)``
    where ``s_v = n`` except for variable 1, which is restricted to the current
    chunk ``[lo, hi)``.
    """

    def __init__(self, res: _Residues):
        self.res = res
        self.n = res.n
        self.q = res.q
        self.lo, self.hi = 0, res.n
        self.cache: dict = {}

    def set_chunk(self, lo: int, hi: int) -> None:
        self.lo, self.hi = lo, hi
        self.cache = {key: val for key, val in self.cache.items() if 1 not in key[0]}

    def _size(self, v: int) -> int:
        return self.hi - self.lo if v == 1 else self.n

    def _leaf(self, v: int) -> np.ndarray:
        eye = np.eye(self.n, dtype=self.res.dtype)
        return eye[self.lo:self.hi] if v == 1 else eye

    def _product(self, left: np.ndarray, right: np.ndarray) -> np.ndarray:
        n, q = self.n, self.q
        sl, sr = left.shape[:-1], right.shape[:-1]
        a, b = math.prod(sl), math.prod(sr)
        tmp = (left.reshape(a, n) @ self.res.T) % q
        tmp = tmp.reshape(a, n, n).transpose(0, 2, 1)
        out = (tmp @ right.reshape(b, n).T) % q
        return out.transpose(0, 2, 1).reshape(sl + sr + (n,))

    def tree(self, t: Tree) -> np.ndarray:
        if isinstance(t, int):
            return self._leaf(t)
        return self.comb(((t, 1),))

    def comb(self, terms: tuple) -> np.ndarray:
        """Sum of ``c * tree`` over ``terms``; all trees share one variable set."""
        V = tuple(sorted(leaves(terms[0][0])))
        key = (V, terms)
        hit = self.cache.get(key)
        if hit is not None:
            return hit
        q = self.q
        shape = tuple(self._size(v) for v in V) + (self.n,)
        if len(V) == 1:
            c = sum(c for _, c in terms) % q
            out = (self._leaf(V[0]) * c) % q
            self.cache[key] = out
            return out
        groups: dict = defaultdict(list)
        for t, c in terms:
            VL = tuple(sorted(leaves(t[0])))
            VR = tuple(sorted(leaves(t[1])))
            groups[VL, VR].append((c, t[0], t[1]))
        out = np.zeros(shape, dtype=self.res.dtype)
        for (VL, VR), items in groups.items():
            by_left: dict = defaultdict(lambda: defaultdict(int))
            by_right: dict = defaultdict(lambda: defaultdict(int))
            for c, L, R in items:
                by_left[L][R] += c
                by_right[R][L] += c
            perm = [(VL + VR).index(v) for v in V] + [len(V)]
            if len(by_left) <= len(by_right):
                pairs = ((self.tree(L), self._comb_of(rs)) for L, rs in by_left.items())
            else:
                pairs = ((self._comb_of(ls), self.tree(R)) for R, ls in by_right.items())
            for left, right in pairs:
                if left is None or right is None:
                    continue
                out = out + self._product(left, right).transpose(perm)
            out %= q
        self.cache[key] = out
        return out

    def _comb_of(self, coeffs: dict):
        q = self.q
        terms = tuple(sorted(((t, c % q) for t, c in coeffs.items() if c % q), key=lambda tc: tree_key(tc[0])))
        return self.comb(terms) if terms else None


def _structure_entries(algebra) -> tuple[dict, int]:
    """Integer structure constants ``{(i, j, k): c}`` and the denominator scale."""
    if algebra.field.p is not None:
        return {(i, j, k): c.value for (i, j), row in algebra.table.items() for k, c in row}, 1
    scale = 1
    for row in algebra.table.values():
        for _, c in row:
            scale = math.lcm(scale, c.denominator)
    entries = {(i, j, k): int(c * scale) for (i, j), row in algebra.table.items() for k, c in row}
    return entries, scale


def _integer_coefficients(body: Body, field) -> dict:
    if field.p is not None:
        return {t: field(c).value for t, c in body}
    scale = reduce(math.lcm, (c.denominator for _, c in body), 1)
    return {t: int(c * scale) for t, c in body}


def _moduli(algebra, body: Body, entries: dict, coeffs: dict, k: int) -> list[int]:
    if algebra.field.p is not None:
        return [algebra.field.p]
    row_norm: dict = defaultdict(int)
    for (i, j, _), c in entries.items():
        row_norm[i, j] += abs(c)
    s = max(row_norm.values(), default=0)
    bound = sum(abs(c) for c in coeffs.values()) * s ** (k - 1)
    count, modulus = 0, 1
    primes: list[int] = []
    while modulus <= 2 * bound or not primes:
        count += 1
        primes = _word_primes(count)
        modulus = math.prod(primes)
    return primes


def _search(evaluators: list, terms_per_q: list, n: int, k: int, lo: int, hi: int):
    per_x1 = n ** k  # entries for one value of x1 (n**(k-1) tuples times n coords)
    step = max(1, _CHUNK_ENTRIES // per_x1)
    for start in range(lo, hi, step):
        stop = min(hi, start + step)
        mask = None
        for ev, terms in zip(evaluators, terms_per_q):
            ev.set_chunk(start, stop)
            if not terms:
                continue
            val = ev.comb(terms)
            rows = val.reshape(-1, n).any(axis=1)
            mask = rows if mask is None else (mask | rows)
        if mask is not None and mask.any():
            flat = int(np.flatnonzero(mask)[0])
            idx = np.unravel_index(flat, (stop - start,) + (n,) * (k - 1))
            return (start + int(idx[0]),) + tuple(int(i) for i in idx[1:])
    return None


def first_failure(algebra, body: Body, k: int, workers: int = 1):
    """Least basis tuple (x1 slowest) where ``body`` is nonzero, or ``None``."""
    n = algebra.dim
    if not body or k == 0:
        return None
    entries, _ = _structure_entries(algebra)
    coeffs = _integer_coefficients(body, algebra.field)
    moduli = _moduli(algebra, body, entries, coeffs, k)

    def make():
        evs, termlists = [], []
        for q in moduli:
            res = _Residues(n, entries, coeffs, q)
            evs.append(_Evaluator(res))
            terms = tuple(sorted(((t, c) for t, c in res.coeffs.items() if c), key=lambda tc: tree_key(tc[0])))
            termlists.append(terms)
        return evs, termlists

    workers = max(1, min(workers, n))
    bounds = [(n * w // workers, n * (w + 1) // workers) for w in range(workers)]
    if workers == 1:
        evs, termlists = make()
        return _search(evs, termlists, n, k, 0, n)

    def run(span):
        evs, termlists = make()
        return _search(evs, termlists, n, k, *span)

    with ThreadPoolExecutor(max_workers=workers) as pool:
        found = list(pool.map(run, bounds))
    return next((f for f in found if f is not None), None)
