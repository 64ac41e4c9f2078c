"""Sparse exact Gaussian elimination over Q(i).

Vectors are dicts ``{column: GaussianRational}`` with integer columns and no
zero entries.  Pivots are always the smallest column of a row, so every
result is the unique reduced row echelon form for the given column order and
does not depend on the order in which equations arrive.
"""

from __future__ import annotations

from typing import Hashable, Iterable, Sequence

from .scalars import ONE, GaussianRational

Vector = dict  # int -> GaussianRational

RHS = 1 << 62  # augmented column, sorts after every variable


class Inconsistent(ArithmeticError):
    """The system has no solution."""


class Echelon:
    """A row space kept in reduced row echelon form while rows are added."""

    def __init__(self):
        self.rows: dict[int, Vector] = {}

    def __len__(self):
        return len(self.rows)

    def reduce(self, row: Vector) -> Vector:
        """Remainder of ``row`` after eliminating every pivot column."""
        out = dict(row)
        for c in [c for c in row if c in self.rows]:
            f = out.pop(c)
            for k, v in self.rows[c].items():
                if k == c:
                    continue
                s = out.get(k)
                s = -(f * v) if s is None else s - f * v
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return out

    def add(self, row: Vector) -> int | None:
        """Insert a row; return its new pivot column, or None if it was dependent."""
        out = self.reduce(row)
        if not out:
            return None
        p = min(out)
        inv = out[p].inverse()
        if inv != ONE:
            out = {k: v * inv for k, v in out.items()}
        for r in self.rows.values():
            f = r.get(p)
            if f is None:
                continue
            for k, v in out.items():
                s = r.get(k)
                s = -(f * v) if s is None else s - f * v
                if s:
                    r[k] = s
                else:
                    del r[k]
        self.rows[p] = out
        return p

    def contains(self, row: Vector) -> bool:
        return not self.reduce(row)

    def basis(self) -> list[Vector]:
        return [dict(self.rows[p]) for p in sorted(self.rows)]


def rref(vectors: Iterable[Vector]) -> list[Vector]:
    """Reduced row echelon basis of the span of ``vectors``."""
    e = Echelon()
    for v in vectors:
        e.add(v)
    return e.basis()


def rank(vectors: Iterable[Vector]) -> int:
    return len(rref(vectors))


def same_span(a: Iterable[Vector], b: Iterable[Vector]) -> bool:
    return rref(a) == rref(b)


def solve(equations: Iterable[tuple[Vector, GaussianRational]], ncols: int):
    """Solve ``sum_c row[c] * x_c = rhs`` for every (row, rhs) pair.

    Returns ``(particular, kernel)``: the solution with every free variable set
    to zero and the reduced echelon basis of the homogeneous solution space.
    Raises :class:`Inconsistent` when there is no solution.
    """
    e = Echelon()
    for row, rhs in equations:
        if rhs:
            row = dict(row)
            row[RHS] = rhs
        p = e.add(row)
        if p == RHS:
            raise Inconsistent("the linear system has no solution")
    particular = {}
    for p, row in e.rows.items():
        v = row.get(RHS)
        if v:
            particular[p] = v
    return particular, _kernel(e, ncols)


def nullspace(equations: Iterable[Vector], ncols: int) -> list[Vector]:
    """Reduced echelon basis of {x : row . x = 0 for every row}."""
    e = Echelon()
    for row in equations:
        e.add(row)
    return _kernel(e, ncols)


def _kernel(e: Echelon, ncols: int) -> list[Vector]:
    free_rows: dict[int, list[tuple[int, GaussianRational]]] = {}
    for p, row in e.rows.items():
        for k, v in row.items():
            if k != p and k != RHS:
                free_rows.setdefault(k, []).append((p, v))
    vectors = []
    for f in range(ncols):
        if f in e.rows:
            continue
        vec = {f: ONE}
        for p, v in free_rows.get(f, ()):
            vec[p] = -v
        vectors.append(vec)
    return rref(vectors)


def intersect(a: Sequence[Vector], b: Sequence[Vector], ncols: int) -> list[Vector]:
    """Reduced echelon basis of span(a) ∩ span(b) (Zassenhaus)."""
    e = Echelon()
    for v in a:
        row = dict(v)
        row.update((k + ncols, c) for k, c in v.items())
        e.add(row)
    for v in b:
        e.add(dict(v))
    out = []
    for p, row in e.rows.items():
        if p >= ncols:
            out.append({k - ncols: c for k, c in row.items()})
    return rref(out)


class Indexer:
    """Bijection between hashable keys and dense integer columns.

    Keys are numbered in the order given, which must be the canonical order.
    """

    def __init__(self, keys: Iterable[Hashable] = ()):
        self.keys: list = []
        self.index: dict = {}
        for k in keys:
            self.add(k)

    def add(self, key) -> int:
        c = self.index.get(key)
        if c is None:
            c = self.index[key] = len(self.keys)
            self.keys.append(key)
        return c

    def __len__(self):
        return len(self.keys)

    def __contains__(self, key):
        return key in self.index

    def encode(self, mapping) -> Vector:
        return {self.index[k]: v for k, v in mapping.items() if v}

    def decode(self, vec: Vector) -> dict:
        return {self.keys[c]: v for c, v in vec.items()}
