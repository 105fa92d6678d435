"""Exact dense linear algebra over the rationals or a prime field.

Matrices are lists of rows.  Entries are ``int``/``Fraction`` for the
rational field and reduced ``int`` for a prime field.  Everything here is
small and dense, so plain Python lists beat pulling in a CAS.
"""

from __future__ import annotations

import os
from fractions import Fraction
from typing import Iterable, Sequence

Vector = list
Matrix = list


class Field:
    """A coefficient field: ``p is None`` means the rationals."""

    def __init__(self, p: int | None = None):
        self.p = p

    @property
    def name(self) -> str:
        return "rat" if self.p is None else f"fp{self.p}"

    def __repr__(self):
        return f"Field({self.name})"

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __call__(self, x):
        """Coerce an int, Fraction or "p/q" string into the field."""
        if isinstance(x, str):
            x = Fraction(x)
        if self.p is None:
            if isinstance(x, Fraction) and x.denominator == 1:
                return x.numerator
            return x
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return x % self.p

    def inv(self, x):
        if self.p is None:
            return Fraction(1, x) if isinstance(x, int) else 1 / x
        return pow(x, -1, self.p)

    def reduce(self, x):
        if self.p is None:
            if isinstance(x, Fraction) and x.denominator == 1:
                return x.numerator
            return x
        return x % self.p

    def to_str(self, x) -> str:
        return str(self.reduce(x))


RATIONALS = Field(None)
FP32003 = Field(32003)


def field_from_name(name: str | None) -> Field:
    if name is None or name in ("", "rat", "q", "Q"):
        return RATIONALS
    if name.startswith("fp"):
        return Field(int(name[2:]))
    raise ValueError(f"unknown field backend {name!r}")


def default_field() -> Field:
    """Field selected by the ``MESHCT_FIELD`` environment variable."""
    return field_from_name(os.environ.get("MESHCT_FIELD", "rat"))


def zeros(r: int, c: int) -> Matrix:
    return [[0] * c for _ in range(r)]


def identity(n: int) -> Matrix:
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = 1
    return m


def transpose(a: Matrix, nrows: int | None = None, ncols: int | None = None) -> Matrix:
    if not a:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*a)]


def matmul(a: Matrix, b: Matrix, field: Field, ncols: int | None = None) -> Matrix:
    """Product of an r×n and an n×c matrix.

    Empty vertex spaces are common, so when ``b`` has no rows the column
    count must be given as ``ncols``.
    """
    r = len(a)
    c = len(b[0]) if b else (ncols or 0)
    if r == 0:
        return []
    if not b:
        return [[0] * c for _ in range(r)]
    bt = list(zip(*b)) if c else []
    out = []
    p = field.p
    for row in a:
        nz = [(k, x) for k, x in enumerate(row) if x]
        new = []
        for col in bt:
            s = 0
            for k, x in nz:
                y = col[k]
                if y:
                    s += x * y
            new.append(s % p if p else field.reduce(s))
        out.append(new)
    return out


def matvec(a: Matrix, v: Vector, field: Field) -> Vector:
    p = field.p
    out = []
    for row in a:
        s = 0
        for x, y in zip(row, v):
            if x and y:
                s += x * y
        out.append(s % p if p else s)
    return out


def is_zero_matrix(a: Matrix, field: Field) -> bool:
    return all(field.reduce(x) == 0 for row in a for x in row)


def rref(rows: Sequence[Sequence], ncols: int, field: Field):
    """Reduced row echelon form.

    Returns ``(reduced_rows, pivot_columns)`` with one reduced row per pivot.
    """
    p = field.p
    work = []
    for r in rows:
        r = [field.reduce(x) for x in r]
        if any(r):
            work.append(r)
    pivots: list[int] = []
    done: list[list] = []
    col = 0
    while work and col < ncols:
        pr = None
        for idx, r in enumerate(work):
            if r[col]:
                pr = idx
                break
        if pr is None:
            col += 1
            continue
        prow = work.pop(pr)
        inv = field.inv(prow[col])
        if p:
            prow = [x * inv % p for x in prow]
        else:
            prow = [x * inv for x in prow]
        nz = [k for k in range(col, ncols) if prow[k]]
        for bucket in (work, done):
            for r in bucket:
                c = r[col]
                if c:
                    if p:
                        for k in nz:
                            r[k] = (r[k] - c * prow[k]) % p
                    else:
                        for k in nz:
                            r[k] = r[k] - c * prow[k]
        if not p:
            prow = [field.reduce(x) for x in prow]
        done.append(prow)
        pivots.append(col)
        work = [r for r in work if any(r)]
        col += 1
    if not p:
        done = [[field.reduce(x) for x in r] for r in done]
    return done, pivots


def rank(rows: Sequence[Sequence], ncols: int, field: Field) -> int:
    return len(rref(rows, ncols, field)[1])


def nullspace(rows: Sequence[Sequence], ncols: int, field: Field) -> list[Vector]:
    """Basis of {x : A x = 0} as a list of vectors."""
    red, piv = rref(rows, ncols, field)
    pivset = set(piv)
    free = [c for c in range(ncols) if c not in pivset]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for r, pc in zip(red, piv):
            if r[f]:
                v[pc] = field.reduce(-r[f])
        basis.append(v)
    return basis


def span_basis(vectors: Iterable[Sequence], dim: int, field: Field) -> list[Vector]:
    """An echelon basis of the span of ``vectors``."""
    red, _ = rref(list(vectors), dim, field)
    return red


def complement_basis(sub: Sequence[Sequence], dim: int, field: Field) -> list[Vector]:
    """Standard unit vectors spanning a complement of ``span(sub)``."""
    _, piv = rref(list(sub), dim, field)
    pivset = set(piv)
    out = []
    for c in range(dim):
        if c not in pivset:
            v = [0] * dim
            v[c] = 1
            out.append(v)
    return out


def extend_complement(sub: Sequence[Sequence], candidates: Sequence[Sequence], dim: int,
                      field: Field) -> list[int]:
    """Indices of ``candidates`` extending ``sub`` to a basis of their joint span."""
    chosen = []
    current = [list(v) for v in sub]
    r = rank(current, dim, field)
    for idx, c in enumerate(candidates):
        trial = current + [list(c)]
        r2 = rank(trial, dim, field)
        if r2 > r:
            current = trial
            r = r2
            chosen.append(idx)
    return chosen


def solve_in_basis(basis: Sequence[Sequence], vectors: Sequence[Sequence], dim: int,
                   field: Field) -> list[Vector] | None:
    """Coordinates of each vector with respect to a linearly independent basis.

    Returns ``None`` when some vector is outside the span.
    """
    n = len(basis)
    if not vectors:
        return []
    # augmented system: columns are basis vectors, solve B c = v for all v
    rows = []
    for i in range(dim):
        rows.append([basis[j][i] for j in range(n)] + [v[i] for v in vectors])
    red, piv = rref(rows, n + len(vectors), field)
    if any(pc >= n for pc in piv):
        return None
    if len(piv) != n:
        raise ValueError("basis is not linearly independent")
    out = []
    for k in range(len(vectors)):
        coords = [0] * n
        for r, pc in zip(red, piv):
            coords[pc] = r[n + k]
        out.append(coords)
    return out


def inverse(a: Matrix, field: Field) -> Matrix | None:
    n = len(a)
    if n == 0:
        return []
    rows = [list(a[i]) + [1 if j == i else 0 for j in range(n)] for i in range(n)]
    red, piv = rref(rows, 2 * n, field)
    if piv[:n] != list(range(n)) or len(piv) < n:
        return None
    return [r[n:] for r in red[:n]]


def to_str(x) -> str:
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)
    return str(x)
