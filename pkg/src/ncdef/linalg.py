"""Exact scalars over Q or F_p and dense matrices.

Everything else in the package reduces to rank / kernel / solve computed here.
Scalars are plain Python objects: ``Fraction`` for Q, ``int`` in ``[0, p)``
for F_p.  A :class:`Field` knows how to normalise, print and parse them.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "Field",
    "QQ",
    "GF",
    "Matrix",
    "rref",
    "kernel_basis",
    "solve",
    "cokernel_projection",
]

P_MAX = 2**31


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class Field:
    """Ground field: ``p == 0`` means the rationals, otherwise F_p."""

    p: int = 0

    def __post_init__(self):
        if self.p and (not _is_prime(self.p) or self.p >= P_MAX):
            raise ValueError(f"characteristic must be a prime below 2**31, got {self.p}")

    @property
    def is_finite(self) -> bool:
        return self.p != 0

    @property
    def zero(self):
        return 0 if self.p else Fraction(0)

    @property
    def one(self):
        return 1 if self.p else Fraction(1)

    def __call__(self, x):
        if self.p:
            if isinstance(x, Fraction):
                return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
            return int(x) % self.p
        return Fraction(x)

    def inv(self, x):
        if self.p:
            if x % self.p == 0:
                raise ZeroDivisionError("inverse of zero in F_%d" % self.p)
            return pow(x, -1, self.p)
        if x == 0:
            raise ZeroDivisionError("inverse of zero in Q")
        return 1 / Fraction(x)

    def elements(self):
        if not self.p:
            raise ValueError("Q has no finite element list")
        return range(self.p)

    def random(self, rng: random.Random, bound: int = 5):
        if self.p:
            return rng.randrange(self.p)
        return Fraction(rng.randint(-bound, bound))

    def to_str(self, x) -> str:
        if self.p:
            return str(int(x) % self.p)
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    def parse(self, s) -> object:
        if isinstance(s, int):
            return self(s)
        s = str(s).strip()
        return self(Fraction(s))

    @property
    def name(self) -> str:
        return f"F:{self.p}" if self.p else "Q"

    @classmethod
    def from_name(cls, name: str) -> "Field":
        name = name.strip()
        if name in ("Q", "QQ"):
            return cls(0)
        for prefix in ("F:", "F_", "GF:", "GF", "F"):
            if name.startswith(prefix):
                return cls(int(name[len(prefix):]))
        raise ValueError(f"unknown field {name!r}; use 'Q' or 'F:p'")

    def __repr__(self):
        return self.name


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


class Matrix:
    """Dense immutable matrix over a :class:`Field`.

    ``rows`` is a tuple of tuples of normalised scalars.  Shapes with zero rows
    or columns are allowed and behave as expected under products and stacking.
    """

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field: Field, nrows: int, ncols: int, rows=None, _trusted=False):
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        if rows is None:
            z = field.zero
            rows = tuple((z,) * ncols for _ in range(nrows))
        elif not _trusted:
            rows = tuple(tuple(field(x) for x in r) for r in rows)
            if len(rows) != nrows or any(len(r) != ncols for r in rows):
                raise ValueError(f"entries do not match shape {nrows}x{ncols}")
        self.rows = rows

    # construction -----------------------------------------------------
    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence], ncols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if ncols is None:
            if not rows:
                raise ValueError("ncols required for a matrix with no rows")
            ncols = len(rows[0])
        return cls(field, len(rows), ncols, rows)

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> "Matrix":
        return cls(field, nrows, ncols)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        z, o = field.zero, field.one
        return cls(field, n, n, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)), True)

    @classmethod
    def from_columns(cls, field: Field, cols: Sequence[Sequence], nrows: int) -> "Matrix":
        cols = [list(c) for c in cols]
        return cls(field, nrows, len(cols), [[c[i] for c in cols] for i in range(nrows)])

    @classmethod
    def random(cls, field: Field, nrows: int, ncols: int, rng: random.Random) -> "Matrix":
        return cls(field, nrows, ncols, [[field.random(rng) for _ in range(ncols)] for _ in range(nrows)])

    # basic protocol ---------------------------------------------------
    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, self.rows))

    def __repr__(self):
        body = "; ".join(" ".join(self.field.to_str(x) for x in r) for r in self.rows)
        return f"Matrix<{self.nrows}x{self.ncols} {self.field.name}>[{body}]"

    def tolist(self):
        return [list(r) for r in self.rows]

    def to_strings(self):
        return [[self.field.to_str(x) for x in r] for r in self.rows]

    def column(self, j: int) -> list:
        return [r[j] for r in self.rows]

    def columns(self) -> list[list]:
        return [self.column(j) for j in range(self.ncols)]

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.rows for x in r)

    # arithmetic -------------------------------------------------------
    def _check_field(self, other):
        if other.field != self.field:
            raise ValueError(f"field mismatch: {self.field} vs {other.field}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        p = self.field.p
        if p:
            rows = tuple(tuple((a + b) % p for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows))
        else:
            rows = tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows))
        return Matrix(self.field, self.nrows, self.ncols, rows, True)

    def __neg__(self) -> "Matrix":
        p = self.field.p
        if p:
            rows = tuple(tuple((-a) % p for a in r) for r in self.rows)
        else:
            rows = tuple(tuple(-a for a in r) for r in self.rows)
        return Matrix(self.field, self.nrows, self.ncols, rows, True)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, c) -> "Matrix":
        c = self.field(c)
        p = self.field.p
        if p:
            rows = tuple(tuple((c * a) % p for a in r) for r in self.rows)
        else:
            rows = tuple(tuple(c * a for a in r) for r in self.rows)
        return Matrix(self.field, self.nrows, self.ncols, rows, True)

    def __rmul__(self, c) -> "Matrix":
        return self.scale(c)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        p = self.field.p
        cols = list(zip(*other.rows)) if other.nrows else [()] * other.ncols
        z = self.field.zero
        out = []
        for r in self.rows:
            nz = [(k, a) for k, a in enumerate(r) if a]
            if not nz:
                out.append((z,) * other.ncols)
                continue
            row = []
            for c in cols:
                s = sum(a * c[k] for k, a in nz)
                row.append(s % p if p else s)
            out.append(tuple(row))
        return Matrix(self.field, self.nrows, other.ncols, tuple(out), True)

    def apply(self, vec: Sequence) -> list:
        p = self.field.p
        out = []
        for r in self.rows:
            s = sum(a * b for a, b in zip(r, vec) if a)
            out.append(s % p if p else self.field(s))
        return out

    @property
    def T(self) -> "Matrix":
        rows = tuple(zip(*self.rows)) if self.nrows else tuple(() for _ in range(self.ncols))
        return Matrix(self.field, self.ncols, self.nrows, rows, True)

    def hstack(self, *others: "Matrix") -> "Matrix":
        return hstack(self.field, [self, *others], self.nrows)

    def vstack(self, *others: "Matrix") -> "Matrix":
        return vstack(self.field, [self, *others], self.ncols)

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> "Matrix":
        rows, cols = list(rows), list(cols)
        return Matrix(self.field, len(rows), len(cols), tuple(tuple(self.rows[i][j] for j in cols) for i in rows), True)

    # linear algebra ---------------------------------------------------
    def rref(self):
        return rref(self)

    def rank(self) -> int:
        return len(rref(self)[1])

    def kernel(self) -> "Matrix":
        return kernel_basis(self)

    def inverse(self) -> "Matrix":
        if self.nrows != self.ncols:
            raise ValueError("inverse of a non-square matrix")
        n = self.nrows
        r, piv = rref(self.hstack(Matrix.identity(self.field, n)))
        if piv[:n] != list(range(n)):
            raise ZeroDivisionError("matrix is singular")
        return r.submatrix(range(n), range(n, 2 * n))

    def det(self):
        if self.nrows != self.ncols:
            raise ValueError("det of a non-square matrix")
        return _det(self)

    def is_invertible(self) -> bool:
        return self.nrows == self.ncols and self.rank() == self.nrows


def hstack(field: Field, mats: Sequence[Matrix], nrows: int) -> Matrix:
    for m in mats:
        if m.nrows != nrows:
            raise ValueError("hstack: row counts differ")
    rows = tuple(tuple(x for m in mats for x in m.rows[i]) for i in range(nrows))
    return Matrix(field, nrows, sum(m.ncols for m in mats), rows, True)


def vstack(field: Field, mats: Sequence[Matrix], ncols: int) -> Matrix:
    for m in mats:
        if m.ncols != ncols:
            raise ValueError("vstack: column counts differ")
    rows = tuple(r for m in mats for r in m.rows)
    return Matrix(field, len(rows), ncols, rows, True)


def block_diag(field: Field, mats: Sequence[Matrix]) -> Matrix:
    n = sum(m.nrows for m in mats)
    k = sum(m.ncols for m in mats)
    z = field.zero
    out = []
    off = 0
    for m in mats:
        for r in m.rows:
            out.append((z,) * off + tuple(r) + (z,) * (k - off - m.ncols))
        off += m.ncols
    return Matrix(field, n, k, tuple(out), True)


def _rref_rows(field: Field, rows: list[list], ncols: int):
    """In-place Gauss-Jordan on a list of mutable rows; returns pivot columns."""
    p = field.p
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = field.inv(rows[r][c])
        if p:
            rows[r] = [(x * inv) % p for x in rows[r]]
        else:
            rows[r] = [x * inv for x in rows[r]]
        prow = rows[r]
        nzc = [j for j in range(c, ncols) if prow[j]]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    row = rows[i]
                    if p:
                        for j in nzc:
                            row[j] = (row[j] - f * prow[j]) % p
                    else:
                        for j in nzc:
                            row[j] = row[j] - f * prow[j]
        pivots.append(c)
        r += 1
    return pivots


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the strictly increasing pivot columns."""
    rows = [list(r) for r in m.rows]
    piv = _rref_rows(m.field, rows, m.ncols)
    return Matrix(m.field, m.nrows, m.ncols, tuple(tuple(r) for r in rows), True), piv


def _det(m: Matrix):
    f = m.field
    p = f.p
    rows = [list(r) for r in m.rows]
    n = m.nrows
    det = f.one
    for c in range(n):
        piv = next((i for i in range(c, n) if rows[i][c]), None)
        if piv is None:
            return f.zero
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            det = -det
        d = rows[c][c]
        det = det * d % p if p else det * d
        inv = f.inv(d)
        for i in range(c + 1, n):
            g = rows[i][c]
            if g:
                g = g * inv
                for j in range(c, n):
                    rows[i][j] = rows[i][j] - g * rows[c][j]
                if p:
                    rows[i] = [x % p for x in rows[i]]
    return det % p if p else det


def kernel_basis(m: Matrix) -> Matrix:
    """Columns form a basis of the right null space of ``m``."""
    f = m.field
    r, piv = rref(m)
    pivset = set(piv)
    free = [j for j in range(m.ncols) if j not in pivset]
    cols = []
    for fj in free:
        v = [f.zero] * m.ncols
        v[fj] = f.one
        for i, pj in enumerate(piv):
            v[pj] = f(-r.rows[i][fj])
        cols.append(v)
    return Matrix.from_columns(f, cols, m.ncols)


def solve(m: Matrix, b: Matrix):
    """Solve ``m @ x == b``.

    Returns ``(x, K)`` with a particular solution ``x`` and a kernel basis
    ``K`` of ``m``, or ``(None, K)`` when the system is inconsistent.
    """
    if b.nrows != m.nrows:
        raise ValueError(f"solve: b has {b.nrows} rows, m has {m.nrows}")
    f = m.field
    aug = m.hstack(b)
    r, piv = rref(aug)
    K = kernel_basis(m)
    if piv and piv[-1] >= m.ncols:
        return None, K
    x = [[f.zero] * b.ncols for _ in range(m.ncols)]
    for i, pj in enumerate(piv):
        for c in range(b.ncols):
            x[pj][c] = r.rows[i][m.ncols + c]
    return Matrix(f, m.ncols, b.ncols, tuple(tuple(row) for row in x), True), K


def solve_vector(m: Matrix, b: Sequence):
    """Particular solution of ``m x = b`` as a list, or ``None``."""
    x, _ = solve(m, Matrix(m.field, len(b), 1, [[v] for v in b]))
    return None if x is None else x.column(0)


def cokernel_projection(m: Matrix) -> tuple[Matrix, int]:
    """A full-row-rank ``q`` with ``q @ m == 0`` and ``rows(q) = rows(m) - rank(m)``."""
    q = kernel_basis(m.T).T
    return q, q.nrows


def row_space_basis(m: Matrix) -> Matrix:
    r, piv = rref(m)
    return r.submatrix(range(len(piv)), range(m.ncols))


def column_space_basis(m: Matrix) -> Matrix:
    """Columns of ``m`` at pivot positions: a basis of the image."""
    _, piv = rref(m)
    return m.submatrix(range(m.nrows), piv)


def complement_basis(sub: Matrix, n: int) -> Matrix:
    """Standard basis vectors completing the column space of ``sub`` to F^n."""
    f = sub.field
    _, piv = rref(sub.T)
    pivset = set(piv)
    cols = []
    for j in range(n):
        if j not in pivset:
            e = [f.zero] * n
            e[j] = f.one
            cols.append(e)
    return Matrix.from_columns(f, cols, n)


def vec_to_col(field: Field, v: Sequence) -> Matrix:
    return Matrix(field, len(v), 1, tuple((field(x),) for x in v), True)
