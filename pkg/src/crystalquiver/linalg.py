"""Exact linear algebra over the rationals.

A small dense matrix type backed by :class:`fractions.Fraction`.  Shapes with a
zero dimension are first-class, since graded vector spaces of dimension zero
show up constantly in quiver data.
"""

from fractions import Fraction


def to_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("floats are not accepted in exact arithmetic")
    return Fraction(x)


class Matrix:
    """Immutable rational matrix with explicit shape."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows, nrows=None, ncols=None):
        rows = tuple(tuple(to_fraction(x) for x in r) for r in rows)
        if nrows is None:
            nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if len(rows) != nrows or any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix or shape mismatch")
        self.rows = rows
        self.nrows = nrows
        self.ncols = ncols

    @classmethod
    def _raw(cls, rows, nrows, ncols):
        m = cls.__new__(cls)
        m.rows = rows
        m.nrows = nrows
        m.ncols = ncols
        return m

    @classmethod
    def zeros(cls, nrows, ncols):
        z = Fraction(0)
        return cls._raw(tuple((z,) * ncols for _ in range(nrows)), nrows, ncols)

    @classmethod
    def identity(cls, n):
        return cls._raw(
            tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)), n, n
        )

    @classmethod
    def from_columns(cls, columns, nrows):
        columns = [tuple(to_fraction(x) for x in c) for c in columns]
        return cls._raw(tuple(tuple(c[r] for c in columns) for r in range(nrows)), nrows, len(columns))

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, idx):
        r, c = idx
        return self.rows[r][c]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, self.rows))

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self.rows)
        return f"Matrix({self.nrows}x{self.ncols}: [{body}])"

    def columns(self):
        return [tuple(self.rows[r][c] for r in range(self.nrows)) for c in range(self.ncols)]

    def transpose(self):
        return Matrix._raw(tuple(zip(*self.rows)) if self.nrows else tuple(() for _ in range(self.ncols)),
                           self.ncols, self.nrows)

    @property
    def T(self):
        return self.transpose()

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        return Matrix._raw(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)),
            self.nrows, self.ncols,
        )

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, k):
        k = to_fraction(k)
        return Matrix._raw(tuple(tuple(k * a for a in r) for r in self.rows), self.nrows, self.ncols)

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = other.columns()
        zero = Fraction(0)
        rows = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = zero
                for a, b in zip(r, c):
                    if a and b:
                        acc += a * b
                row.append(acc)
            rows.append(tuple(row))
        return Matrix._raw(tuple(rows), self.nrows, other.ncols)

    def apply(self, vec):
        return tuple(sum((a * b for a, b in zip(r, vec)), Fraction(0)) for r in self.rows)

    def trace(self):
        if self.nrows != self.ncols:
            raise ValueError("trace of a non-square matrix")
        return sum((self.rows[i][i] for i in range(self.nrows)), Fraction(0))

    def is_zero(self):
        return all(not x for r in self.rows for x in r)

    def rank(self):
        return len(rref(self)[1])

    def det(self):
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        m = [list(r) for r in self.rows]
        n = self.nrows
        det = Fraction(1)
        for c in range(n):
            p = next((r for r in range(c, n) if m[r][c]), None)
            if p is None:
                return Fraction(0)
            if p != c:
                m[c], m[p] = m[p], m[c]
                det = -det
            det *= m[c][c]
            inv = 1 / m[c][c]
            for r in range(c + 1, n):
                f = m[r][c] * inv
                if f:
                    m[r] = [a - f * b for a, b in zip(m[r], m[c])]
        return det

    def inverse(self):
        if self.nrows != self.ncols:
            raise ValueError("inverse of a non-square matrix")
        n = self.nrows
        aug = hstack([self, Matrix.identity(n)])
        red, pivots = rref(aug)
        if pivots[:n] != list(range(n)):
            raise ZeroDivisionError("singular matrix")
        return Matrix._raw(tuple(r[n:] for r in red.rows[:n]), n, n)

    def submatrix(self, rows=None, cols=None):
        rows = range(self.nrows) if rows is None else list(rows)
        cols = range(self.ncols) if cols is None else list(cols)
        return Matrix._raw(tuple(tuple(self.rows[r][c] for c in cols) for r in rows), len(rows), len(cols))

    def to_strings(self):
        return [[str(x) for x in r] for r in self.rows]

    @classmethod
    def from_strings(cls, data, nrows, ncols):
        if nrows == 0 or ncols == 0:
            return cls.zeros(nrows, ncols)
        return cls(data, nrows, ncols)


def hstack(mats, nrows=None):
    if not mats:
        return Matrix.zeros(nrows or 0, 0)
    n = mats[0].nrows
    if any(m.nrows != n for m in mats):
        raise ValueError("hstack row mismatch")
    rows = tuple(sum((m.rows[r] for m in mats), ()) for r in range(n))
    return Matrix._raw(rows, n, sum(m.ncols for m in mats))


def vstack(mats, ncols=None):
    if not mats:
        return Matrix.zeros(0, ncols or 0)
    n = mats[0].ncols
    if any(m.ncols != n for m in mats):
        raise ValueError("vstack column mismatch")
    return Matrix._raw(sum((m.rows for m in mats), ()), sum(m.nrows for m in mats), n)


def rref(m):
    """Reduced row echelon form; returns ``(matrix, pivot_columns)``."""
    a = [list(r) for r in m.rows]
    nrows, ncols = m.nrows, m.ncols
    pivots = []
    pr = 0
    for c in range(ncols):
        if pr == nrows:
            break
        p = next((r for r in range(pr, nrows) if a[r][c]), None)
        if p is None:
            continue
        a[pr], a[p] = a[p], a[pr]
        inv = 1 / a[pr][c]
        a[pr] = [x * inv for x in a[pr]]
        for r in range(nrows):
            if r != pr and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[pr])]
        pivots.append(c)
        pr += 1
    return Matrix._raw(tuple(tuple(r) for r in a), nrows, ncols), pivots


def row_basis(m):
    """Rows spanning the row space of ``m`` (nonzero rows of its RREF)."""
    red, pivots = rref(m)
    return Matrix._raw(red.rows[: len(pivots)], len(pivots), m.ncols)


def nullspace(m):
    """Basis of ``{x : m x = 0}`` as the columns of a matrix."""
    red, pivots = rref(m)
    free = [c for c in range(m.ncols) if c not in set(pivots)]
    cols = []
    for f in free:
        v = [Fraction(0)] * m.ncols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -red.rows[r][f]
        cols.append(v)
    return Matrix.from_columns(cols, m.ncols)


def column_basis(m):
    """Pivot columns of ``m``: a basis of its column space drawn from its own columns."""
    _, pivots = rref(m)
    return m.submatrix(cols=pivots)


def extend_basis(basis, dim):
    """Complete the columns of ``basis`` to ``dim`` independent columns using standard
    basis vectors in coordinate order."""
    n = basis.nrows
    cols = list(basis.columns())
    current = basis
    for k in range(n):
        if len(cols) >= dim:
            break
        e = [0] * n
        e[k] = 1
        trial = hstack([current, Matrix.from_columns([e], n)])
        if trial.rank() == len(cols) + 1:
            cols.append(tuple(Fraction(x) for x in e))
            current = trial
    if len(cols) < dim:
        raise ValueError("cannot extend basis to requested dimension")
    return Matrix.from_columns(cols, n)


def solve(a, b):
    """Exact ``x`` with ``a @ x == b``; raises ``ValueError`` if inconsistent.

    Free variables are set to zero.
    """
    if a.nrows != b.nrows:
        raise ValueError("solve row mismatch")
    aug = hstack([a, b])
    red, pivots = rref(aug)
    if any(p >= a.ncols for p in pivots):
        raise ValueError("inconsistent linear system")
    x = [[Fraction(0)] * b.ncols for _ in range(a.ncols)]
    for r, p in enumerate(pivots):
        x[p] = list(red.rows[r][a.ncols:])
    return Matrix._raw(tuple(tuple(r) for r in x), a.ncols, b.ncols)


def intersect_kernels(mats, ncols):
    """Row basis of the stacked constraints; its kernel is the intersection of kernels."""
    return row_basis(vstack(list(mats), ncols=ncols))


def random_matrix(rng, nrows, ncols, box=3):
    return Matrix._raw(
        tuple(tuple(Fraction(rng.randint(-box, box)) for _ in range(ncols)) for _ in range(nrows)),
        nrows, ncols,
    )
