"""Root data for symmetric Kac-Moody Cartan matrices.

Weights are carried as a pair ``(lam, nu)``: ``lam`` in fundamental-weight
coordinates and ``nu`` in simple-root coordinates, so the weight is
``sum(lam[i] * Lambda_i) + sum(nu[i] * alpha_i)``.  This avoids picking a basis
of the weight lattice, which is awkward outside finite type.
"""

import json
import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from .linalg import Matrix

WEYL_GROUP_LIMIT = 10**6


class CartanError(ValueError):
    """Invalid Cartan data or an operation unsupported for the given type."""


@dataclass(frozen=True)
class WeightVector:
    lam: tuple
    nu: tuple

    def __post_init__(self):
        object.__setattr__(self, "lam", tuple(int(x) for x in self.lam))
        object.__setattr__(self, "nu", tuple(int(x) for x in self.nu))
        if len(self.lam) != len(self.nu):
            raise CartanError("lam and nu must have equal length")

    @classmethod
    def fundamental(cls, lam):
        return cls(tuple(lam), (0,) * len(lam))

    @classmethod
    def root(cls, nu):
        return cls((0,) * len(nu), tuple(nu))

    @property
    def rank(self):
        return len(self.lam)

    @property
    def height(self):
        """``ht(nu)``, the sum of simple-root coefficients."""
        return sum(self.nu)

    def __add__(self, other):
        return WeightVector(
            tuple(a + b for a, b in zip(self.lam, other.lam)),
            tuple(a + b for a, b in zip(self.nu, other.nu)),
        )

    def __sub__(self, other):
        return WeightVector(
            tuple(a - b for a, b in zip(self.lam, other.lam)),
            tuple(a - b for a, b in zip(self.nu, other.nu)),
        )

    def shift_root(self, i, k):
        nu = list(self.nu)
        nu[i] += k
        return WeightVector(self.lam, tuple(nu))

    def is_dominant_integral(self):
        return all(x >= 0 for x in self.lam) and not any(self.nu)

    def to_json(self):
        return {"lam": list(self.lam), "nu": list(self.nu)}


@dataclass(frozen=True)
class CartanDatum:
    """A symmetric generalized Cartan matrix.

    ``type_class`` is ``"finite"`` when the matrix is positive definite (all
    leading principal minors positive) and ``"non_finite"`` otherwise.
    """

    matrix: tuple
    name: str = ""
    type_class: str = field(init=False)

    def __post_init__(self):
        a = tuple(tuple(int(x) for x in row) for row in self.matrix)
        n = len(a)
        if n == 0 or any(len(r) != n for r in a):
            raise CartanError("Cartan matrix must be square and nonempty")
        for i in range(n):
            if a[i][i] != 2:
                raise CartanError(f"diagonal entry a[{i}][{i}] = {a[i][i]} != 2")
            for j in range(n):
                if i != j and a[i][j] > 0:
                    raise CartanError(f"off-diagonal entry a[{i}][{j}] > 0")
                if a[i][j] != a[j][i]:
                    raise CartanError("only symmetric Cartan matrices are supported")
        object.__setattr__(self, "matrix", a)
        minors = [Matrix([r[:k] for r in a[:k]]).det() for k in range(1, n + 1)]
        object.__setattr__(self, "type_class", "finite" if all(m > 0 for m in minors) else "non_finite")

    @property
    def n(self):
        return len(self.matrix)

    @property
    def is_finite(self):
        return self.type_class == "finite"

    def a(self, i, j):
        return self.matrix[i][j]

    def _check_index(self, i):
        if not 0 <= i < self.n:
            raise IndexError(f"index {i} out of range for rank {self.n}")

    def _require_finite(self, what):
        if not self.is_finite:
            raise CartanError(f"{what} requires a finite-type Cartan matrix")

    def pairing(self, i, w):
        """``<h_i, w>`` for a :class:`WeightVector` ``w``."""
        self._check_index(i)
        row = self.matrix[i]
        return w.lam[i] + sum(row[j] * w.nu[j] for j in range(self.n))

    def pairings(self, w):
        return tuple(self.pairing(i, w) for i in range(self.n))

    def reflect(self, i, w):
        """Simple reflection ``s_i``; only the root coordinates change."""
        return w.shift_root(i, -self.pairing(i, w))

    def zero(self):
        return WeightVector((0,) * self.n, (0,) * self.n)

    def rho(self):
        return WeightVector((1,) * self.n, (0,) * self.n)

    def simple_root(self, i):
        self._check_index(i)
        return WeightVector.root(tuple(int(j == i) for j in range(self.n)))

    def positive_roots(self):
        """Positive roots by reflection closure of the simple roots (finite type only)."""
        self._require_finite("positive_roots")
        found = {self.simple_root(i).nu for i in range(self.n)}
        queue = deque(sorted(found))
        while queue:
            beta = WeightVector.root(queue.popleft())
            for j in range(self.n):
                gamma = self.reflect(j, beta).nu
                if all(x >= 0 for x in gamma) and any(gamma) and gamma not in found:
                    found.add(gamma)
                    queue.append(gamma)
        return frozenset(WeightVector.root(nu) for nu in found)

    def inverse_matrix(self):
        self._require_finite("inverse Cartan matrix")
        return Matrix(self.matrix).inverse()

    def inner(self, x, y):
        """Invariant form with ``(alpha_i, alpha_j) = a_ij``, ``(Lambda_i, alpha_j) = delta_ij``."""
        n = self.n
        total = Fraction(0)
        if any(x.lam) and any(y.lam):
            inv = self.inverse_matrix()
            total += sum(x.lam[i] * inv[i, j] * y.lam[j] for i in range(n) for j in range(n))
        total += sum(x.lam[i] * y.nu[i] + y.lam[i] * x.nu[i] for i in range(n))
        total += sum(x.nu[i] * self.matrix[i][j] * y.nu[j] for i in range(n) for j in range(n))
        return total

    def norm_squared(self, w):
        self._require_finite("norm_squared")
        return self.inner(w, w)

    def weyl_group(self, weight=None, limit=WEYL_GROUP_LIMIT):
        """Enumerate the Weyl group breadth-first on the orbit of ``rho``.

        Yields ``(word, length, image)`` where ``image`` is ``w(weight)`` (``weight``
        defaults to ``rho``).  ``word`` lists simple reflections, rightmost applied
        first.
        """
        rho = self.rho()
        weight = rho if weight is None else weight
        start = self.pairings(rho)
        seen = {start}
        queue = deque([(start, (), weight)])
        while queue:
            key, word, image = queue.popleft()
            yield word, len(word), image
            for j in range(self.n):
                if key[j] <= 0:
                    continue
                # key[j] > 0 means s_j lengthens w
                nkey = tuple(key[k] - key[j] * self.matrix[j][k] for k in range(self.n))
                if nkey in seen:
                    continue
                seen.add(nkey)
                if len(seen) > limit:
                    raise CartanError(f"Weyl group exceeds {limit} elements")
                queue.append((nkey, (j,) + word, self.reflect(j, image)))

    def weyl_group_order(self):
        self._require_finite("weyl_group_order")
        return sum(1 for _ in self.weyl_group())

    def to_json(self):
        return {"rank": self.n, "matrix": [list(r) for r in self.matrix]}


def _type_a(n):
    return [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(n)] for i in range(n)]


def _type_d(n):
    m = _type_a(n)
    # fork at node n-3
    m[n - 2][n - 1] = m[n - 1][n - 2] = 0
    m[n - 3][n - 1] = m[n - 1][n - 3] = -1
    return m


def _type_e(n):
    # Bourbaki labelling: 1-3-4-5-...-n chain, 2 attached to 4
    m = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    edges = [(0, 2), (1, 3), (2, 3)] + [(k, k + 1) for k in range(3, n - 1)]
    for i, j in edges:
        m[i][j] = m[j][i] = -1
    return m


def preset(name):
    """Cartan datum for a named type: ``A<n>``, ``D<n>`` (n >= 4), ``E6``-``E8``,
    or the affine ``A1~`` (matrix ``[[2,-2],[-2,2]]``)."""
    key = name.strip().upper().replace("_", "")
    if key in ("A1~", "A1AFF", "A1(1)"):
        return CartanDatum(((2, -2), (-2, 2)), name="A1~")
    m = re.fullmatch(r"([ADE])(\d+)", key)
    if not m:
        raise CartanError(f"unknown Cartan type {name!r}")
    letter, n = m.group(1), int(m.group(2))
    if letter == "A" and n >= 1:
        return CartanDatum(_type_a(n), name=key)
    if letter == "D" and n >= 4:
        return CartanDatum(_type_d(n), name=key)
    if letter == "E" and n in (6, 7, 8):
        return CartanDatum(_type_e(n), name=key)
    raise CartanError(f"unknown Cartan type {name!r}")


def from_json(data):
    if isinstance(data, str):
        data = json.loads(data)
    matrix = data["matrix"]
    rank = data.get("rank", len(matrix))
    if rank != len(matrix):
        raise CartanError("rank does not match matrix size")
    return CartanDatum(matrix, name=data.get("name", ""))


@dataclass(frozen=True)
class CharacterTable:
    lam: WeightVector
    entries: dict
    height_bound: int

    def mult(self, nu):
        return self.entries.get(tuple(nu), 0)

    def total(self):
        return sum(self.entries.values())

    def rows(self):
        """Nonzero entries ordered by height (nearest the top first), then ``nu``."""
        keys = sorted(self.entries, key=lambda nu: (-sum(nu), nu))
        return [{"nu": list(nu), "mult": self.entries[nu]} for nu in keys]

    def to_json(self):
        return {"lam": list(self.lam.lam), "height_bound": self.height_bound, "rows": self.rows()}


def weyl_kac_character(c, lam, height_bound):
    """Weight multiplicities of the irreducible module of highest weight ``lam``.

    Expands the alternating sum over the Weyl group and divides by the
    denominator as a truncated series in ``e^{-alpha_i}``.  Only finite types.
    """
    if not c.is_finite:
        raise CartanError("character formula implemented for finite type only")
    if height_bound < 0:
        raise CartanError("height_bound must be nonnegative")
    if isinstance(lam, (tuple, list)):
        lam = WeightVector.fundamental(lam)
    if not lam.is_dominant_integral():
        raise CartanError("highest weight must be dominant integral with nu = 0")
    kostant = _kostant_by_height(c, height_bound + 2)
    start = lam + c.rho()
    entries = {}
    for _word, length, image in c.weyl_group(start):
        nu_w = image.nu
        depth = -sum(nu_w)
        if depth > height_bound:
            continue
        sign = -1 if length % 2 else 1
        for gamma, count in kostant:
            if sum(gamma) + depth > height_bound:
                break
            nu = tuple(a - b for a, b in zip(nu_w, gamma))
            entries[nu] = entries.get(nu, 0) + sign * count
    entries = {nu: m for nu, m in entries.items() if m}
    if any(m < 0 for m in entries.values()):
        raise CartanError("negative multiplicity; character expansion is inconsistent")
    return CharacterTable(lam, entries, height_bound)


def _kostant_by_height(c, height):
    table = kostant_partition(c, height)
    return sorted(table.items(), key=lambda kv: (sum(kv[0]), kv[0]))


def kostant_partition(c, height):
    """Coefficients of ``prod_{alpha > 0} (1 - e^{-alpha})^{-1}`` up to total height.

    Keys are root-coordinate tuples in ``Q_+``; values count the ways of writing
    the key as a sum of positive roots.
    """
    n = c.n
    table = {(0,) * n: 1}
    for beta in sorted(r.nu for r in c.positive_roots()):
        support = set(table)
        for g in table:
            nxt = tuple(a + b for a, b in zip(g, beta))
            while sum(nxt) <= height:
                support.add(nxt)
                nxt = tuple(a + b for a, b in zip(nxt, beta))
        result = {}
        # multiply by 1/(1 - e^{-beta}): result[g] = table[g] + result[g - beta]
        for g in sorted(support, key=lambda g: (sum(g), g)):
            prev = tuple(a - b for a, b in zip(g, beta))
            val = table.get(g, 0)
            if all(x >= 0 for x in prev):
                val += result.get(prev, 0)
            if val:
                result[g] = val
        table = result
    return table
