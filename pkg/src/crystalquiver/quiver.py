"""Explicit points of quiver-variety data over the rationals.

A point of ``X(W; nu)`` is a triple ``(B, t, s)``: ``B[tau]`` maps ``V_out(tau)``
to ``V_in(tau)`` for every arrow of the doubled quiver, ``t[i]: V_i -> W_i`` and
``s[i]: W_i -> V_i``.  Everything is exact; genericity comes from seeded random
integer sampling followed by verification of the postconditions.
"""

import json
import random
from dataclasses import dataclass
from fractions import Fraction

from .cartan import CartanDatum, WeightVector
from .linalg import (Matrix, column_basis, extend_basis, hstack, nullspace, random_matrix,
                     row_basis, solve, vstack)


class QuiverError(ValueError):
    """Bad input: shape mismatch, violated precondition, or out-of-range move."""


class VerificationError(RuntimeError):
    """A constructed point failed its own postconditions (an implementation fault)."""


class SamplingError(RuntimeError):
    """A seeded random search ran out of retries."""


@dataclass(frozen=True)
class Arrow:
    id: int
    out: int
    into: int


class DoubledQuiver:
    """Doubled quiver of a symmetric Cartan matrix: ``|a_ij|`` edges between
    ``i`` and ``j``, each giving an arrow and its reverse ``bar``.

    ``omega`` is the chosen orientation and ``sign`` is +1 on it, -1 on its
    complement, so ``sign[tau] + sign[bar[tau]] == 0``.
    """

    def __init__(self, n, arrows, bar, omega):
        self.n = n
        self.arrows = tuple(arrows)
        self.bar = dict(bar)
        self.omega = frozenset(omega)
        self.sign = {a.id: (1 if a.id in self.omega else -1) for a in self.arrows}
        self._by_id = {a.id: a for a in self.arrows}
        self._out = {i: [a for a in self.arrows if a.out == i] for i in range(n)}
        self._in = {i: [a for a in self.arrows if a.into == i] for i in range(n)}

    def arrow(self, tau):
        return self._by_id[tau]

    def out_of(self, i):
        return self._out[i]

    def into(self, i):
        return self._in[i]

    def is_forest(self):
        """True if the underlying graph (one edge per bar-pair) has no cycles or multi-edges."""
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x

        for a in self.arrows:
            if a.id not in self.omega:
                continue
            r1, r2 = find(a.out), find(a.into)
            if r1 == r2:
                return False
            parent[r1] = r2
        return True

    def cartan_matrix(self):
        """The symmetric Cartan matrix the quiver was built from."""
        m = [[2 if i == j else 0 for j in range(self.n)] for i in range(self.n)]
        for a in self.arrows:
            m[a.out][a.into] -= 1
        return tuple(tuple(r) for r in m)

    def to_json(self):
        return {
            "n": self.n,
            "arrows": [
                {"id": a.id, "out": a.out, "in": a.into, "bar": self.bar[a.id],
                 "omega": a.id in self.omega, "eps": self.sign[a.id]}
                for a in self.arrows
            ],
        }


def build_doubled_quiver(cartan, orientation_seed=None):
    """Arrows come in bar-pairs ``(2m, 2m+1)``; by default the arrow with
    ``out < in`` of each pair lies in ``omega``.  A seed picks each pair's
    orientation at random instead."""
    rng = random.Random(orientation_seed) if orientation_seed is not None else None
    arrows, bar, omega = [], {}, set()
    m = 0
    n = cartan.n
    for i in range(n):
        for j in range(i + 1, n):
            for _ in range(-cartan.matrix[i][j]):
                fwd, rev = Arrow(2 * m, i, j), Arrow(2 * m + 1, j, i)
                arrows += [fwd, rev]
                bar[fwd.id], bar[rev.id] = rev.id, fwd.id
                flip = rng is not None and rng.random() < 0.5
                omega.add(rev.id if flip else fwd.id)
                m += 1
    return DoubledQuiver(n, arrows, bar, omega)


@dataclass(frozen=True)
class GradedDims:
    v: tuple
    w: tuple

    def __post_init__(self):
        object.__setattr__(self, "v", tuple(int(x) for x in self.v))
        object.__setattr__(self, "w", tuple(int(x) for x in self.w))
        if len(self.v) != len(self.w) or any(x < 0 for x in self.v + self.w):
            raise QuiverError("dimension vectors must be nonnegative and of equal length")

    @property
    def lam(self):
        return WeightVector.fundamental(self.w)

    @property
    def weight(self):
        """``lam + nu`` with ``lam = sum w_i Lambda_i`` and ``nu = -sum v_i alpha_i``."""
        return WeightVector(self.w, tuple(-x for x in self.v))

    def with_v(self, i, value):
        v = list(self.v)
        v[i] = value
        return GradedDims(tuple(v), self.w)

    def to_json(self):
        return {"v": list(self.v), "w": list(self.w)}


@dataclass(frozen=True)
class ADHMDatum:
    dims: GradedDims
    B: dict
    t: tuple
    s: tuple

    def validate(self, q):
        v, w = self.dims.v, self.dims.w
        if len(v) != q.n or len(self.t) != q.n or len(self.s) != q.n:
            raise QuiverError("datum rank does not match quiver")
        if set(self.B) != {a.id for a in q.arrows}:
            raise QuiverError("datum arrows do not match quiver")
        for a in q.arrows:
            if self.B[a.id].shape != (v[a.into], v[a.out]):
                raise QuiverError(f"B[{a.id}] has shape {self.B[a.id].shape}, expected {(v[a.into], v[a.out])}")
        for i in range(q.n):
            if self.t[i].shape != (w[i], v[i]) or self.s[i].shape != (v[i], w[i]):
                raise QuiverError(f"t/s blocks at vertex {i} have wrong shape")
        return self

    def replace(self, dims=None, B=None, t=None, s=None):
        return ADHMDatum(dims or self.dims, dict(self.B if B is None else B),
                         tuple(self.t if t is None else t), tuple(self.s if s is None else s))

    def to_json(self):
        return {
            "dims": self.dims.to_json(),
            "B": {str(k): self.B[k].to_strings() for k in sorted(self.B)},
            "t": {str(i): m.to_strings() for i, m in enumerate(self.t)},
            "s": {str(i): m.to_strings() for i, m in enumerate(self.s)},
        }

    def dumps(self):
        return json.dumps(self.to_json(), indent=1)

    @classmethod
    def from_json(cls, q, data):
        if isinstance(data, str):
            data = json.loads(data)
        dims = GradedDims(data["dims"]["v"], data["dims"]["w"])
        v, w = dims.v, dims.w
        B = {a.id: Matrix.from_strings(data.get("B", {}).get(str(a.id), []), v[a.into], v[a.out])
             for a in q.arrows}
        t = tuple(Matrix.from_strings(data.get("t", {}).get(str(i), []), w[i], v[i]) for i in range(q.n))
        s = tuple(Matrix.from_strings(data.get("s", {}).get(str(i), []), v[i], w[i]) for i in range(q.n))
        return cls(dims, B, t, s).validate(q)


def zero_datum(q, dims):
    v, w = dims.v, dims.w
    return ADHMDatum(
        dims,
        {a.id: Matrix.zeros(v[a.into], v[a.out]) for a in q.arrows},
        tuple(Matrix.zeros(w[i], v[i]) for i in range(q.n)),
        tuple(Matrix.zeros(v[i], w[i]) for i in range(q.n)),
    )


def random_datum(q, dims, rng, box=3):
    """Every block uniformly random in ``[-box, box]``."""
    v, w = dims.v, dims.w
    return ADHMDatum(
        dims,
        {a.id: random_matrix(rng, v[a.into], v[a.out], box) for a in q.arrows},
        tuple(random_matrix(rng, w[i], v[i], box) for i in range(q.n)),
        tuple(random_matrix(rng, v[i], w[i], box) for i in range(q.n)),
    )


@dataclass(frozen=True)
class GroupElement:
    g: tuple

    def inverse(self):
        try:
            return GroupElement(tuple(m.inverse() for m in self.g))
        except ZeroDivisionError:
            raise QuiverError("group element has a singular block") from None


def random_group_element(dims, rng, box=3, retries=100):
    blocks = []
    for k in dims.v:
        for _ in range(retries):
            m = random_matrix(rng, k, k, box)
            if m.det() != 0:
                blocks.append(m)
                break
        else:
            raise SamplingError("no invertible matrix found")
    return GroupElement(tuple(blocks))


# --------------------------------------------------------------------------
# basic structure


def moment_map(q, d):
    """``mu_i = sum_{out(tau) = i} sign(tau) B_bar(tau) B_tau + s_i t_i``."""
    d.validate(q)
    out = []
    for i in range(q.n):
        acc = d.s[i] @ d.t[i]
        for a in q.out_of(i):
            acc = acc + (d.B[q.bar[a.id]] @ d.B[a.id]).scale(q.sign[a.id])
        out.append(acc)
    return tuple(out)


def is_mu_zero(q, d):
    return all(m.is_zero() for m in moment_map(q, d))


def symplectic_form(q, x, y):
    """``sum_tau tr(sign(tau) B_bar(tau) B'_tau) + sum_i tr(s_i t'_i - s'_i t_i)``."""
    if x.dims != y.dims:
        raise QuiverError("symplectic form needs equal dimension vectors")
    x.validate(q)
    y.validate(q)
    total = Fraction(0)
    for a in q.arrows:
        total += q.sign[a.id] * (x.B[q.bar[a.id]] @ y.B[a.id]).trace()
    for i in range(q.n):
        total += (x.s[i] @ y.t[i]).trace() - (y.s[i] @ x.t[i]).trace()
    return total


def group_act(q, g, d):
    """``(B, t, s) -> (g_in B g_out^-1, t g^-1, g s)``."""
    d.validate(q)
    if tuple(m.nrows for m in g.g) != d.dims.v:
        raise QuiverError("group element does not match dimension vector")
    inv = g.inverse().g
    B = {a.id: g.g[a.into] @ d.B[a.id] @ inv[a.out] for a in q.arrows}
    t = tuple(d.t[i] @ inv[i] for i in range(q.n))
    s = tuple(g.g[i] @ d.s[i] for i in range(q.n))
    return d.replace(B=B, t=t, s=s)


def into_map(q, d, i):
    """The assembled map ``(+)_{in(tau) = i} V_out(tau) (+) W_i -> V_i`` given by ``(B_tau, s_i)``."""
    blocks = [d.B[a.id] for a in q.into(i)] + [d.s[i]]
    return hstack(blocks, nrows=d.dims.v[i])


def eps_i(q, d, i):
    """Dimension of the cokernel of :func:`into_map`."""
    d.validate(q)
    return d.dims.v[i] - into_map(q, d, i).rank()


def eps_profile(q, d):
    return tuple(eps_i(q, d, i) for i in range(q.n))


def stability_witness(q, d):
    """Largest B-invariant graded subspace inside ``Ker t``, or ``None`` if it is zero.

    Subspaces are kept as kernels of constraint matrices ``C_i``; pulling back
    along ``B_tau`` adds the rows ``C_in(tau) B_tau`` to ``C_out(tau)``.
    """
    d.validate(q)
    v = d.dims.v
    cons = [row_basis(d.t[i]) for i in range(q.n)]
    changed = True
    while changed:
        changed = False
        for i in range(q.n):
            stacked = [cons[i]] + [cons[a.into] @ d.B[a.id] for a in q.out_of(i)]
            new = row_basis(vstack(stacked, ncols=v[i]))
            if new.nrows != cons[i].nrows:
                cons[i] = new
                changed = True
    witness = {i: nullspace(cons[i]) for i in range(q.n)}
    if all(m.ncols == 0 for m in witness.values()):
        return None
    return witness


def is_stable(q, d):
    return stability_witness(q, d) is None


def is_nilpotent(q, d):
    """Decide nilpotency by the image filtration ``V^(k+1)_j = sum_{in(tau) = j} B_tau V^(k)_out(tau)``.

    The filtration decreases; it reaches 0 iff all long enough path compositions
    vanish, and stalling at a nonzero space means some paths never die.
    """
    d.validate(q)
    v = d.dims.v
    spans = [Matrix.identity(k) for k in v]
    prev = sum(v)
    for _ in range(sum(v) + 1):
        if prev == 0:
            return True
        spans = [
            column_basis(hstack([d.B[a.id] @ spans[a.out] for a in q.into(j)], nrows=v[j]))
            for j in range(q.n)
        ]
        total = sum(m.ncols for m in spans)
        if total == prev:
            return False
        prev = total
    return prev == 0


def weight_pairing(q, dims, i):
    """``<h_i, lam + nu>`` computed from the quiver: ``w_i - 2 v_i + sum_{out(tau)=i} v_in(tau)``."""
    return dims.w[i] - 2 * dims.v[i] + sum(dims.v[a.into] for a in q.out_of(i))


def dimension_identity(cartan, q, dims):
    """Compare ``dim X - 2 dim G`` with ``|lam|^2 - |lam + nu|^2``."""
    v, w = dims.v, dims.w
    lhs = (sum(v[a.out] * v[a.into] for a in q.arrows)
           + 2 * sum(a * b for a, b in zip(v, w)) - 2 * sum(x * x for x in v))
    rhs = cartan.norm_squared(dims.lam) - cartan.norm_squared(dims.weight)
    return lhs, rhs, lhs == rhs


# --------------------------------------------------------------------------
# sampling and moves


def _rng(seed):
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def sample_lagrangian_point(q, dims, rng_seed, box=3, retries=30):
    """A stable point with ``s = 0``, ``t`` random, and ``B`` supported on one
    arrow of each bar-pair.

    Such a point has ``mu = 0`` (every summand has a zero factor) and nilpotent
    ``B`` (an orientation of a forest has no cycles).  The first draw uses
    ``omega``; later draws also pick the supporting orientation at random, which
    reaches components that ``omega`` alone misses.  :class:`SamplingError` if
    no stable draw is found.
    """
    if not q.is_forest():
        raise QuiverError("Lagrangian sampler needs a tree-shaped quiver")
    rng = _rng(rng_seed)
    v, w = dims.v, dims.w
    pairs = sorted({min(a, b) for a, b in q.bar.items()})
    support = set(q.omega)
    for attempt in range(retries):
        if attempt:
            support = {p if rng.random() < 0.5 else q.bar[p] for p in pairs}
        B = {a.id: (random_matrix(rng, v[a.into], v[a.out], box) if a.id in support
                    else Matrix.zeros(v[a.into], v[a.out])) for a in q.arrows}
        t = tuple(random_matrix(rng, w[i], v[i], box) for i in range(q.n))
        s = tuple(Matrix.zeros(v[i], w[i]) for i in range(q.n))
        d = ADHMDatum(dims, B, t, s)
        if is_stable(q, d):
            return d
    return sample_by_moves(q, dims, rng, box=box, retries=retries)


def f_move(q, d, i, rng_seed=0, box=3):
    """Point-level ``f_i``: shrink ``eps_i`` to 0, then extend by ``eps_i + 1``."""
    c = eps_i(q, d, i)
    return extend_i(q, shrink_i(q, d, i, c), i, c + 1, rng_seed=rng_seed, box=box)


def sample_by_moves(q, dims, rng_seed, box=3, retries=30):
    """Reach ``dims`` from the point with ``V = 0`` by point-level ``f_i`` moves.

    The word is read off a generated ``B(lam)``; if ``lam - nu`` is not a
    weight there, no stable Lagrangian point exists and :class:`SamplingError`
    is raised.  A draw that lands on a non-generic point (where the next
    move is not allowed) is discarded and the word is replayed.
    """
    from .binfinity import generate_blambda  # local: keeps the quiver side importable alone

    rng = _rng(rng_seed)
    c = CartanDatum(q.cartan_matrix())
    g = generate_blambda(c, dims.w, sum(dims.v))
    target = tuple(-x for x in dims.v)
    goal = next((k for k in g.elements if g.wt[k].nu == target), None)
    if goal is None:
        raise SamplingError(f"v={dims.v} is not a weight of B(lam) for w={dims.w}: no stable point")
    # recover an f-word by walking e-edges up to the top
    word = []
    k = goal
    while True:
        i = next((i for i in range(q.n) if g.e(k, i) is not None), None)
        if i is None:
            break
        word.append(i)
        k = g.e(k, i)
    start = zero_datum(q, GradedDims((0,) * q.n, dims.w))
    for _ in range(retries):
        d = start
        for i in reversed(word):
            if eps_i(q, d, i) + weight_pairing(q, d.dims, i) <= 0:
                break
            try:
                d = f_move(q, d, i, rng_seed=rng.randrange(2**32), box=box)
            except SamplingError:
                break
        else:
            return d
    raise SamplingError(f"no generic path to v={dims.v}, w={dims.w} after {retries} replays")


def _require_point(q, d):
    d.validate(q)
    if not is_mu_zero(q, d):
        raise QuiverError("datum is not in mu^-1(0)")
    if not is_stable(q, d):
        raise QuiverError("datum is not stable")


def _verify(q, d, i, expected_eps, what):
    if not is_mu_zero(q, d):
        raise VerificationError(f"{what}: mu != 0 after the move")
    if not is_stable(q, d):
        raise VerificationError(f"{what}: result is not stable")
    got = eps_i(q, d, i)
    if got != expected_eps:
        raise VerificationError(f"{what}: eps_{i} = {got}, expected {expected_eps}")


def shrink_i(q, d, i, k):
    """Restrict ``V_i`` to the image of the into-``i`` map plus ``eps_i - k`` standard
    basis vectors (first ones that stay independent), lowering ``eps_i`` by ``k``."""
    _require_point(q, d)
    c = eps_i(q, d, i)
    if not 0 <= k <= c:
        raise QuiverError(f"shrink amount {k} outside [0, eps_{i} = {c}]")
    v = d.dims.v
    image = column_basis(into_map(q, d, i))
    basis = extend_basis(image, v[i] - k)
    B = dict(d.B)
    for a in q.into(i):
        B[a.id] = solve(basis, d.B[a.id])
    for a in q.out_of(i):
        B[a.id] = d.B[a.id] @ basis
    t = list(d.t)
    s = list(d.s)
    t[i] = d.t[i] @ basis
    s[i] = solve(basis, d.s[i])
    out = ADHMDatum(d.dims.with_v(i, v[i] - k), B, tuple(t), tuple(s)).validate(q)
    _verify(q, out, i, c - k, "shrink")
    return out


def extension_kernel(q, d, i):
    """Kernel of ``(+)_{out(tau) = i} V_in(tau) (+) W_i -> V_i``, ``(u, x) -> sum sign(tau) B_bar(tau) u_tau + s_i x``.

    Returns ``(basis, blocks)`` where ``blocks`` lists ``(arrow id or "W", size)``
    in the row order of ``basis``.
    """
    v = d.dims.v
    arrows = q.out_of(i)
    parts = [d.B[q.bar[a.id]].scale(q.sign[a.id]) for a in arrows] + [d.s[i]]
    blocks = [(a.id, v[a.into]) for a in arrows] + [("W", d.dims.w[i])]
    return nullspace(hstack(parts, nrows=v[i])), blocks


def extend_i(q, d, i, l, rng_seed=0, retries=30, box=3):
    """Enlarge ``V_i`` by ``l`` dimensions, raising ``eps_i`` by ``l``.

    New basis vectors of ``V_i`` are sent out of ``i`` by a random ``l``-dimensional
    subspace of :func:`extension_kernel` chosen so that the map
    ``V'_i -> (+) V_in (+) W_i`` stays injective; maps into ``i`` are extended by
    inclusion.
    """
    _require_point(q, d)
    c = eps_i(q, d, i)
    p = weight_pairing(q, d.dims, i)
    if not 0 <= l <= c + p:
        raise QuiverError(f"extension amount {l} outside [0, eps + <h_i, lam + nu> = {c + p}]")
    if l == 0:
        return d
    v = d.dims.v
    kernel, blocks = extension_kernel(q, d, i)
    arrows = q.out_of(i)
    old = vstack([d.B[a.id] for a in arrows] + [d.t[i]], ncols=v[i])
    rng = _rng(rng_seed)
    for _ in range(retries):
        new = kernel @ random_matrix(rng, kernel.ncols, l, box)
        if hstack([old, new]).rank() != v[i] + l:
            continue
        B = dict(d.B)
        row = 0
        for a, (_, size) in zip(arrows, blocks):
            B[a.id] = hstack([d.B[a.id], new.submatrix(rows=range(row, row + size))])
            row += size
        t = list(d.t)
        s = list(d.s)
        t[i] = hstack([d.t[i], new.submatrix(rows=range(row, row + d.dims.w[i]))])
        for a in q.into(i):
            B[a.id] = vstack([d.B[a.id], Matrix.zeros(l, v[a.out])])
        s[i] = vstack([d.s[i], Matrix.zeros(l, d.dims.w[i])])
        out = ADHMDatum(d.dims.with_v(i, v[i] + l), B, tuple(t), tuple(s)).validate(q)
        _verify(q, out, i, c + l, "extend")
        return out
    raise SamplingError(f"no injective extension found after {retries} draws")


# --------------------------------------------------------------------------
# tangent computations


def flatten(d):
    out = []
    for k in sorted(d.B):
        out += [x for r in d.B[k].rows for x in r]
    for m in d.t + d.s:
        out += [x for r in m.rows for x in r]
    return out


def unflatten(q, dims, vec):
    v, w = dims.v, dims.w
    pos = 0

    def take(r, c):
        nonlocal pos
        vals = vec[pos:pos + r * c]
        pos += r * c
        return Matrix([vals[k * c:(k + 1) * c] for k in range(r)], r, c) if r and c else Matrix.zeros(r, c)

    B = {}
    for k in sorted(a.id for a in q.arrows):
        a = q.arrow(k)
        B[k] = take(v[a.into], v[a.out])
    t = tuple(take(w[i], v[i]) for i in range(q.n))
    s = tuple(take(v[i], w[i]) for i in range(q.n))
    return ADHMDatum(dims, B, t, s)


def _unflatten_lie(dims, vec):
    out, pos = [], 0
    for k in dims.v:
        vals = vec[pos:pos + k * k]
        pos += k * k
        out.append(Matrix([vals[r * k:(r + 1) * k] for r in range(k)], k, k) if k else Matrix.zeros(0, 0))
    return tuple(out)


def _flatten_blocks(blocks):
    return [x for m in blocks for r in m.rows for x in r]


def infinitesimal_action(q, d, xi):
    """Tangent vector of the G-orbit at ``d`` in the Lie algebra direction ``xi``."""
    B = {a.id: xi[a.into] @ d.B[a.id] - d.B[a.id] @ xi[a.out] for a in q.arrows}
    t = tuple(-(d.t[i] @ xi[i]) for i in range(q.n))
    s = tuple(xi[i] @ d.s[i] for i in range(q.n))
    return d.replace(B=B, t=t, s=s)


def d_moment_map(q, d, x):
    """Derivative of the moment map at ``d`` in direction ``x``."""
    out = []
    for i in range(q.n):
        acc = x.s[i] @ d.t[i] + d.s[i] @ x.t[i]
        for a in q.out_of(i):
            b = q.bar[a.id]
            acc = acc + (x.B[b] @ d.B[a.id] + d.B[b] @ x.B[a.id]).scale(q.sign[a.id])
        out.append(acc)
    return tuple(out)


def _matrix_of(fn, in_dim, out_dim):
    cols = []
    for k in range(in_dim):
        e = [Fraction(0)] * in_dim
        e[k] = Fraction(1)
        cols.append(fn(e))
    return Matrix.from_columns(cols, out_dim)


def d_moment_map_matrix(q, d):
    dims = d.dims
    x_dim = len(flatten(d))
    g_dim = sum(k * k for k in dims.v)
    return _matrix_of(lambda e: _flatten_blocks(d_moment_map(q, d, unflatten(q, dims, e))), x_dim, g_dim)


def stabilizer_matrix(q, d):
    """Linear system for ``xi`` with ``xi . d = 0`` (infinitesimal stabilizer)."""
    dims = d.dims
    g_dim = sum(k * k for k in dims.v)
    x_dim = len(flatten(d))
    return _matrix_of(lambda e: flatten(infinitesimal_action(q, d, _unflatten_lie(dims, e))), g_dim, x_dim)


@dataclass
class FreeActionReport:
    stabilizer_dim: int
    dmu_rank: int
    group_dim: int

    @property
    def ok(self):
        return self.stabilizer_dim == 0 and self.dmu_rank == self.group_dim

    def to_json(self):
        return {"stabilizer_dim": self.stabilizer_dim, "dmu_rank": self.dmu_rank,
                "group_dim": self.group_dim, "ok": self.ok}


def free_action_checks(q, d):
    """Infinitesimal stabilizer dimension (expected 0) and rank of ``d mu`` (expected ``dim G``)."""
    _require_point(q, d)
    g_dim = sum(k * k for k in d.dims.v)
    stab = stabilizer_matrix(q, d)
    return FreeActionReport(g_dim - stab.rank(), d_moment_map_matrix(q, d).rank(), g_dim)
