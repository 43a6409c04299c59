"""B(infinity) as integer strings, and B(lambda) as a guarded closure inside B(infinity) (x) T_lambda.

An element of B(infinity) is stored as a finitely supported string
``a = (a_0, a_1, ...)`` of nonpositive integers, read as the element
``... (x) b_{iota(1)}(a_1) (x) b_{iota(0)}(a_0)`` of a semi-infinite tensor of
elementary crystals (position 0 rightmost).  The colors come from repeating a
fixed cycle ``iota``.  Every structure function is the iterated tensor rule, so
for color ``i`` with ``x = -a``::

    sigma_k = x_k + sum_{j > k} a_{i, iota(j)} x_j      (k of color i)
    eps_i   = max(0, max_k sigma_k)
    f_i     lowers a at the smallest k attaining the max (the first fresh
            position of color i if the max is 0 and no k attains it)
    e_i     raises a at the largest k attaining the max, or gives 0 if eps_i = 0
"""

from collections import deque
from dataclasses import dataclass

from .cartan import CartanError, WeightVector
from .crystal import CrystalGraph, DepthError


@dataclass(frozen=True)
class IotaSequence:
    cycle: tuple

    def __post_init__(self):
        object.__setattr__(self, "cycle", tuple(int(i) for i in self.cycle))
        if not self.cycle:
            raise ValueError("iota cycle must be nonempty")

    @classmethod
    def default(cls, n):
        return cls(tuple(range(n)))

    def validate(self, n):
        missing = set(range(n)) - set(self.cycle)
        if missing or any(not 0 <= i < n for i in self.cycle):
            raise ValueError(f"iota cycle {self.cycle} must cover every index 0..{n - 1} and nothing else")
        return self

    def __getitem__(self, k):
        return self.cycle[k % len(self.cycle)]

    def next_position(self, i, start):
        """Smallest position >= start carrying color i."""
        k = start
        while self[k] != i:
            k += 1
        return k


class StringElement:
    """An element of B(infinity) in the string model; implements the element protocol."""

    __slots__ = ("cartan", "iota", "a", "key")

    def __init__(self, cartan, iota, a=()):
        a = list(int(x) for x in a)
        if any(x > 0 for x in a):
            raise ValueError("string entries must be nonpositive")
        while a and a[-1] == 0:
            a.pop()
        self.cartan = cartan
        self.iota = iota
        self.a = tuple(a)
        self.key = "s(" + ",".join(map(str, self.a)) + ")"

    def __eq__(self, other):
        return isinstance(other, StringElement) and self.a == other.a and self.iota == other.iota

    def __hash__(self):
        return hash(self.a)

    def __repr__(self):
        return self.key

    @property
    def height(self):
        return sum(self.a)

    def wt(self):
        nu = [0] * self.cartan.n
        for k, x in enumerate(self.a):
            nu[self.iota[k]] += x
        return WeightVector((0,) * self.cartan.n, tuple(nu))

    def _signature(self, i):
        """``(eps, k_f, k_e)``: eps_i, the position f_i lowers, the position e_i raises."""
        row = self.cartan.matrix[i]
        a = self.a
        sigmas = []
        tail = 0  # sum over positions left of k of a_{i, iota(j)} x_j
        for k in range(len(a) - 1, -1, -1):
            color = self.iota[k]
            if color == i:
                sigmas.append((k, -a[k] + tail))
            tail -= row[color] * a[k]
        best = max([0] + [s for _, s in sigmas])
        at_best = [k for k, s in sigmas if s == best]
        if best == 0:
            # the first unused position of color i also attains 0
            at_best.append(self.iota.next_position(i, len(a)))
            return 0, min(at_best), None
        return best, min(at_best), max(at_best)

    def eps(self, i):
        return self._signature(i)[0]

    def phi(self, i):
        return self.eps(i) + self.cartan.pairing(i, self.wt())

    def f(self, i):
        _, k, _ = self._signature(i)
        a = list(self.a) + [0] * (k + 1 - len(self.a))
        a[k] -= 1
        return StringElement(self.cartan, self.iota, a)

    def e(self, i):
        eps, _, k = self._signature(i)
        if eps == 0:
            return None
        a = list(self.a)
        a[k] += 1
        return StringElement(self.cartan, self.iota, a)

    def to_json(self):
        return {"iota": list(self.iota.cycle), "a": list(self.a)}

    @classmethod
    def from_json(cls, cartan, data):
        iota = IotaSequence(data["iota"]).validate(cartan.n)
        return cls(cartan, iota, data.get("a", ()))


def binf_eps(s, i):
    return s.eps(i)


def binf_phi(s, i):
    return s.phi(i)


def binf_f(s, i):
    return s.f(i)


def binf_e(s, i):
    return s.e(i)


def b_zero(cartan, iota=None):
    iota = (iota or IotaSequence.default(cartan.n)).validate(cartan.n)
    return StringElement(cartan, iota, ())


def _as_iota(cartan, iota):
    if iota is None:
        return IotaSequence.default(cartan.n)
    if not isinstance(iota, IotaSequence):
        iota = IotaSequence(iota)
    return iota.validate(cartan.n)


def _dominant(lam, n):
    if isinstance(lam, (tuple, list)):
        lam = WeightVector.fundamental(lam)
    if len(lam.lam) != n:
        raise CartanError(f"highest weight has {len(lam.lam)} coordinates, rank is {n}")
    if not lam.is_dominant_integral():
        raise CartanError(f"highest weight {lam.lam} is not dominant integral")
    return lam


def _graph(cartan, lam, elements, f_edges, **kw):
    n = cartan.n
    order = sorted(elements, key=lambda k: (-elements[k].height, elements[k].a))
    wt, eps, phi = {}, {}, {}
    for k in order:
        s = elements[k]
        wt[k] = lam + s.wt()
        eps[k] = tuple(s.eps(i) for i in range(n))
        # phi(b (x) t_lam) = phi(b) + <h_i, lam>
        phi[k] = tuple(e + cartan.pairing(i, wt[k]) for i, e in enumerate(eps[k]))
    return CrystalGraph(cartan, order, wt, eps, phi, f_edges, **kw)


def generate_blambda(cartan, lam, depth, iota=None):
    """Closure of ``b_0 (x) t_lam`` under guarded operators.

    ``f_i`` is applied only where ``phi_i > 0`` and ``e_i`` only where
    ``eps_i > 0``, with structure functions of ``B(inf) (x) T_lam``.  Elements
    are kept while ``|ht(nu)| <= depth``; the result is flagged ``truncated``
    when some kept element at the cut still admits an ``f_i``.
    """
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    lam = _dominant(lam, cartan.n)
    iota = _as_iota(cartan, iota)
    n = cartan.n
    top = StringElement(cartan, iota)
    elements = {top.key: top}
    f_edges = {}
    truncated = False
    queue = deque([top])
    while queue:
        s = queue.popleft()
        w = lam + s.wt()
        for i in range(n):
            eps = s.eps(i)
            phi = eps + cartan.pairing(i, w)
            if phi > 0:
                if -s.height >= depth:
                    truncated = True
                else:
                    x = s.f(i)
                    f_edges[(s.key, i)] = x.key
                    if x.key not in elements:
                        elements[x.key] = x
                        queue.append(x)
            if eps > 0:
                x = s.e(i)
                f_edges[(x.key, i)] = s.key
                if x.key not in elements:
                    elements[x.key] = x
                    queue.append(x)
    meta = {"crystal": "B(lambda)", "lam": list(lam.lam), "iota": list(iota.cycle)}
    return _graph(cartan, lam, elements, f_edges, seminormal=True, truncated=truncated,
                  depth=depth, meta=meta)


def binfinity_tensor_graph(cartan, lam, depth, iota=None):
    """All of ``B(inf) (x) T_lam`` down to ``|ht(nu)| <= depth`` (f_i never vanishes there)."""
    lam = _dominant(lam, cartan.n)
    iota = _as_iota(cartan, iota)
    top = StringElement(cartan, iota)
    elements = {top.key: top}
    f_edges = {}
    layer = [top]
    for _ in range(depth):
        nxt = []
        for s in layer:
            for i in range(cartan.n):
                x = s.f(i)
                f_edges[(s.key, i)] = x.key
                if x.key not in elements:
                    elements[x.key] = x
                    nxt.append(x)
        layer = nxt
    meta = {"crystal": "B(inf) (x) T_lambda", "lam": list(lam.lam), "iota": list(iota.cycle)}
    return _graph(cartan, lam, elements, f_edges, truncated=True, depth=depth, meta=meta)


def pi_lambda(s, lam, graph):
    """Image of ``s (x) t_lam`` in a generated B(lambda) graph, or ``None`` for 0."""
    if isinstance(lam, (tuple, list)):
        lam = WeightVector.fundamental(lam)
    if graph.meta.get("lam") != list(lam.lam):
        raise ValueError("graph was generated for a different highest weight")
    if list(s.iota.cycle) != graph.meta.get("iota"):
        raise ValueError("string uses a different iota sequence than the graph")
    if s.key in graph:
        return s.key
    if graph.truncated and -s.height > graph.depth:
        raise DepthError(f"string of depth {-s.height} lies below the generated depth {graph.depth}")
    return None


def guarded_word(cartan, lam, word, iota=None):
    """Apply ``f_{i_1} ... f_{i_l}`` (rightmost first) to ``b_0 (x) t_lam``, stopping at 0
    as soon as a guard ``phi_i > 0`` fails.  Returns the string or ``None``."""
    lam = _dominant(lam, cartan.n)
    s = StringElement(cartan, _as_iota(cartan, iota))
    for i in reversed(word):
        if s.phi(i) + lam.lam[i] <= 0:
            return None
        s = s.f(i)
    return s


def graph_word(graph, top, word):
    """Walk ``f_{i_1} ... f_{i_l}`` (rightmost first) from ``top`` along graph edges."""
    k = top
    for i in reversed(word):
        k = graph.f(k, i)
        if k is None:
            return None
    return k


def top_element(graph):
    return graph.elements[0]


def canonical_pairing(g1, top1, g2, top2):
    """Breadth-first pairing from the tops following f-edges of equal color.

    Returns the bijection as a dict, or ``None`` if the graphs are not isomorphic
    as colored graphs with matching weights and structure functions.
    """
    pairing = {top1: top2}
    queue = deque([top1])
    while queue:
        a = queue.popleft()
        b = pairing[a]
        if g1.wt[a] != g2.wt[b] or g1.eps[a] != g2.eps[b] or g1.phi[a] != g2.phi[b]:
            return None
        for i in range(g1.n):
            for op in ("f", "e"):
                x, y = getattr(g1, op)(a, i), getattr(g2, op)(b, i)
                if (x is None) != (y is None):
                    return None
                if x is None:
                    continue
                if x in pairing:
                    if pairing[x] != y:
                        return None
                else:
                    pairing[x] = y
                    queue.append(x)
    if len(pairing) != len(g1) or len(set(pairing.values())) != len(g2):
        return None
    return pairing
