"""Median-metric queries: distances, medians, intervals, convex hulls, gates,
Helly intersections, bridges and strong separation.

Convex sets of a complex are exactly the vertex sets cut out by a partial
assignment of hyperplane sides, so a :class:`ConvexSet` is stored as the
pair ``(fixed, value)``: the hyperplanes on which it is constant and the
bits it takes there. Weights change lengths only, never which vertex is a
median or a gate.
"""

from dataclasses import dataclass
from itertools import combinations, product as iproduct

from .errors import (
    ComplementaryPair,
    EmptyConvexSet,
    EmptyInput,
    NotDisjoint,
)
from .pocset import Halfspace


def distance(X, u, v):
    """Weighted count of hyperplanes separating vertices ``u`` and ``v``."""
    u, v = X.vertex(u), X.vertex(v)
    return X.weight_of(u ^ v)


def median(X, u, v, w):
    u, v, w = X.vertex(u), X.vertex(v), X.vertex(w)
    m = (u & v) | (v & w) | (w & u)
    assert m in X.vertices, "median escaped the vertex set; complex is not median-closed"
    return m


def interval(X, u, v):
    """Vertices lying on some geodesic from ``u`` to ``v``."""
    u, v = X.vertex(u), X.vertex(v)
    free = u ^ v
    return frozenset(z for z in X.vertices if (z ^ u) & ~free == 0)


# -- convex sets ---------------------------------------------------------------


@dataclass(frozen=True)
class ConvexSet:
    """A convex vertex set together with every halfspace containing it.

    For the empty set, ``halfspaces`` keeps the defining family it came from.
    """

    n: int
    fixed: int
    value: int
    vertices: frozenset
    halfspaces: tuple

    @property
    def empty(self):
        return not self.vertices

    def __contains__(self, v):
        return v in self.vertices

    def __len__(self):
        return len(self.vertices)


def _fixed_part(vertices, n):
    union, inter = 0, (1 << n) - 1
    for v in vertices:
        union |= v
        inter &= v
    fixed = ~(union ^ inter) & ((1 << n) - 1)
    return fixed, inter & fixed


def _halfspaces_of(fixed, value, n):
    return tuple(
        Halfspace(i, 1 if value >> i & 1 else -1) for i in range(n) if fixed >> i & 1
    )


def _from_vertices(X, vertices):
    fixed, value = _fixed_part(vertices, X.n)
    return ConvexSet(X.n, fixed, value, frozenset(vertices), _halfspaces_of(fixed, value, X.n))


def convex_set(X, halfspaces):
    """The intersection of the given halfspaces, in canonical (hull) form."""
    halfspaces = tuple(halfspaces)
    fixed = value = 0
    conflict = False
    for h in halfspaces:
        bit = 1 << h.hyperplane
        want = bit if h.sign > 0 else 0
        if fixed & bit and value & bit != want:
            conflict = True
        fixed |= bit
        value |= want
    verts = (
        frozenset()
        if conflict
        else frozenset(v for v in X.vertices if v & fixed == value)
    )
    if not verts:
        return ConvexSet(X.n, fixed, value, verts, halfspaces)
    return _from_vertices(X, verts)


def halfspace_set(X, h):
    return convex_set(X, [h])


def hull(X, A):
    """Smallest convex set containing the vertex collection ``A``."""
    A = [X.vertex(a) for a in A]
    if not A:
        raise EmptyInput("hull of an empty set")
    fixed, value = _fixed_part(A, X.n)
    verts = frozenset(v for v in X.vertices if v & fixed == value)
    return ConvexSet(X.n, fixed, value, verts, _halfspaces_of(fixed, value, X.n))


def is_convex(X, vertices):
    vertices = frozenset(vertices)
    return bool(vertices) and hull(X, vertices).vertices == vertices


def gate(X, C, x):
    """Gate projection of ``x`` onto the convex set ``C``.

    Keeps ``x``'s side of every hyperplane crossing ``C`` and takes ``C``'s side
    of every other one, so that W(x|gate) = W(x|C).
    """
    x = X.vertex(x)
    if C.empty:
        raise EmptyConvexSet("cannot project onto an empty convex set")
    g = (x & ~C.fixed) | C.value
    assert g in C.vertices, "gate fell outside the convex set"
    return g


def separating_from_set(X, x, C):
    """Mask of hyperplanes separating ``x`` from the whole of ``C``."""
    return C.fixed & (x ^ C.value)


def distance_to_set(X, x, C):
    return X.weight_of(separating_from_set(X, X.vertex(x), C))


@dataclass(frozen=True)
class HellyResult:
    vertices: frozenset
    # first pair of indices whose sets are disjoint, or None when all pairs meet
    disjoint_pair: tuple = None

    @property
    def pairwise_intersecting(self):
        return self.disjoint_pair is None


def helly_intersection(X, sets):
    if not sets:
        raise EmptyInput("empty family of convex sets")
    verts = frozenset(sets[0].vertices)
    for C in sets[1:]:
        verts &= C.vertices
    bad = next(
        ((i, j) for i, j in combinations(range(len(sets)), 2)
         if not sets[i].vertices & sets[j].vertices),
        None,
    )
    return HellyResult(verts, bad)


# -- bridges -------------------------------------------------------------------


@dataclass(frozen=True)
class BridgeRecord:
    h: Halfspace
    k: Halfspace
    gap: object
    min_pairs: frozenset
    bridge: frozenset
    shore_h: frozenset
    shore_k: frozenset
    # hyperplanes transverse to both bounding hyperplanes
    transverse_to_both: tuple


def _check_disjoint_pair(X, h, k):
    if h == k.complement():
        raise ComplementaryPair(f"{h} and {k} are complementary", (h, k))
    if h.hyperplane == k.hyperplane or not X.disjoint(h, k):
        raise NotDisjoint(f"{h} and {k} intersect", (h, k))


def common_transverse(X, i, j):
    """Mask of hyperplanes other than ``i``, ``j`` crossing both."""
    return X.transverse_masks[i] & X.transverse_masks[j] & ~((1 << i) | (1 << j))


def bridge(X, h, k):
    """Bridge, shores and gap between disjoint, non-complementary halfspaces."""
    _check_disjoint_pair(X, h, k)
    H = X.halfspace_vertices(h)
    K = X.halfspace_vertices(k)
    best = None
    pairs = []
    for x, y in iproduct(sorted(H), sorted(K)):
        d = X.weight_of(x ^ y)
        if best is None or d < best:
            best, pairs = d, [(x, y)]
        elif d == best:
            pairs.append((x, y))
    B = set()
    for x, y in pairs:
        B |= interval(X, x, y)
    B = frozenset(B)
    mask = common_transverse(X, h.hyperplane, k.hyperplane)
    return BridgeRecord(
        h,
        k,
        best,
        frozenset(pairs),
        B,
        frozenset(x for x, _ in pairs),
        frozenset(y for _, y in pairs),
        tuple(i for i in range(X.n) if mask >> i & 1),
    )


def strongly_separated(X, h, k):
    """No hyperplane crosses both bounding hyperplanes of disjoint ``h``, ``k``."""
    _check_disjoint_pair(X, h, k)
    return common_transverse(X, h.hyperplane, k.hyperplane) == 0


# -- depths --------------------------------------------------------------------


def side_depths(X):
    """For each hyperplane, ``(negative-side depth, positive-side depth)``.

    The depth of a side is the largest distance from one of its vertices to the
    hyperplane, measured as the weight of the hyperplanes separating the vertex
    from the hyperplane's carrier.
    """
    out = []
    for i in range(X.n):
        bit = 1 << i
        pair = []
        for want in (0, bit):
            side = [v for v in X.vertices if v & bit == want]
            carrier_side = [v for v in side if v ^ bit in X.vertices]
            fixed, value = _fixed_part(carrier_side, X.n)
            pair.append(max(X.weight_of(fixed & (v ^ value)) for v in side))
        out.append(tuple(pair))
    return out
