"""Complexes built from other complexes, plus dual trees and tree isometries.

Subdivision and squarisation both replace hyperplane ``i`` by two copies,
numbered ``2i`` and ``2i + 1``. In the subdivision the copies are nested,
``(2i)+ ⊆ (2i+1)+``, and a vertex of X' is the centre of a cube of X: the
coordinate states 0, 1/2, 1 of hyperplane ``i`` are spelled ``00``, ``01``,
``11`` on the pair. In the squarisation the copies cross.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import NamedTuple, Optional

from .complex import CubeComplex, MAX_HYPERPLANES
from .duality import complex_from_pocset, pocset_of_complex, restrict
from .errors import (
    EmptyInput,
    InvalidComplex,
    LeafNotCovered,
    NotDistancePreserving,
)
from .median_ops import interval
from .pocset import Halfspace

HALF = Fraction(1, 2)


# -- cubical subdivision -------------------------------------------------------


def all_cubes(X):
    """Yield ``(base, spanned_mask)`` for every cube of X, points included."""
    verts = X.vertices
    for base in X.sorted_vertices:
        up = [1 << i for i in range(X.n) if not base >> i & 1 and base | (1 << i) in verts]

        def extend(mask, corners, start):
            yield mask
            for idx in range(start, len(up)):
                bit = up[idx]
                if all(c | bit in verts for c in corners):
                    yield from extend(mask | bit, corners + [c | bit for c in corners], idx + 1)

        for mask in extend(0, [base], 0):
            yield base, mask


def subdivision_vertex(n, base, spanned=0):
    """The vertex of X' at the centre of the cube ``(base, spanned)``."""
    out = 0
    for i in range(n):
        if spanned >> i & 1:
            out |= 2 << (2 * i)
        elif base >> i & 1:
            out |= 3 << (2 * i)
    return out


def subdivision_image(X, v):
    """Image of the vertex ``v`` of X in the subdivision."""
    return subdivision_vertex(X.n, X.vertex(v))


def subdivision_coords(n, v):
    """Coordinates in {0, 1/2, 1} of a subdivision vertex over the original walls."""
    out = []
    for i in range(n):
        pair = v >> (2 * i) & 3
        if pair == 1:
            raise ValueError(f"{v} is not a subdivision vertex (copy {2 * i} without {2 * i + 1})")
        out.append({0: Fraction(0), 2: HALF, 3: Fraction(1)}[pair])
    return tuple(out)


def from_subdivision_coords(coords):
    base = spanned = 0
    for i, t in enumerate(coords):
        if t == HALF:
            spanned |= 1 << i
        elif t == 1:
            base |= 1 << i
        elif t != 0:
            raise ValueError(f"coordinate {t} is not 0, 1/2 or 1")
    return subdivision_vertex(len(coords), base, spanned)


def subdivide(X, preserve_metric=False):
    """The first cubical subdivision X'.

    Hyperplane ``i`` of X becomes the nested copies ``2i`` and ``2i + 1``.
    Edges of X' have length 1 unless ``preserve_metric`` is set, in which
    case each copy gets half its parent's weight and X embeds isometrically.
    """
    vertices = [subdivision_vertex(X.n, b, s) for b, s in all_cubes(X)]
    weights = None
    if preserve_metric:
        weights = [w / 2 if isinstance(w, Fraction) else Fraction(w, 2) for w in X.weights for _ in (0, 1)]
    n = 2 * X.n
    return CubeComplex(n, vertices, weights, wide=n > MAX_HYPERPLANES)


# -- squarisation and hedgehogs ------------------------------------------------


def square_image(X, v):
    """Canonical image of ``v`` in the squarisation: both copies oriented alike."""
    v = X.vertex(v)
    return sum(3 << (2 * i) for i in range(X.n) if v >> i & 1)


def squarise(X):
    """The squarisation S(X): every wall doubled into a transverse pair.

    Copies ``2i`` and ``2i + 1`` of hyperplane ``i`` cross each other; between
    different hyperplanes every copy inherits the relation of its parent.
    """
    relations = []
    for h, k in pocset_of_complex(X):
        if h.hyperplane == k.hyperplane:
            continue
        for a in (0, 1):
            for b in (0, 1):
                relations.append(
                    (Halfspace(2 * h.hyperplane + a, h.sign), Halfspace(2 * k.hyperplane + b, k.sign))
                )
    weights = [w for w in X.weights for _ in (0, 1)] if X.is_weighted else None
    seed = square_image(X, X.sorted_vertices[0])
    return complex_from_pocset(relations, 2 * X.n, seed, weights=weights)


def hedgehog(X, attach, spine_weight=1):
    """Attach one pendant edge (a spine) at each vertex of ``attach``.

    Spines are new hyperplanes ``X.n, X.n + 1, ...`` in lexicographic order of
    their attachment vertices.
    """
    points = sorted({X.vertex(v) for v in attach}, key=X.bits)
    if not points:
        raise EmptyInput("hedgehog needs at least one attachment vertex")
    n = X.n + len(points)
    vertices = list(X.vertices) + [v | (1 << (X.n + j)) for j, v in enumerate(points)]
    weights = None
    if X.is_weighted or spine_weight != 1:
        weights = list(X.weights) + [spine_weight] * len(points)
    return CubeComplex(n, vertices, weights, wide=n > MAX_HYPERPLANES)


# -- restriction quotients -----------------------------------------------------


@dataclass(frozen=True)
class QuotientMap:
    """Restriction quotient of ``source`` onto the hyperplanes ``U``.

    Coordinate ``j`` of the quotient is hyperplane ``U[j]`` of the source.
    """

    source: CubeComplex
    U: tuple
    quotient: CubeComplex

    def __call__(self, v):
        v = self.source.vertex(v)
        return sum(((v >> h) & 1) << j for j, h in enumerate(self.U))

    def vertex_map(self):
        return {v: self(v) for v in self.source.sorted_vertices}


def restriction_quotient(X, U):
    U = tuple(sorted(set(U)))
    if not U:
        raise EmptyInput("restriction quotient needs at least one hyperplane")
    for h in U:
        if not 0 <= h < X.n:
            raise ValueError(f"hyperplane {h} out of range")
    Q, _ = restrict(X, U)
    return QuotientMap(X, U, Q)


# -- hyperplane preorder and dual trees ---------------------------------------


@dataclass(frozen=True)
class PreorderReport:
    """The preorder u ⪯ w, its equivalence classes, and one dual tree per class.

    ``leq[u]`` is the mask of hyperplanes w with u ⪯ w.
    """

    leq: tuple
    classes: tuple
    trees: tuple

    def precedes(self, u, w):
        return bool(self.leq[u] >> w & 1)

    def equivalent(self, u, w):
        return self.precedes(u, w) and self.precedes(w, u)

    def class_of(self, w):
        return next(c for c in self.classes if w in c)


def _leq_masks(X):
    T = X.transverse_masks
    out = []
    for u in range(X.n):
        m = 0
        for w in range(X.n):
            if u == w or (not T[u] >> w & 1 and T[u] & ~T[w] == 0):
                m |= 1 << w
        out.append(m)
    return out


def _classes(X, leq):
    out, seen = [], 0
    for u in range(X.n):
        if seen >> u & 1:
            continue
        cls = tuple(w for w in range(X.n) if leq[u] >> w & 1 and leq[w] >> u & 1)
        for w in cls:
            seen |= 1 << w
        out.append(cls)
    return out


def hyperplane_preorder(X):
    """u ⪯ w when u and w do not cross and every wall crossing u crosses w."""
    leq = _leq_masks(X)
    classes = _classes(X, leq)
    for cls in classes:
        for a, b in combinations(cls, 2):
            assert not X.transverse(a, b), "equivalent hyperplanes cross"
    trees = tuple(_tree_of_class(X, cls)[0] for cls in classes)
    return PreorderReport(tuple(leq), tuple(classes), trees)


def _tree_of_class(X, cls):
    q = restriction_quotient(X, cls)
    for a, b in combinations(range(q.quotient.n), 2):
        assert not q.quotient.transverse(a, b), "dual tree has crossing hyperplanes"
    return MetricTree(q.quotient), q


def dual_tree(X, w):
    """The dual tree of ``w``: the restriction quotient onto the class of ``w``.

    Returns ``(tree, quotient_map)``.
    """
    if not 0 <= w < X.n:
        raise ValueError(f"hyperplane {w} out of range")
    leq = _leq_masks(X)
    cls = tuple(u for u in range(X.n) if leq[u] >> w & 1 and leq[w] >> u & 1)
    return _tree_of_class(X, cls)


def delta_pseudo_metric(X, w, x, y):
    """Weight of the hyperplanes equivalent to ``w`` that separate ``x`` from ``y``."""
    x, y = X.vertex(x), X.vertex(y)
    tree, q = dual_tree(X, w)
    value = tree.distance(q(x), q(y))
    mask = sum(1 << u for u in q.U)
    assert value == X.weight_of((x ^ y) & mask)
    return value


# -- metric trees --------------------------------------------------------------


class TreePoint(NamedTuple):
    """A point of a metric tree: vertex ``u`` when ``toward`` is None, else the
    point at distance ``offset`` from ``u`` along the edge to ``toward``."""

    u: int
    toward: Optional[int] = None
    offset: object = 0

    @property
    def is_vertex(self):
        return self.toward is None


class MetricTree:
    """A tree given as a complex with no crossing hyperplanes, plus a vertex set V.

    V defaults to the leaves and must contain every leaf.
    """

    def __init__(self, complex, V=None):
        X = complex
        for i in range(X.n):
            if X.transverse_masks[i]:
                j = X.transverse_masks[i].bit_length() - 1
                raise InvalidComplex(f"hyperplanes {i} and {j} cross; not a tree", (i, j))
        self.complex = X
        leaves = frozenset(v for v in X.vertices if X.degree(v) == 1)
        self.leaves = leaves
        if V is None:
            V = leaves
        V = frozenset(X.vertex(v) for v in V)
        missing = leaves - V
        if missing:
            raise LeafNotCovered(
                f"leaf {X.bits(min(missing))} is not in the distinguished set",
                X.bits(min(missing)),
            )
        self.V = V

    def distance(self, u, v):
        return self.complex.weight_of(u ^ v)

    def path(self, u, v):
        """Vertices of the geodesic from ``u`` to ``v`` in order."""
        return sorted(interval(self.complex, u, v), key=lambda z: self.distance(u, z))

    def point_at(self, u, v, t):
        """The point at distance ``t`` from ``u`` on the geodesic to ``v``."""
        path = self.path(u, v)
        for a, b in zip(path, path[1:]):
            da, db = self.distance(u, a), self.distance(u, b)
            if t == da:
                return TreePoint(a)
            if da < t < db:
                return TreePoint(a, b, t - da)
        if t == self.distance(u, v):
            return TreePoint(v)
        raise ValueError(f"distance {t} lies beyond the geodesic")

    def point_distance(self, p, q):
        def ends(p):
            if p.is_vertex:
                return [(p.u, 0)]
            w = self.distance(p.u, p.toward)
            return [(p.u, p.offset), (p.toward, w - p.offset)]

        if not p.is_vertex and not q.is_vertex and {p.u, p.toward} == {q.u, q.toward}:
            qo = q.offset if q.u == p.u else self.distance(q.u, q.toward) - q.offset
            return abs(p.offset - qo)
        return min(a + self.distance(x, y) + b for x, a in ends(p) for y, b in ends(q))


def extend_leaf_isometry(T1, T2, psi):
    """The unique isometry T1 → T2 extending the map ``psi`` on T1.V.

    Each vertex x is placed using a pair a, b of V-points with x between
    them: its image sits at distance d(a, x) from psi(a) toward psi(b).
    Returns ``{vertex: TreePoint}``; an image may fall inside an edge of T2
    when the trees are subdivided differently.
    """
    psi = {T1.complex.vertex(a): T2.complex.vertex(b) for a, b in psi.items()}
    if set(psi) != set(T1.V):
        raise LeafNotCovered("psi must be defined exactly on V1", sorted(set(T1.V) ^ set(psi)))
    keys = sorted(psi, key=T1.complex.bits)
    for a, b in combinations(keys, 2):
        if T1.distance(a, b) != T2.distance(psi[a], psi[b]):
            raise NotDistancePreserving(
                f"d({T1.complex.bits(a)},{T1.complex.bits(b)}) is not preserved",
                (T1.complex.bits(a), T1.complex.bits(b)),
            )
    if set(psi.values()) != set(T2.V):
        raise LeafNotCovered("psi does not map V1 onto V2", sorted(set(T2.V) - set(psi.values())))

    if T1.complex.n == 0 or T2.complex.n == 0:
        if T1.complex.n != T2.complex.n:
            raise NotDistancePreserving("a single point cannot map onto a larger tree")
        return {T1.complex.sorted_vertices[0]: TreePoint(T2.complex.sorted_vertices[0])}
    out = {}
    for x in T1.complex.sorted_vertices:
        if x in psi:
            out[x] = TreePoint(psi[x])
            continue
        a, b = next(
            (a, b) for a, b in combinations(keys, 2)
            if T1.distance(a, x) + T1.distance(x, b) == T1.distance(a, b)
        )
        out[x] = T2.point_at(psi[a], psi[b], T1.distance(a, x))
    verts = T1.complex.sorted_vertices
    for x, y in combinations(verts, 2):
        assert T2.point_distance(out[x], out[y]) == T1.distance(x, y), "extension is not isometric"
    return out
