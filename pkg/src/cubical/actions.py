"""Automorphisms, isomorphism search, displacement and essentiality.

An automorphism is stored as a signed permutation of hyperplanes:
hyperplane ``i`` goes to ``perm[i]``, with its positive side landing on the
negative side of the image when bit ``i`` of ``flips`` is set.
"""

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .complex import CubeComplex, MAX_HYPERPLANES
from .constructions import all_cubes, subdivision_coords, subdivision_vertex
from .duality import cube_counts
from .errors import NotOrderPreserving, VertexSetNotPreserved
from .median_ops import side_depths
from .pocset import Halfspace


@dataclass(frozen=True)
class Automorphism:
    """Signed hyperplane permutation between two complexes (often the same one)."""

    perm: tuple
    flips: int

    @classmethod
    def identity(cls, n):
        return cls(tuple(range(n)), 0)

    def apply(self, v):
        out = 0
        for i, j in enumerate(self.perm):
            out |= ((v >> i & 1) ^ (self.flips >> i & 1)) << j
        return out

    def apply_halfspace(self, h):
        flip = self.flips >> h.hyperplane & 1
        return Halfspace(self.perm[h.hyperplane], -h.sign if flip else h.sign)

    def apply_coords(self, coords):
        """Act on a point given by coordinates in [0, 1] per hyperplane."""
        out = [None] * len(self.perm)
        for i, j in enumerate(self.perm):
            out[j] = 1 - coords[i] if self.flips >> i & 1 else coords[i]
        return tuple(out)

    def inverse(self):
        perm = [0] * len(self.perm)
        flips = 0
        for i, j in enumerate(self.perm):
            perm[j] = i
            if self.flips >> i & 1:
                flips |= 1 << j
        return Automorphism(tuple(perm), flips)

    def compose(self, other):
        """``self ∘ other``."""
        perm = tuple(self.perm[j] for j in other.perm)
        flips = 0
        for i, j in enumerate(other.perm):
            if (other.flips >> i & 1) ^ (self.flips >> j & 1):
                flips |= 1 << i
        return Automorphism(perm, flips)

    @property
    def halfspace_map(self):
        """Signed one-based images of the positive halfspaces."""
        return [(-1 if self.flips >> i & 1 else 1) * (j + 1) for i, j in enumerate(self.perm)]

    def vertex_map(self, X):
        return {v: self.apply(v) for v in X.sorted_vertices}

    def is_identity(self):
        return self.flips == 0 and all(i == j for i, j in enumerate(self.perm))


def _quadrants(X):
    """``occ[i][k]`` has bit ``2a + b`` set when some vertex has bit i = a and bit k = b."""
    n = X.n
    occ = [[0] * n for _ in range(n)]
    for v in X.vertices:
        bits = [v >> i & 1 for i in range(n)]
        for i in range(n):
            row = occ[i]
            a = 2 * bits[i]
            for k in range(n):
                row[k] |= 1 << (a + bits[k])
    return occ


def _flip_quadrants(q, fi, fk):
    out = 0
    for a in (0, 1):
        for b in (0, 1):
            if q >> (2 * a + b) & 1:
                out |= 1 << (2 * (a ^ fi) + (b ^ fk))
    return out


def automorphism_from_halfspace_map(X, mapping, Y=None):
    """Validate a signed permutation as a map X → Y (default Y = X).

    ``mapping[i]`` is the image of the positive side of hyperplane ``i``, as
    a :class:`Halfspace` or a signed one-based index.
    """
    Y = X if Y is None else Y
    perm, flips = [], 0
    for i, m in enumerate(mapping):
        if isinstance(m, Halfspace):
            j, s = m.hyperplane, m.sign
        else:
            m = int(m)
            if m == 0:
                raise ValueError("halfspace map entries are signed and one-based; 0 is invalid")
            j, s = abs(m) - 1, 1 if m > 0 else -1
        perm.append(j)
        if s < 0:
            flips |= 1 << i
    if len(perm) != X.n or sorted(perm) != list(range(Y.n)):
        raise ValueError(f"halfspace map is not a permutation of {Y.n} hyperplanes")
    g = Automorphism(tuple(perm), flips)
    for h in X.halfspaces():
        for k in X.halfspaces():
            if h.hyperplane == k.hyperplane:
                continue
            if X.subset(h, k) != Y.subset(g.apply_halfspace(h), g.apply_halfspace(k)):
                raise NotOrderPreserving(f"inclusion between {h} and {k} is not preserved", (str(h), str(k)))
    for v in X.sorted_vertices:
        if g.apply(v) not in Y.vertices:
            raise VertexSetNotPreserved(
                f"{X.bits(v)} maps to {Y.bits(g.apply(v))}, which is not a vertex",
                (X.bits(v), Y.bits(g.apply(v))),
            )
    if len(X.vertices) != len(Y.vertices):
        raise VertexSetNotPreserved("vertex counts differ", (len(X.vertices), len(Y.vertices)))
    return g


# -- isomorphism search --------------------------------------------------------


def _hyperplane_invariants(X):
    occ = _quadrants(X)
    sides = []
    for i in range(X.n):
        pos = len(X.halfspace_vertices(Halfspace(i, 1)))
        sides.append(pos)
    inv = []
    for i in range(X.n):
        pos, neg = sides[i], len(X.vertices) - sides[i]
        rel = Counter(bin(occ[i][k]).count("1") for k in range(X.n) if k != i)
        inv.append((X.weights[i], tuple(sorted((pos, neg))), tuple(sorted(rel.items()))))
    return inv, sides, occ


def _search(X, Y):
    """Yield signed permutations carrying X onto Y."""
    n = X.n
    if n != Y.n or len(X.vertices) != len(Y.vertices):
        return
    invX, sidesX, occX = _hyperplane_invariants(X)
    invY, sidesY, occY = _hyperplane_invariants(Y)
    if sorted(invX) != sorted(invY):
        return
    # most constrained hyperplanes first
    counts = Counter(invX)
    order = sorted(range(n), key=lambda i: (counts[invX[i]], i))
    options = {}
    for i in range(n):
        opts = []
        for j in range(n):
            if invX[i] != invY[j]:
                continue
            for f in (0, 1):
                pos = sidesX[i]
                if (sidesY[j] if not f else len(Y.vertices) - sidesY[j]) == pos:
                    opts.append((j, f))
        options[i] = opts
    perm = [None] * n
    flip = [0] * n
    used = [False] * n

    def extend(depth):
        if depth == n:
            g = Automorphism(tuple(perm), sum(f << i for i, f in enumerate(flip)))
            if all(g.apply(v) in Y.vertices for v in X.vertices):
                yield g
            return
        i = order[depth]
        for j, f in options[i]:
            if used[j]:
                continue
            ok = True
            for d in range(depth):
                k = order[d]
                if _flip_quadrants(occX[i][k], f, flip[k]) != occY[j][perm[k]]:
                    ok = False
                    break
            if not ok:
                continue
            perm[i], flip[i], used[j] = j, f, True
            yield from extend(depth + 1)
            used[j] = False
        perm[i] = None

    yield from extend(0)


@dataclass(frozen=True)
class IsoResult:
    isomorphic: bool
    witness: Automorphism = None
    # which cheap invariant told the complexes apart, if any
    reason: str = None

    def __bool__(self):
        return self.isomorphic


def _degrees(X):
    return sorted(Counter(X.degree(v) for v in X.vertices).items())


def is_isomorphic(X, Y):
    """Find a signed hyperplane bijection carrying X onto Y, or say why not."""
    checks = (
        ("vertex count", lambda Z: len(Z.vertices)),
        ("hyperplane count", lambda Z: Z.n),
        ("degree multiset", _degrees),
        ("cube counts", cube_counts),
        ("weight multiset", lambda Z: sorted(Z.weights)),
    )
    for name, f in checks:
        if f(X) != f(Y):
            return IsoResult(False, None, f"{name} differs: {f(X)} vs {f(Y)}")
    g = next(_search(X, Y), None)
    if g is None:
        return IsoResult(False, None, "no hyperplane correspondence preserves the pocset")
    return IsoResult(True, g)


def all_automorphisms(X):
    return list(_search(X, X))


# -- displacement --------------------------------------------------------------


@dataclass(frozen=True)
class DisplacementReport:
    """Minimum displacement over X' and the value at every vertex of X'."""

    length: object
    profile: dict


def displacement(X, g):
    """min d(x, gx) over vertices x of the metric-preserving subdivision."""
    profile = {}
    for base, spanned in all_cubes(X):
        v = subdivision_vertex(X.n, base, spanned)
        coords = subdivision_coords(X.n, v)
        image = g.apply_coords(coords)
        d = sum(w * abs(a - b) for w, a, b in zip(X.weights, coords, image))
        if isinstance(d, Fraction) and d.denominator == 1:
            d = int(d)
        profile[v] = d
    return DisplacementReport(min(profile.values()), profile)


# -- essentiality --------------------------------------------------------------


@dataclass(frozen=True)
class DepthProfile:
    depths: tuple

    def failing(self, R):
        """Hyperplanes with a side shallower than ``R``."""
        return tuple(i for i, (a, b) in enumerate(self.depths) if min(a, b) < R)

    def is_essential(self, R):
        return not self.failing(R)


def essential_depths(X):
    return DepthProfile(tuple(side_depths(X)))


def is_r_essential(X, R=1):
    return essential_depths(X).is_essential(R)


def hyperplane_complex(X, w):
    """The hyperplane ``w`` as a complex over the walls crossing it.

    Coordinate ``j`` is the ``j``-th crossing wall in increasing order.
    """
    if not 0 <= w < X.n:
        raise ValueError(f"hyperplane {w} out of range")
    T = X.transverse_masks[w]
    cross = tuple(i for i in range(X.n) if T >> i & 1)
    bit = 1 << w
    # one endpoint per dual edge, read on the crossing walls
    edges = {
        sum((v >> h & 1) << j for j, h in enumerate(cross))
        for v in X.vertices
        if not v & bit and v | bit in X.vertices
    }
    weights = [X.weights[h] for h in cross] if X.is_weighted else None
    return CubeComplex(len(cross), edges, weights, wide=len(cross) > MAX_HYPERPLANES)


def hyperplane_essential_failures(X, R=1):
    """``{w: failing walls of the hyperplane complex of w}`` for every failing w."""
    out = {}
    for w in range(X.n):
        H = hyperplane_complex(X, w)
        T = X.transverse_masks[w]
        cross = [i for i in range(X.n) if T >> i & 1]
        bad = essential_depths(H).failing(R)
        if bad:
            out[w] = tuple(cross[j] for j in bad)
    return out


def is_r_hyperplane_essential(X, R=1):
    return not hyperplane_essential_failures(X, R)


# -- strongly contracting ------------------------------------------------------


def _strongly_separated_pair(X, h, k):
    if not X.disjoint(h, k):
        return False
    T = X.transverse_masks
    i, j = h.hyperplane, k.hyperplane
    if i == j:
        return T[i] == 0
    return T[i] & T[j] & ~((1 << i) | (1 << j)) == 0


def strongly_contracting_witness(X, g):
    """Halfspaces h1, h2 with g·h1 ⊆ h2 ⊆ h1 and both required pairs strongly separated."""
    halfspaces = sorted(X.halfspaces(), key=lambda h: (h.hyperplane, -h.sign))
    for h1 in halfspaces:
        gh1 = g.apply_halfspace(h1)
        for h2 in halfspaces:
            if not (X.subset(gh1, h2) and X.subset(h2, h1)):
                continue
            if _strongly_separated_pair(X, h2, h1.complement()) and _strongly_separated_pair(
                X, gh1, h2.complement()
            ):
                return h1, h2
    return None
