"""Sageev's construction and its inverse.

Complexes are built from wallspaces or abstract pocsets by a flip-BFS over
consistent orientations, starting from one seed orientation. The inverse
direction reads the halfspace pocset off a vertex set. Also here: the
validation certificate for vertex-set inputs, cube enumeration, products and
the De Rham splitting.
"""

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .complex import CubeComplex, MAX_HYPERPLANES
from .errors import InconsistentPocset, InvalidWall, LengthMismatch
from .pocset import Halfspace


def _code(h):
    return 2 * h.hyperplane + (1 if h.sign > 0 else 0)


def _halfspace(code):
    return Halfspace(code >> 1, 1 if code & 1 else -1)


def _swap_pairs(mask, n):
    even = int("01" * n, 2) if n else 0
    odd = even << 1
    return ((mask & even) << 1) | ((mask & odd) >> 1)


def _chosen_codes(v, n):
    return sum(1 << (2 * i + ((v >> i) & 1)) for i in range(n))


def _transitive_closure(leq):
    m = len(leq)
    leq = list(leq)
    for k in range(m):
        bit = 1 << k
        row = leq[k]
        for i in range(m):
            if leq[i] & bit:
                leq[i] |= row
    return leq


def _check_order(leq, n):
    """Raise unless ``leq`` is a pocset order (antisymmetric, h never below h*)."""
    for c in range(2 * n):
        if leq[c] >> (c ^ 1) & 1:
            h = _halfspace(c)
            raise InconsistentPocset(f"{h} is contained in its complement", h)
        for d in range(c + 1, 2 * n):
            if leq[c] >> d & 1 and leq[d] >> c & 1:
                pair = (_halfspace(c), _halfspace(d))
                raise InconsistentPocset(f"relations identify {pair[0]} with {pair[1]}", pair)


def _greedy_seed(leq, n):
    # 2-SAT style assignment: choosing a halfspace forces everything above it
    chosen = 0
    for i in range(n):
        for code in (2 * i + 1, 2 * i):
            if chosen >> code & 1:
                break
            if chosen >> (code ^ 1) & 1:
                continue
            up = leq[code]
            if _swap_pairs(up, n) & (up | chosen) == 0:
                chosen |= up
                break
        else:
            raise InconsistentPocset("no consistent orientation exists")
    return sum(1 << i for i in range(n) if chosen >> (2 * i + 1) & 1)


def _flip_bfs(disjoint, n, seed, max_vertices=None):
    """All orientations flip-connected to ``seed`` avoiding disjoint choices.

    ``disjoint[c]`` is the mask of halfspace codes disjoint from code ``c``.
    """
    chosen = _chosen_codes(seed, n)
    for c in range(2 * n):
        if chosen >> c & 1 and disjoint[c] & chosen:
            raise InconsistentPocset("seed orientation is not consistent", seed)
    seen = {seed: chosen}
    queue = deque([seed])
    while queue:
        v = queue.popleft()
        cv = seen[v]
        for i in range(n):
            u = v ^ (1 << i)
            if u in seen:
                continue
            new = 2 * i + ((u >> i) & 1)
            cu = cv ^ (1 << new) ^ (1 << (new ^ 1))
            if disjoint[new] & cu:
                continue
            seen[u] = cu
            if max_vertices is not None and len(seen) > max_vertices:
                raise OverflowError(f"more than {max_vertices} vertices")
            queue.append(u)
    return seen.keys()


def _disjointness(leq, n):
    # a and b are disjoint iff a <= b*
    return [_swap_pairs(leq[c], n) for c in range(2 * n)]


# -- wallspaces --------------------------------------------------------------


@dataclass(frozen=True)
class WallSpace:
    """Walls on the ground set ``range(ground_size)``; each wall is one block."""

    ground_size: int
    walls: tuple

    def __post_init__(self):
        ground = frozenset(range(self.ground_size))
        blocks = tuple(frozenset(w) for w in self.walls)
        seen = set()
        for i, b in enumerate(blocks):
            if not b <= ground:
                raise InvalidWall(f"wall {i} mentions points outside the ground set", i)
            if not b or b == ground:
                raise InvalidWall(f"wall {i} has an empty block", i)
            key = min(b, ground - b, key=sorted)
            if key in seen:
                raise InvalidWall(f"wall {i} repeats an earlier partition", i)
            seen.add(key)
        object.__setattr__(self, "walls", blocks)

    def block(self, h):
        """Ground points on the side ``h`` (positive = the listed block)."""
        b = self.walls[h.hyperplane]
        return b if h.sign > 0 else frozenset(range(self.ground_size)) - b

    def principal_orientation(self, point):
        return sum(1 << i for i, b in enumerate(self.walls) if point in b)


def complex_from_wallspace(ws, base_point=0, *, max_vertices=None):
    """The component of the dual cube complex containing ``base_point``.

    Hyperplane ``i`` is wall ``i``; its positive side holds the orientations
    that choose the listed block.
    """
    if not 0 <= base_point < ws.ground_size:
        raise ValueError(f"base point {base_point} is not in the ground set")
    n = len(ws.walls)
    blocks = [ws.block(_halfspace(c)) for c in range(2 * n)]
    disjoint = [
        sum(1 << d for d in range(2 * n) if not blocks[c] & blocks[d]) for c in range(2 * n)
    ]
    seed = ws.principal_orientation(base_point)
    vertices = _flip_bfs(disjoint, n, seed, max_vertices)
    return CubeComplex(n, vertices, wide=n > MAX_HYPERPLANES)


# -- pocsets -----------------------------------------------------------------


def pocset_order(relations, n):
    """Transitively closed order on halfspace codes generated by ``relations``.

    ``relations`` is an iterable of ``(h, k)`` pairs meaning h ⊆ k; the
    involution images k* ⊆ h* are added automatically.
    """
    leq = [1 << c for c in range(2 * n)]
    for h, k in relations:
        for x in (h, k):
            if not 0 <= x.hyperplane < n:
                raise ValueError(f"halfspace {x} out of range for {n} hyperplanes")
        a, b = _code(h), _code(k)
        leq[a] |= 1 << b
        leq[b ^ 1] |= 1 << (a ^ 1)
    leq = _transitive_closure(leq)
    _check_order(leq, n)
    return leq


def complex_from_pocset(relations, n, seed=None, *, weights=None, max_vertices=None):
    """Sageev's construction for a finite pocset given by generating relations.

    The vertex set is every orientation consistent with the order that is
    flip-connected to ``seed`` (found by a 2-SAT pass when omitted).
    """
    leq = pocset_order(relations, n)
    if seed is None:
        seed = _greedy_seed(leq, n)
    elif isinstance(seed, str):
        if len(seed) != n:
            raise LengthMismatch(f"seed has length {len(seed)}, expected {n}", seed)
        seed = int(seed[::-1], 2) if n else 0
    vertices = _flip_bfs(_disjointness(leq, n), n, seed, max_vertices)
    return CubeComplex(n, vertices, weights, wide=n > MAX_HYPERPLANES)


def inclusion_order(X):
    """``leq[c]`` = mask of halfspace codes containing halfspace code ``c``."""
    n = X.n
    masks = [X.side_mask(_halfspace(c)) for c in range(2 * n)]
    return [
        sum(1 << d for d in range(2 * n) if masks[c] & ~masks[d] == 0) for c in range(2 * n)
    ]


def pocset_of_complex(X):
    """Covering relations ``(h, k)`` (h ⊊ k) of the halfspace inclusion order."""
    n = X.n
    leq = inclusion_order(X)
    out = []
    for a in range(2 * n):
        above = leq[a] & ~(1 << a)
        for b in range(2 * n):
            if not above >> b & 1:
                continue
            between = above & ~(1 << b)
            # b covers a unless some c strictly between
            if any(between >> c & 1 and leq[c] >> b & 1 for c in range(2 * n)):
                continue
            out.append((_halfspace(a), _halfspace(b)))
    out.sort(key=lambda r: (_code(r[0]) ^ 1, _code(r[1]) ^ 1))
    return out


# -- validation ----------------------------------------------------------------


@dataclass
class Violation:
    kind: str
    message: str
    witness: object = None


@dataclass
class ValidationReport:
    n: int
    n_vertices: int
    violations: list = field(default_factory=list)

    @property
    def valid(self):
        return not self.violations

    def __bool__(self):
        return self.valid


def _median_closure_witness(n, verts):
    if len(verts) < 3:
        return None
    if n > 63:
        vset = set(verts)
        for a, b, c in combinations(verts, 3):
            m = (a & b) | (b & c) | (c & a)
            if m not in vset:
                return (a, b, c)
        return None
    arr = np.array(sorted(verts), dtype=np.uint64)
    table = None
    if n <= 24:
        table = np.zeros(1 << n, dtype=bool)
        table[arr.astype(np.int64)] = True
    for i in range(len(arr) - 2):
        u = arr[i]
        rest = arr[i + 1 :]
        m = (u & rest[:, None]) | (rest[:, None] & rest[None, :]) | (rest[None, :] & u)
        if table is not None:
            ok = table[m.astype(np.int64)]
        else:
            pos = np.searchsorted(arr, m)
            pos[pos >= len(arr)] = 0
            ok = arr[pos] == m
        if not ok.all():
            j, k = np.argwhere(~ok)[0]
            return (int(u), int(rest[j]), int(rest[k]))
    return None


def validate_complex(n, vertices):
    """Check the three invariants that certify a vertex set as a CAT(0) cube complex.

    The certificate is: closed under coordinatewise majority, connected under
    single bit flips, and every coordinate takes both values. Returns a
    :class:`ValidationReport`; an empty violation list means valid.
    """
    fmt = (lambda v: format(v, f"0{n}b")[::-1]) if n else (lambda v: "")
    verts = set()
    report = ValidationReport(n, 0)
    for v in vertices:
        if isinstance(v, str):
            if len(v) != n or any(c not in "01" for c in v):
                report.violations.append(Violation("length", f"bad bit-string {v!r}", v))
                continue
            v = int(v[::-1], 2) if n else 0
        elif v < 0 or v >> n:
            report.violations.append(Violation("length", f"orientation {v} too wide", v))
            continue
        verts.add(v)
    report.n_vertices = len(verts)
    if not verts:
        report.violations.append(Violation("empty", "no vertices"))
        return report

    witness = _median_closure_witness(n, verts)
    if witness is not None:
        a, b, c = witness
        m = (a & b) | (b & c) | (c & a)
        report.violations.append(
            Violation(
                "median-closure",
                f"majority({fmt(a)},{fmt(b)},{fmt(c)})={fmt(m)} is missing",
                tuple(fmt(x) for x in witness),
            )
        )

    start = min(verts)
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for i in range(n):
            u = v ^ (1 << i)
            if u in verts and u not in seen:
                seen.add(u)
                queue.append(u)
    if len(seen) != len(verts):
        stray = min(verts - seen)
        report.violations.append(
            Violation(
                "connectivity",
                f"disconnected at Hamming distance 1: {fmt(stray)} unreachable from {fmt(start)}",
                (fmt(start), fmt(stray)),
            )
        )

    union = intersection = None
    for v in verts:
        union = v if union is None else union | v
        intersection = v if intersection is None else intersection & v
    constant = [i for i in range(n) if not (union >> i & 1) or intersection >> i & 1]
    if constant:
        report.violations.append(
            Violation("redundant-hyperplane", f"coordinates {constant} are constant", constant)
        )
    return report


# -- cubes -------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Cube:
    """The cube at ``base`` spanned by flipping the hyperplanes in ``spanned``.

    ``base`` is the lexicographically least vertex, so every spanned bit is 0.
    """

    base: int
    spanned: tuple

    @property
    def dimension(self):
        return len(self.spanned)

    def vertices(self):
        out = [self.base]
        for i in self.spanned:
            out += [v | (1 << i) for v in out]
        return out


def _cubes_at(X, base, k):
    up = [i for i in range(X.n) if not base >> i & 1 and base | (1 << i) in X.vertices]

    def extend(spanned, verts, start):
        if len(spanned) == k:
            yield tuple(spanned)
            return
        for idx in range(start, len(up)):
            i = up[idx]
            bit = 1 << i
            if all(v | bit in X.vertices for v in verts):
                yield from extend(spanned + [i], verts + [v | bit for v in verts], idx + 1)

    yield from extend([], [base], 0)


def cubes(X, k):
    """All k-cubes, each once, keyed by its lexicographically least vertex."""
    if not 0 <= k <= X.n:
        raise ValueError(f"dimension {k} out of range [0, {X.n}]")
    out = [Cube(v, s) for v in X.sorted_vertices for s in _cubes_at(X, v, k)]
    return out


def cube_counts(X):
    """``counts[k]`` = number of k-cubes, up to the dimension of X."""
    counts = []
    k = 0
    while k <= X.n:
        c = sum(1 for v in X.vertices for _ in _cubes_at(X, v, k))
        if c == 0:
            break
        counts.append(c)
        k += 1
    return counts


# -- products and factors --------------------------------------------------


def product(X, Y):
    """Cartesian product; Y's hyperplanes are renumbered after X's."""
    shift = X.n
    vertices = [u | (v << shift) for u in X.vertices for v in Y.vertices]
    weights = None
    if X.is_weighted or Y.is_weighted:
        weights = X.weights + Y.weights
    n = X.n + Y.n
    return CubeComplex(n, vertices, weights, wide=n > MAX_HYPERPLANES)


def restrict(X, hyperplanes):
    """Restriction of X to the listed hyperplanes, renumbered in the given order."""
    hyperplanes = tuple(hyperplanes)

    def project(v):
        return sum(((v >> h) & 1) << j for j, h in enumerate(hyperplanes))

    image = {project(v) for v in X.vertices}
    weights = tuple(X.weights[h] for h in hyperplanes) if X.is_weighted else None
    Q = CubeComplex(len(hyperplanes), image, weights, wide=len(hyperplanes) > MAX_HYPERPLANES)
    return Q, project


def factor_classes(X):
    """Hyperplane classes of the De Rham splitting, each sorted, ordered by minimum.

    Two hyperplanes land in one class when joined by a chain of non-transverse pairs.
    """
    n = X.n
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in range(n):
        for j in range(i + 1, n):
            if not X.transverse(i, j):
                parent[find(i)] = find(j)
    classes = {}
    for i in range(n):
        classes.setdefault(find(i), []).append(i)
    return sorted((tuple(c) for c in classes.values()), key=lambda c: c[0])


def irreducible_factors(X):
    """The irreducible factors of X, one restriction quotient per class."""
    return [restrict(X, cls)[0] for cls in factor_classes(X)]
