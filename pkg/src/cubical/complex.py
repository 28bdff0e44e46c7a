"""The vertex-set representation of a finite CAT(0) cube complex.

A complex on ``n`` hyperplanes is stored as a set of orientations, each an
``int`` whose bit ``i`` is 1 when the vertex lies on the positive side of
hyperplane ``i``. Everything else (halfspaces, the pocset order,
transversality, cubes) is derived from this vertex set on demand.

Bit-strings are the external spelling: character ``i`` is the orientation of
hyperplane ``i``, so ``"100"`` is the vertex on the positive side of
hyperplane 0 only.
"""

from decimal import Decimal
from fractions import Fraction
from functools import cached_property
from numbers import Real

from .errors import LengthMismatch, NotAVertex
from .pocset import Halfspace

MAX_HYPERPLANES = 64


def bits_to_int(s):
    """Parse a bit-string (character ``i`` = hyperplane ``i``) into an orientation."""
    if any(c not in "01" for c in s):
        raise ValueError(f"not a bit-string: {s!r}")
    return int(s[::-1], 2) if s else 0


def int_to_bits(v, n):
    return format(v, f"0{n}b")[::-1] if n else ""


def normalise_weight(w):
    """Return ``w`` as an int when integral, else as an exact Fraction."""
    if isinstance(w, bool) or not isinstance(w, (Real, Decimal, str)):
        raise TypeError(f"weight must be a real number, got {w!r}")
    q = Fraction(w) if not isinstance(w, float) else Fraction(repr(w))
    if q <= 0:
        raise ValueError(f"weights must be positive, got {w!r}")
    return int(q) if q.denominator == 1 else q


class CubeComplex:
    """A finite CAT(0) cube complex (or cuboid complex, when weighted).

    Parameters
    ----------
    n : int
        Number of hyperplanes.
    vertices : iterable of int or str
        Orientations, as ints or bit-strings of length ``n``.
    weights : sequence of positive reals, optional
        Edge length of each hyperplane. Defaults to 1 everywhere.
    wide : bool
        Allow more than 64 hyperplanes.

    The constructor only checks shapes; use
    :func:`cubical.duality.validate_complex` for the CAT(0) certificate.
    """

    __slots__ = ("n", "vertices", "weights", "__dict__")

    def __init__(self, n, vertices, weights=None, *, wide=False):
        if n < 0:
            raise ValueError("hyperplane count must be non-negative")
        if n > MAX_HYPERPLANES and not wide:
            raise ValueError(f"{n} hyperplanes exceeds {MAX_HYPERPLANES}; pass wide=True")
        self.n = n
        vs = set()
        for v in vertices:
            vs.add(self._orientation(v))
        if not vs:
            raise ValueError("a complex needs at least one vertex")
        self.vertices = frozenset(vs)
        if weights is None:
            self.weights = (1,) * n
        else:
            weights = tuple(normalise_weight(w) for w in weights)
            if len(weights) != n:
                raise LengthMismatch(f"expected {n} weights, got {len(weights)}")
            self.weights = weights

    def _orientation(self, v):
        if isinstance(v, str):
            if len(v) != self.n:
                raise LengthMismatch(f"bit-string {v!r} has length {len(v)}, expected {self.n}", v)
            return bits_to_int(v)
        v = int(v)
        if v < 0 or v >> self.n:
            raise LengthMismatch(f"orientation {v} does not fit in {self.n} bits", v)
        return v

    # -- conversions -------------------------------------------------------

    def orientation(self, v):
        """Coerce ``v`` to an orientation int, checking only its length."""
        return self._orientation(v)

    def vertex(self, v):
        """Coerce ``v`` to an orientation int and check it is a vertex."""
        o = self._orientation(v)
        if o not in self.vertices:
            raise NotAVertex(f"{self.bits(o)} is not a vertex", self.bits(o))
        return o

    def bits(self, v):
        return int_to_bits(v, self.n)

    # -- basic structure ---------------------------------------------------

    @property
    def full_mask(self):
        return (1 << self.n) - 1

    @cached_property
    def is_weighted(self):
        return any(w != 1 for w in self.weights)

    @cached_property
    def sorted_vertices(self):
        """Vertices in lexicographic bit-string order."""
        return tuple(sorted(self.vertices, key=self.bits))

    @cached_property
    def _index(self):
        return {v: i for i, v in enumerate(self.sorted_vertices)}

    @cached_property
    def _side_masks(self):
        # masks over vertex positions, one per halfspace: [neg, pos] per hyperplane
        masks = [[0, 0] for _ in range(self.n)]
        for pos, v in enumerate(self.sorted_vertices):
            bit = 1 << pos
            for i in range(self.n):
                masks[i][(v >> i) & 1] |= bit
        return masks

    def side_mask(self, h):
        """Bitmask over vertex positions of the vertices in halfspace ``h``."""
        return self._side_masks[h.hyperplane][1 if h.sign > 0 else 0]

    def halfspace_vertices(self, h):
        i, want = h.hyperplane, 1 if h.sign > 0 else 0
        return frozenset(v for v in self.vertices if (v >> i) & 1 == want)

    def contains(self, h, v):
        return ((v >> h.hyperplane) & 1) == (1 if h.sign > 0 else 0)

    def halfspaces(self):
        for i in range(self.n):
            yield Halfspace(i, 1)
            yield Halfspace(i, -1)

    def subset(self, h, k):
        """True when halfspace ``h`` is contained in ``k`` as vertex sets."""
        return self.side_mask(h) & ~self.side_mask(k) == 0

    def disjoint(self, h, k):
        return self.side_mask(h) & self.side_mask(k) == 0

    @cached_property
    def transverse_masks(self):
        """``transverse_masks[i]`` has bit ``j`` set iff hyperplanes i and j cross."""
        out = [0] * self.n
        sm = self._side_masks
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if all(sm[i][a] & sm[j][b] for a in (0, 1) for b in (0, 1)):
                    out[i] |= 1 << j
                    out[j] |= 1 << i
        return out

    def transverse(self, i, j):
        return bool(self.transverse_masks[i] >> j & 1)

    def neighbours(self, v):
        for i in range(self.n):
            u = v ^ (1 << i)
            if u in self.vertices:
                yield i, u

    def degree(self, v):
        return sum(1 for _ in self.neighbours(v))

    def weight_of(self, mask):
        """Total weight of the hyperplanes in ``mask``."""
        if not self.is_weighted:
            return mask.bit_count()
        total = 0
        i = 0
        while mask:
            if mask & 1:
                total += self.weights[i]
            mask >>= 1
            i += 1
        return total

    def carrier(self, i):
        """Vertices incident to an edge dual to hyperplane ``i``."""
        bit = 1 << i
        return frozenset(v for v in self.vertices if v ^ bit in self.vertices)

    # -- derived complexes -------------------------------------------------

    def with_weights(self, weights):
        return CubeComplex(self.n, self.vertices, weights, wide=self.n > MAX_HYPERPLANES)

    def __eq__(self, other):
        if not isinstance(other, CubeComplex):
            return NotImplemented
        return (self.n, self.vertices, self.weights) == (other.n, other.vertices, other.weights)

    def __hash__(self):
        return hash((self.n, self.vertices, self.weights))

    def __len__(self):
        return len(self.vertices)

    def __repr__(self):
        shown = ", ".join(self.bits(v) for v in self.sorted_vertices[:6])
        more = ", ..." if len(self.vertices) > 6 else ""
        return f"CubeComplex(n={self.n}, vertices=[{shown}{more}])"
