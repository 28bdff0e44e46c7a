"""Gromov products, cross ratios and trustworthy 4-tuples.

The cross ratio of vertices x, y, z, w is the weight of the hyperplanes
separating {x, z} from {y, w} minus the weight of those separating {x, w}
from {y, z}. The Gromov-product expression is checked against it on every
call; the alternating distance sum equals twice it and is exposed with the
factor 1/2 applied.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product as iproduct

from .errors import NotDistinct, PreconditionFailed


def sep_mask(X, a, b, c, d):
    """Mask of hyperplanes separating {a, b} from {c, d} (the set W(a,b|c,d))."""
    return ~(a ^ b) & ~(c ^ d) & (a ^ c) & X.full_mask


def _set_mask(X, P, Q):
    """Mask of hyperplanes separating every point of P from every point of Q."""
    P, Q = list(P), list(Q)
    p0, q0 = P[0], Q[0]
    mask = (p0 ^ q0) & X.full_mask
    for p in P[1:]:
        mask &= ~(p ^ p0)
    for q in Q[1:]:
        mask &= ~(q ^ q0)
    return mask


def _restriction_mask(X, U):
    if U is None:
        return X.full_mask
    mask = 0
    for i in U:
        if not 0 <= i < X.n:
            raise ValueError(f"hyperplane {i} out of range")
        mask |= 1 << i
    return mask


def _half(value):
    if isinstance(value, int):
        return value // 2 if value % 2 == 0 else Fraction(value, 2)
    return value / 2


def gromov_product(X, p, x, y):
    """(x·y)_p: weight of the hyperplanes separating p from both x and y."""
    p, x, y = X.vertex(p), X.vertex(x), X.vertex(y)
    value = X.weight_of((p ^ x) & (p ^ y))
    m = (p & x) | (x & y) | (y & p)
    assert value == X.weight_of(p ^ m), "Gromov product disagrees with d(p, m(p,x,y))"
    return value


def _degenerate(x, y, z, w):
    """Value of the extended cross ratio on a 4-tuple with one coincidence."""
    pairs = {(0, 1): 0, (2, 3): 0, (0, 2): math.inf, (1, 3): math.inf,
             (0, 3): -math.inf, (1, 2): -math.inf}
    pts = (x, y, z, w)
    equal = [(i, j) for i, j in combinations(range(4), 2) if pts[i] == pts[j]]
    if len(equal) != 1:
        raise NotDistinct("three or more entries coincide", pts)
    return pairs[equal[0]]


def _check_distinct(x, y, z, w, allow_degenerate):
    if len({x, y, z, w}) == 4:
        return None
    if not allow_degenerate:
        raise NotDistinct("cross ratio needs pairwise distinct vertices", (x, y, z, w))
    return _degenerate(x, y, z, w)


def cross_ratio_via_gromov(X, x, y, z, w, basepoint):
    """(x·z)_p + (y·w)_p - (x·w)_p - (y·z)_p for the given basepoint."""
    p = basepoint
    return (gromov_product(X, p, x, z) + gromov_product(X, p, y, w)
            - gromov_product(X, p, x, w) - gromov_product(X, p, y, z))


def cross_ratio(X, x, y, z, w, *, allow_degenerate=False):
    """Cross ratio of four vertices.

    With ``allow_degenerate``, 4-tuples with exactly one coincidence get the
    extended values (0, +inf or -inf); otherwise they raise NotDistinct.
    """
    x, y, z, w = (X.vertex(v) for v in (x, y, z, w))
    special = _check_distinct(x, y, z, w, allow_degenerate)
    if special is not None:
        return special
    value = X.weight_of(sep_mask(X, x, z, y, w)) - X.weight_of(sep_mask(X, x, w, y, z))
    base = X.sorted_vertices[0]
    assert value == cross_ratio_via_gromov(X, x, y, z, w, base), "Gromov-product form disagrees"
    return value


def cross_ratio_via_distances(X, x, y, z, w):
    """Half of d(x,w) + d(y,z) - d(x,z) - d(y,w)."""
    x, y, z, w = (X.vertex(v) for v in (x, y, z, w))
    _check_distinct(x, y, z, w, False)
    d = lambda a, b: X.weight_of(a ^ b)
    return _half(d(x, w) + d(y, z) - d(x, z) - d(y, w))


def cross_ratio_restricted(X, U, x, y, z, w):
    """Cross ratio counting only hyperplanes in ``U``."""
    x, y, z, w = (X.vertex(v) for v in (x, y, z, w))
    _check_distinct(x, y, z, w, False)
    mask = _restriction_mask(X, U)
    return (X.weight_of(sep_mask(X, x, z, y, w) & mask)
            - X.weight_of(sep_mask(X, x, w, y, z) & mask))


@dataclass(frozen=True)
class TrustRecord:
    """Separator sets of the three pairings of a 4-tuple (a,b,c,d), restricted to U.

    ``sets`` are the hyperplane tuples for W(a,b|c,d), W(a,c|b,d), W(a,d|b,c).
    """

    quad: tuple
    restriction: tuple
    sets: tuple

    @property
    def counts(self):
        return tuple(len(s) for s in self.sets)

    @property
    def trustworthy(self):
        return 0 in self.counts


def _hyperplanes(mask):
    out, i = [], 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def separator_sets(X, a, b, c, d, U=None):
    mask = _restriction_mask(X, U)
    return (sep_mask(X, a, b, c, d) & mask,
            sep_mask(X, a, c, b, d) & mask,
            sep_mask(X, a, d, b, c) & mask)


def is_trustworthy(X, U, quad):
    a, b, c, d = (X.vertex(v) for v in quad)
    _check_distinct(a, b, c, d, False)
    sets = separator_sets(X, a, b, c, d, U)
    restriction = tuple(range(X.n)) if U is None else tuple(sorted(U))
    return TrustRecord((a, b, c, d), restriction, tuple(_hyperplanes(m) for m in sets))


@dataclass(frozen=True)
class SeparatingQuadruple:
    quadruple: tuple
    separators: tuple


def separating_quadruple(X, U, P, Q):
    """Quadruple in P²×Q² with the fewest U-separators; these then separate P from Q.

    Preconditions are checked and reported with a witness: P and Q are
    disjoint with at least two points each, every 4-subset of P ∪ Q is
    U-trustworthy, and every x,y in P and z,w in Q are U-separated.
    """
    P = sorted({X.vertex(v) for v in P}, key=X.bits)
    Q = sorted({X.vertex(v) for v in Q}, key=X.bits)
    if len(P) < 2 or len(Q) < 2:
        raise PreconditionFailed("P and Q need at least two points each", (len(P), len(Q)))
    if set(P) & set(Q):
        raise PreconditionFailed("P and Q overlap", sorted(set(P) & set(Q)))
    mask = _restriction_mask(X, U)
    A = P + Q
    for quad in combinations(A, 4):
        if all(separator_sets(X, *quad, U)):
            raise PreconditionFailed("4-tuple is not trustworthy", tuple(X.bits(v) for v in quad))
    best = None
    # distinct pairs first, so a failure names the most informative witness
    quads = sorted(iproduct(P, P, Q, Q), key=lambda q: (q[0] == q[1]) + (q[2] == q[3]))
    for x, y, z, w in quads:
        s = sep_mask(X, x, y, z, w) & mask
        if not s:
            raise PreconditionFailed(
                "pair has no separating hyperplane",
                tuple(X.bits(v) for v in (x, y, z, w)),
            )
        if best is None or s.bit_count() < best[0].bit_count():
            best = (s, (x, y, z, w))
    separators = _set_mask(X, P, Q) & mask
    assert best[0] == separators, "minimising quadruple does not separate P from Q"
    return SeparatingQuadruple(best[1], _hyperplanes(separators))
