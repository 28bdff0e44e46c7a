"""Combinatorial geodesics, their hyperplane sequences, and leanness.

A path is a geodesic exactly when it never crosses a hyperplane twice.
A sequence of hyperplanes is the crossing sequence of a geodesic from p
exactly when, at every step n, the walls separating p from the n-th wall are
the earlier walls that do not cross it.
"""

from dataclasses import dataclass
from functools import lru_cache

from .errors import NotAPath, OrderViolated
from .median_ops import _fixed_part
from .pocset import facing_triple_masks


@dataclass(frozen=True)
class Geodesic:
    vertices: tuple
    sequence: tuple

    @property
    def length(self):
        return len(self.sequence)

    @property
    def hyperplanes(self):
        """Mask of crossed hyperplanes."""
        return sum(1 << i for i in self.sequence)

    def reversed(self):
        return Geodesic(self.vertices[::-1], self.sequence[::-1])


def _crossings(X, path):
    path = [X.vertex(v) for v in path]
    if not path:
        raise NotAPath("empty path")
    seq = []
    for k, (a, b) in enumerate(zip(path, path[1:])):
        d = a ^ b
        if d == 0 or d & (d - 1):
            raise NotAPath(f"steps {k} and {k + 1} are not adjacent", (X.bits(a), X.bits(b)))
        seq.append(d.bit_length() - 1)
    return path, seq


def is_geodesic(X, path):
    _, seq = _crossings(X, path)
    return len(set(seq)) == len(seq)


def _separating_from_hyperplane(X, p, w):
    """Mask of hyperplanes separating ``p`` from the carrier of ``w``."""
    fixed, value = _fixed_part(X.carrier(w), X.n)
    return fixed & (p ^ value)


def geodesic_from_sequence(X, p, seq):
    """Build the geodesic from ``p`` crossing ``seq`` in order.

    Raises OrderViolated at the first index whose walls-separating condition
    fails; the witness is ``(actual, expected)`` as hyperplane tuples.
    """
    p = X.vertex(p)
    seq = tuple(seq)
    if len(set(seq)) != len(seq):
        raise ValueError("hyperplane sequence repeats a hyperplane")
    for w in seq:
        if not 0 <= w < X.n:
            raise ValueError(f"hyperplane {w} out of range")
    T = X.transverse_masks
    before = 0
    path = [p]
    cur = p
    for n, w in enumerate(seq):
        actual = _separating_from_hyperplane(X, p, w)
        expected = before & ~T[w]
        if actual != expected:
            raise OrderViolated(
                f"step {n}: walls separating the base from {w} are not the earlier non-crossing walls",
                n,
                (_bits_tuple(actual), _bits_tuple(expected)),
            )
        assert cur ^ (1 << w) in X.vertices, "path left the carrier"
        cur ^= 1 << w
        path.append(cur)
        before |= 1 << w
    return Geodesic(tuple(path), seq)


def _bits_tuple(mask):
    return tuple(i for i in range(mask.bit_length()) if mask >> i & 1)


def geodesic_from_path(X, path):
    path, seq = _crossings(X, path)
    if len(set(seq)) != len(seq):
        raise NotAPath("path crosses a hyperplane twice", tuple(seq))
    return Geodesic(tuple(path), tuple(seq))


def enumerate_geodesics(X, u, v):
    """Every geodesic from ``u`` to ``v``, in lexicographic order of sequences."""
    u, v = X.vertex(u), X.vertex(v)
    target = u ^ v
    todo = [i for i in range(X.n) if target >> i & 1]
    out = []

    def walk(cur, path, seq, left):
        if not left:
            out.append(Geodesic(tuple(path), tuple(seq)))
            return
        for i in todo:
            if left >> i & 1 and cur ^ (1 << i) in X.vertices:
                nxt = cur ^ (1 << i)
                walk(nxt, path + [nxt], seq + [i], left & ~(1 << i))

    walk(u, [u], [], target)
    return out


# -- leanness ------------------------------------------------------------------


def _max_facing_free(mask, triples):
    @lru_cache(maxsize=None)
    def best(m):
        t = next((t for t in triples if t & m == t), None)
        if t is None:
            return m.bit_count()
        out = 0
        while t:
            low = t & -t
            out = max(out, best(m & ~low))
            t ^= low
        return out

    return best(mask)


def leanness_constant(X, gamma):
    """Least C with γ C-lean.

    That is the largest min(#U, #V) over U inside the walls of γ and V
    anywhere, with every member of U crossing every member of V and no
    facing triple in U ⊔ V. A facing triple has no crossing pair, so it
    cannot mix U and V and each side is checked on its own.
    """
    if not isinstance(gamma, Geodesic):
        gamma = geodesic_from_path(X, gamma)
    T = X.transverse_masks
    triples = tuple(facing_triple_masks(X))
    cand_u = [i for i in sorted(gamma.sequence) if T[i]]
    cache = {}

    def v_size(mask):
        if mask not in cache:
            cache[mask] = _max_facing_free(mask, triples)
        return cache[mask]

    best = 0

    def grow(U, idx, common):
        nonlocal best
        size = U.bit_count()
        if size > best and common.bit_count() > best:
            best = max(best, min(size, v_size(common)))
        for j in range(idx, len(cand_u)):
            i = cand_u[j]
            nxt = common & T[i]
            # the pair can only improve if both sides can exceed best
            if min(size + len(cand_u) - j, nxt.bit_count()) <= best:
                continue
            U2 = U | (1 << i)
            if any(t & U2 == t for t in triples):
                continue
            grow(U2, j + 1, nxt)

    grow(0, 0, X.full_mask)
    return best
