"""Halfspaces, the pocset relations between them, and ultrafilters."""

import re
from itertools import combinations, product
from typing import NamedTuple

from .errors import SameHyperplane


class Halfspace(NamedTuple):
    """One side of a hyperplane: ``sign`` is +1 or -1."""

    hyperplane: int
    sign: int

    def complement(self):
        return Halfspace(self.hyperplane, -self.sign)

    def __str__(self):
        return f"{self.hyperplane}{'+' if self.sign > 0 else '-'}"


def complement(h):
    return h.complement()


_HALFSPACE_RE = re.compile(r"^\s*(\d+)\s*([+-])\s*$")


def parse_halfspace(text):
    """Parse ``"3+"`` / ``"0-"`` into a :class:`Halfspace`."""
    m = _HALFSPACE_RE.match(text)
    if not m:
        raise ValueError(f"not a halfspace: {text!r} (expected e.g. '2+' or '0-')")
    return Halfspace(int(m.group(1)), 1 if m.group(2) == "+" else -1)


class PairRelation(NamedTuple):
    """Which of the four quadrants of two halfspaces meet the vertex set.

    The fields are, in order, h∩k, h*∩k, h∩k*, h*∩k*.
    """

    hk: bool
    hstar_k: bool
    h_kstar: bool
    hstar_kstar: bool

    @property
    def transverse(self):
        return all(self)

    @property
    def label(self):
        """One of ``transverse``, ``h<=k``, ``k<=h``, ``h<=k*``, ``k*<=h``."""
        if self.transverse:
            return "transverse"
        if not self.h_kstar:
            return "h<=k"
        if not self.hstar_k:
            return "k<=h"
        if not self.hk:
            return "h<=k*"
        return "k*<=h"


def pair_relation(X, h, k):
    if h.hyperplane == k.hyperplane:
        raise SameHyperplane(f"{h} and {k} bound the same hyperplane", (h, k))
    sh, sk = X.side_mask(h), X.side_mask(k)
    sh_, sk_ = X.side_mask(h.complement()), X.side_mask(k.complement())
    return PairRelation(bool(sh & sk), bool(sh_ & sk), bool(sh & sk_), bool(sh_ & sk_))


def chosen_halfspaces(n, o):
    """The halfspaces an orientation picks, one per hyperplane."""
    return [Halfspace(i, 1 if (o >> i) & 1 else -1) for i in range(n)]


def is_ultrafilter(X, o):
    """Whether orientation ``o`` picks pairwise-intersecting sides.

    For total orientations of a finite complex this is the whole DCC
    ultrafilter condition, so it holds exactly at the vertices.
    """
    o = X.orientation(o)
    masks = [X.side_mask(h) for h in chosen_halfspaces(X.n, o)]
    return all(masks) and all(a & b for a, b in combinations(masks, 2))


def facing_triples(X):
    """All hyperplane triples admitting pairwise disjoint sides.

    Returns a list of ``(triple, sides)`` with ``sides`` the first witnessing
    choice in sign order (+ before -).
    """
    out = []
    for triple in combinations(range(X.n), 3):
        if any(X.transverse(a, b) for a, b in combinations(triple, 2)):
            continue
        for signs in product((1, -1), repeat=3):
            sides = tuple(Halfspace(i, s) for i, s in zip(triple, signs))
            if all(X.disjoint(a, b) for a, b in combinations(sides, 2)):
                out.append((triple, sides))
                break
    return out


def facing_triple_masks(X):
    """Facing triples as hyperplane bitmasks."""
    return [sum(1 << i for i in t) for t, _ in facing_triples(X)]
