"""The median barycentre of a finite complex.

A hyperplane is balanced when its two sides reach equally far from it;
otherwise the deeper side is heavy. The heavy halfspaces meet in a single
cube spanned by the balanced hyperplanes, and the centre of that cube is a
canonical vertex of the first subdivision, fixed by every automorphism.
"""

from dataclasses import dataclass

from .constructions import subdivision_coords, subdivision_vertex
from .duality import Cube
from .median_ops import convex_set, side_depths
from .pocset import Halfspace


@dataclass(frozen=True)
class BarycentreReport:
    """Classification of every hyperplane and the resulting barycentre.

    ``heavy[i]`` is the heavy side of hyperplane ``i``, or None when it is
    balanced. ``centre`` is a vertex of the subdivision (copies ``2i`` and
    ``2i + 1`` of hyperplane ``i``).
    """

    n: int
    depths: tuple
    heavy: tuple
    cube: Cube = None
    centre: int = None

    @property
    def balanced(self):
        return tuple(i for i, h in enumerate(self.heavy) if h is None)

    @property
    def heavy_halfspaces(self):
        return tuple(h for h in self.heavy if h is not None)

    def is_light(self, h):
        side = self.heavy[h.hyperplane]
        return side is not None and side != h

    @property
    def is_vertex(self):
        """True when the barycentre is a vertex of X itself."""
        return not self.balanced

    @property
    def vertex(self):
        return self.cube.base if self.is_vertex else None

    @property
    def coordinates(self):
        return subdivision_coords(self.n, self.centre)


def classify_hyperplanes(X):
    """Depths, balanced hyperplanes and heavy sides; no cube yet."""
    depths = side_depths(X)
    heavy = []
    for i, (neg, pos) in enumerate(depths):
        if neg == pos:
            heavy.append(None)
        else:
            heavy.append(Halfspace(i, 1 if pos > neg else -1))
    return BarycentreReport(X.n, tuple(depths), tuple(heavy))


def median_barycentre(X):
    """Full report, including the cube cut out by the heavy halfspaces and its centre."""
    report = classify_hyperplanes(X)
    C = convex_set(X, report.heavy_halfspaces)
    assert not C.empty, "heavy halfspaces have empty intersection"
    free = X.full_mask & ~C.fixed
    balanced = sum(1 << i for i in report.balanced)
    assert free == balanced, "heavy intersection is not cut by exactly the balanced walls"
    assert len(C) == 1 << balanced.bit_count(), "heavy intersection is not a single cube"
    spanned = tuple(report.balanced)
    cube = Cube(C.value, spanned)
    centre = subdivision_vertex(X.n, C.value, balanced)
    return BarycentreReport(report.n, report.depths, report.heavy, cube, centre)
