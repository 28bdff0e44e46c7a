"""Finite CAT(0) cube complexes and weighted cuboid complexes.

Complexes are vertex sets of hyperplane orientations (see
:class:`~cubical.complex.CubeComplex`); the submodules build them, query
their median structure, and compare them.
"""

from .actions import (
    Automorphism,
    all_automorphisms,
    automorphism_from_halfspace_map,
    displacement,
    essential_depths,
    hyperplane_complex,
    is_isomorphic,
    is_r_essential,
    is_r_hyperplane_essential,
    strongly_contracting_witness,
)
from .barycentre import classify_hyperplanes, median_barycentre
from .complex import CubeComplex, bits_to_int, int_to_bits
from .constructions import (
    MetricTree,
    delta_pseudo_metric,
    dual_tree,
    extend_leaf_isometry,
    hedgehog,
    hyperplane_preorder,
    restriction_quotient,
    squarise,
    subdivide,
)
from .cross_ratios import cross_ratio, gromov_product, is_trustworthy, separating_quadruple
from .duality import (
    WallSpace,
    complex_from_pocset,
    complex_from_wallspace,
    cube_counts,
    cubes,
    irreducible_factors,
    pocset_of_complex,
    product,
    validate_complex,
)
from .geodesics import enumerate_geodesics, geodesic_from_sequence, is_geodesic, leanness_constant
from .io import load_fixture, parse_complex, serialize_complex
from .median_ops import bridge, convex_set, distance, gate, helly_intersection, hull, interval, median
from .pocset import Halfspace, facing_triples, is_ultrafilter, pair_relation

__version__ = "0.1.0"
