import math
from itertools import combinations, permutations

import pytest

from cubical import cross_ratio, gromov_product, is_trustworthy, separating_quadruple
from cubical.cross_ratios import (
    cross_ratio_restricted,
    cross_ratio_via_distances,
    cross_ratio_via_gromov,
    separator_sets,
)
from cubical.errors import NotDistinct, PreconditionFailed
from randomcx import random_complex, rng


def W(X, a, b, c, d):
    """Oracle: hyperplanes with {a, b} on one side and {c, d} on the other, as a set."""
    out = set()
    for i in range(X.n):
        sa, sb, sc, sd = ((v >> i) & 1 for v in (a, b, c, d))
        if sa == sb and sc == sd and sa != sc:
            out.add(i)
    return out


def test_gromov_examples(fx):
    P3, Q2 = fx["p3"], fx["q2"]
    assert gromov_product(P3, "000", "110", "111") == 2
    assert gromov_product(P3, "100", "100", "111") == 0
    assert gromov_product(Q2, "00", "11", "10") == 1


def test_cross_ratio_examples(fx):
    P3, Q2 = fx["p3"], fx["q2"]
    assert cross_ratio(Q2, "00", "11", "10", "01") == 0
    assert cross_ratio(P3, "000", "111", "100", "110") == 1
    assert cross_ratio(P3.with_weights([1, 2, 4]), "000", "111", "100", "110") == 2
    with pytest.raises(NotDistinct):
        cross_ratio(P3, "000", "000", "100", "110")


def test_distance_form_is_halved(fx):
    P3, Q2 = fx["p3"], fx["q2"]
    x, y, z, w = (P3.vertex(s) for s in ("000", "111", "100", "110"))
    d = lambda a, b: bin(a ^ b).count("1")
    assert d(x, w) + d(y, z) - d(x, z) - d(y, w) == 2
    assert cross_ratio_via_distances(P3, x, y, z, w) == 1
    assert cross_ratio_via_distances(Q2, "00", "11", "10", "01") == 0


def test_restricted_examples(fx):
    P3 = fx["p3"]
    t = ("000", "111", "100", "110")
    assert cross_ratio_restricted(P3, range(3), *t) == cross_ratio(P3, *t)
    assert cross_ratio_restricted(P3, [], *t) == 0
    assert cross_ratio_restricted(P3, [1], *t) == 1


def test_degenerate_convention(fx):
    P3 = fx["p3"]
    a, b, c = "000", "100", "111"
    assert cross_ratio(P3, a, a, b, c, allow_degenerate=True) == 0
    assert cross_ratio(P3, a, b, a, c, allow_degenerate=True) == math.inf
    assert cross_ratio(P3, a, b, c, a, allow_degenerate=True) == -math.inf
    with pytest.raises(NotDistinct):
        cross_ratio(P3, a, a, a, c, allow_degenerate=True)


def test_degenerate_values_respect_symmetries(fx):
    # antisymmetry in the first pair and pair swap must map the table to itself
    P3 = fx["p3"]
    a, b, c = (P3.vertex(s) for s in ("000", "100", "111"))
    for x, y, z, w in set(permutations((a, a, b, c))):
        v = cross_ratio(P3, x, y, z, w, allow_degenerate=True)
        assert cross_ratio(P3, y, x, z, w, allow_degenerate=True) == -v
        assert cross_ratio(P3, z, w, x, y, allow_degenerate=True) == v


def test_trust_examples(fx):
    T3, C3, Q2 = fx["t3"], fx["cube3"], fx["q2"]
    for quad in combinations(T3.sorted_vertices, 4):
        assert is_trustworthy(T3, None, quad).trustworthy
    rec = is_trustworthy(C3, None, ("000", "110", "011", "101"))
    assert not rec.trustworthy and rec.counts == (1, 1, 1)
    assert is_trustworthy(Q2, None, ("00", "11", "10", "01")).trustworthy


def test_separating_quadruple_examples(fx):
    P3, P5, Q2 = fx["p3"], fx["p5"], fx["q2"]
    res = separating_quadruple(P3, None, ["000", "100"], ["110", "111"])
    assert res.separators == (1,)
    res = separating_quadruple(P5, None, ["00000", "10000", "11000"], ["11100", "11110", "11111"])
    assert res.separators == (2,)
    with pytest.raises(PreconditionFailed) as e:
        separating_quadruple(Q2, None, ["00", "11"], ["01", "10"])
    x, y, z, w = (Q2.vertex(s) for s in e.value.witness)
    assert not W(Q2, x, y, z, w)
    with pytest.raises(PreconditionFailed):
        separating_quadruple(P3, None, ["000"], ["110", "111"])
    with pytest.raises(PreconditionFailed):
        separating_quadruple(P3, None, ["000", "110"], ["110", "111"])


def test_untrustworthy_precondition(fx):
    C3 = fx["cube3"]
    with pytest.raises(PreconditionFailed, match="trustworthy"):
        separating_quadruple(C3, None, ["000", "110"], ["011", "101"])


def test_characterisations_agree_on_random_tuples():
    r = rng(31)
    seen = 0
    while seen < 300:
        X = random_complex(r, 10, min_vertices=5, max_vertices=300)
        if r.random() < 0.3:
            X = X.with_weights([r.choice([1, 2, "0.5", "2.25"]) for _ in range(X.n)])
        verts = X.sorted_vertices
        for _ in range(10):
            x, y, z, w = r.sample(verts, 4)
            cr = cross_ratio(X, x, y, z, w)
            oracle = sum(X.weights[i] for i in W(X, x, z, y, w)) - sum(X.weights[i] for i in W(X, x, w, y, z))
            assert cr == oracle
            for p in r.sample(verts, 3):
                assert cross_ratio_via_gromov(X, x, y, z, w, p) == cr
            assert cross_ratio_via_distances(X, x, y, z, w) == cr
            U = set(r.sample(range(X.n), r.randint(0, X.n)))
            V = set(range(X.n)) - U
            assert cross_ratio_restricted(X, U, x, y, z, w) + cross_ratio_restricted(X, V, x, y, z, w) == cr
            seen += 1


def test_weight_scaling_scales_cross_ratio():
    r = rng(32)
    for _ in range(20):
        X = random_complex(r, 8, min_vertices=4, max_vertices=100)
        ws = [r.choice([1, 2, 3]) for _ in range(X.n)]
        A, B = X.with_weights(ws), X.with_weights([3 * w for w in ws])
        x, y, z, w = r.sample(X.sorted_vertices, 4)
        assert cross_ratio(B, x, y, z, w) == 3 * cross_ratio(A, x, y, z, w)


def test_separator_sets_pairwise_transverse_random():
    r = rng(33)
    for _ in range(20):
        X = random_complex(r, 8, min_vertices=4, max_vertices=80)
        for _ in range(30):
            quad = [r.choice(X.sorted_vertices) for _ in range(4)]
            sets = separator_sets(X, *quad)
            for s, t in combinations(sets, 2):
                assert s & t == 0
                for i in range(X.n):
                    if s >> i & 1:
                        assert t & ~X.transverse_masks[i] == 0
