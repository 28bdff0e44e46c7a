"""Acceptance criteria, one test each.

Every test prints a single ``PASS`` or ``FAIL`` line (with its timing) and
then asserts, so the summary is visible even under ``pytest -q``.
"""

import time
from itertools import combinations, permutations, product
from math import comb

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher

from cubical import (
    Automorphism,
    CubeComplex,
    MetricTree,
    all_automorphisms,
    bridge,
    complex_from_pocset,
    cross_ratio,
    cube_counts,
    displacement,
    enumerate_geodesics,
    extend_leaf_isometry,
    gate,
    geodesic_from_sequence,
    hedgehog,
    helly_intersection,
    hull,
    irreducible_factors,
    is_isomorphic,
    is_r_hyperplane_essential,
    median_barycentre,
    pocset_of_complex,
    product as cproduct,
    separating_quadruple,
    squarise,
    subdivide,
)
from cubical.actions import essential_depths, hyperplane_essential_failures
from cubical.constructions import square_image, subdivision_image
from cubical.cross_ratios import cross_ratio_via_distances, cross_ratio_via_gromov, separator_sets
from cubical.errors import NotDistancePreserving, OrderViolated, PreconditionFailed
from cubical.io import FIXTURES, load_fixture
from cubical.median_ops import distance_to_set, halfspace_set
from cubical.pocset import Halfspace
from randomcx import bfs_dist_to_set, brute_cube_counts, graph, random_complex, random_tree, rng

FIX = {name: load_fixture(name) for name in FIXTURES}


def verdict(capsys, number, title, ok, elapsed, limit=None, detail=""):
    timing = f"{elapsed:.2f} s" + (f" (limit {limit} s)" if limit else "")
    ok = ok and (limit is None or elapsed < limit)
    line = f"{'PASS' if ok else 'FAIL'} [{number:2d}] {title}: {timing}"
    if detail:
        line += f"; {detail}"
    with capsys.disabled():
        print("\n" + line)
    return ok


# -- shared oracles ------------------------------------------------------------


def side(X, i, s):
    return {v for v in X.vertices if (v >> i & 1) == (s > 0)}


def crossing(X, i, j):
    return all(side(X, i, a) & side(X, j, b) for a in (1, -1) for b in (1, -1))


def sep(X, a, b, c, d):
    """Hyperplanes with a, b on one side and c, d on the other, as a mask."""
    m = 0
    for i in range(X.n):
        sa, sb, sc, sd = ((v >> i) & 1 for v in (a, b, c, d))
        if sa == sb and sc == sd and sa != sc:
            m |= 1 << i
    return m


def wsum(X, mask):
    return sum((X.weights[i] for i in range(X.n) if mask >> i & 1), 0)


def bits_of(mask):
    return tuple(i for i in range(mask.bit_length()) if mask >> i & 1)


# -- 1 -------------------------------------------------------------------------


def test_01_barycentre_three_squares(capsys):
    t0 = time.perf_counter()
    X = FIX["threesquares"]
    rep = median_barycentre(X)
    ok = rep.is_vertex and X.bits(rep.vertex) == "11000" and rep.balanced == ()
    elapsed = time.perf_counter() - t0
    got = X.bits(rep.vertex) if rep.is_vertex else rep.coordinates
    assert verdict(capsys, 1, "barycentre of the three-square complex is 11000", ok, elapsed, 1, f"got {got}")


# -- 2 -------------------------------------------------------------------------


def test_02_subdivision_counting(capsys):
    # the limit applies to the library calls; the networkx oracle runs untimed
    lib = 0.0
    t0 = time.perf_counter()
    Q = subdivide(FIX["q2"])
    ok = len(Q) == 9 and cube_counts(Q)[2] == 4
    lib += time.perf_counter() - t0
    r = rng(2002)
    for _ in range(30):
        X = random_complex(r, 10, max_vertices=150)
        t0 = time.perf_counter()
        S = subdivide(X)
        counts = cube_counts(S)
        images = {u: subdivision_image(X, u) for u in X.vertices}
        doubled = {(u, v): S.weight_of(images[u] ^ images[v]) for u, v in combinations(X.sorted_vertices, 2)}
        lib += time.perf_counter() - t0
        c = brute_cube_counts(X)
        want = [sum(c[j] * comb(j, k) * 2**k for j in range(k, len(c))) for k in range(len(c))]
        ok &= counts == want
        G = graph(S)
        for u in X.sorted_vertices:
            dist = nx.single_source_shortest_path_length(G, images[u])
            for v in X.vertices:
                ok &= dist[images[v]] == 2 * bin(u ^ v).count("1")
        ok &= all(d == 2 * bin(u ^ v).count("1") for (u, v), d in doubled.items())
    title = "subdivision: Q2 gives 9 vertices and 4 squares; 2^k rule and doubling on 30 seeds"
    assert verdict(capsys, 2, title, ok, lib, 10)


# -- 3 -------------------------------------------------------------------------


def test_03_cross_ratio_consistency(capsys):
    t0 = time.perf_counter()
    r = rng(2003)
    ok, tuples = True, 0
    while tuples < 1000:
        X = random_complex(r, 14, min_vertices=5, max_vertices=2000)
        if r.random() < 0.3:
            X = X.with_weights([r.choice([1, 2, 3, "0.5", "1.25"]) for _ in range(X.n)])
        verts = X.sorted_vertices
        for _ in range(25):
            x, y, z, w, t = r.sample(verts, 5)
            B = lambda *q: cross_ratio(X, *q)
            cr = B(x, y, z, w)
            ok &= cr == wsum(X, sep(X, x, z, y, w)) - wsum(X, sep(X, x, w, y, z))
            ok &= cross_ratio_via_gromov(X, x, y, z, w, r.choice(verts)) == cr
            ok &= cross_ratio_via_distances(X, x, y, z, w) == cr
            ok &= B(y, x, z, w) == -cr
            ok &= B(z, w, x, y) == cr
            ok &= B(x, y, z, t) + B(x, y, t, w) == cr
            ok &= cr + B(y, z, x, w) + B(z, x, y, w) == 0
            tuples += 1
    elapsed = time.perf_counter() - t0
    assert verdict(capsys, 3, f"cross ratio: characterisations and symmetries agree on {tuples} tuples", ok, elapsed, 30)


# -- 4 -------------------------------------------------------------------------


def test_04_separator_transversality(capsys):
    t0 = time.perf_counter()
    ok, count = True, 0
    for X in FIX.values():
        verts = X.sorted_vertices
        for quad in product(verts, repeat=4):
            sets = separator_sets(X, *quad)
            x, y, z, w = quad
            ok &= sets == (sep(X, x, y, z, w), sep(X, x, z, y, w), sep(X, x, w, y, z))
            for s, t in combinations(sets, 2):
                ok &= all(crossing(X, i, j) for i in bits_of(s) for j in bits_of(t))
            count += 1
    elapsed = time.perf_counter() - t0
    assert verdict(capsys, 4, f"separator sets pairwise transverse on all {count} fixture 4-tuples", ok, elapsed)


# -- 5 -------------------------------------------------------------------------


def test_05_duality_round_trip(capsys):
    t0 = time.perf_counter()
    r = rng(2005)
    ok = True
    for _ in range(50):
        X = random_complex(r, 12, max_vertices=1500)
        Y = complex_from_pocset(pocset_of_complex(X), X.n, seed=r.choice(X.sorted_vertices))
        res = is_isomorphic(X, Y)
        ok &= bool(res) and {res.witness.apply(v) for v in X.vertices} == Y.vertices
    elapsed = time.perf_counter() - t0
    assert verdict(capsys, 5, "pocset round trip is isomorphic on 50 random complexes", ok, elapsed, 60)


# -- 6 -------------------------------------------------------------------------


def condition_failure(X, p, seq):
    """Oracle for the hyperplane-order condition: (index, (actual, expected)) or None."""
    earlier = []
    for n, w in enumerate(seq):
        carrier = {v for v in X.vertices if v ^ (1 << w) in X.vertices}
        actual = tuple(i for i in range(X.n) if all((p ^ c) >> i & 1 for c in carrier))
        expected = tuple(sorted(u for u in earlier if not crossing(X, u, w)))
        if actual != expected:
            return n, (actual, expected)
        earlier.append(w)
    return None


def test_06_geodesic_characterisation(capsys):
    t0 = time.perf_counter()
    ok = True
    geodesics = rejected = 0
    for name in ("p3", "q2", "cube3", "t3"):
        X = FIX[name]
        for u in X.sorted_vertices:
            for v in X.sorted_vertices:
                for g in enumerate_geodesics(X, u, v):
                    ok &= geodesic_from_sequence(X, u, g.sequence) == g
                    geodesics += 1
            for k in range(1, X.n + 1):
                for seq in permutations(range(X.n), k):
                    fail = condition_failure(X, u, seq)
                    if fail is None:
                        g = geodesic_from_sequence(X, u, seq)
                        ok &= len(set(g.sequence)) == len(g.sequence) == g.length
                        continue
                    try:
                        geodesic_from_sequence(X, u, seq)
                        ok = False
                    except OrderViolated as e:
                        ok &= (e.index, e.witness) == fail
                        rejected += 1
    elapsed = time.perf_counter() - t0
    detail = f"{geodesics} geodesics rebuilt, {rejected} sequences rejected at the right index"
    assert verdict(capsys, 6, "geodesic characterisation on P3, Q2, 3-cube, T3", ok, elapsed, detail=detail)


# -- 7 -------------------------------------------------------------------------


def test_07_helly_gate_bridge(capsys):
    t0 = time.perf_counter()
    ok = True
    families = gates = pairs = 0
    for X in FIX.values():
        halves = [halfspace_set(X, h) for h in X.halfspaces()]
        intervals = [hull(X, [a, b]) for a, b in combinations(X.sorted_vertices, 2)]
        sets = halves + intervals
        # Helly: families of up to 5 halfspaces, up to 3 mixed convex sets
        fams = [f for k in range(1, 6) for f in combinations(halves, k)]
        fams += [f for k in range(2, 4) for f in combinations(sets, k) if any(c in intervals for c in f)]
        for fam in fams:
            if all(a.vertices & b.vertices for a, b in combinations(fam, 2)):
                res = helly_intersection(X, fam)
                common = set.intersection(*(set(c.vertices) for c in fam))
                ok &= bool(res.vertices) and res.vertices == common
                families += 1
        # gate contract W(x | gate) = W(x | C)
        for C in sets:
            for x in X.vertices:
                g = gate(X, C, x)
                W = sum(1 << i for i in range(X.n) if all((x ^ c) >> i & 1 for c in C.vertices))
                ok &= (x ^ g) == W and g in C.vertices
                gates += 1
        # distance formula on disjoint halfspace pairs
        for h in X.halfspaces():
            for k in X.halfspaces():
                if h.hyperplane == k.hyperplane or side(X, h.hyperplane, h.sign) & side(X, k.hyperplane, k.sign):
                    continue
                b = bridge(X, h, k)
                S1, S2 = hull(X, b.shore_h), hull(X, b.shore_k)
                gap = min(X.weight_of(a ^ c) for a in side(X, h.hyperplane, h.sign) for c in side(X, k.hyperplane, k.sign))
                ok &= b.gap == gap
                for x in side(X, h.hyperplane, h.sign):
                    for y in side(X, k.hyperplane, k.sign):
                        rhs = (
                            distance_to_set(X, x, S1)
                            + X.weight_of(gate(X, S1, x) ^ gate(X, S1, y))
                            + gap
                            + distance_to_set(X, y, S2)
                        )
                        ok &= X.weight_of(x ^ y) == rhs
                pairs += 1
    elapsed = time.perf_counter() - t0
    detail = f"{families} Helly families, {gates} gates, {pairs} disjoint pairs"
    assert verdict(capsys, 7, "Helly, gate contract and bridge distance formula on fixtures", ok, elapsed, detail=detail)


# -- 8 -------------------------------------------------------------------------


def test_08_squarisation_and_hedgehog(capsys):
    t0 = time.perf_counter()
    ok = True
    for name in ("p3", "t3"):
        X = FIX[name]
        S, D = squarise(X), subdivide(X)
        verts = X.sorted_vertices
        for u, v in combinations(verts, 2):
            ok &= S.weight_of(square_image(X, u) ^ square_image(X, v)) == 2 * X.weight_of(u ^ v)
        for quad in permutations(verts, 4):
            cr = cross_ratio(X, *quad)
            ok &= cross_ratio(S, *(square_image(X, v) for v in quad)) == 2 * cr
            ok &= cross_ratio(D, *(subdivision_image(X, v) for v in quad)) == 2 * cr
        ok &= sorted(hyperplane_essential_failures(S, 1)) == list(range(S.n))
        ok &= not is_r_hyperplane_essential(S, 1)
        H = hedgehog(X, verts)
        for u, v in combinations(verts, 2):
            ok &= H.weight_of(u ^ v) == X.weight_of(u ^ v)
        for quad in permutations(verts, 4):
            ok &= cross_ratio(H, *quad) == cross_ratio(X, *quad)
        failing = set(essential_depths(H).failing(1))
        ok &= set(range(X.n, H.n)) <= failing
    elapsed = time.perf_counter() - t0
    assert verdict(capsys, 8, "squarisation doubles d and cr, hedgehog preserves them, essentiality fails", ok, elapsed)


# -- 9 -------------------------------------------------------------------------


def test_09_all_trustworthy_on_trees(capsys):
    t0 = time.perf_counter()
    r = rng(2009)
    ok = True
    valid = invalid = 0
    for _ in range(20):
        X = random_tree(r, r.randint(5, 6))
        verts = X.sorted_vertices
        for labels in product((0, 1, 2), repeat=len(verts)):
            P = [v for v, l in zip(verts, labels) if l == 1]
            Q = [v for v, l in zip(verts, labels) if l == 2]
            if len(P) < 2 or len(Q) < 2:
                continue
            good = all(sep(X, x, y, z, w) for x in P for y in P for z in Q for w in Q)
            UPQ = sum(1 << i for i in range(X.n) if len({v >> i & 1 for v in P}) == 1
                      and len({v >> i & 1 for v in Q}) == 1 and (P[0] ^ Q[0]) >> i & 1)
            try:
                res = separating_quadruple(X, None, P, Q)
            except PreconditionFailed:
                ok &= not good
                invalid += 1
                continue
            ok &= good and sep(X, *res.quadruple) == UPQ and res.separators == bits_of(UPQ)
            valid += 1
    elapsed = time.perf_counter() - t0
    detail = f"{valid} valid partitions, {invalid} correctly refused"
    assert verdict(capsys, 9, "separating quadruple realises U(P|Q) on 20 random trees", ok, elapsed, detail=detail)


# -- 10 ------------------------------------------------------------------------


def test_10_tree_isometry_extension(capsys):
    t0 = time.perf_counter()
    r = rng(2010)
    ok = True
    perturbed = 0
    for _ in range(50):
        X = random_tree(r, r.randint(1, 12), weighted=True)
        perm = list(range(X.n))
        r.shuffle(perm)
        g = Automorphism(tuple(perm), r.getrandbits(X.n))
        weights = [None] * X.n
        for i, j in enumerate(perm):
            weights[j] = X.weights[i]
        Y = CubeComplex(X.n, [g.apply(v) for v in X.vertices], weights)
        # compose with a random symmetry of Y so psi is not always the relabelling
        h = r.choice(all_automorphisms(Y))
        extra = set(r.sample(X.sorted_vertices, r.randint(0, len(X) // 2)))
        T1 = MetricTree(X, set(MetricTree(X).V) | extra)
        psi = {v: h.apply(g.apply(v)) for v in T1.V}
        T2 = MetricTree(Y, set(psi.values()))
        Psi = extend_leaf_isometry(T1, T2, psi)
        ok &= all(Psi[v].is_vertex and Psi[v].u == psi[v] for v in psi)
        for a, b in combinations(X.sorted_vertices, 2):
            ok &= T2.point_distance(Psi[a], Psi[b]) == X.weight_of(a ^ b)
        for a in psi:
            for c in T2.V - {psi[a]}:
                bad = dict(psi)
                bad[a] = c
                try:
                    extend_leaf_isometry(T1, T2, bad)
                    ok = False
                except NotDistancePreserving:
                    perturbed += 1
    elapsed = time.perf_counter() - t0
    detail = f"{perturbed} single-value perturbations rejected"
    assert verdict(capsys, 10, "leaf isometries extend uniquely on 50 weighted trees", ok, elapsed, detail=detail)


# -- 11 ------------------------------------------------------------------------


def oracle_depth(X, i, s):
    S = side(X, i, s)
    carrier = {v for v in S if v ^ (1 << i) in X.vertices}
    return max(bfs_dist_to_set(X, v, carrier) for v in S)


def test_11_one_light_and_heavy_cube(capsys):
    t0 = time.perf_counter()
    r = rng(2011)
    ok = True
    complexes = list(FIX.values()) + [random_complex(r, 10, max_vertices=300) for _ in range(50)]
    for X in complexes:
        rep = median_barycentre(X)
        heavy = []
        for i in range(X.n):
            neg, pos = oracle_depth(X, i, -1), oracle_depth(X, i, 1)
            want = None if neg == pos else Halfspace(i, 1 if pos > neg else -1)
            ok &= rep.heavy[i] == want
            if want is not None:
                heavy.append(want)
        light = lambda h: rep.heavy[h.hyperplane] not in (None, h)
        for h, k in combinations(X.halfspaces(), 2):
            if h.hyperplane != k.hyperplane and not side(X, h.hyperplane, h.sign) & side(X, k.hyperplane, k.sign):
                ok &= light(h) or light(k)
        for a, b in combinations(heavy, 2):
            ok &= bool(side(X, a.hyperplane, a.sign) & side(X, b.hyperplane, b.sign))
        cube = set(X.vertices)
        for h in heavy:
            cube &= side(X, h.hyperplane, h.sign)
        spanned = {i for i in range(X.n) if len({v >> i & 1 for v in cube}) == 2}
        ok &= spanned == set(rep.balanced) and len(cube) == 2 ** len(spanned)
        ok &= cube == set(rep.cube.vertices())
    elapsed = time.perf_counter() - t0
    assert verdict(capsys, 11, f"one light side per disjoint pair and heavy cube on {len(complexes)} complexes", ok, elapsed)


# -- 12 ------------------------------------------------------------------------


def test_12_automorphisms_fix_barycentre(capsys):
    t0 = time.perf_counter()
    ok = True
    total = 0
    for X in FIX.values():
        group = all_automorphisms(X)
        G = graph(X)
        ok &= len(group) == sum(1 for _ in GraphMatcher(G, G).isomorphisms_iter())
        rep = median_barycentre(X)
        for g in group:
            ok &= g.apply_coords(rep.coordinates) == rep.coordinates
            d = displacement(X, g)
            ok &= d.length == 0 and all(isinstance(x, int) for x in d.profile.values())
            total += 1
    elapsed = time.perf_counter() - t0
    assert verdict(capsys, 12, f"all {total} fixture automorphisms fix the barycentre", ok, elapsed)


# -- 13 ------------------------------------------------------------------------


def matches_up_to_iso(A, B):
    B = list(B)
    for F in A:
        k = next((k for k, G in enumerate(B) if is_isomorphic(F, G)), None)
        if k is None:
            return False
        B.pop(k)
    return not B


def test_13_de_rham(capsys):
    t0 = time.perf_counter()
    r = rng(2013)
    ok = True
    for _ in range(30):
        X = random_complex(r, 5, max_vertices=30)
        Y = random_complex(r, 5, max_vertices=30)
        got = irreducible_factors(cproduct(X, Y))
        ok &= matches_up_to_iso(got, irreducible_factors(X) + irreducible_factors(Y))
    elapsed = time.perf_counter() - t0
    assert verdict(capsys, 13, "irreducible factors of products on 30 random pairs", ok, elapsed)
