"""Named verification suites behind ``gch verify`` and the acceptance tests.

Each check returns a :class:`CheckResult`.  The ``core`` suite is a fast
smoke battery; the ``paper`` suite is the full battery of exact
cross-checks: boundary-squared vanishing for every complex kind, the
symmetry vanishing table of the cycle/wheel/banana families, the known
small homology values, the moduli dimension formulas, the ribbon surface
invariants and the property suites (relabeling invariance, brute-force
automorphism counts, sign multiplicativity, spanning-tree independence,
enumeration completeness, rank oracle, Euler identities).
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from fractions import Fraction

from .canonical import automorphism_group, canonical_form
from .complexes import (
    ComplexSpec,
    build_complex,
    generator_vanishes,
    homology,
    split_by_surface,
)
from .families import banana, cycle, rose, theta, triangle_with_doubled_edge, wheel
from .generate import EnumSpec, enumerate_graphs, enumerate_forests
from .graph import HalfEdgeGraph, identity_morphism
from .linalg import SparseMatrix, rank
from .moduli import build_cell_poset, build_spine, f_vector
from .orientation import (
    exchange_rebase,
    h1_determinant_sign,
    morphism_sign,
    reference_orientation,
)
from .ribbon import contract_ribbon, surface_invariants


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float


def _run(name, fn):
    start = time.time()
    try:
        detail = fn()
        passed = True
        if detail is None:
            detail = "ok"
    except AssertionError as exc:
        passed = False
        detail = str(exc) or "assertion failed"
    return CheckResult(name=name, passed=passed, detail=detail, seconds=time.time() - start)


def _variant_max_edges(kind):
    return 9 if ("geq2" in kind or "tad" in kind) else None


# ---------------------------------------------------------------------------
# full-suite checks


def check_boundary_squared():
    """d o d = 0 exactly for every kind, both parities, genus 2..4."""
    from .complexes import KINDS

    total = 0
    for genus in (2, 3, 4):
        for kind in KINDS:
            if kind.startswith("cellular") and genus < 2:
                continue
            for parity in ("even", "odd"):
                spec = ComplexSpec(kind, parity, genus, max_edges=_variant_max_edges(kind))
                c = build_complex(spec)
                assert c.d_squared_is_zero(), f"d^2 != 0 for {spec}"
                total += c.total_generators()
    return f"all boundaries square to zero ({total} generators touched)"


def _vanishing_table_rows():
    rows = []
    # cycles: even survive iff n = 1 mod 4; odd survive iff n = 3 mod 4
    for n in range(1, 10):
        rows.append((f"C{n}", cycle(n), "even", n % 4 != 1))
        rows.append((f"C{n}", cycle(n), "odd", n % 4 != 3))
    # bananas from n=2 (the single edge has no symmetry to kill it):
    # even always vanish, odd vanish exactly for even n
    for n in range(2, 10):
        rows.append((f"B{n}", banana(n), "even", True))
        rows.append((f"B{n}", banana(n), "odd", n % 2 == 0))
    # even wheels vanish in both parities; odd wheels survive in the even
    # parity and vanish for odd parity exactly when the spoke count is 4k+1
    for n in range(1, 10):
        rows.append((f"W{2 * n}", wheel(2 * n), "even", True))
        rows.append((f"W{2 * n}", wheel(2 * n), "odd", True))
    for n in range(1, 10):
        rows.append((f"W{2 * n + 1}", wheel(2 * n + 1), "even", False))
        rows.append((f"W{2 * n + 1}", wheel(2 * n + 1), "odd", n % 2 == 0))
    return rows


def check_vanishing_table():
    """Symmetry vanishing of cycles, bananas and wheels for both parities."""
    bad = []
    for name, graph, parity, expected in _vanishing_table_rows():
        got, _ = generator_vanishes(graph, parity)
        if got is not expected:
            bad.append(f"{name}/{parity}: expected vanish={expected}, got {got}")
    assert not bad, "; ".join(bad)
    return f"{len(_vanishing_table_rows())} rows match"


def check_small_commutative_homology():
    """Genus 2 even: empty complex; genus 3 even: one class on six edges."""
    c2 = build_complex(ComplexSpec("com", "even", 2))
    assert c2.total_generators() == 0, "genus-2 even complex should be empty"
    report = homology(build_complex(ComplexSpec("com", "even", 3)))
    expected = {k: (1 if k == 6 else 0) for k in report.dims}
    assert report.dims == expected, f"genus-3 dims {report.dims}"
    top = build_complex(ComplexSpec("com", "even", 3)).grades[6]
    assert top[0].key == canonical_form(wheel(3)).certificate
    return "genus 2 empty; genus 3 homology Q at six edges (the 3-spoke wheel)"


def check_moduli_genus2_contractible():
    """The genus-2 cell complex has trivial reduced homology; by hand the
    surviving generators are the two one-edge graphs and the tadpole
    antenna, whose boundary has rank one."""
    c = build_complex(ComplexSpec("cellular_MG", "even", 2))
    counts = c.generator_counts()
    assert counts == [0, 2, 1], f"generator counts {counts}"
    one_edge = {gen.graph.edges for gen in c.grades[1]}
    assert one_edge == {((0, 1),), ((0, 0),)}, "unexpected one-edge generators"
    antenna = c.grades[2][0].graph
    assert sorted(antenna.weights) == [0, 1] and antenna.edge_count == 2
    assert rank(c.boundary(2)) == 1
    report = homology(c)
    reduced = dict(report.dims)
    reduced[1] -= 1  # one connected component
    assert all(v == 0 for v in reduced.values()), f"reduced dims {reduced}"
    return "reduced homology vanishes on generators {weight-1 pair, weight-1 tadpole; antenna}"


def check_relative_cells_match_commutative():
    """Relative weight-zero cells compute commutative graph homology, and
    agree with reduced absolute cell homology, genus 2 and 3."""
    for genus in (2, 3):
        com = homology(build_complex(ComplexSpec("com", "even", genus)))
        rel = homology(build_complex(ComplexSpec("cellular_MG_relative", "even", genus)))
        top = max(max(com.counts, default=0), max(rel.counts, default=0))
        for k in range(top + 1):
            assert com.dims.get(k, 0) == rel.dims.get(k, 0), \
                f"genus {genus} grade {k}: com {com.dims.get(k, 0)} vs relative {rel.dims.get(k, 0)}"
        absolute = homology(build_complex(ComplexSpec("cellular_MG", "even", genus)))
        for k in range(top + 1):
            reduced = absolute.dims.get(k, 0) - (1 if k == 1 else 0)
            assert rel.dims.get(k, 0) == reduced, \
                f"genus {genus} grade {k}: relative {rel.dims.get(k, 0)} vs reduced {reduced}"
    return "relative = commutative = reduced absolute, genus 2 and 3"


def check_one_loop_window():
    """One-loop bivalent complexes on at most nine edges: surviving classes
    sit exactly on the 5- and 9-cycles (even) resp. 3- and 7-cycles (odd)."""
    even = homology(build_complex(ComplexSpec("com_geq2", "even", 1, max_edges=9)))
    assert {k for k, v in even.dims.items() if v} == {5, 9}, even.dims
    assert even.dims[5] == even.dims[9] == 1
    odd = homology(build_complex(ComplexSpec("com_geq2", "odd", 1, max_edges=9)))
    assert {k for k, v in odd.dims.items() if v} == {3, 7}, odd.dims
    assert odd.dims[3] == odd.dims[7] == 1
    tad_even = homology(build_complex(ComplexSpec("com_tad_geq2", "even", 1, max_edges=9)))
    assert {k for k, v in tad_even.dims.items() if v} == {1, 5, 9}, tad_even.dims
    return "windows {5,9} even, {3,7} odd, plus the one-edge loop class with tadpoles"


def check_forested_genus2():
    """The genus-2 forested complex: edge-only orientation gives a single
    class in grade zero (a connected spine); the cycle-twisted variant is
    entirely killed by symmetries."""
    even = homology(build_complex(ComplexSpec("gf", "even", 2)))
    assert even.dims == {0: 1, 1: 0}, even.dims
    odd = build_complex(ComplexSpec("gf", "odd", 2))
    assert odd.total_generators() == 0, "twisted genus-2 forested complex should be empty"
    return "edge-only: H0 = Q and nothing above; twisted: zero complex"


def check_cubical_commutative_experiment():
    """Cube pairs over weight-zero graphs reproduce commutative homology
    one grade down (subset size k against edge count k+1), genus 2 and 3."""
    for genus in (2, 3):
        gp = homology(build_complex(ComplexSpec("gp", "even", genus)))
        com = homology(build_complex(ComplexSpec("com", "even", genus)))
        top = max(max(com.counts, default=0), max(gp.counts, default=0) + 1)
        for k in range(top):
            assert gp.dims.get(k, 0) == com.dims.get(k + 1, 0), \
                f"genus {genus}: cube grade {k} = {gp.dims.get(k, 0)} vs edge grade {k + 1} = {com.dims.get(k + 1, 0)}"
    return "cube-pair homology matches the commutative complex, genus 2 and 3"


def check_moduli_dimensions():
    """Cell dimension 3g-4, spine dimension 2g-3 (genus 2..4), and five
    spanning-tree cubes in the doubled-edge triangle."""
    for genus in (2, 3, 4):
        poset = build_cell_poset(genus)
        assert poset.max_dimension == 3 * genus - 4, \
            f"genus {genus}: cell dimension {poset.max_dimension}"
        spine = build_spine(genus)
        assert spine.max_dimension == 2 * genus - 3, \
            f"genus {genus}: spine dimension {spine.max_dimension}"
        assert spine.facets_closed()
    g = triangle_with_doubled_edge()
    spanning = [m for m in enumerate_forests(g) if len(m.edge_subset) == g.vertex_count - 1]
    assert len(spanning) == 5, f"{len(spanning)} spanning trees"
    return "cell dimension 3g-4 and spine dimension 2g-3 for genus 2..4; 5 tree cubes"


def check_ribbon_surfaces():
    """Theta thickens to (0,3) and (1,1); surface invariants survive every
    contraction up to six edges; ribbon boundaries are surface-diagonal."""
    from .generate import enumerate_ribbon_structures

    ribs = enumerate_ribbon_structures(theta())
    invs = sorted(surface_invariants(theta(), r) for r in ribs)
    assert invs == [(0, 3), (1, 1)], invs
    checked = 0
    for genus in (2, 3):
        for form in enumerate_graphs(EnumSpec(genus=genus, min_valence=3,
                                              allow_tadpoles=True, max_edges=6)):
            g = form.graph
            for rib in enumerate_ribbon_structures(g):
                inv = surface_invariants(g, rib)
                for e in range(g.edge_count):
                    if g.is_tadpole(e):
                        continue
                    t, trib, _ = contract_ribbon(g, rib, e)
                    assert surface_invariants(t, trib) == inv, (g, e)
                    checked += 1
    for genus in (2, 3):
        for parity in ("even", "odd"):
            blocks = split_by_surface(build_complex(ComplexSpec("ass", parity, genus)))
            for sub in blocks.values():
                assert sub.d_squared_is_zero()
    return f"theta surfaces (0,3)/(1,1); {checked} contractions preserved invariants; blocks closed"


# ---------------------------------------------------------------------------
# property suites


def _shuffled(g, rng):
    perm = list(range(g.vertex_count))
    rng.shuffle(perm)
    edges = [(perm[u], perm[v]) for u, v in g.edges]
    rng.shuffle(edges)
    weights = [0] * g.vertex_count
    for v, w in enumerate(g.weights):
        weights[perm[v]] = w
    return HalfEdgeGraph.build(g.vertex_count, edges, weights)


def check_relabeling_invariance():
    """200 random relabelings per generator graph up to genus 3."""
    rng = random.Random(1)
    graphs = []
    for genus in (2, 3):
        graphs += [f.graph for f in enumerate_graphs(
            EnumSpec(genus=genus, min_valence=3, allow_tadpoles=True))]
        graphs += [f.graph for f in enumerate_graphs(
            EnumSpec(genus=genus, weighted=True, allow_tadpoles=True, min_edges=1))]
    count = 0
    for g in graphs:
        cert = canonical_form(g).certificate
        for _ in range(200):
            assert canonical_form(_shuffled(g, rng)).certificate == cert, str(g)
            count += 1
    return f"{count} relabelings, all certificates stable"


def _brute_force_aut_count(g):
    n = g.half_edge_count
    count = 0

    def vertex_ok(h, t, hmap):
        if g.weights[g.iota(h)] != g.weights[g.iota(t)]:
            return False
        if g.valences[g.iota(h)] != g.valences[g.iota(t)]:
            return False
        for x in range(n):
            if hmap[x] is None:
                continue
            if (g.iota(x) == g.iota(h)) != (g.iota(hmap[x]) == g.iota(t)):
                return False
        return True

    def extend(hmap, used):
        nonlocal count
        h = next((i for i in range(n) if hmap[i] is None), None)
        if h is None:
            count += 1
            return
        partner = hmap[h ^ 1]
        for t in range(n):
            if used[t] or (partner is not None and partner != t ^ 1):
                continue
            if not vertex_ok(h, t, hmap):
                continue
            hmap[h] = t
            used[t] = True
            extend(hmap, used)
            hmap[h] = None
            used[t] = False

    extend([None] * n, [False] * n)
    return max(count, 1)


def _small_graph_pool(max_edges=5):
    pool = []
    for genus in (2, 3):
        for f in enumerate_graphs(EnumSpec(genus=genus, min_valence=3, allow_tadpoles=True)):
            if f.graph.edge_count <= max_edges:
                pool.append(f.graph)
        for f in enumerate_graphs(EnumSpec(genus=genus, weighted=True,
                                           allow_tadpoles=True, min_edges=1)):
            if f.graph.edge_count <= max_edges:
                pool.append(f.graph)
    pool.append(cycle(4))
    pool.append(wheel(3))
    pool.append(triangle_with_doubled_edge())
    return pool


def check_automorphism_orders():
    """Group orders against the exhaustive half-edge bijection count, e <= 5."""
    count = 0
    for g in _small_graph_pool(5):
        assert automorphism_group(g).order == _brute_force_aut_count(g), str(g)
        count += 1
    return f"{count} graphs agree with the brute-force count"


def check_sign_multiplicativity():
    """morphism_sign is a homomorphism on random automorphism words."""
    rng = random.Random(17)
    for g in [theta(), rose(2), cycle(5), banana(4), wheel(3), triangle_with_doubled_edge()]:
        ref = reference_orientation(g)
        gens = list(automorphism_group(g).generators)
        if not gens:
            continue
        for parity in ("even", "odd"):
            for _ in range(25):
                a, b = rng.choice(gens), rng.choice(gens)
                assert morphism_sign(a.compose(b), parity, ref, ref) == \
                    morphism_sign(a, parity, ref, ref) * morphism_sign(b, parity, ref, ref)
    return "signs multiply along composites"


def check_tree_independence():
    """Re-basing through edge exchanges never flips the cycle orientation."""
    count = 0
    for g in _small_graph_pool(5):
        if g.edge_count == 0:
            continue
        ref = reference_orientation(g)
        edges = range(g.edge_count)
        for tree in itertools.combinations(edges, g.vertex_count - 1):
            try:
                rebased, sign = exchange_rebase(ref, frozenset(tree))
            except ValueError:
                continue  # not a spanning tree
            assert sign == 1
            assert h1_determinant_sign(identity_morphism(g), rebased, ref) == 1
            count += 1
    return f"{count} spanning-tree rebases, orientation class fixed"


def check_enumeration_completeness():
    """Certificate-deduplicated generation against raw half-edge pairings.

    The oracle builds every multigraph from scratch by pairing half-edge
    stubs and separates classes by exhaustive vertex-permutation matching,
    independent of the canonical-form machinery.
    """

    def mult_key(edges, perm):
        m = {}
        for u, v in edges:
            a, b = perm[u], perm[v]
            key = (a, b) if a <= b else (b, a)
            m[key] = m.get(key, 0) + 1
        return tuple(sorted(m.items()))

    def classes(vertex_count, edge_count, min_val, tadpoles):
        reps = []

        def pairings(free):
            if not free:
                yield []
                return
            first = free[0]
            for i in range(1, len(free)):
                rest = free[1:i] + free[i + 1:]
                for tail in pairings(rest):
                    yield [(first, free[i])] + tail

        seen_edges = set()
        for degs in itertools.product(range(min_val, 2 * edge_count + 1), repeat=vertex_count):
            if sum(degs) != 2 * edge_count or list(degs) != sorted(degs, reverse=True):
                continue
            slots = []
            for v, k in enumerate(degs):
                slots.extend([v] * k)
            for pairing in pairings(list(range(len(slots)))):
                edges = tuple(sorted(tuple(sorted((slots[a], slots[b]))) for a, b in pairing))
                if edges in seen_edges:
                    continue
                seen_edges.add(edges)
                if not tadpoles and any(u == v for u, v in edges):
                    continue
                g = HalfEdgeGraph.build(vertex_count, edges)
                if not g.is_connected or any(d < min_val for d in g.valences):
                    continue
                if not any(
                    any(mult_key(edges, perm) == mult_key(r, tuple(range(vertex_count)))
                        for perm in itertools.permutations(range(vertex_count)))
                    for r in reps
                ):
                    reps.append(edges)
        return reps

    checked = 0
    for genus, min_val, tadpoles in [(2, 3, True), (2, 3, False), (3, 3, False), (2, 2, False)]:
        forms = enumerate_graphs(EnumSpec(genus=genus, min_valence=min_val,
                                          allow_tadpoles=tadpoles, max_edges=6))
        by_v = {}
        for f in forms:
            key = (f.graph.vertex_count, f.graph.edge_count)
            by_v[key] = by_v.get(key, 0) + 1
        v = 1
        while True:
            e = v + genus - 1
            if e > 6:
                break
            if e >= 1:
                expected = len(classes(v, e, min_val, tadpoles))
                assert by_v.get((v, e), 0) == expected, (genus, v, e)
                checked += 1
            v += 1
    return f"{checked} (vertices, edges) cells agree with the pairing oracle"


def check_rank_oracle():
    """Sparse fraction-free rank against dense Fraction elimination."""
    rng = random.Random(42)

    def dense_rank(m):
        a = m.dense()
        r = 0
        for c in range(m.cols):
            piv = next((i for i in range(r, m.rows) if a[i][c]), None)
            if piv is None:
                continue
            a[r], a[piv] = a[piv], a[r]
            pv = a[r][c]
            for i in range(m.rows):
                if i != r and a[i][c]:
                    f = a[i][c] / pv
                    a[i] = [x - f * y for x, y in zip(a[i], a[r])]
            r += 1
        return r

    for trial in range(100):
        rows = rng.randint(1, 20)
        cols = rng.randint(1, 20)
        entries = {}
        for i in range(rows):
            for j in range(cols):
                if rng.random() < 0.25:
                    v = rng.randint(-9, 9)
                    if v:
                        entries[(i, j)] = Fraction(v)
        m = SparseMatrix(rows, cols, entries)
        assert rank(m) == dense_rank(m), trial
    return "100 random matrices agree with the dense oracle"


def check_euler_identities():
    """Alternating sums of homology dimensions equal those of the chains."""
    specs = [
        ComplexSpec("com", "even", 3),
        ComplexSpec("com", "odd", 3),
        ComplexSpec("com_tad", "even", 3),
        ComplexSpec("cellular_MG", "even", 3),
        ComplexSpec("cellular_MG", "odd", 3),
        ComplexSpec("cellular_MG_relative", "even", 3),
        ComplexSpec("gf", "even", 3),
        ComplexSpec("gf", "odd", 3),
        ComplexSpec("gp", "even", 2),
        ComplexSpec("ass", "even", 2),
        ComplexSpec("com_geq2", "even", 1, max_edges=9),
    ]
    for spec in specs:
        report = homology(build_complex(spec))
        lhs = sum((-1) ** k * v for k, v in report.dims.items())
        rhs = sum((-1) ** k * v for k, v in report.counts.items())
        assert lhs == rhs, spec
    return f"{len(specs)} complexes satisfy the Euler identity"


PAPER_CHECKS = [
    ("boundary_squared_all_kinds", check_boundary_squared),
    ("vanishing_table", check_vanishing_table),
    ("small_commutative_homology", check_small_commutative_homology),
    ("moduli_genus2_contractible", check_moduli_genus2_contractible),
    ("relative_cells_match_commutative", check_relative_cells_match_commutative),
    ("one_loop_window", check_one_loop_window),
    ("forested_genus2", check_forested_genus2),
    ("cubical_commutative_experiment", check_cubical_commutative_experiment),
    ("moduli_dimensions", check_moduli_dimensions),
    ("ribbon_surfaces", check_ribbon_surfaces),
]

PROPERTY_CHECKS = [
    ("relabeling_invariance", check_relabeling_invariance),
    ("automorphism_orders", check_automorphism_orders),
    ("sign_multiplicativity", check_sign_multiplicativity),
    ("tree_independence", check_tree_independence),
    ("enumeration_completeness", check_enumeration_completeness),
    ("rank_oracle", check_rank_oracle),
    ("euler_identities", check_euler_identities),
]


def _core_checks():
    def quick_d_squared():
        for kind in ("com", "com_tad", "cellular_MG", "gf", "gp", "ass"):
            for parity in ("even", "odd"):
                c = build_complex(ComplexSpec(kind, parity, 2,
                                              max_edges=_variant_max_edges(kind)))
                assert c.d_squared_is_zero(), (kind, parity)
        return "genus-2 boundaries square to zero"

    def quick_surface():
        from .generate import enumerate_ribbon_structures

        invs = sorted(surface_invariants(theta(), r)
                      for r in enumerate_ribbon_structures(theta()))
        assert invs == [(0, 3), (1, 1)]
        return "theta thickening invariants"

    def quick_spine():
        spine = build_spine(2)
        assert f_vector(spine) == (3, 2)
        poset = build_cell_poset(2)
        assert f_vector(poset, odd_symmetry_free=True) == (2, 1, 0)
        return "genus-2 spine and cell counts"

    return [
        ("quick_boundary_squared", quick_d_squared),
        ("quick_surface_invariants", quick_surface),
        ("quick_genus2_cells", quick_spine),
        ("moduli_genus2_contractible", check_moduli_genus2_contractible),
        ("forested_genus2", check_forested_genus2),
    ]


def run_suite(name: str) -> list[CheckResult]:
    if name == "core":
        checks = _core_checks()
    elif name == "paper":
        checks = PAPER_CHECKS + PROPERTY_CHECKS
    else:
        raise ValueError(f"unknown suite {name!r}")
    return [_run(check_name, fn) for check_name, fn in checks]
