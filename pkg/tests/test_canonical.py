import random

import pytest

from gch.canonical import (
    automorphism_group,
    canonical_form,
    edge_action,
    edge_action_closure,
    has_odd_symmetry,
    pair_automorphisms,
)
from gch.families import (
    banana,
    cycle,
    dumbbell,
    rose,
    single_edge,
    theta,
    triangle_with_doubled_edge,
    wheel,
)
from gch.graph import HalfEdgeGraph, SubgraphMask


def brute_force_automorphism_count(g):
    """Count all half-edge bijections commuting with incidence and involution."""
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
            if used[t]:
                continue
            if partner is not None and partner != t ^ 1:
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


def shuffled_copy(g, rng):
    perm = list(range(g.vertex_count))
    rng.shuffle(perm)
    edges = [(perm[u], perm[v]) for u, v in g.edges]
    rng.shuffle(edges)
    weights = [0] * g.vertex_count
    for v, w in enumerate(g.weights):
        weights[perm[v]] = w
    return HalfEdgeGraph.build(g.vertex_count, edges, weights)


SMALL_GRAPHS = [
    single_edge(),
    theta(),
    dumbbell(),
    rose(1),
    rose(2),
    banana(2),
    banana(4),
    cycle(3),
    cycle(4),
    cycle(5),
    triangle_with_doubled_edge(),
    HalfEdgeGraph.build(2, [(0, 0), (0, 1)], weights=(0, 1)),
    HalfEdgeGraph.build(2, [(0, 1)], weights=(1, 1)),
]


@pytest.mark.parametrize("g", SMALL_GRAPHS, ids=lambda g: str(g))
def test_certificate_relabeling_invariance(g):
    rng = random.Random(7)
    cert = canonical_form(g).certificate
    for _ in range(25):
        assert canonical_form(shuffled_copy(g, rng)).certificate == cert


def test_certificates_distinguish():
    certs = {canonical_form(g).certificate for g in SMALL_GRAPHS}
    assert len(certs) == len(SMALL_GRAPHS)


def test_canonical_iso_is_valid():
    for g in SMALL_GRAPHS:
        form = canonical_form(g)
        assert form.iso.check()
        assert form.iso.target == form.graph
        # idempotent: canonicalizing a canonical graph is the identity relabeling
        again = canonical_form(form.graph)
        assert again.certificate == form.certificate
        assert again.graph == form.graph


@pytest.mark.parametrize(
    "g,order",
    [
        (rose(1), 2),
        (theta(), 12),
        (wheel(5), 10),
        (dumbbell(), 8),
        (rose(2), 8),
        (banana(2), 4),
    ],
)
def test_automorphism_group_orders(g, order):
    assert automorphism_group(g).order == order


@pytest.mark.parametrize("g", SMALL_GRAPHS, ids=lambda g: str(g))
def test_automorphism_order_matches_brute_force(g):
    assert automorphism_group(g).order == brute_force_automorphism_count(g)


def test_generators_are_automorphisms():
    for g in SMALL_GRAPHS:
        group = automorphism_group(g)
        for m in group.generators:
            assert m.check()
            assert m.source == m.target == g


def test_edge_action_examples():
    from gch.graph import identity_morphism

    g = theta()
    group = automorphism_group(g)
    assert edge_action(identity_morphism(g)) == (0, 1, 2)
    swap = next(
        m for m in group.generators
        if m.vertex_map == (0, 1) and edge_action(m) == (0, 2, 1)
    )
    assert edge_action(swap) == (0, 2, 1)
    _, collapse = g.contract(0)
    assert edge_action(collapse) == (None, 0, 1)


def test_pair_automorphisms_examples():
    g = theta()
    assert pair_automorphisms(g, SubgraphMask(g, frozenset({0}))).order == 4
    full = automorphism_group(g).order
    assert pair_automorphisms(g, SubgraphMask(g, frozenset())).order == full
    assert pair_automorphisms(g, SubgraphMask(g, frozenset({0, 1, 2}))).order == full


def test_pair_automorphism_generators_stabilize():
    g = dumbbell()
    mask = SubgraphMask(g, frozenset({0, 1}))
    group = pair_automorphisms(g, mask)
    for m in group.generators:
        assert {m.edge_action[e] for e in mask.edge_subset} == set(mask.edge_subset)


@pytest.mark.parametrize(
    "g,parity,expected",
    [
        (banana(3), "even", True),
        (wheel(5), "even", False),
        (banana(3), "odd", False),
        (wheel(4), "odd", True),
        (wheel(3), "even", False),
        (cycle(4), "even", True),
        (cycle(5), "even", False),
        (cycle(7), "odd", False),
        (rose(1), "odd", True),
        (rose(1), "even", False),
    ],
)
def test_has_odd_symmetry(g, parity, expected):
    assert has_odd_symmetry(g, parity) is expected


def test_pair_edge_sign_example():
    # the swap of the two parallel edges outside the forest fixes it pointwise
    g = theta()
    assert has_odd_symmetry(g, "even", forest=SubgraphMask(g, frozenset({0}))) is False


def test_odd_symmetry_oracle_equivalence():
    """Even case: odd symmetry iff some brute-force element has odd edge sign."""
    from gch.orientation import perm_parity

    for g in SMALL_GRAPHS:
        n = g.half_edge_count
        found = False

        def edge_sign_of(hmap):
            return perm_parity([hmap[2 * e] >> 1 for e in range(g.edge_count)])

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
            nonlocal found
            if found:
                return
            h = next((i for i in range(n) if hmap[i] is None), None)
            if h is None:
                if edge_sign_of(hmap) == -1:
                    found = True
                return
            partner = hmap[h ^ 1]
            for t in range(n):
                if used[t]:
                    continue
                if partner is not None and partner != t ^ 1:
                    continue
                if not vertex_ok(h, t, hmap):
                    continue
                hmap[h] = t
                used[t] = True
                extend(hmap, used)
                hmap[h] = None
                used[t] = False

        extend([None] * n, [False] * n)
        assert has_odd_symmetry(g, "even") is found, str(g)


def test_edge_action_closure_sizes():
    assert len(edge_action_closure(automorphism_group(theta()))) == 6
    assert len(edge_action_closure(automorphism_group(rose(2)))) == 2
    assert len(edge_action_closure(automorphism_group(wheel(5)))) == 10
