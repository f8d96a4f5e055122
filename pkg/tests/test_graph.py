import pytest

from gch.families import banana, cycle, dumbbell, rose, theta, weighted_point, wheel
from gch.graph import (
    DisconnectedGraphError,
    HalfEdgeGraph,
    SubgraphMask,
    contract_edge,
    genus,
    is_stable,
    loop_number,
    structural_predicates,
)


def test_loop_number_examples():
    assert loop_number(theta()) == 2
    assert loop_number(HalfEdgeGraph.build(1, [])) == 0
    assert loop_number(dumbbell()) == 2


def test_loop_number_rejects_disconnected():
    g = HalfEdgeGraph.build(4, [(0, 1), (2, 3)])
    with pytest.raises(DisconnectedGraphError):
        loop_number(g)


def test_genus_examples():
    assert genus(theta()) == 2
    assert genus(weighted_point(2)) == 2
    assert genus(HalfEdgeGraph.build(1, [(0, 0)], weights=(1,))) == 2


def test_stability_examples():
    assert is_stable(theta())
    assert not is_stable(cycle(4))
    assert is_stable(HalfEdgeGraph.build(2, [(0, 1)], weights=(1, 1)))
    # a tadpole contributes two to its vertex valence
    assert is_stable(dumbbell())


def test_half_edge_structure():
    g = theta()
    assert g.half_edge_count == 6
    for h in range(6):
        assert g.epsilon(g.epsilon(h)) == h
        assert g.epsilon(h) != h
    assert g.iota(0) == 0 and g.iota(1) == 1


def test_contract_theta_gives_rose():
    g = theta()
    target, m = g.contract(2)
    assert target.vertex_count == 1
    assert target.edges == ((0, 0), (0, 0))
    assert m.check()
    assert m.edge_action == (0, 1, None)


def test_contract_tadpole_increments_weight():
    g = dumbbell()  # edges: tadpole at 0, bridge, tadpole at 1
    target, m = g.contract(0)
    assert target.vertex_count == 2
    assert target.weights == (1, 0)
    assert target.edges == ((0, 1), (1, 1))
    assert genus(target) == genus(g) == 2
    assert m.check()


def test_contract_weighted_edge():
    g = HalfEdgeGraph.build(2, [(0, 1)], weights=(1, 1))
    target, _ = g.contract(0)
    assert target.vertex_count == 1
    assert target.weights == (2,)
    assert target.edges == ()


@pytest.mark.parametrize("g", [theta(), dumbbell(), wheel(4), cycle(5), banana(4), rose(3)])
def test_contraction_preserves_genus_and_tracks_loops(g):
    for e in range(g.edge_count):
        target, m = g.contract(e)
        assert m.check()
        assert genus(target) == genus(g)
        if g.is_tadpole(e):
            assert loop_number(target) == loop_number(g) - 1
        else:
            assert loop_number(target) == loop_number(g)


def test_contraction_preserves_stability():
    stable = [
        theta(),
        dumbbell(),
        HalfEdgeGraph.build(2, [(0, 0), (0, 1)], weights=(0, 1)),
        HalfEdgeGraph.build(1, [(0, 0)], weights=(1,)),
        wheel(3),
    ]
    for g in stable:
        assert is_stable(g)
        for e in range(g.edge_count):
            assert is_stable(g.contract(e)[0])


def test_structural_predicates_dumbbell():
    rep = structural_predicates(dumbbell())
    assert rep.has_tadpole
    assert rep.bridges == frozenset({1})
    assert not rep.is_bridge_free
    assert not rep.is_one_vertex_irreducible


def test_structural_predicates_theta():
    rep = structural_predicates(theta())
    assert not rep.has_tadpole
    assert rep.bridges == frozenset()
    assert rep.is_bridge_free
    assert rep.is_one_vertex_irreducible


def test_forest_mask():
    g = theta()
    assert SubgraphMask(g, frozenset()).is_forest
    assert SubgraphMask(g, frozenset({0})).is_forest
    assert not SubgraphMask(g, frozenset({0, 1})).is_forest
    d = dumbbell()
    assert not SubgraphMask(d, frozenset({0})).is_forest  # tadpole is a cycle
    assert SubgraphMask(d, frozenset({1})).is_forest


def test_contract_edge_function():
    assert contract_edge(theta(), 0).vertex_count == 1
