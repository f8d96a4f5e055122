"""Half-edge multigraphs with vertex weights.

A graph is stored as a vertex count, a weight per vertex and a tuple of
unordered vertex pairs, one pair per edge.  Edge ``i`` owns the half-edges
``2i`` and ``2i+1``; half-edge ``2i`` sits at ``edges[i][0]`` and ``2i+1``
at ``edges[i][1]``.  The edge involution is therefore ``h ^ 1`` and tadpoles
are pairs ``(v, v)``.  Legs (fixed points of the involution) are not
representable on purpose.

All values are immutable; every operation returns fresh objects.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property


class DisconnectedGraphError(ValueError):
    """Raised when an operation requires a connected graph."""


@dataclass(frozen=True)
class HalfEdgeGraph:
    vertex_count: int
    weights: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if len(self.weights) != self.vertex_count:
            raise ValueError("one weight per vertex required")
        if any(w < 0 for w in self.weights):
            raise ValueError("weights must be non-negative")
        norm = []
        for u, v in self.edges:
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise ValueError(f"edge ({u},{v}) out of range")
            norm.append((u, v) if u <= v else (v, u))
        object.__setattr__(self, "edges", tuple(norm))

    @staticmethod
    def build(vertex_count, edges, weights=None):
        if weights is None:
            weights = (0,) * vertex_count
        return HalfEdgeGraph(vertex_count, tuple(weights), tuple(tuple(e) for e in edges))

    # -- half-edge structure --------------------------------------------

    @property
    def edge_count(self):
        return len(self.edges)

    @property
    def half_edge_count(self):
        return 2 * len(self.edges)

    def iota(self, h):
        """Vertex carrying half-edge ``h``."""
        return self.edges[h >> 1][h & 1]

    def epsilon(self, h):
        """The other half of the edge of ``h``."""
        return h ^ 1

    def is_tadpole(self, e):
        u, v = self.edges[e]
        return u == v

    @cached_property
    def valences(self):
        val = [0] * self.vertex_count
        for u, v in self.edges:
            val[u] += 1
            val[v] += 1
        return tuple(val)

    def valence(self, v):
        return self.valences[v]

    @cached_property
    def tadpole_counts(self):
        t = [0] * self.vertex_count
        for u, v in self.edges:
            if u == v:
                t[u] += 1
        return tuple(t)

    @cached_property
    def has_tadpole(self):
        return any(u == v for u, v in self.edges)

    def incident_edges(self, v):
        return tuple(i for i, (a, b) in enumerate(self.edges) if a == v or b == v)

    @cached_property
    def multiplicities(self):
        """Multiset of edges as a dict ``(u, v) -> count`` with ``u <= v``."""
        mult: dict[tuple[int, int], int] = {}
        for e in self.edges:
            mult[e] = mult.get(e, 0) + 1
        return mult

    # -- connectivity and numerical invariants --------------------------

    @cached_property
    def is_connected(self):
        n = self.vertex_count
        if n <= 1:
            return True
        adj = [[] for _ in range(n)]
        for u, v in self.edges:
            if u != v:
                adj[u].append(v)
                adj[v].append(u)
        seen = bytearray(n)
        stack = [0]
        seen[0] = 1
        count = 1
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if not seen[y]:
                    seen[y] = 1
                    count += 1
                    stack.append(y)
        return count == n

    @cached_property
    def loop_number(self):
        """First Betti number e - v + 1; defined for connected graphs only."""
        if not self.is_connected:
            raise DisconnectedGraphError("loop number needs a connected graph")
        return len(self.edges) - self.vertex_count + 1

    @cached_property
    def genus(self):
        return self.loop_number + sum(self.weights)

    @cached_property
    def is_stable(self):
        """Every vertex satisfies 2*weight + valence > 2."""
        return all(2 * w + val > 2 for w, val in zip(self.weights, self.valences))

    # -- rebuilding ------------------------------------------------------

    def relabel(self, perm):
        """New graph with vertex ``i`` renamed ``perm[i]``; edge order kept."""
        weights = [0] * self.vertex_count
        for i, w in enumerate(self.weights):
            weights[perm[i]] = w
        edges = tuple((perm[u], perm[v]) for u, v in self.edges)
        return HalfEdgeGraph(self.vertex_count, tuple(weights), edges)

    def delete_edges(self, dropped):
        """Remove the given edge indices, keeping all vertices."""
        dropped = set(dropped)
        edges = tuple(e for i, e in enumerate(self.edges) if i not in dropped)
        return HalfEdgeGraph(self.vertex_count, self.weights, edges)

    def contract(self, e):
        """Contract edge ``e`` and return ``(graph, morphism)``.

        A non-tadpole merges its endpoints (weights add); a tadpole is
        removed and its vertex weight grows by one, so the genus is
        preserved either way.  The surviving vertex of a merge is the
        smaller endpoint, vertices above the larger one shift down.
        """
        u, v = self.edges[e]
        n = self.vertex_count
        if u == v:
            vertex_map = tuple(range(n))
            weights = tuple(w + (1 if i == u else 0) for i, w in enumerate(self.weights))
            new_n = n
        else:
            vertex_map = tuple(i - (1 if i > v else 0) if i != v else u for i in range(n))
            weights = [0] * (n - 1)
            for i, w in enumerate(self.weights):
                weights[vertex_map[i]] += w
            weights = tuple(weights)
            new_n = n - 1

        new_edges = []
        edge_map: list[int | None] = []
        for i, (a, b) in enumerate(self.edges):
            if i == e:
                edge_map.append(None)
                continue
            edge_map.append(len(new_edges))
            new_edges.append((vertex_map[a], vertex_map[b]))

        target = HalfEdgeGraph(new_n, weights, tuple(new_edges))

        half_edge_map: list[int | None] = []
        for i in range(len(self.edges)):
            j = edge_map[i]
            if j is None:
                half_edge_map.extend((None, None))
                continue
            a = vertex_map[self.edges[i][0]]
            b = vertex_map[self.edges[i][1]]
            # target pairs are sorted; tadpole images keep the (2j, 2j+1) order
            if a <= b:
                half_edge_map.extend((2 * j, 2 * j + 1))
            else:
                half_edge_map.extend((2 * j + 1, 2 * j))

        m = Morphism(
            kind="edge-collapse",
            source=self,
            target=target,
            vertex_map=vertex_map,
            half_edge_map=tuple(half_edge_map),
            collapsed_edges=(e,),
        )
        return target, m

    def __str__(self):
        w = "" if not any(self.weights) else f" w={list(self.weights)}"
        return f"HalfEdgeGraph(v={self.vertex_count}, e={list(self.edges)}{w})"


@dataclass(frozen=True)
class Morphism:
    """A graph map at half-edge resolution.

    ``half_edge_map`` commutes with the incidence and involution maps;
    collapsed half-edges map to ``None``.  Isomorphisms are bijective on
    vertices and half-edges.
    """

    kind: str  # isomorphism | edge-collapse | edge-deletion
    source: HalfEdgeGraph
    target: HalfEdgeGraph
    vertex_map: tuple[int, ...]
    half_edge_map: tuple[int | None, ...]
    collapsed_edges: tuple[int, ...] = ()

    @cached_property
    def edge_action(self):
        """Induced (partial) map on edge indices."""
        out = []
        for e in range(len(self.source.edges)):
            h = self.half_edge_map[2 * e]
            out.append(None if h is None else h >> 1)
        return tuple(out)

    def check(self):
        """Validate the graph-morphism laws; used by tests."""
        src, dst = self.source, self.target
        assert len(self.vertex_map) == src.vertex_count
        assert len(self.half_edge_map) == src.half_edge_count
        for h in range(src.half_edge_count):
            img = self.half_edge_map[h]
            if img is None:
                assert (h >> 1) in self.collapsed_edges
                continue
            assert dst.iota(img) == self.vertex_map[src.iota(h)]
            partner = self.half_edge_map[h ^ 1]
            assert partner is not None and partner == img ^ 1
        if self.kind == "isomorphism":
            assert sorted(self.vertex_map) == list(range(dst.vertex_count))
            assert sorted(self.half_edge_map) == list(range(dst.half_edge_count))
        return True

    def compose(self, other):
        """Composite morphism applying ``other`` first, then ``self``."""
        if other.target is not self.source and other.target != self.source:
            raise ValueError("morphisms not composable")
        vmap = tuple(self.vertex_map[x] for x in other.vertex_map)
        hmap = tuple(
            None if h is None else self.half_edge_map[h] for h in other.half_edge_map
        )
        collapsed = tuple(sorted(
            set(other.collapsed_edges)
            | {e for e in range(len(other.source.edges))
               if other.edge_action[e] is not None
               and self.edge_action[other.edge_action[e]] is None}
        ))
        kind = "isomorphism" if (self.kind == other.kind == "isomorphism") else "edge-collapse"
        return Morphism(kind, other.source, self.target, vmap, hmap, collapsed)


def identity_morphism(g):
    return Morphism(
        kind="isomorphism",
        source=g,
        target=g,
        vertex_map=tuple(range(g.vertex_count)),
        half_edge_map=tuple(range(g.half_edge_count)),
    )


@dataclass(frozen=True)
class SubgraphMask:
    """An edge subset of a parent graph (all vertices implicitly included)."""

    parent: HalfEdgeGraph
    edge_subset: frozenset[int]

    def __post_init__(self):
        if any(e < 0 or e >= len(self.parent.edges) for e in self.edge_subset):
            raise ValueError("edge subset out of range")

    @cached_property
    def is_forest(self):
        """True iff the subset spans no cycle (tadpoles are cycles)."""
        parent = list(range(self.parent.vertex_count))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in self.edge_subset:
            u, v = self.parent.edges[e]
            ru, rv = find(u), find(v)
            if ru == rv:
                return False
            parent[ru] = rv
        return True

    def sorted_edges(self):
        return tuple(sorted(self.edge_subset))


@dataclass(frozen=True)
class StructuralReport:
    has_tadpole: bool
    bridges: frozenset[int]
    is_bridge_free: bool
    is_one_vertex_irreducible: bool


def loop_number(g: HalfEdgeGraph) -> int:
    return g.loop_number


def genus(g: HalfEdgeGraph) -> int:
    return g.genus


def is_stable(g: HalfEdgeGraph) -> bool:
    return g.is_stable


def contract_edge(g: HalfEdgeGraph, e: int) -> HalfEdgeGraph:
    return g.contract(e)[0]


def _connected_after(g, dropped_edges, dropped_vertex=None):
    verts = [v for v in range(g.vertex_count) if v != dropped_vertex]
    if not verts:
        return True
    index = {v: i for i, v in enumerate(verts)}
    adj = [[] for _ in verts]
    for i, (u, v) in enumerate(g.edges):
        if i in dropped_edges or u == dropped_vertex or v == dropped_vertex:
            continue
        if u != v:
            adj[index[u]].append(index[v])
            adj[index[v]].append(index[u])
    seen = bytearray(len(verts))
    seen[0] = 1
    stack = [0]
    count = 1
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if not seen[y]:
                seen[y] = 1
                count += 1
                stack.append(y)
    return count == len(verts)


def structural_predicates(g: HalfEdgeGraph) -> StructuralReport:
    """Bridges, tadpoles and one-vertex irreducibility of a connected graph.

    A bridge is a non-tadpole edge whose deletion disconnects.  A graph
    counts as one-vertex irreducible when it is bridge-free and deleting
    any single vertex (with its incident edges) leaves the rest connected;
    requiring bridge-freeness keeps graphs like the dumbbell reducible even
    though deleting a bridge endpoint there leaves a lone tadpole vertex.
    """
    if not g.is_connected:
        raise DisconnectedGraphError("structural predicates need a connected graph")
    bridges = frozenset(
        e for e in range(len(g.edges))
        if not g.is_tadpole(e) and not _connected_after(g, {e})
    )
    one_vi = not bridges and all(
        _connected_after(g, set(), dropped_vertex=v) for v in range(g.vertex_count)
    )
    return StructuralReport(
        has_tadpole=g.has_tadpole,
        bridges=bridges,
        is_bridge_free=not bridges,
        is_one_vertex_irreducible=one_vi,
    )
