"""Combinatorial cells of the moduli space of stable weighted metric graphs.

The cell poset has one node per isomorphism class of stable weighted
genus-g graphs with at least one edge, covering relations given by
single-edge collapses, and dimension = edge count - 1.  The cubical
catalog lists orbit representatives of pairs (graph, proper edge subset);
restricted to weight-zero graphs and forest subsets it is the spine, onto
which the weight-zero locus deformation retracts.  Only combinatorial data
is kept: no metrics, no coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .complexes import get_context
from .generate import EnumSpec, enumerate_forests, enumerate_graphs
from .graph import HalfEdgeGraph, SubgraphMask


@dataclass(frozen=True)
class PosetNode:
    certificate: str
    graph: HalfEdgeGraph
    dimension: int
    weight_total: int
    odd_symmetric: bool


@dataclass
class CellPoset:
    genus: int
    nodes: list[PosetNode]
    covers: frozenset[tuple[int, int]]  # (node index, collapsed-face index)

    @cached_property
    def index(self):
        return {node.certificate: i for i, node in enumerate(self.nodes)}

    @property
    def max_dimension(self) -> int:
        return max((n.dimension for n in self.nodes), default=-1)

    def weight_stratum(self, k: int) -> list[PosetNode]:
        return [n for n in self.nodes if n.weight_total == k]

    def positive_weight_subcomplex(self) -> list[PosetNode]:
        return [n for n in self.nodes if n.weight_total >= 1]


@dataclass(frozen=True)
class CubeEntry:
    key: str
    graph_certificate: str
    subset: tuple[int, ...]
    dimension: int
    aut_order: int
    odd_symmetric: bool
    collapse_facets: tuple[str, ...]
    deletion_facets: tuple[str, ...]


@dataclass
class CubeCatalog:
    genus: int
    forest_only: bool
    entries: list[CubeEntry]

    @cached_property
    def index(self):
        return {e.key: i for i, e in enumerate(self.entries)}

    @property
    def max_dimension(self) -> int:
        return max((e.dimension for e in self.entries), default=-1)

    def facets_closed(self) -> bool:
        """Both facet families of every cube are catalogued."""
        return all(
            facet in self.index
            for entry in self.entries
            for facet in entry.collapse_facets + entry.deletion_facets
        )


def build_cell_poset(genus: int) -> CellPoset:
    if genus < 2:
        raise ValueError("the moduli space needs genus >= 2")
    forms = enumerate_graphs(
        EnumSpec(genus=genus, weighted=True, allow_tadpoles=True, min_edges=1))
    nodes = []
    for form in forms:
        ctx = get_context(form)
        nodes.append(PosetNode(
            certificate=ctx.cert,
            graph=ctx.graph,
            dimension=ctx.graph.edge_count - 1,
            weight_total=sum(ctx.graph.weights),
            odd_symmetric=ctx.vanishes("even"),
        ))
    index = {n.certificate: i for i, n in enumerate(nodes)}
    covers = set()
    for i, node in enumerate(nodes):
        ctx = get_context(forms[i])
        for e in range(node.graph.edge_count):
            target_ctx, _ = ctx.collapse(e)
            j = index.get(target_ctx.cert)
            if j is not None:
                covers.add((i, j))
    return CellPoset(genus=genus, nodes=nodes, covers=frozenset(covers))


def _pair_key(cert: str, subset) -> str:
    return f"{cert}|{','.join(map(str, subset))}"


def build_cube_catalog(genus: int, forest_only: bool) -> CubeCatalog:
    """Orbit representatives of cubes (weight-zero graph, edge subset)."""
    from .canonical import pair_automorphisms

    forms = enumerate_graphs(
        EnumSpec(genus=genus, min_valence=3, allow_tadpoles=True))
    entries = []
    for form in forms:
        ctx = get_context(form)
        g = ctx.graph
        if forest_only:
            raw = [m.sorted_edges() for m in enumerate_forests(g)]
        else:
            import itertools

            raw = []
            for size in range(0, g.edge_count):
                raw.extend(itertools.combinations(range(g.edge_count), size))
        seen = set()
        for subset in raw:
            canon, _ = ctx.subset_canonical(subset)
            if canon in seen:
                continue
            seen.add(canon)
            collapse_facets = []
            deletion_facets = []
            for e in canon:
                if not g.is_tadpole(e):
                    target_ctx, composite = ctx.collapse(e)
                    image = [composite.edge_action[f] for f in canon if f != e]
                    tcanon, _ = target_ctx.subset_canonical(image)
                    collapse_facets.append(_pair_key(target_ctx.cert, tcanon))
                dcanon, _ = ctx.subset_canonical([f for f in canon if f != e])
                deletion_facets.append(_pair_key(ctx.cert, dcanon))
            entries.append(CubeEntry(
                key=_pair_key(ctx.cert, canon),
                graph_certificate=ctx.cert,
                subset=canon,
                dimension=len(canon),
                aut_order=pair_automorphisms(g, SubgraphMask(g, frozenset(canon))).order,
                odd_symmetric=ctx.pair_vanishes(canon, "even"),
                collapse_facets=tuple(collapse_facets),
                deletion_facets=tuple(deletion_facets),
            ))
    entries.sort(key=lambda e: (e.dimension, e.key))
    return CubeCatalog(genus=genus, forest_only=forest_only, entries=entries)


def build_spine(genus: int) -> CubeCatalog:
    """Forest cubes of weight-zero graphs: the spine of the moduli space."""
    if genus < 2:
        raise ValueError("the spine needs genus >= 2")
    return build_cube_catalog(genus, forest_only=True)


def f_vector(obj, odd_symmetry_free: bool = False) -> tuple[int, ...]:
    """Class counts per dimension, optionally dropping odd-symmetric classes."""
    if isinstance(obj, CellPoset):
        items = [(n.dimension, n.odd_symmetric) for n in obj.nodes]
    elif isinstance(obj, CubeCatalog):
        items = [(e.dimension, e.odd_symmetric) for e in obj.entries]
    else:
        raise TypeError("f_vector expects a CellPoset or a CubeCatalog")
    top = max((d for d, _ in items), default=-1)
    if odd_symmetry_free:
        items = [(d, o) for d, o in items if not o]
    counts = [0] * (top + 1)
    for d, _ in items:
        counts[d] += 1
    return tuple(counts)
