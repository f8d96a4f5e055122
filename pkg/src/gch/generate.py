"""Exhaustive, duplicate-free enumeration of complex generators.

Graphs are generated degree sequence by degree sequence: partitions of the
half-edge count feed a recursive search over symmetric multiplicity
matrices, and isomorphism classes are separated by certificate.  Weighted
stable graphs reuse the same machinery with relaxed valences and all
stability-compatible weight distributions.  Everything is deterministic;
outputs come back sorted by certificate.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .canonical import CanonicalForm, automorphism_group, canonical_form, edge_action_closure
from .graph import HalfEdgeGraph, SubgraphMask
from .ribbon import RibbonStructure


class InfeasibleEnumeration(ValueError):
    """An unbounded request: needs max_edges to become finite."""


@dataclass(frozen=True)
class EnumSpec:
    genus: int
    min_valence: int = 3
    allow_tadpoles: bool = False
    weighted: bool = False
    max_edges: int | None = None
    ribbon: bool = False
    min_edges: int = 0

    def __post_init__(self):
        if self.genus < 0:
            raise ValueError("genus must be non-negative")
        if self.min_valence not in (2, 3):
            raise ValueError("min_valence must be 2 or 3")


_ENUM_CACHE: dict[EnumSpec, tuple] = {}


def _partitions(total, parts, smallest, largest):
    """Partitions of ``total`` into exactly ``parts`` parts, descending."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    lo = smallest
    hi = min(largest, total - smallest * (parts - 1))
    for first in range(hi, lo - 1, -1):
        for rest in _partitions(total - first, parts - 1, smallest, first):
            yield (first,) + rest


def _multiplicity_matrices(degrees, allow_tadpoles):
    """All symmetric multiplicity assignments realizing a degree sequence.

    Yields dicts ``(u, v) -> multiplicity`` with ``u <= v``; a diagonal
    entry consumes two from its vertex degree.
    """
    n = len(degrees)
    pairs = []
    for u in range(n):
        if allow_tadpoles:
            pairs.append((u, u))
        for v in range(u + 1, n):
            pairs.append((u, v))
    rem = list(degrees)
    chosen: dict[tuple[int, int], int] = {}
    # first pair index of the row after u's: lets the search skip a row
    # wholesale once its degree is exhausted
    next_row = [len(pairs)] * n
    for idx in range(len(pairs) - 1, -1, -1):
        u = pairs[idx][0]
        next_row[u] = idx
    next_row.append(len(pairs))

    def rec(idx):
        if idx == len(pairs):
            if all(r == 0 for r in rem):
                yield dict(chosen)
            return
        u, v = pairs[idx]
        if rem[u] == 0:
            yield from rec(next_row[u + 1] if u + 1 < n else len(pairs))
            return
        top = rem[u] // 2 if u == v else min(rem[u], rem[v])
        last_in_row = v == n - 1 or (u == v and u == n - 1)
        for m in range(top, -1, -1):
            if u == v:
                rem[u] -= 2 * m
            else:
                rem[u] -= m
                rem[v] -= m
            if last_in_row:
                dead = rem[u] != 0
            else:
                dead = rem[u] > sum(rem[w] for w in range(v + 1, n))
            if not dead:
                if m:
                    chosen[(u, v)] = m
                yield from rec(idx + 1)
                chosen.pop((u, v), None)
            if u == v:
                rem[u] += 2 * m
            else:
                rem[u] += m
                rem[v] += m

    yield from rec(0)


def _graph_from_multiplicities(n, mult, weights=None):
    edges = []
    for (u, v), m in sorted(mult.items()):
        edges.extend([(u, v)] * m)
    return HalfEdgeGraph.build(n, edges, weights)


def _connected_multigraphs(vertex_count, edge_count, min_degree, allow_tadpoles, max_degree=None):
    """Connected multigraphs up to isomorphism, as canonical forms."""
    out: dict[str, CanonicalForm] = {}
    total = 2 * edge_count
    if vertex_count == 0 or total < min_degree * vertex_count:
        return []
    cap = max_degree if max_degree is not None else total
    for degrees in _partitions(total, vertex_count, min_degree, cap):
        for mult in _multiplicity_matrices(degrees, allow_tadpoles):
            g = _graph_from_multiplicities(vertex_count, mult)
            if not g.is_connected:
                continue
            form = canonical_form(g)
            out.setdefault(form.certificate, form)
    return [out[c] for c in sorted(out)]


def _weight_zero_graphs(spec: EnumSpec):
    out: dict[str, CanonicalForm] = {}
    g = spec.genus
    if spec.min_valence >= 3:
        cap = 3 * g - 3
        if spec.max_edges is not None:
            cap = min(cap, spec.max_edges)
    else:
        if spec.max_edges is None:
            raise InfeasibleEnumeration(
                "min_valence 2 admits arbitrarily long cycles; pass max_edges")
        cap = spec.max_edges
    v = 1
    while True:
        e = v + g - 1
        if e > cap:
            break
        if e >= max(spec.min_edges, 0) and e >= 1:
            for form in _connected_multigraphs(v, e, spec.min_valence, spec.allow_tadpoles):
                out.setdefault(form.certificate, form)
        v += 1
    return [out[c] for c in sorted(out)]


def _stable_weight_assignments(graph: HalfEdgeGraph, total_weight: int):
    """All weight tuples of the given total making the graph stable."""
    minima = []
    for v in range(graph.vertex_count):
        val = graph.valences[v]
        if val >= 3:
            minima.append(0)
        elif val >= 1:
            minima.append(1)
        else:
            minima.append(2)
    spare = total_weight - sum(minima)
    if spare < 0:
        return
    n = graph.vertex_count
    for extra in itertools.combinations_with_replacement(range(n), spare):
        weights = list(minima)
        for v in extra:
            weights[v] += 1
        yield tuple(weights)


def _weighted_graphs(spec: EnumSpec):
    g = spec.genus
    if g < 1:
        raise ValueError("weighted enumeration needs genus >= 1")
    cap = 3 * g - 3
    if spec.max_edges is not None:
        cap = min(cap, spec.max_edges)
    out: dict[str, CanonicalForm] = {}
    if spec.min_edges <= 0:
        point = HalfEdgeGraph.build(1, [], weights=(g,))
        if point.is_stable:
            form = canonical_form(point)
            out.setdefault(form.certificate, form)
    for total_weight in range(0, g + 1):
        h = g - total_weight
        for v in range(1, 2 * g - 1):
            e = v + h - 1
            if e < max(spec.min_edges, 1) or e > cap:
                continue
            for base in _connected_multigraphs(v, e, 1, True):
                if not spec.allow_tadpoles and base.graph.has_tadpole:
                    continue
                for weights in _stable_weight_assignments(base.graph, total_weight):
                    wg = HalfEdgeGraph(base.graph.vertex_count, weights, base.graph.edges)
                    form = canonical_form(wg)
                    out.setdefault(form.certificate, form)
    return [out[c] for c in sorted(out)]


def enumerate_graphs(spec: EnumSpec) -> list[CanonicalForm]:
    """All isomorphism classes matching the spec, canonically ordered."""
    hit = _ENUM_CACHE.get(spec)
    if hit is not None:
        return list(hit)
    if spec.weighted:
        result = _weighted_graphs(spec)
    else:
        result = _weight_zero_graphs(spec)
    if spec.ribbon:
        expanded = []
        for form in result:
            for rib in enumerate_ribbon_structures(form.graph):
                expanded.append(canonical_form(form.graph, ribbon=rib))
        expanded.sort(key=lambda f: f.certificate)
        result = expanded
    _ENUM_CACHE[spec] = tuple(result)
    return list(result)


def enumerate_forests(g: HalfEdgeGraph) -> list[SubgraphMask]:
    """Every acyclic edge subset, the empty one included."""
    if not g.is_connected:
        raise ValueError("forest enumeration needs a connected graph")
    non_tadpoles = [e for e in range(g.edge_count) if not g.is_tadpole(e)]
    found: list[SubgraphMask] = []

    def rec(idx, parent, chosen):
        if idx == len(non_tadpoles):
            found.append(SubgraphMask(g, frozenset(chosen)))
            return
        rec(idx + 1, parent, chosen)
        e = non_tadpoles[idx]
        u, v = g.edges[e]

        def find(p, x):
            while p[x] != x:
                x = p[x]
            return x

        ru, rv = find(parent, u), find(parent, v)
        if ru != rv:
            child = dict(parent)
            child[ru] = rv
            rec(idx + 1, child, chosen + [e])

    rec(0, {v: v for v in range(g.vertex_count)}, [])
    found.sort(key=lambda m: (len(m.edge_subset), m.sorted_edges()))
    return found


def enumerate_subgraph_pairs(g: HalfEdgeGraph) -> list[list[SubgraphMask]]:
    """Proper edge subsets, grouped into orbits of the automorphism action."""
    if not g.is_connected:
        raise ValueError("subset enumeration needs a connected graph")
    closure = [p for p, _ in edge_action_closure(automorphism_group(g))]
    all_edges = range(g.edge_count)
    seen: set[tuple[int, ...]] = set()
    orbits: list[list[SubgraphMask]] = []
    subsets = []
    for size in range(0, g.edge_count):
        subsets.extend(itertools.combinations(all_edges, size))
    for s in subsets:
        if s in seen:
            continue
        orbit = sorted({tuple(sorted(p[e] for e in s)) for p in closure})
        seen.update(orbit)
        orbits.append([SubgraphMask(g, frozenset(t)) for t in orbit])
    return orbits


def enumerate_ribbon_structures(g: HalfEdgeGraph) -> list[RibbonStructure]:
    """Orbit representatives of cyclic-order products under automorphisms."""
    if not g.is_connected:
        raise ValueError("ribbon enumeration needs a connected graph")
    per_vertex = []
    for v in range(g.vertex_count):
        hs = sorted(h for h in range(g.half_edge_count) if g.iota(h) == v)
        if not hs:
            per_vertex.append([()])
            continue
        head, rest = hs[0], hs[1:]
        per_vertex.append([(head,) + p for p in itertools.permutations(rest)])
    reps: dict[str, RibbonStructure] = {}
    for combo in itertools.product(*per_vertex):
        rib = RibbonStructure(g, tuple(combo))
        cert = canonical_form(g, ribbon=rib).certificate
        reps.setdefault(cert, rib)
    return [reps[c] for c in sorted(reps)]
