"""Canonical forms, automorphism groups and symmetry signs.

Canonicalization of weighted multigraphs runs an individualization plus
partition-refinement search on vertices, with parallel-edge multiplicities,
tadpole counts and optional edge colors folded into the vertex invariants.
The certificate is the lexicographically smallest encoding over the search
leaves, so it is deterministic and relabeling-invariant.  Edge colors carry
edge-subset data (cube pairs); a ribbon structure switches to a traversal
canonicalization on the half-edge level, where connectedness makes an
automorphism determined by the image of a single half-edge.

Certificate format (stable within a major release):
``v<n>;w<w0,...>;e<u-v[#color],...>`` in canonical edge order, with
``;r(h,...)(...)`` appended for ribbon graphs.

Automorphism groups are generated at half-edge level, so tadpole flips and
parallel-edge swaps are visible.  The group splits over the vertex action:
the kernel is generated by flips and within-class edge swaps, and every
vertex automorphism has a canonical lift; the order is the product of the
vertex-automorphism count with the kernel size.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .graph import HalfEdgeGraph, Morphism, SubgraphMask, identity_morphism
from .ribbon import RibbonStructure, rotation_word, transport_ribbon


@dataclass(frozen=True)
class CanonicalForm:
    graph: HalfEdgeGraph
    certificate: str
    iso: Morphism  # from the input graph onto the canonical graph
    edge_colors: tuple[int, ...] | None = None
    ribbon: RibbonStructure | None = None


@dataclass(frozen=True)
class AutGroup:
    graph: HalfEdgeGraph
    generators: tuple[Morphism, ...]
    order: int
    vertex_auts: tuple[tuple[int, ...], ...]


_CERT_CACHE: dict = {}


# ---------------------------------------------------------------------------
# vertex-level refinement


def _incidence_tables(g: HalfEdgeGraph, edge_colors):
    colors = edge_colors if edge_colors is not None else (0,) * g.edge_count
    inc: list[list[tuple[int, int]]] = [[] for _ in range(g.vertex_count)]
    tad: list[list[int]] = [[] for _ in range(g.vertex_count)]
    for i, (u, v) in enumerate(g.edges):
        if u == v:
            tad[u].append(colors[i])
        else:
            inc[u].append((v, colors[i]))
            inc[v].append((u, colors[i]))
    return inc, tad


def _initial_colors(g: HalfEdgeGraph, edge_colors):
    inc, tad = _incidence_tables(g, edge_colors)
    sigs = []
    for v in range(g.vertex_count):
        sigs.append((g.weights[v], g.valences[v], tuple(sorted(tad[v]))))
    ranks = {s: i for i, s in enumerate(sorted(set(sigs)))}
    return tuple(ranks[s] for s in sigs), inc


def _refine(g: HalfEdgeGraph, colors, inc):
    n = g.vertex_count
    ncolors = len(set(colors))
    while True:
        sigs = []
        for v in range(n):
            prof: dict[tuple[int, int], int] = {}
            for u, c in inc[v]:
                key = (colors[u], c)
                prof[key] = prof.get(key, 0) + 1
            sigs.append((colors[v], tuple(sorted(prof.items()))))
        ranks = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = tuple(ranks[s] for s in sigs)
        k = len(ranks)
        if k == ncolors or k == n:
            return new
        ncolors = k
        colors = new


def _canonical_labeling(g: HalfEdgeGraph, edge_colors):
    """Smallest (weights, edge triples) encoding and the permutation giving it.

    Individualization-refinement search; equal encodings at two leaves
    reveal an automorphism, whose orbits prune sibling branches at the root
    of the search tree.
    """
    ecolors = edge_colors if edge_colors is not None else (0,) * g.edge_count
    n = g.vertex_count
    base, inc = _initial_colors(g, edge_colors)
    best: list = [None, None]  # encoding, perm
    leaf_perms: dict = {}
    orbit = list(range(n))

    def find(x):
        while orbit[x] != x:
            orbit[x] = orbit[orbit[x]]
            x = orbit[x]
        return x

    def encode(perm):
        weights = [0] * n
        for v, w in enumerate(g.weights):
            weights[perm[v]] = w
        triples = sorted(
            (min(perm[u], perm[v]), max(perm[u], perm[v]), ecolors[i])
            for i, (u, v) in enumerate(g.edges)
        )
        return (tuple(weights), tuple(triples))

    def record_leaf(perm):
        enc = encode(perm)
        other = leaf_perms.get(enc)
        if other is None:
            leaf_perms[enc] = perm
        else:
            inverse = [0] * n
            for i, x in enumerate(other):
                inverse[x] = i
            for i in range(n):
                a, b = find(i), find(inverse[perm[i]])
                if a != b:
                    orbit[a] = b
        if best[0] is None or enc < best[0]:
            best[0], best[1] = enc, perm

    def search(colors, depth):
        colors = _refine(g, colors, inc)
        cells: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        target = None
        for c in sorted(cells):
            if len(cells[c]) > 1:
                target = cells[c]
                break
        if target is None:
            rank = {c: i for i, c in enumerate(sorted(colors))}
            record_leaf(tuple(rank[c] for c in colors))
            return
        explored: list[int] = []
        for v in target:
            if depth == 0 and any(find(v) == find(u) for u in explored):
                continue
            explored.append(v)
            refined = list(colors)
            refined[v] = -1
            search(tuple(refined), depth + 1)

    search(base, 0)
    return best[0], best[1]


def _iso_from_labeling(g: HalfEdgeGraph, perm, ecolors, encoding):
    weights_enc, triples = encoding
    canonical = HalfEdgeGraph(g.vertex_count, weights_enc, tuple((u, v) for u, v, _ in triples))
    trip = [
        (min(perm[u], perm[v]), max(perm[u], perm[v]), ecolors[i])
        for i, (u, v) in enumerate(g.edges)
    ]
    order = sorted(range(g.edge_count), key=lambda i: (trip[i], i))
    edge_to_canon = {src: j for j, src in enumerate(order)}
    half_edge_map: list[int] = [0] * g.half_edge_count
    for i, (u, v) in enumerate(g.edges):
        j = edge_to_canon[i]
        if perm[u] <= perm[v]:
            half_edge_map[2 * i], half_edge_map[2 * i + 1] = 2 * j, 2 * j + 1
        else:
            half_edge_map[2 * i], half_edge_map[2 * i + 1] = 2 * j + 1, 2 * j
    m = Morphism(
        kind="isomorphism",
        source=g,
        target=canonical,
        vertex_map=tuple(perm),
        half_edge_map=tuple(half_edge_map),
    )
    colors_enc = tuple(c for _, _, c in triples)
    return canonical, m, colors_enc


def _certificate_string(graph: HalfEdgeGraph, colors, ribbon: RibbonStructure | None):
    parts = [f"v{graph.vertex_count}"]
    parts.append("w" + ",".join(map(str, graph.weights)))
    bits = []
    for i, (u, v) in enumerate(graph.edges):
        c = colors[i] if colors else 0
        bits.append(f"{u}-{v}" + (f"#{c}" if c else ""))
    parts.append("e" + ",".join(bits))
    if ribbon is not None:
        parts.append("r" + rotation_word(ribbon))
    return ";".join(parts)


def canonical_form(g: HalfEdgeGraph, ribbon: RibbonStructure | None = None,
                   edge_colors: tuple[int, ...] | None = None) -> CanonicalForm:
    """Canonical representative plus an isomorphism of the input onto it."""
    if not g.is_connected:
        raise ValueError("canonical form is defined for connected graphs")
    if ribbon is not None:
        return _canonical_ribbon(g, ribbon, edge_colors)
    key = (g.vertex_count, g.weights, g.edges, edge_colors)
    hit = _CERT_CACHE.get(key)
    if hit is not None:
        return hit
    ecolors = edge_colors if edge_colors is not None else (0,) * g.edge_count
    encoding, perm = _canonical_labeling(g, edge_colors)
    canonical, iso, colors_enc = _iso_from_labeling(g, perm, ecolors, encoding)
    cert = _certificate_string(canonical, colors_enc if edge_colors is not None else None, None)
    form = CanonicalForm(
        graph=canonical,
        certificate=cert,
        iso=iso,
        edge_colors=colors_enc if edge_colors is not None else None,
    )
    _CERT_CACHE[key] = form
    return form


# ---------------------------------------------------------------------------
# ribbon canonicalization: traversal from every start half-edge


def _ribbon_encoding(g: HalfEdgeGraph, nxt, ecolors, start):
    label = {start: 0}
    order = [start]
    i = 0
    while i < len(order):
        h = order[i]
        for step in (nxt[h], h ^ 1):
            if step not in label:
                label[step] = len(order)
                order.append(step)
        i += 1
    enc = tuple(
        (label[nxt[h]], label[h ^ 1], g.weights[g.iota(h)], ecolors[h >> 1])
        for h in order
    )
    return enc, order, label


def _canonical_ribbon(g: HalfEdgeGraph, ribbon: RibbonStructure, edge_colors):
    key = (g.vertex_count, g.weights, g.edges, edge_colors, ribbon.cycles)
    hit = _CERT_CACHE.get(key)
    if hit is not None:
        return hit
    ecolors = edge_colors if edge_colors is not None else (0,) * g.edge_count
    nxt = ribbon.next_map
    best = None
    for start in range(g.half_edge_count):
        enc, order, label = _ribbon_encoding(g, nxt, ecolors, start)
        if best is None or enc < best[0]:
            best = (enc, order, label)
    enc, order, label = best

    # vertices ranked by their first-visited half-edge, edges by lower label
    first_visit: dict[int, int] = {}
    for h in order:
        v = g.iota(h)
        if v not in first_visit:
            first_visit[v] = label[h]
    vperm = [0] * g.vertex_count
    for rank, v in enumerate(sorted(range(g.vertex_count), key=lambda v: first_visit[v])):
        vperm[v] = rank
    edge_rank = sorted(range(g.edge_count), key=lambda e: min(label[2 * e], label[2 * e + 1]))
    hmap = [0] * g.half_edge_count
    new_edges = []
    new_colors = []
    for j, e in enumerate(edge_rank):
        a, b = 2 * e, 2 * e + 1
        if label[a] > label[b]:
            a, b = b, a
        pa, pb = vperm[g.iota(a)], vperm[g.iota(b)]
        if pa <= pb:
            hmap[a], hmap[b] = 2 * j, 2 * j + 1
        else:
            hmap[a], hmap[b] = 2 * j + 1, 2 * j
        new_edges.append((min(pa, pb), max(pa, pb)))
        new_colors.append(ecolors[e])
    weights = [0] * g.vertex_count
    for v, w in enumerate(g.weights):
        weights[vperm[v]] = w
    canonical = HalfEdgeGraph(g.vertex_count, tuple(weights), tuple(new_edges))
    iso = Morphism(
        kind="isomorphism",
        source=g,
        target=canonical,
        vertex_map=tuple(vperm),
        half_edge_map=tuple(hmap),
    )
    new_ribbon = transport_ribbon(ribbon, iso)
    colors_out = tuple(new_colors) if edge_colors is not None else None
    cert = _certificate_string(canonical, colors_out, new_ribbon)
    form = CanonicalForm(
        graph=canonical,
        certificate=cert,
        iso=iso,
        edge_colors=colors_out,
        ribbon=new_ribbon,
    )
    _CERT_CACHE[key] = form
    return form


def ribbon_automorphisms(g: HalfEdgeGraph, ribbon: RibbonStructure) -> list[Morphism]:
    """All ribbon-preserving automorphisms; at most one per start half-edge."""
    nxt = ribbon.next_map
    ecolors = (0,) * g.edge_count
    runs = [_ribbon_encoding(g, nxt, ecolors, start) for start in range(g.half_edge_count)]
    base = min(runs, key=lambda r: r[0])
    enc0, order0, _ = base
    auts = []
    for enc, order, _ in runs:
        if enc != enc0:
            continue
        hmap = [0] * g.half_edge_count
        for i, h in enumerate(order0):
            hmap[h] = order[i]
        vmap = [0] * g.vertex_count
        for h in range(g.half_edge_count):
            vmap[g.iota(h)] = g.iota(hmap[h])
        auts.append(Morphism(
            kind="isomorphism",
            source=g,
            target=g,
            vertex_map=tuple(vmap),
            half_edge_map=tuple(hmap),
        ))
    return auts


# ---------------------------------------------------------------------------
# automorphism groups of plain and colored graphs


def vertex_automorphisms(g: HalfEdgeGraph, edge_colors=None) -> list[tuple[int, ...]]:
    """All vertex permutations preserving weights and colored multiplicities."""
    n = g.vertex_count
    colors_map = edge_colors if edge_colors is not None else (0,) * g.edge_count
    pair_profile: dict[tuple[int, int], dict[int, int]] = {}
    for i, (u, v) in enumerate(g.edges):
        d = pair_profile.setdefault((u, v), {})
        d[colors_map[i]] = d.get(colors_map[i], 0) + 1

    def profile(u, v):
        key = (u, v) if u <= v else (v, u)
        d = pair_profile.get(key)
        return tuple(sorted(d.items())) if d else ()

    base, inc = _initial_colors(g, edge_colors)
    refined = _refine(g, base, inc)
    out = []
    assignment = [-1] * n
    used = [False] * n

    def extend(i):
        if i == n:
            out.append(tuple(assignment))
            return
        for c in range(n):
            if used[c] or refined[c] != refined[i]:
                continue
            ok = profile(i, i) == profile(c, c)
            if ok:
                for j in range(i):
                    if profile(i, j) != profile(c, assignment[j]):
                        ok = False
                        break
            if ok:
                assignment[i] = c
                used[c] = True
                extend(i + 1)
                used[c] = False
                assignment[i] = -1

    extend(0)
    return out


def edge_classes(g: HalfEdgeGraph, edge_colors=None):
    """Edges grouped by (endpoints, color), each group in index order."""
    colors_map = edge_colors if edge_colors is not None else (0,) * g.edge_count
    classes: dict[tuple[int, int, int], list[int]] = {}
    for i, (u, v) in enumerate(g.edges):
        classes.setdefault((u, v, colors_map[i]), []).append(i)
    return classes


def kernel_order(g: HalfEdgeGraph, edge_colors=None) -> int:
    total = 1
    for (u, v, _), members in edge_classes(g, edge_colors).items():
        m = len(members)
        total *= math.factorial(m)
        if u == v:
            total *= 2 ** m
    return total


def lift_vertex_perm(g: HalfEdgeGraph, perm, edge_colors=None) -> Morphism:
    """Canonical half-edge automorphism over a vertex permutation.

    Within each (endpoints, color) class, edges map in index order and
    tadpoles map without flipping, so the lift is deterministic.
    """
    classes = edge_classes(g, edge_colors)
    colors_map = edge_colors if edge_colors is not None else (0,) * g.edge_count
    hmap = [0] * g.half_edge_count
    for (u, v, c), members in classes.items():
        tu, tv = perm[u], perm[v]
        key = (tu, tv, c) if tu <= tv else (tv, tu, c)
        targets = classes.get(key)
        if targets is None or len(targets) != len(members):
            raise ValueError("vertex permutation does not preserve the class structure")
        for e, f in zip(members, targets):
            a = perm[g.edges[e][0]]
            b = perm[g.edges[e][1]]
            if a <= b:
                hmap[2 * e], hmap[2 * e + 1] = 2 * f, 2 * f + 1
            else:
                hmap[2 * e], hmap[2 * e + 1] = 2 * f + 1, 2 * f
    return Morphism(
        kind="isomorphism",
        source=g,
        target=g,
        vertex_map=tuple(perm),
        half_edge_map=tuple(hmap),
    )


def _swap_edges_morphism(g: HalfEdgeGraph, a: int, b: int) -> Morphism:
    hmap = list(range(g.half_edge_count))
    hmap[2 * a], hmap[2 * b] = 2 * b, 2 * a
    hmap[2 * a + 1], hmap[2 * b + 1] = 2 * b + 1, 2 * a + 1
    return Morphism("isomorphism", g, g, tuple(range(g.vertex_count)), tuple(hmap))


def _flip_tadpole_morphism(g: HalfEdgeGraph, e: int) -> Morphism:
    hmap = list(range(g.half_edge_count))
    hmap[2 * e], hmap[2 * e + 1] = 2 * e + 1, 2 * e
    return Morphism("isomorphism", g, g, tuple(range(g.vertex_count)), tuple(hmap))


def _group_from_vertex_auts(g, vertex_auts, edge_colors):
    identity = tuple(range(g.vertex_count))
    gens: list[Morphism] = []
    for perm in vertex_auts:
        if perm != identity:
            gens.append(lift_vertex_perm(g, perm, edge_colors))
    for (u, v, _), members in sorted(edge_classes(g, edge_colors).items()):
        for a, b in zip(members, members[1:]):
            gens.append(_swap_edges_morphism(g, a, b))
        if u == v and members:
            gens.append(_flip_tadpole_morphism(g, members[0]))
    return AutGroup(
        graph=g,
        generators=tuple(gens),
        order=len(vertex_auts) * kernel_order(g, edge_colors),
        vertex_auts=tuple(vertex_auts),
    )


def automorphism_group(g: HalfEdgeGraph, ribbon: RibbonStructure | None = None) -> AutGroup:
    if ribbon is not None:
        auts = ribbon_automorphisms(g, ribbon)
        return AutGroup(
            graph=g,
            generators=tuple(auts),
            order=len(auts),
            vertex_auts=tuple(sorted({m.vertex_map for m in auts})),
        )
    return _group_from_vertex_auts(g, vertex_automorphisms(g), None)


def pair_automorphisms(g: HalfEdgeGraph, mask: SubgraphMask) -> AutGroup:
    """Subgroup of Aut(G) stabilizing the edge subset setwise."""
    if mask.parent != g:
        raise ValueError("mask does not belong to this graph")
    colors = tuple(1 if e in mask.edge_subset else 0 for e in range(g.edge_count))
    return _group_from_vertex_auts(g, vertex_automorphisms(g, colors), colors)


def edge_action(m: Morphism):
    """Induced (partial) permutation of edge indices."""
    return m.edge_action


def restricted_edge_sign(m: Morphism, domain) -> int:
    """Parity of the edge action restricted to an invariant edge set."""
    from .orientation import perm_parity

    dom = sorted(domain)
    images = [m.edge_action[e] for e in dom]
    if sorted(images) != dom:
        raise ValueError("edge set is not invariant under the morphism")
    return perm_parity(images)


def automorphism_h1_sign(m: Morphism) -> int:
    from .orientation import h1_determinant_sign, reference_orientation

    ref = reference_orientation(m.source)
    return h1_determinant_sign(m, ref, ref)


def has_odd_symmetry(g: HalfEdgeGraph, parity: str,
                     forest: SubgraphMask | None = None,
                     ribbon: RibbonStructure | None = None) -> bool:
    """Whether some (pair/ribbon) automorphism has total sign -1.

    Even parity looks at the sign of the edge permutation on the whole edge
    set, or on the subset for pairs.  Odd parity multiplies in the sign of
    the determinant of the induced action on the cycle space.  Both are
    group homomorphisms to {+1,-1}, so checking generators suffices.
    """
    if parity not in ("even", "odd"):
        raise ValueError(f"unknown parity {parity!r}")
    if ribbon is not None:
        gens = ribbon_automorphisms(g, ribbon)
    elif forest is not None:
        gens = pair_automorphisms(g, forest).generators
    else:
        gens = automorphism_group(g).generators
    domain = sorted(forest.edge_subset) if forest is not None else range(g.edge_count)
    for m in gens:
        sign = restricted_edge_sign(m, domain)
        if parity == "odd":
            sign *= automorphism_h1_sign(m)
        if sign == -1:
            return True
    return False


def edge_action_closure(group: AutGroup) -> list[tuple[tuple[int, ...], Morphism]]:
    """The full group of edge permutations, one witness morphism each."""
    g = group.graph
    identity = tuple(range(g.edge_count))
    seen: dict[tuple[int, ...], Morphism] = {identity: identity_morphism(g)}
    frontier = [identity]
    gen_pairs = []
    for m in group.generators:
        p = tuple(m.edge_action)
        if p not in seen:
            seen[p] = m
            frontier.append(p)
        gen_pairs.append((p, m))
    while frontier:
        p = frontier.pop()
        mp = seen[p]
        for q, mq in gen_pairs:
            pq = tuple(q[x] for x in p)
            if pq not in seen:
                seen[pq] = mq.compose(mp)
                frontier.append(pq)
    return sorted(seen.items())
