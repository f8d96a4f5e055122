"""Orientations and the sign calculus.

An orientation of a graph is an order on its edges together with an
orientation of the rational cycle space.  The cycle part is represented by
a directed spanning-tree basis: a spanning tree ``T``, a direction for each
complement edge and an order on those complement edges.  Each complement
edge stands for the cycle that runs along it in the given direction and
returns through the unique tree path.

Reference conventions, fixed once so that every sign is reproducible:

* every edge is directed from its lower to its higher endpoint, a tadpole
  from its even to its odd half-edge (edges are stored as sorted pairs, so
  the reference source of edge ``e`` is always half-edge ``2e``);
* the reference orientation of a graph uses the identity edge order, the
  first spanning tree in Kruskal order, and the complement edges in index
  order with reference directions.

Signs of isomorphisms and single-edge collapses are computed against these
data.  Everything is exact integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .graph import HalfEdgeGraph, Morphism


def perm_parity(seq):
    """Parity (+1/-1) of a sequence that is a permutation of its sorted self."""
    order = {v: i for i, v in enumerate(sorted(seq))}
    perm = [order[v] for v in seq]
    seen = [False] * len(perm)
    sign = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def det_sign(matrix):
    """Sign of the determinant of a small integer matrix (0 if singular)."""
    m = [row[:] for row in matrix]
    n = len(m)
    sign = 1
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if m[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            return 0
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            sign = -sign
        pv = m[col][col]
        if pv < 0:
            sign = -sign
        for r in range(col + 1, n):
            f = m[r][col]
            if f:
                m[r] = [a * abs(pv) - b * (f if pv > 0 else -f) for a, b in zip(m[r], m[col])]
    return sign


@dataclass(frozen=True)
class Orientation:
    """Edge order plus a directed spanning-tree cycle basis."""

    graph: HalfEdgeGraph
    edge_order: tuple[int, ...]
    tree: frozenset[int]
    comp_order: tuple[int, ...]
    comp_dirs: tuple[int, ...]  # source half-edge per complement edge

    def __post_init__(self):
        g = self.graph
        if sorted(self.edge_order) != list(range(g.edge_count)):
            raise ValueError("edge_order must enumerate all edges")
        if sorted(self.comp_order) != sorted(set(range(g.edge_count)) - self.tree):
            raise ValueError("comp_order must enumerate the tree complement")
        if len(self.comp_order) != g.loop_number:
            raise ValueError("tree is not spanning")
        for e, h in zip(self.comp_order, self.comp_dirs):
            if h >> 1 != e:
                raise ValueError("direction half-edge must belong to its edge")

    def edge_position(self, e):
        """1-based position of edge ``e`` in the edge order."""
        return self.edge_order.index(e) + 1


@dataclass(frozen=True)
class CycleMatrix:
    """Rows are cycles, columns directed edges; entries -1/0/1."""

    rows: tuple[tuple[tuple[int, int], ...], ...]  # per row: ((edge, coeff), ...)
    edge_count: int

    def dense(self):
        out = []
        for row in self.rows:
            v = [0] * self.edge_count
            for e, c in row:
                v[e] = c
            out.append(v)
        return out

    @cached_property
    def rank(self):
        from fractions import Fraction

        m = [[Fraction(x) for x in row] for row in self.dense()]
        rank = 0
        for col in range(self.edge_count):
            piv = next((r for r in range(rank, len(m)) if m[r][col]), None)
            if piv is None:
                continue
            m[rank], m[piv] = m[piv], m[rank]
            pv = m[rank][col]
            for r in range(len(m)):
                if r != rank and m[r][col]:
                    f = m[r][col] / pv
                    m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
            rank += 1
        return rank


def spanning_tree(g: HalfEdgeGraph, prefer: int | None = None) -> frozenset[int]:
    """Kruskal spanning tree in edge order, optionally seeded with one edge."""
    parent = list(range(g.vertex_count))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    tree = []
    order = list(range(g.edge_count))
    if prefer is not None:
        if g.is_tadpole(prefer):
            raise ValueError("a tadpole cannot lie in a spanning tree")
        order.remove(prefer)
        order.insert(0, prefer)
    for e in order:
        u, v = g.edges[e]
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            tree.append(e)
    if len(tree) != g.vertex_count - 1:
        raise ValueError("graph is not connected")
    return frozenset(tree)


def orientation_with_tree(g: HalfEdgeGraph, tree: frozenset[int]) -> Orientation:
    comp = tuple(sorted(set(range(g.edge_count)) - tree))
    return Orientation(
        graph=g,
        edge_order=tuple(range(g.edge_count)),
        tree=tree,
        comp_order=comp,
        comp_dirs=tuple(2 * e for e in comp),
    )


def reference_orientation(g) -> Orientation:
    """Deterministic orientation of a graph or of a canonical form."""
    graph = getattr(g, "graph", g)
    return orientation_with_tree(graph, spanning_tree(graph))


def _tree_paths(g: HalfEdgeGraph, tree: frozenset[int]):
    """Parent structure of the tree rooted at vertex 0."""
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in range(g.vertex_count)}
    for e in tree:
        u, v = g.edges[e]
        adj[u].append((v, e))
        adj[v].append((u, e))
    parent_edge = {0: None}
    parent_vertex = {0: 0}
    depth = {0: 0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y, e in adj[x]:
            if y not in parent_edge:
                parent_edge[y] = e
                parent_vertex[y] = x
                depth[y] = depth[x] + 1
                stack.append(y)
    return parent_edge, parent_vertex, depth


def cycle_basis(g: HalfEdgeGraph, orientation: Orientation) -> CycleMatrix:
    """One row per complement edge: its directed cycle through the tree.

    The coefficient on an edge is +1 when the cycle traverses it along the
    reference direction (lower to higher endpoint), -1 against it.
    """
    parent_edge, parent_vertex, depth = _tree_paths(g, orientation.tree)
    rows = []
    for e, h in zip(orientation.comp_order, orientation.comp_dirs):
        coeff: dict[int, int] = {}
        coeff[e] = 1 if h == 2 * e else -1
        # walk from target back to source through the tree
        a = g.iota(g.epsilon(h))
        b = g.iota(h)
        x, y = a, b
        up_x: list[tuple[int, int]] = []  # (edge, direction sign) ascending from x
        up_y: list[tuple[int, int]] = []
        while depth[x] > depth[y]:
            e2 = parent_edge[x]
            px = parent_vertex[x]
            up_x.append((e2, 1 if g.edges[e2][0] == x else -1))
            x = px
        while depth[y] > depth[x]:
            e2 = parent_edge[y]
            py = parent_vertex[y]
            up_y.append((e2, 1 if g.edges[e2][0] == y else -1))
            y = py
        while x != y:
            e2 = parent_edge[x]
            up_x.append((e2, 1 if g.edges[e2][0] == x else -1))
            x = parent_vertex[x]
            e2 = parent_edge[y]
            up_y.append((e2, 1 if g.edges[e2][0] == y else -1))
            y = parent_vertex[y]
        # path a -> meeting point uses up_x forward, then up_y reversed
        for e2, s in up_x:
            coeff[e2] = coeff.get(e2, 0) + s
        for e2, s in up_y:
            coeff[e2] = coeff.get(e2, 0) - s
        rows.append(tuple(sorted((k, v) for k, v in coeff.items() if v)))
    return CycleMatrix(rows=tuple(rows), edge_count=g.edge_count)


def _image_row(row, m: Morphism):
    """Push a cycle row through a morphism, in target reference coordinates."""
    out: dict[int, int] = {}
    hmap = m.half_edge_map
    for e, c in row:
        img = hmap[2 * e]
        if img is None:
            continue
        f = img >> 1
        s = 1 if img == 2 * f else -1
        out[f] = out.get(f, 0) + c * s
    return out


def h1_determinant_sign(m: Morphism, orient_src: Orientation, orient_dst: Orientation) -> int:
    """Sign of det of the source cycle basis written in the target basis.

    Valid whenever the pushed-forward cycles span the target cycle space
    (isomorphisms, and collapse maps once the collapsed edge lies in the
    source tree).
    """
    src_rows = cycle_basis(orient_src.graph, orient_src).rows
    h = len(src_rows)
    if len(orient_dst.comp_order) != h:
        raise ValueError("cycle ranks differ")
    if h == 0:
        return 1
    dst_sign = {e: (1 if d == 2 * e else -1) for e, d in zip(orient_dst.comp_order, orient_dst.comp_dirs)}
    matrix = []
    for row in src_rows:
        img = _image_row(row, m)
        matrix.append([img.get(e, 0) * dst_sign[e] for e in orient_dst.comp_order])
    s = det_sign(matrix)
    if s == 0:
        raise ValueError("pushed cycles do not form a basis")
    return s


def rebase_sign(orientation: Orientation, tree: frozenset[int]) -> tuple[Orientation, int]:
    """Re-express the cycle part in the basis of another spanning tree.

    Returns the tree-based orientation and the sign of the change of basis
    (new basis written in the old one); the orientation class itself is
    unchanged, the sign records how the representation moved.
    """
    from .graph import identity_morphism

    g = orientation.graph
    new = Orientation(
        graph=g,
        edge_order=orientation.edge_order,
        tree=tree,
        comp_order=tuple(sorted(set(range(g.edge_count)) - tree)),
        comp_dirs=tuple(2 * e for e in sorted(set(range(g.edge_count)) - tree)),
    )
    sign = h1_determinant_sign(identity_morphism(g), new, orientation)
    return new, sign


def exchange_rebase(orientation: Orientation, tree: frozenset[int]) -> tuple[Orientation, int]:
    """Move to another spanning tree by iterated single-edge exchanges.

    Each step swaps one complement edge into the tree and directs the edge
    leaving the tree so that its new cycle replaces the old one in place;
    this keeps the orientation class fixed, so the accumulated sign is the
    same as the direct change-of-basis sign (tested, always +1 against
    ``rebase_sign`` composed with itself).
    """
    g = orientation.graph
    cur = orientation
    total = 1
    guard = 0
    while cur.tree != tree:
        guard += 1
        if guard > 4 * g.edge_count:
            raise RuntimeError("tree exchange failed to terminate")
        enter = min(e for e in tree if e not in cur.tree)
        pos = cur.comp_order.index(enter)
        row = dict(cycle_basis(g, cur).rows[pos])
        leave = min(e for e in row if e in cur.tree and e not in tree)
        new_tree = frozenset(set(cur.tree) - {leave} | {enter})
        # the leaving edge inherits the direction it had inside the old cycle
        leave_dir = 2 * leave if row[leave] == 1 else 2 * leave + 1
        comp = [leave if e == enter else e for e in cur.comp_order]
        dirs = [leave_dir if e == leave else d for e, d in zip(comp, cur.comp_dirs)]
        nxt = Orientation(g, cur.edge_order, new_tree, tuple(comp), tuple(dirs))
        from .graph import identity_morphism

        total *= h1_determinant_sign(identity_morphism(g), nxt, cur)
        cur = nxt
    return cur, total


def morphism_sign(m: Morphism, parity: str, orient_src: Orientation, orient_dst: Orientation) -> int:
    """Sign a morphism contributes against the two chosen orientations.

    Isomorphism: the parity of the induced edge permutation (between the
    two edge orders), times the cycle-basis determinant sign when the
    parity flag is odd.

    Single-edge collapse (optionally already composed with an isomorphism
    onto a canonical target): (-1)^i for the collapsed edge at 1-based
    position i of the source order, times the edge-matching parity; for odd
    parity additionally the transport of the cycle orientation, computed by
    re-basing the source to a spanning tree through the collapsed edge.
    """
    if parity not in ("even", "odd"):
        raise ValueError(f"unknown parity {parity!r}")
    if m.kind == "isomorphism":
        order_dst_pos = {e: i for i, e in enumerate(orient_dst.edge_order)}
        seq = [order_dst_pos[m.edge_action[e]] for e in orient_src.edge_order]
        sign = perm_parity(seq)
        if parity == "odd":
            sign *= h1_determinant_sign(m, orient_src, orient_dst)
        return sign
    if len(m.collapsed_edges) != 1:
        raise ValueError("compose single-edge collapses instead of collapsing several edges")
    e = m.collapsed_edges[0]
    src = m.source
    sign = -1 if orient_src.edge_position(e) % 2 else 1
    order_dst_pos = {f: i for i, f in enumerate(orient_dst.edge_order)}
    seq = [order_dst_pos[m.edge_action[f]] for f in orient_src.edge_order if f != e]
    sign *= perm_parity(seq)
    if parity == "odd":
        if src.is_tadpole(e):
            raise ValueError("odd-parity transport is undefined across a tadpole collapse")
        rebased, d1 = rebase_sign(orient_src, spanning_tree(src, prefer=e))
        d2 = h1_determinant_sign(m, rebased, orient_dst)
        sign *= d1 * d2
    return sign
