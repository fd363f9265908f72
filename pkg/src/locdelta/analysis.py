"""Graph analytics: BFS, distance-regularity, seeded equitable refinement,
antipodality, isomorphism, and local-structure verification.

Explicit graphs carry sorted adjacency lists plus bitset rows, so refinement
and isomorphism run on machine-word popcounts.  Graphs on a binary vector
space stay implicit (vertex = integer, neighbor = XOR with a connection set)
and their BFS / refinement paths run vectorized on numpy arrays.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Optional, Sequence

import numpy as np

ProgressFn = Optional[Callable[[str], None]]


class Graph:
    """Undirected simple graph on vertices 0..n-1 with explicit adjacency."""

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()) -> None:
        self.n = n
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range")
            nbrs[u].add(v)
            nbrs[v].add(u)
        self.adj: tuple[tuple[int, ...], ...] = tuple(
            tuple(sorted(s)) for s in nbrs
        )
        self._bitrows: list[int] | None = None
        self._dir_edges: tuple[np.ndarray, np.ndarray] | None = None

    @classmethod
    def from_adjacency(cls, adj: Sequence[Sequence[int]]) -> "Graph":
        g = cls(len(adj))
        g.adj = tuple(tuple(sorted(a)) for a in adj)
        return g

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    @property
    def n_edges(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            for v in self.adj[u]:
                if u < v:
                    yield u, v

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def bitrows(self) -> list[int]:
        if self._bitrows is None:
            rows = [0] * self.n
            for u in range(self.n):
                r = 0
                for v in self.adj[u]:
                    r |= 1 << v
                rows[u] = r
            self._bitrows = rows
        return self._bitrows

    def directed_edge_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        if self._dir_edges is None:
            eu = []
            ev = []
            for u in range(self.n):
                for v in self.adj[u]:
                    eu.append(u)
                    ev.append(v)
            self._dir_edges = (
                np.asarray(eu, dtype=np.int64),
                np.asarray(ev, dtype=np.int64),
            )
        return self._dir_edges

    def is_regular(self) -> int | None:
        degs = {len(a) for a in self.adj}
        return degs.pop() if len(degs) == 1 else None

    def induced(self, vertices: Sequence[int]) -> "Graph":
        """Subgraph induced on the given vertices, reindexed by position."""
        index = {v: i for i, v in enumerate(vertices)}
        edges = []
        vs = set(vertices)
        for v in vertices:
            for w in self.adj[v]:
                if w in vs and index[v] < index[w]:
                    edges.append((index[v], index[w]))
        return Graph(len(vertices), edges)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.n_edges})"


class CayleyGraphView:
    """Implicit graph on all m-bit vectors; u ~ v iff u ^ v is a connection.

    The connection set must consist of distinct nonzero values, which makes
    the graph simple and regular; every translation v -> v ^ a is then an
    automorphism.
    """

    def __init__(self, m: int, connection: Sequence[int]) -> None:
        conn = tuple(connection)
        if len(set(conn)) != len(conn):
            raise ValueError("connection set has repeats")
        if any(c == 0 or c >> m for c in conn):
            raise ValueError("connection elements must be nonzero m-bit values")
        self.m = m
        self.n = 1 << m
        self.connection = conn
        self._connset = frozenset(conn)

    @property
    def degree_value(self) -> int:
        return len(self.connection)

    def degree(self, v: int) -> int:
        return len(self.connection)

    def neighbors(self, v: int) -> list[int]:
        if not 0 <= v < self.n:
            raise ValueError(f"vertex {v} out of range")
        return [v ^ c for c in self.connection]

    def has_edge(self, u: int, v: int) -> bool:
        return (u ^ v) in self._connset

    def __repr__(self) -> str:
        return f"CayleyGraphView(m={self.m}, degree={len(self.connection)})"


GraphLike = Graph | CayleyGraphView


# ---------------------------------------------------------------------------
# BFS and diameters


def bfs_distances(g: GraphLike, base: int = 0, progress: ProgressFn = None) -> np.ndarray:
    """Distances from base; unreachable vertices get -1."""
    if isinstance(g, CayleyGraphView):
        return _bfs_cayley(g, base, progress)
    dist = np.full(g.n, -1, dtype=np.int32)
    dist[base] = 0
    queue = deque([base])
    while queue:
        u = queue.popleft()
        du = dist[u]
        for v in g.adj[u]:
            if dist[v] < 0:
                dist[v] = du + 1
                queue.append(v)
    return dist


def _bfs_cayley(g: CayleyGraphView, base: int, progress: ProgressFn = None) -> np.ndarray:
    conn = np.asarray(g.connection, dtype=np.int64)
    dist = np.full(g.n, -1, dtype=np.int32)
    dist[base] = 0
    frontier = np.asarray([base], dtype=np.int64)
    d = 0
    reached = 1
    while frontier.size:
        nxt = np.unique((frontier[:, None] ^ conn[None, :]).ravel())
        nxt = nxt[dist[nxt] < 0]
        d += 1
        if nxt.size:
            dist[nxt] = d
            reached += int(nxt.size)
            if progress is not None:
                progress(f"bfs layer {d}: {reached}/{g.n} vertices reached")
        frontier = nxt
    return dist


def eccentricity(g: GraphLike, base: int = 0) -> int:
    dist = bfs_distances(g, base)
    if (dist < 0).any():
        raise ValueError("graph is disconnected")
    return int(dist.max())


def diameter_vt(g: GraphLike, base: int = 0, progress: ProgressFn = None) -> int:
    """Diameter under the vertex-transitivity assumption (constant eccentricity).

    Only sound for graphs known to be vertex-transitive, e.g. Cayley graphs;
    use diameter() for arbitrary graphs.
    """
    dist = bfs_distances(g, base, progress)
    if (dist < 0).any():
        raise ValueError("graph is disconnected")
    return int(dist.max())


def diameter(g: Graph) -> int:
    """Exact diameter by all-sources BFS (explicit graphs only)."""
    best = 0
    for v in range(g.n):
        best = max(best, eccentricity(g, v))
    return best


# ---------------------------------------------------------------------------
# Distance-regularity


@dataclass(frozen=True)
class IntersectionArray:
    b: tuple[int, ...]
    c: tuple[int, ...]

    @property
    def diameter(self) -> int:
        return len(self.c)

    @property
    def degree(self) -> int:
        return self.b[0]

    def cell_sizes(self) -> tuple[int, ...]:
        sizes = [1]
        for i in range(self.diameter):
            sizes.append(sizes[-1] * self.b[i] // self.c[i])
        return tuple(sizes)

    def __str__(self) -> str:
        bs = ",".join(str(x) for x in self.b)
        cs = ",".join(str(x) for x in self.c)
        return "{%s;%s}" % (bs, cs)


def _intersection_counts(g: GraphLike, base: int) -> IntersectionArray | None:
    dist = bfs_distances(g, base)
    if (dist < 0).any():
        return None
    d = int(dist.max())
    b: list[set[int]] = [set() for _ in range(d + 1)]
    c: list[set[int]] = [set() for _ in range(d + 1)]
    a: list[set[int]] = [set() for _ in range(d + 1)]
    for v in range(g.n):
        dv = int(dist[v])
        up = down = same = 0
        for w in g.neighbors(v):
            dw = int(dist[w])
            if dw == dv + 1:
                up += 1
            elif dw == dv - 1:
                down += 1
            else:
                same += 1
        b[dv].add(up)
        c[dv].add(down)
        a[dv].add(same)
    for i in range(d + 1):
        if len(b[i]) > 1 or len(c[i]) > 1 or len(a[i]) > 1:
            return None
    return IntersectionArray(
        b=tuple(b[i].pop() for i in range(d)),
        c=tuple(c[i].pop() for i in range(1, d + 1)),
    )


def intersection_array(
    g: GraphLike, base: int = 0, all_bases: bool = True
) -> IntersectionArray | None:
    """Intersection array when the graph is distance-regular, else None.

    With all_bases the counts are required to be identical from every base
    vertex, which is the full distance-regularity check; a single base is
    enough for vertex-transitive graphs.
    """
    first = _intersection_counts(g, base)
    if first is None or not all_bases:
        return first
    for v in range(g.n):
        if v == base:
            continue
        if _intersection_counts(g, v) != first:
            return None
    return first


def srg_params(g: GraphLike) -> tuple[int, int, int, int] | None:
    """(v, k, lambda, mu) when strongly regular, else None."""
    n = g.n
    if isinstance(g, CayleyGraphView):
        # materialize bitrows; only sensible for small m
        if g.m > 13:
            raise ValueError("srg audit needs an explicit graph at this size")
        rows = []
        for v in range(n):
            r = 0
            for w in g.neighbors(v):
                r |= 1 << w
            rows.append(r)
    else:
        rows = g.bitrows()
    k = rows[0].bit_count() if rows else 0
    lam: set[int] = set()
    mu: set[int] = set()
    for u in range(n):
        ru = rows[u]
        if ru.bit_count() != k:
            return None
        for v in range(u + 1, n):
            common = (ru & rows[v]).bit_count()
            if (ru >> v) & 1:
                lam.add(common)
            else:
                mu.add(common)
        if len(lam) > 1 or len(mu) > 1:
            return None
    if len(lam) != 1 or len(mu) != 1:
        return None
    return (n, k, lam.pop(), mu.pop())


# ---------------------------------------------------------------------------
# Seeded equitable refinement and distribution diagrams


@dataclass(frozen=True)
class QuotientDiagram:
    """Quotient of a seeded coarsest equitable partition.

    mult[i][j] is the number of neighbors in cell j of any vertex of cell i;
    the diagonal entry is the within-cell degree (the diagram's loop).
    dists[i] is the distance of cell i from the seed cell.
    """

    sizes: tuple[int, ...]
    mult: tuple[tuple[int, ...], ...]
    dists: tuple[int, ...]

    @property
    def n_cells(self) -> int:
        return len(self.sizes)

    @property
    def loops(self) -> tuple[int, ...]:
        return tuple(self.mult[i][i] for i in range(self.n_cells))

    def degree(self) -> int:
        return sum(self.mult[0])

    def check_consistent(self) -> None:
        """Double-counting and row-sum identities; raises on violation."""
        r = self.n_cells
        deg = self.degree()
        for i in range(r):
            if sum(self.mult[i]) != deg:
                raise ValueError(f"cell {i}: row sums to {sum(self.mult[i])}, not {deg}")
            for j in range(r):
                if self.sizes[i] * self.mult[i][j] != self.sizes[j] * self.mult[j][i]:
                    raise ValueError(
                        f"double count fails between cells {i} and {j}: "
                        f"{self.sizes[i]}*{self.mult[i][j]} != {self.sizes[j]}*{self.mult[j][i]}"
                    )

    def to_json_dict(self) -> dict:
        cells = [
            {"size": self.sizes[i], "loop": self.mult[i][i]}
            for i in range(self.n_cells)
        ]
        edges = [
            {"from": i, "to": j, "mult": self.mult[i][j]}
            for i in range(self.n_cells)
            for j in range(self.n_cells)
            if i != j and self.mult[i][j]
        ]
        return {"cells": cells, "edges": edges}

    def to_dot(self, name: str = "diagram") -> str:
        lines = [f"digraph {name} {{"]
        for i in range(self.n_cells):
            lines.append(f'  c{i} [label="{self.sizes[i]} ({self.mult[i][i]})"];')
        for i in range(self.n_cells):
            for j in range(self.n_cells):
                if i != j and self.mult[i][j]:
                    lines.append(f'  c{i} -> c{j} [label="{self.mult[i][j]}"];')
        lines.append("}")
        return "\n".join(lines)

    def to_text(self) -> str:
        out = ["cells " + "/".join(str(s) for s in self.sizes)]
        for i in range(self.n_cells):
            out.append(
                f"cell {i}: size {self.sizes[i]} loop {self.mult[i][i]} dist {self.dists[i]}"
            )
        for i in range(self.n_cells):
            for j in range(self.n_cells):
                if i != j and self.mult[i][j]:
                    out.append(f"{i} -> {j}: {self.mult[i][j]}")
        return "\n".join(out)


def _stable_colors(colors: np.ndarray, count_fn, progress: ProgressFn) -> np.ndarray:
    """Iterate signature splitting until the partition stops refining."""
    rounds = 0
    while True:
        ncells = int(colors.max()) + 1
        counts = count_fn(colors, ncells)
        key = np.concatenate([colors[:, None], counts], axis=1)
        _, inv = np.unique(key, axis=0, return_inverse=True)
        inv = inv.astype(np.int32).reshape(colors.shape)
        rounds += 1
        new_ncells = int(inv.max()) + 1
        if progress is not None:
            progress(f"refinement round {rounds}: {new_ncells} cells")
        if new_ncells == ncells:
            return inv
        colors = inv


def _refine_cayley(g: CayleyGraphView, seed: int, progress: ProgressFn) -> np.ndarray:
    n = g.n
    idx = np.arange(n, dtype=np.int64)
    colors = np.zeros(n, dtype=np.int32)
    colors[seed] = 1

    def count_fn(cols: np.ndarray, ncells: int) -> np.ndarray:
        counts = np.zeros((n, ncells), dtype=np.int32)
        for c in g.connection:
            counts[idx, cols[idx ^ c]] += 1
        return counts

    return _stable_colors(colors, count_fn, progress)


def _refine_explicit(g: Graph, seed: int, progress: ProgressFn) -> np.ndarray:
    eu, ev = g.directed_edge_arrays()
    n = g.n
    colors = np.zeros(n, dtype=np.int32)
    colors[seed] = 1

    def count_fn(cols: np.ndarray, ncells: int) -> np.ndarray:
        counts = np.zeros((n, ncells), dtype=np.int32)
        np.add.at(counts, (eu, cols[ev]), 1)
        return counts

    return _stable_colors(colors, count_fn, progress)


def equitable_refinement(
    g: GraphLike, seed: int = 0, progress: ProgressFn = None
) -> QuotientDiagram:
    """Coarsest equitable partition refining ({seed}, rest), as a diagram.

    Cells are numbered seed-first, then by (distance from seed, strongest
    link back into the earliest already-numbered cell, size, least vertex),
    which is deterministic for a fixed vertex numbering.
    """
    if isinstance(g, CayleyGraphView):
        colors = _refine_cayley(g, seed, progress)
    else:
        colors = _refine_explicit(g, seed, progress)
    dist = bfs_distances(g, seed)
    if (dist < 0).any():
        raise ValueError("graph is disconnected")

    ncells = int(colors.max()) + 1
    members = [np.nonzero(colors == c)[0] for c in range(ncells)]
    cell_dist = []
    min_vertex = []
    for mem in members:
        ds = np.unique(dist[mem])
        if ds.size != 1:
            raise AssertionError("equitable cell mixes distances")
        cell_dist.append(int(ds[0]))
        min_vertex.append(int(mem[0]))

    # multiplicities from one representative per cell (partition is equitable)
    mult = [[0] * ncells for _ in range(ncells)]
    for ci in range(ncells):
        rep = min_vertex[ci]
        for w in g.neighbors(rep):
            mult[ci][int(colors[w])] += 1

    seed_cell = int(colors[seed])
    order = [seed_cell]
    remaining = [c for c in range(ncells) if c != seed_cell]
    while remaining:
        def sort_key(c: int):
            links = tuple(-mult[c][o] for o in order)
            return (cell_dist[c], links, len(members[c]), min_vertex[c])

        nxt = min(remaining, key=sort_key)
        order.append(nxt)
        remaining.remove(nxt)

    sizes = tuple(int(len(members[c])) for c in order)
    dists = tuple(cell_dist[c] for c in order)
    mult_ord = tuple(
        tuple(mult[ci][cj] for cj in order) for ci in order
    )
    diagram = QuotientDiagram(sizes=sizes, mult=mult_ord, dists=dists)
    diagram.check_consistent()
    return diagram


def refinement_is_stable(g: GraphLike, diagram_colors: np.ndarray) -> bool:
    """True when one more refinement round does not split the coloring."""
    n = g.n if not isinstance(g, CayleyGraphView) else g.n
    ncells = int(diagram_colors.max()) + 1
    if isinstance(g, CayleyGraphView):
        idx = np.arange(n, dtype=np.int64)
        counts = np.zeros((n, ncells), dtype=np.int32)
        for c in g.connection:
            counts[idx, diagram_colors[idx ^ c]] += 1
    else:
        eu, ev = g.directed_edge_arrays()
        counts = np.zeros((n, ncells), dtype=np.int32)
        np.add.at(counts, (eu, diagram_colors[ev]), 1)
    key = np.concatenate([diagram_colors[:, None], counts], axis=1)
    uniq = np.unique(key, axis=0)
    return uniq.shape[0] == ncells


def seeded_colors(g: GraphLike, seed: int = 0) -> np.ndarray:
    """The raw stable coloring behind equitable_refinement (for audits)."""
    if isinstance(g, CayleyGraphView):
        return _refine_cayley(g, seed, None)
    return _refine_explicit(g, seed, None)


# ---------------------------------------------------------------------------
# Antipodality


@dataclass(frozen=True)
class AntipodalResult:
    class_size: int
    swap: tuple[int, ...] | None
    xor_element: int | None
    automorphism_verified: bool


def antipodal_check(g: GraphLike, diam: int | None = None) -> AntipodalResult | None:
    """Check that the at-maximal-distance relation partitions the vertices.

    Returns the antipode-swap map (verified as an automorphism) when the
    classes are pairs, a class-size report when they are larger cliques,
    and None when the relation is not an equivalence at all.
    """
    if isinstance(g, CayleyGraphView):
        return _antipodal_cayley(g, diam)
    dist0 = bfs_distances(g, 0)
    if (dist0 < 0).any():
        raise ValueError("graph is disconnected")
    if diam is None:
        diam = diameter(g)
    far = [np.nonzero(bfs_distances(g, v) == diam)[0] for v in range(g.n)]
    size = len(far[0]) + 1
    for v in range(g.n):
        if len(far[v]) + 1 != size:
            return None
        for u in far[v]:
            # relation must be symmetric and transitive on the class
            rest = set(far[int(u)])
            rest.add(int(u))
            expected = set(int(x) for x in far[v]) | {v}
            if rest != expected:
                return None
    if size != 2:
        return AntipodalResult(size, None, None, False)
    swap = [int(far[v][0]) for v in range(g.n)]
    for u, v in g.edges():
        if not g.has_edge(swap[u], swap[v]):
            return AntipodalResult(2, tuple(swap), None, False)
    return AntipodalResult(2, tuple(swap), None, True)


def _antipodal_cayley(g: CayleyGraphView, diam: int | None) -> AntipodalResult | None:
    dist = bfs_distances(g, 0)
    if (dist < 0).any():
        raise ValueError("graph is disconnected")
    if diam is None:
        diam = int(dist.max())
    far = np.nonzero(dist == diam)[0]
    # translation invariance: d(u,v) = d(0, u^v), so the class of 0 is {0}+far
    for u in far:
        for v in far:
            if u != v and dist[int(u) ^ int(v)] != diam:
                return None
    size = int(far.size) + 1
    if size != 2:
        return AntipodalResult(size, None, None, False)
    a0 = int(far[0])
    # verify v -> v ^ a0 preserves adjacency on every vertex, vectorized
    verts = np.arange(g.n, dtype=np.int64)
    ok = True
    for c in g.connection:
        # neighbors of v^a0 must equal translated neighbors of v
        if not np.array_equal((verts ^ a0) ^ c, (verts ^ c) ^ a0):
            ok = False
            break
    return AntipodalResult(2, None, a0, ok)


# ---------------------------------------------------------------------------
# Isomorphism via joint color refinement + backtracking


def _joint_refine(
    rows_g: list[int],
    rows_h: list[int],
    col_g: list[int],
    col_h: list[int],
    n: int,
) -> tuple[list[int], list[int]] | None:
    while True:
        ncol = max(max(col_g), max(col_h)) + 1
        mask_g = [0] * ncol
        mask_h = [0] * ncol
        for v in range(n):
            mask_g[col_g[v]] |= 1 << v
            mask_h[col_h[v]] |= 1 << v
        for c in range(ncol):
            if mask_g[c].bit_count() != mask_h[c].bit_count():
                return None
        sig_g = [
            (col_g[v], tuple((rows_g[v] & mask_g[c]).bit_count() for c in range(ncol)))
            for v in range(n)
        ]
        sig_h = [
            (col_h[v], tuple((rows_h[v] & mask_h[c]).bit_count() for c in range(ncol)))
            for v in range(n)
        ]
        if sorted(sig_g) != sorted(sig_h):
            return None
        all_sigs = sorted(set(sig_g))
        if len(all_sigs) == ncol:
            return col_g, col_h
        remap = {s: i for i, s in enumerate(all_sigs)}
        col_g = [remap[s] for s in sig_g]
        col_h = [remap[s] for s in sig_h]


def _iso_search(
    rows_g: list[int],
    rows_h: list[int],
    col_g: list[int],
    col_h: list[int],
    n: int,
) -> list[int] | None:
    refined = _joint_refine(rows_g, rows_h, col_g, col_h, n)
    if refined is None:
        return None
    col_g, col_h = refined
    ncol = max(col_g) + 1
    if ncol == n:
        mapping = [0] * n
        pos_h = {col_h[v]: v for v in range(n)}
        for v in range(n):
            mapping[v] = pos_h[col_g[v]]
        return mapping
    # smallest non-singleton color class
    sizes = [0] * ncol
    for c in col_g:
        sizes[c] += 1
    target = min((s, c) for c, s in enumerate(sizes) if s > 1)[1]
    v = next(u for u in range(n) if col_g[u] == target)
    for w in range(n):
        if col_h[w] != target:
            continue
        cg = list(col_g)
        ch = list(col_h)
        cg[v] = ncol
        ch[w] = ncol
        found = _iso_search(rows_g, rows_h, cg, ch, n)
        if found is not None:
            return found
    return None


def isomorphic(g: Graph, h: Graph) -> list[int] | None:
    """A vertex bijection g -> h preserving adjacency both ways, or None.

    The returned mapping is re-verified edge by edge before being reported.
    """
    if g.n != h.n or g.n_edges != h.n_edges:
        return None
    if sorted(map(len, g.adj)) != sorted(map(len, h.adj)):
        return None
    if g.n == 0:
        return []
    mapping = _iso_search(
        g.bitrows(), h.bitrows(), [0] * g.n, [0] * h.n, g.n
    )
    if mapping is None:
        return None
    assert sorted(mapping) == list(range(g.n))
    hrows = h.bitrows()
    for u in range(g.n):
        mapped = 0
        for v in g.adj[u]:
            mapped |= 1 << mapping[v]
        if mapped != hrows[mapping[u]]:
            raise AssertionError("isomorphism verification failed")
    return mapping


def is_locally(
    g: GraphLike,
    delta: Graph,
    assume_vt: bool = False,
    vertices: Iterable[int] | None = None,
    progress: ProgressFn = None,
) -> tuple[bool, int | None]:
    """Check that each vertex neighborhood induces a graph isomorphic to delta.

    With assume_vt only vertex 0 is audited.  Returns (ok, failing_vertex).
    """
    if vertices is None:
        vertices = [0] if assume_vt else range(g.n)
    delta_degs = sorted(map(len, delta.adj))
    checked = 0
    for v in vertices:
        nbrs = list(g.neighbors(v))
        if len(nbrs) != delta.n:
            return False, v
        index = {w: i for i, w in enumerate(nbrs)}
        edges = []
        for i, u in enumerate(nbrs):
            for w in (set(g.neighbors(u)) & index.keys()):
                if index[w] > i:
                    edges.append((i, index[w]))
        local = Graph(delta.n, edges)
        if sorted(map(len, local.adj)) != delta_degs:
            return False, v
        if isomorphic(local, delta) is None:
            return False, v
        checked += 1
        if progress is not None and checked % 200 == 0:
            progress(f"local audit: {checked} neighborhoods verified")
    return True, None
