"""Partial linear spaces with 3-point lines: catalog, validation, incidence.

Every space fixes a deterministic point and line order (documented per
builder), so incidence matrices, quotients and all downstream output are
reproducible byte for byte.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .analysis import Graph, intersection_array
from .gf2 import BitMatrix

Line = tuple[int, int, int]


@dataclass(frozen=True)
class PartialLinearSpace:
    """Points 0..n_points-1 and unordered 3-point lines."""

    name: str
    n_points: int
    lines: tuple[Line, ...]

    @property
    def n_lines(self) -> int:
        return len(self.lines)

    def lines_through(self, point: int) -> list[int]:
        return [i for i, ln in enumerate(self.lines) if point in ln]

    def to_text(self) -> str:
        out = [f"points {self.n_points}"]
        out.extend(f"{a} {b} {c}" for a, b, c in self.lines)
        return "\n".join(out) + "\n"

    @classmethod
    def from_text(cls, text: str, name: str = "parsed") -> "PartialLinearSpace":
        rows = [ln for ln in text.splitlines() if ln.strip()]
        head = rows[0].split()
        if len(head) != 2 or head[0] != "points":
            raise ValueError("first line must be 'points <n>'")
        n = int(head[1])
        lines = []
        for row in rows[1:]:
            a, b, c = (int(x) for x in row.split())
            lines.append(_line(a, b, c))
        return cls(name, n, tuple(lines))


def _line(a: int, b: int, c: int) -> Line:
    x, y, z = sorted((a, b, c))
    return (x, y, z)


def _space(name: str, n_points: int, lines: Iterable[Sequence[int]]) -> PartialLinearSpace:
    return PartialLinearSpace(
        name, n_points, tuple(_line(*ln) for ln in lines)
    )


def validate(space: PartialLinearSpace) -> tuple[bool, str | None]:
    """Check the two space invariants; returns (ok, offending description)."""
    seen_pairs: dict[tuple[int, int], int] = {}
    for idx, ln in enumerate(space.lines):
        if len(set(ln)) != 3:
            return False, f"line {idx} {ln} has a repeated point"
        if not all(0 <= p < space.n_points for p in ln):
            return False, f"line {idx} {ln} has an out-of-range point"
        for u, v in combinations(ln, 2):
            key = (u, v)
            if key in seen_pairs:
                return (
                    False,
                    f"points {u},{v} lie on lines {seen_pairs[key]} and {idx}",
                )
            seen_pairs[key] = idx
    return True, None


@dataclass(frozen=True)
class CollinearityGraph:
    """The graph on points, adjacent when collinear, with line lookup."""

    space: PartialLinearSpace
    graph: Graph
    line_of_pair: dict[tuple[int, int], int]

    def third_point(self, u: int, v: int) -> int | None:
        idx = self.line_of_pair.get((min(u, v), max(u, v)))
        if idx is None:
            return None
        return next(p for p in self.space.lines[idx] if p not in (u, v))


def collinearity_graph(space: PartialLinearSpace) -> CollinearityGraph:
    line_of_pair: dict[tuple[int, int], int] = {}
    edges = []
    for idx, ln in enumerate(space.lines):
        for u, v in combinations(ln, 2):
            if (u, v) not in line_of_pair:
                line_of_pair[(u, v)] = idx
                edges.append((u, v))
    return CollinearityGraph(space, Graph(space.n_points, edges), line_of_pair)


def check_lambda1(space: PartialLinearSpace) -> tuple[bool, tuple[int, int] | None]:
    """Every edge of the collinearity graph in exactly one triangle = its line.

    Returns (ok, witness edge).  Scanning edges covers all triangles, so this
    also certifies that every triangle of the graph is a line.
    """
    cg = collinearity_graph(space)
    rows = cg.graph.bitrows()
    for (u, v), idx in cg.line_of_pair.items():
        common = rows[u] & rows[v]
        if common.bit_count() != 1:
            return False, (u, v)
        w = common.bit_length() - 1
        if _line(u, v, w) != space.lines[idx]:
            return False, (u, v)
    return True, None


def incidence_matrix(space: PartialLinearSpace) -> BitMatrix:
    """Point-line incidence: one row per point, one column per line."""
    rows = [0] * space.n_points
    for j, ln in enumerate(space.lines):
        for p in ln:
            rows[p] |= 1 << j
    return BitMatrix(space.n_points, space.n_lines, rows)


# ---------------------------------------------------------------------------
# Catalog builders.  Point encodings, in the order the points are numbered:


def grid_gq21() -> PartialLinearSpace:
    """3x3 grid: point (i,j) -> 3i+j; lines are the 3 rows then 3 columns."""
    lines = [(3 * i, 3 * i + 1, 3 * i + 2) for i in range(3)]
    lines += [(j, j + 3, j + 6) for j in range(3)]
    return _space("GQ(2,1)", 9, lines)


def _masks_of_subsets(universe: int, size: int) -> list[int]:
    return [
        sum(1 << i for i in comb)
        for comb in combinations(range(universe), size)
    ]


def kneser_space(d: int) -> PartialLinearSpace:
    """d-subsets of a 3d-set; lines are the partitions into three d-sets.

    Points are ordered by their bitmask value (colex order); lines follow the
    partition enumeration: the part containing element 0 first, then the part
    containing the least remaining element.
    """
    if d < 1:
        raise ValueError("d must be at least 1")
    n = 3 * d
    masks = sorted(_masks_of_subsets(n, d))
    index = {m: i for i, m in enumerate(masks)}
    lines = []
    rest0 = [i for i in range(1, n)]
    for first in combinations(rest0, d - 1):
        a = (1 << 0) | sum(1 << i for i in first)
        remaining = [i for i in range(1, n) if not (a >> i) & 1]
        head = remaining[0]
        rest_mask = sum(1 << i for i in remaining)
        for second in combinations(remaining[1:], d - 1):
            b = (1 << head) | sum(1 << i for i in second)
            lines.append((index[a], index[b], index[rest_mask ^ b]))
    return _space(f"K({n},{d}) partitions", len(masks), lines)


def duads_gq22() -> PartialLinearSpace:
    """2-subsets of a 6-set with the 15 perfect matchings as lines."""
    space = kneser_space(2)
    return PartialLinearSpace("GQ(2,2)", space.n_points, space.lines)


def schlafli_gq24() -> PartialLinearSpace:
    """27 points a_i, b_i (i<6), c_ij (i<j); lines {a_i,b_j,c_ij} for i != j
    plus {c_ij,c_kl,c_mn} over the pair partitions of the 6-set."""
    pair_index = {}
    for idx, (i, j) in enumerate(combinations(range(6), 2)):
        pair_index[(i, j)] = 12 + idx

    def c(i: int, j: int) -> int:
        return pair_index[(min(i, j), max(i, j))]

    lines = []
    for i in range(6):
        for j in range(6):
            if i != j:
                lines.append((i, 6 + j, c(i, j)))
    # pair partitions: the pair with 0 first, then the pair with the least rest
    for x in range(1, 6):
        rest = [y for y in range(1, 6) if y != x]
        for y in rest[1:]:
            p2 = (rest[0], y)
            p3 = tuple(z for z in rest if z not in p2)
            lines.append((c(0, x), c(*p2), c(*p3)))
    return _space("GQ(2,4)", 27, lines)


def _f3_digits(v: int, n: int) -> tuple[int, ...]:
    out = []
    for _ in range(n):
        out.append(v % 3)
        v //= 3
    return tuple(out)


def vo4_minus3() -> PartialLinearSpace:
    """Affine space F_3^4 (point v = sum x_i 3^i) with lines in the singular
    directions of the elliptic form Q = x0*x1 + x2^2 + x3^2."""

    def q(v: int) -> int:
        x = _f3_digits(v, 4)
        return (x[0] * x[1] + x[2] * x[2] + x[3] * x[3]) % 3

    def add(u: int, v: int) -> int:
        xu, xv = _f3_digits(u, 4), _f3_digits(v, 4)
        return sum(((a + b) % 3) * 3**i for i, (a, b) in enumerate(zip(xu, xv)))

    singular = [w for w in range(1, 81) if q(w) == 0]
    directions = []
    seen = set()
    for w in singular:
        if w in seen:
            continue
        seen.add(w)
        seen.add(add(w, w))
        directions.append(w)
    lines = []
    for w in directions:
        w2 = add(w, w)
        for v in range(81):
            a, b, c = v, add(v, w), add(v, w2)
            if v == min(a, b, c):
                lines.append((a, b, c))
    return _space("VO4-(3)", 81, lines)


def line_graph_petersen() -> PartialLinearSpace:
    """Edges of the Petersen graph as points; the 10 vertex stars as lines.

    Petersen vertices are the 2-subsets of a 5-set in bitmask order; edges
    (points here) are sorted pairs of vertex indices in lex order.
    """
    masks = sorted(_masks_of_subsets(5, 2))
    pet_edges = [
        (i, j)
        for i, j in combinations(range(10), 2)
        if masks[i] & masks[j] == 0
    ]
    edge_index = {e: k for k, e in enumerate(pet_edges)}
    lines = []
    for v in range(10):
        star = [edge_index[e] for e in pet_edges if v in e]
        lines.append(tuple(star))
    return _space("L(K(5,2))", len(pet_edges), lines)


def fano_plane() -> PartialLinearSpace:
    """PG(2,2): points are 1..7 (as values, numbered value-1); lines are the
    triples whose values XOR to zero."""
    lines = [
        (a - 1, b - 1, c - 1)
        for a, b, c in combinations(range(1, 8), 3)
        if a ^ b ^ c == 0
    ]
    return _space("PG(2,2)", 7, lines)


def flag_space(base: PartialLinearSpace, name: str | None = None) -> PartialLinearSpace:
    """Flags (point, line) of a 3-regular geometry; lines are the 3 flags per
    base point (pencils) followed by the 3 flags per base line (rows).

    Requires every base point on exactly 3 lines (lines already have 3
    points).  Flags are numbered sorted by (point, line).
    """
    by_point: dict[int, list[int]] = {p: [] for p in range(base.n_points)}
    for idx, ln in enumerate(base.lines):
        for p in ln:
            by_point[p].append(idx)
    bad = [p for p, ls in by_point.items() if len(ls) != 3]
    if bad:
        raise ValueError(f"base point {bad[0]} lies on {len(by_point[bad[0]])} lines, need 3")
    flags = sorted((p, l) for p, ls in by_point.items() for l in ls)
    flag_index = {f: i for i, f in enumerate(flags)}
    lines = []
    for p in range(base.n_points):
        lines.append(tuple(flag_index[(p, l)] for l in by_point[p]))
    for l, ln in enumerate(base.lines):
        lines.append(tuple(flag_index[(p, l)] for p in ln))
    return _space(name or f"flags({base.name})", len(flags), lines)


def gh21_flag_space() -> PartialLinearSpace:
    """Generalized hexagon of order (2,1): the flag geometry of PG(2,2)."""
    return flag_space(fano_plane(), "GH(2,1)")


def go21_flag_space() -> PartialLinearSpace:
    """Generalized octagon of order (2,1): the flag geometry of GQ(2,2)."""
    return flag_space(duads_gq22(), "GO(2,1)")


# --- split Cayley hexagon of order 2 ---------------------------------------

_HEX_PAIRS = ((0, 4), (1, 5), (2, 6))


def _hex_q(v: int) -> int:
    # parabolic form x0x4 + x1x5 + x2x6 + x3 on F_2^7
    acc = (v >> 3) & 1
    for i, j in _HEX_PAIRS:
        acc ^= ((v >> i) & (v >> j)) & 1
    return acc


def _hex_b(u: int, v: int) -> int:
    acc = 0
    for i, j in _HEX_PAIRS:
        acc ^= ((u >> i) & (v >> j)) & 1
        acc ^= ((u >> j) & (v >> i)) & 1
    return acc


def _pluecker_ok(x: int, y: int) -> bool:
    def p(i: int, j: int) -> int:
        return (((x >> i) & (y >> j)) ^ ((x >> j) & (y >> i))) & 1

    return (
        p(1, 2) == p(3, 4)
        and p(2, 0) == p(3, 5)
        and p(0, 1) == p(3, 6)
        and p(5, 6) == p(0, 3)
        and p(6, 4) == p(1, 3)
        and p(4, 5) == p(2, 3)
    )


def split_cayley_hexagon() -> PartialLinearSpace:
    """Generalized hexagon of order (2,2) on the 63 singular points of a
    parabolic quadric in F_2^7; its lines are the quadric lines whose
    Grassmann coordinates satisfy six standard linear conditions.

    Points are the singular vectors in increasing integer order.  The model
    is certified downstream: 63 points and 63 lines, a valid space, and a
    distance-regular collinearity graph with array {6,4,4;1,1,3}.
    """
    points = [v for v in range(1, 128) if _hex_q(v) == 0]
    index = {v: i for i, v in enumerate(points)}
    lines = set()
    for a, b in combinations(points, 2):
        if _hex_b(a, b):
            continue
        c = a ^ b
        if _hex_q(c):
            continue
        if not _pluecker_ok(a, b):
            continue
        lines.add(_line(index[a], index[b], index[c]))
    out = _space("GH(2,2) point side", 63, sorted(lines))
    if out.n_lines != 63:
        raise AssertionError(f"hexagon model yields {out.n_lines} lines, expected 63")
    return out


def dual_hexagon() -> PartialLinearSpace:
    """The split Cayley hexagon with the roles of points and lines exchanged."""
    hexa = split_cayley_hexagon()
    by_point: dict[int, list[int]] = {p: [] for p in range(hexa.n_points)}
    for idx, ln in enumerate(hexa.lines):
        for p in ln:
            by_point[p].append(idx)
    lines = [tuple(by_point[p]) for p in range(hexa.n_points)]
    return _space("GH(2,2) line side", hexa.n_lines, lines)


def hamming_space(n: int) -> PartialLinearSpace:
    """F_3^n (point v = sum x_i 3^i) with the coordinate-direction lines
    {v, v+e_i, v+2e_i}; lines ordered by (coordinate, base point)."""
    if n < 1:
        raise ValueError("n must be at least 1")
    total = 3**n
    lines = []
    for i in range(n):
        step = 3**i
        for v in range(total):
            if (v // step) % 3 == 0:
                lines.append((v, v + step, v + 2 * step))
    return _space(f"3^{n}", total, lines)


# --- optional: distance-regular 3-fold cover of the GQ(2,2) graph ----------


def _f3_nullspace(mat: np.ndarray) -> np.ndarray:
    """Basis of the right null space of an integer matrix over F_3."""
    m = (mat % 3).astype(np.int64)
    rows, cols = m.shape
    m = m.copy()
    pivots = []
    r = 0
    for c in range(cols):
        sel = None
        for rr in range(r, rows):
            if m[rr, c] % 3:
                sel = rr
                break
        if sel is None:
            continue
        m[[r, sel]] = m[[sel, r]]
        inv = 1 if m[r, c] % 3 == 1 else 2
        m[r] = (m[r] * inv) % 3
        for rr in range(rows):
            if rr != r and m[rr, c] % 3:
                m[rr] = (m[rr] - m[rr, c] * m[r]) % 3
        pivots.append(c)
        r += 1
        if r == rows:
            break
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        vec = np.zeros(cols, dtype=np.int64)
        vec[f] = 1
        for prow, pc in zip(range(len(pivots)), pivots):
            vec[pc] = (-m[prow, f]) % 3
        basis.append(vec)
    return np.array(basis, dtype=np.int64) if basis else np.zeros((0, cols), np.int64)


def triple_cover_3s6(attempts: int = 200000, seed: int = 1) -> PartialLinearSpace | None:
    """Search for the distance-regular 3-fold cover of the GQ(2,2) graph.

    Assigns Z_3 voltages to the 45 edges under two cover conditions: every
    triangle carries zero total voltage (its three lifts are the cover's
    lines) and the three 2-paths between any noncollinear point pair carry
    pairwise distinct voltages (one common neighbor per fiber level).  The
    search is gauge-fixed to vanish on a spanning tree and backtracks with
    constraint propagation, capped at `attempts` assignment steps; a found
    voltage is certified by rebuilding the cover and checking intersection
    array {6,4,2,1;1,1,4,6}.  Returns None when the budget runs out.

    seed orders the value choices, so any successful run is reproducible.
    """
    base = duads_gq22()
    cg = collinearity_graph(base)
    g = cg.graph
    edges = sorted(cg.line_of_pair)
    eidx = {e: i for i, e in enumerate(edges)}
    n_e = len(edges)

    def signed(a: int, b: int) -> tuple[int, int]:
        return (eidx[(a, b)], 1) if a < b else (eidx[(b, a)], -1)

    triangles = []
    for (x, y, z) in base.lines:
        triangles.append((signed(x, y), signed(y, z), signed(z, x)))
    rows = g.bitrows()
    pair_paths = []
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if g.has_edge(u, v):
                continue
            common = [w for w in g.adj[u] if (rows[v] >> w) & 1]
            pair_paths.append(
                tuple((signed(u, w), signed(w, v)) for w in common)
            )

    tri_of_edge: list[list[int]] = [[] for _ in range(n_e)]
    for t, tri in enumerate(triangles):
        for e, _ in tri:
            tri_of_edge[e].append(t)
    pairs_of_edge: list[list[int]] = [[] for _ in range(n_e)]
    for p, paths in enumerate(pair_paths):
        for path in paths:
            for e, _ in path:
                pairs_of_edge[e].append(p)

    # gauge fixing: BFS-tree edges carry voltage 0
    volt = [-1] * n_e
    seen = {0}
    queue = [0]
    while queue:
        u = queue.pop(0)
        for w in g.adj[u]:
            if w not in seen:
                seen.add(w)
                volt[signed(u, w)[0]] = 0
                queue.append(w)

    rng = random.Random(seed)
    value_orders = [rng.sample((0, 1, 2), 3) for _ in range(n_e)]
    budget = [attempts]

    def tri_ok(t: int) -> bool:
        total = 0
        for e, s in triangles[t]:
            if volt[e] < 0:
                return True
            total += s * volt[e]
        return total % 3 == 0

    def pair_ok(p: int) -> bool:
        sums = []
        for (e1, s1), (e2, s2) in pair_paths[p]:
            if volt[e1] < 0 or volt[e2] < 0:
                continue
            sums.append((s1 * volt[e1] + s2 * volt[e2]) % 3)
        return len(sums) == len(set(sums))

    def consistent(e: int) -> bool:
        return all(tri_ok(t) for t in tri_of_edge[e]) and all(
            pair_ok(p) for p in pairs_of_edge[e]
        )

    def forced_edge() -> int | None:
        # an unset edge in a triangle whose other two edges are set
        for t, tri in enumerate(triangles):
            unset = [e for e, _ in tri if volt[e] < 0]
            if len(unset) == 1:
                return unset[0]
        return None

    def search() -> bool:
        if budget[0] <= 0:
            return False
        e = forced_edge()
        free = e is None
        if free:
            try:
                e = volt.index(-1)
            except ValueError:
                return True
        for value in value_orders[e]:
            budget[0] -= 1
            volt[e] = value
            if consistent(e) and search():
                return True
            volt[e] = -1
            if not free:
                # a forced edge admits at most one consistent value
                continue
            if budget[0] <= 0:
                return False
        return False

    if not search():
        return None
    omega = np.array(volt, dtype=np.int64)
    cover = _voltage_cover(base.n_points, edges, omega)
    arr = intersection_array(cover, all_bases=True)
    if arr is None or arr.b != (6, 4, 2, 1) or arr.c != (1, 1, 4, 6):
        return None
    lines = _triangles_as_lines(cover)
    if lines is None:
        return None
    return _space("3S6 cover", cover.n, lines)


def _f3_rank(mat: np.ndarray) -> int:
    m = (mat % 3).astype(np.int64).copy()
    rows, cols = m.shape
    r = 0
    for c in range(cols):
        sel = None
        for rr in range(r, rows):
            if m[rr, c] % 3:
                sel = rr
                break
        if sel is None:
            continue
        m[[r, sel]] = m[[sel, r]]
        inv = 1 if m[r, c] % 3 == 1 else 2
        m[r] = (m[r] * inv) % 3
        for rr in range(rows):
            if rr != r and m[rr, c] % 3:
                m[rr] = (m[rr] - m[rr, c] * m[r]) % 3
        r += 1
        if r == rows:
            break
    return r


def _voltage_cover(n: int, edges: list[tuple[int, int]], omega: np.ndarray) -> Graph:
    cover_edges = []
    for (u, v), w in zip(edges, omega):
        for i in range(3):
            cover_edges.append((3 * u + i, 3 * v + (i + int(w)) % 3))
    return Graph(3 * n, cover_edges)


def _triangles_as_lines(g: Graph) -> list[Line] | None:
    rows = g.bitrows()
    lines = set()
    for u in range(g.n):
        for v in g.adj[u]:
            if v <= u:
                continue
            common = rows[u] & rows[v]
            if common.bit_count() != 1:
                return None
            w = common.bit_length() - 1
            lines.add(_line(u, v, w))
    return sorted(lines)
