"""The Cayley graph on the binary quotient V with connection set phi(X).

Vertices are the integers 0..2^m-1 under the natural bit encoding of V in
dual-basis coordinates; the neighbors of g are g ^ phi(x).  Everything is
implicit (integer + XOR), so the 2^16-vertex cases need no adjacency store.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import IO, Iterator

from .analysis import CayleyGraphView, Graph
from .quotient import QuotientData, check_weight2
from .spaces import collinearity_graph

M_CAP = 28


class DegenerateQuotientError(ValueError):
    """Raised when phi is not injective or has a zero image (no graph)."""


@dataclass(frozen=True)
class CayleyGamma:
    m: int
    connection: tuple[int, ...]

    @property
    def n_vertices(self) -> int:
        return 1 << self.m

    @property
    def degree(self) -> int:
        return len(self.connection)

    def view(self) -> CayleyGraphView:
        return CayleyGraphView(self.m, self.connection)


def build_gamma(q: QuotientData, m_cap: int = M_CAP) -> CayleyGamma:
    """Cayley graph of the quotient; refuses degenerate or oversized inputs."""
    if q.m > m_cap:
        raise ValueError(f"dim V = {q.m} exceeds the vertex cap 2^{m_cap}")
    ok, pair = check_weight2(q)
    if not ok:
        raise DegenerateQuotientError(
            f"phi is not injective (points {pair[0]} and {pair[1]} collapse)"
        )
    if any(v == 0 for v in q.phi):
        x = q.phi.index(0)
        raise DegenerateQuotientError(f"phi({x}) = 0: vertex would be adjacent to itself")
    return CayleyGamma(q.m, tuple(q.phi))


def neighbors(g: CayleyGamma, vertex: int) -> list[int]:
    """The degree-many neighbors vertex ^ phi(x), in connection-set order."""
    if not 0 <= vertex < g.n_vertices:
        raise ValueError(f"vertex {vertex} out of range")
    return [vertex ^ c for c in g.connection]


def local_graph(g: CayleyGamma, q: QuotientData) -> tuple[Graph, tuple[int, ...]]:
    """Induced graph on the neighbors of 0, on point indices.

    Vertex x of the result stands for the neighbor phi(x); the returned
    labels give that bijection explicitly.
    """
    connset = set(g.connection)
    n = len(g.connection)
    edges = []
    for x in range(n):
        for y in range(x + 1, n):
            if g.connection[x] ^ g.connection[y] in connset:
                edges.append((x, y))
    return Graph(n, edges), g.connection


def local_matches_delta(g: CayleyGamma, q: QuotientData) -> tuple[bool, tuple[int, int] | None]:
    """Edge-exact comparison of the local graph with the collinearity graph,
    under the explicit bijection x -> phi(x).  Returns (ok, witness pair)."""
    cg = collinearity_graph(q.space)
    connset = set(g.connection)
    n = q.space.n_points
    rows = cg.graph.bitrows()
    for x in range(n):
        for y in range(x + 1, n):
            gamma_edge = (g.connection[x] ^ g.connection[y]) in connset
            delta_edge = bool((rows[x] >> y) & 1)
            if gamma_edge != delta_edge:
                return False, (x, y)
    return True, None


def iter_edge_lines(view: CayleyGraphView | Graph) -> Iterator[str]:
    """Edge-list export: header then one 'u v' pair per line with u < v."""
    yield f"# vertices {view.n}"
    if isinstance(view, CayleyGraphView):
        for v in range(view.n):
            for c in view.connection:
                w = v ^ c
                if v < w:
                    yield f"{v} {w}"
    else:
        for u, v in view.edges():
            yield f"{u} {v}"


def write_edge_list(view: CayleyGraphView | Graph, fh: IO[str]) -> int:
    count = 0
    for line in iter_edge_lines(view):
        fh.write(line + "\n")
        count += 1
    return count - 1
