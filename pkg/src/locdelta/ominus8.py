"""The graph on the elliptic lines of an 8-dimensional binary quadratic
space of minus type, adjacent when orthogonal.

The form is three hyperbolic pairs plus an anisotropic norm form on the last
two coordinates: Q(x) = x0x1 + x2x3 + x4x5 + x6 + x6x7 + x7.  Any minus-type
form would do; this one is certified by its singular-point count (119).  An
elliptic line is a projective line all of whose three nonzero vectors are
nonsingular; there are 1632 of them and the orthogonality graph is regular
of degree 56.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .analysis import Graph, QuotientDiagram, equitable_refinement, isomorphic
from .gf2 import parity
from .kneser import kneser

DIM = 8
_PAIR_SWAP_MASK_LOW = 0b01010101
_PAIR_SWAP_MASK_HIGH = 0b10101010


def quad_form(v: int) -> int:
    """Q(x) = x0x1 + x2x3 + x4x5 + x6 + x6x7 + x7 over GF(2)."""
    acc = 0
    for i in (0, 2, 4):
        acc ^= (v >> i) & (v >> (i + 1)) & 1
    x6 = (v >> 6) & 1
    x7 = (v >> 7) & 1
    return acc ^ x6 ^ (x6 & x7) ^ x7


def _swap_pairs(v: int) -> int:
    return ((v & _PAIR_SWAP_MASK_LOW) << 1) | ((v & _PAIR_SWAP_MASK_HIGH) >> 1)


def bilinear(u: int, v: int) -> int:
    """The polarization B(u,v) = Q(u+v) + Q(u) + Q(v)."""
    return parity(u & _swap_pairs(v))


def singular_vectors() -> list[int]:
    return [v for v in range(1, 256) if quad_form(v) == 0]


def all_projective_lines() -> int:
    """Count of all projective lines of the 8-dimensional binary space."""
    count = 0
    for a in range(1, 256):
        for b in range(a + 1, 256):
            if a ^ b > b:
                count += 1
    return count


EllipticLine = tuple[int, int, int]


def enumerate_elliptic_lines() -> list[EllipticLine]:
    """All projective lines with three nonsingular nonzero vectors, sorted."""
    nonsingular = [v for v in range(1, 256) if quad_form(v)]
    ns_set = set(nonsingular)
    lines = []
    for a in nonsingular:
        for b in nonsingular:
            if b <= a:
                continue
            c = a ^ b
            if c > b and c in ns_set:
                lines.append((a, b, c))
    lines.sort()
    return lines


def lines_orthogonal(l1: EllipticLine, l2: EllipticLine) -> bool:
    """B vanishes on all nine vector pairs; by bilinearity the four basis
    pairs suffice."""
    a, b, _ = l1
    c, d, _ = l2
    return (
        bilinear(a, c) == 0
        and bilinear(a, d) == 0
        and bilinear(b, c) == 0
        and bilinear(b, d) == 0
    )


def lines_orthogonal_all_pairs(l1: EllipticLine, l2: EllipticLine) -> bool:
    return all(bilinear(u, v) == 0 for u in l1 for v in l2)


@dataclass(frozen=True)
class EllipticGraph:
    lines: tuple[EllipticLine, ...]
    graph: Graph


def elliptic_graph() -> EllipticGraph:
    """Vertices the elliptic lines, edges the orthogonal distinct pairs."""
    lines = enumerate_elliptic_lines()
    arr = np.array(lines, dtype=np.int64)
    pop8 = np.array([bin(i).count("1") & 1 for i in range(256)], dtype=np.uint8)
    swap = np.array([_swap_pairs(v) for v in range(256)], dtype=np.int64)

    def bmat(u: np.ndarray, v: np.ndarray) -> np.ndarray:
        return pop8[u[:, None] & swap[v][None, :]]

    a, b = arr[:, 0], arr[:, 1]
    ortho = (bmat(a, a) | bmat(a, b) | bmat(b, a) | bmat(b, b)) == 0
    np.fill_diagonal(ortho, False)
    iu, iv = np.nonzero(np.triu(ortho))
    g = Graph(len(lines), list(zip(iu.tolist(), iv.tolist())))
    return EllipticGraph(tuple(lines), g)


def distribution_diagram(eg: EllipticGraph | None = None) -> QuotientDiagram:
    if eg is None:
        eg = elliptic_graph()
    return equitable_refinement(eg.graph, seed=0)


def _audit_chunk(args: tuple[list[tuple[int, ...]], list[tuple[int, ...]], list[int]]) -> int | None:
    """Worker: returns the first failing vertex in the chunk, else None."""
    adj, k83_adj, chunk = args
    g = Graph.from_adjacency(adj)
    k83 = Graph.from_adjacency(k83_adj)
    for v in chunk:
        nbrs = list(g.neighbors(v))
        if len(nbrs) != k83.n:
            return v
        local = g.induced(nbrs)
        if isomorphic(local, k83) is None:
            return v
    return None


def verify_locally_k83(
    eg: EllipticGraph | None = None,
    sample: int | None = None,
    jobs: int = 1,
    progress=None,
) -> tuple[bool, int | None]:
    """Audit that neighborhoods induce K(8,3); full sweep by default.

    sample=N restricts to the first N vertices (the graph is not assumed
    vertex-transitive, so the default checks all 1632).  jobs > 1 spreads the
    per-vertex isomorphism checks over processes; chunks are collected in
    vertex order so the failing vertex, if any, is deterministic.
    """
    if eg is None:
        eg = elliptic_graph()
    g = eg.graph
    k83 = kneser(8, 3).graph
    vertices = list(range(g.n if sample is None else min(sample, g.n)))
    if jobs <= 1:
        for v in vertices:
            nbrs = list(g.neighbors(v))
            if len(nbrs) != k83.n:
                return False, v
            if isomorphic(g.induced(nbrs), k83) is None:
                return False, v
            if progress is not None and (v + 1) % 200 == 0:
                progress(f"local audit: {v + 1}/{len(vertices)} neighborhoods verified")
        return True, None
    chunks = [vertices[i::jobs] for i in range(jobs)]
    adj = [list(g.neighbors(v)) for v in range(g.n)]
    k83_adj = [list(k83.neighbors(v)) for v in range(k83.n)]
    failures = []
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for res in pool.map(_audit_chunk, [(adj, k83_adj, ch) for ch in chunks]):
            if res is not None:
                failures.append(res)
    if failures:
        return False, min(failures)
    return True, None


def o8_report(full_audit: bool = True, jobs: int = 1, progress=None) -> dict:
    eg = elliptic_graph()
    diag = distribution_diagram(eg)
    degrees = {eg.graph.degree(v) for v in range(eg.graph.n)}
    ok, failed = verify_locally_k83(
        eg, sample=None if full_audit else 64, jobs=jobs, progress=progress
    )
    return {
        "n_singular": len(singular_vectors()),
        "n_elliptic_lines": len(eg.lines),
        "regular_degree": degrees.pop() if len(degrees) == 1 else None,
        "locally_k83": ok,
        "failed_vertex": failed,
        "full_audit": full_audit,
        "diagram": diag.to_json_dict(),
    }
