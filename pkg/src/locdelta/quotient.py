"""The binary quotient of a partial linear space with 3-point lines.

For a space (X, L) with incidence matrix N, the quotient V is F_2^X modulo
the span of the line columns of N.  A basis of the dual code (the kernel of
N transposed) provides coordinates: point x maps to column x of that basis,
written phi(x).  Lines then satisfy phi(x) + phi(y) + phi(z) = 0, and a
vector lies in the column space of N exactly when every dual basis row is
orthogonal to it.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .gf2 import BitMatrix, BitVector, kernel_basis, parity
from .spaces import PartialLinearSpace, collinearity_graph, incidence_matrix


@dataclass(frozen=True)
class QuotientData:
    space: PartialLinearSpace
    n: BitMatrix
    m: int
    dual_basis: BitMatrix
    phi: tuple[int, ...]

    def phi_vector(self, x: int) -> BitVector:
        return BitVector(self.m, self.phi[x])

    def in_column_space(self, u: int | BitVector) -> bool:
        """Membership of u (a vector over the points) in colspace(N)."""
        bits = u.bits if isinstance(u, BitVector) else u
        return all(parity(row & bits) == 0 for row in self.dual_basis.rows)


@dataclass(frozen=True)
class HyperplaneComplement:
    """A nonzero point set meeting every line in 0 or 2 points."""

    support: BitVector

    def points(self) -> tuple[int, ...]:
        return self.support.support()


def build_quotient(space: PartialLinearSpace) -> QuotientData:
    """Quotient data with deterministic coordinates.

    The coordinate order comes from kernel_basis on the transposed incidence
    matrix (free columns ascending), so repeated builds are identical.
    """
    n_mat = incidence_matrix(space)
    dual = kernel_basis(n_mat.transpose())
    m = dual.n_rows
    phi = [0] * space.n_points
    for i, row in enumerate(dual.rows):
        r = row
        while r:
            low = r & -r
            phi[low.bit_length() - 1] |= 1 << i
            r ^= low
    return QuotientData(space, n_mat, m, dual, tuple(phi))


def check_weight2(q: QuotientData) -> tuple[bool, tuple[int, int] | None]:
    """phi injective, i.e. no weight-2 vector in the column space of N."""
    seen: dict[int, int] = {}
    for x, value in enumerate(q.phi):
        if value in seen:
            return False, (seen[value], x)
        seen[value] = x
    return True, None


def check_weight3(q: QuotientData) -> tuple[bool, tuple[int, int, int] | None]:
    """The line columns are the only weight-3 vectors in the column space.

    Under check_weight2, a violation is a pair x,y whose phi-sum hits the
    image of phi at a point w with {x,y,w} not a line; pair-sum lookups in a
    hash of the phi image keep this at O(|X|^2).
    """
    image = {value: x for x, value in enumerate(q.phi)}
    cg = collinearity_graph(q.space)
    n = q.space.n_points
    phi = q.phi
    for x in range(n):
        px = phi[x]
        for y in range(x + 1, n):
            w = image.get(px ^ phi[y])
            if w is None:
                continue
            third = cg.third_point(x, y)
            if third is None or w != third:
                return False, (x, y, w)
    return True, None


def iter_dual_span(q: QuotientData):
    """All nonzero vectors of the dual code, in binary-counter order."""
    rows = q.dual_basis.rows
    m = q.m
    for k in range(1, 1 << m):
        v = 0
        kk = k
        while kk:
            low = kk & -kk
            v ^= rows[low.bit_length() - 1]
            kk ^= low
        yield v


def hyperplane_complements(q: QuotientData, limit: int = 1 << 20) -> list[HyperplaneComplement]:
    """Nonzero dual-code vectors: exactly the hyperplane complements.

    Exhaustive when 2^m <= limit, otherwise the first `limit` vectors of the
    span stream.
    """
    n_pts = q.space.n_points
    out = []
    for i, v in enumerate(iter_dual_span(q)):
        if i >= limit:
            break
        out.append(HyperplaneComplement(BitVector(n_pts, v)))
    return out


def complement_meets_lines_evenly(q: QuotientData, comp: HyperplaneComplement) -> bool:
    bits = comp.support.bits
    return all(
        (bits & sum(1 << p for p in ln)).bit_count() in (0, 2)
        for ln in q.space.lines
    )


def sufficient_condition(
    q: QuotientData, point_cap: int | None = 120
) -> tuple[bool, tuple[int, ...] | None]:
    """Hyperplane separation audit: for each point pair some complement holds
    exactly one of them, and for each pairwise-noncollinear triple some
    complement holds exactly one of the three.

    Expressed on dual coordinates: pairs need distinct phi columns; a triple
    needs a weight-1 vector in the span of its coordinate patterns.  The
    triple loop is cubic in the point count, hence the cap.
    """
    n = q.space.n_points
    if point_cap is not None and n > point_cap:
        raise ValueError(
            f"sufficient-condition audit over {n} points exceeds cap {point_cap}"
        )
    ok2, witness = check_weight2(q)
    if not ok2:
        return False, witness
    if q.m == 0:
        return False, (0, 1) if n >= 2 else (0,)
    cg = collinearity_graph(q.space)
    rows = cg.graph.bitrows()
    phi = q.phi
    m = q.m
    for x, y, z in combinations(range(n), 3):
        if (rows[x] >> y) & 1 or (rows[x] >> z) & 1 or (rows[y] >> z) & 1:
            continue
        span = {0}
        full = False
        for i in range(m):
            pat = (((phi[x] >> i) & 1) << 2) | (((phi[y] >> i) & 1) << 1) | ((phi[z] >> i) & 1)
            if pat and pat not in span:
                span |= {s ^ pat for s in span}
                if len(span) == 8:
                    full = True
                    break
        if not full and not ({1, 2, 4} & span):
            return False, (x, y, z)
    return True, None


def _first_kernel_vector(rows: list[int], width: int) -> int | None:
    """One nonzero solution alpha of <row, alpha> = 0 for all rows, if any."""
    pivot_row: dict[int, int] = {}
    for bits in rows:
        r = bits
        for c, pr in pivot_row.items():
            if (r >> c) & 1:
                r ^= pr
        if r:
            c = (r & -r).bit_length() - 1
            for pc in list(pivot_row):
                if (pivot_row[pc] >> c) & 1:
                    pivot_row[pc] ^= r
            pivot_row[c] = r
            if len(pivot_row) == width:
                return None
    free = next(f for f in range(width) if f not in pivot_row)
    v = 1 << free
    for pc, pr in pivot_row.items():
        if (pr >> free) & 1:
            v |= 1 << pc
    return v


def infinitude_witness(
    q: QuotientData, budget: int = 10**6
) -> tuple[HyperplaneComplement, HyperplaneComplement] | None:
    """Two disjoint hyperplane complements, or None within the budget.

    Candidates are the dual-code vectors in increasing weight order; for each
    candidate c a disjoint partner is decided exactly by linear algebra (a
    nonzero combination of dual rows vanishing on supp(c) exists iff the phi
    columns on supp(c) do not span F_2^m), so no pair enumeration happens.
    """
    if q.m == 0:
        return None
    if q.m > 24:
        raise ValueError(f"dual space 2^{q.m} too large to enumerate")
    span = sorted(iter_dual_span(q), key=lambda v: (v.bit_count(), v))
    dual_rows = q.dual_basis.rows
    n_pts = q.space.n_points
    for c in span[:budget]:
        cols = []
        r = c
        while r:
            low = r & -r
            cols.append(q.phi[low.bit_length() - 1])
            r ^= low
        alpha = _first_kernel_vector(cols, q.m)
        if alpha is None:
            continue
        d = 0
        a = alpha
        while a:
            low = a & -a
            d ^= dual_rows[low.bit_length() - 1]
            a ^= low
        if d == 0 or d & c:
            raise AssertionError("witness solve produced an invalid partner")
        return (
            HyperplaneComplement(BitVector(n_pts, c)),
            HyperplaneComplement(BitVector(n_pts, d)),
        )
    return None


def quotient_report(q: QuotientData, audit_sufficient: bool = False,
                    witness_budget: int = 10**6) -> dict:
    """JSON-ready summary of the quotient-level checks."""
    w2, _ = check_weight2(q)
    w3 = None
    if w2:
        w3, _ = check_weight3(q)
    suff: bool | None = None
    if audit_sufficient:
        suff, _ = sufficient_condition(q)
    witness = infinitude_witness(q, budget=witness_budget) if q.m else None
    return {
        "dim_V": q.m,
        "weight2_ok": w2,
        "weight3_ok": w3,
        "sufficient_ok": suff,
        "infinite_witness": (
            [list(witness[0].points()), list(witness[1].points())]
            if witness
            else None
        ),
    }
