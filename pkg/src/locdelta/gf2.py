"""Bit-packed linear algebra over GF(2).

Vectors and matrices keep their entries in Python integers, one bit per
coordinate (bit i = coordinate i).  XOR is vector addition and AND plus
popcount gives inner products, so row operations run word-at-a-time while
values stay immutable and hashable.
"""

from __future__ import annotations

from bisect import insort
from typing import Iterable, NamedTuple


def parity(x: int) -> int:
    """Parity (mod-2 popcount) of a nonnegative int."""
    return x.bit_count() & 1


class BitVector:
    """Immutable GF(2) vector of fixed length."""

    __slots__ = ("length", "bits")

    def __init__(self, length: int, bits: int = 0) -> None:
        if length < 0:
            raise ValueError("length must be nonnegative")
        self.length = length
        self.bits = bits & ((1 << length) - 1)

    @classmethod
    def from_support(cls, length: int, support: Iterable[int]) -> "BitVector":
        bits = 0
        for i in support:
            if not 0 <= i < length:
                raise ValueError(f"index {i} out of range for length {length}")
            bits |= 1 << i
        return cls(length, bits)

    def bit(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise IndexError(i)
        return (self.bits >> i) & 1

    def weight(self) -> int:
        return self.bits.bit_count()

    def support(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.length) if (self.bits >> i) & 1)

    def is_zero(self) -> bool:
        return self.bits == 0

    def dot(self, other: "BitVector") -> int:
        self._check_length(other)
        return parity(self.bits & other.bits)

    def to01(self) -> str:
        return "".join(str((self.bits >> i) & 1) for i in range(self.length))

    def _check_length(self, other: "BitVector") -> None:
        if self.length != other.length:
            raise ValueError(f"length mismatch: {self.length} vs {other.length}")

    def __xor__(self, other: "BitVector") -> "BitVector":
        self._check_length(other)
        return BitVector(self.length, self.bits ^ other.bits)

    def __and__(self, other: "BitVector") -> "BitVector":
        self._check_length(other)
        return BitVector(self.length, self.bits & other.bits)

    def __len__(self) -> int:
        return self.length

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, BitVector)
            and self.length == other.length
            and self.bits == other.bits
        )

    def __hash__(self) -> int:
        return hash((self.length, self.bits))

    def __repr__(self) -> str:
        return f"BitVector({self.length}, 0b{self.to01()[::-1] or '0'})"


class BitMatrix:
    """Immutable GF(2) matrix stored as packed rows."""

    __slots__ = ("n_rows", "n_cols", "rows")

    def __init__(self, n_rows: int, n_cols: int, rows: Iterable[int]) -> None:
        mask = (1 << n_cols) - 1
        self.n_rows = n_rows
        self.n_cols = n_cols
        self.rows = tuple(r & mask for r in rows)
        if len(self.rows) != n_rows:
            raise ValueError(f"expected {n_rows} rows, got {len(self.rows)}")

    @classmethod
    def zeros(cls, n_rows: int, n_cols: int) -> "BitMatrix":
        return cls(n_rows, n_cols, [0] * n_rows)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, n, [1 << i for i in range(n)])

    @classmethod
    def from_bitvectors(cls, vectors: Iterable[BitVector]) -> "BitMatrix":
        vecs = list(vectors)
        if not vecs:
            raise ValueError("cannot infer width from an empty row list")
        width = vecs[0].length
        for v in vecs:
            if v.length != width:
                raise ValueError("rows have mixed lengths")
        return cls(len(vecs), width, [v.bits for v in vecs])

    @classmethod
    def from_lists(cls, entries: Iterable[Iterable[int]]) -> "BitMatrix":
        rows = []
        width = None
        for entry in entries:
            entry = list(entry)
            if width is None:
                width = len(entry)
            elif len(entry) != width:
                raise ValueError("rows have mixed lengths")
            rows.append(sum((b & 1) << i for i, b in enumerate(entry)))
        return cls(len(rows), width or 0, rows)

    def row(self, i: int) -> BitVector:
        return BitVector(self.n_cols, self.rows[i])

    def column(self, j: int) -> BitVector:
        if not 0 <= j < self.n_cols:
            raise IndexError(j)
        bits = 0
        for i, r in enumerate(self.rows):
            bits |= ((r >> j) & 1) << i
        return BitVector(self.n_rows, bits)

    def transpose(self) -> "BitMatrix":
        cols = [0] * self.n_cols
        for i, r in enumerate(self.rows):
            while r:
                low = r & -r
                cols[low.bit_length() - 1] |= 1 << i
                r ^= low
        return BitMatrix(self.n_cols, self.n_rows, cols)

    def matvec(self, v: BitVector) -> BitVector:
        """Matrix-vector product; v has one bit per column."""
        if v.length != self.n_cols:
            raise ValueError(f"length mismatch: {v.length} vs {self.n_cols} columns")
        bits = 0
        for i, r in enumerate(self.rows):
            bits |= parity(r & v.bits) << i
        return BitVector(self.n_rows, bits)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, BitMatrix)
            and self.n_rows == other.n_rows
            and self.n_cols == other.n_cols
            and self.rows == other.rows
        )

    def __hash__(self) -> int:
        return hash((self.n_rows, self.n_cols, self.rows))

    def __repr__(self) -> str:
        return f"BitMatrix({self.n_rows}x{self.n_cols})"


class Rref(NamedTuple):
    """Reduced row echelon form plus its pivot-column list."""

    matrix: BitMatrix
    pivots: tuple[int, ...]


def rref(m: BitMatrix) -> Rref:
    """Reduced row echelon form over GF(2).

    Pivots are chosen at the lowest set bit, rows come out sorted by pivot
    column, and every pivot column is cleared in all other rows, so the
    result is canonical for the row space.
    """
    pivot_row: dict[int, int] = {}
    pivot_cols: list[int] = []
    for bits in m.rows:
        r = bits
        for c in pivot_cols:
            if (r >> c) & 1:
                r ^= pivot_row[c]
        if r == 0:
            continue
        c = (r & -r).bit_length() - 1
        for pc in pivot_cols:
            if (pivot_row[pc] >> c) & 1:
                pivot_row[pc] ^= r
        pivot_row[c] = r
        insort(pivot_cols, c)
    rows = [pivot_row[c] for c in pivot_cols]
    return Rref(BitMatrix(len(rows), m.n_cols, rows), tuple(pivot_cols))


def rank(m: BitMatrix) -> int:
    """Rank over GF(2)."""
    return len(rref(m).pivots)


def kernel_basis(m: BitMatrix) -> BitMatrix:
    """Basis of the null space {v : m @ v = 0}, one row per free column.

    Rows are emitted in ascending free-column order: row for free column f
    has bit f set plus, for each pivot p, the entry of the reduced pivot
    row at column f.
    """
    rr = rref(m)
    in_pivots = set(rr.pivots)
    rows_out = []
    for f in range(m.n_cols):
        if f in in_pivots:
            continue
        v = 1 << f
        for prow, pcol in zip(rr.matrix.rows, rr.pivots):
            if (prow >> f) & 1:
                v |= 1 << pcol
        rows_out.append(v)
    return BitMatrix(len(rows_out), m.n_cols, rows_out)


def in_row_space(rr: Rref, v: BitVector) -> bool:
    """Membership of v in the row space captured by a reduced echelon form.

    Runs one XOR per pivot whose column is set in the running remainder,
    so the cost is O(rank) word operations.
    """
    if v.length != rr.matrix.n_cols:
        raise ValueError(f"length mismatch: {v.length} vs {rr.matrix.n_cols}")
    w = v.bits
    for prow, pcol in zip(rr.matrix.rows, rr.pivots):
        if (w >> pcol) & 1:
            w ^= prow
    return w == 0
