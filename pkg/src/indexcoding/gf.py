"""
Exact arithmetic and linear algebra over small prime fields GF(p).

Matrices are dense, row-major tuples of Python ints in [0, p).  Everything
here is small (at most a few hundred entries), so plain integer arithmetic
beats any vectorised approach once conversion overhead is counted.

Indices exposed to users (message numbers, block numbers) are 1-based;
storage is 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .errors import (
    DimensionMismatch,
    IndexOutOfRange,
    InversionOfZero,
    NotInField,
    OddPairSet,
)

SUPPORTED_PRIMES = (2, 3, 5, 7, 11, 13)


@lru_cache(maxsize=None)
def _inverse_table(p: int) -> tuple[int, ...]:
    # index 0 holds a dummy; callers must never look it up
    return (0,) + tuple(pow(a, -1, p) for a in range(1, p))


@dataclass(frozen=True)
class FieldSpec:
    """The prime field GF(p)."""

    p: int

    def __post_init__(self) -> None:
        if self.p not in SUPPORTED_PRIMES:
            raise ValueError(
                f"p must be one of {SUPPORTED_PRIMES}, got {self.p}"
            )

    @property
    def characteristic(self) -> int:
        return self.p

    def check(self, a: int) -> int:
        if not isinstance(a, int) or isinstance(a, bool) or not 0 <= a < self.p:
            raise NotInField(f"{a!r} is not an element of GF({self.p})")
        return a

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise InversionOfZero(f"0 has no inverse in GF({self.p})")
        return _inverse_table(self.p)[a % self.p]

    def elements(self) -> range:
        return range(self.p)


def field_arith(f: FieldSpec, op: str, a: int, b: int) -> int:
    """Apply one field operation.  For ``inv`` the operand is ``b``."""
    if op == "inv":
        return f.inv(f.check(b))
    f.check(a)
    f.check(b)
    if op == "add":
        return f.add(a, b)
    if op == "sub":
        return f.sub(a, b)
    if op == "mul":
        return f.mul(a, b)
    raise ValueError(f"unknown field operation {op!r}")


@dataclass(frozen=True)
class GfMatrix:
    field: FieldSpec
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows:
            raise DimensionMismatch(
                f"expected {self.rows} rows, got {len(self.entries)}"
            )
        p = self.field.p
        for row in self.entries:
            if len(row) != self.cols:
                raise DimensionMismatch(
                    f"expected {self.cols} columns, got a row of length {len(row)}"
                )
            for e in row:
                if not 0 <= e < p:
                    raise NotInField(f"entry {e} not in GF({p})")

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_rows(
        cls, field: FieldSpec, rows: Sequence[Sequence[int]], cols: Optional[int] = None
    ) -> "GfMatrix":
        """Build from nested sequences, reducing every entry mod p."""
        p = field.p
        entries = tuple(tuple(int(e) % p for e in row) for row in rows)
        if cols is None:
            cols = len(entries[0]) if entries else 0
        return cls(field, len(entries), cols, entries)

    @classmethod
    def from_columns(
        cls, field: FieldSpec, columns: Sequence[Sequence[int]], rows: int
    ) -> "GfMatrix":
        p = field.p
        for c in columns:
            if len(c) != rows:
                raise DimensionMismatch(f"column of length {len(c)}, expected {rows}")
        entries = tuple(
            tuple(int(c[i]) % p for c in columns) for i in range(rows)
        )
        return cls(field, rows, len(columns), entries)

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> "GfMatrix":
        return cls(field, rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "GfMatrix":
        return cls(
            field,
            n,
            n,
            tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)),
        )

    # -- views ------------------------------------------------------------

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.entries)

    def select_columns(self, idx: Iterable[int]) -> "GfMatrix":
        idx = list(idx)
        for j in idx:
            if not 0 <= j < self.cols:
                raise IndexOutOfRange(f"column {j} outside [0, {self.cols})")
        return GfMatrix(
            self.field,
            self.rows,
            len(idx),
            tuple(tuple(row[j] for j in idx) for row in self.entries),
        )

    def transpose(self) -> "GfMatrix":
        return GfMatrix(
            self.field,
            self.cols,
            self.rows,
            tuple(tuple(self.entries[i][j] for i in range(self.rows)) for j in range(self.cols)),
        )

    def hstack(self, other: "GfMatrix") -> "GfMatrix":
        _same_field(self, other)
        if self.rows != other.rows:
            raise DimensionMismatch(f"row counts differ: {self.rows} vs {other.rows}")
        return GfMatrix(
            self.field,
            self.rows,
            self.cols + other.cols,
            tuple(a + b for a, b in zip(self.entries, other.entries)),
        )

    def with_field(self, field: FieldSpec) -> "GfMatrix":
        """Reinterpret integer entries in another prime field (reducing mod p)."""
        return GfMatrix.from_rows(field, self.entries, self.cols)

    def matmul(self, other: "GfMatrix") -> "GfMatrix":
        _same_field(self, other)
        if self.cols != other.rows:
            raise DimensionMismatch(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        p = self.field.p
        ocols = [other.column(j) for j in range(other.cols)]
        return GfMatrix(
            self.field,
            self.rows,
            other.cols,
            tuple(
                tuple(sum(a * b for a, b in zip(row, col)) % p for col in ocols)
                for row in self.entries
            ),
        )

    def matvec(self, x: Sequence[int]) -> tuple[int, ...]:
        if len(x) != self.cols:
            raise DimensionMismatch(f"vector of length {len(x)}, expected {self.cols}")
        p = self.field.p
        return tuple(sum(a * b for a, b in zip(row, x)) % p for row in self.entries)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]


def _same_field(a: GfMatrix, b: GfMatrix) -> None:
    if a.field != b.field:
        raise DimensionMismatch(f"field mismatch: GF({a.field.p}) vs GF({b.field.p})")


# ---------------------------------------------------------------------------
# Elimination kernels (operate on mutable lists of rows)
# ---------------------------------------------------------------------------


def rref_rows(rows: list[list[int]], p: int, ncols: int) -> list[int]:
    """Reduce ``rows`` in place to reduced row echelon form; return pivot columns.

    Pivoting takes the first row with a nonzero entry in the current column.
    """
    inv = _inverse_table(p)
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        pr = next((k for k in range(r, nrows) if rows[k][c]), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        prow = rows[r]
        s = inv[prow[c]]
        if s != 1:
            prow = [(v * s) % p for v in prow]
            rows[r] = prow
        for k in range(nrows):
            if k != r:
                row = rows[k]
                a = row[c]
                if a:
                    rows[k] = [(v - a * w) % p for v, w in zip(row, prow)]
        pivots.append(c)
        r += 1
    return pivots


def rank_of_rows(rows: Sequence[Sequence[int]], p: int) -> int:
    """Rank of a list of equal-length integer rows over GF(p)."""
    inv = _inverse_table(p)
    work = [list(r) for r in rows if any(r)]
    if not work:
        return 0
    ncols = len(work[0])
    rank = 0
    for c in range(ncols):
        pr = next((k for k in range(rank, len(work)) if work[k][c] % p), None)
        if pr is None:
            continue
        work[rank], work[pr] = work[pr], work[rank]
        prow = work[rank]
        s = inv[prow[c] % p]
        prow = [(v * s) % p for v in prow]
        for k in range(rank + 1, len(work)):
            a = work[k][c] % p
            if a:
                work[k] = [(v - a * w) % p for v, w in zip(work[k], prow)]
        rank += 1
        if rank == len(work):
            break
    return rank


def rank_of_columns(columns: Sequence[Sequence[int]], p: int) -> int:
    """Rank of the matrix whose columns are given (column rank = row rank)."""
    return rank_of_rows(columns, p)


def rank(M: GfMatrix) -> int:
    if M.rows == 0 or M.cols == 0:
        return 0
    return rank_of_rows(M.entries, M.field.p)


def col_space_contains(A: GfMatrix, B: GfMatrix) -> bool:
    """True iff every column of B lies in the column space of A."""
    _same_field(A, B)
    if A.rows != B.rows:
        raise DimensionMismatch(f"row counts differ: {A.rows} vs {B.rows}")
    if B.cols == 0:
        return True
    return rank(A.hstack(B)) == rank(A)


def solve(A: GfMatrix, B: GfMatrix) -> Optional[GfMatrix]:
    """Return some X with A·X = B, or None when no solution exists."""
    _same_field(A, B)
    if A.rows != B.rows:
        raise DimensionMismatch(f"row counts differ: {A.rows} vs {B.rows}")
    p = A.field.p
    n = A.cols
    aug = [list(a) + list(b) for a, b in zip(A.entries, B.entries)]
    pivots = rref_rows(aug, p, n + B.cols)
    if any(c >= n for c in pivots):
        return None
    X = [[0] * B.cols for _ in range(n)]
    for r, c in enumerate(pivots):
        X[c] = aug[r][n:]
    return GfMatrix.from_rows(A.field, X, B.cols)


# ---------------------------------------------------------------------------
# Block matrices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BlockMatrix:
    """An r x (m*t) matrix whose columns are grouped into m slabs of width t."""

    inner: GfMatrix
    m: int
    t: int = 1

    def __post_init__(self) -> None:
        if self.t < 1 or self.m < 0:
            raise DimensionMismatch(f"invalid block shape m={self.m}, t={self.t}")
        if self.inner.cols != self.m * self.t:
            raise DimensionMismatch(
                f"inner matrix has {self.inner.cols} columns, expected m*t = {self.m * self.t}"
            )

    @property
    def field(self) -> FieldSpec:
        return self.inner.field

    @property
    def r(self) -> int:
        return self.inner.rows

    def with_field(self, field: FieldSpec) -> "BlockMatrix":
        return BlockMatrix(self.inner.with_field(field), self.m, self.t)

    def columns_of(self, L: Iterable[int]) -> list[int]:
        """0-based scalar column indices of the slabs in L (ascending)."""
        t = self.t
        out: list[int] = []
        for i in sorted(set(L)):
            if not 1 <= i <= self.m:
                raise IndexOutOfRange(f"block {i} outside [1, {self.m}]")
            out.extend(range((i - 1) * t, i * t))
        return out

    def select(self, L: Iterable[int]) -> GfMatrix:
        return self.inner.select_columns(self.columns_of(L))

    def rank_of(self, L: Iterable[int]) -> int:
        cols = self.columns_of(L)
        if not cols or self.r == 0:
            return 0
        ent = self.inner.entries
        return rank_of_columns([[row[j] for row in ent] for j in cols], self.field.p)

    def restrict(self, L: Iterable[int]) -> "BlockMatrix":
        """Sub-block-matrix on the blocks of L, renumbered 1..|L|."""
        L = sorted(set(L))
        return BlockMatrix(self.select(L), len(L), self.t)

    # -- JSON ---------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "p": self.field.p,
            "t": self.t,
            "m": self.m,
            "r": self.r,
            "entries": self.inner.tolist(),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "BlockMatrix":
        field = FieldSpec(int(obj["p"]))
        r, m, t = int(obj["r"]), int(obj["m"]), int(obj["t"])
        entries = obj["entries"]
        if len(entries) != r:
            raise DimensionMismatch(f"expected {r} rows, got {len(entries)}")
        for row in entries:
            for e in row:
                if not 0 <= int(e) < field.p:
                    raise NotInField(f"entry {e} not in GF({field.p})")
        inner = GfMatrix(field, r, m * t, tuple(tuple(int(e) for e in row) for row in entries))
        return cls(inner, m, t)


def block_select(H: BlockMatrix, L: Iterable[int]) -> GfMatrix:
    """The matrix H^L: slabs of L concatenated in ascending order."""
    return H.select(L)


def is_independent(H: BlockMatrix, N: Iterable[int]) -> bool:
    N = set(N)
    return H.rank_of(N) == len(N) * H.t


def is_circuit(H: BlockMatrix, N: Iterable[int]) -> bool:
    N = sorted(set(N))
    if not N:
        return False
    target = (len(N) - 1) * H.t
    if H.rank_of(N) != target:
        return False
    return all(H.rank_of([k for k in N if k != j]) == target for j in N)


def pairs_of(N: Iterable[int]) -> list[tuple[int, int]]:
    """Split a pair-set into its aligned pairs {2j-1, 2j}."""
    s = sorted(set(N))
    if len(s) % 2:
        raise OddPairSet(f"set of odd size {len(s)} cannot be split into pairs")
    out = []
    for a, b in zip(s[::2], s[1::2]):
        if a % 2 != 1 or b != a + 1:
            raise OddPairSet(f"({a}, {b}) is not an aligned pair {{2j-1, 2j}}")
        out.append((a, b))
    return out


def is_quasi_circuit(H: BlockMatrix, N: Iterable[int]) -> bool:
    """Each pair has rank 2t and deleting any one pair keeps rank (|N|-2)t = rank(H^N)."""
    pairs = pairs_of(N)
    N = [k for pr in pairs for k in pr]
    for k in N:
        if not 1 <= k <= H.m:
            raise IndexOutOfRange(f"block {k} outside [1, {H.m}]")
    if not pairs:
        return False
    t = H.t
    target = (len(N) - 2) * t
    if H.rank_of(N) != target:
        return False
    for pr in pairs:
        if H.rank_of(pr) != 2 * t:
            return False
        if H.rank_of([k for k in N if k not in pr]) != target:
            return False
    return True
