"""
Matroid constraint bundles, representation checks, and a scalar
representation search over GF(p) with circuit propagation.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

from .errors import DimensionMismatch, PreconditionFailed, UnsupportedWidth
from .gf import (
    BlockMatrix,
    FieldSpec,
    GfMatrix,
    is_circuit,
    is_quasi_circuit,
    pairs_of,
    rank_of_columns,
)

FOUND, EXHAUSTED, BUDGET = "Found", "ExhaustedNone", "Budget"


@dataclass(frozen=True)
class MatroidSpec:
    n: int
    f: int
    t: int = 1
    basis_sets: tuple[frozenset[int], ...] = ()
    circuit_sets: tuple[frozenset[int], ...] = ()
    quasi_circuit_sets: tuple[frozenset[int], ...] = ()
    rank_at_least: tuple[tuple[frozenset[int], int], ...] = ()

    def __post_init__(self) -> None:
        every = list(self.basis_sets) + list(self.circuit_sets) + list(self.quasi_circuit_sets)
        every += [s for s, _ in self.rank_at_least]
        for s in every:
            for k in s:
                if not 1 <= k <= self.n:
                    raise ValueError(f"element {k} outside ground set [1, {self.n}]")
        for b in self.basis_sets:
            if len(b) != self.f:
                raise ValueError(f"basis {sorted(b)} does not have size f = {self.f}")
        for c in self.circuit_sets:
            if len(c) > self.f + 1:
                raise ValueError(f"circuit {sorted(c)} larger than f + 1")
        for q in self.quasi_circuit_sets:
            pairs_of(q)

    @classmethod
    def from_json(cls, obj: dict) -> "MatroidSpec":
        fs = lambda sets: tuple(frozenset(int(k) for k in s) for s in sets)
        return cls(
            n=int(obj["n"]),
            f=int(obj["rank"]),
            t=int(obj.get("t", 1)),
            basis_sets=fs(obj.get("basis", [])),
            circuit_sets=fs(obj.get("circuits", [])),
            quasi_circuit_sets=fs(obj.get("quasi_circuits", [])),
            rank_at_least=tuple(
                (frozenset(int(k) for k in d["set"]), int(d["min"]))
                for d in obj.get("rank_at_least", [])
            ),
        )

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "rank": self.f,
            "t": self.t,
            "basis": [sorted(s) for s in self.basis_sets],
            "circuits": [sorted(s) for s in self.circuit_sets],
            "quasi_circuits": [sorted(s) for s in self.quasi_circuit_sets],
            "rank_at_least": [{"set": sorted(s), "min": k} for s, k in self.rank_at_least],
        }


@dataclass(frozen=True)
class Violation:
    kind: str
    members: tuple[int, ...]
    detail: str

    def to_json(self) -> dict:
        return {"kind": self.kind, "set": list(self.members), "detail": self.detail}


@dataclass(frozen=True)
class RepresentationVerdict:
    violations: tuple[Violation, ...]

    @property
    def valid(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"valid": self.valid, "violations": [v.to_json() for v in self.violations]}


def _as_block(spec: MatroidSpec, H: Union[BlockMatrix, GfMatrix]) -> BlockMatrix:
    if isinstance(H, GfMatrix):
        if H.cols % spec.t:
            raise DimensionMismatch(f"{H.cols} columns is not a multiple of t = {spec.t}")
        H = BlockMatrix(H, H.cols // spec.t, spec.t)
    return H


def verify_representation(
    spec: MatroidSpec, H: Union[BlockMatrix, GfMatrix]
) -> RepresentationVerdict:
    """Check every declared constraint; collect all violations."""
    H = _as_block(spec, H)
    t = spec.t
    if H.t != t or H.r != spec.f * t or H.m != spec.n:
        raise DimensionMismatch(
            f"expected {spec.f * t} x {spec.n * t} with t = {t}, "
            f"got {H.r} x {H.m * H.t} with t = {H.t}"
        )
    out: list[Violation] = []
    for i in range(1, spec.n + 1):
        rk = H.rank_of([i])
        if rk != t:
            out.append(Violation("element-rank", (i,), f"rank {rk} != t = {t}"))
    for b in spec.basis_sets:
        rk = H.rank_of(b)
        if rk != spec.f * t:
            out.append(Violation("basis", tuple(sorted(b)), f"rank {rk} != {spec.f * t}"))
    for c in spec.circuit_sets:
        if not is_circuit(H, c):
            out.append(Violation("circuit", tuple(sorted(c)), f"rank {H.rank_of(c)}, circuit test failed"))
    for q in spec.quasi_circuit_sets:
        if not is_quasi_circuit(H, q):
            out.append(Violation("quasi-circuit", tuple(sorted(q)), f"rank {H.rank_of(q)}, quasi-circuit test failed"))
    for s, k in spec.rank_at_least:
        rk = H.rank_of(s)
        if rk < k:
            out.append(Violation("rank-at-least", tuple(sorted(s)), f"rank {rk} < {k}"))
    return RepresentationVerdict(tuple(out))


# ---------------------------------------------------------------------------
# Scalar search
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SearchOutcome:
    status: str
    witness: Optional[GfMatrix]
    nodes_explored: int
    elapsed: float = 0.0

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "witness": self.witness.tolist() if self.witness is not None else None,
            "nodes_explored": self.nodes_explored,
            "elapsed": round(self.elapsed, 6),
        }


@dataclass
class _Step:
    col: int                      # 0-based element being assigned
    others: tuple[int, ...]       # circuit members it is combined from (empty: free column)
    fixed_one: tuple[bool, ...]   # per coefficient: normalised to 1
    checks: list = field(default_factory=list)


class _UnionFind:
    def __init__(self) -> None:
        self.parent: dict = {}

    def find(self, a):
        self.parent.setdefault(a, a)
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a, b) -> None:
        self.parent[self.find(a)] = self.find(b)


def _plan(spec: MatroidSpec) -> tuple[dict[int, int], list[_Step]]:
    """Fix the first basis to the identity, then order the other columns.

    A column enters through the first declared circuit in which it is the
    only unassigned member; columns never reached that way are free.
    Coefficients are normalised to 1 along a forest of (row, column)
    scalings: one per column for its own scale, plus one per row that
    column connects to a new component (only for columns combined purely
    from identity columns, where coefficients are matrix entries).
    """
    base = sorted(spec.basis_sets[0])
    row_of = {e - 1: k for k, e in enumerate(base)}
    assigned = set(row_of)
    steps: list[_Step] = []
    uf = _UnionFind()
    progress = True
    while progress:
        progress = False
        for c in spec.circuit_sets:
            free = [e - 1 for e in c if e - 1 not in assigned]
            if len(free) != 1:
                continue
            j = free[0]
            others = tuple(sorted(e - 1 for e in c if e - 1 != j))
            fixed = [False] * len(others)
            fixed[0] = True
            if all(o in row_of for o in others):
                uf.union(("c", j), ("r", row_of[others[0]]))
                for k, o in enumerate(others[1:], start=1):
                    r = ("r", row_of[o])
                    if uf.find(r) != uf.find(("c", j)):
                        uf.union(r, ("c", j))
                        fixed[k] = True
            steps.append(_Step(j, others, tuple(fixed)))
            assigned.add(j)
            progress = True
    for j in range(spec.n):
        if j not in assigned:
            steps.append(_Step(j, (), ()))
            assigned.add(j)

    # attach each constraint to the step after which all its members are set
    position = {j: -1 for j in row_of}
    for k, s in enumerate(steps):
        position[s.col] = k
    constraints = [("basis", frozenset(e - 1 for e in b), None) for b in spec.basis_sets]
    constraints += [("circuit", frozenset(e - 1 for e in c), None) for c in spec.circuit_sets]
    constraints += [("quasi", frozenset(e - 1 for e in q), None) for q in spec.quasi_circuit_sets]
    constraints += [("atleast", frozenset(e - 1 for e in s), k) for s, k in spec.rank_at_least]
    for con in constraints:
        last = max(position[e] for e in con[1])
        if last >= 0:
            steps[last].checks.append(con)
    return row_of, steps


def _check(kind: str, members: frozenset[int], arg, cols: list, p: int, f: int) -> bool:
    sel = [cols[e] for e in sorted(members)]
    if kind == "basis":
        return rank_of_columns(sel, p) == f
    if kind == "atleast":
        return rank_of_columns(sel, p) >= arg
    if kind == "circuit":
        target = len(sel) - 1
        if rank_of_columns(sel, p) != target:
            return False
        return all(rank_of_columns(sel[:k] + sel[k + 1:], p) == target for k in range(len(sel)))
    if kind == "quasi":
        order = sorted(members)
        target = len(order) - 2
        if rank_of_columns(sel, p) != target:
            return False
        for k in range(0, len(order), 2):
            if rank_of_columns(sel[k:k + 2], p) != 2:
                return False
            if rank_of_columns(sel[:k] + sel[k + 2:], p) != target:
                return False
        return True
    raise ValueError(kind)  # pragma: no cover


def _projective_points(p: int, dim: int):
    """Nonzero vectors whose first nonzero coordinate is 1."""
    for lead in range(dim):
        for tail in itertools.product(range(p), repeat=dim - lead - 1):
            yield (0,) * lead + (1,) + tail


def search_scalar_representation(
    spec: MatroidSpec,
    p: int,
    max_nodes: Optional[int] = 10**8,
    max_seconds: Optional[float] = 300.0,
) -> SearchOutcome:
    """Depth-first search for a scalar (t = 1) representation over GF(p)."""
    if spec.t != 1:
        raise UnsupportedWidth(f"scalar search needs t = 1, spec has t = {spec.t}")
    if not spec.basis_sets:
        raise ValueError("search needs at least one basis set to normalise")
    field_ = FieldSpec(p)
    f = spec.f
    row_of, steps = _plan(spec)
    start = time.monotonic()
    deadline = None if max_seconds is None else start + max_seconds
    cols: list = [None] * spec.n
    for j, r in row_of.items():
        cols[j] = tuple(1 if k == r else 0 for k in range(f))
    nonzero = range(1, p)
    state = {"nodes": 0, "budget": False}

    def options(step: _Step):
        if not step.others:
            yield from _projective_points(p, f)
            return
        ranges = [(1,) if fx else nonzero for fx in step.fixed_one]
        srcs = [cols[o] for o in step.others]
        for coeffs in itertools.product(*ranges):
            yield tuple(
                sum(c * v[r] for c, v in zip(coeffs, srcs)) % p for r in range(f)
            )

    def dfs(k: int) -> bool:
        if k == len(steps):
            H = GfMatrix.from_columns(field_, cols, f)
            return verify_representation(spec, BlockMatrix(H, spec.n, 1)).valid
        step = steps[k]
        for vec in options(step):
            state["nodes"] += 1
            if max_nodes is not None and state["nodes"] > max_nodes:
                state["budget"] = True
                return False
            if deadline is not None and state["nodes"] % 1024 == 0 and time.monotonic() > deadline:
                state["budget"] = True
                return False
            if not any(vec):
                continue
            cols[step.col] = vec
            if all(_check(kind, mem, arg, cols, p, f) for kind, mem, arg in step.checks):
                if dfs(k + 1):
                    return True
                if state["budget"]:
                    return False
        cols[step.col] = None
        return False

    found = dfs(0)
    elapsed = time.monotonic() - start
    if found:
        return SearchOutcome(FOUND, GfMatrix.from_columns(field_, cols, f), state["nodes"], elapsed)
    if state["budget"]:
        return SearchOutcome(BUDGET, None, state["nodes"], elapsed)
    return SearchOutcome(EXHAUSTED, None, state["nodes"], elapsed)


def circuit_coefficients(H: GfMatrix, circuit: Iterable[int]) -> dict[int, list[int]]:
    """For each j in the circuit, coefficients expressing column j over the rest."""
    from .gf import solve

    members = sorted(circuit)
    out = {}
    for j in members:
        rest = [k for k in members if k != j]
        A = H.select_columns([k - 1 for k in rest])
        b = H.select_columns([j - 1])
        X = solve(A, b)
        out[j] = None if X is None else [row[0] for row in X.entries]
    return out


# ---------------------------------------------------------------------------
# The characteristic-3 obstruction for the paired matroid
# ---------------------------------------------------------------------------

N3_BLOCK = frozenset(range(9, 17))


@dataclass(frozen=True)
class ObstructionVerdict:
    rank_9_16: int
    violated: bool

    def to_json(self) -> dict:
        return {
            "rank_9_16": self.rank_9_16,
            "required_min": 7,
            "rank_at_least_violated": self.violated,
        }


def _n3_spec() -> MatroidSpec:
    from .fixtures import fixture

    return fixture("N3")


def check_char3_obstruction_n3(H: Union[GfMatrix, BlockMatrix]) -> ObstructionVerdict:
    """For an 8 x 18 GF(3) matrix meeting the basis and quasi-circuit
    constraints, report rank(cols 9..16); it is never above 6."""
    if isinstance(H, BlockMatrix):
        H = H.inner
    if H.field.p != 3:
        raise PreconditionFailed(f"matrix is over GF({H.field.p}), expected GF(3)")
    if (H.rows, H.cols) != (8, 18):
        raise PreconditionFailed(f"expected 8 x 18, got {H.rows} x {H.cols}")
    spec = _n3_spec()
    B = BlockMatrix(H, 18, 1)
    problems = [
        v for v in verify_representation(spec, B).violations if v.kind != "rank-at-least"
    ]
    if problems:
        raise PreconditionFailed(
            "not a basis/quasi-circuit match: " + "; ".join(f"{v.kind} {list(v.members)}" for v in problems)
        )
    rk = B.rank_of(N3_BLOCK)
    return ObstructionVerdict(rk, rk < 7)


# 2x2 helpers over GF(3) for the candidate generator
def _m2(a, b, p=3):
    return (
        ((a[0][0] * b[0][0] + a[0][1] * b[1][0]) % p, (a[0][0] * b[0][1] + a[0][1] * b[1][1]) % p),
        ((a[1][0] * b[0][0] + a[1][1] * b[1][0]) % p, (a[1][0] * b[0][1] + a[1][1] * b[1][1]) % p),
    )


def _inv2(a, p=3):
    det = (a[0][0] * a[1][1] - a[0][1] * a[1][0]) % p
    d = pow(det, -1, p)
    return ((a[1][1] * d % p, -a[0][1] * d % p), (-a[1][0] * d % p, a[0][0] * d % p))


def _random_gl2(rng: random.Random, p=3):
    while True:
        a = ((rng.randrange(p), rng.randrange(p)), (rng.randrange(p), rng.randrange(p)))
        if (a[0][0] * a[1][1] - a[0][1] * a[1][0]) % p:
            return a


def random_n3_candidate(rng: random.Random, mix_rows: bool = True) -> GfMatrix:
    """A random 8 x 18 GF(3) matrix meeting the N3 basis and quasi-circuits.

    With the basis at the identity, pair columns 9..16 are block columns of
    invertible 2x2 blocks, and pair 17,18 must be a combination of each of
    the four (basis pair, derived pair) spans.  Writing A_{k,r} for the block
    of derived pair k in block-row r and Y for the coefficient on pair 9,10,
    those four memberships become one chain of equalities per block-row.
    Eight blocks are drawn freely and the rest solved from the chains, so
    every draw is consistent.  Finally a random invertible row operation
    hides the normal form.
    """
    g = lambda: _random_gl2(rng)
    Y, A51, A52, A53 = g(), g(), g(), g()
    A61, A71, A64, N98 = g(), g(), g(), g()
    R1 = _m2(A51, Y)
    N96 = _m2(_inv2(A61), R1)
    N97 = _m2(_inv2(A71), R1)
    R2 = _m2(A52, Y)
    A62 = _m2(R2, _inv2(N96))
    A82 = _m2(R2, _inv2(N98))
    R3 = _m2(A53, Y)
    A73 = _m2(R3, _inv2(N97))
    A83 = _m2(R3, _inv2(N98))
    R4 = _m2(A64, N96)
    A74 = _m2(R4, _inv2(N97))
    A84 = _m2(R4, _inv2(N98))
    Z = ((0, 0), (0, 0))
    I2 = ((1, 0), (0, 1))
    block_cols = [
        [I2, Z, Z, Z], [Z, I2, Z, Z], [Z, Z, I2, Z], [Z, Z, Z, I2],
        [A51, A52, A53, Z], [A61, A62, Z, A64], [A71, Z, A73, A74], [Z, A82, A83, A84],
        [R1, R2, R3, R4],
    ]
    rows = [[0] * 18 for _ in range(8)]
    for bc, blocks in enumerate(block_cols):
        for br, blk in enumerate(blocks):
            for a in range(2):
                for b in range(2):
                    rows[2 * br + a][2 * bc + b] = blk[a][b]
    F3 = FieldSpec(3)
    H = GfMatrix.from_rows(F3, rows, 18)
    if mix_rows:
        while True:
            T = GfMatrix.from_rows(F3, [[rng.randrange(3) for _ in range(8)] for _ in range(8)], 8)
            if rank_of_columns(T.entries, 3) == 8:
                break
        H = T.matmul(H)
    return H
