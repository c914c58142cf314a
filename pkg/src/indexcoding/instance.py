"""
Index coding instances and their side-information structure.

An instance on m users is given by the interfering sets B_i; the side
information of user i is A_i = [m] \\ (B_i ∪ {i}).  Subset predicates read
the defining equalities restricted to the subset M, i.e. B_i ∩ M.

Internally user i corresponds to bit (i - 1) of an int bitmask.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence

from .errors import DuplicateIndex, IndexOutOfRange, InvalidInstance, OddPairSet


@dataclass(frozen=True)
class Instance:
    m: int
    B: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        if self.m < 0:
            raise InvalidInstance(f"negative user count {self.m}")
        if len(self.B) != self.m:
            raise InvalidInstance(f"expected {self.m} interfering sets, got {len(self.B)}")
        for i, Bi in enumerate(self.B, start=1):
            for j in Bi:
                if not 1 <= j <= self.m:
                    raise InvalidInstance(f"B_{i} contains {j}, outside [1, {self.m}]")
            if i in Bi:
                raise InvalidInstance(f"user {i} lists its own message in B_{i}")

    @classmethod
    def from_sets(cls, sets: Sequence[Iterable[int]]) -> "Instance":
        return cls(len(sets), tuple(frozenset(int(j) for j in s) for s in sets))

    def interfering(self, i: int) -> frozenset[int]:
        self._check_user(i)
        return self.B[i - 1]

    def side_info(self, i: int) -> frozenset[int]:
        """A_i = [m] minus B_i minus {i}."""
        self._check_user(i)
        return self._side_sets[i - 1]

    @cached_property
    def _side_sets(self) -> tuple[frozenset[int], ...]:
        every = frozenset(range(1, self.m + 1))
        return tuple(every - Bi - {i} for i, Bi in enumerate(self.B, start=1))

    def _check_user(self, i: int) -> None:
        if not 1 <= i <= self.m:
            raise IndexOutOfRange(f"user {i} outside [1, {self.m}]")

    def check_subset(self, M: Iterable[int]) -> frozenset[int]:
        M = frozenset(M)
        for i in M:
            self._check_user(i)
        return M

    # -- bitmask views --------------------------------------------------------

    def b_masks(self) -> list[int]:
        return [sum(1 << (j - 1) for j in Bi) for Bi in self.B]

    def knows_masks(self) -> list[int]:
        full = (1 << self.m) - 1
        return [full & ~b & ~(1 << k) for k, b in enumerate(self.b_masks())]

    # -- JSON -------------------------------------------------------------------

    def to_json(self) -> dict:
        return {"m": self.m, "B": [sorted(Bi) for Bi in self.B]}

    @classmethod
    def from_json(cls, obj: dict) -> "Instance":
        m = int(obj["m"])
        sets = obj["B"]
        if len(sets) != m:
            raise InvalidInstance(f"expected {m} interfering sets, got {len(sets)}")
        return cls.from_sets(sets)


def _bits(mask: int) -> list[int]:
    out = []
    k = 0
    while mask:
        if mask & 1:
            out.append(k)
        mask >>= 1
        k += 1
    return out


def _mask(M: Iterable[int]) -> int:
    return sum(1 << (i - 1) for i in M)


# ---------------------------------------------------------------------------
# Subset predicates
# ---------------------------------------------------------------------------


def is_independent_set(I: Instance, M: Iterable[int]) -> bool:
    M = I.check_subset(M)
    return all(I.B[i - 1] & M == M - {i} for i in M)


def _ordered(I: Instance, M: Sequence[int]) -> list[int]:
    M = [int(i) for i in M]
    if len(set(M)) != len(M):
        raise DuplicateIndex(f"repeated user in {M}")
    I.check_subset(M)
    return M


def _cycle_matches(I: Instance, order: Sequence[int]) -> bool:
    Ms = set(order)
    k = len(order)
    return all(
        I.B[order[j] - 1] & Ms == Ms - {order[j], order[(j + 1) % k]} for j in range(k)
    )


def is_minimal_cyclic(I: Instance, M: Sequence[int]) -> bool:
    """Check the cyclic pattern B_{i_j} ∩ M = M minus {i_j, i_{j+1}}.

    The cycle is accepted in either orientation of the given order.
    """
    order = _ordered(I, M)
    if len(order) < 2:
        return False
    return _cycle_matches(I, order) or _cycle_matches(I, order[::-1])


def minimal_cyclic_order(I: Instance, M: Iterable[int]) -> Optional[list[int]]:
    """Set-level variant: find a cyclic order of M making it minimal cyclic.

    Each user must know exactly one other member of M; following those
    successors must visit all of M in a single cycle.
    """
    Ms = I.check_subset(M)
    if len(Ms) < 2:
        return None
    succ = {}
    for i in Ms:
        known = Ms - I.B[i - 1] - {i}
        if len(known) != 1:
            return None
        succ[i] = next(iter(known))
    start = min(Ms)
    order = [start]
    nxt = succ[start]
    while nxt != start:
        if nxt in order:
            return None
        order.append(nxt)
        nxt = succ[nxt]
    if len(order) != len(Ms):
        return None
    return order


def peel_order(I: Instance, M: Iterable[int]) -> Optional[list[int]]:
    """Peel M by repeatedly removing the lowest l with M minus {l} ⊆ B_l.

    Returns the removal order, or None if some non-empty remainder has no
    such l (the set is not acyclic).
    """
    rest = set(I.check_subset(M))
    order: list[int] = []
    while rest:
        for l in sorted(rest):
            if rest - {l} <= I.B[l - 1]:
                order.append(l)
                rest.remove(l)
                break
        else:
            return None
    return order


def is_acyclic_set(I: Instance, M: Iterable[int]) -> bool:
    return peel_order(I, M) is not None


def is_quasi_minimal_cyclic(I: Instance, pairs: Sequence[Sequence[int]]) -> bool:
    """Paired-cycle pattern: members of pair j interfere with all of M except
    their own pair and pair j+1 (cyclically).

    The pair itself is treated as a unit, so whether a user knows its partner
    is not constrained.  Either orientation of the pair order is accepted.
    """
    plist = []
    for pr in pairs:
        pr = tuple(int(k) for k in pr)
        if len(pr) != 2:
            raise OddPairSet(f"{pr} is not a pair")
        plist.append(pr)
    flat = [k for pr in plist for k in pr]
    _ordered(I, flat)
    if len(plist) < 2:
        return False
    Ms = set(flat)

    def matches(seq: list[tuple[int, ...]]) -> bool:
        n = len(seq)
        for j, pr in enumerate(seq):
            own = set(pr)
            expected = Ms - own - set(seq[(j + 1) % n])
            for i in pr:
                if I.B[i - 1] & (Ms - own) != expected:
                    return False
        return True

    return matches(plist) or matches(plist[::-1])


# ---------------------------------------------------------------------------
# MAIS: branch and bound
# ---------------------------------------------------------------------------

EXACT, BOUNDED, BUDGET = "Exact", "Bounded", "Budget"


@dataclass(frozen=True)
class MaisResult:
    lo: int
    hi: int
    witness: tuple[int, ...]
    status: str
    nodes: int = 0

    @property
    def value(self):
        return self.lo if self.lo == self.hi else (self.lo, self.hi)

    def to_json(self) -> dict:
        return {
            "lo": self.lo,
            "hi": self.hi,
            "witness": list(self.witness),
            "status": self.status,
            "nodes": self.nodes,
        }


@dataclass
class _Search:
    knows: list[int]
    max_nodes: Optional[int]
    deadline: Optional[float]
    nodes: int = 0
    best: int = 0
    best_mask: int = 0
    exhausted: bool = False
    order: list[int] = field(default_factory=list)

    def creates_cycle(self, S: int, v: int) -> bool:
        """Would adding v to the acyclic set S close a directed cycle?"""
        knows = self.knows
        target = 1 << v
        frontier = knows[v] & S
        seen = frontier
        while frontier:
            nxt = 0
            for u in _bits(frontier):
                if knows[u] & target:
                    return True
                nxt |= knows[u] & S
            frontier = nxt & ~seen
            seen |= nxt
        return False

    def upper_bound(self, S: int, C: int) -> int:
        """|S| + |C| minus a greedy packing of disjoint short cycles in S ∪ C."""
        knows = self.knows
        avail = S | C
        packed = 0
        used = 0
        for v in _bits(C):
            if used >> v & 1:
                continue
            free = avail & ~used
            # 2-cycles first, then 3-cycles through v
            two = knows[v] & free & ~(1 << v)
            hit = 0
            for u in _bits(two):
                if knows[u] >> v & 1:
                    hit = (1 << v) | (1 << u)
                    break
            if not hit:
                for u in _bits(knows[v] & free & ~(1 << v)):
                    w_opts = knows[u] & free & ~(1 << v) & ~(1 << u)
                    for w in _bits(w_opts):
                        if knows[w] >> v & 1:
                            hit = (1 << v) | (1 << u) | (1 << w)
                            break
                    if hit:
                        break
            if hit:
                used |= hit
                packed += 1
        return bin(S).count("1") + bin(C).count("1") - packed

    def out_of_budget(self) -> bool:
        if self.max_nodes is not None and self.nodes >= self.max_nodes:
            return True
        if self.deadline is not None and self.nodes % 256 == 0 and time.monotonic() > self.deadline:
            return True
        return False

    def run(self, S: int, C: int, size: int) -> bool:
        """Returns False when the budget ran out."""
        self.nodes += 1
        if self.out_of_budget():
            return False
        if size > self.best:
            self.best, self.best_mask = size, S
        if not C:
            return True
        if self.upper_bound(S, C) <= self.best:
            return True
        v = next(u for u in self.order if C >> u & 1)
        rest = C & ~(1 << v)
        if not self.creates_cycle(S, v):
            if not self.run(S | (1 << v), rest, size + 1):
                return False
        return self.run(S, rest, size)


def mais(
    I: Instance,
    max_nodes: Optional[int] = 10**7,
    max_seconds: Optional[float] = 60.0,
    witness: Optional[Iterable[int]] = None,
) -> MaisResult:
    """Maximum acyclic induced subgraph of the side-information digraph.

    Branches on users in increasing index order, include before exclude, so
    the first maximum found is the lexicographically least one.  With
    ``witness`` given, only that set is checked and the result is Bounded.
    """
    knows = I.knows_masks()
    full = (1 << I.m) - 1
    s = _Search(knows, max_nodes, None if max_seconds is None else time.monotonic() + max_seconds)
    s.order = list(range(I.m))
    root_hi = s.upper_bound(0, full)

    if witness is not None:
        W = I.check_subset(witness)
        if not is_acyclic_set(I, W):
            return MaisResult(0, root_hi, (), BOUNDED, 0)
        lo = len(W)
        return MaisResult(lo, root_hi, tuple(sorted(W)), EXACT if lo == root_hi else BOUNDED, 0)

    done = s.run(0, full, 0)
    wit = tuple(k + 1 for k in _bits(s.best_mask))
    if done:
        return MaisResult(s.best, s.best, wit, EXACT, s.nodes)
    return MaisResult(s.best, max(root_hi, s.best), wit, BUDGET, s.nodes)


def mais_exhaustive(I: Instance) -> int:
    """Reference MAIS by dynamic programming over all subsets (m <= ~16).

    A set is acyclic iff it has a member knowing nothing else in the set
    and the rest is acyclic.
    """
    if I.m > 20:
        raise ValueError(f"exhaustive MAIS is exponential; m = {I.m} is too large")
    knows = I.knows_masks()
    acyclic = bytearray(1 << I.m)
    acyclic[0] = 1
    best = 0
    for S in range(1, 1 << I.m):
        rest = S
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            if not knows[v] & S and acyclic[S ^ low]:
                acyclic[S] = 1
                best = max(best, bin(S).count("1"))
                break
            rest ^= low
    return best


def random_instance(rng, m: int, density: float = 0.5) -> Instance:
    """Each j != i lands in B_i independently with probability ``density``."""
    return Instance.from_sets(
        [[j for j in range(1, m + 1) if j != i and rng.random() < density] for i in range(1, m + 1)]
    )
