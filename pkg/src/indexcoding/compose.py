"""
No-way and two-way connections of instances, and the two combined GF(3)
codes built from the H_fig1 linear code and the I3 nonlinear code.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Mapping, Sequence

from .fixtures import fixture
from .gf import FieldSpec
from .instance import Instance
from .lincode import LinearCode, all_decoders, decode_user, encode
from .nlcode import decode_i3, encode_i3, encode_symbol, symbol_support, symbols_read

NOWAY, TWOWAY = "noway", "twoway"


def _shift(s, k: int) -> frozenset[int]:
    return frozenset(j + k for j in s)


def no_way(a: Instance, b: Instance) -> Instance:
    """Every user of one part has the whole other part as interference."""
    ma, m = a.m, a.m + b.m
    tail = frozenset(range(ma + 1, m + 1))
    head = frozenset(range(1, ma + 1))
    return Instance(m, tuple(Bi | tail for Bi in a.B) + tuple(_shift(Bi, ma) | head for Bi in b.B))


def two_way(a: Instance, b: Instance) -> Instance:
    """Every user of one part knows the whole other part."""
    return Instance(a.m + b.m, tuple(a.B) + tuple(_shift(Bi, a.m) for Bi in b.B))


@dataclass(frozen=True)
class Composition:
    parts: tuple[tuple[Instance, int], ...]
    modes: tuple[str, ...]
    result: Instance


def compose(parts: Sequence[Instance], modes: Sequence[str]) -> Composition:
    """Left-fold ``parts`` with one connection mode per junction."""
    if len(modes) != max(len(parts) - 1, 0):
        raise ValueError(f"{len(parts)} parts need {len(parts) - 1} modes, got {len(modes)}")
    if not parts:
        return Composition((), (), Instance(0, ()))
    acc = parts[0]
    placed = [(parts[0], 0)]
    for part, mode in zip(parts[1:], modes):
        placed.append((part, acc.m))
        if mode == NOWAY:
            acc = no_way(acc, part)
        elif mode == TWOWAY:
            acc = two_way(acc, part)
        else:
            raise ValueError(f"unknown connection mode {mode!r}")
    return Composition(tuple(placed), tuple(modes), acc)


def instance_87() -> Instance:
    return no_way(fixture("I1"), fixture("I3"))


def instance_91() -> Instance:
    return two_way(no_way(fixture("I1"), fixture("I_a")), fixture("I3"))


# ---------------------------------------------------------------------------
# Combined codes over GF(3)
# ---------------------------------------------------------------------------

M1, MA, M3 = 29, 4, 58


@lru_cache(maxsize=1)
def fixture_I1() -> Instance:
    return fixture("I1")


@lru_cache(maxsize=1)
def _fig1_code() -> tuple[LinearCode, dict]:
    code = LinearCode(fixture("H_fig1").with_field(FieldSpec(3)))
    return code, all_decoders(code, fixture_I1())


class _Shifted(Mapping[int, object]):
    """Present side information of a sub-instance under local numbering."""

    def __init__(self, side: Mapping[int, int], offset: int, wrap: bool = False):
        self._side, self._off, self._wrap = side, offset, wrap

    def __getitem__(self, k: int):
        v = self._side[k + self._off]
        return (v,) if self._wrap else v

    def __iter__(self) -> Iterator[int]:
        return (k - self._off for k in self._side)

    def gather(self, indices: Sequence[int]) -> list:
        off = self._off
        shifted = [k + off for k in indices]
        if hasattr(self._side, "gather"):
            vals = self._side.gather(shifted)
        else:
            vals = [self._side[k] for k in shifted]
        return [(v,) for v in vals] if self._wrap else vals

    def __len__(self) -> int:
        return len(self._side)


def _fig1_symbols(x1: Sequence[int]) -> tuple[int, ...]:
    code, _ = _fig1_code()
    return encode(code, x1)


def _fig1_decode(i: int, y: Sequence[int], side: Mapping[int, int]) -> int:
    code, decoders = _fig1_code()
    return decode_user(code, fixture_I1(), i, y, _Shifted(side, 0, wrap=True), decoders[i])[0]


def _known_block(side: Mapping[int, int], lo: int, hi: int) -> list[int]:
    idx = range(lo, hi + 1)
    if hasattr(side, "gather"):
        return [int(v) for v in side.gather(idx)]
    return [int(side[k]) for k in idx]


def combined_code_87(x: Sequence[int]) -> tuple[int, ...]:
    """Twelve symbols: H_fig1 on x_1..x_29, then the I3 code on x_30..x_87."""
    if len(x) != M1 + M3:
        raise ValueError(f"expected {M1 + M3} messages, got {len(x)}")
    x = [int(v) % 3 for v in x]
    return _fig1_symbols(x[:M1]) + encode_i3(x[M1:])


def decode_87(i: int, w: Sequence[int], side: Mapping[int, int]) -> int:
    """User i of the 87-user instance: each part ignores the other's symbols."""
    if 1 <= i <= M1:
        return _fig1_decode(i, w[:4], side)
    if M1 < i <= M1 + M3:
        return decode_i3(i - M1, w[4:], _Shifted(side, M1))
    raise IndexError(f"user {i} outside [1, {M1 + M3}]")


def combined_code_91(x: Sequence[int]) -> tuple[int, ...]:
    """Eight symbols w_k = y_k + z_k: y from H_fig1 on x_1..x_29 followed by
    x_30..x_33 uncoded, z from the I3 code on x_34..x_91."""
    if len(x) != M1 + MA + M3:
        raise ValueError(f"expected {M1 + MA + M3} messages, got {len(x)}")
    x = [int(v) % 3 for v in x]
    y = _fig1_symbols(x[:M1]) + tuple(x[M1:M1 + MA])
    z = encode_i3(x[M1 + MA:])
    return tuple((a + b) % 3 for a, b in zip(y, z))


@lru_cache(maxsize=None)
def _y_support(k: int) -> tuple[tuple[int, int], ...]:
    """(message, coefficient) pairs making up y_k of the 91-user code."""
    if k > 4:
        return ((M1 + k - 4, 1),)
    code, _ = _fig1_code()
    row = code.H.inner.entries[k - 1]
    return tuple((j + 1, c) for j, c in enumerate(row) if c)


@lru_cache(maxsize=None)
def _front_symbols(i: int) -> tuple[int, ...]:
    """Symbols a user of the first two parts needs to look at."""
    if i > M1:
        return (4 + i - M1,)
    _, decoders = _fig1_code()
    D = decoders[i].D.entries
    return tuple(k + 1 for k in range(4) if any(row[k] for row in D))


def _gather(side: Mapping[int, int], idx: Sequence[int]) -> list[int]:
    if hasattr(side, "gather"):
        return [int(v) % 3 for v in side.gather(idx)]
    return [int(side[k]) % 3 for k in idx]


def decode_91(i: int, w: Sequence[int], side: Mapping[int, int]) -> int:
    """Each user strips the other part's contribution from just the symbols
    its own decoder reads, then runs that part's decoder."""
    n_front = M1 + MA
    if len(w) != 8:
        raise ValueError(f"expected 8 coded symbols, got {len(w)}")
    if 1 <= i <= n_front:
        # the whole I3 part is side information
        y = [0] * 8
        for k in _front_symbols(i):
            supp = symbol_support(k)
            vals = _gather(side, [n_front + j for j in supp])
            y[k - 1] = (w[k - 1] - encode_symbol(k, dict(zip(supp, vals)))) % 3
        if i <= M1:
            return _fig1_decode(i, y[:4], side)
        return y[4 + (i - M1 - 1)]
    if n_front < i <= n_front + M3:
        z = [0] * 8
        for k in symbols_read(i - n_front):
            terms = _y_support(k)
            vals = _gather(side, [j for j, _ in terms])
            z[k - 1] = (w[k - 1] - sum(c * v for (_, c), v in zip(terms, vals))) % 3
        return decode_i3(i - n_front, z, _Shifted(side, n_front))
    raise IndexError(f"user {i} outside [1, {n_front + M3}]")
