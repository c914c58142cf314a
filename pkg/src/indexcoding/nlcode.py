"""
The scalar nonlinear GF(3) code for the 58-user instance I3.

Eight symbols z_1..z_8 are sent.  The odd ones are plain sums; each even
one adds a value of the cubic g on four of x_9, x_11, x_13, x_15, x_17.
Users 9, 11, 13, 15 recover their message from the sum of the four g values
(the quadruple recovery); users 26, 32, 38, 44, 52, 54, 56, 58 need
g(a,b,v,w) + 2 g(a,c,v,w) knowing only v + w (the combination identity).
Everyone else decodes from one or two plain symbols.

Message indices are 1-based throughout; ``x`` vectors are 0-indexed lists.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable, Mapping, Optional, Sequence

from .errors import InconsistentInputs, IndexOutOfRange, MissingSideInformation
from .sideinfo import SideInformation

P = 3
M_I3 = 58


def g_eval(a: int, b: int, c: int, d: int) -> int:
    """The cubic g over GF(3), evaluated term by term."""
    quad = a * a * (b + c + d) + b * b * (a + c + d) + c * c * (a + b + d) + d * d * (a + b + c)
    pair = a * b + a * c + a * d + b * c + b * d + c * d
    triple = a * b * c + a * b * d + a * c * d + b * c * d
    return (2 * quad + 2 * pair + triple) % P


# ---------------------------------------------------------------------------
# Recovery identities
# ---------------------------------------------------------------------------


def quadruple_total(xw: int, g_sum: int, sums: Sequence[int]) -> int:
    """x_i + x_j + x_l + x_v from x_w, the sum of the four g values and the
    four triple sums (s_ijl, s_ijv, s_ilv, s_jlv).

    Over GF(3) the triple sums add to zero, so they alone do not fix the
    total; the cubic supplies the missing information.  The linear factors
    of a3 are sums of two triple sums, e.g. 2x_i + x_j + x_l + 2x_v = s_ijv + s_ilv.
    """
    s1, s2, s3, s4 = (v % P for v in sums)
    a1 = g_sum % P
    a2 = s1 * s2 * s3
    a3 = 2 * s1 * s1 * (s2 + s3) + 2 * s2 * s2 * (s1 + s3) + 2 * s3 * s3 * (s1 + s2)
    a4 = 2 * (s1 * s1 + s2 * s2 + s3 * s3 + s4 * s4)
    return (a1 + a2 + a3 + a4 * (1 + 2 * xw)) % P


def quadruple_inputs(xi: int, xj: int, xl: int, xv: int, xw: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Forward map: the four g values and four triple sums for a tuple."""
    gs = (
        g_eval(xi, xj, xl, xw),
        g_eval(xi, xj, xv, xw),
        g_eval(xi, xl, xv, xw),
        g_eval(xj, xl, xv, xw),
    )
    sums = ((xi + xj + xl) % P, (xi + xj + xv) % P, (xi + xl + xv) % P, (xj + xl + xv) % P)
    return gs, sums


def recover_quadruple(xw: int, g_vals: Sequence[int], sums: Sequence[int]) -> tuple[int, int, int, int]:
    """Recover (x_i, x_j, x_l, x_v) from x_w, the g values
    (g(i,j,l,w), g(i,j,v,w), g(i,l,v,w), g(j,l,v,w)) and the triple sums
    (s_ijl, s_ijv, s_ilv, s_jlv)."""
    if len(g_vals) != 4 or len(sums) != 4:
        raise InconsistentInputs("need exactly four g values and four sums")
    total = quadruple_total(xw, sum(g_vals), sums)
    s1, s2, s3, s4 = sums
    xs = ((total - s4) % P, (total - s3) % P, (total - s2) % P, (total - s1) % P)
    gs, ss = quadruple_inputs(*xs, xw % P)
    if tuple(v % P for v in g_vals) != gs or tuple(v % P for v in sums) != ss:
        raise InconsistentInputs("inputs are not the image of any tuple")
    return xs


def combo_from_partial(xi: int, xj: int, xl: int, s: int) -> int:
    """g(x_i,x_j,x_v,x_w) + 2 g(x_i,x_l,x_v,x_w) knowing only s = x_v + x_w.

    Every term of the combination involving x_v, x_w separately cancels, so
    any split of s gives the same value; (s, 0) is used.
    """
    return (g_eval(xi, xj, s % P, 0) + 2 * g_eval(xi, xl, s % P, 0)) % P


# ---------------------------------------------------------------------------
# Encoder
# ---------------------------------------------------------------------------

Z_TERMS: dict[int, tuple[int, ...]] = {
    1: (1, 9, 11, 13, 17, 19, 27, 35, 43, 53),
    2: (2, 10, 12, 14, 18, 20, 28, 36, 44, 54),
    3: (3, 9, 11, 15, 17, 21, 29, 37, 45, 51),
    4: (4, 10, 12, 16, 18, 22, 30, 38, 46, 52),
    5: (5, 9, 13, 15, 17, 23, 31, 39, 47, 57),
    6: (6, 10, 14, 16, 18, 24, 32, 40, 48, 58),
    7: (7, 11, 13, 15, 17, 25, 33, 41, 49, 55),
    8: (8, 12, 14, 16, 18, 26, 34, 42, 50, 56),
}
G_ARGS: dict[int, tuple[int, int, int, int]] = {
    2: (9, 11, 13, 17),
    4: (9, 11, 15, 17),
    6: (9, 13, 15, 17),
    8: (11, 13, 15, 17),
}


def _check_message(x: Sequence[int]) -> None:
    if len(x) != M_I3:
        raise IndexOutOfRange(f"expected {M_I3} messages, got {len(x)}")


def encode_i3(x: Sequence[int]) -> tuple[int, ...]:
    _check_message(x)
    z = []
    for k in range(1, 9):
        v = sum(x[i - 1] for i in Z_TERMS[k])
        if k in G_ARGS:
            v += g_eval(*(x[i - 1] for i in G_ARGS[k]))
        z.append(v % P)
    return tuple(z)


def symbol_support(k: int) -> tuple[int, ...]:
    """Messages that z_k depends on."""
    return tuple(sorted(set(Z_TERMS[k]) | set(G_ARGS.get(k, ()))))


def encode_symbol(k: int, x: Mapping[int, int]) -> int:
    """z_k alone, from a map holding at least ``symbol_support(k)``."""
    v = sum(x[i] for i in Z_TERMS[k])
    if k in G_ARGS:
        v += g_eval(*(x[i] for i in G_ARGS[k]))
    return v % P


# ---------------------------------------------------------------------------
# Decoders
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _known_terms(k: int, unknown: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(i for i in Z_TERMS[k] if i not in unknown)


class _Ctx:
    """Values a decoder can use: its side information, prefetched into
    ``got``, plus the messages it has decoded so far."""

    def __init__(self, z: Sequence[int], got: dict[int, int]):
        self.z = z
        self.got = got

    def x(self, i: int) -> int:
        return self.got[i]

    def strip(self, k: int, unknown: tuple[int, ...] = (), with_g: bool = True) -> int:
        """z_k minus every known linear term (and its g term, if asked).

        What remains is the sum of the ``unknown`` messages, or the sum plus
        the g term when ``with_g`` is False.
        """
        get = self.got.__getitem__
        v = self.z[k - 1] - sum(map(get, _known_terms(k, unknown)))
        if with_g and k in G_ARGS:
            v -= g_eval(*map(get, G_ARGS[k]))
        return v % P


class _Recorder(dict):
    def __init__(self):
        super().__init__()
        self.read: list[int] = []

    def __missing__(self, i: int) -> int:
        self.read.append(i)
        self[i] = 0
        return 0


class _SymbolRecorder(list):
    def __init__(self):
        super().__init__([0] * 8)
        self.read: set[int] = set()

    def __getitem__(self, k):
        self.read.add(k + 1)
        return super().__getitem__(k)


def _direct(k: int) -> Callable[[_Ctx, int], int]:
    """x_i appears in z_k with every other term known."""
    return lambda c, i: c.strip(k, (i,))


def _chain(helper: int, via: int, k: int) -> Callable[[_Ctx, int], int]:
    """Decode x_via from z_helper, then x_i from z_k."""

    def run(c: _Ctx, i: int) -> int:
        c.got[via] = c.strip(helper, (via,))
        return c.strip(k, (i,))

    return run


def _chain2(h1: int, v1: int, h2: int, v2: int, k: int) -> Callable[[_Ctx, int], int]:
    """Two helper messages, each from its own symbol, then x_i from z_k."""

    def run(c: _Ctx, i: int) -> int:
        c.got[v1] = c.strip(h1, (v1,))
        c.got[v2] = c.strip(h2, (v2,))
        return c.strip(k, (i,))

    return run


def _pair_then(helper: int, pair: tuple[int, int], k: int) -> Callable[[_Ctx, int], int]:
    """Learn x_a + x_b from z_helper; x_i follows from z_k, which holds both."""

    def run(c: _Ctx, i: int) -> int:
        s = c.strip(helper, pair)
        return (c.strip(k, (i,) + pair) - s) % P

    return run


def _core_partner(single: int, via: int, pair_sym: int, pair: tuple[int, int], k: int):
    """Users 10, 12, 14, 16: a core message from one symbol, the sum of two
    unknown even messages from another, then x_i from a symbol holding
    x_i and that pair."""

    def run(c: _Ctx, i: int) -> int:
        c.got[via] = c.strip(single, (via,))
        s = c.strip(pair_sym, pair)
        return (c.strip(k, (i,) + pair) - s) % P

    return run


def _core_odd(c: _Ctx, i: int) -> int:
    """Users 9, 11, 13, 15 via the quadruple recovery with w = 17.

    The even symbols also carry x_10, x_12, x_14, x_16, which these users
    lack; each appears in exactly three of the four, so the unknowns cancel
    from the sum of the stripped even symbols, leaving the sum of the g values.
    """
    hidden = (10, 12, 14, 16)
    g_sum = sum(c.strip(k, hidden, with_g=False) for k in (2, 4, 6, 8))
    core = (9, 11, 13, 15)
    s_ijl = c.strip(1, core)
    s_ijv = c.strip(3, core)
    s_ilv = c.strip(5, core)
    s_jlv = c.strip(7, core)
    total = quadruple_total(c.x(17), g_sum, (s_ijl, s_ijv, s_ilv, s_jlv))
    complement = {9: s_jlv, 11: s_ilv, 13: s_ijv, 15: s_ijl}
    return (total - complement[i]) % P


def _combo(helper: int, pair: tuple[int, int], k1: int, k2: int, common: int, j: int, l: int):
    """Learn x_v + x_w from z_helper, then use z_k1 + 2 z_k2, in which the
    shared terms cancel, leaving a multiple of x_i plus a g combination
    that depends only on x_common, x_j, x_l and x_v + x_w."""

    def run(c: _Ctx, i: int) -> int:
        s = c.strip(helper, pair)
        combo = combo_from_partial(c.x(common), c.x(j), c.x(l), s)
        t1, t2 = Z_TERMS[k1], Z_TERMS[k2]
        coeff = {}
        for m_ in t1:
            coeff[m_] = coeff.get(m_, 0) + 1
        for m_ in t2:
            coeff[m_] = coeff.get(m_, 0) + 2
        acc = c.z[k1 - 1] + 2 * c.z[k2 - 1] - combo
        ci = 0
        for m_, a in coeff.items():
            a %= P
            if not a:
                continue
            if m_ == i:
                ci = a
            else:
                acc -= a * c.x(m_)
        return (acc * pow(ci, -1, P)) % P

    return run


DECODERS: dict[int, Callable[[_Ctx, int], int]] = {
    **{i: _direct(i) for i in range(1, 9)},
    9: _core_odd, 11: _core_odd, 13: _core_odd, 15: _core_odd,
    10: _core_partner(1, 9, 8, (12, 14), 2),
    12: _core_partner(3, 11, 6, (14, 16), 8),
    14: _core_partner(5, 13, 4, (10, 16), 6),
    16: _core_partner(7, 15, 2, (10, 12), 4),
    17: _direct(1),
    18: _chain(1, 17, 2),
    19: _chain(5, 9, 1),
    20: _chain2(5, 9, 6, 10, 2),
    21: _chain(1, 9, 3),
    22: _chain2(1, 9, 2, 10, 4),
    23: _chain(3, 9, 5),
    24: _chain2(3, 9, 4, 10, 6),
    25: _pair_then(3, (15, 17), 7),
    26: _combo(3, (15, 17), 6, 8, 13, 9, 11),
    27: _chain(7, 11, 1),
    28: _chain2(7, 11, 8, 12, 2),
    29: _chain(1, 11, 3),
    30: _chain2(1, 11, 2, 12, 4),
    31: _pair_then(1, (9, 17), 5),
    32: _combo(1, (9, 17), 4, 6, 15, 11, 13),
    33: _chain(3, 11, 7),
    34: _chain2(3, 11, 4, 12, 8),
    35: _chain(7, 13, 1),
    36: _chain2(7, 13, 8, 14, 2),
    37: _pair_then(7, (11, 17), 3),
    38: _combo(7, (11, 17), 2, 4, 9, 13, 15),
    39: _chain(1, 13, 5),
    40: _chain2(1, 13, 2, 14, 6),
    41: _chain(5, 13, 7),
    42: _chain2(5, 13, 6, 14, 8),
    43: _pair_then(5, (13, 17), 1),
    44: _combo(5, (13, 17), 6, 2, 9, 15, 11),
    45: _chain(7, 15, 3),
    46: _chain2(7, 15, 8, 16, 4),
    47: _chain(3, 15, 5),
    48: _chain2(3, 15, 4, 16, 6),
    49: _chain(5, 15, 7),
    50: _chain2(5, 15, 6, 16, 8),
    51: _pair_then(1, (9, 17), 3),
    52: _combo(1, (9, 17), 2, 4, 11, 13, 15),
    53: _pair_then(7, (11, 17), 1),
    54: _combo(7, (11, 17), 8, 2, 13, 15, 9),
    55: _pair_then(5, (13, 17), 7),
    56: _combo(5, (13, 17), 6, 8, 15, 9, 11),
    57: _pair_then(3, (15, 17), 5),
    58: _combo(3, (15, 17), 4, 6, 9, 11, 13),
}


@lru_cache(maxsize=None)
def _dry_run(i: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    # the access pattern does not depend on the values, so zeros reveal it
    rec, zrec = _Recorder(), _SymbolRecorder()
    DECODERS[i](_Ctx(zrec, rec), i)
    return tuple(sorted(rec.read)), tuple(sorted(zrec.read))


def read_set(i: int) -> tuple[int, ...]:
    """Side-information indices user i's decoder reads."""
    return _dry_run(i)[0]


def symbols_read(i: int) -> tuple[int, ...]:
    """Coded symbols (1-based) user i's decoder looks at."""
    return _dry_run(i)[1]


def decode_i3(i: int, z: Sequence[int], side: Mapping[int, int]) -> int:
    """Recover x_i from the eight symbols and user i's side information.

    ``side`` maps message index to value; decoders only ever read indices
    in A_i, so passing a SideInformation makes any stray access raise.
    """
    if not 1 <= i <= M_I3:
        raise IndexOutOfRange(f"user {i} outside [1, {M_I3}]")
    if len(z) != 8:
        raise IndexOutOfRange(f"expected 8 coded symbols, got {len(z)}")
    need = read_set(i)
    if hasattr(side, "gather"):
        vals = side.gather(need)
    else:
        try:
            vals = [side[k] for k in need]
        except KeyError as exc:
            raise MissingSideInformation(f"user {i} needs message {exc.args[0]}") from exc
    got = {k: v % P for k, v in zip(need, vals)}
    return DECODERS[i](_Ctx([v % P for v in z], got), i)


def side_information_for(i: int, x: Sequence[int], instance=None) -> SideInformation:
    """Access-checked view of x restricted to A_i of I3."""
    if instance is None:
        from .fixtures import fixture

        instance = fixture("I3")
    return SideInformation.from_vector(list(x), instance.side_info(i))


def decode_all_i3(z: Sequence[int], x: Sequence[int], instance=None) -> list[int]:
    if instance is None:
        from .fixtures import fixture

        instance = fixture("I3")
    return [decode_i3(i, z, side_information_for(i, x, instance)) for i in range(1, M_I3 + 1)]
