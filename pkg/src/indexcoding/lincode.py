"""
Linear index codes y = H x over GF(p).

User i decodes iff rank(H^{{i} ∪ B_i}) = rank(H^{B_i}) + t.  When that
holds we solve for a t x r matrix D with D H^{B_i} = 0 and D H^{i} = I_t;
then x_i = D (y - H^{A_i} x_{A_i}).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .errors import DimensionMismatch, NotDecodable
from .gf import BlockMatrix, FieldSpec, GfMatrix, solve
from .instance import Instance
from .sideinfo import SideInformation


@dataclass(frozen=True)
class LinearCode:
    H: BlockMatrix

    @property
    def field(self) -> FieldSpec:
        return self.H.field

    @property
    def t(self) -> int:
        return self.H.t

    @property
    def r(self) -> int:
        return self.H.r

    @property
    def m(self) -> int:
        return self.H.m

    @property
    def rate(self) -> str:
        return f"{self.r}/{self.t}"

    def over(self, p: int) -> "LinearCode":
        """The same integer matrix read over GF(p)."""
        return LinearCode(self.H.with_field(FieldSpec(p)))


@dataclass(frozen=True)
class UserVerdict:
    i: int
    rank_iB: int
    rank_B: int
    passed: bool

    def to_json(self) -> dict:
        return {"i": self.i, "rank_iB": self.rank_iB, "rank_B": self.rank_B, "pass": self.passed}


@dataclass(frozen=True)
class DecodabilityReport:
    users: tuple[UserVerdict, ...]
    rate: str

    @property
    def passed(self) -> bool:
        return all(u.passed for u in self.users)

    @property
    def failing(self) -> list[int]:
        return [u.i for u in self.users if not u.passed]

    def to_json(self) -> dict:
        return {
            "pass": self.passed,
            "rate": self.rate,
            "users": [u.to_json() for u in self.users],
        }


def encode(code: LinearCode, x: Sequence[int]) -> tuple[int, ...]:
    if len(x) != code.m * code.t:
        raise DimensionMismatch(f"message vector has length {len(x)}, expected {code.m * code.t}")
    p = code.field.p
    return code.H.inner.matvec([int(v) % p for v in x])


def _check_sizes(code: LinearCode, I: Instance) -> None:
    if code.m != I.m:
        raise DimensionMismatch(f"code has {code.m} messages, instance has {I.m} users")


def user_verdict(code: LinearCode, I: Instance, i: int) -> UserVerdict:
    Bi = I.interfering(i)
    rB = code.H.rank_of(Bi)
    riB = code.H.rank_of(Bi | {i})
    return UserVerdict(i, riB, rB, riB == rB + code.t)


def check_decodable(code: LinearCode, I: Instance) -> DecodabilityReport:
    _check_sizes(code, I)
    users = tuple(user_verdict(code, I, i) for i in range(1, I.m + 1))
    return DecodabilityReport(users, code.rate)


def derive_decoder(code: LinearCode, I: Instance, i: int) -> GfMatrix:
    """Solve D·H^{B_i} = 0, D·H^{i} = I_t for the t x r decoder D."""
    _check_sizes(code, I)
    v = user_verdict(code, I, i)
    if not v.passed:
        raise NotDecodable(
            f"user {i}: rank(H^{{i}}∪B) = {v.rank_iB}, rank(H^B) = {v.rank_B}, t = {code.t}"
        )
    t = code.t
    Bi = sorted(I.interfering(i))
    K = code.H.select(Bi).hstack(code.H.select([i]))
    target_rows = [[0] * (len(Bi) * t) + [1 if a == b else 0 for b in range(t)] for a in range(t)]
    target = GfMatrix.from_rows(code.field, target_rows, K.cols)
    Dt = solve(K.transpose(), target.transpose())
    if Dt is None:  # pragma: no cover - excluded by the rank test above
        raise NotDecodable(f"user {i}: no decoder solves the system")
    return Dt.transpose()


@dataclass(frozen=True)
class UserDecoder:
    """x_i = D·y - sum over j in A_i of (D·H^{j}) x_j, keeping nonzero blocks only."""

    i: int
    D: GfMatrix
    side_terms: tuple[tuple[int, tuple[tuple[int, ...], ...]], ...]

    def __call__(self, y: Sequence[int], side: Mapping[int, Sequence[int]]) -> tuple[int, ...]:
        p = self.D.field.p
        out = list(self.D.matvec([int(v) % p for v in y]))
        for j, blk in self.side_terms:
            xj = side[j]
            for a, row in enumerate(blk):
                out[a] -= sum(c * int(v) for c, v in zip(row, xj))
        return tuple(v % p for v in out)


def compile_decoder(code: LinearCode, I: Instance, i: int) -> UserDecoder:
    D = derive_decoder(code, I, i)
    terms = []
    for j in sorted(I.side_info(i)):
        blk = D.matmul(code.H.select([j])).entries
        if any(any(r) for r in blk):
            terms.append((j, blk))
    return UserDecoder(i, D, tuple(terms))


def decode_user(
    code: LinearCode,
    I: Instance,
    i: int,
    y: Sequence[int],
    side: Mapping[int, Sequence[int]],
    decoder: Optional[UserDecoder] = None,
) -> tuple[int, ...]:
    """Estimate x_i (a length-t tuple) from y and the side information x_{A_i}."""
    if decoder is None:
        decoder = compile_decoder(code, I, i)
    if len(y) != code.r:
        raise DimensionMismatch(f"coded vector has length {len(y)}, expected {code.r}")
    return decoder(y, side)


def decode_all(
    code: LinearCode, I: Instance, y: Sequence[int], x: Sequence[int],
    decoders: Optional[Mapping[int, UserDecoder]] = None,
) -> list[tuple[int, ...]]:
    """Decode every user, each seeing only y and its own x_{A_i}."""
    _check_sizes(code, I)
    if decoders is None:
        decoders = all_decoders(code, I)
    t = code.t
    blocks = [tuple(x[(j - 1) * t:j * t]) for j in range(1, I.m + 1)]
    return [
        decode_user(code, I, i, y, SideInformation(blocks, I.side_info(i)), decoders[i])
        for i in range(1, I.m + 1)
    ]


def all_decoders(code: LinearCode, I: Instance) -> dict[int, UserDecoder]:
    return {i: compile_decoder(code, I, i) for i in range(1, I.m + 1)}
