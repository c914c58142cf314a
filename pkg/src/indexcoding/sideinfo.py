"""Access-checked view of a user's side information."""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence, Union

from .errors import MissingSideInformation

Value = Union[int, tuple]


class SideInformation(Mapping[int, Value]):
    """Read-only map from message index (1-based) to its value.

    Only indices in ``allowed`` can be read; any other lookup raises
    MissingSideInformation.  Every successful read is recorded in
    ``accessed`` so tests can audit decoder locality.  The values may be a
    mapping keyed by index or a full 0-indexed vector (no copy is made).
    """

    def __init__(self, values: Union[Mapping[int, Value], Sequence[Value]], allowed: Iterable[int]):
        self._allowed = allowed if type(allowed) is frozenset else frozenset(allowed)
        self._vector = type(values) in (list, tuple) or not isinstance(values, Mapping)
        self._values = values
        self.accessed: set[int] = set()

    @classmethod
    def from_vector(cls, x: Sequence[Value], allowed: Iterable[int]) -> "SideInformation":
        """Wrap a full 0-indexed message vector, exposing only ``allowed``."""
        return cls(x, allowed)

    def _present(self, k: int) -> bool:
        if self._vector:
            return 1 <= k <= len(self._values)
        return k in self._values

    def __getitem__(self, k: int) -> Value:
        if k not in self._allowed:
            raise MissingSideInformation(f"message {k} is not side information here")
        try:
            v = self._values[k - 1] if self._vector else self._values[k]
        except (IndexError, KeyError):
            raise MissingSideInformation(f"no value supplied for message {k}") from None
        self.accessed.add(k)
        return v

    def gather(self, indices: Sequence[int]) -> list[Value]:
        """Read several messages at once, with the same access rules."""
        if not self._allowed.issuperset(indices):
            stray = sorted(set(indices) - self._allowed)
            raise MissingSideInformation(f"messages {stray} are not side information here")
        vals = self._values
        try:
            if self._vector:
                out = [vals[k - 1] for k in indices]
            else:
                out = [vals[k] for k in indices]
        except (IndexError, KeyError):
            raise MissingSideInformation("no value supplied for some requested message") from None
        self.accessed.update(indices)
        return out

    def __iter__(self):
        return iter(sorted(k for k in self._allowed if self._present(k)))

    def __len__(self) -> int:
        return sum(1 for k in self._allowed if self._present(k))

    @property
    def allowed(self) -> frozenset[int]:
        return self._allowed
