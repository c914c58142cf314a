"""Catalog of the concrete instances, matrices and matroids, stored as JSON."""

from __future__ import annotations

import hashlib
import json
from importlib import resources
from typing import Union

from .errors import UnknownFixture
from .gf import BlockMatrix
from .instance import Instance
from .matroid import MatroidSpec

INSTANCES = ("I1", "I2", "I3", "I_a", "Example1")
MATRICES = ("H_fig1", "H_fig2")
MATROIDS = ("N1", "N2", "N3")
NAMES = INSTANCES + MATRICES + MATROIDS

Fixture = Union[Instance, BlockMatrix, MatroidSpec]


def kind_of(name: str) -> str:
    if name in INSTANCES:
        return "instance"
    if name in MATRICES:
        return "matrix"
    if name in MATROIDS:
        return "matroid"
    raise UnknownFixture(f"no fixture named {name!r}; known: {', '.join(NAMES)}")


def raw(name: str) -> dict:
    """The stored JSON object (a fresh copy on every call)."""
    kind_of(name)
    text = resources.files("indexcoding").joinpath("data", f"{name}.json").read_text()
    return json.loads(text)


def canonical_json(name: str) -> str:
    return json.dumps(raw(name), sort_keys=True, separators=(",", ":"))


def sha256(name: str) -> str:
    return hashlib.sha256(canonical_json(name).encode()).hexdigest()


def fixture(name: str) -> Fixture:
    """Load and validate a fixture.  Objects are immutable and built fresh."""
    kind = kind_of(name)
    obj = raw(name)
    if kind == "instance":
        return Instance.from_json(obj)
    if kind == "matrix":
        return BlockMatrix.from_json(obj)
    return MatroidSpec.from_json(obj)
