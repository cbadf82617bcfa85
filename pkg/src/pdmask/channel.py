"""Simulated q-level memory with cells stuck at level 1 and magnitude-x errors."""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field

import numpy as np

from .gf import Field


class ChannelError(ValueError):
    pass


class BadParams(ChannelError):
    pass


class ConstraintViolation(ChannelError):
    def __init__(self, positions):
        self.positions = tuple(positions)
        super().__init__(f"level 0 written to stuck cells {list(self.positions)}")


class NotWritten(ChannelError):
    pass


@dataclass(frozen=True)
class ErrorEvent:
    psi: tuple[int, ...]
    value: int = 1
    overlap: tuple[int, ...] = ()
    hazards: tuple[int, ...] = ()

    @property
    def hazard(self) -> bool:
        return bool(self.hazards)


@dataclass
class MemoryState:
    field: Field
    n: int
    phi: frozenset[int]
    contents: tuple[int, ...] | None = dc_field(default=None)

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def u(self) -> int:
        return len(self.phi)

    def write(self, word) -> None:
        word = tuple(int(v) for v in word)
        if len(word) != self.n:
            raise BadParams(f"word length {len(word)} != {self.n}")
        bad = [i for i in sorted(self.phi) if word[i] == 0]
        if bad:
            raise ConstraintViolation(bad)
        self.contents = word


def sample_subset(rng: np.random.Generator, n: int, k: int) -> tuple[int, ...]:
    if not 0 <= k <= n:
        raise BadParams(f"cannot pick {k} of {n} positions")
    return tuple(sorted(int(i) for i in rng.choice(n, size=k, replace=False)))


def mem_new(n: int, field: Field, u: int = 0, rng: np.random.Generator | None = None,
            phi=None) -> MemoryState:
    if phi is not None:
        phi = frozenset(int(i) for i in phi)
        if any(not 0 <= i < n for i in phi):
            raise BadParams("stuck positions outside the memory")
        return MemoryState(field, n, phi)
    if not 0 <= u <= n:
        raise BadParams("need 0 <= u <= n")
    if rng is None:
        if u:
            raise BadParams("random stuck positions need an rng")
        return MemoryState(field, n, frozenset())
    return MemoryState(field, n, frozenset(sample_subset(rng, n, u)))


def write(mem: MemoryState, word) -> None:
    mem.write(word)


def corrupt(mem: MemoryState, t: int, rng: np.random.Generator,
            value: int = 1) -> tuple[tuple[int, ...], ErrorEvent]:
    """Add ``value`` at ``t`` uniformly chosen cells and read back."""
    if mem.contents is None:
        raise NotWritten("memory has not been written")
    if not 1 <= value < mem.q:
        raise BadParams("error value must be a nonzero label")
    psi = sample_subset(rng, mem.n, t)
    f = mem.field
    y = list(mem.contents)
    for j in psi:
        y[j] = f.add(y[j], value)
    overlap = tuple(j for j in psi if j in mem.phi)
    hazards = tuple(j for j in overlap if y[j] == 0)
    return tuple(y), ErrorEvent(psi, value, overlap, hazards)


def trace_line(mem: MemoryState, event: ErrorEvent, y, decoded_ok: bool) -> str:
    return json.dumps({
        "phi": sorted(mem.phi),
        "psi": list(event.psi),
        "word": list(mem.contents or ()),
        "y": list(y),
        "hazard": event.hazard,
        "decoded_ok": decoded_ok,
    }, sort_keys=True)
