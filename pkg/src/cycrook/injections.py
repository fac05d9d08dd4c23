"""Partial injections ``S -> N_n``: cycle counts, chain resolution, rewiring.

Row index ``i`` and column index ``i`` are identified, so a partial injection
is a directed graph on ``{1, ..., n}`` whose components are simple paths and
cycles.  Only closed cycles carry the weight ``z``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

__all__ = [
    "ContractViolation",
    "PartialInjection",
    "enumerate_injections",
    "cycle_count",
    "chain_resolve",
    "rewire",
]


class ContractViolation(ValueError):
    """A documented precondition of an operation does not hold."""


@dataclass(frozen=True)
class PartialInjection:
    """Injective map given as sorted ``(source, target)`` pairs."""

    pairs: tuple

    def __post_init__(self):
        pairs = tuple(sorted((int(i), int(j)) for i, j in self.pairs))
        object.__setattr__(self, "pairs", pairs)
        dom = [i for i, _ in pairs]
        img = [j for _, j in pairs]
        if len(set(dom)) != len(dom):
            raise ContractViolation(f"not a function: {pairs}")
        if len(set(img)) != len(img):
            raise ContractViolation(f"not injective: {pairs}")

    @classmethod
    def from_dict(cls, mapping) -> "PartialInjection":
        return cls(tuple(mapping.items()))

    @property
    def domain(self) -> tuple:
        return tuple(i for i, _ in self.pairs)

    @property
    def image(self) -> tuple:
        return tuple(j for _, j in self.pairs)

    def as_dict(self) -> dict:
        return dict(self.pairs)

    def inverse(self) -> dict:
        return {j: i for i, j in self.pairs}

    def __len__(self):
        return len(self.pairs)

    def __str__(self):
        return "{" + ", ".join(f"{i}->{j}" for i, j in self.pairs) + "}"


def enumerate_injections(S, n: int):
    """Every injective map from the index set ``S`` into ``1..n``.

    The order is lexicographic in the tuple of images (listed in increasing
    order of the domain).  ``S`` empty yields the single empty map.
    """
    dom = tuple(sorted(S))
    if len(dom) > n:
        return
    for img in permutations(range(1, n + 1), len(dom)):
        yield PartialInjection(tuple(zip(dom, img)))


def cycle_count(phi: PartialInjection) -> int:
    """Number of orbits ``i -> phi(i) -> ... -> i`` closed inside the domain."""
    mapping = phi.as_dict()
    seen = set()
    cycles = 0
    for start in mapping:
        if start in seen:
            continue
        cur = start
        while cur in mapping and cur not in seen:
            seen.add(cur)
            cur = mapping[cur]
        if cur == start:
            cycles += 1
    return cycles


def chain_resolve(phi: PartialInjection, j: int) -> int:
    """Walk backwards from an image point outside the domain.

    Starting at ``j`` (in the image, not in the domain) repeatedly apply
    ``phi^{-1}`` while the current point is still an image point; the walk
    ends in the domain, at a point that is not an image point.
    """
    dom = set(phi.domain)
    inv = phi.inverse()
    if j not in inv or j in dom:
        raise ContractViolation(f"{j} is not in phi(S) \\ S for phi = {phi}")
    cur = j
    while cur in inv:
        cur = inv[cur]
    return cur


def rewire(phi: PartialInjection, cols) -> tuple:
    """Column sequence left over after placing the rooks of ``phi``.

    Positions that are both a source and a target of ``phi`` are dropped.  A
    target position ``j`` that is not a source receives the entry from
    position ``chain_resolve(phi, j)``, and that position is dropped instead.
    Exactly ``len(phi)`` positions disappear.
    """
    cols = tuple(cols)
    dom = set(phi.domain)
    out = list(cols)
    drop = set()
    for j in phi.image:
        if j in dom:
            drop.add(j)
        else:
            src = chain_resolve(phi, j)
            out[j - 1] = cols[src - 1]
            drop.add(src)
    return tuple(v for p, v in enumerate(out, start=1) if p not in drop)
