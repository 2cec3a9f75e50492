"""Rowmotion on antichains and ideals, toggles, and orbit enumeration.

Antichains and ideals are plain ``frozenset`` node-id sets; validity is
checked at the public entry points.  Rowmotion on antichains sends ``A``
to the minimal elements of the complement of the ideal it generates; on
ideals it is the conjugate map ``L -> down_set(rho(max L))``, which also
equals the composition of toggles along any linear extension, applied
top element first.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import BudgetExceededError
from .poset import Poset, RootedTree, _bits

__all__ = [
    "Orbit",
    "rho_antichain",
    "rho_ideal",
    "toggle",
    "rho_via_toggles",
    "orbit_of",
    "all_orbits",
    "enumerate_antichains",
    "DEFAULT_ANTICHAIN_BUDGET",
]

DEFAULT_ANTICHAIN_BUDGET = 10**6


def _antichain_mask(tree: Poset, members: Iterable[int]) -> int:
    mask = 0
    for x in members:
        if not 0 <= x < tree.n:
            raise ValueError(f"unknown node id {x}")
        mask |= 1 << x
    for x in _bits(mask):
        if tree.down[x] & mask != 1 << x:
            below = next(b for b in _bits(tree.down[x] & mask) if b != x)
            raise ValueError(f"not an antichain: {below} < {x}")
    return mask


def _ideal_mask(poset: Poset, members: Iterable[int]) -> int:
    mask = 0
    for x in members:
        if not 0 <= x < poset.n:
            raise ValueError(f"unknown node id {x}")
        mask |= 1 << x
    for x in _bits(mask):
        if poset.down[x] & mask != poset.down[x]:
            raise ValueError(f"not an ideal: {x} is in but part of its down-set is not")
    return mask


def _rho_mask(tree: Poset, amask: int) -> int:
    """Rowmotion on an antichain bitmask (no validation)."""
    downm = 0
    for x in _bits(amask):
        downm |= tree.down[x]
    comp = tree.full_mask & ~downm
    out = 0
    for x in _bits(comp):
        if tree.down[x] & comp == 1 << x:
            out |= 1 << x
    return out


def rho_antichain(tree: Poset, antichain: Iterable[int]) -> frozenset[int]:
    """One rowmotion step: minimal elements outside the generated ideal."""
    amask = _antichain_mask(tree, antichain)
    return frozenset(_bits(_rho_mask(tree, amask)))


def rho_ideal(tree: Poset, ideal: Iterable[int]) -> frozenset[int]:
    """Rowmotion on ideals: the ideal generated by ``rho(max ideal)``."""
    lmask = _ideal_mask(tree, ideal)
    maxmask = 0
    for x in _bits(lmask):
        if not any(lmask >> z & 1 for z in tree.upper_covers[x]):
            maxmask |= 1 << x
    new = _rho_mask(tree, maxmask)
    downm = 0
    for x in _bits(new):
        downm |= tree.down[x]
    return frozenset(_bits(downm))


def toggle(poset: Poset, ideal: Iterable[int], x: int) -> frozenset[int]:
    """Flip membership of ``x`` if the result is an ideal, else no-op."""
    lmask = _ideal_mask(poset, ideal)
    if not 0 <= x < poset.n:
        raise ValueError(f"unknown node id {x}")
    if lmask >> x & 1:
        if not any(lmask >> z & 1 for z in poset.upper_covers[x]):
            lmask ^= 1 << x
    else:
        if all(lmask >> y & 1 for y in poset.lower_covers[x]):
            lmask ^= 1 << x
    return frozenset(_bits(lmask))


def rho_via_toggles(
    poset: Poset, ideal: Iterable[int], extension: Sequence[int]
) -> frozenset[int]:
    """Toggle along a linear extension, top element first.

    Equals :func:`rho_ideal` on rooted trees and is independent of the
    extension chosen.
    """
    ext = tuple(extension)
    if sorted(ext) != list(range(poset.n)):
        raise ValueError("extension is not a permutation of the elements")
    pos = {x: i for i, x in enumerate(ext)}
    for a, b in poset.covers:
        if pos[a] > pos[b]:
            raise ValueError(f"not a linear extension: {a} < {b} but listed after")
    lmask = _ideal_mask(poset, ideal)
    for x in reversed(ext):
        if lmask >> x & 1:
            if not any(lmask >> z & 1 for z in poset.upper_covers[x]):
                lmask ^= 1 << x
        else:
            if all(lmask >> y & 1 for y in poset.lower_covers[x]):
                lmask ^= 1 << x
    return frozenset(_bits(lmask))


@dataclass(frozen=True)
class Orbit:
    """A rowmotion orbit, rotated so the lex-smallest antichain is first.

    ``contains_root`` is the delta flag: the orbit through the empty
    antichain also contains the root singleton (rowmotion sends one to
    the other), and no other orbit contains either.
    """

    antichains: tuple[frozenset[int], ...]
    contains_root: bool = field(init=False)

    def __post_init__(self):
        if len(set(self.antichains)) != len(self.antichains):
            raise ValueError("orbit members are not distinct")
        object.__setattr__(
            self, "contains_root", any(not a for a in self.antichains)
        )

    @classmethod
    def from_cycle(cls, cycle: Sequence[frozenset[int]]) -> "Orbit":
        seq = [frozenset(a) for a in cycle]
        rep = min(range(len(seq)), key=lambda i: tuple(sorted(seq[i])))
        return cls(tuple(seq[rep:] + seq[:rep]))

    @property
    def size(self) -> int:
        return len(self.antichains)

    @property
    def delta(self) -> int:
        return int(self.contains_root)

    def as_id_lists(self) -> list[list[int]]:
        return [sorted(a) for a in self.antichains]


def orbit_of(tree: RootedTree, antichain: Iterable[int]) -> Orbit:
    """The rowmotion orbit through ``antichain`` (canonically rotated)."""
    start = _antichain_mask(tree, antichain)
    cycle = [start]
    cur = _rho_mask(tree, start)
    while cur != start:
        cycle.append(cur)
        cur = _rho_mask(tree, cur)
    return Orbit.from_cycle([frozenset(_bits(m)) for m in cycle])


def enumerate_antichains(
    tree: RootedTree, budget: int = DEFAULT_ANTICHAIN_BUDGET
) -> list[frozenset[int]]:
    """All antichains of the tree, sorted by their sorted id tuple."""
    masks = _antichain_masks(tree, budget)
    out = [frozenset(_bits(m)) for m in masks]
    out.sort(key=sorted)
    return out


def _antichain_masks(tree: RootedTree, budget: int) -> list[int]:
    total = tree.count_antichains()
    if total > budget:
        raise BudgetExceededError(total, budget)
    # Antichains of the subtree at x: either {x}, or a union of one
    # (possibly empty) antichain per child subtree.
    memo: list[list[int]] = [[] for _ in range(tree.n)]
    for x in range(tree.n - 1, -1, -1):
        acc = [0]
        for c in tree.children[x]:
            acc = [m | cm for m in acc for cm in memo[c]]
        memo[x] = [1 << x] + acc
        for c in tree.children[x]:
            memo[c] = []  # free child lists as they are absorbed
    return memo[0]


def all_orbits(
    tree: RootedTree, budget: int = DEFAULT_ANTICHAIN_BUDGET
) -> tuple[Orbit, ...]:
    """Partition all antichains into orbits, ordered by representative."""
    masks = _antichain_masks(tree, budget)
    order = sorted(range(len(masks)), key=lambda i: tuple(sorted(_bits(masks[i]))))
    index = {m: i for i, m in enumerate(masks)}
    seen = [False] * len(masks)
    orbits: list[Orbit] = []
    for i in order:
        if seen[i]:
            continue
        start = masks[i]
        cycle = [start]
        seen[i] = True
        cur = _rho_mask(tree, start)
        while cur != start:
            seen[index[cur]] = True
            cycle.append(cur)
            cur = _rho_mask(tree, cur)
        orbits.append(Orbit.from_cycle([frozenset(_bits(m)) for m in cycle]))
    return tuple(orbits)
