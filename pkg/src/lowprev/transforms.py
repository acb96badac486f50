"""Transformation monoids on finite spaces.

Closure under composition, structural flags (Abelian, group,
cancellability), the partition of the space into smallest invariant
events, and the pushforward action on probability mass functions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .core import Space, Transformation, identity
from .errors import TruncatedClosureError

CLOSURE_CAP = 10_000


@dataclass(frozen=True)
class TransformationMonoid:
    """Generators plus their composition closure (identity included).

    ``truncated`` flags that the closure hit the cap and is incomplete;
    structural classification then refuses to run, but invariant atoms
    only ever need the generators.
    """

    space: Space
    generators: tuple[Transformation, ...]
    closure: frozenset[Transformation]
    truncated: bool = False


def closure(generators: Iterable[Transformation], cap: int = CLOSURE_CAP) -> TransformationMonoid:
    """All distinct finite compositions of the generators, plus identity."""
    if cap < 1:
        raise ValueError("closure cap must be at least 1")
    gens = tuple(generators)
    if not gens:
        raise ValueError("need at least one generator (use the identity for the trivial monoid)")
    space = gens[0].space
    for g in gens:
        if g.space != space:
            raise ValueError("all generators must act on the same space")
    seen = {identity(space)}
    frontier = list(seen)
    truncated = False
    while frontier:
        nxt = []
        for t in frontier:
            for g in gens:
                for comp in (g.compose(t), t.compose(g)):
                    if comp not in seen:
                        if len(seen) >= cap:
                            truncated = True
                            frontier = []
                            nxt = []
                            break
                        seen.add(comp)
                        nxt.append(comp)
                if truncated:
                    break
            if truncated:
                break
        frontier = nxt
    return TransformationMonoid(space, gens, frozenset(seen), truncated)


def monoid(space: Space, generators: Iterable[Transformation], cap: int = CLOSURE_CAP) -> TransformationMonoid:
    gens = tuple(generators)
    if not gens:
        gens = (identity(space),)
    return closure(gens, cap)


@dataclass(frozen=True)
class MonoidFlags:
    abelian: bool
    group: bool
    left_cancellable: bool
    right_cancellable: bool


def classify(m: TransformationMonoid) -> MonoidFlags:
    """Exhaustive structural check over the closure."""
    if m.truncated:
        raise TruncatedClosureError("cannot classify a truncated closure")
    elems = sorted(m.closure, key=lambda t: t.image)
    ident = identity(m.space)
    abelian = all(
        s.compose(t) == t.compose(s) for i, s in enumerate(elems) for t in elems[i + 1:]
    )
    left = all(any(s.compose(t) == ident for s in elems) for t in elems)
    right = all(any(t.compose(s) == ident for s in elems) for t in elems)
    return MonoidFlags(abelian, left and right, left, right)


@dataclass(frozen=True)
class InvariantAtoms:
    """The partition of the space into smallest invariant events."""

    monoid: TransformationMonoid
    partition: tuple[tuple[str, ...], ...]

    def atom_of(self, label: str) -> tuple[str, ...]:
        for block in self.partition:
            if label in block:
                return block
        raise KeyError(label)


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, i):
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, i, j):
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            self.parent[max(ri, rj)] = min(ri, rj)


def invariant_atoms(m: TransformationMonoid) -> InvariantAtoms:
    """Connected components of the edges x ~ T(x) over the generators.

    An event is invariant under a map exactly when membership is constant
    along these edges, so invariance under the generators (and hence under
    the whole generated monoid) is a union of components.  The closure is
    never needed.
    """
    space = m.space
    uf = _UnionFind(space.size)
    for t in m.generators:
        for i, j in enumerate(t.image):
            uf.union(i, j)
    blocks: dict[int, list[int]] = {}
    for i in range(space.size):
        blocks.setdefault(uf.find(i), []).append(i)
    partition = tuple(
        tuple(space.outcomes[i] for i in sorted(idxs))
        for _, idxs in sorted(blocks.items())
    )
    return InvariantAtoms(m, partition)


def is_invariant_gamble(m: TransformationMonoid, f) -> bool:
    """lift(T, f) == f for every generator T."""
    from .core import lift

    return all(lift(t, f) == f for t in m.generators)


def pushforward(t: Transformation, p: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Image of a probability mass function under a transformation.

    (Tp)(y) = sum of p(x) over x with T(x) = y; linear in p, and dual to
    lifting: (Tp).f = p.lift(T, f).
    """
    q = [Fraction(0)] * len(t.image)
    for i, j in enumerate(t.image):
        q[j] += p[i]
    return tuple(q)
