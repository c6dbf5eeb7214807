"""Stabilizer chains (bases and strong generating sets).

Level ``i`` of a chain stores the base point ``base[i]``, the strong generators
fixing ``base[:i]``, and an explicit transversal mapping each orbit point
``gamma`` to an element ``u`` with ``base[i]^u == gamma``.  Group elements are
raw 0-based tuples here; see :mod:`basesize.perms`.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .perms import identity, inv, is_identity, mul


class Level:
    __slots__ = ("point", "gens", "transversal", "inverses", "checked")

    def __init__(self, point: int):
        self.point = point
        self.gens: list[tuple[int, ...]] = []
        self.transversal: dict[int, tuple[int, ...]] = {}
        self.inverses: dict[int, tuple[int, ...]] = {}
        # (orbit point, generator index) pairs whose Schreier generator is known to sift
        self.checked: set[tuple[int, int]] = set()

    def rebuild(self, degree: int) -> None:
        e = identity(degree)
        self.transversal = {self.point: e}
        self.inverses = {self.point: e}
        self._grow(list(self.transversal), self.gens)

    def add_generator(self, s: tuple[int, ...]) -> None:
        """Append a generator, extending (never rewriting) the transversal."""
        self.gens.append(s)
        trans = self.transversal
        fresh = []
        for g in list(trans):
            d = s[g]
            if d not in trans:
                trans[d] = mul(trans[g], s)
                self.inverses[d] = inv(trans[d])
                fresh.append(d)
        self._grow(fresh, self.gens)

    def _grow(self, frontier: list[int], gens) -> None:
        trans, inverses = self.transversal, self.inverses
        while frontier:
            nxt = []
            for g in frontier:
                u = trans[g]
                for s in gens:
                    d = s[g]
                    if d not in trans:
                        trans[d] = w = mul(u, s)
                        inverses[d] = inv(w)
                        nxt.append(d)
            frontier = nxt

    def __len__(self) -> int:
        return len(self.transversal)


class StabilizerChain:
    """A base and strong generating set for a permutation group."""

    def __init__(self, degree: int, base_prefix: Iterable[int] = ()):
        self.degree = degree
        self.levels: list[Level] = []
        for b in base_prefix:
            self._push(b)

    # -- queries ----------------------------------------------------------

    @property
    def base(self) -> list[int]:
        return [lvl.point for lvl in self.levels]

    @property
    def order(self) -> int:
        n = 1
        for lvl in self.levels:
            n *= len(lvl)
        return n

    @property
    def strong_generators(self) -> list[tuple[int, ...]]:
        return list(self.levels[0].gens) if self.levels else []

    def orbit_sizes(self) -> list[int]:
        return [len(lvl) for lvl in self.levels]

    def sift(self, g: Sequence[int], start: int = 0) -> tuple[tuple[int, ...], int]:
        """Strip ``g`` through levels ``start..``; return (residue, level reached)."""
        g = tuple(g)
        levels = self.levels
        for j in range(start, len(levels)):
            lvl = levels[j]
            d = g[lvl.point]
            if d == lvl.point:
                continue
            w = lvl.inverses.get(d)
            if w is None:
                return g, j
            g = mul(g, w)
        return g, len(levels)

    def contains(self, g: Sequence[int]) -> bool:
        h, _ = self.sift(g)
        return is_identity(h)

    def stabilizer_generators(self, depth: int) -> list[tuple[int, ...]]:
        """Strong generators of the pointwise stabilizer of ``base[:depth]``."""
        if depth >= len(self.levels):
            return []
        return list(self.levels[depth].gens)

    def stabilizer_order(self, depth: int) -> int:
        n = 1
        for lvl in self.levels[depth:]:
            n *= len(lvl)
        return n

    def element_from_images(self, images: Sequence[int]) -> tuple[int, ...] | None:
        """The unique element with the given base images, or None."""
        g = identity(self.degree)
        for lvl, target in zip(self.levels, images):
            # want b^(u * g) == target, i.e. b^u == target^(g^-1)
            pre = g.index(target)
            u = lvl.transversal.get(pre)
            if u is None:
                return None
            g = mul(u, g)
        return g

    # -- mutation (construction only) -------------------------------------

    def _push(self, point: int) -> Level:
        lvl = Level(point)
        lvl.rebuild(self.degree)
        self.levels.append(lvl)
        return lvl

    def _ensure_moved(self, g: Sequence[int]) -> None:
        for lvl in self.levels:
            if g[lvl.point] != lvl.point:
                return
        self._push(next(i for i, x in enumerate(g) if x != i))

    def _add_strong(self, h: tuple[int, ...], lo: int, hi: int) -> None:
        """Record ``h`` (which fixes base[:hi]) at levels lo..hi, extending the base."""
        if hi == len(self.levels):
            self._push(next(i for i, x in enumerate(h) if x != i))
        for lvl in self.levels[lo:hi + 1]:
            lvl.add_generator(h)

    def verify(self) -> bool:
        """Check both chain invariants from scratch (Schreier generators sift)."""
        for i, lvl in enumerate(self.levels):
            for g, u in lvl.transversal.items():
                if u[lvl.point] != g:
                    return False
                for s in lvl.gens:
                    sg = mul(mul(u, s), lvl.inverses[s[g]])
                    h, _ = self.sift(sg, i + 1)
                    if not is_identity(h):
                        return False
        return True


def schreier_sims(gens: Iterable[Sequence[int]], degree: int,
                  base_prefix: Iterable[int] = ()) -> StabilizerChain:
    """Deterministic Schreier-Sims; base extended by smallest moved points."""
    chain = StabilizerChain(degree, base_prefix)
    extend_chain(chain, gens)
    return chain


def extend_chain(chain: StabilizerChain, gens: Iterable[Sequence[int]]) -> bool:
    """Add generators to a complete chain and restore completeness in place.

    Transversals only ever grow, so Schreier generators checked earlier stay
    checked.  Returns True if the group got bigger.
    """
    grew = False
    for g in gens:
        h, j = chain.sift(g)
        if not is_identity(h):
            chain._add_strong(h, 0, j)
            grew = True
    if not grew:
        return False
    i = len(chain.levels) - 1
    while i >= 0:
        lvl = chain.levels[i]
        done = lvl.checked
        added = False
        for gamma, u in list(lvl.transversal.items()):
            for si, s in enumerate(lvl.gens):
                if (gamma, si) in done:
                    continue
                done.add((gamma, si))
                d = s[gamma]
                sg = mul(mul(u, s), lvl.inverses[d])
                if is_identity(sg):
                    continue
                h, j = chain.sift(sg, i + 1)
                if not is_identity(h):
                    chain._add_strong(h, i + 1, j)
                    added = True
                    break
            if added:
                break
        if added:
            i = len(chain.levels) - 1
        else:
            i -= 1
    return True


def random_schreier_sims(gens: Iterable[Sequence[int]], degree: int, order: int,
                         seed: int = 0, base_prefix: Iterable[int] = (),
                         max_rounds: int = 100000) -> StabilizerChain:
    """Randomized Schreier-Sims stopped by a known group order.

    Every stored element lies in the group, so reaching ``order`` proves the
    chain complete.  Falls back to the deterministic method if the target is
    not hit within ``max_rounds`` sifts.
    """
    gens = [tuple(g) for g in gens if not is_identity(g)]
    chain = StabilizerChain(degree, base_prefix)
    if order == 1 or not gens:
        if (order == 1) != (not gens):
            raise ValueError(f"generators inconsistent with order {order}")
        return chain
    for g in gens:
        h, j = chain.sift(g)
        if not is_identity(h):
            chain._add_strong(h, 0, j)
    rng = np.random.default_rng([seed, degree, order % (1 << 63)])
    slots = gens * (10 // len(gens) + 1)
    slots = slots[:max(10, len(gens))]
    acc = identity(degree)
    n = len(slots)

    def step():
        nonlocal acc
        i, j = rng.integers(0, n, size=2)
        if i == j:
            j = (j + 1) % n
        slots[i] = mul(slots[i], slots[j]) if rng.integers(2) else mul(slots[j], slots[i])
        acc = mul(acc, slots[i])
        return acc

    for _ in range(30):
        step()
    if not fill_chain(chain, step, order, max_rounds):
        return schreier_sims(gens, degree, base_prefix)
    return chain


def fill_chain(chain: StabilizerChain, sample, order: int, max_rounds: int = 100000) -> bool:
    """Sift elements drawn from ``sample()`` into ``chain`` until it reaches ``order``.

    ``sample`` must only return members of the target group.  Returns False if
    ``max_rounds`` draws did not suffice; raises if the order is overshot.
    """
    rounds = 0
    while chain.order < order:
        rounds += 1
        if rounds > max_rounds:
            return False
        h, j = chain.sift(sample())
        if not is_identity(h):
            chain._add_strong(h, 0, j)
    if chain.order != order:
        raise ValueError(f"generators produce order >= {chain.order}, expected {order}")
    return True
