"""Finitely generated permutation groups, random elements and coset actions."""

from __future__ import annotations

from collections import deque
from functools import cached_property
from itertools import product
from typing import Iterable, Iterator, Sequence

import numpy as np

from .chain import StabilizerChain, random_schreier_sims, schreier_sims
from .perms import Permutation, identity, inv, is_identity, mul

DEFAULT_INDEX_CAP = 10 ** 7


class IndexCapExceeded(RuntimeError):
    pass


class GeneratedGroup:
    """A permutation group given by generators; immutable once created.

    ``order`` may be supplied when it is known in advance; the stabilizer chain
    is then built by randomized Schreier-Sims and checked against it.
    """

    def __init__(self, generators: Iterable[Sequence[int]], degree: int | None = None,
                 name: str | None = None, order: int | None = None):
        gens = tuple(Permutation(g) for g in generators)
        if degree is None:
            if not gens:
                raise ValueError("degree required for an empty generator list")
            degree = len(gens[0])
        for g in gens:
            if len(g) != degree:
                raise ValueError(f"generator of degree {len(g)} in a group of degree {degree}")
        self.degree = degree
        self.generators = gens
        self.name = name
        self._known_order = order

    def __repr__(self) -> str:
        label = self.name or "group"
        return f"<{label}: degree {self.degree}, {len(self.generators)} generators>"

    @cached_property
    def chain(self) -> StabilizerChain:
        return build_chain(self)

    @property
    def order(self) -> int:
        return self.chain.order

    def chain_with_base(self, prefix: Sequence[int]) -> StabilizerChain:
        """A chain whose base starts with the given 0-based points."""
        prefix = tuple(prefix)
        cache = self.__dict__.setdefault("_prefixed", {})
        if prefix not in cache:
            cache[prefix] = random_schreier_sims(self.generators, self.degree, self.order,
                                                 base_prefix=prefix)
        return cache[prefix]

    def contains(self, a: Sequence[int]) -> bool:
        return contains(self, a)

    def __contains__(self, a) -> bool:
        return contains(self, a)

    def is_trivial(self) -> bool:
        return all(is_identity(g) for g in self.generators)

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def orbit(self, point: int) -> set[int]:
        return orbit(self, point)

    def orbits(self) -> list[list[int]]:
        """All orbits as sorted lists of 1-based points."""
        seen = set()
        out = []
        for p in range(1, self.degree + 1):
            if p not in seen:
                o = orbit(self, p)
                seen |= o
                out.append(sorted(o))
        return out

    def is_transitive(self) -> bool:
        return len(orbit(self, 1)) == self.degree

    def is_subgroup_of(self, other: "GeneratedGroup") -> bool:
        return self.degree == other.degree and all(other.contains(g) for g in self.generators)

    def stabilizer(self, point: int) -> "GeneratedGroup":
        """Point stabilizer of a 1-based point."""
        ch = self.chain_with_base((point - 1,))
        gens = ch.stabilizer_generators(1)
        return GeneratedGroup(gens, self.degree, order=ch.stabilizer_order(1))

    def elements(self) -> Iterator[Permutation]:
        """Every element exactly once (only sensible for small groups)."""
        levels = self.chain.levels
        if not levels:
            yield self.identity()
            return
        for us in product(*[list(lvl.transversal.values()) for lvl in reversed(levels)]):
            g = us[0]
            for u in us[1:]:
                g = mul(g, u)
            yield Permutation(g)

    def random_element(self, source: "RandomSource") -> Permutation:
        return random_element(self, source)


def build_chain(g: GeneratedGroup) -> StabilizerChain:
    if g._known_order is not None:
        return random_schreier_sims(g.generators, g.degree, g._known_order)
    return schreier_sims(g.generators, g.degree)


def contains(g: GeneratedGroup, a: Sequence[int]) -> bool:
    if len(a) != g.degree:
        raise ValueError(f"degree mismatch: {len(a)} vs {g.degree}")
    return g.chain.contains(a)


def orbit(g: GeneratedGroup, point: int) -> set[int]:
    """The orbit of a 1-based point, as a set of 1-based points."""
    if not 1 <= point <= g.degree:
        raise ValueError(f"point {point} out of range 1..{g.degree}")
    return {x + 1 for x in _orbit0(g.generators, point - 1)}


def _orbit0(gens: Sequence[Sequence[int]], p: int) -> list[int]:
    seen = {p}
    out = [p]
    for x in out:
        for s in gens:
            y = s[x]
            if y not in seen:
                seen.add(y)
                out.append(y)
    return out


# -- random elements ------------------------------------------------------

class ProductReplacer:
    """Product replacement with an accumulator (10 slots, 60 mixing steps)."""

    def __init__(self, gens: Sequence[Sequence[int]], degree: int, rng: np.random.Generator,
                 slots: int = 10, mixing: int = 60):
        self.degree = degree
        self.rng = rng
        gens = [tuple(g) for g in gens if not is_identity(g)]
        self.trivial = not gens
        if self.trivial:
            return
        self.slots = [gens[i % len(gens)] for i in range(max(slots, len(gens)))]
        self.acc = identity(degree)
        for _ in range(mixing):
            self._step()

    def _step(self) -> tuple[int, ...]:
        n = len(self.slots)
        i, j, flags = (int(v) for v in self.rng.integers(0, [n, n - 1, 4]))
        if j >= i:
            j += 1
        other = self.slots[j] if flags & 1 else inv(self.slots[j])
        s = self.slots[i]
        s = mul(s, other) if flags & 2 else mul(other, s)
        self.slots[i] = s
        self.acc = mul(self.acc, s)
        return self.acc

    def __call__(self) -> Permutation:
        if self.trivial:
            return Permutation.identity(self.degree)
        return Permutation(self._step())


class RandomSource:
    """Reproducible randomness: the same (seed, stream) gives the same draws."""

    def __init__(self, seed: int = 0, stream: int = 0):
        self.seed = int(seed)
        self.stream = int(stream)
        self.rng = np.random.default_rng(np.random.SeedSequence([self.seed & (2**64 - 1),
                                                                  self.stream]))
        self._replacers: dict[int, tuple[GeneratedGroup, ProductReplacer]] = {}

    def __repr__(self) -> str:
        return f"RandomSource(seed={self.seed}, stream={self.stream})"

    def spawn(self, worker: int) -> "RandomSource":
        """Independent source for a worker; distinct workers never share streams."""
        return RandomSource(self.seed, (self.stream + 1) * 1_000_003 + worker)

    def replacer(self, g: GeneratedGroup) -> ProductReplacer:
        entry = self._replacers.get(id(g))
        if entry is None or entry[0] is not g:
            entry = (g, ProductReplacer(g.generators, g.degree, self.rng))
            self._replacers[id(g)] = entry
        return entry[1]


def random_element(g: GeneratedGroup, source: RandomSource) -> Permutation:
    return source.replacer(g)()


# -- coset spaces ---------------------------------------------------------

class CosetSpace:
    """Right cosets ``H x`` of ``h`` in ``g``.

    Each coset is keyed by a canonical element: at every level of the chain
    of ``h`` the coset is narrowed to the elements giving the smallest image
    of that level's base point.  Cosets are numbered in breadth-first order
    from ``H`` under the generators of ``g``.
    """

    def __init__(self, g: GeneratedGroup, h: GeneratedGroup, cap: int = DEFAULT_INDEX_CAP):
        if g.degree != h.degree:
            raise ValueError("degree mismatch")
        self.g = g
        self.h = h
        index, rem = divmod(g.order, h.order)
        if rem:
            raise ValueError("h is not a subgroup of g (order does not divide)")
        if index > cap:
            raise IndexCapExceeded(f"index {index} exceeds cap {cap}")
        self.size = index
        self._levels = [(sorted(lvl.transversal), lvl.transversal) for lvl in h.chain.levels
                        if len(lvl) > 1]
        e = identity(g.degree)
        self.reps: list[tuple[int, ...]] = [e]
        self.lookup: dict[tuple[int, ...], int] = {self.canonical(e): 0}
        self._done = 0

    def canonical(self, x: Sequence[int]) -> tuple[int, ...]:
        x = tuple(x)
        for orbit, trans in self._levels:
            d = min(orbit, key=x.__getitem__)
            x = mul(trans[d], x)
        return x

    def index_of(self, x: Sequence[int]) -> int | None:
        return self.lookup.get(self.canonical(x))

    def add(self, x: Sequence[int]) -> int:
        key = self.canonical(x)
        i = self.lookup.get(key)
        if i is None:
            i = len(self.reps)
            self.lookup[key] = i
            self.reps.append(tuple(x))
        return i

    def enumerate(self) -> None:
        """Breadth-first enumeration of all cosets under the generators of g."""
        gens = self.g.generators
        queue = self._done
        while queue < len(self.reps):
            r = self.reps[queue]
            for s in gens:
                self.add(mul(r, s))
            queue += 1
        self._done = queue
        if len(self.reps) != self.size:
            raise RuntimeError(f"enumerated {len(self.reps)} cosets, expected {self.size}")

    def action_images(self, elements: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
        """Permutations (0-based) induced on the cosets by right multiplication."""
        self.enumerate()
        lookup, canon = self.lookup, self.canonical
        return [tuple(lookup[canon(mul(r, s))] for r in self.reps) for s in elements]

    def representative(self, i: int) -> Permutation:
        return Permutation(self.reps[i])


def coset_action(g: GeneratedGroup, h: GeneratedGroup, cap: int = DEFAULT_INDEX_CAP
                 ) -> tuple[GeneratedGroup, CosetSpace]:
    """Permutation image of ``g`` on the right cosets of ``h``.

    Point ``i`` (1-based) of the image is the coset ``H * space.reps[i-1]``.
    """
    if not h.is_subgroup_of(g):
        raise ValueError("h is not a subgroup of g")
    space = CosetSpace(g, h, cap)
    images = space.action_images(g.generators)
    name = f"{g.name or 'G'} on cosets of {h.name or 'H'}"
    return GeneratedGroup(images, space.size, name=name), space
