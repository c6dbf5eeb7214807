"""Subgroup computations: conjugates, intersections, cores, solubility,
Sylow subgroups, normalizers and (K,K) double cosets.

Intersections, normalizers, centralizers and set stabilizers all go through
:func:`subgroup_search`, a backtrack over the stabilizer chain of the ambient
group in which only one candidate per orbit of the subgroup found so far is
tried at each top level.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .chain import StabilizerChain, extend_chain, fill_chain, schreier_sims
from .groups import (DEFAULT_INDEX_CAP, CosetSpace, GeneratedGroup, RandomSource,
                     _orbit0, random_element)
from .perms import Permutation, conj, element_order, identity, inv, is_identity, mul

Advance = Callable[[object, tuple, int, tuple], object]


def _fixes(x: Sequence[int], points: Iterable[int]) -> bool:
    return all(x[b] == b for b in points)


def subgroup_search(g: GeneratedGroup, prop: Callable[[tuple], bool],
                    advance: Advance | None = None, root=True,
                    base: Sequence[int] = (), initial: Iterable[Sequence[int]] = (),
                    first_only: bool = False) -> list[tuple[int, ...]]:
    """Generators of the subgroup ``{x in g : prop(x)}``.

    ``prop`` must define a subgroup.  ``advance(state, u, j, q)`` is called when
    the partial element ``q = u * (previous partial)`` has its images of the
    first ``j+1`` base points fixed; it returns the state for the child node
    or ``None`` to prune.  With ``first_only`` the search stops at the first
    nontrivial element found.
    """
    chain = g.chain_with_base(tuple(base)) if base else g.chain
    levels = chain.levels
    m = len(levels)
    points = chain.base
    orbits = [sorted(lvl.transversal) for lvl in levels]
    found = [tuple(x) for x in initial if not is_identity(x)]
    if m == 0:
        return found

    def dfs(j, q, state):
        if j == m - 1:
            return q if prop(q) else None
        lvl = levels[j + 1]
        for d in orbits[j + 1]:
            u = lvl.transversal[d]
            q2 = mul(u, q)
            s2 = state if advance is None else advance(state, u, j + 1, q2)
            if s2 is None:
                continue
            r = dfs(j + 1, q2, s2)
            if r is not None:
                return r
        return None

    for l in reversed(range(m)):
        bl = points[l]
        stab = [x for x in found if _fixes(x, points[:l])]
        handled = [bl]
        covered = set(_orbit0(stab, bl))
        for gamma in orbits[l]:
            if gamma in covered:
                continue
            u = levels[l].transversal[gamma]
            st = root if advance is None else advance(root, u, l, u)
            x = None if st is None else dfs(l, u, st)
            handled.append(gamma)
            if x is not None:
                found.append(x)
                stab.append(x)
                if first_only:
                    return found
                covered = set()
                for p in handled:
                    if p not in covered:
                        covered.update(_orbit0(stab, p))
            else:
                covered.update(_orbit0(stab, gamma))
    return found


def _group(gens, degree, name=None, order=None) -> GeneratedGroup:
    return GeneratedGroup([Permutation(x) for x in gens], degree, name=name, order=order)


def _check_degree(a: GeneratedGroup, b) -> None:
    d = b.degree if isinstance(b, GeneratedGroup) else len(b)
    if a.degree != d:
        raise ValueError(f"degree mismatch: {a.degree} vs {d}")


def _require_subgroup(h: GeneratedGroup, g: GeneratedGroup) -> None:
    _check_degree(g, h)
    if not h.is_subgroup_of(g):
        raise ValueError(f"{h.name or 'h'} is not contained in {g.name or 'g'}")


# -- basic constructions --------------------------------------------------

def conjugate_subgroup(h: GeneratedGroup, x: Sequence[int]) -> GeneratedGroup:
    """``h^x = x^-1 h x``."""
    _check_degree(h, x)
    gens = [conj(s, x) for s in h.generators]
    name = f"{h.name}^x" if h.name else None
    return _group(gens, h.degree, name=name, order=h.order)


def _membership_advance(k_chain):
    klevels = k_chain.levels

    def advance(residue, u, j, q):
        r = mul(u, residue)
        lvl = klevels[j]
        w = lvl.inverses.get(r[lvl.point])
        if w is None:
            return None
        return mul(r, w)

    return advance


def _intersection_gens(h: GeneratedGroup, k: GeneratedGroup, first_only=False):
    _check_degree(h, k)
    if h.is_trivial() or k.is_trivial():
        return []
    base = h.chain.base
    kchain = k.chain_with_base(tuple(base))

    def prop(q):
        # q already agrees with k on the shared base prefix; finish the sift
        r, _ = kchain.sift(q)
        return is_identity(r)

    return subgroup_search(h, prop, _membership_advance(kchain), root=identity(h.degree),
                           first_only=first_only)


def intersect(h: GeneratedGroup, k: GeneratedGroup) -> GeneratedGroup:
    """The exact intersection of two groups of equal degree."""
    gens = _intersection_gens(h, k)
    return _group(gens, h.degree)


def intersection_is_trivial(h: GeneratedGroup, k: GeneratedGroup) -> bool:
    return not _intersection_gens(h, k, first_only=True)


def intersect_all(groups: Sequence[GeneratedGroup]) -> GeneratedGroup:
    acc = groups[0]
    for other in groups[1:]:
        if acc.is_trivial():
            break
        acc = intersect(acc, other)
    return acc


def core_in(g: GeneratedGroup, h: GeneratedGroup) -> GeneratedGroup:
    """Largest normal subgroup of ``g`` contained in ``h``."""
    _require_subgroup(h, g)
    core = h
    while True:
        if core.is_trivial():
            return core
        changed = False
        for s in g.generators:
            conj_core = conjugate_subgroup(core, s)
            if not all(core.contains(x) for x in conj_core.generators):
                core = intersect(core, conj_core)
                changed = True
        if not changed:
            return core


def is_core_free(g: GeneratedGroup, h: GeneratedGroup) -> bool:
    return core_in(g, h).is_trivial()


def is_normal(g: GeneratedGroup, h: GeneratedGroup) -> bool:
    return all(h.contains(conj(x, s)) for x in h.generators for s in g.generators)


def normal_closure(g: GeneratedGroup, gens: Iterable[Sequence[int]]) -> GeneratedGroup:
    """Smallest normal subgroup of ``g`` containing ``gens``."""
    chain = StabilizerChain(g.degree)
    # keep only generators that enlarge the group, so the list stays short
    ngens = [tuple(x) for x in gens if extend_chain(chain, [x])]
    queue = list(ngens)
    while queue:
        x = queue.pop()
        for s in g.generators:
            y = conj(x, s)
            if extend_chain(chain, [y]):
                ngens.append(y)
                queue.append(y)
    out = _group(ngens, g.degree)
    out.__dict__["chain"] = chain
    return out


def derived_subgroup(g: GeneratedGroup) -> GeneratedGroup:
    gens = [tuple(x) for x in g.generators]
    comms = []
    for i, a in enumerate(gens):
        for b in gens[i + 1:]:
            c = mul(mul(inv(a), inv(b)), mul(a, b))
            if not is_identity(c):
                comms.append(c)
    return normal_closure(g, comms)


def derived_series(g: GeneratedGroup) -> list[GeneratedGroup]:
    series = [g]
    while not series[-1].is_trivial():
        d = derived_subgroup(series[-1])
        if d.order == series[-1].order:
            break
        series.append(d)
    return series


def is_soluble(g: GeneratedGroup) -> bool:
    return derived_series(g)[-1].is_trivial()


# -- searches with structural pruning -------------------------------------

def normalizer(g: GeneratedGroup, h: GeneratedGroup) -> GeneratedGroup:
    """``N_g(h)`` by backtrack; candidates must map h-orbits to h-orbits of equal length."""
    _require_subgroup(h, g)
    if h.is_trivial() or is_normal(g, h):
        return g
    olen = [0] * g.degree
    for o in h.orbits():
        for p in o:
            olen[p - 1] = len(o)
    points = g.chain.base
    hgens = [tuple(x) for x in h.generators]

    def advance(state, u, j, q):
        b = points[j]
        return True if olen[q[b]] == olen[b] else None

    def prop(x):
        return all(h.contains(conj(s, x)) for s in hgens)

    gens = subgroup_search(g, prop, advance, initial=h.generators)
    return _group(gens, g.degree)


def centralizer(g: GeneratedGroup, x: Sequence[int]) -> GeneratedGroup:
    """``C_g(x)`` by backtrack with cycle-length and commutation pruning."""
    x = tuple(x)
    clen = [0] * len(x)
    for c in Permutation(x).cycles():
        for p in c:
            clen[p - 1] = len(c)
    for i in range(len(x)):
        clen[i] = clen[i] or 1
    points = g.chain.base
    pos = {b: i for i, b in enumerate(points)}

    def advance(state, u, j, q):
        b = points[j]
        if clen[q[b]] != clen[b]:
            return None
        for i in range(j + 1):
            bi = points[i]
            k = pos.get(x[bi])
            if k is not None and k <= j and q[x[bi]] != x[q[bi]]:
                return None
        return True

    def prop(y):
        return mul(x, y) == mul(y, x)

    start = [x] if g.contains(x) else []
    return _group(subgroup_search(g, prop, advance, initial=start), g.degree)


def orbit_stabilizer(g: GeneratedGroup, obj, act: Callable, limit: int = 100_000,
                     source: RandomSource | None = None) -> GeneratedGroup | None:
    """Stabilizer of ``obj`` under ``act(obj, x)``, or None if its orbit exceeds ``limit``.

    The orbit gives the exact stabilizer order; random elements of ``g`` are
    pulled back into the stabilizer through the orbit transversal and sifted
    until that order is reached, so the result is exact.
    """
    e = identity(g.degree)
    trans = {obj: e}
    queue = [obj]
    for o in queue:
        u = trans[o]
        for s in g.generators:
            o2 = act(o, s)
            if o2 not in trans:
                if len(trans) >= limit:
                    return None
                trans[o2] = mul(u, s)
                queue.append(o2)
    order = g.order // len(trans)
    if order == 1:
        return _group([], g.degree, order=1)
    source = source or RandomSource(0, len(trans))
    replacer = source.replacer(g)

    def sample():
        r = replacer()
        return mul(r, inv(trans[act(obj, r)]))

    chain = StabilizerChain(g.degree)
    if not fill_chain(chain, sample, order, max_rounds=10 * order + 10_000):
        return None
    return _group(few_generators(chain.strong_generators, g.degree, order, source),
                  g.degree, order=order)


def few_generators(gens: Sequence[Sequence[int]], degree: int, order: int,
                   source: RandomSource | None = None) -> list[tuple[int, ...]]:
    """A short generating list for the group of the given order generated by ``gens``.

    Random elements are added until they provably generate (their chain
    reaches ``order``); falls back to ``gens`` itself.
    """
    gens = [tuple(x) for x in gens if not is_identity(x)]
    if len(gens) <= 2:
        return gens
    source = source or RandomSource(0, order % (1 << 32))
    pool = _group(gens, degree, order=order)
    picked: list[tuple[int, ...]] = []
    while len(picked) < len(gens):
        picked.append(tuple(random_element(pool, source)))
        if len(picked) < 2:
            continue
        sub = RandomSource(len(picked), order % (1 << 32)).replacer(_group(picked, degree))
        chain = StabilizerChain(degree)
        if fill_chain(chain, lambda: tuple(sub()), order, max_rounds=200 + 20 * degree):
            return picked
    return gens


def _act_set(s: frozenset, x) -> frozenset:
    return frozenset(x[p] for p in s)


def _act_partition(blocks: frozenset, x) -> frozenset:
    return frozenset(_act_set(b, x) for b in blocks)


def set_stabilizer(g: GeneratedGroup, points: Iterable[int]) -> GeneratedGroup:
    """Setwise stabilizer of a set of 1-based points."""
    s = {p - 1 for p in points}
    found = orbit_stabilizer(g, frozenset(s), _act_set)
    if found is not None:
        return found
    member = [i in s for i in range(g.degree)]
    base = tuple(sorted(s)) + tuple(i for i in g.chain.base if i not in s)
    bpts = g.chain_with_base(base).base

    def advance(state, u, j, q):
        b = bpts[j]
        return True if member[q[b]] == member[b] else None

    def prop(x):
        return all(member[x[i]] for i in s)

    return _group(subgroup_search(g, prop, advance, base=base), g.degree)


def partition_stabilizer(g: GeneratedGroup, blocks: Sequence[Iterable[int]]) -> GeneratedGroup:
    """Stabilizer of an unordered set partition (blocks of 1-based points)."""
    key = frozenset(frozenset(p - 1 for p in blk) for blk in blocks)
    found = orbit_stabilizer(g, key, _act_partition)
    if found is not None:
        return found
    label = [-1] * g.degree
    for i, blk in enumerate(blocks):
        for p in blk:
            label[p - 1] = i
    bsize = Counter(label)
    base = tuple(p - 1 for blk in blocks for p in blk)
    bpts = g.chain_with_base(base).base

    def advance(state, u, j, q):
        # block-to-block map implied by the fixed base images must be a function and injective
        fwd, back = {}, {}
        for i in range(j + 1):
            a, b = label[bpts[i]], label[q[bpts[i]]]
            if fwd.setdefault(a, b) != b or back.setdefault(b, a) != a or bsize[a] != bsize[b]:
                return None
        return True

    def prop(x):
        img = {}
        for p in range(g.degree):
            if img.setdefault(label[p], label[x[p]]) != label[x[p]]:
                return False
        return True

    return _group(subgroup_search(g, prop, advance, base=base), g.degree)


# -- Sylow subgroups ------------------------------------------------------

def _p_part(n: int, p: int) -> int:
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def _p_element(x: Sequence[int], p: int) -> Permutation | None:
    o = element_order(x)
    if o % p:
        return None
    return Permutation(x) ** (o // _p_part(o, p))


def sylow_subgroup(g: GeneratedGroup, p: int, source: RandomSource | None = None
                   ) -> GeneratedGroup:
    """A Sylow p-subgroup, grown through normalizers from a random p-element."""
    target = _p_part(g.order, p)
    if target == 1:
        raise ValueError(f"{p} does not divide the group order")
    if target == g.order:
        return g
    source = source or RandomSource(0, p)
    while True:
        y = _p_element(random_element(g, source), p)
        if y is not None:
            break
    pgens = [y]
    P = _group(pgens, g.degree)
    while P.order < target:
        N = normalizer(g, P)
        while True:
            z = _p_element(random_element(N, source), p)
            if z is not None and not P.contains(z):
                pgens.append(z)
                P = _group(pgens, g.degree)
                break
    return _group(pgens, g.degree, name=f"Syl{p}", order=target)


# -- double cosets --------------------------------------------------------

@dataclass
class DoubleCosetCensus:
    ambient_order: int
    subgroup_order: int
    entries: list[tuple[Permutation, int]] = field(default_factory=list)
    complete: bool = False

    @property
    def total(self) -> int:
        return sum(size for _, size in self.entries)

    @property
    def sizes(self) -> list[int]:
        return [size for _, size in self.entries]

    def has_regular(self) -> bool:
        return any(size == self.subgroup_order ** 2 for _, size in self.entries)

    def summary(self) -> dict[int, int]:
        """Multiplicity of each double coset size."""
        return dict(sorted(Counter(self.sizes).items()))

    def check(self) -> bool:
        k = self.subgroup_order
        ok = all(s % k == 0 and (k * k) % s == 0 for s in self.sizes)
        if self.complete:
            ok = ok and self.total == self.ambient_order
        return ok


def _orbits_from_images(images: Sequence[Sequence[int]], n: int) -> list[list[int]]:
    label = np.full(n, -1, dtype=np.int64)
    arrs = [np.asarray(a, dtype=np.int64) for a in images]
    orbits = []
    for start in range(n):
        if label[start] >= 0:
            continue
        oid = len(orbits)
        label[start] = oid
        orb = [start]
        for x in orb:
            for a in arrs:
                y = int(a[x])
                if label[y] < 0:
                    label[y] = oid
                    orb.append(y)
        orbits.append(orb)
    return orbits


def double_cosets(g: GeneratedGroup, k: GeneratedGroup, budget: int | None = None,
                  cap: int = DEFAULT_INDEX_CAP) -> DoubleCosetCensus:
    """(K,K) double cosets as K-orbits on the right cosets of K.

    The representative of each double coset is its first coset in
    breadth-first order from K.  If ``budget`` (a number of cosets) is
    smaller than the index, a partial census of distinct double cosets is
    returned.
    """
    _require_subgroup(k, g)
    space = CosetSpace(g, k, cap)
    korder = k.order
    census = DoubleCosetCensus(g.order, korder)
    if budget is None or budget >= space.size:
        space.enumerate()
        images = space.action_images(k.generators)
        for orb in _orbits_from_images(images, space.size):
            rep = min(orb)
            census.entries.append((space.representative(rep), korder * len(orb)))
        census.entries.sort(key=lambda e: space.index_of(e[0]))
        census.complete = True
        return census

    # partial: breadth-first cosets up to the budget, each expanded to its K-orbit
    gens = g.generators
    covered: set[tuple[int, ...]] = set()
    i = 0
    while i < len(space.reps) and len(covered) < budget:
        r = space.reps[i]
        key = space.canonical(r)
        if key not in covered:
            orb = [key]
            seen = {key}
            for x in orb:
                for t in k.generators:
                    y = space.canonical(mul(x, t))
                    if y not in seen:
                        seen.add(y)
                        orb.append(y)
            covered |= seen
            census.entries.append((Permutation(r), korder * len(orb)))
        for s in gens:
            if len(space.reps) < budget:
                space.add(mul(r, s))
        i += 1
    census.complete = census.total == g.order
    return census


def double_coset_keys(space: CosetSpace, g: Sequence[int]) -> set[tuple[int, ...]]:
    """Canonical keys of the right cosets of K inside ``K g K`` (K = ``space.h``)."""
    start = space.canonical(g)
    seen = {start}
    orb = [start]
    for y in orb:
        for t in space.h.generators:
            z = space.canonical(mul(y, t))
            if z not in seen:
                seen.add(z)
                orb.append(z)
    return seen


def in_double_coset(space: CosetSpace, g: Sequence[int], x: Sequence[int]) -> bool:
    """Is ``x`` in ``K g K``, for ``space`` the cosets of K?  One K-orbit probe."""
    return space.canonical(x) in double_coset_keys(space, g)


def double_coset_size(k: GeneratedGroup, g: Sequence[int]) -> int:
    """``|K g K| = |K|^2 / |K cap K^g|``."""
    return k.order ** 2 // intersect(k, conjugate_subgroup(k, g)).order
