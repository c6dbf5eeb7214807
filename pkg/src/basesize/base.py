"""Base sizes of coset actions: bounds, searches and checkable certificates.

For ``H <= G`` acting on the right cosets of ``H``, the stabilizer of the coset
``H x`` is ``H^x``, so a list of conjugators ``x_1..x_k`` with
``H cap H^x_1 cap ... cap H^x_k = 1`` is a base of size ``k + 1``.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .classdata import ClassTable, SubgroupClassData, is_prime
from .groups import (DEFAULT_INDEX_CAP, CosetSpace, GeneratedGroup, RandomSource,
                     coset_action, random_element)
from .perms import Permutation, conj, identity
from .subgroups import (DoubleCosetCensus, _require_subgroup, conjugate_subgroup,
                        double_coset_keys, double_coset_size, double_cosets,
                        in_double_coset, intersect,
                        intersection_is_trivial, is_core_free, is_soluble)

EXHAUSTIVE_MAX_INDEX = 500
EXHAUSTIVE_MAX_ORDER = 10 ** 6
EXHAUSTIVE_LIST_MAX_ORDER = 50_000

KINDS = ("witness", "regular-orbit", "no-regular-orbit-census", "partial-certificate",
         "lower-bound", "exhaustive", "length-bound")


@dataclass(frozen=True)
class BaseSizeCertificate:
    """Evidence for one inequality ``b(G,H) <relation> value``.

    ``conjugators`` holds the witness elements (kinds ``witness`` and
    ``regular-orbit``) or the double coset representatives
    (``no-regular-orbit-census``, ``partial-certificate``).  Nothing stored
    here is trusted by :meth:`verify`.
    """

    kind: str
    relation: str
    value: int
    group: str
    group_order: int
    subgroup: str
    subgroup_order: int
    conjugators: tuple[Permutation, ...] = ()
    seed: int | None = None
    stream: int | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown certificate kind {self.kind!r}")
        if self.relation not in ("<=", ">=", "="):
            raise ValueError(f"bad relation {self.relation!r}")

    def describe(self) -> str:
        return f"b {self.relation} {self.value} ({self.kind})"

    def verify(self, g: GeneratedGroup, h: GeneratedGroup) -> bool:
        """Recheck the claim from scratch against the given groups."""
        if g.order != self.group_order or h.order != self.subgroup_order:
            return False
        if not h.is_subgroup_of(g):
            return False
        xs = self.conjugators
        if any(len(x) != g.degree or not g.contains(x) for x in xs):
            return False
        kind = self.kind
        if kind in ("witness", "regular-orbit"):
            return (self.relation == "<=" and self.value == len(xs) + 1
                    and verify_witness(g, h, xs))
        if kind == "lower-bound":
            if h.is_trivial():
                return self.value <= 1
            return self.value <= lower_bound(g.order, g.order // h.order)
        if kind == "length-bound":
            return self.relation == "<=" and self.value >= h.order.bit_length()
        if kind == "exhaustive":
            if self.relation != "=":
                return False
            # re-check by the other search when the group is small enough to list
            if g.order <= EXHAUSTIVE_LIST_MAX_ORDER:
                return exhaustive_base_size(g, h) == self.value
            return _exhaustive(g, h, EXHAUSTIVE_MAX_INDEX, EXHAUSTIVE_MAX_ORDER)[0] == self.value
        if kind == "no-regular-orbit-census":
            return (self.relation == ">=" and self.value == 3
                    and _verify_double_cosets(g, h, xs, need_complete=True))
        if kind == "partial-certificate":
            return (self.relation == ">=" and self.value == 3
                    and _verify_double_cosets(g, h, xs, need_complete=False))
        return False


def _verify_double_cosets(g, h, reps, need_complete: bool) -> bool:
    """Distinct double cosets, none of size |H|^2, covering enough of G."""
    k2 = h.order ** 2
    sizes = [double_coset_size(h, x) for x in reps]
    if any(s >= k2 for s in sizes):
        return False
    space = CosetSpace(g, h)
    for i, a in enumerate(reps):
        keys = double_coset_keys(space, a)
        if any(space.canonical(b) in keys for b in reps[i + 1:]):
            return False
    total = sum(sizes)
    if need_complete:
        return total == g.order
    return total > g.order - k2


@dataclass
class BaseSizeResult:
    lower: int
    upper: int
    certificates: list[BaseSizeCertificate] = field(default_factory=list)

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError(f"inconsistent bounds {self.lower} > {self.upper}")

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    @property
    def value(self) -> int | None:
        return self.lower if self.exact else None

    def describe(self) -> str:
        if self.exact:
            return f"b = {self.lower}"
        return f"{self.lower} <= b <= {self.upper}"

    def verify(self, g: GeneratedGroup, h: GeneratedGroup) -> bool:
        return all(c.verify(g, h) for c in self.certificates)


@dataclass(frozen=True)
class Policy:
    """Knobs for :func:`exact_base_size`.

    ``exhaustive`` is ``"auto"`` (use the exhaustive search when the index and
    order are within its caps), ``"always"`` or ``"never"``.
    """

    max_c: int = 5
    trials: int = 10_000
    seed: int = 42
    workers: int = 1
    exhaustive: str = "auto"
    census_cap: int = DEFAULT_INDEX_CAP
    partial_budget: int = 10_000


# -- basic checks ----------------------------------------------------------

def verify_witness(g: GeneratedGroup, h: GeneratedGroup, xs: Sequence[Sequence[int]]) -> bool:
    """Is ``h cap h^x_1 cap ... cap h^x_k`` trivial?"""
    for x in xs:
        if len(x) != g.degree or not g.contains(x):
            raise ValueError(f"conjugator {Permutation(x)!r} is not in {g.name or 'g'}")
    if h.is_trivial():
        return True
    acc = h
    for i, x in enumerate(xs):
        other = conjugate_subgroup(h, x)
        if i == len(xs) - 1:
            return intersection_is_trivial(acc, other)
        acc = intersect(acc, other)
        if acc.is_trivial():
            return True
    return False


def lower_bound(order_g: int, index_n: int) -> int:
    """Smallest k with ``index_n ** k >= order_g``, in integer arithmetic."""
    if index_n < 2 or order_g < index_n:
        raise ValueError(f"need order >= index >= 2, got order {order_g}, index {index_n}")
    k, power = 1, index_n
    while power < order_g:
        power *= index_n
        k += 1
    return k


def _cert(kind, relation, value, g, h, xs=(), seed=None, stream=None) -> BaseSizeCertificate:
    return BaseSizeCertificate(kind, relation, value, g.name or "G", g.order,
                               h.name or "H", h.order, tuple(Permutation(x) for x in xs),
                               seed, stream)


# -- random witness search ------------------------------------------------

def _search(g, h, c, trials, seed, stream):
    source = RandomSource(seed, stream)
    for _ in range(trials):
        xs = [random_element(g, source) for _ in range(c - 1)]
        if verify_witness(g, h, xs):
            return xs
    return None


def witness_search(g: GeneratedGroup, h: GeneratedGroup, target_c: int,
                   trials: int = 10_000, source: RandomSource | None = None,
                   workers: int = 1) -> BaseSizeCertificate | None:
    """Look for ``target_c - 1`` conjugators witnessing ``b(G,H) <= target_c``.

    Failure says nothing about ``b``.  With several workers each one draws
    from its own stream and the lowest-numbered successful worker wins, so the
    outcome does not depend on scheduling.
    """
    if h.is_trivial():
        return _cert("witness", "<=", 1, g, h)
    if target_c < 2:
        return None
    source = source or RandomSource()
    kind = "regular-orbit" if target_c == 2 else "witness"
    if workers <= 1:
        xs = _search(g, h, target_c, trials, source.seed, source.stream)
        if xs is None:
            return None
        return _cert(kind, "<=", target_c, g, h, xs, source.seed, source.stream)

    streams = [source.spawn(w).stream for w in range(workers)]
    shares = [trials // workers + (w < trials % workers) for w in range(workers)]
    g.chain, h.chain  # build once before pickling
    with ProcessPoolExecutor(workers) as pool:
        futures = [pool.submit(_search, g, h, target_c, n, source.seed, s)
                   for n, s in zip(shares, streams)]
        results = [f.result() for f in futures]
    for xs, s in zip(results, streams):
        if xs is not None:
            return _cert(kind, "<=", target_c, g, h, xs, source.seed, s)
    return None


# -- regular orbits and double cosets -------------------------------------

def has_regular_orbit(g: GeneratedGroup, h: GeneratedGroup, cap: int = DEFAULT_INDEX_CAP
                      ) -> tuple[bool, BaseSizeCertificate]:
    """Decide ``b(G,H) <= 2`` from the complete (H,H) double coset census."""
    if h.is_trivial():
        return True, _cert("regular-orbit", "<=", 2, g, h, [identity(g.degree)])
    census = double_cosets(g, h, cap=cap)
    return _census_verdict(g, h, census)


def _census_verdict(g, h, census: DoubleCosetCensus):
    k2 = h.order ** 2
    for rep, size in census.entries:
        if size == k2:
            return True, _cert("regular-orbit", "<=", 2, g, h, [rep])
    reps = [rep for rep, _ in census.entries]
    return False, _cert("no-regular-orbit-census", ">=", 3, g, h, reps)


def partial_certificate_search(g: GeneratedGroup, h: GeneratedGroup,
                               source: RandomSource | None = None, budget: int = 10_000
                               ) -> BaseSizeCertificate | None:
    """Grow a set T of distinct non-regular double cosets until their sizes
    exceed ``|G| - |H|^2``; that rules out a regular orbit without a full census.

    Representatives are sampled at random; a new one is kept only if an
    explicit membership probe shows it lies outside every double coset in T.
    Returns None on budget exhaustion or if a regular double coset turns up
    (then no such T exists).
    """
    _require_subgroup(h, g)
    if h.is_trivial():
        return None
    source = source or RandomSource()
    k2 = h.order ** 2
    need = g.order - k2
    space = CosetSpace(g, h)
    reps: list[Permutation] = []
    total = 0
    candidates = [identity(g.degree)]
    for _ in range(budget):
        x = candidates.pop() if candidates else random_element(g, source)
        if any(in_double_coset(space, r, x) for r in reps):
            continue
        size = double_coset_size(h, x)
        if size == k2:
            return None
        reps.append(Permutation(x))
        total += size
        if total > need:
            return _cert("partial-certificate", ">=", 3, g, h, reps, source.seed, source.stream)
    return None


# -- exhaustive search ----------------------------------------------------

def _exhaustive(g: GeneratedGroup, h: GeneratedGroup, max_index: int, max_order: int):
    """Minimal base of the coset action by iterative deepening.

    Returns (b, base) with the base as coset indices of the action built by
    :func:`coset_action`, together with that action's coset space.
    """
    _require_subgroup(h, g)
    n = g.order // h.order
    if n > max_index or g.order > max_order:
        raise ValueError(f"exhaustive search limited to index <= {max_index} and "
                         f"order <= {max_order} (got {n}, {g.order})")
    if not is_core_free(g, h):
        raise ValueError("subgroup is not core-free: the coset action is not faithful")
    if h.is_trivial():
        return 1, [0], None
    action, space = coset_action(g, h)
    action = GeneratedGroup(action.generators, action.degree, order=g.order)
    stab0 = action.stabilizer(1)

    def dfs(group: GeneratedGroup, depth: int, path: list[int]):
        if group.is_trivial():
            return path
        if depth == 0:
            return None
        orbits = group.orbits()
        longest = max(len(o) for o in orbits)
        if longest ** depth < group.order:
            return None
        for orb in sorted(orbits, key=len, reverse=True):
            if len(orb) == 1:
                continue
            p = orb[0]
            found = dfs(group.stabilizer(p), depth - 1, path + [p - 1])
            if found is not None:
                return found
        return None

    depth = 1
    while True:
        found = dfs(stab0, depth, [0])
        if found is not None:
            return len(found), found, space
        depth += 1


def _action_elements(action: GeneratedGroup) -> np.ndarray:
    """Every element of a permutation group as a row of images (0-based)."""
    gens = [np.asarray(x.images, dtype=np.int32) - 1 for x in action.generators]
    start = np.arange(action.degree, dtype=np.int32)
    seen = {start.tobytes()}
    rows, frontier = [start], [start]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = s[x]
                key = y.tobytes()
                if key not in seen:
                    seen.add(key)
                    rows.append(y)
                    nxt.append(y)
        frontier = nxt
    return np.stack(rows)


def exhaustive_base_size(g: GeneratedGroup, h: GeneratedGroup,
                         max_index: int = EXHAUSTIVE_MAX_INDEX,
                         max_order: int = EXHAUSTIVE_LIST_MAX_ORDER) -> int:
    """Exact ``b(G,H)`` from a full element list of the coset action.

    Shares no search code with :func:`exact_base_size`: pointwise
    stabilizers are boolean masks over the element list, and only one point
    per orbit of the current stabilizer is tried at each depth.
    """
    _require_subgroup(h, g)
    n = g.order // h.order
    if n > max_index or g.order > max_order:
        raise ValueError(f"element listing limited to index <= {max_index} and "
                         f"order <= {max_order} (got {n}, {g.order})")
    if not is_core_free(g, h):
        raise ValueError("subgroup is not core-free: the coset action is not faithful")
    if h.is_trivial():
        return 1
    action, _ = coset_action(g, h)
    elems = _action_elements(action)
    if len(elems) != g.order:
        raise AssertionError(f"listed {len(elems)} elements, expected {g.order}")

    def orbit_reps(mask):
        sub = elems[mask]
        seen = np.zeros(n, dtype=bool)
        reps = []
        for p in range(n):
            if not seen[p]:
                orb = np.unique(sub[:, p])
                seen[orb] = True
                if len(orb) > 1:
                    reps.append((len(orb), p))
        return sorted(reps, reverse=True)

    def reachable(mask, depth):
        size = int(mask.sum())
        if size == 1:
            return True
        if depth == 0:
            return False
        reps = orbit_reps(mask)
        if reps[0][0] ** depth < size:
            return False
        return any(reachable(mask & (elems[:, p] == p), depth - 1) for _, p in reps)

    stab = elems[:, 0] == 0
    depth = 1
    while not reachable(stab, depth):
        depth += 1
    return depth + 1


# -- probabilities over small actions ------------------------------------

def _count_bases(group: GeneratedGroup, n: int, c: int) -> int:
    """Number of c-tuples of points whose pointwise stabilizer is trivial."""
    if group.is_trivial():
        return n ** c
    if c == 0:
        return 0
    total = 0
    fixed = 0
    for orb in group.orbits():
        if len(orb) == 1:
            fixed += 1
        else:
            total += len(orb) * _count_bases(group.stabilizer(orb[0]), n, c - 1)
    if fixed:
        total += fixed * _count_bases(group, n, c - 1)
    return total


def non_base_probability(g: GeneratedGroup, h: GeneratedGroup, c: int,
                         max_index: int = 200) -> Fraction:
    """Probability that c independent uniform cosets of ``h`` do not form a
    base, by counting tuples in the coset action."""
    if c < 1:
        raise ValueError("c must be positive")
    _require_subgroup(h, g)
    n = g.order // h.order
    if n > max_index:
        raise ValueError(f"index {n} exceeds {max_index}")
    action, _ = coset_action(g, h)
    action = GeneratedGroup(action.generators, n, order=g.order)
    return 1 - Fraction(_count_bases(action, n, c), n ** c)


def action_class_data(g: GeneratedGroup, h: GeneratedGroup, max_order: int = 20_000
                      ) -> tuple[ClassTable, SubgroupClassData]:
    """Prime-order classes of ``g`` and their meeting counts with ``h``, by
    listing elements.  Labels are element order plus a letter, by class size."""
    if g.order > max_order:
        raise ValueError(f"group order {g.order} exceeds {max_order}")
    _require_subgroup(h, g)
    seen: set[tuple[int, ...]] = set()
    found: dict[int, list[tuple[int, int]]] = {}
    gens = g.generators
    for x in g.elements():
        r = x.order()
        if x in seen or not is_prime(r):
            continue
        cls = [tuple(x)]
        seen.add(cls[0])
        for y in cls:
            for s in gens:
                z = conj(y, s)
                if z not in seen:
                    seen.add(z)
                    cls.append(z)
        in_h = sum(1 for y in cls if h.contains(y))
        found.setdefault(r, []).append((len(cls), in_h))
    table = ClassTable(g.name or "G", g.order)
    data = SubgroupClassData(h.name or "H", table.name, h.order)
    table.add("1A", 1, 1)
    data.counts["1A"] = 1
    for r in sorted(found):
        for i, (size, in_h) in enumerate(sorted(found[r])):
            lab = f"{r}{chr(ord('A') + i) if i < 26 else i}"
            table.add(lab, r, size)
            data.counts[lab] = in_h
    return table, data


# -- combined driver ------------------------------------------------------

def _exhaustive_allowed(g, h, policy: Policy) -> bool:
    if policy.exhaustive == "never":
        return False
    if policy.exhaustive == "always":
        return True
    return g.order // h.order <= EXHAUSTIVE_MAX_INDEX and g.order <= EXHAUSTIVE_MAX_ORDER


def exact_base_size(g: GeneratedGroup, h: GeneratedGroup, policy: Policy | None = None,
                    hints: Iterable[Sequence[Sequence[int]]] = ()) -> BaseSizeResult:
    """Bracket ``b(G,H)`` and close the bracket where possible.

    Order of work: the index bound; the exhaustive search if allowed (it
    yields both the exact value and a witness); a double coset census (or a
    partial certificate) when only ``b >= 2`` is known; then random witness
    searches for c = lower, lower+1, ... up to ``policy.max_c``.  ``hints``
    are conjugator lists to try before searching (e.g. witnesses for an
    overgroup).
    """
    policy = policy or Policy()
    _require_subgroup(h, g)
    if not is_core_free(g, h):
        raise ValueError(f"{h.name or 'h'} is not core-free in {g.name or 'g'}")
    if h.is_trivial():
        return BaseSizeResult(1, 1, [_cert("witness", "<=", 1, g, h)])

    index = g.order // h.order
    lower = lower_bound(g.order, index)
    certs = [_cert("lower-bound", ">=", lower, g, h)]
    upper = None

    if lower <= 2:
        if index <= policy.census_cap:
            regular, cert = has_regular_orbit(g, h, policy.census_cap)
        else:
            cert = partial_certificate_search(g, h, RandomSource(policy.seed, 1),
                                              policy.partial_budget)
            regular = False
        if cert is not None:
            certs.append(cert)
            if regular:
                upper = 2
            else:
                lower = 3

    if upper is None and _exhaustive_allowed(g, h, policy):
        b, base, space = _exhaustive(g, h, index, g.order)
        xs = [space.representative(p) for p in base[1:]]
        certs.append(_cert("witness" if b > 2 else "regular-orbit", "<=", b, g, h, xs))
        certs.append(_cert("exhaustive", "=", b, g, h))
        lower = upper = b

    if upper is None:
        for xs in hints:
            if len(xs) + 1 >= lower and verify_witness(g, h, xs):
                if upper is None or len(xs) + 1 < upper:
                    upper = len(xs) + 1
                    certs.append(_cert("witness" if upper > 2 else "regular-orbit",
                                       "<=", upper, g, h, xs))
        c = lower
        while (upper is None or c < upper) and c <= policy.max_c:
            found = witness_search(g, h, c, policy.trials, RandomSource(policy.seed, c),
                                   policy.workers)
            if found is not None:
                certs.append(found)
                upper = c
                break
            c += 1

    if upper is None:
        upper = h.order.bit_length()
        certs.append(_cert("length-bound", "<=", upper, g, h))
    return BaseSizeResult(lower, upper, certs)


def descend_bound(g: GeneratedGroup, chain: Sequence[GeneratedGroup], target_c: int,
                  trials: int = 10_000, source: RandomSource | None = None,
                  workers: int = 1) -> BaseSizeCertificate | None:
    """Witness for the first group in a descending chain that admits one.

    A witness for J is a witness for every subgroup of J, since the
    intersection of conjugates only shrinks.
    """
    for j in chain:
        _require_subgroup(j, g)
        cert = witness_search(g, j, target_c, trials, source, workers)
        if cert is not None:
            return cert
    return None


# -- surveys --------------------------------------------------------------

@dataclass
class SurveyRow:
    name: str
    order: int
    soluble: bool
    core_free: bool
    result: BaseSizeResult | None


@dataclass
class Survey:
    group: str
    rows: list[SurveyRow]

    def _results(self):
        return [r.result for r in self.rows if r.result is not None]

    @property
    def s_lower(self) -> int | None:
        res = self._results()
        return max(r.lower for r in res) if res else None

    @property
    def s_upper(self) -> int | None:
        res = self._results()
        return max(r.upper for r in res) if res else None

    @property
    def s(self) -> int | None:
        """Largest base size over the soluble core-free entries, if pinned down."""
        lo, hi = self.s_lower, self.s_upper
        return lo if lo == hi else None


def survey(g: GeneratedGroup, catalog: Sequence[GeneratedGroup],
           policy: Policy | None = None) -> Survey:
    """Base sizes over the soluble core-free members of a subgroup catalog.

    Witnesses found for larger entries are offered as hints to the entries
    they contain.
    """
    policy = policy or Policy()
    entries = sorted(catalog, key=lambda h: (-h.order, h.name or ""))
    rows = []
    done: list[tuple[GeneratedGroup, BaseSizeResult]] = []
    for h in entries:
        _require_subgroup(h, g)
        sol = is_soluble(h)
        cf = is_core_free(g, h)
        result = None
        if sol and cf:
            hints = [c.conjugators for j, res in done if h.is_subgroup_of(j)
                     for c in res.certificates if c.kind in ("witness", "regular-orbit")]
            result = exact_base_size(g, h, policy, hints)
            done.append((h, result))
        rows.append(SurveyRow(h.name or "H", h.order, sol, cf, result))
    return Survey(g.name or "G", rows)
