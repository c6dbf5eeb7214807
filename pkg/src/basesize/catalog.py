"""Fixture groups: small toys, the Mathieu groups, and soluble subgroups of them.

Every subgroup is built by a reproducible construction (stabilizers,
centralizers, Sylow normalizers) and its order is checked on creation.
Generators of the Mathieu groups are the standard ones used by GAP's
``MathieuGroup``.
"""

from __future__ import annotations

from functools import lru_cache

from .groups import GeneratedGroup, RandomSource
from .perms import Permutation
from .subgroups import (centralizer, normalizer, partition_stabilizer, set_stabilizer,
                        sylow_subgroup)

MATHIEU_GENERATORS = {
    "M11": (11, ["(1,2,3,4,5,6,7,8,9,10,11)", "(3,7,11,8)(4,10,5,6)"]),
    "M12": (12, ["(1,2,3,4,5,6,7,8,9,10,11)", "(3,7,11,8)(4,10,5,6)",
                 "(1,12)(2,11)(3,6)(4,8)(5,9)(7,10)"]),
    "M22": (22, ["(1,2,3,4,5,6,7,8,9,10,11)(12,13,14,15,16,17,18,19,20,21,22)",
                 "(1,4,5,9,3)(2,8,10,7,6)(12,15,16,20,14)(13,19,21,18,17)",
                 "(1,21)(2,10,8,6)(3,13,4,17)(5,19,9,18)(11,22)(12,14,16,20)"]),
    "M24": (24, ["(1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16,17,18,19,20,21,22,23)",
                 "(3,17,10,7,9)(4,13,14,19,5)(8,18,11,12,23)(15,20,22,21,16)",
                 "(1,24)(2,23)(3,12)(4,16)(5,18)(6,10)(7,20)(8,14)(9,21)(11,17)(13,22)(15,19)"]),
}

MATHIEU_ORDERS = {"M11": 7920, "M12": 95040, "M22": 443520, "M24": 244823040}


def _named(g: GeneratedGroup, name: str, order: int) -> GeneratedGroup:
    if g.order != order:
        raise RuntimeError(f"construction of {name} gave order {g.order}, expected {order}")
    return GeneratedGroup(g.generators, g.degree, name=name, order=order)


def from_cycles(name: str, degree: int, cycles: list[str], order: int | None = None
                ) -> GeneratedGroup:
    g = GeneratedGroup([Permutation.parse(c, degree) for c in cycles], degree,
                       name=name, order=order)
    return g


def symmetric_group(n: int) -> GeneratedGroup:
    gens = [Permutation.from_cycles(n, [range(1, n + 1)])]
    if n > 2:
        gens.append(Permutation.from_cycles(n, [(1, 2)]))
    elif n == 2:
        gens = [Permutation.from_cycles(2, [(1, 2)])]
    return GeneratedGroup(gens, n, name=f"S{n}")


def alternating_group(n: int) -> GeneratedGroup:
    gens = [Permutation.from_cycles(n, [(1, 2, i)]) for i in range(3, n + 1)]
    return GeneratedGroup(gens, n, name=f"A{n}")


@lru_cache(maxsize=None)
def mathieu(name: str) -> GeneratedGroup:
    degree, cycles = MATHIEU_GENERATORS[name]
    return from_cycles(name, degree, cycles, MATHIEU_ORDERS[name])


# -- toys -----------------------------------------------------------------

def s4_wreath_s2() -> GeneratedGroup:
    """S4 wr S2 inside S8: stabilizer of the partition {1..4 | 5..8}."""
    h = partition_stabilizer(symmetric_group(8), [range(1, 5), range(5, 9)])
    return _named(h, "S4wrS2", 1152)


# -- M11 ------------------------------------------------------------------

def m11_sylow3_normalizer() -> GeneratedGroup:
    """3^2:SD16, the normalizer of a Sylow 3-subgroup (maximal, index 55)."""
    m11 = mathieu("M11")
    p = sylow_subgroup(m11, 3, RandomSource(11, 3))
    return _named(normalizer(m11, p), "3^2:SD16", 144)


def m11_involution_centralizer() -> GeneratedGroup:
    """2.S4, the centralizer of an involution (maximal, index 165)."""
    m11 = mathieu("M11")
    x = _first_of_type(m11, (2, 2, 2, 2), RandomSource(11, 2))
    return _named(centralizer(m11, x), "2.S4", 48)


def m11_sylow2() -> GeneratedGroup:
    return _named(sylow_subgroup(mathieu("M11"), 2, RandomSource(11, 16)), "SD16", 16)


# -- M12 ------------------------------------------------------------------

def m12_2b_centralizer() -> GeneratedGroup:
    """2^(1+4).S3: centralizer of an involution fixing 4 points (2B), index 495."""
    m12 = mathieu("M12")
    x = _first_of_type(m12, (2, 2, 2, 2), RandomSource(12, 2))
    return _named(centralizer(m12, x), "2^(1+4).S3", 192)


def m12_4_2_d12() -> GeneratedGroup:
    """4^2:D12, the normalizer of the 4x4 subgroup of a Sylow 2-subgroup, index 495."""
    m12 = mathieu("M12")
    p = sylow_subgroup(m12, 2, RandomSource(12, 64))
    a = _homocyclic_4x4(p)
    return _named(normalizer(m12, a), "4^2:D12", 192)


def m12_3_2_2s4() -> GeneratedGroup:
    """3^2:2S4, the stabilizer of a 3-set (index 220)."""
    return _named(set_stabilizer(mathieu("M12"), [1, 2, 3]), "3^2:2S4", 432)


# -- M22 ------------------------------------------------------------------

def m22_hexad(a: int = 1, b: int = 2, c: int = 3) -> list[int]:
    """The hexad of the Steiner system S(3,6,22) through three points."""
    m22 = mathieu("M22")
    ch = m22.chain_with_base((a - 1, b - 1, c - 1))
    stab = GeneratedGroup(ch.stabilizer_generators(3), 22, order=ch.stabilizer_order(3))
    (rest,) = [o for o in stab.orbits() if len(o) == 3]
    return sorted([a, b, c, *rest])


def m22_hexad_stabilizer() -> GeneratedGroup:
    """2^4:A6, the setwise stabilizer of a hexad (index 77)."""
    return _named(set_stabilizer(mathieu("M22"), m22_hexad()), "2^4:A6", 5760)


def m22_duad_stabilizer() -> GeneratedGroup:
    """2^4:S5, the stabilizer of a 2-set (index 231)."""
    return _named(set_stabilizer(mathieu("M22"), [1, 2]), "2^4:S5", 1920)


def m22_2_4_s4() -> GeneratedGroup:
    """2^4:S4 = (hexad stabilizer) meets (stabilizer of a duad in that hexad), index 1155."""
    hexad = m22_hexad()
    hs = m22_hexad_stabilizer()
    return _named(set_stabilizer(hs, hexad[:2]), "2^4:S4", 384)


# -- M24 ------------------------------------------------------------------

def m24_octad(points: list[int]) -> list[int]:
    """The octad of the Steiner system S(5,8,24) through five points."""
    m24 = mathieu("M24")
    ch = m24.chain_with_base(tuple(p - 1 for p in points))
    stab = GeneratedGroup(ch.stabilizer_generators(5), 24, order=ch.stabilizer_order(5))
    (rest,) = [o for o in stab.orbits() if len(o) == 3]
    return sorted([*points, *rest])


def m24_sextet(tetrad: list[int]) -> list[list[int]]:
    """The six tetrads of the sextet containing ``tetrad``."""
    tets = [sorted(tetrad)]
    seen = set(tetrad)
    for p in range(1, 25):
        if p not in seen:
            t = [x for x in m24_octad([*tetrad, p]) if x not in tetrad]
            tets.append(t)
            seen.update(t)
    return tets


def m24_sextet_stabilizer() -> GeneratedGroup:
    """2^6:3.S6, the stabilizer of a sextet (index 1771)."""
    tets = m24_sextet([1, 2, 3, 4])
    return _named(partition_stabilizer(mathieu("M24"), tets), "2^6:3.S6", 138240)


def m24_2_6_3_s3wrs2() -> GeneratedGroup:
    """2^6:3.(S3 wr S2): sextet stabilizer meets the stabilizer of a split of the
    six tetrads into two triples (index 17710)."""
    tets = m24_sextet([1, 2, 3, 4])
    x = m24_sextet_stabilizer()
    halves = [tets[0] + tets[1] + tets[2], tets[3] + tets[4] + tets[5]]
    return _named(partition_stabilizer(x, halves), "2^6:3.(S3wrS2)", 13824)


# -- helpers --------------------------------------------------------------

def _first_of_type(g: GeneratedGroup, cycle_type: tuple[int, ...], source: RandomSource
                   ) -> Permutation:
    """A random element of ``g`` whose power is an element of the given cycle type."""
    for _ in range(100_000):
        x = g.random_element(source)
        k = x.order()
        for m in range(1, k + 1):
            if k % m == 0:
                y = x ** (k // m)
                if y.cycle_type() == cycle_type:
                    return y
    raise RuntimeError(f"no element of cycle type {cycle_type} found")


def _homocyclic_4x4(p: GeneratedGroup) -> GeneratedGroup:
    els = [x for x in p.elements() if x.order() == 4]
    for i, a in enumerate(els):
        for b in els[i + 1:]:
            if a * b != b * a:
                continue
            sub = GeneratedGroup([a, b], p.degree)
            if sub.order == 16 and all(y.order() <= 4 for y in sub.elements()):
                return sub
    raise RuntimeError("no subgroup 4x4 found")


BUILDERS = {
    "S8": lambda: symmetric_group(8),
    "S4wrS2": s4_wreath_s2,
    "M11": lambda: mathieu("M11"),
    "M11/3^2:SD16": m11_sylow3_normalizer,
    "M11/2.S4": m11_involution_centralizer,
    "M11/SD16": m11_sylow2,
    "M12": lambda: mathieu("M12"),
    "M12/2^(1+4).S3": m12_2b_centralizer,
    "M12/4^2:D12": m12_4_2_d12,
    "M12/3^2:2S4": m12_3_2_2s4,
    "M22": lambda: mathieu("M22"),
    "M22/2^4:A6": m22_hexad_stabilizer,
    "M22/2^4:S5": m22_duad_stabilizer,
    "M22/2^4:S4": m22_2_4_s4,
    "M24": lambda: mathieu("M24"),
    "M24/2^6:3.S6": m24_sextet_stabilizer,
    "M24/2^6:3.(S3wrS2)": m24_2_6_3_s3wrs2,
}
