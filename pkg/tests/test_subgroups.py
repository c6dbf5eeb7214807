import random

import pytest
from hypothesis import given, settings, strategies as st

from basesize.groups import CosetSpace, GeneratedGroup, RandomSource, random_element
from basesize.perms import Permutation
from basesize.subgroups import (centralizer, conjugate_subgroup, core_in, derived_subgroup,
                                double_coset_size, double_cosets, in_double_coset, intersect, intersection_is_trivial,
                                is_core_free, is_normal, is_soluble, normalizer,
                                set_stabilizer, sylow_subgroup)

from conftest import build, random_pairs

# (K,K) double coset sizes, exported once from GAP 4 (DoubleCosetRepsAndSizes)
ORACLE_DOUBLE_COSETS = {
    ("S8", "S4wrS2"): [1152, 18432, 20736],
    ("M11", "M11/3^2:SD16"): [144, 2592, 5184],
    ("M11", "M11/2.S4"): [48, 384, 576, 1152, 1152, 1152, 1152, 2304],
    ("M12", "M12/2^(1+4).S3"): [192, 1152, 3072, 4608, 6144, 6144, 9216, 9216, 18432,
                                18432, 18432],
    ("M12", "M12/3^2:2S4"): [432, 5184, 11664, 31104, 46656],
    ("M22", "M22/2^4:A6"): [5760, 92160, 345600],
    ("M22", "M22/2^4:S4"): [384, 1536, 2304, 3072, 9216, 9216, 12288, 12288, 18432, 18432,
                            36864, 49152, 49152, 73728, 73728, 73728],
    ("M24", "M24/2^6:3.S6"): [138240, 12441600, 33177600, 199065600],
}


def brute(g):
    return set(g.elements())


@pytest.mark.parametrize("key", sorted(ORACLE_DOUBLE_COSETS))
def test_double_coset_sizes_match_oracle(key):
    g, k = build(key[0]), build(key[1])
    census = double_cosets(g, k)
    assert census.complete
    assert sorted(census.sizes) == ORACLE_DOUBLE_COSETS[key]
    assert census.total == g.order
    assert census.check()


def test_double_coset_representatives_are_distinct():
    g, k = build("M11"), build("M11/2.S4")
    census = double_cosets(g, k)
    space = CosetSpace(g, k)
    reps = [r for r, _ in census.entries]
    assert reps[0].is_identity()
    for i, a in enumerate(reps):
        assert double_coset_size(k, a) == census.entries[i][1]
        for b in reps[i + 1:]:
            assert not in_double_coset(space, a, b)


def test_partial_census():
    g, k = build("M12"), build("M12/2^(1+4).S3")
    census = double_cosets(g, k, budget=60)
    assert not census.complete
    assert census.check()
    assert census.total < g.order
    assert set(census.sizes) <= set(ORACLE_DOUBLE_COSETS["M12", "M12/2^(1+4).S3"])


def test_no_regular_double_coset_for_m11_fixture():
    g, k = build("M11"), build("M11/3^2:SD16")
    census = double_cosets(g, k)
    assert not census.has_regular()
    assert census.summary() == {144: 1, 2592: 1, 5184: 1}


def test_soluble_and_core_free_flags():
    # frozen from GAP: IsSolvableGroup and Core
    for name, sol in [("M11/3^2:SD16", True), ("M12/3^2:2S4", True), ("M22/2^4:A6", False),
                      ("M22/2^4:S5", False), ("M24/2^6:3.(S3wrS2)", True),
                      ("M24/2^6:3.S6", False)]:
        amb = build(name.split("/")[0])
        h = build(name)
        assert is_soluble(h) is sol
        assert is_core_free(amb, h)
    assert not is_soluble(build("M11"))
    assert is_soluble(GeneratedGroup([Permutation.parse("(1,2,3,4)", 4)], 4))


def test_core_of_normal_subgroup_is_itself():
    s4 = GeneratedGroup([Permutation.parse("(1,2,3,4)", 4), Permutation.parse("(1,2)", 4)], 4)
    v4 = GeneratedGroup([Permutation.parse("(1,2)(3,4)", 4), Permutation.parse("(1,3)(2,4)", 4)], 4)
    assert core_in(s4, v4).order == 4
    assert is_normal(s4, v4)
    assert derived_subgroup(s4).order == 12
    assert core_in(s4, s4.stabilizer(1)).order == 1


def test_sylow_subgroups_of_m11():
    g = build("M11")
    for p, size in [(2, 16), (3, 9), (5, 5), (11, 11)]:
        s = sylow_subgroup(g, p, RandomSource(p))
        assert s.order == size and s.is_subgroup_of(g)
    assert normalizer(g, sylow_subgroup(g, 3, RandomSource(1))).order == 144


def test_centralizer_of_involution_in_m11():
    g = build("M11")
    src = RandomSource(11)
    while True:
        x = random_element(g, src)
        if x.order() == 2:
            break
    assert centralizer(g, x).order == 48


def test_set_stabilizer_in_s8():
    g = build("S8")
    assert set_stabilizer(g, [1, 2, 3]).order == 6 * 120


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_intersection_matches_brute_force(seed):
    rng = random.Random(seed)
    n = 6
    gens = lambda k: [Permutation(rng.sample(range(n), n)) for _ in range(k)]
    h = GeneratedGroup(gens(rng.randint(1, 2)), n)
    k = GeneratedGroup(gens(rng.randint(1, 2)), n)
    both = intersect(h, k)
    assert brute(both) == brute(h) & brute(k)
    assert intersection_is_trivial(h, k) == (both.order == 1)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_conjugate_subgroup(seed):
    rng = random.Random(seed)
    h = GeneratedGroup([Permutation(rng.sample(range(6), 6))], 6)
    x = Permutation(rng.sample(range(6), 6))
    hx = conjugate_subgroup(h, x)
    assert brute(hx) == {y.conjugate(x) for y in brute(h)}


def test_double_coset_partition_on_random_pairs():
    for g, k in random_pairs(60):
        census = double_cosets(g, k)
        assert census.total == g.order
        assert census.check()
