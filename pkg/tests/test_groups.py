import pytest

from basesize.groups import (CosetSpace, GeneratedGroup, IndexCapExceeded, RandomSource,
                             coset_action, random_element)
from basesize.perms import Permutation

from conftest import build


def test_random_source_reproducible():
    g = build("M11")
    a = [random_element(g, RandomSource(7, 3)) for _ in range(1)]
    xs = RandomSource(7, 3)
    ys = RandomSource(7, 3)
    assert [random_element(g, xs) for _ in range(20)] == [random_element(g, ys) for _ in range(20)]
    assert a[0] == random_element(g, RandomSource(7, 3))


def test_streams_differ():
    g = build("M11")
    xs = [random_element(g, RandomSource(7, 0)) for _ in range(5)]
    ys = [random_element(g, RandomSource(7, 1)) for _ in range(5)]
    assert xs != ys


def test_spawned_streams_distinct():
    src = RandomSource(1, 0)
    assert len({src.spawn(w).stream for w in range(8)}) == 8


def test_random_elements_lie_in_group_and_spread():
    g = build("M12")
    src = RandomSource(3)
    xs = [random_element(g, src) for _ in range(300)]
    assert all(g.contains(x) for x in xs)
    # element orders of M12 are 1,2,3,4,5,6,8,10,11; a decent sampler hits most
    assert len({x.order() for x in xs}) >= 7


def test_coset_action_is_transitive_and_faithful():
    g = build("M11")
    h = build("M11/3^2:SD16")
    action, space = coset_action(g, h)
    assert action.degree == 55
    assert action.is_transitive()
    assert action.order == 7920
    # the stabilizer of coset H is H acting on the cosets
    assert action.stabilizer(1).order == 144


def test_coset_keys_are_canonical():
    g = build("M11")
    h = build("M11/2.S4")
    space = CosetSpace(g, h)
    src = RandomSource(5)
    for _ in range(20):
        x = random_element(g, src)
        y = random_element(h, src)
        assert space.canonical(y * x) == space.canonical(x)


def test_index_cap():
    g = build("M24")
    h = GeneratedGroup([Permutation.identity(24)], 24)
    with pytest.raises(IndexCapExceeded):
        CosetSpace(g, h, cap=1000)


def test_elements_enumerates_each_once():
    g = build("S4wrS2")
    els = list(g.elements())
    assert len(els) == len(set(els)) == 1152
