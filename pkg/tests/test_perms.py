import pytest
from hypothesis import given, strategies as st

from basesize.perms import Permutation, compose, element_order, invert, power


def perms(n):
    return st.permutations(range(n)).map(Permutation)


def test_from_images_is_one_based():
    p = Permutation.from_images([2, 3, 1])
    assert p(1) == 2 and p(3) == 1
    assert p.images == (2, 3, 1)


def test_not_a_bijection_rejected():
    with pytest.raises(ValueError):
        Permutation.from_images([1, 1, 2])


def test_cycles_round_trip():
    p = Permutation.parse("(1,3,5)(2,4)", 6)
    assert repr(p) == "(1,3,5)(2,4)"
    assert p.cycle_type() == (3, 2)
    assert Permutation.from_cycles(6, p.cycles()) == p


def test_identity_repr_and_order():
    e = Permutation.identity(4)
    assert repr(e) == "()"
    assert e.order() == 1
    assert Permutation.parse("()", 4) == e


def test_product_acts_left_to_right():
    a = Permutation.parse("(1,2)", 3)
    b = Permutation.parse("(2,3)", 3)
    # 1 -> 2 under a, then 2 -> 3 under b
    assert (a * b)(1) == 3
    assert compose(a, b) == a * b


def test_element_order_is_lcm_of_cycle_lengths():
    assert element_order(Permutation.parse("(1,2)(3,4,5)", 6)) == 6
    assert element_order(Permutation.parse("(1,2,3,4)(5,6)", 6)) == 4


def test_sign():
    assert Permutation.parse("(1,2)", 3).sign() == -1
    assert Permutation.parse("(1,2,3)", 3).sign() == 1


@given(perms(7), perms(7), perms(7))
def test_associative(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(perms(8))
def test_inverse(a):
    e = Permutation.identity(8)
    assert a * invert(a) == e == invert(a) * a
    assert ~a == a.inverse()


@given(perms(8))
def test_order_annihilates(a):
    k = element_order(a)
    assert power(a, k).is_identity()
    assert all(not power(a, d).is_identity() for d in range(1, k))


@given(perms(6), perms(6))
def test_conjugate_preserves_cycle_type(a, x):
    assert a.conjugate(x).cycle_type() == a.cycle_type()
    assert a.conjugate(x) == invert(x) * a * x


@given(perms(6), st.integers(-5, 5), st.integers(-5, 5))
def test_power_laws(a, i, j):
    assert power(a, i) * power(a, j) == power(a, i + j)
