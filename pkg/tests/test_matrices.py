import random
from fractions import Fraction

import pytest

from clonegroups.core import Element, commutes, equals, is_identity, random_element
from clonegroups.matrices import (
    Ring,
    as_matrix,
    format_matrix,
    homothety_ratio,
    identity_matrix,
    instance_Abels,
    instance_B,
    instance_Bbar,
    mat_inv,
    mat_mul,
    mtx_clone,
    mtx_unclone,
    parse_matrix,
    scalar_matrix,
)
from clonegroups.trees import leaf, parse_tree

FIVE = as_matrix(
    [
        [1, 2, 3, 4, 5],
        [0, 6, 7, 8, 9],
        [0, 0, 10, 11, 12],
        [0, 0, 0, 13, 14],
        [0, 0, 0, 0, 15],
    ]
)
SEVEN = as_matrix(
    [
        [1, 2, 3, 3, 3, 4, 5],
        [0, 6, 7, 7, 7, 8, 9],
        [0, 0, 10, 0, 0, 0, 0],
        [0, 0, 0, 10, 0, 0, 0],
        [0, 0, 0, 0, 10, 11, 12],
        [0, 0, 0, 0, 0, 13, 14],
        [0, 0, 0, 0, 0, 0, 15],
    ]
)


def test_displayed_example():
    assert mtx_clone(3, 3, FIVE) == SEVEN
    assert mtx_unclone(3, 3, SEVEN) == FIVE
    assert mtx_unclone(3, 2, SEVEN) is None


def test_clone_of_identity():
    for d in (2, 3):
        for n in range(1, 5):
            for k in range(1, n + 1):
                assert mtx_clone(d, k, identity_matrix(n)) == identity_matrix(n + d - 1)


def test_diagonal_law():
    m = mtx_clone(3, 2, FIVE)
    assert [m[i][i] for i in range(7)] == [1, 6, 6, 6, 10, 13, 15]


def test_unclone_rejects_nonzero_row():
    m = [list(r) for r in mtx_clone(2, 2, FIVE)]
    m[1][4] = Fraction(1)
    assert mtx_unclone(2, 2, as_matrix(m)) is None


@pytest.mark.parametrize("d", [2, 3])
def test_unclone_round_trip(d):
    s = instance_B(Ring(), d)
    rng = random.Random(d)
    for _ in range(200):
        n = rng.randint(1, 5)
        a = s.sample(n, rng)
        k = rng.randint(1, n)
        assert mtx_unclone(d, k, mtx_clone(d, k, a)) == a


def test_inverse_and_product():
    s = instance_B()
    rng = random.Random(1)
    for _ in range(50):
        a = s.sample(4, rng)
        assert mat_mul(a, mat_inv(a)) == identity_matrix(4)


def test_ring():
    r = Ring(3)
    assert r.contains(Fraction(5, 9)) and not r.contains(Fraction(1, 2))
    assert r.is_unit(Fraction(-1, 27)) and not r.is_unit(Fraction(2))
    assert Ring().is_unit(Fraction(2, 7)) and not Ring().is_unit(0)
    with pytest.raises(ValueError):
        Ring(4)


def test_matrix_text():
    text = "1 2/3; 0 -5"
    m = parse_matrix(text)
    assert format_matrix(m) == text
    with pytest.raises(ValueError):
        parse_matrix("1 2; 0")


def test_scalar_element_is_central():
    s = instance_B()
    rng = random.Random(2)
    z = Element(s, leaf(2), scalar_matrix(1, 2), leaf(2))
    assert not is_identity(z)
    for _ in range(100):
        assert commutes(z, random_element(s, rng))


def test_scalar_is_trivial_in_quotient():
    s = instance_Bbar()
    t = parse_tree("(L(LL))", 2)
    assert equals(Element(s, t, scalar_matrix(3, 2), t), s.one())
    assert homothety_ratio(scalar_matrix(3, 2), identity_matrix(3)) == 2


def test_quotient_needs_unit_ratio():
    s = instance_Bbar(Ring(3))
    assert s.eq(2, scalar_matrix(2, 3), identity_matrix(2))
    assert not s.eq(2, scalar_matrix(2, Fraction(1, 3)) , scalar_matrix(2, 2))


def test_clone_preserves_homotheties():
    for d in (2, 3):
        for n in range(1, 5):
            for k in range(1, n + 1):
                assert mtx_clone(d, k, scalar_matrix(n, 5)) == scalar_matrix(n + d - 1, 5)


def test_abels_guard():
    s = instance_Abels(2)
    bad = as_matrix([[2, 0], [0, 1]])
    with pytest.raises(ValueError):
        s.element(parse_tree("(LL)", 2), bad, parse_tree("(LL)", 2))
    with pytest.raises(ValueError):
        instance_Abels(6)


def test_ring_membership_guard():
    s = instance_B(Ring(2))
    with pytest.raises(ValueError):
        s.validate(2, as_matrix([[1, Fraction(1, 3)], [0, 1]]))
    with pytest.raises(ValueError):
        s.validate(2, as_matrix([[3, 0], [0, 1]]))
