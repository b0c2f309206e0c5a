import random

import pytest

from clonegroups.braids import (
    BraidWord,
    artin_images,
    braid_clone,
    braid_eq,
    braid_inv,
    braid_mul,
    delete_strand,
    free_reduce,
    instance_bF,
    instance_bV,
    parse_braid,
    pure_generator,
    random_braid,
    strand_perm,
)
from clonegroups.core import Element, equals, expand, reduce
from clonegroups.permutation import Permutation, sigma_clone
from clonegroups.trees import parse_tree

bV = instance_bV(2)


def B(text, n):
    return parse_braid(text, n)


def P(text):
    return parse_tree(text, 2)


def braid_expansion_pair(reading):
    """The two triples of the braid expansion picture under the two strand readings."""
    left, right = ("1 -2", "1 -2 -3") if reading == "A" else ("2 -1", "3 2 -1")
    a = Element(bV, P("(L(LL))"), B(left, 3), P("((LL)L)"))
    b = Element(bV, P("(L((LL)L))"), B(right, 4), P("((LL)(LL))"))
    return a, b


def _subst(imgs, word):
    out = []
    for a in word:
        w = imgs[abs(a) - 1]
        out.extend(w if a > 0 else [-c for c in reversed(w)])
    return free_reduce(out)


def test_artin_examples():
    assert artin_images(BraidWord(3)) == ((1,), (2,), (3,))
    assert artin_images(B("1", 2)) == ((1, 2, -1), (1,))
    assert artin_images(B("1 2 1", 3)) == artin_images(B("2 1 2", 3))


def test_braid_eq_examples():
    assert braid_eq(B("1 -1", 2), BraidWord(2))
    assert braid_eq(B("1 2 1", 3), B("2 1 2", 3))
    assert not braid_eq(B("1", 2), B("-1", 2))
    with pytest.raises(ValueError):
        braid_eq(B("1", 2), B("1", 3))


@pytest.mark.parametrize("n", range(2, 7))
def test_braid_relations(n):
    for i in range(1, n):
        for j in range(1, n):
            if abs(i - j) >= 2:
                assert braid_eq(B(f"{i} {j}", n), B(f"{j} {i}", n))
        if i + 1 < n:
            assert braid_eq(B(f"{i} {i + 1} {i}", n), B(f"{i + 1} {i} {i + 1}", n))
        assert not braid_eq(B(f"{i} {i}", n), BraidWord(n))


def test_artin_action_is_a_homomorphism():
    rng = random.Random(5)
    for _ in range(300):
        n = rng.randint(2, 6)
        u, v = random_braid(n, rng.randint(0, 6), rng), random_braid(n, rng.randint(0, 6), rng)
        joined = BraidWord(n, u.letters + v.letters)
        au, av = artin_images(u), artin_images(v)
        assert artin_images(joined) == tuple(_subst(au, w) for w in av)


def test_mul_and_inverse():
    rng = random.Random(6)
    for _ in range(100):
        n = rng.randint(2, 5)
        g = random_braid(n, 5, rng)
        assert braid_eq(braid_mul(g, braid_inv(g)), BraidWord(n))
        h = random_braid(n, 5, rng)
        assert strand_perm(braid_mul(g, h)) == strand_perm(g) * strand_perm(h)


def test_strand_perm_examples():
    assert strand_perm(BraidWord(3)).is_identity()
    assert strand_perm(B("1", 2)) == Permutation((2, 1))
    assert strand_perm(B("2 1", 3)) == Permutation((2, 3, 1))


def test_clone_examples():
    assert braid_clone(2, 1, BraidWord(3)) == BraidWord(4)
    assert braid_clone(2, 1, B("1", 2)) == B("2 1", 3)
    with pytest.raises(IndexError):
        braid_clone(2, 3, B("1", 2))


@pytest.mark.parametrize("d", [2, 3])
def test_clone_is_compatible_with_sigma(d):
    rng = random.Random(d)
    for _ in range(500):
        n = rng.randint(1, 5)
        b = random_braid(n, rng.randint(0, 6), rng)
        k = rng.randint(1, n)
        assert strand_perm(braid_clone(d, k, b)) == sigma_clone(d, n, k, strand_perm(b))


def test_delete_strand_examples():
    assert delete_strand(BraidWord(3), 2) == BraidWord(2)
    assert delete_strand(B("2 1", 3), 2) == B("1", 2)
    rng = random.Random(7)
    for _ in range(30):
        b = random_braid(4, 8, rng)
        for _ in range(3):
            b = delete_strand(b, rng.randint(1, b.n))
        assert b == BraidWord(1)


@pytest.mark.parametrize("d", [2, 3])
def test_unclone_round_trip(d):
    s = instance_bV(d)
    rng = random.Random(10 + d)
    for _ in range(200):
        n = rng.randint(1, 5)
        b = random_braid(n, rng.randint(0, 6), rng)
        k = rng.randint(1, n)
        back = s.unclone(n, k, s.clone(n, k, b))
        assert back is not None and braid_eq(back, b)


def test_unclone_rejects_non_parallel_band():
    # strands 1 and 2 twist around each other, so the band at k=1 is not parallel
    assert bV.unclone(2, 1, B("1 1 2", 3)) is None


def test_pure_generators_are_pure():
    for n in range(2, 6):
        for i in range(1, n):
            for j in range(i + 1, n + 1):
                assert strand_perm(pure_generator(n, i, j)).is_identity()


def test_pure_membership_guard():
    with pytest.raises(ValueError):
        instance_bF(2).element(P("(LL)"), B("1", 2), P("(LL)"))


def test_figure_three_expansion():
    a, b = braid_expansion_pair("A")
    e = expand(a, 3)
    assert (e.minus, e.plus) == (b.minus, b.plus) and braid_eq(e.middle, b.middle)
    r = reduce(b)
    assert (r.minus, r.plus) == (a.minus, a.plus)
    assert equals(a, b)


def test_figure_three_other_reading_fails():
    a, b = braid_expansion_pair("B")
    assert not equals(a, b)


def test_text():
    assert str(B("2 1 -3", 4)) == "2 1 -3"
    with pytest.raises(ValueError):
        B("3", 3)
