import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from clonegroups.trees import (
    Tree,
    add_caret,
    agree_away_from,
    all_trees,
    bottom_carets,
    caret,
    format_tree,
    graft,
    join,
    leaf,
    leaf_address,
    leaf_addresses,
    leaf_count,
    leaf_index,
    left_vine,
    parse_tree,
    random_tree,
    remove_caret,
    right_depth,
    right_vine,
    subtree_at,
)


def P(text, d=2):
    return parse_tree(text, d)


@st.composite
def trees(draw, d=None, max_carets=6):
    d = d or draw(st.integers(2, 4))
    t = leaf(d)
    for _ in range(draw(st.integers(0, max_carets))):
        t = add_caret(t, draw(st.integers(1, t.n_leaves)))
    return t


def test_leaf_counts():
    assert leaf_count(leaf(2)) == 1
    assert leaf_count(caret(2)) == 2
    # two carets drawn on the left of the V example
    assert leaf_count(P("(L(LL))")) == 3


def test_add_caret_examples():
    assert add_caret(leaf(2), 1) == caret(2)
    assert add_caret(caret(2), 2) == right_vine(2, 2)
    t = add_caret(caret(3), 1)
    assert t.n_leaves == 5 and format_tree(t) == "((LLL)LL)"


def test_add_caret_out_of_range():
    with pytest.raises(IndexError):
        add_caret(caret(2), 3)


def test_remove_caret_examples():
    assert remove_caret(caret(2), 1) == leaf(2)
    assert remove_caret(right_vine(2, 2), 2) == caret(2)
    with pytest.raises(ValueError):
        remove_caret(P("((LL)L)"), 2)


def test_bottom_carets_examples():
    assert bottom_carets(leaf(2)) == []
    assert bottom_carets(caret(2)) == [1]
    assert bottom_carets(P("((LL)L)")) == [1]
    assert bottom_carets(P("((LL)(LL))")) == [1, 3]


@given(trees(), st.data())
def test_caret_round_trip(t, data):
    k = data.draw(st.integers(1, t.n_leaves))
    s = add_caret(t, k)
    assert s.n_leaves == t.n_leaves + t.arity - 1
    assert remove_caret(s, k) == t
    assert k in bottom_carets(s)


def test_remove_add_round_trip_random():
    rng = random.Random(0)
    for _ in range(50):
        t = random_tree(rng.randint(2, 3), rng.randint(1, 6), rng)
        k = rng.choice(bottom_carets(t))
        assert add_caret(remove_caret(t, k), k) == t


@given(trees())
def test_leaf_count_congruence(t):
    assert (t.n_leaves - 1) % (t.arity - 1) == 0


def _expansions_within(t, n_max):
    """Every expansion of t with at most n_max leaves (breadth first)."""
    seen = {t}
    frontier = [t]
    while frontier:
        nxt = []
        for u in frontier:
            if u.n_leaves + u.arity - 1 > n_max:
                continue
            for k in range(1, u.n_leaves + 1):
                w = add_caret(u, k)
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return seen


def _replay(t, path):
    for k in path:
        t = add_caret(t, k)
    return t


def test_join_examples():
    t = P("((LL)L)")
    assert join(t, t) == (t, [], [])
    s, pt, pu = join(t, P("(L(LL))"))
    assert s == P("((LL)(LL))")
    s, pl, pr = join(leaf(2), t)
    assert s == t and len(pl) == 2 and pr == []


@pytest.mark.parametrize("d,carets", [(2, 3), (3, 2)])
def test_join_is_minimal_common_expansion(d, carets):
    pool = [t for c in range(carets + 1) for t in all_trees(d, c)]
    for t, u in itertools.product(pool, repeat=2):
        s, pt, pu = join(t, u)
        assert _replay(t, pt) == s and _replay(u, pu) == s
        bound = s.n_leaves
        common = _expansions_within(t, bound) & _expansions_within(u, bound)
        smallest = min(w.n_leaves for w in common)
        assert s.n_leaves == smallest
        assert [w for w in common if w.n_leaves == smallest] == [s]


@given(trees(d=2), trees(d=2))
def test_join_symmetric(t, u):
    assert join(t, u)[0] == join(u, t)[0]


def test_right_depth_examples():
    assert right_depth(leaf(2)) == 0
    assert right_depth(P("(L(LL))")) == 2
    assert right_depth(P("((LL)L)")) == 1


@pytest.mark.parametrize("d", [2, 3])
def test_right_depth_under_carets(d):
    for c in range(5 if d == 2 else 4):
        for t in all_trees(d, c):
            for k in range(1, t.n_leaves + 1):
                bump = right_depth(add_caret(t, k)) - right_depth(t)
                assert bump == (1 if k == t.n_leaves else 0)


def test_addresses():
    t = P("((LL)L)")
    assert leaf_addresses(t) == [(0, 0), (0, 1), (1,)]
    assert leaf_address(t, 2) == (0, 1)
    assert leaf_index(t, (1,)) == 3
    assert leaf_index(t, (0,)) is None
    assert subtree_at(t, (0,)) == caret(2)
    assert subtree_at(t, (1, 0)) is None
    assert leaf_addresses(right_vine(3, 2))[-1] == (2, 2)
    assert left_vine(2, 2) == P("((LL)L)")


def _agree_brute(t, u, v):
    """Search base trees R with a leaf at v from which both t and u arise by grafting."""
    d = t.arity
    max_c = max((t.n_leaves - 1) // (d - 1), (u.n_leaves - 1) // (d - 1))
    for c in range(max_c + 1):
        for r in all_trees(d, c):
            if leaf_index(r, v) is None:
                continue
            st_, su = subtree_at(t, v), subtree_at(u, v)
            if st_ is None or su is None:
                continue
            if graft(r, v, st_) == t and graft(r, v, su) == u:
                return True
    return False


def test_agree_away_from_examples():
    r = P("((LL)L)")
    assert agree_away_from(r, r, (1,))
    assert agree_away_from(add_caret(r, 3), r, (1,))
    assert not agree_away_from(P("((LL)(LL))"), P("(L(LL))"), (1,))


def test_agree_away_from_matches_brute_force():
    pool = [t for c in range(4) for t in all_trees(2, c)]
    addresses = [(), (0,), (1,), (0, 1), (1, 1), (1, 0, 1)]
    for t, u in itertools.product(pool, repeat=2):
        for v in addresses:
            assert agree_away_from(t, u, v) == _agree_brute(t, u, v), (t, u, v)


@given(trees())
def test_parse_format_round_trip(t):
    text = format_tree(t)
    assert " " not in text
    assert parse_tree(text, t.arity) == t
    spaced = " ".join(text)
    assert parse_tree(spaced, t.arity) == t


@pytest.mark.parametrize("bad", ["", "(L)", "(LLL)", "LL", "(L(LL)", "X"])
def test_parse_errors(bad):
    with pytest.raises(ValueError):
        parse_tree(bad, 2)


def test_mixed_arity_rejected():
    with pytest.raises(ValueError):
        Tree(2, (leaf(2), leaf(3)))


def test_all_trees_counts():
    # Fuss-Catalan numbers
    assert [len(list(all_trees(2, c))) for c in range(6)] == [1, 1, 2, 5, 14, 42]
    assert [len(list(all_trees(3, c))) for c in range(5)] == [1, 1, 3, 12, 55]
