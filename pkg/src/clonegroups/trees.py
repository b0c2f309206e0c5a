"""Finite rooted d-ary trees.

Every internal node has exactly ``d`` children.  Leaves are numbered
1..n from left to right and vertices are addressed by words over
``{0, ..., d-1}`` (child indices read from the root).

Text form: ``tree ::= "L" | "(" tree{d} ")"``, e.g. ``((LL)L)`` for d = 2.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

Address = tuple[int, ...]


@dataclass(frozen=True)
class Tree:
    arity: int
    children: Optional[tuple["Tree", ...]] = None
    n_leaves: int = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        if self.arity < 2:
            raise ValueError(f"arity must be >= 2, got {self.arity}")
        if self.children is None:
            n = 1
        else:
            if len(self.children) != self.arity:
                raise ValueError(
                    f"internal node needs {self.arity} children, got {len(self.children)}"
                )
            if any(c.arity != self.arity for c in self.children):
                raise ValueError("mixed arities in one tree")
            n = sum(c.n_leaves for c in self.children)
        object.__setattr__(self, "n_leaves", n)

    @property
    def is_leaf(self) -> bool:
        return self.children is None

    def __str__(self) -> str:
        return format_tree(self)


def leaf(d: int) -> Tree:
    return Tree(d)


def caret(d: int) -> Tree:
    return Tree(d, (Tree(d),) * d)


def leaf_count(t: Tree) -> int:
    return t.n_leaves


def _check_leaf(t: Tree, k: int) -> None:
    if not 1 <= k <= t.n_leaves:
        raise IndexError(f"leaf index {k} out of range 1..{t.n_leaves}")


def _replace_leaf(t: Tree, k: int, new: Tree) -> Tree:
    if t.children is None:
        return new
    kids = list(t.children)
    for i, c in enumerate(kids):
        if k <= c.n_leaves:
            kids[i] = _replace_leaf(c, k, new)
            break
        k -= c.n_leaves
    return Tree(t.arity, tuple(kids))


def add_caret(t: Tree, k: int) -> Tree:
    """Attach a d-caret to leaf ``k`` (1-based)."""
    _check_leaf(t, k)
    return _replace_leaf(t, k, caret(t.arity))


def _remove(t: Tree, k: int) -> Optional[Tree]:
    if t.children is None:
        return None
    if k == 1 and all(c.children is None for c in t.children):
        return Tree(t.arity)
    kids = list(t.children)
    for i, c in enumerate(kids):
        if k <= c.n_leaves:
            sub = _remove(c, k)
            if sub is None:
                return None
            kids[i] = sub
            return Tree(t.arity, tuple(kids))
        k -= c.n_leaves
    return None


def remove_caret(t: Tree, k: int) -> Tree:
    """Collapse the caret whose leaves are k..k+d-1.

    Raises ValueError if those leaves do not share a parent.
    """
    _check_leaf(t, k)
    out = _remove(t, k)
    if out is None:
        raise ValueError(f"leaves {k}..{k + t.arity - 1} do not form a caret")
    return out


def bottom_carets(t: Tree) -> list[int]:
    """Leaf indices k such that leaves k..k+d-1 share a parent, increasing."""
    out: list[int] = []

    def walk(s: Tree, offset: int) -> None:
        if s.children is None:
            return
        if all(c.children is None for c in s.children):
            out.append(offset)
            return
        for c in s.children:
            walk(c, offset)
            offset += c.n_leaves

    walk(t, 1)
    return out


def _union(a: Tree, b: Tree) -> Tree:
    if a.children is None:
        return b
    if b.children is None:
        return a
    return Tree(a.arity, tuple(_union(x, y) for x, y in zip(a.children, b.children)))


def expansion_path(t: Tree, s: Tree) -> list[int]:
    """Caret additions turning ``t`` into its expansion ``s``, leftmost first.

    Each entry is a leaf index in the tree obtained after the previous
    additions.  Raises ValueError if ``s`` is not an expansion of ``t``.
    """
    path: list[int] = []

    def walk(a: Tree, b: Tree, offset: int) -> None:
        if b.children is None:
            if a.children is not None:
                raise ValueError("target is not an expansion of the source")
            return
        if a.children is None:
            path.append(offset)
            a = caret(a.arity)
        for x, y in zip(a.children, b.children):
            walk(x, y, offset)
            offset += y.n_leaves

    walk(t, s, 1)
    return path


def join(t: Tree, u: Tree) -> tuple[Tree, list[int], list[int]]:
    """Smallest common expansion of two trees, with the paths reaching it."""
    if t.arity != u.arity:
        raise ValueError(f"arity mismatch: {t.arity} vs {u.arity}")
    s = _union(t, u)
    return s, expansion_path(t, s), expansion_path(u, s)


def right_depth(t: Tree) -> int:
    depth = 0
    while t.children is not None:
        t = t.children[-1]
        depth += 1
    return depth


def leaf_addresses(t: Tree) -> list[Address]:
    out: list[Address] = []

    def walk(s: Tree, prefix: Address) -> None:
        if s.children is None:
            out.append(prefix)
            return
        for i, c in enumerate(s.children):
            walk(c, prefix + (i,))

    walk(t, ())
    return out


def leaf_address(t: Tree, k: int) -> Address:
    _check_leaf(t, k)
    word: list[int] = []
    while t.children is not None:
        for i, c in enumerate(t.children):
            if k <= c.n_leaves:
                word.append(i)
                t = c
                break
            k -= c.n_leaves
    return tuple(word)


def subtree_at(t: Tree, v: Sequence[int]) -> Optional[Tree]:
    """The subtree rooted at address ``v``, or None if there is no such vertex."""
    for a in v:
        if t.children is None or not 0 <= a < t.arity:
            return None
        t = t.children[a]
    return t


def leaf_index(t: Tree, v: Sequence[int]) -> Optional[int]:
    """1-based index of the leaf at address ``v``, or None."""
    k = 1
    for a in v:
        if t.children is None or not 0 <= a < t.arity:
            return None
        k += sum(c.n_leaves for c in t.children[:a])
        t = t.children[a]
    return k if t.children is None else None


def graft(t: Tree, v: Sequence[int], s: Tree) -> Tree:
    """Replace the vertex at address ``v`` (and everything below it) by ``s``."""
    if not v:
        return s
    if t.children is None:
        raise ValueError(f"no vertex at address {tuple(v)}")
    kids = list(t.children)
    kids[v[0]] = graft(kids[v[0]], v[1:], s)
    return Tree(t.arity, tuple(kids))


def agree_away_from(t: Tree, u: Tree, v: Sequence[int]) -> bool:
    """True iff both trees arise from one tree with a leaf at ``v`` by grafting there."""
    if t.arity != u.arity:
        raise ValueError(f"arity mismatch: {t.arity} vs {u.arity}")
    if subtree_at(t, v) is None or subtree_at(u, v) is None:
        return False
    base = leaf(t.arity)
    return graft(t, v, base) == graft(u, v, base)


def spine(d: int, v: Sequence[int]) -> Tree:
    """The smallest d-ary tree having a leaf at address ``v``."""
    t = leaf(d)
    for depth in range(len(v)):
        t = graft(t, v[:depth], caret(d))
    return t


def right_vine(d: int, m: int) -> Tree:
    return spine(d, (d - 1,) * m)


def left_vine(d: int, m: int) -> Tree:
    return spine(d, (0,) * m)


def random_tree(d: int, carets: int, rng: random.Random) -> Tree:
    t = leaf(d)
    for _ in range(carets):
        t = add_caret(t, rng.randint(1, t.n_leaves))
    return t


def all_trees(d: int, carets: int) -> Iterator[Tree]:
    """Every d-ary tree with exactly ``carets`` internal nodes."""
    if carets == 0:
        yield leaf(d)
        return
    # split the remaining carets among the d children of the root
    for split in _compositions(carets - 1, d):
        for kids in itertools.product(*(list(all_trees(d, c)) for c in split)):
            yield Tree(d, tuple(kids))


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def format_tree(t: Tree) -> str:
    if t.children is None:
        return "L"
    return "(" + "".join(format_tree(c) for c in t.children) + ")"


def parse_tree(text: str, d: int) -> Tree:
    """Parse the bracket grammar; whitespace is ignored."""
    s = "".join(text.split())
    pos = 0

    def node() -> Tree:
        nonlocal pos
        if pos >= len(s):
            raise ValueError(f"unexpected end of tree text {text!r}")
        ch = s[pos]
        if ch == "L":
            pos += 1
            return leaf(d)
        if ch != "(":
            raise ValueError(f"unexpected {ch!r} at position {pos} in tree {text!r}")
        pos += 1
        kids = []
        while pos < len(s) and s[pos] != ")":
            kids.append(node())
        if pos >= len(s):
            raise ValueError(f"unclosed '(' in tree {text!r}")
        pos += 1
        if len(kids) != d:
            raise ValueError(f"node with {len(kids)} children in {d}-ary tree {text!r}")
        return Tree(d, tuple(kids))

    t = node()
    if pos != len(s):
        raise ValueError(f"trailing text at position {pos} in tree {text!r}")
    return t
