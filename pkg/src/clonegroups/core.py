"""Thompson-like groups built from a d-ary cloning system.

A cloning system supplies groups ``G_n`` together with representation maps
``rho_n: G_n -> S_n`` and injective cloning maps ``G_n -> G_{n+d-1}``.
Elements of the resulting group are classes of triples ``[T-, g, T+]``;
this module implements expansion, reduction, products, inverses and the
equality decision procedure for any such system.
"""

from __future__ import annotations

import abc
import random
from dataclasses import dataclass
from typing import Any, Iterable, Optional

from .permutation import Permutation
from .trees import (
    Tree,
    add_caret,
    bottom_carets,
    format_tree,
    join,
    leaf,
    parse_tree,
    random_tree,
    remove_caret,
)


class InstanceMismatch(ValueError):
    """Raised when elements of different groups are combined."""


class NotApplicable(ValueError):
    """Raised when an operation's structural precondition fails for an instance."""


class CloningSystem(abc.ABC):
    """A family of groups with representation and cloning maps.

    Subclasses override the group operations for ``G_n``.  Cloning is a
    right action in the usual notation: ``clone(n, k, g)`` is ``(g) kappa_k^n``.
    The ``claims_*`` flags record what the instance asserts about itself;
    :mod:`clonegroups.props` checks them independently.
    """

    d: int
    name: str = "cloning system"
    claims_fully_compatible = False
    claims_pure = False
    claims_slightly_pure = False
    claims_diverse = False
    claims_uniform = False
    has_unclone = True
    # representatives are unique once reduced; safe to use as dictionary keys
    unique_reduced_form = False
    middle_grammar = ""

    @abc.abstractmethod
    def identity(self, n: int) -> Any: ...

    @abc.abstractmethod
    def mul(self, n: int, g: Any, h: Any) -> Any: ...

    @abc.abstractmethod
    def inv(self, n: int, g: Any) -> Any: ...

    @abc.abstractmethod
    def clone(self, n: int, k: int, g: Any) -> Any: ...

    def unclone(self, n: int, k: int, g: Any) -> Optional[Any]:
        """Return h with ``clone(n, k, h) == g`` if one exists."""
        raise NotImplementedError

    def eq(self, n: int, g: Any, h: Any) -> bool:
        return g == h

    def rho(self, n: int, g: Any) -> Permutation:
        return Permutation.identity(n)

    def is_identity_middle(self, n: int, g: Any) -> bool:
        return self.eq(n, g, self.identity(n))

    def generators(self, n: int) -> list[Any]:
        return []

    def sample(self, n: int, rng: random.Random) -> Any:
        return self.identity(n)

    def elements(self, n: int) -> Optional[Iterable[Any]]:
        """All of ``G_n`` when it is finite and small enough to list, else None."""
        return None

    def order(self, n: int) -> Optional[int]:
        return None

    def validate(self, n: int, g: Any) -> None:
        """Raise ValueError unless ``g`` is a member of ``G_n``."""

    def format_middle(self, g: Any) -> str:
        return str(g)

    def parse_middle(self, text: str, n: int) -> Any:
        raise NotImplementedError

    def flags(self) -> dict[str, bool]:
        return {
            "fully_compatible": self.claims_fully_compatible,
            "pure": self.claims_pure,
            "slightly_pure": self.claims_slightly_pure,
            "diverse": self.claims_diverse,
            "uniform": self.claims_uniform,
        }

    # convenience constructors

    def element(self, minus: Tree, middle: Any, plus: Tree) -> "Element":
        """Validated, reduced element ``[minus, middle, plus]``."""
        if minus.arity != self.d or plus.arity != self.d:
            raise ValueError(f"trees must be {self.d}-ary")
        n = plus.n_leaves
        if minus.n_leaves != n:
            raise ValueError(f"leaf counts differ: {minus.n_leaves} vs {n}")
        self.validate(n, middle)
        return reduce(Element(self, minus, middle, plus))

    def tree_pair(self, minus: Tree, plus: Tree) -> "Element":
        """The element ``[minus, 1, plus]`` of the copy of F_d."""
        return self.element(minus, self.identity(plus.n_leaves), plus)

    def one(self) -> "Element":
        return Element(self, leaf(self.d), self.identity(1), leaf(self.d))

    def __repr__(self) -> str:
        return f"<{self.name}>"


@dataclass(frozen=True, eq=False)
class Element:
    """A triple ``[minus, middle, plus]`` standing for its equivalence class.

    ``==`` decides group equality; it never compares representatives.
    """

    system: CloningSystem
    minus: Tree
    middle: Any
    plus: Tree

    def __post_init__(self) -> None:
        if self.minus.n_leaves != self.plus.n_leaves:
            raise ValueError("leaf counts of the two trees differ")

    @property
    def level(self) -> int:
        return self.plus.n_leaves

    def __mul__(self, other: "Element") -> "Element":
        return multiply(self, other)

    def __pow__(self, m: int) -> "Element":
        return power(self, m)

    def inverse(self) -> "Element":
        return invert(self)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return equals(self, other)

    __hash__ = None  # type: ignore[assignment]

    def key(self) -> tuple:
        """Hashable key, valid only when the system has unique reduced forms."""
        if not self.system.unique_reduced_form:
            raise TypeError(f"{self.system.name} has no canonical representatives")
        r = reduce(self)
        return (r.minus, self.system.format_middle(r.middle), r.plus)

    def __str__(self) -> str:
        return format_element(self)

    def __repr__(self) -> str:
        return f"Element({format_element(self)!r})"


def _same_system(x: Element, y: Element) -> CloningSystem:
    if x.system != y.system:
        raise InstanceMismatch(f"{x.system.name} vs {y.system.name}")
    return x.system


def expand(x: Element, k: int) -> Element:
    """Add a caret at leaf k of the right tree (and the matching leaf on the left)."""
    s = x.system
    n = x.level
    if not 1 <= k <= n:
        raise IndexError(f"leaf index {k} out of range 1..{n}")
    j = s.rho(n, x.middle)(k)
    return Element(s, add_caret(x.minus, j), s.clone(n, k, x.middle), add_caret(x.plus, k))


def expand_left(x: Element, j: int) -> Element:
    """Expansion that adds a caret at leaf j of the left tree."""
    n = x.level
    k = x.system.rho(n, x.middle).inverse()(j)
    return expand(x, k)


def reduce(x: Element) -> Element:
    """Apply reductions, smallest right-tree site first, until none applies."""
    s = x.system
    if not s.has_unclone:
        return x
    d = s.d
    minus, g, plus = x.minus, x.middle, x.plus
    progress = True
    while progress and plus.n_leaves > 1:
        progress = False
        m = plus.n_leaves - d + 1
        left_sites = set(bottom_carets(minus))
        if not left_sites:
            break
        for k in bottom_carets(plus):
            h = s.unclone(m, k, g)
            if h is None:
                continue
            j = s.rho(m, h)(k)
            if j in left_sites:
                minus = remove_caret(minus, j)
                plus = remove_caret(plus, k)
                g = h
                progress = True
                break
    return Element(s, minus, g, plus)


def multiply(x: Element, y: Element) -> Element:
    s = _same_system(x, y)
    common, path_x, path_y = join(x.plus, y.minus)
    for k in path_x:
        x = expand(x, k)
    for j in path_y:
        y = expand_left(y, j)
    n = common.n_leaves
    return reduce(Element(s, x.minus, s.mul(n, x.middle, y.middle), y.plus))


def invert(x: Element) -> Element:
    s = x.system
    return reduce(Element(s, x.plus, s.inv(x.level, x.middle), x.minus))


def power(x: Element, m: int) -> Element:
    if m < 0:
        return power(invert(x), -m)
    result = x.system.one()
    base = x
    while m:
        if m & 1:
            result = multiply(result, base)
        m >>= 1
        if m:
            base = multiply(base, base)
    return result


def _reduce_tree_pair(minus: Tree, plus: Tree) -> tuple[Tree, Tree]:
    # reduction with trivial middle: common carets at equal indices
    while True:
        common = sorted(set(bottom_carets(minus)) & set(bottom_carets(plus)))
        if not common:
            return minus, plus
        k = common[0]
        minus, plus = remove_caret(minus, k), remove_caret(plus, k)


def is_identity(x: Element) -> bool:
    # a trivial middle is invariant under expansion and reduction
    if not x.system.is_identity_middle(x.level, x.middle):
        return False
    minus, plus = _reduce_tree_pair(x.minus, x.plus)
    return minus == plus


def equals(x: Element, y: Element) -> bool:
    s = _same_system(x, y)
    if x.minus == y.minus and x.plus == y.plus and s.eq(x.level, x.middle, y.middle):
        return True
    return is_identity(multiply(x, invert(y)))


def conjugate(x: Element, y: Element) -> Element:
    """``y x y^-1``."""
    return multiply(multiply(y, x), invert(y))


def commutator(x: Element, y: Element) -> Element:
    """``x y x^-1 y^-1``."""
    return multiply(multiply(x, y), multiply(invert(x), invert(y)))


def commutes(x: Element, y: Element) -> bool:
    return equals(multiply(x, y), multiply(y, x))


def random_element(s: CloningSystem, rng: random.Random, max_carets: int = 3) -> Element:
    c = rng.randint(0, max_carets)
    minus = random_tree(s.d, c, rng)
    plus = random_tree(s.d, c, rng)
    return reduce(Element(s, minus, s.sample(plus.n_leaves, rng), plus))


def format_element(x: Element) -> str:
    return f"[{format_tree(x.minus)};{x.system.format_middle(x.middle)};{format_tree(x.plus)}]"


def parse_element(s: CloningSystem, text: str) -> Element:
    """Parse ``[tree ; middle ; tree]``; the middle may itself contain ';'."""
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise ValueError(f"element must be bracketed: {text!r}")
    body = body[1:-1]
    first, last = body.find(";"), body.rfind(";")
    if first < 0 or first == last:
        raise ValueError(f"element needs two ';' separators: {text!r}")
    minus = parse_tree(body[:first], s.d)
    plus = parse_tree(body[last + 1 :], s.d)
    if minus.n_leaves != plus.n_leaves:
        raise ValueError(f"leaf counts differ in {text!r}")
    middle = s.parse_middle(body[first + 1 : last].strip(), plus.n_leaves)
    return s.element(minus, middle, plus)
