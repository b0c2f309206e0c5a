"""F_d, V_d and the slightly pure subgroup hat-V_d, plus their semantic models.

The PL-map model realizes F_d as homeomorphisms of [0, 1]; the prefix-map
model realizes V_d as prefix replacements on infinite d-ary words.  Both
are computed straight from a representative and never use the tree-pair
group law, so they serve as independent equality oracles.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .core import CloningSystem, Element
from .permutation import (
    Permutation,
    all_permutations,
    parse_permutation,
    sigma_clone,
    sigma_unclone,
)
from .trees import Address, Tree, caret, graft, join, leaf, leaf_addresses, subtree_at


@dataclass(frozen=True, repr=False)
class FSystem(CloningSystem):
    """Trivial groups at every level; the resulting group is F_d."""

    d: int = 2
    claims_fully_compatible = True
    claims_pure = True
    claims_slightly_pure = True
    claims_diverse = True
    claims_uniform = True
    unique_reduced_form = True
    middle_grammar = "empty (trivial group)"

    @property
    def name(self) -> str:
        return f"F({self.d})"

    def identity(self, n):
        return ()

    def mul(self, n, g, h):
        return ()

    def inv(self, n, g):
        return ()

    def clone(self, n, k, g):
        return ()

    def unclone(self, n, k, g):
        return ()

    def elements(self, n):
        return [()]

    def order(self, n):
        return 1

    def validate(self, n, g):
        if g != ():
            raise ValueError(f"F_d middles are trivial, got {g!r}")

    def format_middle(self, g):
        return ""

    def parse_middle(self, text, n):
        if text.strip():
            raise ValueError(f"F_d middle must be empty, got {text!r}")
        return ()


@dataclass(frozen=True, repr=False)
class VSystem(CloningSystem):
    """Symmetric groups with the standard cloning maps; the group is V_d."""

    d: int = 2
    claims_fully_compatible = True
    claims_diverse = True
    claims_uniform = True
    middle_grammar = "one-line permutation images, e.g. '3 1 2 4'"

    @property
    def name(self) -> str:
        return f"V({self.d})"

    def identity(self, n):
        return Permutation.identity(n)

    def mul(self, n, g, h):
        return g * h

    def inv(self, n, g):
        return g.inverse()

    def rho(self, n, g):
        return g

    def clone(self, n, k, g):
        return sigma_clone(self.d, n, k, g)

    def unclone(self, n, k, g):
        return sigma_unclone(self.d, n, k, g)

    def generators(self, n):
        out = []
        for i in range(1, n):
            images = list(range(1, n + 1))
            images[i - 1], images[i] = images[i], images[i - 1]
            out.append(Permutation(tuple(images)))
        return out

    def sample(self, n, rng):
        images = list(range(1, n + 1))
        rng.shuffle(images)
        return Permutation(tuple(images))

    def elements(self, n):
        return all_permutations(n)

    def order(self, n):
        out = 1
        for i in range(2, n + 1):
            out *= i
        return out

    def validate(self, n, g):
        if not isinstance(g, Permutation) or g.degree != n:
            raise ValueError(f"expected a permutation of degree {n}, got {g!r}")

    def format_middle(self, g):
        return str(g)

    def parse_middle(self, text, n):
        p = parse_permutation(text)
        if p.degree != n:
            raise ValueError(f"permutation {text!r} has degree {p.degree}, expected {n}")
        return p


@dataclass(frozen=True, repr=False)
class VhatSystem(VSystem):
    """Permutations fixing the last point; the group is hat-V_d."""

    d: int = 2
    claims_slightly_pure = True

    @property
    def name(self) -> str:
        return f"Vhat({self.d})"

    def generators(self, n):
        return [g for g in super().generators(n) if g(n) == n]

    def sample(self, n, rng):
        images = list(range(1, n))
        rng.shuffle(images)
        return Permutation(tuple(images) + (n,))

    def elements(self, n):
        return (g for g in all_permutations(n) if g(n) == n)

    def order(self, n):
        return super().order(n - 1) if n > 1 else 1

    def validate(self, n, g):
        super().validate(n, g)
        if g(n) != n:
            raise ValueError(f"hat-V middles must fix {n}, got {g}")

    def unclone(self, n, k, g):
        h = super().unclone(n, k, g)
        if h is None or h(n) != n:
            return None
        return h


def instance_F(d: int = 2) -> FSystem:
    return FSystem(d)


def instance_V(d: int = 2) -> VSystem:
    return VSystem(d)


def instance_Vhat(d: int = 2) -> VhatSystem:
    return VhatSystem(d)


# --- piecewise-linear model of F_d -------------------------------------------------


def format_dadic(q: Fraction, d: int) -> str:
    """Write a d-adic rational as ``a/d^k`` with k minimal (integers bare)."""
    if q.denominator == 1:
        return str(q.numerator)
    k, den = 0, 1
    while den % q.denominator:
        k += 1
        den *= d
        if k > 4096:
            raise ValueError(f"{q} is not {d}-adic")
    return f"{(q * den).numerator}/{d}^{k}"


@dataclass(frozen=True)
class PLMap:
    """Increasing PL homeomorphism of [0, 1] given by its breakpoints ``(x, f(x))``."""

    points: tuple[tuple[Fraction, Fraction], ...]
    d: int = 2

    def __post_init__(self) -> None:
        pts = list(self.points)
        if pts[0] != (0, 0) or pts[-1] != (1, 1):
            raise ValueError("PL map must fix 0 and 1")
        # drop collinear interior breakpoints so equal maps compare equal
        out = [pts[0]]
        for i in range(1, len(pts) - 1):
            (x0, y0), (x1, y1), (x2, y2) = out[-1], pts[i], pts[i + 1]
            if (y1 - y0) * (x2 - x1) != (y2 - y1) * (x1 - x0):
                out.append(pts[i])
        out.append(pts[-1])
        object.__setattr__(self, "points", tuple((Fraction(x), Fraction(y)) for x, y in out))

    @classmethod
    def identity(cls, d: int = 2) -> "PLMap":
        return cls(((Fraction(0), Fraction(0)), (Fraction(1), Fraction(1))), d)

    def __call__(self, t: Fraction) -> Fraction:
        t = Fraction(t)
        pts = self.points
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            if x0 <= t <= x1:
                return y0 + (y1 - y0) * (t - x0) / (x1 - x0)
        raise ValueError(f"{t} outside [0, 1]")

    def inverse(self) -> "PLMap":
        return PLMap(tuple((y, x) for x, y in self.points), self.d)

    def compose(self, other: "PLMap") -> "PLMap":
        """``self o other``: apply ``other`` first."""
        xs = {x for x, _ in other.points}
        inv = other.inverse()
        xs |= {inv(x) for x, _ in self.points}
        return PLMap(tuple((x, self(other(x))) for x in sorted(xs)), self.d)

    def slopes(self) -> list[Fraction]:
        pts = self.points
        return [(y1 - y0) / (x1 - x0) for (x0, y0), (x1, y1) in zip(pts, pts[1:])]

    def __str__(self) -> str:
        return " ".join(
            f"({format_dadic(x, self.d)},{format_dadic(y, self.d)})" for x, y in self.points
        )


def leaf_intervals(t: Tree) -> list[tuple[Fraction, Fraction]]:
    """Standard d-adic subdivision of [0, 1] cut out by the leaves of ``t``."""
    out: list[tuple[Fraction, Fraction]] = []

    def walk(s: Tree, lo: Fraction, width: Fraction) -> None:
        if s.children is None:
            out.append((lo, lo + width))
            return
        w = width / s.arity
        for i, c in enumerate(s.children):
            walk(c, lo + i * w, w)

    walk(t, Fraction(0), Fraction(1))
    return out


def _require(x: Element, kind: type, what: str) -> None:
    if not isinstance(x.system, kind):
        raise ValueError(f"{what} needs an element of {kind.__name__}, got {x.system.name}")


def pl_map(x: Element) -> PLMap:
    """Right tree gives the domain subdivision, left tree the range subdivision."""
    _require(x, FSystem, "pl_map")
    dom = leaf_intervals(x.plus)
    rng = leaf_intervals(x.minus)
    pts = [(a, c) for (a, _), (c, _) in zip(dom, rng)] + [(Fraction(1), Fraction(1))]
    return PLMap(tuple(pts), x.system.d)


def map_support(f: PLMap) -> list[tuple[Fraction, Fraction]]:
    """Maximal open intervals of points moved by ``f``."""
    critical = {x for x, _ in f.points}
    pts = f.points
    for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
        s = (y1 - y0) / (x1 - x0)
        if s != 1:
            t = (y0 - s * x0) / (1 - s)
            if x0 < t < x1:
                critical.add(t)
    cs = sorted(critical)
    moving = [(a, b) for a, b in zip(cs, cs[1:]) if f((a + b) / 2) != (a + b) / 2]
    merged: list[tuple[Fraction, Fraction]] = []
    for a, b in moving:
        if merged and merged[-1][1] == a and f(a) != a:
            merged[-1] = (merged[-1][0], b)
        else:
            merged.append((a, b))
    return merged


def pl_support(x: Element) -> list[tuple[Fraction, Fraction]]:
    return map_support(pl_map(x))


# --- prefix-replacement model of V_d ----------------------------------------------


def tree_from_code(d: int, words: Sequence[Address]) -> Tree:
    """The tree whose leaves are exactly the given complete prefix code."""
    t = leaf(d)
    for w in words:
        for depth in range(len(w)):
            sub = subtree_at(t, w[:depth])
            if sub is None:
                raise ValueError(f"not a prefix code: {words}")
            if sub.children is None:
                t = graft(t, w[:depth], caret(d))
    if sorted(leaf_addresses(t)) != sorted(words):
        raise ValueError(f"not a complete prefix code: {words}")
    return t


@dataclass(frozen=True)
class PrefixMap:
    """Bijection ``u_i s -> v_i s`` of infinite d-ary words."""

    pairs: tuple[tuple[Address, Address], ...]
    d: int = 2

    def domain(self) -> list[Address]:
        return [u for u, _ in self.pairs]

    def image(self, w: Sequence[int]) -> Optional[Address]:
        """Image of a finite word extending some domain word, else None."""
        w = tuple(w)
        for u, v in self.pairs:
            if w[: len(u)] == u:
                return v + w[len(u) :]
        return None

    def compose(self, other: "PrefixMap") -> "PrefixMap":
        """``self o other``: apply ``other`` first."""
        out: list[tuple[Address, Address]] = []
        stack = list(reversed(other.pairs))
        while stack:
            u, v = stack.pop()
            img = self.image(v)
            if img is not None:
                out.append((u, img))
            else:
                stack.extend(reversed([(u + (c,), v + (c,)) for c in range(self.d)]))
        return PrefixMap(tuple(out), self.d)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PrefixMap):
            return NotImplemented
        if other.d != self.d:
            return False
        a = tree_from_code(self.d, self.domain())
        b = tree_from_code(self.d, other.domain())
        common = join(a, b)[0]
        return all(self.image(w) == other.image(w) for w in leaf_addresses(common))

    __hash__ = None  # type: ignore[assignment]

    def is_identity(self) -> bool:
        return all(self.image(u) == u for u in self.domain())

    def __str__(self) -> str:
        def word(w: Address) -> str:
            return "".join(map(str, w)) or "e"

        return " ".join(f"{word(u)}->{word(v)}" for u, v in self.pairs)


def prefix_map(x: Element) -> PrefixMap:
    """Leaf k of the right tree is sent to leaf sigma(k) of the left tree."""
    _require(x, VSystem, "prefix_map")
    dom = leaf_addresses(x.plus)
    rng = leaf_addresses(x.minus)
    g = x.middle
    return PrefixMap(tuple((dom[k - 1], rng[g(k) - 1]) for k in range(1, x.level + 1)), x.system.d)

