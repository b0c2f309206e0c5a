"""Braid groups as words in Artin generators.

A word is read left to right as bottom to top; letter ``i`` is sigma_i
(the strand at position i crosses over the one at i+1) and ``-i`` its
inverse.  Strands are numbered left to right at the bottom.  The group
product ``g * h`` stacks g on top of h, so its word is h's letters
followed by g's; with that convention ``strand_perm`` is a homomorphism.

Equality is decided through the faithful Artin action on the free group
of rank n.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .core import CloningSystem
from .permutation import Permutation

FreeWord = tuple[int, ...]


@dataclass(frozen=True)
class BraidWord:
    n: int
    letters: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("a braid needs at least one strand")
        for a in self.letters:
            if a == 0 or abs(a) >= self.n:
                raise ValueError(f"letter {a} out of range for {self.n} strands")

    def __str__(self) -> str:
        return " ".join(map(str, self.letters))

    def __len__(self) -> int:
        return len(self.letters)


def parse_braid(text: str, n: int) -> BraidWord:
    return BraidWord(n, tuple(int(tok) for tok in text.split()))


def free_reduce(word: Sequence[int]) -> tuple[int, ...]:
    out: list[int] = []
    for a in word:
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def _finv(w: FreeWord) -> FreeWord:
    return tuple(-a for a in reversed(w))


def artin_images(b: BraidWord) -> tuple[FreeWord, ...]:
    """Images of x_1..x_n under the automorphism of the free group attached to ``b``.

    sigma_i substitutes x_i -> x_i x_{i+1} x_i^-1 and x_{i+1} -> x_i; the
    letters are composed as substitutions in reading order.
    """
    imgs: list[FreeWord] = [(j,) for j in range(1, b.n + 1)]
    for a in b.letters:
        i = abs(a) - 1
        u, v = imgs[i], imgs[i + 1]
        if a > 0:
            imgs[i] = free_reduce(u + v + _finv(u))
            imgs[i + 1] = u
        else:
            imgs[i] = v
            imgs[i + 1] = free_reduce(_finv(v) + u + v)
    return tuple(imgs)


def braid_eq(a: BraidWord, b: BraidWord) -> bool:
    if a.n != b.n:
        raise ValueError(f"strand counts differ: {a.n} vs {b.n}")
    return artin_images(braid_mul(a, braid_inv(b))) == artin_images(BraidWord(a.n))


def braid_mul(g: BraidWord, h: BraidWord) -> BraidWord:
    """``g`` stacked on top of ``h``."""
    if g.n != h.n:
        raise ValueError(f"strand counts differ: {g.n} vs {h.n}")
    return BraidWord(g.n, free_reduce(h.letters + g.letters))


def braid_inv(b: BraidWord) -> BraidWord:
    return BraidWord(b.n, tuple(-a for a in reversed(b.letters)))


def strand_perm(b: BraidWord) -> Permutation:
    """Bottom position k goes to top position ``strand_perm(b)(k)``."""
    where = list(range(b.n + 1))  # where[s] = current position of bottom strand s
    at = list(range(b.n + 1))  # at[p] = bottom strand currently at position p
    for a in b.letters:
        i = abs(a)
        s, t = at[i], at[i + 1]
        at[i], at[i + 1] = t, s
        where[s], where[t] = i + 1, i
    return Permutation(tuple(where[1:]))


def braid_clone(d: int, k: int, b: BraidWord) -> BraidWord:
    """Replace bottom strand k by d parallel strands."""
    if not 1 <= k <= b.n:
        raise IndexError(f"strand {k} out of range 1..{b.n}")
    p = k  # current position of the ribbon in the original coordinates
    out: list[int] = []
    for a in b.letters:
        i, sign = abs(a), (1 if a > 0 else -1)
        if p == i:
            # the strand at i+1 passes the ribbon leftwards
            out.extend(sign * j for j in range(p + d - 1, p - 1, -1))
            p = i + 1
        elif p == i + 1:
            # the strand at i passes the ribbon rightwards
            out.extend(sign * j for j in range(i, i + d))
            p = i
        else:
            out.append(sign * (i if i < p else i + d - 1))
    return BraidWord(b.n + d - 1, tuple(out))


def delete_strand(b: BraidWord, j: int) -> BraidWord:
    """Remove bottom strand ``j`` and every crossing it takes part in."""
    if not 1 <= j <= b.n:
        raise IndexError(f"strand {j} out of range 1..{b.n}")
    q = j
    out: list[int] = []
    for a in b.letters:
        i = abs(a)
        if q == i:
            q = i + 1
        elif q == i + 1:
            q = i
        else:
            out.append(a if i < q else (a - 1 if a > 0 else a + 1))
    return BraidWord(b.n - 1, tuple(out))


def pure_generator(n: int, i: int, j: int) -> BraidWord:
    """A_ij = (s_{j-1} .. s_{i+1}) s_i^2 (s_{j-1} .. s_{i+1})^-1 for 1 <= i < j <= n."""
    conj = list(range(j - 1, i, -1))
    word = conj + [i, i] + [-c for c in reversed(conj)]
    return BraidWord(n, tuple(word))


@dataclass(frozen=True, repr=False)
class BraidSystem(CloningSystem):
    """Braid groups with strand cloning; the group is bV_d."""

    d: int = 2
    max_sample_length: int = 4
    claims_fully_compatible = True
    claims_diverse = True
    middle_grammar = "whitespace-separated signed Artin generators, e.g. '2 1 -3'"

    @property
    def name(self) -> str:
        return f"bV({self.d})"

    def identity(self, n):
        return BraidWord(n)

    def mul(self, n, g, h):
        return braid_mul(g, h)

    def inv(self, n, g):
        return braid_inv(g)

    def eq(self, n, g, h):
        return braid_eq(g, h)

    def is_identity_middle(self, n, g):
        return artin_images(g) == artin_images(BraidWord(n))

    def rho(self, n, g):
        return strand_perm(g)

    def clone(self, n, k, g):
        return braid_clone(self.d, k, g)

    def unclone(self, n, k, g):
        if g.n != n + self.d - 1 or not 1 <= k <= n:
            return None
        h = g
        for _ in range(self.d - 1):
            h = delete_strand(h, k + 1)
        h = BraidWord(n, free_reduce(h.letters))
        # deletion always succeeds; membership holds only if the ribbon was parallel
        return h if braid_eq(braid_clone(self.d, k, h), g) else None

    def generators(self, n):
        return [BraidWord(n, (i,)) for i in range(1, n)]

    def sample(self, n, rng):
        if n == 1:
            return BraidWord(1)
        length = rng.randint(0, self.max_sample_length)
        return BraidWord(
            n, free_reduce([rng.choice((1, -1)) * rng.randint(1, n - 1) for _ in range(length)])
        )

    def validate(self, n, g):
        if not isinstance(g, BraidWord) or g.n != n:
            raise ValueError(f"expected a braid on {n} strands, got {g!r}")

    def format_middle(self, g):
        return str(g)

    def parse_middle(self, text, n):
        return parse_braid(text, n)


@dataclass(frozen=True, repr=False)
class PureBraidSystem(BraidSystem):
    """Pure braid groups with strand cloning; the group is bF_d."""

    d: int = 2
    max_sample_length: int = 2
    claims_pure = True
    claims_slightly_pure = True
    claims_uniform = True

    @property
    def name(self) -> str:
        return f"bF({self.d})"

    def rho(self, n, g):
        return Permutation.identity(n)

    def generators(self, n):
        return [pure_generator(n, i, j) for i in range(1, n) for j in range(i + 1, n + 1)]

    def sample(self, n, rng):
        gens = self.generators(n)
        if not gens:
            return BraidWord(n)
        out = BraidWord(n)
        for _ in range(rng.randint(0, self.max_sample_length)):
            g = rng.choice(gens)
            out = braid_mul(out, g if rng.random() < 0.5 else braid_inv(g))
        return out

    def validate(self, n, g):
        super().validate(n, g)
        if not strand_perm(g).is_identity():
            raise ValueError(f"braid {g} is not pure")


def instance_bV(d: int = 2) -> BraidSystem:
    return BraidSystem(d)


def instance_bF(d: int = 2) -> PureBraidSystem:
    return PureBraidSystem(d)


def random_braid(n: int, length: int, rng: random.Random) -> BraidWord:
    if n == 1:
        return BraidWord(1)
    return BraidWord(n, tuple(rng.choice((1, -1)) * rng.randint(1, n - 1) for _ in range(length)))
