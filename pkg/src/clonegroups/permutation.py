"""Permutations in one-line notation and the standard d-ary cloning maps.

``Permutation((3, 1, 2))`` sends 1 -> 3, 2 -> 1, 3 -> 2.  Products
compose right to left: ``(s * t)(i) == s(t(i))``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"not a permutation: {self.images}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_seq(cls, seq: Sequence[int]) -> "Permutation":
        return cls(tuple(seq))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        return Permutation(tuple(self.images[j - 1] for j in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, j in enumerate(self.images, start=1):
            inv[j - 1] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(j == i for i, j in enumerate(self.images, start=1))

    def __str__(self) -> str:
        return " ".join(map(str, self.images))


def parse_permutation(text: str) -> Permutation:
    return Permutation(tuple(int(tok) for tok in text.split()))


def all_permutations(n: int) -> Iterator[Permutation]:
    for p in itertools.permutations(range(1, n + 1)):
        yield Permutation(p)


def sigma_clone(d: int, n: int, k: int, s: Permutation) -> Permutation:
    """Replace input k by a block of d consecutive inputs landing on a block of d outputs."""
    if s.degree != n:
        raise ValueError(f"permutation has degree {s.degree}, expected {n}")
    if not 1 <= k <= n:
        raise IndexError(f"clone index {k} out of range 1..{n}")
    a = s(k)

    def shift(y: int) -> int:
        return y if y < a else y + d - 1

    out = [shift(s(j)) for j in range(1, k)]
    out += [a + i for i in range(d)]
    out += [shift(s(j)) for j in range(k + 1, n + 1)]
    return Permutation(tuple(out))


def sigma_unclone(d: int, n: int, k: int, s: Permutation) -> Optional[Permutation]:
    """Preimage of ``s`` under ``sigma_clone(d, n, k, .)``, or None."""
    if s.degree != n + d - 1 or not 1 <= k <= n:
        return None
    a = s(k)
    if any(s(k + i) != a + i for i in range(d)):
        return None

    def unshift(y: int) -> int:
        return y if y < a else y - d + 1

    rest = [s(j) for j in range(1, k)] + [s(j) for j in range(k + d, n + d)]
    out = [unshift(y) for y in rest[: k - 1]] + [a] + [unshift(y) for y in rest[k - 1 :]]
    return Permutation(tuple(out))
