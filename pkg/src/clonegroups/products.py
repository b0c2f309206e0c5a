"""Direct products of a base group with cloning through injective endomorphisms.

Level n is the n-fold product of a base group G; cloning at k replaces the
k-th coordinate g by ``(phi_1(g), ..., phi_d(g))``.  The Psi variant forces
the first coordinate to be trivial.  Base groups are small multiplication
tables (cyclic groups, S3) or the free abelian group of countable rank.
"""

from __future__ import annotations

import abc
import itertools
import math
import random
from dataclasses import dataclass, field
from typing import Any, Iterable, Optional, Sequence

from .core import CloningSystem
from .permutation import all_permutations


class BaseGroup(abc.ABC):
    name: str

    @abc.abstractmethod
    def identity(self) -> Any: ...

    @abc.abstractmethod
    def mul(self, a: Any, b: Any) -> Any: ...

    @abc.abstractmethod
    def inv(self, a: Any) -> Any: ...

    def eq(self, a: Any, b: Any) -> bool:
        return a == b

    @abc.abstractmethod
    def sample(self, rng: random.Random) -> Any: ...

    @abc.abstractmethod
    def generators(self) -> list[Any]: ...

    def elements(self) -> Optional[list[Any]]:
        return None

    def center_witness(self) -> Optional[Any]:
        """A non-trivial central element, or None if the center is trivial."""
        return None

    def is_central(self, z: Any, rng: Optional[random.Random] = None, samples: int = 100) -> bool:
        elems = self.elements()
        if elems is None:
            rng = rng or random.Random(0)
            elems = [self.sample(rng) for _ in range(samples)]
        return all(self.eq(self.mul(z, a), self.mul(a, z)) for a in elems)

    @abc.abstractmethod
    def format(self, a: Any) -> str: ...

    @abc.abstractmethod
    def parse(self, text: str) -> Any: ...

    def __repr__(self) -> str:
        return f"<{self.name}>"


class Endomorphism(abc.ABC):
    name: str

    @abc.abstractmethod
    def __call__(self, a: Any) -> Any: ...

    @abc.abstractmethod
    def preimage(self, a: Any) -> Optional[Any]:
        """The unique b with ``self(b) == a``, or None."""

    @property
    def is_identity(self) -> bool:
        return False


class IdentityEndo(Endomorphism):
    name = "id"

    def __call__(self, a):
        return a

    def preimage(self, a):
        return a

    @property
    def is_identity(self) -> bool:
        return True

    def __eq__(self, other):
        return isinstance(other, IdentityEndo)

    def __hash__(self):
        return hash("id")


# --- finite groups given by multiplication tables ---------------------------------


@dataclass(frozen=True, eq=False)
class TableGroup(BaseGroup):
    """Elements are indices 0..m-1 with 0 the identity; ``labels`` give their text."""

    name: str
    labels: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]
    _inverse: tuple[int, ...] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        m = len(self.labels)
        if any(self.table[0][a] != a or self.table[a][0] != a for a in range(m)):
            raise ValueError("element 0 must be the identity")
        inv = []
        for a in range(m):
            hits = [b for b in range(m) if self.table[a][b] == 0]
            if len(hits) != 1:
                raise ValueError(f"{self.labels[a]} has no unique inverse")
            inv.append(hits[0])
        object.__setattr__(self, "_inverse", tuple(inv))

    @property
    def order(self) -> int:
        return len(self.labels)

    def identity(self):
        return 0

    def mul(self, a, b):
        return self.table[a][b]

    def inv(self, a):
        return self._inverse[a]

    def sample(self, rng):
        return rng.randrange(self.order)

    def generators(self):
        return list(range(1, self.order))

    def elements(self):
        return list(range(self.order))

    def center_witness(self):
        for z in range(1, self.order):
            if self.is_central(z):
                return z
        return None

    def format(self, a):
        return self.labels[a]

    def parse(self, text):
        t = text.strip()
        try:
            return self.labels.index(t)
        except ValueError:
            raise ValueError(f"{t!r} is not an element of {self.name}") from None


def cyclic_group(m: int) -> TableGroup:
    if m < 1:
        raise ValueError("cyclic group order must be positive")
    return TableGroup(
        f"Z/{m}",
        tuple(str(i) for i in range(m)),
        tuple(tuple((a + b) % m for b in range(m)) for a in range(m)),
    )


def symmetric_group_table(n: int = 3) -> TableGroup:
    perms = list(all_permutations(n))
    index = {p: i for i, p in enumerate(perms)}
    return TableGroup(
        f"S{n}",
        tuple("".join(map(str, p.images)) for p in perms),
        tuple(tuple(index[p * q] for q in perms) for p in perms),
    )


@dataclass(frozen=True, eq=False)
class TableEndo(Endomorphism):
    """Endomorphism of a table group given by the images of all elements."""

    name: str
    images: tuple[int, ...]

    def __call__(self, a):
        return self.images[a]

    def preimage(self, a):
        try:
            return self.images.index(a)
        except ValueError:
            return None

    @property
    def is_identity(self) -> bool:
        return all(i == a for a, i in enumerate(self.images))


def table_endo(group: TableGroup, images: Sequence[int], name: str) -> TableEndo:
    """Validated injective endomorphism of a finite table group."""
    images = tuple(images)
    m = group.order
    if sorted(images) != list(range(m)):
        raise ValueError(f"{name} is not injective on {group.name}")
    for a in range(m):
        for b in range(m):
            if images[group.mul(a, b)] != group.mul(images[a], images[b]):
                raise ValueError(f"{name} is not a homomorphism of {group.name}")
    return TableEndo(name, images)


def cyclic_multiplier(group: TableGroup, u: int) -> TableEndo:
    m = group.order
    if math.gcd(u, m) != 1:
        raise ValueError(f"multiplication by {u} is not injective on {group.name}")
    return table_endo(group, [(u * a) % m for a in range(m)], f"x->{u}x")


# --- free abelian group of countable rank ----------------------------------------

ZInfElement = tuple[tuple[int, int], ...]


def _zinf(items: Iterable[tuple[int, int]]) -> ZInfElement:
    acc: dict[int, int] = {}
    for j, c in items:
        acc[j] = acc.get(j, 0) + c
    return tuple(sorted((j, c) for j, c in acc.items() if c))


class ZInf(BaseGroup):
    """Finitely supported integer sequences; ``((j, c), ...)`` means sum c e_j."""

    name = "ZInf"

    def __init__(self, sample_support: int = 6, sample_size: int = 2) -> None:
        self.sample_support = sample_support
        self.sample_size = sample_size

    def identity(self):
        return ()

    def mul(self, a, b):
        return _zinf(a + b)

    def inv(self, a):
        return tuple((j, -c) for j, c in a)

    def sample(self, rng):
        k = rng.randint(0, self.sample_size)
        return _zinf((rng.randrange(self.sample_support), rng.choice((-2, -1, 1, 2))) for _ in range(k))

    def generators(self):
        return [((j, 1),) for j in range(3)]

    def center_witness(self):
        return ((0, 1),)

    def is_central(self, z, rng=None, samples=100):
        return True

    def format(self, a):
        return " ".join(f"{j}:{c}" for j, c in a) or "0"

    def parse(self, text):
        t = text.strip()
        if t == "0":
            return ()
        out = []
        for tok in t.split():
            j, sep, c = tok.partition(":")
            if not sep:
                raise ValueError(f"expected 'index:coefficient', got {tok!r}")
            if int(j) < 0:
                raise ValueError(f"negative index in {tok!r}")
            out.append((int(j), int(c)))
        return _zinf(out)


@dataclass(frozen=True)
class Interleave(Endomorphism):
    """``e_j -> e_{d j + i - 1}``; the images for i = 1..d sit on distinct residues mod d."""

    d: int
    i: int

    @property
    def name(self) -> str:
        return f"interleave{self.i}"

    def __call__(self, a):
        return tuple((self.d * j + self.i - 1, c) for j, c in a)

    def preimage(self, a):
        r = self.i - 1
        if any(j % self.d != r for j, _ in a):
            return None
        return tuple(((j - r) // self.d, c) for j, c in a)


# --- the cloning system ----------------------------------------------------------


def tuple_clone(endos: Sequence[Endomorphism], k: int, t: tuple) -> tuple:
    if not 1 <= k <= len(t):
        raise IndexError(f"clone index {k} out of range 1..{len(t)}")
    g = t[k - 1]
    return t[: k - 1] + tuple(phi(g) for phi in endos) + t[k:]


def tuple_unclone(
    base: BaseGroup, endos: Sequence[Endomorphism], k: int, t: tuple
) -> Optional[tuple]:
    d = len(endos)
    n = len(t) - d + 1
    if n < 1 or not 1 <= k <= n:
        return None
    block = t[k - 1 : k - 1 + d]
    pre = [phi.preimage(x) for phi, x in zip(endos, block)]
    if any(p is None for p in pre) or any(not base.eq(pre[0], p) for p in pre[1:]):
        return None
    out = t[: k - 1] + (pre[0],) + t[k - 1 + d :]
    return out if tuple_clone(endos, k, out) == t else None


@dataclass(frozen=True, repr=False, eq=False)
class ProductSystem(CloningSystem):
    """n-fold products of ``base``; with ``psi`` the first coordinate is trivial."""

    base: BaseGroup
    endos: tuple[Endomorphism, ...]
    psi: bool = False
    diverse_endos: bool = False
    enumeration_cap: int = 10**6
    claims_fully_compatible = True
    claims_pure = True
    claims_slightly_pure = True
    middle_grammar = "'(' component ',' ... ')' in the base group's element syntax"

    def __post_init__(self) -> None:
        if len(self.endos) < 2:
            raise ValueError("need d >= 2 endomorphisms")
        if self.psi and not all(e.is_identity for e in self.endos):
            raise ValueError("the Psi family uses identity endomorphisms")

    @property
    def d(self) -> int:  # type: ignore[override]
        return len(self.endos)

    @property
    def name(self) -> str:
        fam = "Psi" if self.psi else "Pi"
        endos = ",".join(e.name for e in self.endos)
        return f"{fam}({self.base.name};{endos})"

    @property
    def claims_uniform(self) -> bool:  # type: ignore[override]
        return all(e.is_identity for e in self.endos)

    @property
    def claims_diverse(self) -> bool:  # type: ignore[override]
        return self.psi or self.diverse_endos

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ProductSystem) and other.name == self.name

    def __hash__(self) -> int:
        return hash(self.name)

    def identity(self, n):
        return (self.base.identity(),) * n

    def mul(self, n, g, h):
        return tuple(self.base.mul(a, b) for a, b in zip(g, h))

    def inv(self, n, g):
        return tuple(self.base.inv(a) for a in g)

    def eq(self, n, g, h):
        return len(g) == len(h) and all(self.base.eq(a, b) for a, b in zip(g, h))

    def clone(self, n, k, g):
        return tuple_clone(self.endos, k, g)

    def unclone(self, n, k, g):
        return tuple_unclone(self.base, self.endos, k, g)

    def _free_positions(self, n: int) -> range:
        return range(1, n) if self.psi else range(n)

    def generators(self, n):
        out = []
        one = self.identity(n)
        for i in self._free_positions(n):
            for a in self.base.generators():
                out.append(one[:i] + (a,) + one[i + 1 :])
        return out

    def sample(self, n, rng):
        return tuple(
            self.base.sample(rng) if i in self._free_positions(n) else self.base.identity()
            for i in range(n)
        )

    def order(self, n):
        elems = self.base.elements()
        if elems is None:
            return None
        return len(elems) ** len(self._free_positions(n))

    def elements(self, n):
        size = self.order(n)
        if size is None or size > self.enumeration_cap:
            return None
        elems = self.base.elements()
        one = self.base.identity()
        free = len(self._free_positions(n))
        return ((one,) * (n - free) + combo for combo in itertools.product(elems, repeat=free))

    def validate(self, n, g):
        if not isinstance(g, tuple) or len(g) != n:
            raise ValueError(f"expected a {n}-tuple")
        if self.psi and not self.base.eq(g[0], self.base.identity()):
            raise ValueError("Psi tuples need a trivial first coordinate")

    def format_middle(self, g):
        return "(" + ",".join(self.base.format(a) for a in g) + ")"

    def parse_middle(self, text, n):
        t = text.strip()
        if not (t.startswith("(") and t.endswith(")")):
            raise ValueError(f"tuple must be parenthesized: {text!r}")
        parts = t[1:-1].split(",")
        if len(parts) != n:
            raise ValueError(f"tuple {text!r} has {len(parts)} entries, expected {n}")
        return tuple(self.base.parse(p) for p in parts)


def _images_intersect_trivially(base: BaseGroup, endos: Sequence[Endomorphism]) -> bool:
    elems = base.elements()
    if elems is None:
        return False
    common = set(elems)
    for phi in endos:
        common &= {phi(a) for a in elems}
    return common == {base.identity()}


def instance_Pi(base: BaseGroup, endos: Optional[Sequence[Endomorphism]] = None, d: int = 2) -> ProductSystem:
    endos = tuple(endos) if endos is not None else (IdentityEndo(),) * d
    if len(endos) != d:
        raise ValueError(f"need {d} endomorphisms, got {len(endos)}")
    return ProductSystem(base, endos, diverse_endos=_images_intersect_trivially(base, endos))


def instance_Psi(base: BaseGroup, d: int = 2) -> ProductSystem:
    return ProductSystem(base, (IdentityEndo(),) * d, psi=True)


def instance_ZInf(d: int = 2) -> ProductSystem:
    return ProductSystem(ZInf(), tuple(Interleave(d, i) for i in range(1, d + 1)), diverse_endos=True)


def parse_base_group(text: str) -> BaseGroup:
    t = text.strip()
    if t.startswith("Z/"):
        return cyclic_group(int(t[2:]))
    if t in ("S3", "S4"):
        return symmetric_group_table(int(t[1:]))
    if t == "ZInf":
        return ZInf()
    raise ValueError(f"unknown base group {text!r} (expected Z/m, S3, S4 or ZInf)")


def parse_endos(base: BaseGroup, text: str, d: int) -> tuple[Endomorphism, ...]:
    """``id`` or ``mul:u1,...,ud`` (multipliers on a cyclic group)."""
    t = text.strip()
    if t == "id":
        return (IdentityEndo(),) * d
    if t.startswith("mul:"):
        if not isinstance(base, TableGroup) or not base.name.startswith("Z/"):
            raise ValueError("multiplier endomorphisms need a cyclic base group")
        us = [int(u) for u in t[4:].split(",")]
        if len(us) != d:
            raise ValueError(f"need {d} multipliers, got {len(us)}")
        return tuple(IdentityEndo() if u % base.order == 1 else cyclic_multiplier(base, u) for u in us)
    raise ValueError(f"unknown endomorphism choice {text!r} (expected 'id' or 'mul:u1,...')")

