"""Upper triangular matrix groups over Q or Z[1/p], exactly.

Matrices are tuples of rows of ``Fraction``; the ring is a membership
predicate over Q.  Cloning at k blows the (k, k) entry up to a d-by-d
scalar block, duplicates column k into the new columns, and moves row
k's off-diagonal part to the last row of the block.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .core import CloningSystem

Matrix = tuple[tuple[Fraction, ...], ...]


@dataclass(frozen=True)
class Ring:
    """Q when ``prime`` is None, else Z[1/prime]."""

    prime: Optional[int] = None

    def __post_init__(self) -> None:
        p = self.prime
        if p is not None and (p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1))):
            raise ValueError(f"{p} is not prime")

    @property
    def name(self) -> str:
        return "Q" if self.prime is None else f"Z[1/{self.prime}]"

    def _is_p_power(self, m: int) -> bool:
        while m % self.prime == 0:
            m //= self.prime
        return m == 1

    def contains(self, x: Fraction) -> bool:
        return self.prime is None or self._is_p_power(Fraction(x).denominator)

    def is_unit(self, x: Fraction) -> bool:
        x = Fraction(x)
        if x == 0:
            return False
        if self.prime is None:
            return True
        return self._is_p_power(abs(x.numerator)) and self._is_p_power(x.denominator)

    def sample_unit(self, rng: random.Random) -> Fraction:
        if self.prime is None:
            return rng.choice((1, -1)) * Fraction(rng.randint(1, 3), rng.randint(1, 2))
        return rng.choice((1, -1)) * Fraction(self.prime) ** rng.randint(-1, 1)

    def sample(self, rng: random.Random) -> Fraction:
        if rng.random() < 0.3:
            return Fraction(0)
        den = rng.randint(1, 2) if self.prime is None else self.prime ** rng.randint(0, 1)
        return Fraction(rng.randint(-3, 3), den)


def parse_scalar(tok: str) -> Fraction:
    return Fraction(tok)


def format_scalar(x: Fraction) -> str:
    return str(x)


def identity_matrix(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def scalar_matrix(n: int, r) -> Matrix:
    return tuple(tuple(Fraction(r) if i == j else Fraction(0) for j in range(n)) for i in range(n))


def as_matrix(rows: Sequence[Sequence]) -> Matrix:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    # upper triangular: only j <= m <= k contributes to entry (j, k)
    return tuple(
        tuple(
            sum((a[i][m] * b[m][j] for m in range(i, j + 1)), Fraction(0)) if j >= i else Fraction(0)
            for j in range(n)
        )
        for i in range(n)
    )


def mat_inv(a: Matrix) -> Matrix:
    """Inverse of an invertible upper triangular matrix by back substitution."""
    n = len(a)
    inv = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n - 1, -1, -1):
        inv[i][i] = 1 / a[i][i]
        for j in range(i + 1, n):
            s = sum((a[i][m] * inv[m][j] for m in range(i + 1, j + 1)), Fraction(0))
            inv[i][j] = -s / a[i][i]
    return tuple(tuple(row) for row in inv)


def mtx_clone(d: int, k: int, a: Matrix) -> Matrix:
    n = len(a)
    if not 1 <= k <= n:
        raise IndexError(f"clone index {k} out of range 1..{n}")
    size = n + d - 1
    k0 = k - 1
    out = [[Fraction(0)] * size for _ in range(size)]

    def col(c: int) -> list[int]:
        if c < k0:
            return [c]
        if c == k0:
            return list(range(k0, k0 + d))
        return [c + d - 1]

    for r in range(n):
        for c in range(r, n):
            x = a[r][c]
            if r < k0:
                for cc in col(c):
                    out[r][cc] = x
            elif r == k0:
                if c == k0:
                    for i in range(d):
                        out[k0 + i][k0 + i] = x
                else:
                    out[k0 + d - 1][c + d - 1] = x
            else:
                out[r + d - 1][c + d - 1] = x
    return tuple(tuple(row) for row in out)


def mtx_unclone(d: int, k: int, m: Matrix) -> Optional[Matrix]:
    size = len(m)
    n = size - d + 1
    if n < 1 or not 1 <= k <= n:
        return None
    k0 = k - 1
    block = range(k0, k0 + d)
    if any(m[i][i] != m[k0][k0] for i in block):
        return None
    for i in range(k0, k0 + d - 1):
        if any(m[i][j] != 0 for j in range(size) if j != i):
            return None
    for r in range(k0):
        if any(m[r][c] != m[r][k0] for c in block):
            return None
    keep = [c for c in range(size) if c not in range(k0 + 1, k0 + d)]
    rows = []
    for r in keep:
        src = k0 + d - 1 if r == k0 else r
        rows.append([m[src][c] for c in keep])
    rows[k0][k0] = m[k0][k0]
    a = tuple(tuple(row) for row in rows)
    return a if mtx_clone(d, k, a) == m else None


def format_matrix(a: Matrix) -> str:
    return "; ".join(" ".join(format_scalar(x) for x in row) for row in a)


def parse_matrix(text: str) -> Matrix:
    rows = [r.split() for r in text.split(";")]
    if any(len(r) != len(rows) for r in rows):
        raise ValueError(f"matrix text is not square: {text!r}")
    return tuple(tuple(parse_scalar(t) for t in r) for r in rows)


def homothety_ratio(a: Matrix, b: Matrix) -> Optional[Fraction]:
    """The scalar r with a == r b, if there is one."""
    r = a[0][0] / b[0][0]
    n = len(a)
    if all(a[i][j] == r * b[i][j] for i in range(n) for j in range(i, n)):
        return r
    return None


@dataclass(frozen=True, repr=False)
class UpperTriangularSystem(CloningSystem):
    """Invertible upper triangular matrices B_n(R); pure."""

    ring: Ring = Ring()
    d: int = 2
    claims_fully_compatible = True
    claims_pure = True
    claims_slightly_pure = True
    claims_uniform = True
    middle_grammar = "rows separated by ';', entries by spaces, rationals 'a/b'"

    @property
    def name(self) -> str:
        return f"B({self.ring.name},{self.d})"

    @property
    def claims_diverse(self) -> bool:
        # scalar matrices r*I lie in every image as soon as R has a unit r != 1
        return False

    def identity(self, n):
        return identity_matrix(n)

    def mul(self, n, g, h):
        return mat_mul(g, h)

    def inv(self, n, g):
        return mat_inv(g)

    def clone(self, n, k, g):
        return mtx_clone(self.d, k, g)

    def unclone(self, n, k, g):
        return mtx_unclone(self.d, k, g)

    def generators(self, n):
        out = [scalar_matrix(n, 2 if self.ring.prime is None else self.ring.prime)]
        for i in range(n):
            for j in range(i + 1, n):
                e = [list(r) for r in identity_matrix(n)]
                e[i][j] = Fraction(1)
                out.append(as_matrix(e))
        return out

    def sample(self, n, rng):
        rows = []
        for i in range(n):
            row = [Fraction(0)] * n
            row[i] = self.ring.sample_unit(rng)
            for j in range(i + 1, n):
                row[j] = self.ring.sample(rng)
            rows.append(row)
        return as_matrix(rows)

    def validate(self, n, g):
        if len(g) != n or any(len(r) != n for r in g):
            raise ValueError(f"expected a {n}x{n} matrix")
        for i in range(n):
            if any(g[i][j] != 0 for j in range(i)):
                raise ValueError("matrix is not upper triangular")
            if not self.ring.is_unit(g[i][i]):
                raise ValueError(f"diagonal entry {g[i][i]} is not a unit of {self.ring.name}")
            if not all(self.ring.contains(x) for x in g[i]):
                raise ValueError(f"entries must lie in {self.ring.name}")

    def format_middle(self, g):
        return format_matrix(g)

    def parse_middle(self, text, n):
        m = parse_matrix(text)
        if len(m) != n:
            raise ValueError(f"matrix {text!r} has size {len(m)}, expected {n}")
        return m


@dataclass(frozen=True, repr=False)
class HomothetyQuotientSystem(UpperTriangularSystem):
    """B_n(R) modulo scalar matrices; representatives are normalized to a_11 = 1."""

    ring: Ring = Ring()
    d: int = 2

    @property
    def name(self) -> str:
        return f"Bbar({self.ring.name},{self.d})"

    @property
    def claims_diverse(self) -> bool:
        return True

    @staticmethod
    def _normalize(g: Matrix) -> Matrix:
        r = g[0][0]
        if r == 1:
            return g
        return tuple(tuple(x / r for x in row) for row in g)

    def mul(self, n, g, h):
        return self._normalize(mat_mul(g, h))

    def inv(self, n, g):
        return self._normalize(mat_inv(g))

    def unclone(self, n, k, g):
        return mtx_unclone(self.d, k, self._normalize(g))

    def eq(self, n, g, h):
        r = homothety_ratio(g, h)
        return r is not None and self.ring.is_unit(r)

    def generators(self, n):
        return super().generators(n)[1:]

    def sample(self, n, rng):
        return self._normalize(super().sample(n, rng))


@dataclass(frozen=True, repr=False)
class AbelsSystem(UpperTriangularSystem):
    """Matrices over Z[1/p] with both corner entries equal to 1."""

    ring: Ring = Ring(2)
    d: int = 2

    def __post_init__(self) -> None:
        if self.ring.prime is None:
            raise ValueError("Abels groups live over Z[1/p]")

    @property
    def name(self) -> str:
        return f"Abels({self.ring.prime},{self.d})"

    @property
    def claims_diverse(self) -> bool:
        return True

    def generators(self, n):
        gens = super().generators(n)[1:]
        p = Fraction(self.ring.prime)
        for i in range(1, n - 1):
            e = [list(r) for r in identity_matrix(n)]
            e[i][i] = p
            gens.append(as_matrix(e))
        return gens

    def sample(self, n, rng):
        g = [list(r) for r in super().sample(n, rng)]
        g[0][0] = Fraction(1)
        g[n - 1][n - 1] = Fraction(1)
        return as_matrix(g)

    def validate(self, n, g):
        super().validate(n, g)
        if g[0][0] != 1 or g[n - 1][n - 1] != 1:
            raise ValueError("Abels matrices need (1,1) and (n,n) entries equal to 1")


def instance_B(ring: Ring = Ring(), d: int = 2) -> UpperTriangularSystem:
    return UpperTriangularSystem(ring, d)


def instance_Bbar(ring: Ring = Ring(), d: int = 2) -> HomothetyQuotientSystem:
    return HomothetyQuotientSystem(ring, d)


def instance_Abels(p: int = 2, d: int = 2) -> AbelsSystem:
    return AbelsSystem(Ring(p), d)
