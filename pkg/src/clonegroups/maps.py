"""Structural maps on Thompson-like groups: the quotient to V_d, theta, x0.

``pi`` forgets everything about the middle entry except its permutation;
``theta`` compares right depths of the two trees and is a homomorphism
whenever every rho(g) fixes the last leaf.  Elements with trivial middle
form a copy of F_d inside every instance; ``graft`` pushes such an element
into the subtree below a vertex.
"""

from __future__ import annotations

import itertools
from typing import Optional, Sequence

from .core import CloningSystem, Element, NotApplicable, expand, is_identity, power
from .perms import FSystem, instance_F, instance_V
from .trees import Address, graft, leaf_addresses, left_vine, right_depth, right_vine, spine


def _require_fully_compatible(x: Element) -> None:
    if not x.system.claims_fully_compatible:
        raise NotApplicable(f"{x.system.name} is not fully compatible, so pi is undefined")


def _require_slightly_pure(s: CloningSystem) -> None:
    if not s.claims_slightly_pure:
        raise NotApplicable(f"{s.name} is not slightly pure, so theta is undefined")


def pi(x: Element) -> Element:
    """Image in V_d: replace the middle by its permutation."""
    _require_fully_compatible(x)
    s = x.system
    return instance_V(s.d).element(x.minus, s.rho(x.level, x.middle), x.plus)


def in_kernel_K(x: Element) -> bool:
    return is_identity(pi(x))


def theta(x: Element) -> int:
    _require_slightly_pure(x.system)
    return right_depth(x.minus) - right_depth(x.plus)


def in_D(x: Element) -> bool:
    return theta(x) == 0


def x0(s: CloningSystem) -> Element:
    """The standard generator with theta value 1."""
    return s.tree_pair(right_vine(s.d, 2), left_vine(s.d, 2))


def x1(s: CloningSystem) -> Element:
    return graft_element(x0(s), (s.d - 1,))


def decompose(x: Element) -> tuple[Element, int]:
    """``x = w * x0^m`` with ``w`` in the kernel of theta."""
    m = theta(x)
    return x * power(x0(x.system), -m), m


def graft_element(x: Element, v: Sequence[int]) -> Element:
    """Push an element with trivial middle into the subtree at address ``v``."""
    s = x.system
    if not s.is_identity_middle(x.level, x.middle):
        raise ValueError("grafting needs an element with trivial middle")
    base = spine(s.d, tuple(v))
    return s.tree_pair(graft(base, v, x.minus), graft(base, v, x.plus))


def as_F(x: Element) -> Element:
    """The F_d element with the same trees; the middle must be trivial."""
    s = x.system
    if isinstance(s, FSystem):
        return x
    if not s.is_identity_middle(x.level, x.middle):
        raise ValueError(f"{x} has a non-trivial middle and is not in the copy of F_d")
    return instance_F(s.d).tree_pair(x.minus, x.plus)


def embed_F(s: CloningSystem, f: Element) -> Element:
    """The copy of an F_d element inside instance ``s``."""
    if f.system.d != s.d:
        raise ValueError(f"arity mismatch: {f.system.d} vs {s.d}")
    return s.tree_pair(f.minus, f.plus)


def representative_at_depth(x: Element, m: int) -> Optional[Element]:
    """A representative whose two trees both have right depth ``m``, if expansion reaches one.

    Expanding at the last leaf deepens both trees at once, since rho fixes
    the last leaf in a slightly pure system.
    """
    _require_slightly_pure(x.system)
    if right_depth(x.minus) != right_depth(x.plus):
        return None
    y = x
    while right_depth(y.plus) < m:
        y = expand(y, y.level)
    return y if right_depth(y.plus) == m and right_depth(y.minus) == m else None


def rightmost_address(d: int, m: int) -> Address:
    return (d - 1,) * m



def _probe_words(d: int, depth: int = 3) -> list[tuple[Address, int]]:
    out = []
    for length in range(depth + 1):
        for p in itertools.product(range(d), repeat=length):
            out += [(p, 0), (p, d - 1)]
    return out


def _normalize_point(word: Address, tail: int) -> tuple[Address, int]:
    w = list(word)
    while w and w[-1] == tail:
        w.pop()
    return tuple(w), tail


def action_fingerprint(x: Element, depth: int = 3) -> tuple:
    """Images of fixed eventually constant infinite words under pi(x).

    The prefix-replacement action of pi(x) is an invariant of the group
    element, so equal elements always have equal fingerprints.
    """
    _require_fully_compatible(x)
    s = x.system
    dom = leaf_addresses(x.plus)
    rng = leaf_addresses(x.minus)
    sigma = s.rho(x.level, x.middle)
    out = []
    for p, tail in _probe_words(s.d, depth):
        for k, u in enumerate(dom, start=1):
            head, rest = u[: len(p)], u[len(p) :]
            if head == p[: len(u)] and all(c == tail for c in rest):
                image = rng[sigma(k) - 1] + p[len(u) :]
                out.append(_normalize_point(image, tail))
                break
    return tuple(out)
