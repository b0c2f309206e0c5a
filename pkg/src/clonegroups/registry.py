"""Construct shipped instances from a name and a few parameters."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Optional

from .braids import instance_bF, instance_bV
from .core import CloningSystem
from .matrices import Ring, instance_Abels, instance_B, instance_Bbar
from .perms import instance_F, instance_V, instance_Vhat
from .products import instance_Pi, instance_Psi, instance_ZInf, parse_base_group, parse_endos


@dataclass(frozen=True)
class InstanceSpec:
    name: str
    summary: str
    params: str


CATALOG = [
    InstanceSpec("F", "Thompson's group F_d (trivial groups)", "d"),
    InstanceSpec("V", "Higman-Thompson V_d (symmetric groups)", "d"),
    InstanceSpec("Vhat", "V_d with permutations fixing the last point", "d"),
    InstanceSpec("bV", "braided V_d (braid groups)", "d"),
    InstanceSpec("bF", "braided F_d (pure braid groups)", "d"),
    InstanceSpec("B", "upper triangular matrices", "d, ring"),
    InstanceSpec("Bbar", "upper triangular matrices modulo scalars", "d, ring"),
    InstanceSpec("Abels", "Abels groups over Z[1/p]", "d, prime"),
    InstanceSpec("Pi", "direct products with injective endomorphisms", "d, base, endos"),
    InstanceSpec("Psi", "direct products with trivial first coordinate", "d, base"),
    InstanceSpec("ZInf", "products of Z^infinity with interleaving shifts", "d"),
]

_RING = re.compile(r"^Z\[1/(\d+)\]$")


def parse_ring(text: Optional[str], prime: Optional[int] = None) -> Ring:
    if prime is not None:
        return Ring(prime)
    if text is None or text == "Q":
        return Ring()
    m = _RING.match(text.replace(" ", ""))
    if not m:
        raise ValueError(f"unknown ring {text!r} (expected Q or Z[1/p])")
    return Ring(int(m.group(1)))


def build_instance(
    name: str,
    d: int = 2,
    ring: Optional[str] = None,
    prime: Optional[int] = None,
    base: Optional[str] = None,
    endos: Optional[str] = None,
) -> CloningSystem:
    if d < 2:
        raise ValueError("arity d must be at least 2")
    simple: dict[str, Callable[[int], CloningSystem]] = {
        "F": instance_F,
        "V": instance_V,
        "Vhat": instance_Vhat,
        "bV": instance_bV,
        "bF": instance_bF,
        "ZInf": instance_ZInf,
    }
    if name in simple:
        return simple[name](d)
    if name == "B":
        return instance_B(parse_ring(ring, prime), d)
    if name == "Bbar":
        return instance_Bbar(parse_ring(ring, prime), d)
    if name == "Abels":
        if prime is None and ring is not None:
            prime = parse_ring(ring).prime
            if prime is None:
                raise ValueError("Abels groups need Z[1/p], not Q")
        return instance_Abels(prime or 2, d)
    if name in ("Pi", "Psi"):
        g = parse_base_group(base or "Z/4")
        if name == "Psi":
            if endos not in (None, "id"):
                raise ValueError("Psi always uses identity endomorphisms")
            return instance_Psi(g, d)
        return instance_Pi(g, parse_endos(g, endos or "id", d), d)
    raise ValueError(f"unknown instance {name!r}; choose from {', '.join(s.name for s in CATALOG)}")


def describe(s: CloningSystem) -> dict:
    return {
        "instance": s.name,
        "d": s.d,
        "claims": s.flags(),
        "unique_reduced_form": s.unique_reduced_form,
        "element_grammar": "[tree;middle;tree] with trees over L and parentheses",
        "middle_grammar": s.middle_grammar,
    }
