"""Finite experiments around infinite conjugacy classes and central sequences.

Everything here is evidence at a bounded radius or level: conjugacy growth
curves, central elements of non-ICC examples, commutation of elements
supported away from a leaf, and explicit sequences supported near 1.
"""

from __future__ import annotations

import csv
import io
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional, Sequence

from .core import (
    CloningSystem,
    Element,
    NotApplicable,
    commutator,
    commutes,
    conjugate,
    equals,
    is_identity,
    power,
    random_element,
    reduce,
)
from .maps import (
    action_fingerprint,
    as_F,
    graft_element,
    in_D,
    representative_at_depth,
    rightmost_address,
    theta,
    x0,
    x1,
)
from .perms import pl_support
from .products import ProductSystem
from .props import FAIL, INAPPLICABLE, PASS, PropertyReport
from .trees import (
    Tree,
    add_caret,
    graft,
    leaf,
    leaf_index,
    random_tree,
    right_vine,
    spine,
    subtree_at,
)

MAX_RADIUS = 4


@dataclass
class GrowthCurve:
    instance: str
    base: str
    generators: list[str]
    counts: list[int]
    seed: Optional[int] = None

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["radius", "count"])
        for r, c in enumerate(self.counts):
            w.writerow([r, c])
        return buf.getvalue()

    @property
    def strictly_increasing(self) -> bool:
        return all(a < b for a, b in zip(self.counts, self.counts[1:]))


class _Distinct:
    """Distinct group elements.

    Canonical keys are used when representatives are unique; otherwise
    elements are bucketed by their action fingerprint (a class invariant)
    and compared pairwise only inside a bucket.
    """

    def __init__(self, s: CloningSystem) -> None:
        self.keyed = s.unique_reduced_form
        self.bucketed = s.claims_fully_compatible
        self.keys: set = set()
        self.buckets: dict[tuple, list[Element]] = {}
        self.count = 0

    def add(self, x: Element) -> None:
        if self.keyed:
            self.keys.add(x.key())
            self.count = len(self.keys)
            return
        bucket = self.buckets.setdefault(action_fingerprint(x) if self.bucketed else (), [])
        if not any(equals(x, y) for y in bucket):
            bucket.append(x)
            self.count += 1

    def __len__(self) -> int:
        return self.count


def conjugacy_growth(
    x: Element, gens: Sequence[Element], rmax: int, seed: Optional[int] = None
) -> GrowthCurve:
    """Count distinct ``w x w^-1`` over reduced words w of length at most r."""
    if is_identity(x):
        raise ValueError("conjugacy growth of the identity is not informative")
    if not 0 <= rmax <= MAX_RADIUS:
        raise ValueError(f"radius must lie in 0..{MAX_RADIUS}")
    s = x.system
    letters = [(i, 1, g) for i, g in enumerate(gens)] + [(i, -1, g.inverse()) for i, g in enumerate(gens)]
    seen = _Distinct(s)
    seen.add(x)
    counts = [len(seen)]
    frontier: list[tuple[Optional[tuple[int, int]], Element]] = [(None, s.one())]
    for _ in range(rmax):
        nxt = []
        for last, w in frontier:
            for i, sign, g in letters:
                if last == (i, -sign):
                    continue
                u = w * g
                nxt.append(((i, sign), u))
                seen.add(u * x * u.inverse())
        frontier = nxt
        counts.append(len(seen))
    return GrowthCurve(s.name, str(x), [str(g) for g in gens], counts, seed)


def middle_probe(s: CloningSystem) -> Optional[Element]:
    """``[T, g, T]`` for the first non-trivial generator g at the smallest usable level."""
    for carets in range(0, 4):
        t = right_vine(s.d, carets) if carets else leaf(s.d)
        n = t.n_leaves
        for g in s.generators(n):
            if not s.is_identity_middle(n, g):
                return s.element(t, g, t)
    return None


def growth_generators(s: CloningSystem) -> list[Element]:
    gens = [x0(s), x1(s)]
    m = middle_probe(s)
    if m is not None:
        gens.append(m)
    return gens


def probe_elements(s: CloningSystem) -> list[Element]:
    """Five fixed non-trivial probes."""
    a, b = x0(s), x1(s)
    m = middle_probe(s)
    probes = [a, b, commutator(a, b)]
    if m is not None:
        probes += [m, a * m]
    else:
        probes += [a * b, b * b]
    return probes


# --- central elements of direct products ------------------------------------------


def verify_central_element(
    s: CloningSystem, z: Any = None, samples: int = 200, seed: int = 0
) -> PropertyReport:
    """``[1, z, 1]`` for central z of the base group commutes with everything."""
    prop = "central-element"
    if not isinstance(s, ProductSystem) or s.psi or not s.claims_uniform:
        return PropertyReport(prop, s.name, "randomized", [1], INAPPLICABLE, note="needs a product family with identity endomorphisms")
    base = s.base
    if z is None:
        z = base.center_witness()
        if z is None:
            return PropertyReport(prop, s.name, "randomized", [1], INAPPLICABLE, note=f"{base.name} has trivial center")
    if base.eq(z, base.identity()):
        raise ValueError("the central element must be non-trivial")
    if not base.is_central(z, random.Random(seed)):
        raise ValueError(f"{base.format(z)} is not central in {base.name}")
    c = s.element(leaf(s.d), (z,), leaf(s.d))
    rng = random.Random(f"{seed}/{prop}")
    witnesses = []
    for _ in range(samples):
        y = random_element(s, rng)
        if not commutes(c, y):
            witnesses.append({"element": str(y)})
            break
    # replay [T-,g,T+][1,z,1][T-,g,T+]^-1 = [T-,(z..z),T-] on fixed conjugators
    for carets in (1, 2, 3):
        tm = right_vine(s.d, carets)
        tp = random_tree(s.d, carets, random.Random(f"{seed}/replay/{carets}"))
        n = tp.n_leaves
        y = s.element(tm, s.sample(n, random.Random(f"{seed}/mid/{carets}")), tp)
        shape = Element(s, tm, (z,) * n, tm)
        if not (equals(conjugate(c, y), shape) and equals(shape, c)):
            witnesses.append({"conjugator": str(y)})
    return PropertyReport(
        prop,
        s.name,
        "randomized",
        [1],
        FAIL if witnesses else PASS,
        seed=seed,
        samples=samples,
        checked=samples + 3,
        witnesses=witnesses,
        note=f"z = {base.format(z)}",
    )


# --- commutation away from a leaf ----------------------------------------------------


def random_agreeing_pair(d: int, v: Sequence[int], extra: int, graft_carets: int, rng: random.Random) -> tuple[Tree, Tree]:
    """Trees T, U that agree away from ``v`` and have the same number of leaves."""
    v = tuple(v)
    base = spine(d, v)
    for _ in range(extra):
        k_v = leaf_index(base, v)
        choices = [k for k in range(1, base.n_leaves + 1) if k != k_v]
        if not choices:
            break
        base = add_caret(base, rng.choice(choices))
    top = random_tree(d, graft_carets, rng)
    bottom = random_tree(d, graft_carets, rng)
    return graft(base, v, top), graft(base, v, bottom)


def verify_uniform_commutation(
    s: CloningSystem,
    r_minus: Tree,
    r_plus: Tree,
    g: Any,
    v: Sequence[int],
    trials: int = 100,
    seed: int = 0,
    check_preconditions: bool = True,
    max_carets: int = 3,
) -> PropertyReport:
    """``[R-, g, R+]`` against ``[T, 1, U]`` for random T, U agreeing away from v."""
    prop = "uniform-commutation"
    v = tuple(v)
    if check_preconditions and not (s.claims_slightly_pure and s.claims_uniform):
        raise NotApplicable(f"{s.name} is not slightly pure and uniform")
    for r in (r_minus, r_plus):
        t = subtree_at(r, v)
        if t is None or t.children is not None:
            raise ValueError(f"address {v} is not a leaf of both trees")
    y = s.element(r_minus, g, r_plus)
    rng = random.Random(f"{seed}/{prop}")
    witnesses = []
    for _ in range(trials):
        t, u = random_agreeing_pair(s.d, v, rng.randint(0, 2), rng.randint(1, max_carets), rng)
        c = s.tree_pair(t, u)
        if not commutes(y, c):
            witnesses.append({"element": str(y), "tree_pair": str(c)})
            if len(witnesses) >= 3:
                break
    return PropertyReport(
        prop,
        s.name,
        "randomized",
        [r_minus.n_leaves],
        FAIL if witnesses else PASS,
        seed=seed,
        samples=trials,
        checked=trials,
        witnesses=witnesses,
        note=f"v = {''.join(map(str, v)) or 'root'}",
    )


class WitnessError(RuntimeError):
    """A witness pair failed its own verification."""


def check_depth(E: Sequence[Element], m: int) -> None:
    for e in E:
        if not in_D(e):
            raise ValueError(f"{e} is not in the kernel of theta")
        if representative_at_depth(e, m) is None:
            raise ValueError(f"m = {m} is too small: {e} has no representative of right depth {m}")


def finite_commutant_witness(E: Sequence[Element], m: int, s: Optional[CloningSystem] = None) -> tuple[Element, Element]:
    """Two non-commuting elements that both commute with every element of E."""
    if s is None:
        if not E:
            raise ValueError("need the instance when E is empty")
        s = E[0].system
    check_depth(E, m)
    v = rightmost_address(s.d, m)
    c1, c2 = graft_element(x0(s), v), graft_element(x1(s), v)
    for e in E:
        for c in (c1, c2):
            if not commutes(c, e):
                raise WitnessError(f"{c} does not commute with {e}")
    if commutes(c1, c2):
        raise WitnessError("witness elements commute with each other")
    return c1, c2


# --- central sequences ---------------------------------------------------------------


def sequence_depth(d: int, n: int) -> int:
    """ceil(log_d n) + 1, so the last interval of width d^-m sits inside (1 - 1/n, 1)."""
    if n < 1:
        raise ValueError("n must be positive")
    m, p = 0, 1
    while p < n:
        m += 1
        p *= d
    return m + 1


def central_sequence(s: CloningSystem, n: int) -> Element:
    """A commutator of F_d elements supported in the last d-adic interval of width d^-m_n."""
    if not s.claims_slightly_pure:
        raise NotApplicable(f"{s.name} is not slightly pure")
    v = rightmost_address(s.d, sequence_depth(s.d, n))
    return commutator(graft_element(x0(s), v), graft_element(x1(s), v))


def support_within(x: Element, lo: Fraction) -> bool:
    return all(a >= lo for a, _ in pl_support(as_F(x)))


@dataclass
class SequenceRow:
    n: int
    depth: int
    nontrivial: bool
    support_ok: bool
    commutes_with_E: bool
    conjugate_differs: dict[int, bool] = field(default_factory=dict)


def verify_central_sequence(
    E: Sequence[Element], nmax: int, ks: Sequence[int] = (1,), s: Optional[CloningSystem] = None
) -> tuple[PropertyReport, list[SequenceRow], Optional[int]]:
    """Table of checks for a_1..a_nmax and the onset after which a_n centralizes E."""
    if s is None:
        if not E:
            raise ValueError("need the instance when E is empty")
        s = E[0].system
    ks = list(ks)
    if not ks or 0 in ks:
        raise ValueError("conjugation exponents must be non-zero")
    a = x0(s)
    shifts = {k: power(a, k) for k in ks}
    rows = []
    for n in range(1, nmax + 1):
        an = central_sequence(s, n)
        row = SequenceRow(
            n,
            sequence_depth(s.d, n),
            not is_identity(an),
            support_within(an, 1 - Fraction(1, n)),
            all(commutes(an, e) for e in E),
        )
        for k, xk in shifts.items():
            row.conjugate_differs[k] = not equals(conjugate(an, xk), an)
        rows.append(row)
    onset = None
    for row in reversed(rows):
        if not row.commutes_with_E:
            break
        onset = row.n
    witnesses = [
        {"n": r.n, "nontrivial": r.nontrivial, "support_ok": r.support_ok, "differs": r.conjugate_differs}
        for r in rows
        if not (r.nontrivial and r.support_ok and all(r.conjugate_differs.values()))
    ]
    verdict = PASS if not witnesses and onset is not None else FAIL
    report = PropertyReport(
        "central-sequence",
        s.name,
        "exhaustive",
        list(range(1, nmax + 1)),
        verdict,
        checked=nmax,
        witnesses=witnesses[:5],
        note=f"onset={onset} k={ks}",
    )
    return report, rows, onset


def sequence_csv(rows: Sequence[SequenceRow]) -> str:
    ks = sorted(rows[0].conjugate_differs) if rows else []
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "depth", "nontrivial", "support_ok", "commutes_with_E"] + [f"differs_k{k}" for k in ks])
    for r in rows:
        w.writerow([r.n, r.depth, r.nontrivial, r.support_ok, r.commutes_with_E] + [r.conjugate_differs[k] for k in ks])
    return buf.getvalue()


def fixed_D_set(s: CloningSystem, size: int = 4, seed: int = 0, max_carets: int = 3) -> list[Element]:
    """Deterministic elements of the theta kernel: random elements corrected by powers of x0.

    Even positions are forced to have distinct trees so E is not purely
    made of middles.
    """
    rng = random.Random(f"{seed}/D")
    a = x0(s)
    out = []
    while len(out) < size:
        x = random_element(s, rng, max_carets)
        y = reduce(x * power(a, -theta(x)))
        if is_identity(y) or (len(out) % 2 == 0 and y.minus == y.plus):
            continue
        out.append(y)
    return out


# --- replay of the normal subgroup argument ------------------------------------------


@dataclass
class NormalsReplay:
    tree: Tree
    middle: Any
    conjugation_ok: bool
    escapes: list[tuple[int, int]]

    @property
    def forced(self) -> bool:
        """True when every conjugate stayed in K_T (only possible for trivial g)."""
        return not self.escapes


def replay_no_normals(s: CloningSystem, t: Tree, g: Any) -> NormalsReplay:
    """Conjugate ``[T, g, T]`` by ``[T_l, 1, T_k]`` and test membership in K_T.

    The conjugate is ``[T_l, (g)k_k, T_l]``; it lies in K_T exactly when
    ``(g)k_k`` is in the image of the l-th cloning map.
    """
    n = t.n_leaves
    if not s.rho(n, g).is_identity():
        raise ValueError("g must lie in the kernel of rho")
    x = s.element(t, g, t)
    ok = True
    escapes = []
    for k in range(1, n + 1):
        tk = add_caret(t, k)
        gk = s.clone(n, k, g)
        for ell in range(1, n + 1):
            tl = add_caret(t, ell)
            y = s.tree_pair(tl, tk)
            if not equals(conjugate(x, y), Element(s, tl, gk, tl)):
                ok = False
            if s.unclone(n, ell, gk) is None:
                escapes.append((k, ell))
    return NormalsReplay(t, g, ok, escapes)

