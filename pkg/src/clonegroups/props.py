"""Checkers for the cloning axioms and the named properties of a cloning system.

Each checker runs per level and returns a :class:`PropertyReport`.  Finite
levels are enumerated outright when small enough; otherwise a seeded
random sample is drawn.  Failures always carry at least one witness,
printed in the instance's text formats.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import asdict, dataclass, field
from typing import Any, Callable, Iterable, Iterator, Optional, Union

from .core import CloningSystem, equals, random_element
from .permutation import sigma_clone

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive-pass"
INAPPLICABLE = "inapplicable"

EXHAUSTIVE_LIMIT = 10**6
DEFAULT_SAMPLES = 500
MAX_WITNESSES = 5

Levels = Union[int, Iterable[int]]


@dataclass
class PropertyReport:
    property: str
    instance: str
    mode: str
    levels: list[int]
    verdict: str
    seed: Optional[int] = None
    samples: Optional[int] = None
    checked: int = 0
    witnesses: list[dict] = field(default_factory=list)
    note: str = ""

    @property
    def ok(self) -> bool:
        return self.verdict in (PASS, INCONCLUSIVE)

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def __str__(self) -> str:
        lines = [
            f"{self.property} on {self.instance}: {self.verdict}",
            f"  mode={self.mode} levels={self.levels} checked={self.checked}"
            + (f" seed={self.seed} samples={self.samples}" if self.mode != "exhaustive" else ""),
        ]
        if self.note:
            lines.append(f"  note: {self.note}")
        for w in self.witnesses:
            lines.append("  witness: " + ", ".join(f"{k}={v}" for k, v in w.items()))
        return "\n".join(lines)


def merge_reports(reports: list[PropertyReport]) -> PropertyReport:
    """Combine per-level reports for one property into a single report."""
    if not reports:
        raise ValueError("nothing to merge")
    first = reports[0]
    order = [FAIL, INCONCLUSIVE, PASS, INAPPLICABLE]
    verdicts = {r.verdict for r in reports}
    applicable = verdicts - {INAPPLICABLE}
    verdict = next(v for v in order if v in (applicable or verdicts))
    modes = sorted({r.mode for r in reports})
    return PropertyReport(
        property=first.property,
        instance=first.instance,
        mode=modes[0] if len(modes) == 1 else "mixed",
        levels=sorted({n for r in reports for n in r.levels}),
        verdict=verdict,
        seed=first.seed,
        samples=first.samples,
        checked=sum(r.checked for r in reports),
        witnesses=[w for r in reports for w in r.witnesses][:MAX_WITNESSES],
        note="; ".join(dict.fromkeys(r.note for r in reports if r.note)),
    )


def _levels(levels: Levels) -> list[int]:
    out = [levels] if isinstance(levels, int) else list(levels)
    if not out or any(n < 1 for n in out):
        raise ValueError(f"levels must be positive, got {out}")
    return out


def _rng(seed: int, prop: str, n: int) -> random.Random:
    # string seeds are hashed deterministically by random.Random
    return random.Random(f"{seed}/{prop}/{n}")


def _finite(s: CloningSystem, n: int, power: int) -> Optional[list]:
    order = s.order(n)
    if order is None or order**power > EXHAUSTIVE_LIMIT:
        return None
    elems = s.elements(n)
    return None if elems is None else list(elems)


def _pick_mode(s: CloningSystem, n: int, power: int, mode: str) -> tuple[str, Optional[list]]:
    if mode not in ("auto", "exhaustive", "randomized"):
        raise ValueError(f"unknown mode {mode!r}")
    elems = None if mode == "randomized" else _finite(s, n, power)
    if mode == "exhaustive" and elems is None:
        raise ValueError(f"{s.name} level {n} is too large or infinite for exhaustive mode")
    return ("exhaustive", elems) if elems is not None else ("randomized", None)


def _tuples(
    s: CloningSystem, n: int, power: int, mode: str, seed: int, samples: int, prop: str
) -> tuple[str, Iterator[tuple]]:
    chosen, elems = _pick_mode(s, n, power, mode)
    if elems is not None:
        return chosen, itertools.product(elems, repeat=power)
    rng = _rng(seed, prop, n)
    return chosen, (tuple(s.sample(n, rng) for _ in range(power)) for _ in range(samples))


def _run(
    s: CloningSystem,
    prop: str,
    levels: Levels,
    power: int,
    mode: str,
    seed: int,
    samples: int,
    test: Callable[[int, tuple], Optional[dict]],
) -> PropertyReport:
    reports = []
    for n in _levels(levels):
        chosen, cases = _tuples(s, n, power, mode, seed, samples, prop)
        witnesses: list[dict] = []
        checked = 0
        for case in cases:
            checked += 1
            w = test(n, case)
            if w is not None:
                witnesses.append({"n": n, **w})
                if len(witnesses) >= MAX_WITNESSES:
                    break
        reports.append(
            PropertyReport(
                prop,
                s.name,
                chosen,
                [n],
                FAIL if witnesses else PASS,
                seed=None if chosen == "exhaustive" else seed,
                samples=None if chosen == "exhaustive" else samples,
                checked=checked,
                witnesses=witnesses,
            )
        )
    return merge_reports(reports)


def check_c1(s: CloningSystem, levels: Levels, mode: str = "auto", seed: int = 0, samples: int = DEFAULT_SAMPLES) -> PropertyReport:
    """Cloning a product: ``(gh)k_k = (g)k_{rho(h)(k)} (h)k_k``."""
    m = s.d - 1
    f = s.format_middle

    def test(n, case):
        g, h = case
        rh = s.rho(n, h)
        for k in range(1, n + 1):
            lhs = s.clone(n, k, s.mul(n, g, h))
            rhs = s.mul(n + m, s.clone(n, rh(k), g), s.clone(n, k, h))
            if not s.eq(n + m, lhs, rhs):
                return {"g": f(g), "h": f(h), "k": k}
        return None

    return _run(s, "c1", levels, 2, mode, seed, samples, test)


def check_c2(s: CloningSystem, levels: Levels, mode: str = "auto", seed: int = 0, samples: int = DEFAULT_SAMPLES) -> PropertyReport:
    """Product of clonings: cloning at l then k equals cloning at k then l+d-1, for k < l."""
    m = s.d - 1
    f = s.format_middle

    def test(n, case):
        (g,) = case
        for k in range(1, n + 1):
            for ell in range(k + 1, n + 1):
                lhs = s.clone(n + m, k, s.clone(n, ell, g))
                rhs = s.clone(n + m, ell + m, s.clone(n, k, g))
                if not s.eq(n + 2 * m, lhs, rhs):
                    return {"g": f(g), "k": k, "l": ell}
        return None

    return _run(s, "c2", levels, 1, mode, seed, samples, test)


def check_c3(
    s: CloningSystem,
    levels: Levels,
    mode: str = "auto",
    seed: int = 0,
    samples: int = DEFAULT_SAMPLES,
    full: bool = False,
) -> PropertyReport:
    """Compatibility of rho with the standard cloning of permutations.

    With ``full`` the identity must hold inside the cloned block as well.
    """
    d = s.d
    f = s.format_middle

    def test(n, case):
        (g,) = case
        r = s.rho(n, g)
        for k in range(1, n + 1):
            got = s.rho(n + d - 1, s.clone(n, k, g))
            want = sigma_clone(d, n, k, r)
            for i in range(1, n + d):
                if not full and k <= i < k + d:
                    continue
                if got(i) != want(i):
                    return {"g": f(g), "k": k, "i": i, "got": got(i), "want": want(i)}
        return None

    return _run(s, "fully-compatible" if full else "c3", levels, 1, mode, seed, samples, test)


def check_fully_compatible(s: CloningSystem, levels: Levels, mode: str = "auto", seed: int = 0, samples: int = DEFAULT_SAMPLES) -> PropertyReport:
    return check_c3(s, levels, mode, seed, samples, full=True)


def check_pure(s: CloningSystem, levels: Levels, mode: str = "auto", seed: int = 0, samples: int = DEFAULT_SAMPLES) -> PropertyReport:
    def test(n, case):
        (g,) = case
        r = s.rho(n, g)
        return None if r.is_identity() else {"g": s.format_middle(g), "rho": str(r)}

    return _run(s, "pure", levels, 1, mode, seed, samples, test)


def check_slightly_pure(s: CloningSystem, levels: Levels, mode: str = "auto", seed: int = 0, samples: int = DEFAULT_SAMPLES) -> PropertyReport:
    def test(n, case):
        (g,) = case
        r = s.rho(n, g)
        return None if r(n) == n else {"g": s.format_middle(g), "rho": str(r)}

    return _run(s, "slightly-pure", levels, 1, mode, seed, samples, test)


def check_uniform(s: CloningSystem, levels: Levels, mode: str = "auto", seed: int = 0, samples: int = DEFAULT_SAMPLES) -> PropertyReport:
    """Re-cloning any position of a freshly cloned block gives the same result."""
    d = s.d
    m = d - 1
    f = s.format_middle

    def test(n, case):
        (g,) = case
        for k in range(1, n + 1):
            c = s.clone(n, k, g)
            base = s.clone(n + m, k, c)
            for ell in range(k + 1, k + d):
                other = s.clone(n + m, ell, c)
                if not s.eq(n + 2 * m, base, other):
                    return {"g": f(g), "k": k, "l": k, "l'": ell, "first": f(base), "second": f(other)}
        return None

    return _run(s, "uniform", levels, 1, mode, seed, samples, test)


def _in_every_image(s: CloningSystem, n: int, c: Any) -> bool:
    return all(s.unclone(n, k, c) is not None for k in range(2, n + 1))


def check_diverse(s: CloningSystem, levels: Levels, mode: str = "auto", seed: int = 0, samples: int = DEFAULT_SAMPLES) -> PropertyReport:
    """Is the intersection of the images of all cloning maps at level n trivial?

    Every element of that intersection is ``(g)k_1`` for a unique g, so it is
    enough to run over g in G_n and test ``(g)k_1`` against the other images.
    Randomized runs also try the instance's generators.  Without a witness
    they end ``inconclusive-pass``.
    """
    if not s.has_unclone:
        return PropertyReport("diverse", s.name, mode, _levels(levels), INAPPLICABLE, note="instance has no unclone")
    reports = []
    m = s.d - 1
    for n in _levels(levels):
        chosen, elems = _pick_mode(s, n, 1, mode)
        if elems is None:
            rng = _rng(seed, "diverse", n)
            cands: Iterable = itertools.chain(s.generators(n), (s.sample(n, rng) for _ in range(samples)))
        else:
            cands = elems
        witnesses = []
        checked = 0
        for g in cands:
            checked += 1
            if s.is_identity_middle(n, g):
                continue
            c = s.clone(n, 1, g)
            if _in_every_image(s, n, c):
                witnesses.append({"n": n, "g": s.format_middle(g), "element": s.format_middle(c)})
                if len(witnesses) >= MAX_WITNESSES:
                    break
        if witnesses:
            verdict = FAIL
        else:
            verdict = PASS if chosen == "exhaustive" else INCONCLUSIVE
        reports.append(
            PropertyReport(
                "diverse",
                s.name,
                chosen,
                [n],
                verdict,
                seed=None if chosen == "exhaustive" else seed,
                samples=None if chosen == "exhaustive" else samples,
                checked=checked,
                witnesses=witnesses,
                note=f"images of the cloning maps into level {n + m}",
            )
        )
    return merge_reports(reports)


def check_injective(s: CloningSystem, levels: Levels, mode: str = "auto", seed: int = 0, samples: int = DEFAULT_SAMPLES) -> PropertyReport:
    """``unclone`` inverts ``clone`` at every index."""

    def test(n, case):
        (g,) = case
        for k in range(1, n + 1):
            back = s.unclone(n, k, s.clone(n, k, g))
            if back is None or not s.eq(n, back, g):
                return {"g": s.format_middle(g), "k": k}
        return None

    return _run(s, "injective", levels, 1, mode, seed, samples, test)


def check_group_laws(s: CloningSystem, samples: int = 200, seed: int = 0, max_carets: int = 3) -> PropertyReport:
    """Associativity, identity and inverses on random triples of group elements."""
    rng = _rng(seed, "group-laws", 0)
    one = s.one()
    witnesses = []
    for _ in range(samples):
        x, y, z = (random_element(s, rng, max_carets) for _ in range(3))
        failed = None
        if not equals((x * y) * z, x * (y * z)):
            failed = "associativity"
        elif not (equals(x * one, x) and equals(one * x, x)):
            failed = "identity"
        elif not (equals(x * x.inverse(), one) and equals(x.inverse() * x, one)):
            failed = "inverse"
        if failed:
            witnesses.append({"law": failed, "x": str(x), "y": str(y), "z": str(z)})
            if len(witnesses) >= MAX_WITNESSES:
                break
    return PropertyReport(
        "group-laws",
        s.name,
        "randomized",
        [],
        FAIL if witnesses else PASS,
        seed=seed,
        samples=samples,
        checked=samples,
        witnesses=witnesses,
    )


CHECKS: dict[str, Callable[..., PropertyReport]] = {
    "c1": check_c1,
    "c2": check_c2,
    "c3": check_c3,
    "fully-compatible": check_fully_compatible,
    "pure": check_pure,
    "slightly-pure": check_slightly_pure,
    "uniform": check_uniform,
    "diverse": check_diverse,
    "injective": check_injective,
}


def run_check(
    s: CloningSystem,
    prop: str,
    levels: Levels = (1, 2, 3),
    mode: str = "auto",
    seed: int = 0,
    samples: Optional[int] = None,
) -> PropertyReport:
    if prop == "group-laws":
        return check_group_laws(s, samples=samples or 200, seed=seed)
    try:
        fn = CHECKS[prop]
    except KeyError:
        raise ValueError(f"unknown property {prop!r}; choose from {sorted([*CHECKS, 'group-laws'])}") from None
    return fn(s, levels, mode=mode, seed=seed, samples=samples or DEFAULT_SAMPLES)


def check_claims(s: CloningSystem, levels: Levels = (2, 3), seed: int = 0) -> dict[str, PropertyReport]:
    """Check every property the instance claims, plus the axioms."""
    out = {p: run_check(s, p, levels, seed=seed) for p in ("c1", "c2", "c3")}
    claimed = {
        "fully-compatible": s.claims_fully_compatible,
        "pure": s.claims_pure,
        "slightly-pure": s.claims_slightly_pure,
        "uniform": s.claims_uniform,
        "diverse": s.claims_diverse,
    }
    for p, flag in claimed.items():
        if flag:
            out[p] = run_check(s, p, levels, seed=seed)
    return out
