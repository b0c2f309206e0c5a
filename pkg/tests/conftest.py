import random
from dataclasses import dataclass

import pytest
from hypothesis import settings

from clonegroups.braids import BraidSystem, instance_bF, instance_bV, strand_perm
from clonegroups.matrices import Ring, UpperTriangularSystem, instance_Abels, instance_B, instance_Bbar
from clonegroups.permutation import Permutation
from clonegroups.perms import VSystem, instance_F, instance_V, instance_Vhat
from clonegroups.products import cyclic_group, instance_Pi, instance_Psi, instance_ZInf, parse_endos

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def shipped_instances():
    z4, z5 = cyclic_group(4), cyclic_group(5)
    return [
        instance_F(2),
        instance_F(3),
        instance_V(2),
        instance_V(3),
        instance_Vhat(2),
        instance_Vhat(3),
        instance_bV(2),
        instance_bF(2),
        instance_bF(3),
        instance_B(),
        instance_Bbar(),
        instance_Bbar(Ring(3), 3),
        instance_Abels(2),
        instance_Pi(z4),
        instance_Pi(cyclic_group(2)),
        instance_Pi(z5, parse_endos(z5, "mul:2,3", 2)),
        instance_Psi(z4),
        instance_ZInf(2),
    ]


SHIPPED = shipped_instances()


@pytest.fixture(params=SHIPPED, ids=lambda s: s.name)
def instance(request):
    return request.param


@pytest.fixture
def rng():
    return random.Random(12345)


# --- negative controls: deliberately broken cloning systems ---


@dataclass(frozen=True, repr=False)
class FlippedCloneV(VSystem):
    """Standard cloning except one output at level 2 has two entries swapped."""

    @property
    def name(self):
        return "V-flipped-clone"

    def clone(self, n, k, g):
        out = super().clone(n, k, g)
        if n == 2 and k == 1 and g == Permutation((2, 1)):
            im = list(out.images)
            im[0], im[2] = im[2], im[0]
            out = Permutation(tuple(im))
        return out


@dataclass(frozen=True, repr=False)
class ShiftedCloneB(UpperTriangularSystem):
    """Matrix cloning that nudges the top-right entry when cloning the last index."""

    @property
    def name(self):
        return "B-shifted-clone"

    def clone(self, n, k, g):
        out = [list(r) for r in super().clone(n, k, g)]
        if k == n and n >= 2:
            out[0][-1] += 1
        return tuple(tuple(r) for r in out)


@dataclass(frozen=True, repr=False)
class InvertedRhoBV(BraidSystem):
    """Braid groups whose rho reports the inverse strand permutation."""

    @property
    def name(self):
        return "bV-inverted-rho"

    def rho(self, n, g):
        return strand_perm(g).inverse()


# --- one summary line per acceptance criterion ---

_CRITERIA: dict[int, list] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion n")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call" and not (rep.when == "setup" and rep.failed):
        return
    n, title = mark.args
    entry = _CRITERIA.setdefault(n, [title, True, []])
    entry[1] = entry[1] and rep.passed
    detail = getattr(item, "criterion_detail", "")
    if rep.failed:
        detail = str(rep.longrepr).strip().splitlines()[-1][:160]
    if detail:
        entry[2].append(detail)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        title, ok, details = _CRITERIA[n]
        line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'} - {title}"
        if details:
            line += " (" + "; ".join(details) + ")"
        terminalreporter.write_line(line)
