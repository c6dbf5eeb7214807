import random
from functools import lru_cache
from pathlib import Path

import pytest

from basesize.catalog import BUILDERS
from basesize.formats import parse_group_file
from basesize.groups import GeneratedGroup
from basesize.perms import Permutation
from basesize.subgroups import is_core_free, set_stabilizer

DATA = Path(__file__).resolve().parents[1] / "src" / "basesize" / "data"
GROUP_FILES = DATA / "groups"


@lru_cache(maxsize=None)
def build(name: str) -> GeneratedGroup:
    return BUILDERS[name]()


@lru_cache(maxsize=None)
def group_file(rel: str) -> GeneratedGroup:
    return parse_group_file((GROUP_FILES / rel).read_text(), source=rel)


@pytest.fixture
def catalog():
    return build


def random_perm(rng: random.Random, n: int) -> Permutation:
    img = list(range(n))
    rng.shuffle(img)
    return Permutation(img)


def random_pairs(count: int, seed: int = 2024, max_order: int = 2000, max_degree: int = 8):
    """Deterministic list of (G, H) with |G| <= max_order and H a proper
    nontrivial core-free subgroup."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(4, max_degree)
        g = GeneratedGroup([random_perm(rng, n) for _ in range(2)], n, name=f"G{len(out)}")
        if not 2 < g.order <= max_order:
            continue
        kind = rng.randrange(3)
        if kind == 0:
            h = g.stabilizer(rng.randint(1, n))
        elif kind == 1:
            h = set_stabilizer(g, rng.sample(range(1, n + 1), rng.randint(2, n - 1)))
        else:
            elems = list(g.elements())
            h = GeneratedGroup([rng.choice(elems) for _ in range(rng.randint(1, 2))], n)
        h.name = f"H{len(out)}"
        if h.is_trivial() or h.order == g.order or not is_core_free(g, h):
            continue
        out.append((g, h))
    return out


# one line per acceptance criterion, printed after the run
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.write_sep("=", "acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])
