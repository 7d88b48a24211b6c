import random

import pytest

from krullkit.finlat import FinLattice, random_lattice


@pytest.fixture
def L3():
    """The chain 0 < m < 1."""
    return FinLattice.chain(3)


@pytest.fixture
def B4():
    """The four-element Boolean algebra with atoms p = 0b01, q = 0b10."""
    return FinLattice.boolean(2)


def lattice_corpus(seed, count, max_points=6):
    rng = random.Random(seed)
    return [random_lattice(rng, max_points) for _ in range(count)]


@pytest.fixture(scope="session")
def corpus():
    return lattice_corpus(20261016, 60, 5)


def random_chain(rng, lat, max_length=2, max_size=2):
    from krullkit.primes_chains import IdealisticChain

    elems = lat.elements()
    levels = []
    for _ in range(rng.randint(1, max_length + 1)):
        J = [rng.choice(elems) for _ in range(rng.randint(0, max_size))]
        U = [rng.choice(elems) for _ in range(rng.randint(0, max_size))]
        levels.append((J, U))
    return IdealisticChain.of(*levels)


def pytest_terminal_summary(terminalreporter):
    reports = [
        r
        for key in ("passed", "failed")
        for r in terminalreporter.stats.get(key, [])
        if r.when == "call" and "test_acceptance.py::test_criterion_" in r.nodeid
    ]
    if not reports:
        return
    terminalreporter.section("acceptance criteria")
    for r in sorted(reports, key=lambda r: r.nodeid):
        name = r.nodeid.split("::test_criterion_")[1]
        detail = dict(r.user_properties).get("detail", "")
        terminalreporter.write_line(f"criterion {int(name[:2]):2d} {'PASS' if r.passed else 'FAIL'}  {name[3:]}  {detail}")
