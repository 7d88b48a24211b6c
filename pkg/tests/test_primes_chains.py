import itertools
import random

from conftest import random_chain
from hypothesis import given, settings
from hypothesis import strategies as st

from krullkit.finlat import random_lattice
from krullkit.primes_chains import (
    ChainWitness,
    IdealisticChain,
    IdealisticPrime,
    chain_collapses,
    chain_collapses_exhaustive,
    proi_collapses,
    quotient_leq,
    refining_prime_chain,
    saturate_chain,
    saturate_proi,
    saturate_proi_principal,
    simultaneous_collapse_check,
    trivial_chain,
)

M = 0b01


def test_quotient_order_examples(L3):
    for a, b in itertools.product(L3.elements(), repeat=2):
        assert quotient_leq(L3, [], [], a, b) == L3.leq(a, b)
    assert quotient_leq(L3, [M], [], M, 0)
    assert quotient_leq(L3, [], [M], L3.top, M)
    assert not quotient_leq(L3, [], [], L3.top, M)


def test_prime_collapse_examples(L3):
    assert not proi_collapses(L3, IdealisticPrime.of())
    assert proi_collapses(L3, IdealisticPrime.of([M], [M]))
    assert not proi_collapses(L3, IdealisticPrime.of([M], []))


def test_saturate_prime_examples(L3):
    sat = saturate_proi(L3, IdealisticPrime.of())
    assert sat.ideal == {0} and sat.filter == {L3.top}
    sat = saturate_proi(L3, IdealisticPrime.of([M], []))
    assert sat.ideal == {0, M} and sat.filter == {L3.top}
    sat = saturate_proi(L3, IdealisticPrime.of([M], [M]))
    assert sat.ideal == set(L3.elements()) and sat.filter == set(L3.elements())


def test_saturation_is_principal_and_conjugate(corpus):
    rng = random.Random(3)
    for lat in corpus:
        elems = lat.elements()
        for _ in range(5):
            P = IdealisticPrime.of(rng.sample(elems, min(2, len(elems))), rng.sample(elems, 1))
            sat = saturate_proi(lat, P)
            i, f = saturate_proi_principal(lat, P)
            assert sat.ideal == {x for x in elems if lat.leq(x, i)}
            assert sat.filter == {x for x in elems if lat.leq(f, x)}
            for x in elems:
                for y in sat.filter:
                    if x & y in sat.ideal:
                        assert x in sat.ideal
                for y in sat.ideal:
                    if x | y in sat.filter:
                        assert x in sat.filter


def test_one_level_chain_is_a_prime(corpus):
    rng = random.Random(5)
    for lat in corpus:
        chain = random_chain(rng, lat, max_length=0)
        assert (chain_collapses(lat, chain) is not None) == proi_collapses(lat, chain.levels[0])


def test_elementary_chain_on_m_does_not_collapse_in_l3(L3):
    chain = IdealisticChain.of(([], [M]), ([M], [L3.top]))
    assert chain_collapses(L3, chain) is None
    assert chain_collapses_exhaustive(L3, chain) is None


def test_complemented_atom_collapses_in_b4(B4):
    p, q = 0b01, 0b10
    chain = IdealisticChain.of(([], [p]), ([p], [B4.top]))
    w = chain_collapses(B4, chain)
    assert w == ChainWitness((q,))
    assert w.verify(B4, chain)


def test_greedy_agrees_with_exhaustive(corpus):
    rng = random.Random(9)
    for lat in corpus:
        if lat.size() > 20:
            continue
        for _ in range(10):
            chain = random_chain(rng, lat)
            greedy = chain_collapses(lat, chain)
            exhaustive = chain_collapses_exhaustive(lat, chain)
            assert (greedy is None) == (exhaustive is None)
            if greedy is not None:
                assert greedy.verify(lat, chain)


def test_saturate_chain_examples(L3):
    chain = IdealisticChain.of(([], [M]), ([M], [L3.top]))
    sat = saturate_chain(L3, chain)
    assert sat.levels[0] == IdealisticPrime.of([0], [M, L3.top])
    assert sat.levels[1] == IdealisticPrime.of([0, M], [L3.top])
    assert saturate_chain(L3, sat) == sat
    collapsing = IdealisticChain.of(([M], [M]), ([], []))
    assert saturate_chain(L3, collapsing) == trivial_chain(L3, 1)


def test_saturation_is_idempotent_and_keeps_collapse(corpus):
    rng = random.Random(13)
    for lat in corpus[:30]:
        for _ in range(3):
            chain = random_chain(rng, lat)
            sat = saturate_chain(lat, chain)
            assert saturate_chain(lat, sat) == sat
            assert (chain_collapses(lat, sat) is None) == (chain_collapses(lat, chain) is None)
            for lv, slv in zip(chain.levels, sat.levels):
                assert lv.J <= slv.J and lv.U <= slv.U


def test_saturated_levels_are_nested(corpus):
    rng = random.Random(17)
    for lat in corpus[:30]:
        chain = random_chain(rng, lat)
        if chain_collapses(lat, chain) is not None:
            continue
        sat = saturate_chain(lat, chain)
        for a, b in zip(sat.levels, sat.levels[1:]):
            assert a.J <= b.J and b.U <= a.U


def test_collapse_is_monotone_in_levels(corpus):
    rng = random.Random(19)
    for lat in corpus:
        for _ in range(5):
            chain = random_chain(rng, lat)
            if any(proi_collapses(lat, lv) for lv in chain.levels):
                assert chain_collapses(lat, chain) is not None


def test_simultaneous_collapse_on_trivial_chain(L3):
    assert simultaneous_collapse_check(L3, trivial_chain(L3, 2), 1, 0)


def test_simultaneous_collapse_seeded():
    rng = random.Random(23)
    for _ in range(1000):
        lat = random_lattice(rng, 5)
        chain = random_chain(rng, lat)
        i = rng.randrange(len(chain))
        x = rng.choice(lat.elements())
        assert simultaneous_collapse_check(lat, chain, i, x)


def test_finite_nullstellensatz(corpus):
    rng = random.Random(29)
    for lat in corpus:
        for _ in range(8):
            chain = random_chain(rng, lat)
            pts = refining_prime_chain(lat, chain)
            assert (chain_collapses(lat, chain) is None) == (pts is not None)


@settings(max_examples=100, deadline=None)
@given(st.randoms(use_true_random=False))
def test_adding_constraints_preserves_collapse(rng):
    lat = random_lattice(rng, 5)
    chain = random_chain(rng, lat)
    i = rng.randrange(len(chain))
    x = rng.choice(lat.elements())
    if chain_collapses(lat, chain) is not None:
        assert chain_collapses(lat, chain.add_j(i, x)) is not None
        assert chain_collapses(lat, chain.add_u(i, x)) is not None
