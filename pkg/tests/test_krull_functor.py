import itertools
import random

import pytest
from conftest import random_chain

from krullkit.dimension import dimension
from krullkit.errors import InputError, ResourceError
from krullkit.finlat import FinLattice
from krullkit.krull_functor import (
    TaggedElement,
    defA_dim_leq,
    joyal_dimension,
    joyal_sigma_injective,
    kr_entails,
    kr_lattice,
    monotone_prime_tuples,
    spec_bijection,
)
from krullkit.primes_chains import chain_collapses

M = 0b01


def test_top_entails_bottom_only_in_trivial_base(L3):
    assert not kr_entails(L3, 1, [[L3.top], []], [[], []])
    assert kr_entails(FinLattice.trivial(), 1, [[0], []], [[], []])


def test_phi_levels_decrease(corpus):
    """phi_j(a) |- phi_i(a) whenever i <= j."""
    for lat in corpus[:20]:
        ell = 2
        for a in lat.elements():
            for i, j in itertools.combinations_with_replacement(range(ell + 1), 2):
                A = [TaggedElement(j, a)]
                B = [TaggedElement(i, a)]
                assert kr_entails(lat, ell, A, B)


def test_l3_phi_examples(L3):
    res = kr_entails(L3, 1, [TaggedElement(1, M)], [TaggedElement(0, M)])
    assert res and res.us == (M,)
    assert not kr_entails(L3, 1, [TaggedElement(0, M)], [TaggedElement(1, M)])
    assert not kr_entails(L3, 1, [TaggedElement(0, M)], [TaggedElement(1, M)], exhaustive=True)


def test_tag_out_of_range(L3):
    with pytest.raises(InputError):
        kr_entails(L3, 1, [TaggedElement(2, M)], [])


def test_greedy_agrees_with_exhaustive(corpus):
    rng = random.Random(41)
    for lat in corpus:
        if lat.size() > 16:
            continue
        elems = lat.elements()
        for _ in range(10):
            A = [[rng.choice(elems)] for _ in range(3)]
            B = [[rng.choice(elems)] for _ in range(3)]
            assert kr_entails(lat, 2, A, B).holds == kr_entails(lat, 2, A, B, exhaustive=True).holds


def test_derived_relation_obeys_cut(corpus):
    rng = random.Random(43)
    for lat in corpus[:30]:
        elems = lat.elements()
        for _ in range(20):
            A = [[rng.choice(elems)] for _ in range(2)]
            B = [[rng.choice(elems)] for _ in range(2)]
            i, x = rng.randrange(2), rng.choice(elems)
            A2 = [list(a) for a in A]
            A2[i].append(x)
            B2 = [list(b) for b in B]
            B2[i].append(x)
            if kr_entails(lat, 1, A2, B) and kr_entails(lat, 1, A, B2):
                assert kr_entails(lat, 1, A, B)


def test_kr_lattice_examples(L3):
    two = FinLattice.chain(2)
    kr = kr_lattice(two, 1)
    assert kr.materialized.size() == 2
    kr = kr_lattice(L3, 1)
    assert len(kr.valuations) == 3
    assert kr.materialized.classical_dim() == 2
    assert sorted(spec_bijection(kr).values()) == [(0, 0), (0, 1), (1, 1)]
    assert kr_lattice(FinLattice.trivial(), 2).materialized.is_trivial


def test_phi_maps_are_injective_and_decreasing(corpus):
    for lat in corpus:
        if lat.base.size > 4:
            continue
        kr = kr_lattice(lat, 1)
        for i in range(2):
            images = [kr.phi(i, a) for a in lat.elements()]
            assert len(set(images)) == len(images)
            for a, b in itertools.product(lat.elements(), repeat=2):
                assert kr.phi(i, a & b) == kr.phi(i, a) & kr.phi(i, b)
                assert kr.phi(i, a | b) == kr.phi(i, a) | kr.phi(i, b)
        for a in lat.elements():
            assert kr.materialized.leq(kr.phi(1, a), kr.phi(0, a))


def test_materialized_order_matches_derived_entailment(corpus):
    rng = random.Random(47)
    for lat in corpus:
        if lat.base.size > 4:
            continue
        kr = kr_lattice(lat, 1)
        elems = lat.elements()
        for _ in range(15):
            a, b, c, d = (rng.choice(elems) for _ in range(4))
            lhs = kr.phi(0, a) & kr.phi(1, b)
            rhs = kr.phi(0, c) | kr.phi(1, d)
            assert kr.materialized.leq(lhs, rhs) == kr_entails(lat, 1, [[a], [b]], [[c], [d]]).holds


def test_spec_bijection_on_corpus(corpus):
    for lat in corpus:
        if lat.base.size > 4:
            continue
        for ell in (0, 1, 2):
            kr = kr_lattice(lat, ell)
            chains = spec_bijection(kr)
            assert len(chains) == len(monotone_prime_tuples(lat, ell + 1))


def test_chain_transport(corpus):
    """A chain collapses in the base iff its tagged prime collapses in Kr."""
    rng = random.Random(53)
    for lat in corpus:
        for _ in range(6):
            chain = random_chain(rng, lat, max_length=2)
            ell = chain.length
            A = [list(lv.U) for lv in chain.levels]
            B = [list(lv.J) for lv in chain.levels]
            assert kr_entails(lat, ell, A, B).holds == (chain_collapses(lat, chain) is not None)


def test_point_cap(L3):
    with pytest.raises(ResourceError):
        kr_lattice(FinLattice.chain(6), 3, cap=10)


def test_joyal_examples(L3, B4):
    assert joyal_sigma_injective(B4, 0)
    assert not joyal_sigma_injective(L3, 0)
    assert joyal_sigma_injective(L3, 1)
    for ell in range(3):
        assert joyal_sigma_injective(FinLattice.trivial(), ell)


def test_definition_through_kr_examples(L3, B4):
    assert defA_dim_leq(B4, 0)
    assert not defA_dim_leq(L3, 0)
    assert defA_dim_leq(L3, 1)


def test_dimension_definitions_agree(corpus):
    for lat in corpus:
        d = dimension(lat)
        for ell in range(-1, d + 2):
            assert defA_dim_leq(lat, ell) == (ell >= d)
        if lat.base.size <= 4:
            assert joyal_dimension(lat) == d
