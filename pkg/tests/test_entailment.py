import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from krullkit.entailment import (
    EntailmentPresentation,
    Sequent,
    check_entailment_laws,
    entails_derivation,
    entails_free,
    find_countermodel,
    is_consistent,
    lattice_relation,
    prime_theory,
    satisfying_valuations,
)
from krullkit.errors import InputError, ResourceError
from krullkit.finlat import FinLattice


def brute_entails(pres, q):
    """Independent oracle: loop over every valuation of every generator."""
    gens = pres.generators
    for bits in itertools.product((False, True), repeat=len(gens)):
        val = dict(zip(gens, bits))
        if all(not all(val[g] for g in ax.lhs) or any(val[g] for g in ax.rhs) for ax in pres.axioms):
            if all(val[g] for g in q.lhs) and not any(val[g] for g in q.rhs):
                return False
    return True


def random_presentation(rng, max_gens=10, max_axioms=15):
    n = rng.randint(1, max_gens)
    gens = [f"g{i}" for i in range(n)]
    axioms = []
    for _ in range(rng.randint(0, max_axioms)):
        lhs = rng.sample(gens, rng.randint(0, min(3, n)))
        rhs = rng.sample(gens, rng.randint(0, min(3, n)))
        if lhs or rhs:
            axioms.append(Sequent.of(lhs, rhs))
    return EntailmentPresentation(tuple(gens), tuple(axioms))


def random_sequent(rng, pres):
    gens = pres.generators
    return Sequent.of(rng.sample(gens, rng.randint(0, min(3, len(gens)))), rng.sample(gens, rng.randint(0, min(3, len(gens)))))


AB = EntailmentPresentation(("a", "b"), (Sequent.of(["a"], ["b"]),))


def test_axiom_instance_holds():
    assert entails_free(AB, Sequent.of(["a"], ["b"]))


def test_converse_is_refuted_by_a_valuation():
    assert not entails_free(AB, Sequent.of(["b"], ["a"]))
    model = find_countermodel(AB, Sequent.of(["b"], ["a"]))
    assert model == frozenset({"b"})


def test_collapsing_theory_proves_empty_sequent():
    pres = EntailmentPresentation(("a",), (Sequent.of([], ["a"]), Sequent.of(["a"], [])))
    assert entails_free(pres, Sequent.of())
    assert not is_consistent(pres)


def test_free_lattice_is_consistent():
    assert is_consistent(EntailmentPresentation(("a", "b")))


def test_unknown_generator_is_an_input_error():
    with pytest.raises(InputError):
        entails_free(AB, Sequent.of(["c"], []))
    with pytest.raises(InputError):
        EntailmentPresentation(("a",), (Sequent.of(["z"], []),))


def test_axioms_are_deduplicated():
    pres = EntailmentPresentation(("a", "b"), (Sequent.of(["a"], ["b"]), Sequent.of(["a"], ["b"])))
    assert len(pres.axioms) == 1


def test_generator_cap():
    pres = EntailmentPresentation(tuple(f"g{i}" for i in range(25)))
    with pytest.raises(ResourceError):
        entails_free(pres, Sequent.of())
    assert entails_free(pres, Sequent.of(["g0"], ["g0"]), cap=30)


def test_prime_theory_of_z4_with_two_on_both_sides_collapses():
    elements = range(4)
    pres = prime_theory(elements, lambda a, b: (a + b) % 4, lambda a, b: a * b % 4, 0, 1, ideal=[2], monoid=[2])
    assert not is_consistent(pres)


def test_prime_theory_of_z4_is_consistent_without_constraints():
    pres = prime_theory(range(4), lambda a, b: (a + b) % 4, lambda a, b: a * b % 4, 0, 1, dichotomy=True)
    assert is_consistent(pres)
    # the only prime of Z/4 is <2>
    vals = satisfying_valuations(pres)
    assert len(vals) == 1


def test_lattice_relation_has_no_law_violations(L3, B4):
    for lat in (L3, B4, FinLattice.chain(4)):
        report = check_entailment_laws(lat.elements(), lattice_relation(lat), lat.join, lat.meet)
        assert report.ok


def test_missing_reflexivity_is_reported():
    report = check_entailment_laws(["a", "b"], [({"a"}, {"b"})])
    assert Sequent.of(["a"], ["a"]) in report.reflexivity
    assert Sequent.of(["b"], ["b"]) in report.reflexivity


def test_missing_cut_is_reported():
    def rel(A, B):
        if A & B:
            return True
        return "a" in A and "b" in B and ("x" in A or "x" in B)

    report = check_entailment_laws(["a", "b", "x"], rel)
    assert (Sequent.of(["a"], ["b"]), "x") in report.transitivity


def test_check_laws_cap():
    with pytest.raises(ResourceError):
        check_entailment_laws(range(10), lambda a, b: True)


def test_derivation_agrees_with_valuations_seeded():
    rng = random.Random(7)
    for _ in range(60):
        pres = random_presentation(rng, 7, 10)
        for _ in range(20):
            q = random_sequent(rng, pres)
            expected = brute_entails(pres, q)
            assert entails_free(pres, q) == expected
            assert entails_derivation(pres, q) == expected


presentations = st.builds(random_presentation, st.randoms(use_true_random=False), st.just(6), st.just(8))


@settings(max_examples=80, deadline=None)
@given(presentations, st.randoms(use_true_random=False))
def test_cut_is_admissible(pres, rng):
    q = random_sequent(rng, pres)
    x = rng.choice(pres.generators)
    left = Sequent(q.lhs | {x}, q.rhs)
    right = Sequent(q.lhs, q.rhs | {x})
    if entails_free(pres, left) and entails_free(pres, right):
        assert entails_free(pres, q)


@settings(max_examples=80, deadline=None)
@given(presentations, st.randoms(use_true_random=False))
def test_entailment_is_monotone(pres, rng):
    q = random_sequent(rng, pres)
    extra = random_sequent(rng, pres)
    if entails_free(pres, q):
        assert entails_free(pres, Sequent(q.lhs | extra.lhs, q.rhs | extra.rhs))
