"""Acceptance gate: one test per criterion, each reported as a PASS/FAIL line in the summary."""

import random
import time
from fractions import Fraction

from conftest import lattice_corpus, random_chain
from test_certificates import GAUSS, random_poly, splits
from test_entailment import brute_entails, random_presentation, random_sequent
from test_morphisms import (
    classical_going_down,
    classical_going_up,
    injective_corpus,
    morphism_corpus,
)

from krullkit.dimension import dim_espanol, dimension
from krullkit.entailment import entails_free
from krullkit.finlat import FinLattice, random_lattice
from krullkit.krull_functor import (
    joyal_dimension,
    kr_lattice,
    monotone_prime_tuples,
    spec_bijection,
)
from krullkit.morphisms import (
    LatticeMorphism,
    is_going_down,
    is_going_down_bruteforce,
    is_going_up,
    is_going_up_bruteforce,
    is_lying_over,
    relative_dimension,
)
from krullkit.primes_chains import (
    chain_collapses,
    refining_prime_chain,
    simultaneous_collapse_check,
)
from krullkit.rings import (
    QQ,
    ZZ,
    Polynomials,
    SingularCertificate,
    collapse_from_dependence,
    elementary_ring_chain,
    find_dependence,
    glue_certificates,
    integral_relative_collapse,
    is_singular,
    relation_degree_bound,
    verify_singular_certificate,
)
from krullkit.rings.poly import PolyRing

FIRST_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_criterion_01_dimension_definitions_agree(record_property):
    rng = random.Random(1001)
    start = time.perf_counter()
    mismatches = []
    for k in range(200):
        lat = random_lattice(rng, 6)
        values = (dimension(lat), lat.classical_dim(), dim_espanol(lat), joyal_dimension(lat))
        if len(set(values)) != 1:
            mismatches.append((k, values))
    elapsed = time.perf_counter() - start
    record_property("detail", f"200 lattices, {len(mismatches)} mismatches, {elapsed:.1f}s")
    assert not mismatches
    assert elapsed < 60


def test_criterion_02_derivation_matches_valuations(record_property):
    rng = random.Random(1002)
    discrepancies = checked = 0
    for _ in range(200):
        pres = random_presentation(rng, max_gens=10, max_axioms=15)
        for _ in range(50):
            q = random_sequent(rng, pres)
            checked += 1
            discrepancies += entails_free(pres, q) != brute_entails(pres, q)
    record_property("detail", f"{checked} sequents, {discrepancies} discrepancies")
    assert checked >= 10000 and discrepancies == 0


def test_criterion_03_simultaneous_collapse(record_property):
    rng = random.Random(1003)
    violations = 0
    for _ in range(1000):
        lat = random_lattice(rng, 5)
        chain = random_chain(rng, lat)
        i = rng.randrange(len(chain))
        x = rng.choice(lat.elements())
        violations += not simultaneous_collapse_check(lat, chain, i, x)
    record_property("detail", f"1000 instances, {violations} violations")
    assert violations == 0


def test_criterion_04_finite_nullstellensatz(record_property):
    rng = random.Random(1004)
    discrepancies = checked = 0
    for lat in lattice_corpus(1004, 100, 5):
        for _ in range(10):
            chain = random_chain(rng, lat, max_length=3)
            collapses = chain_collapses(lat, chain) is not None
            checked += 1
            discrepancies += collapses == (refining_prime_chain(lat, chain) is not None)
    record_property("detail", f"{checked} chains, {discrepancies} discrepancies")
    assert discrepancies == 0


def test_criterion_05_polynomial_rings(record_property):
    rng = random.Random(1005)
    start = time.perf_counter()
    failures = samples = 0
    for n in (1, 2):
        R = Polynomials(QQ, ("x", "y")[:n])
        assert not is_singular(R, list(R.R.gens()))
        for _ in range(50):
            ys = [random_poly(rng, R) for _ in range(n + 1)]
            Q = find_dependence(R, ys, relation_degree_bound(n, 2))
            cert = collapse_from_dependence(R, ys, Q)
            samples += 1
            failures += not (is_singular(R, ys) and verify_singular_certificate(R, ys, cert))
    elapsed = time.perf_counter() - start
    record_property("detail", f"{samples} samples, {failures} failures, {elapsed:.1f}s")
    assert failures == 0
    assert elapsed < 120


def test_criterion_06_integers(record_property):
    rng = random.Random(1006)
    assert not any(is_singular(ZZ, [p]) for p in FIRST_PRIMES)
    pairs = [(rng.randint(-(10**6), 10**6), rng.randint(-(10**6), 10**6)) for _ in range(100)]
    rejected = [ab for ab in pairs if not is_singular(ZZ, list(ab))]
    cert = SingularCertificate((0, 1), (-35, 2))
    record_property("detail", f"10 primes rejected, {len(pairs) - len(rejected)}/100 pairs accepted")
    assert not rejected
    assert verify_singular_certificate(ZZ, [6, 10], cert)


def test_criterion_07_going_up_down(record_property):
    disagreements = bound_violations = lyo_gu = 0
    for f in morphism_corpus(1007, 500):
        gu, gd = bool(is_going_up(f)), bool(is_going_down(f))
        disagreements += gu != bool(is_going_up_bruteforce(f)) or gu != classical_going_up(f)
        disagreements += gd != bool(is_going_down_bruteforce(f)) or gd != classical_going_down(f)
        if is_lying_over(f) and gu:
            lyo_gu += 1
            bound_violations += dimension(f.dom) > dimension(f.cod)
    record_property("detail", f"500 morphisms, {disagreements} disagreements, {lyo_gu} LYO+GU, {bound_violations} violations")
    assert disagreements == 0 and bound_violations == 0


def test_criterion_08_relative_dimension(record_property):
    inc = LatticeMorphism.from_dual_map(FinLattice.chain(2), FinLattice.chain(3), [0, 0])
    assert relative_dimension(inc) == 1
    violations = 0
    corpus = injective_corpus(1008, 200)
    for f in corpus:
        m, n = dimension(f.dom), relative_dimension(f)
        violations += dimension(f.cod) > (m + 1) * (n + 1) - 1
    record_property("detail", f"reldim = 1, {len(corpus)} morphisms, {violations} violations")
    assert violations == 0


def test_criterion_09_integral_recipe(record_property):
    rng = random.Random(1009)
    X = PolyRing(QQ, ("X",))
    Xv = X.var(0)
    identities = 0
    for _ in range(25):
        a, b = rng.randint(-6, 6), rng.randint(-6, 6)
        x = GAUSS.convert(f"{a} + {b}*t")
        P = Xv**2 - 2 * a * Xv + (a * a + b * b)
        for _ in range(rng.randint(0, 2)):
            P = P * (Xv + rng.randint(-3, 3))
        coef = {e[0]: c for e, c in P.terms.items()}
        k = max(coef)
        coeffs = {i: -int(coef.get(i, 0)) for i in range(k)}
        for G1 in splits(coeffs):
            ident = integral_relative_collapse(GAUSS, x, k, coeffs, G1)
            assert ident.verify(GAUSS, x, coeffs, set(coeffs) - G1)
            identities += 1
    record_property("detail", f"25 relations, {identities} identities verified")


def test_criterion_10_local_global(record_property):
    certs = [
        SingularCertificate((0, 0), (-1, Fraction(1, 2))),
        SingularCertificate((0, 1), (Fraction(-65, 9), Fraction(1, 3))),
    ]
    result = glue_certificates(ZZ, [6, 10], [2, 3], [2, -1], certs)
    chain = elementary_ring_chain(ZZ, [6, 10])
    record_property("detail", f"exponents {result.exponents}, identity {result.identity.to_dict(ZZ)}")
    assert result.identity.verify(ZZ, chain)


def test_criterion_11_kr_points_are_prime_pairs(record_property):
    checked = 0
    for lat in lattice_corpus(1011, 200, 4):
        kr = kr_lattice(lat, 1)
        assert sorted(spec_bijection(kr).values()) == sorted(monotone_prime_tuples(lat, 2))
        assert len(kr.materialized.base.labels) == len(monotone_prime_tuples(lat, 2))
        checked += 1
    record_property("detail", f"{checked} lattices")
