import itertools
import json
from pathlib import Path

import numpy as np
import pytest

from multihom import DomainError
from multihom.multiport import OutcomeDistribution, configurations, evolve_grouped, qft_unitary
from multihom.permutations import apply, cycle, cyclic_measure, expectation
from multihom.states import (
    PureState,
    barred_eigenstate,
    basis_state,
    cyclic_eigenstate,
    make_pure,
    mix,
    random_sector_ensemble,
    random_sector_state,
    rho_representative,
    symmetric_state,
)
from multihom.suppression import (
    ClassProbabilities,
    class_probabilities,
    class_sets,
    class_sets_json,
    classify_state,
    measure_via_multiport,
    mode_shift_expectation,
    multiport_class_probabilities,
    operational_measure,
    suppression_class,
)

GOLDEN = Path(__file__).parent / "golden"


@pytest.mark.parametrize("config,k", [
    ((1, 1, 1), 0), ((3, 0, 0), 0), ((2, 1, 0), 1), ((0, 2, 1), 1),
    ((1, 2, 0), 2), ((1, 0, 2), 1), ((0, 1, 2), 2), ((1, 1), 1), ((2, 0), 0),
])
def test_suppression_class_examples(config, k):
    assert suppression_class(config) == k


@pytest.mark.parametrize("config", [(1, 2), (1, 1, 1, 0), (1,), (-1, 2, 2)])
def test_suppression_class_domain(config):
    with pytest.raises(DomainError):
        suppression_class(config)


def test_class_sets_small():
    assert class_sets(2) == [[(0, 2), (2, 0)], [(1, 1)]]
    assert class_sets(3) == [
        [(0, 0, 3), (0, 3, 0), (1, 1, 1), (3, 0, 0)],
        [(0, 2, 1), (1, 0, 2), (2, 1, 0)],
        [(0, 1, 2), (1, 2, 0), (2, 0, 1)],
    ]


def test_class_sets_four_golden():
    assert json.loads(class_sets_json(4)) == json.loads((GOLDEN / "class_sets_n4.json").read_text())


@pytest.mark.parametrize("n", range(2, 8))
def test_class_sets_partition(n):
    classes = class_sets(n)
    flat = [c for cls in classes for c in cls]
    assert sorted(flat) == configurations(n, n)
    assert len(set(flat)) == len(flat)


def test_class_probabilities_example():
    dist = OutcomeDistribution(3, 3, {(1, 1, 1): 0.5, (2, 1, 0): 0.25, (1, 2, 0): 0.25})
    assert class_probabilities(dist).p == (0.5, 0.25, 0.25)


def test_class_probabilities_need_square():
    dist = OutcomeDistribution(2, 3, {(1, 1, 0): 1.0})
    with pytest.raises(DomainError):
        class_probabilities(dist)


@pytest.mark.parametrize("p,expected", [
    ((1, 0, 0), 1.0), ((0, 1, 0), 1.0), ((1 / 3, 1 / 3, 1 / 3), 0.0),
    ((0.5, 0.5, 0), 0.25), ((0.5, 0.5), 0.0), ((0.75, 0.25), 0.25),
])
def test_operational_measure_examples(p, expected):
    assert operational_measure(ClassProbabilities(len(p), p)) == pytest.approx(expected, abs=1e-12)


def test_class_probabilities_validation():
    with pytest.raises(DomainError):
        ClassProbabilities(3, (0.5, 0.5))
    with pytest.raises(DomainError):
        ClassProbabilities(2, (0.7, 0.7))
    cp = ClassProbabilities(3, (0.5, 0.25, 0.25))
    assert ClassProbabilities.from_json(cp.to_json()) == cp


def test_measure_examples():
    assert measure_via_multiport(rho_representative(3, 1)) == pytest.approx(1, abs=1e-12)
    assert measure_via_multiport(basis_state((1, 2, 3))) == pytest.approx(0, abs=1e-12)
    assert measure_via_multiport(cyclic_eigenstate(5, 2), method="oracle") == pytest.approx(1, abs=1e-12)
    assert measure_via_multiport(symmetric_state(4)) == pytest.approx(1, abs=1e-12)


def test_measure_domain():
    with pytest.raises(DomainError):
        measure_via_multiport(basis_state((1, 1, 2)))
    with pytest.raises(DomainError):
        measure_via_multiport(make_pure(2, 3, [((1, 3), 1)]))


def test_classify_examples():
    u = qft_unitary(3)
    gamma = classify_state(evolve_grouped(rho_representative(3, 2), u))
    assert gamma.is_pure and gamma.label == 2
    anti = classify_state(evolve_grouped(cyclic_eigenstate(3, 0), u))
    assert anti.label == 0
    mixed = classify_state(evolve_grouped(mix([(0.5, cyclic_eigenstate(3, 1)),
                                               (0.5, cyclic_eigenstate(3, 2))]), u))
    assert not mixed.is_pure
    assert mixed.probabilities.p == pytest.approx((0, 0.5, 0.5), abs=1e-12)


@pytest.mark.parametrize("n", range(2, 7))
def test_no_leakage_outside_own_class(n):
    u = qft_unitary(n)
    for k in range(n):
        for state in (cyclic_eigenstate(n, k), barred_eigenstate(n, k)):
            cp = class_probabilities(evolve_grouped(state, u))
            assert 1 - cp[k] < 1e-12


def test_two_particle_reduction(rng):
    from multihom.multiport import hom_probabilities

    for _ in range(30):
        psi = random_sector_state(2, rng)
        cp = multiport_class_probabilities(psi)
        assert cp.p == pytest.approx(hom_probabilities(psi), abs=1e-12)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_operational_measure_is_mode_shift_expectation(rng, n):
    for _ in range(10):
        psi = random_sector_state(n, rng)
        assert abs(measure_via_multiport(psi) - abs(mode_shift_expectation(psi)) ** 2) < 1e-12
    ens = random_sector_ensemble(n, rng)
    assert abs(measure_via_multiport(ens) - abs(mode_shift_expectation(ens)) ** 2) < 1e-12


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_agreement_on_cyclic_orbit(rng, n):
    # superpositions of the rotations of the seed, where the mode shift acts as a cycle
    seed = basis_state(tuple(range(1, n + 1)))
    orbit = [apply(cycle(n) ** m, seed) for m in range(n)]
    for _ in range(10):
        c = rng.normal(size=n) + 1j * rng.normal(size=n)
        psi = make_pure(n, n, [(next(iter(s.amplitudes)), z) for s, z in zip(orbit, c)])
        assert abs(measure_via_multiport(psi) - cyclic_measure(psi)) < 1e-12


def test_cycle_expectation_on_orbit_is_conjugate_shift(rng):
    psi = make_pure(3, 3, zip([(1, 2, 3), (3, 1, 2), (2, 3, 1)], rng.normal(size=3) + 1j))
    assert abs(expectation(cycle(3), psi) - mode_shift_expectation(psi).conjugate()) < 1e-12


@pytest.mark.parametrize("n", [3, 4])
def test_port_rotation_invariance(rng, n):
    psi = random_sector_state(n, rng)
    dist = evolve_grouped(psi, qft_unitary(n))
    rotated = OutcomeDistribution(n, n, {c[-1:] + c[:-1]: p for c, p in dist.items()})
    assert class_probabilities(rotated).p == pytest.approx(class_probabilities(dist).p, abs=1e-15)
    assert operational_measure(class_probabilities(rotated)) == pytest.approx(
        operational_measure(class_probabilities(dist)), abs=1e-15)


def test_mode_shift_expectation_bunched():
    psi = PureState(2, 2, {(1, 1): 2**-0.5, (2, 2): 2**-0.5})
    assert mode_shift_expectation(psi) == pytest.approx(1)


def test_class_weights_are_eigenspace_weights(rng):
    # spectral projectors of the shift restricted to the sector, built densely
    n = 4
    basis = list(itertools.permutations(range(1, n + 1)))
    index = {a: i for i, a in enumerate(basis)}
    x = np.zeros((len(basis), len(basis)))
    for a in basis:
        x[index[tuple(k % n + 1 for k in a)], index[a]] = 1
    psi = random_sector_state(n, rng)
    v = np.array([psi[a] for a in basis])
    lam = np.exp(2j * np.pi / n)
    powers = [np.linalg.matrix_power(x, m) for m in range(n)]
    weights = []
    for k in range(n):
        proj = sum(lam ** (-k * m) * powers[m] for m in range(n)) / n
        weights.append(np.linalg.norm(proj @ v) ** 2)
    assert multiport_class_probabilities(psi).p == pytest.approx(weights, abs=1e-10)
