"""Couplings, exact energies, exhaustive ground states, periodic densities."""

from fractions import Fraction

import pytest

from sturmgas.errors import InsufficientProfileError
from sturmgas.exact_angle import GOLDEN, RotationParams
from sturmgas.sturmian_gen import Word, generate
from sturmgas.order_analysis import distance_profile
from sturmgas.characterization import enumerate_legal, is_locally_legal
from sturmgas.lattice_gas import (
    build_interaction,
    energy_open,
    ground_state_search,
    periodic_energy_density,
)

FIB = RotationParams(GOLDEN, GOLDEN)
PROFILE = distance_profile(FIB, 200)
SPEC = build_interaction(PROFILE, Fraction(1, 2), Fraction(1))


def test_couplings_on_forbidden_distances_only():
    assert SPEC.coupling(1) == Fraction(1, 2)
    assert SPEC.coupling(4) == Fraction(1, 16)
    assert SPEC.coupling(2) == 0
    assert SPEC.coupling(3) == 0
    assert SPEC.coupling(PROFILE.d1) == 0


def test_couplings_summable():
    total = sum(SPEC.coupling(j) for j in sorted(PROFILE.forbidden))
    assert total <= Fraction(1, 2) / (1 - Fraction(1, 2))


def test_coupling_outside_horizon_rejected():
    with pytest.raises(InsufficientProfileError):
        SPEC.coupling(PROFILE.horizon + 1)


def test_interaction_validation():
    with pytest.raises(ValueError):
        build_interaction(PROFILE, Fraction(3, 2), Fraction(1))
    with pytest.raises(ValueError):
        build_interaction(PROFILE, Fraction(1, 2), Fraction(0))


def test_zero_run_length():
    assert SPEC.zero_run_len == PROFILE.d1 + 1 == 3


def test_pair_coupling_map():
    coupling = SPEC.pair_coupling()
    assert set(coupling) == set(range(1, PROFILE.horizon + 1))
    assert all(coupling[j] > 0 for j in PROFILE.forbidden)
    assert all(coupling[j] == 0 for j in PROFILE.allowed)


def test_interaction_json():
    import json

    payload = json.loads(SPEC.to_json())
    assert payload == {
        "gamma": "-1,1,2,5",
        "lambda": "1/2",
        "beta": "1/1",
        "horizon": 200,
    }


def test_energy_of_legal_word_is_zero():
    breakdown = energy_open(Word("0100101001001", 1), SPEC)
    assert breakdown.total == 0
    assert not breakdown.violating_pairs and not breakdown.violating_runs


def test_energy_adjacent_pair():
    breakdown = energy_open(Word("11"), SPEC)
    assert breakdown.total == Fraction(1, 2)
    assert breakdown.violating_pairs == ((0, 1, 1),)


def test_energy_zero_run():
    breakdown = energy_open(Word("000"), SPEC)
    assert breakdown.total == 1
    assert breakdown.zero_run_part == 1 and breakdown.pair_part == 0
    assert breakdown.violating_runs == (0,)


def test_energy_breakdown_adds_up():
    breakdown = energy_open(Word("1100010"), SPEC)
    assert breakdown.total == breakdown.pair_part + breakdown.zero_run_part
    assert breakdown.total > 0


def test_energy_needs_covering_horizon():
    with pytest.raises(InsufficientProfileError):
        energy_open(generate(FIB, 0, 500), SPEC)


def test_energies_are_exact_fractions():
    for word in ("11", "000", "10101", "0010010"):
        assert isinstance(energy_open(Word(word), SPEC).total, Fraction)


def test_ground_state_tiny_lengths():
    r1 = ground_state_search(1, SPEC)
    assert r1.min_energy == 0
    assert {w.symbols for w in r1.argmin} == {"0", "1"}
    r2 = ground_state_search(2, SPEC)
    assert {w.symbols for w in r2.argmin} == {"00", "01", "10"}


def test_ground_state_matches_legality_filter():
    result = ground_state_search(12, SPEC)
    legal = enumerate_legal(12, 12, PROFILE)
    assert result.argmin == frozenset(legal)
    assert result.states_scanned == 4096


def test_ground_state_contains_generated_factors():
    result = ground_state_search(10, SPEC)
    window = generate(FIB, 0, 499)
    for k in range(0, 400, 37):
        factor = Word(window.symbols[k : k + 10])
        assert factor in result.argmin


def test_ground_state_parallel_matches_sequential():
    seq = ground_state_search(11, SPEC)
    par = ground_state_search(11, SPEC, workers=2)
    assert seq.argmin == par.argmin and seq.min_energy == par.min_energy


def test_ground_state_refuses_oversized_scan():
    with pytest.raises(ValueError):
        ground_state_search(25, SPEC)


def test_periodic_density_vacuum_equals_penalty():
    dens = periodic_energy_density(Word("0"), SPEC)
    assert dens.lower_bound == 1
    assert dens.value_estimate == 1


def test_periodic_density_dense_particles():
    dens = periodic_energy_density(Word("1"), SPEC)
    assert dens.lower_bound >= Fraction(1, 2)  # distance-1 pairs at every site


def test_periodic_density_alternating():
    dens = periodic_energy_density(Word("10"), SPEC)
    assert dens.lower_bound >= Fraction(1, 16) / 2  # distance 4 = 2 periods


def test_periodic_density_positive_for_all_small_periods():
    for p in range(1, 7):
        for content in range(1 << p):
            cell = "".join("1" if (content >> k) & 1 else "0" for k in range(p))
            dens = periodic_energy_density(Word(cell), SPEC)
            assert dens.lower_bound > 0, cell
            assert dens.lower_bound <= dens.value_estimate


def test_periodic_density_estimate_tightens():
    loose = periodic_energy_density(Word("10"), SPEC, tail_tol=Fraction(1, 10**3))
    tight = periodic_energy_density(Word("10"), SPEC, tail_tol=Fraction(1, 10**9))
    assert loose.lower_bound <= tight.lower_bound
    assert tight.value_estimate - tight.lower_bound < Fraction(1, 10**8)


def test_decay_halving_preserves_argmin():
    halved = build_interaction(PROFILE, Fraction(1, 4), Fraction(1))
    for length in (6, 9):
        assert (
            ground_state_search(length, SPEC).argmin
            == ground_state_search(length, halved).argmin
        )


def test_zero_energy_iff_legal_exhaustive_to_14():
    for length in range(2, 15):
        result = ground_state_search(length, SPEC)
        for x in range(1 << length):
            word = Word(
                "".join("1" if (x >> k) & 1 else "0" for k in range(length))
            )
            assert (word in result.argmin) == is_locally_legal(word, PROFILE).legal


def test_ground_state_exhaustive_at_20():
    # the search cross-asserts zero minimum and argmin == legal set
    result = ground_state_search(20, SPEC, workers=4)
    assert result.min_energy == 0
    assert result.states_scanned == 1 << 20


def test_zero_energy_iff_legal_spot_checks_above_20():
    # pruned route: every legal word of length 22 sits at zero energy, and
    # single-bit damage to a sampled few always costs something
    legal = enumerate_legal(22, 22, PROFILE)
    assert all(energy_open(w, SPEC).total == 0 for w in legal)
    for w in sorted(legal, key=lambda x: x.symbols)[::7]:
        for u in (0, 10, 21):
            flipped = "0" if w.symbols[u] == "1" else "1"
            damaged = Word(w.symbols[:u] + flipped + w.symbols[u + 1 :])
            verdict = is_locally_legal(damaged, PROFILE)
            energy = energy_open(damaged, SPEC).total
            assert (energy == 0) == verdict.legal
            assert energy >= 0
