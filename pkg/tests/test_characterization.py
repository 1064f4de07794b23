"""Local legality, legal-word enumeration, periodic exclusion, structure scans."""

import pytest

from sturmgas.errors import InconclusiveError, InsufficientProfileError
from sturmgas.exact_angle import GOLDEN, RotationParams
from sturmgas.sturmian_gen import Word, generate
from sturmgas.order_analysis import DistanceProfile, distance_profile, factor_set
from sturmgas.characterization import (
    check_enclosed_ones,
    check_follower_ones,
    enumerate_legal,
    enumerate_legal_stable,
    is_locally_legal,
    periodic_exclusion,
)

FIB = RotationParams(GOLDEN, GOLDEN)
PROFILE = distance_profile(FIB, 200)


def test_legal_examples():
    assert is_locally_legal(Word("0100101001001", 1), PROFILE).legal
    zero_run = is_locally_legal(Word("000"), PROFILE)
    assert not zero_run.legal
    assert zero_run.violation.kind == "zero_run" and zero_run.violation.position == 0
    pair = is_locally_legal(Word("10001"), PROFILE)
    assert not pair.legal
    assert pair.violation.kind == "forbidden_pair"
    assert pair.violation.distance == 4 and pair.violation.position == 0


def test_legal_violation_positions_respect_origin():
    verdict = is_locally_legal(Word("000", origin=17), PROFILE)
    assert verdict.violation.position == 17


def test_legal_needs_covering_horizon():
    with pytest.raises(InsufficientProfileError):
        is_locally_legal(generate(FIB, 0, 500), PROFILE)


def test_enumerate_small_lengths():
    assert {w.symbols for w in enumerate_legal(1, 8, PROFILE)} == {"0", "1"}
    assert {w.symbols for w in enumerate_legal(2, 40, PROFILE)} == {"00", "01", "10"}


def test_enumerate_monotone_in_enclosing_length():
    for n in (3, 5, 7):
        small = enumerate_legal(n, 2 * n, PROFILE)
        large = enumerate_legal(n, 6 * n, PROFILE)
        assert large <= small


def test_enumerate_budget_guard():
    with pytest.raises(InconclusiveError) as err:
        enumerate_legal(4, 64, PROFILE, budget=50)
    assert err.value.info["length_reached"] == 64


def test_stable_enumeration_matches_factors():
    window = generate(FIB, 0, 4095)
    for n in range(1, 13):
        legal, used = enumerate_legal_stable(n, PROFILE)
        assert len(legal) == n + 1
        assert {w.symbols for w in legal} == {
            w.symbols for w in factor_set(window, n)
        }
        assert used >= n


def test_periodic_exclusion_forced_values():
    assert periodic_exclusion(1, PROFILE) == 1
    assert periodic_exclusion(2, PROFILE) == 2
    # multiples of 5: 5, 10, 15, 20 allowed, 25 forbidden
    assert periodic_exclusion(5, PROFILE) == 5
    assert all(periodic_exclusion(p, PROFILE) >= 1 for p in range(1, 13))


def test_periodic_exclusion_grows_horizon():
    small = distance_profile(FIB, 8)
    assert periodic_exclusion(9, small) == 1


def test_periodic_exclusion_detached_profile_fails_loudly():
    detached = DistanceProfile.from_json(distance_profile(FIB, 8).to_json())
    with pytest.raises(InsufficientProfileError):
        periodic_exclusion(9, detached)


def test_periodic_exclusion_cap():
    small = distance_profile(FIB, 20)
    with pytest.raises(InconclusiveError):
        periodic_exclusion(7, small, horizon_cap=20)  # 7, 14 allowed; 21 past cap


def test_periodic_repetitions_are_illegal():
    for p in range(1, 9):
        i = periodic_exclusion(p, PROFILE)
        span = max(2 * i * p, PROFILE.d1 + 2)
        for content in range(1 << p):
            cell = "".join("1" if (content >> k) & 1 else "0" for k in range(p))
            x = (cell * (span // p + 1))[:span]
            assert not is_locally_legal(Word(x), PROFILE).legal, (p, cell)


def test_enclosed_ones_on_generated_window():
    w = generate(FIB, 0, 199)
    assert check_enclosed_ones(w, PROFILE).holds


def test_enclosed_ones_adjacent_pair():
    # distance 2 pairs are rank 1: zero enclosed 1's
    verdict = check_enclosed_ones(Word("101"), PROFILE)
    assert verdict.holds


def test_enclosed_ones_guards_illegal_words():
    with pytest.raises(ValueError):
        check_enclosed_ones(Word("10001"), PROFILE)


def test_follower_ones_on_generated_window():
    w = generate(FIB, 0, 199)
    assert check_follower_ones(w, PROFILE).holds


def test_follower_ones_flip_reported():
    w = generate(FIB, 0, 80)
    ones = [k for k, ch in enumerate(w.symbols) if ch == "1"]
    a = ones[3]
    target = a + 2 if w.symbols[a + 2] == "1" else a + 3
    flipped = Word(w.symbols[:target] + "0" + w.symbols[target + 1 :], w.origin)
    verdict = check_follower_ones(flipped, PROFILE)
    assert not verdict.holds
    assert any(pos == a and rank == 1 for pos, rank, _ in verdict.witnesses)


def test_follower_ones_window_end_skipped():
    # rank whose d_r + 1 would look past the end is skipped, not failed
    assert check_follower_ones(Word("10"), PROFILE).holds
