"""Factor complexity, balance, homogeneity, and the distance profile."""

import pytest

from sturmgas.errors import (
    InsufficientProfileError,
    InternalConsistencyError,
    UndecidableWindowError,
)
from sturmgas.exact_angle import GOLDEN, QI_ZERO, RotationParams, qi_make
from sturmgas.sturmian_gen import Word, generate
from sturmgas.order_analysis import (
    DistanceProfile,
    distance_profile,
    ensure_horizon,
    factor_complexity,
    factor_set,
    is_balanced,
    is_most_homogeneous,
    profile_structure,
)

FIB = RotationParams(GOLDEN, GOLDEN)
SQRT2 = RotationParams(qi_make(0, 1, 2, 2), QI_ZERO)  # d1 = 3 example
EX_WORD = Word("0100101001001", 1)


def test_factor_set_examples():
    assert {w.symbols for w in factor_set(EX_WORD, 2)} == {"01", "10", "00"}
    assert {w.symbols for w in factor_set(Word("000"), 1)} == {"0"}
    assert factor_set(EX_WORD, len(EX_WORD)) == {EX_WORD}


def test_factor_set_rejects_oversized_length():
    with pytest.raises(ValueError):
        factor_set(Word("01"), 3)


def test_factor_complexity_minimal():
    report = factor_complexity(FIB, 12)
    assert report.p[1] == 2
    assert report.p[4] == 5
    assert report.p[12] == 13
    assert all(report.p[n] == n + 1 for n in range(1, 13))


def test_factor_complexity_monotone_and_bounded():
    report = factor_complexity(FIB, 10)
    counts = [report.p[n] for n in range(1, 11)]
    assert counts == sorted(counts)
    assert all(c <= 2**n for n, c in enumerate(counts, start=1))


def test_balance_verdicts():
    assert is_balanced(EX_WORD).balanced
    verdict = is_balanced(Word("0011"))
    assert not verdict.balanced
    assert (verdict.witness[0].symbols, verdict.witness[1].symbols) == ("00", "11")
    assert is_balanced(Word("")).balanced
    assert is_balanced(Word("0")).balanced


def test_homogeneity_verdicts():
    verdict = is_most_homogeneous(EX_WORD)
    assert verdict.homogeneous and verdict.gap_map[1] == 2
    bad = is_most_homogeneous(Word("10011"))
    assert not bad.homogeneous
    assert bad.witness[0] == 1  # rank with gaps {1, 3}
    periodic = is_most_homogeneous(Word("101010"))
    assert periodic.homogeneous and periodic.gap_map[1] == 2


def test_homogeneity_needs_two_particles():
    with pytest.raises(UndecidableWindowError):
        is_most_homogeneous(Word("0001000"))


def test_distance_profile_golden():
    profile = distance_profile(FIB, 21)
    assert profile.d == (2, 5, 7, 10, 13, 15, 18, 20)
    assert sorted(profile.allowed) == [
        2, 3, 5, 6, 7, 8, 10, 11, 13, 14, 15, 16, 18, 19, 20, 21,
    ]
    wide = distance_profile(FIB, 25)
    assert sorted(wide.forbidden) == [1, 4, 9, 12, 17, 22, 25]


def test_distance_profile_floor_formula():
    profile = distance_profile(FIB, 200)
    for j, dj in enumerate(profile.d, start=1):
        assert dj == (j * (2 + GOLDEN)).floor()


def test_distance_profile_increments():
    for params in (FIB, SQRT2):
        profile = distance_profile(params, 120)
        d1 = profile.d[0]
        steps = {b - a for a, b in zip(profile.d, profile.d[1:])}
        assert steps <= {d1, d1 + 1}


def test_distance_profile_requires_minimal_horizon():
    with pytest.raises(ValueError):
        distance_profile(FIB, 1)


def test_profile_json_roundtrip():
    profile = distance_profile(FIB, 30)
    again = DistanceProfile.from_json(profile.to_json())
    assert again == DistanceProfile(
        profile.d, profile.horizon, profile.allowed, profile.forbidden
    )
    assert again.params is None


def test_profile_partition_enforced():
    with pytest.raises(ValueError):
        DistanceProfile((2,), 4, frozenset({2, 3}), frozenset({1, 2, 4}))


def test_ensure_horizon():
    profile = distance_profile(FIB, 25)
    grown = ensure_horizon(profile, 60)
    assert grown.horizon >= 60 and grown.d[: len(profile.d)] == profile.d
    detached = DistanceProfile.from_json(profile.to_json())
    with pytest.raises(InsufficientProfileError):
        ensure_horizon(detached, 60)


def test_profile_structure_golden():
    structure = profile_structure(distance_profile(FIB, 25))
    assert (5, 7) in structure.blocks
    assert structure.classification[2] == "singleton"
    assert structure.classification[5] == "block"
    assert structure.classification[10] == "singleton"


def test_profile_structure_singletons_when_d1_exceeds_two():
    structure = profile_structure(distance_profile(SQRT2, 60))
    assert all(kind == "singleton" for kind in structure.classification.values())


def test_profile_structure_empty_profile():
    # horizon below the first distance: nothing to classify
    profile = distance_profile(SQRT2, 2)
    assert profile.d == ()
    structure = profile_structure(profile)
    assert structure.blocks == () and structure.classification == {}


def test_profile_structure_flags_corruption():
    profile = distance_profile(FIB, 21)
    corrupt = DistanceProfile(
        (2, 5, 7, 9),
        21,
        profile.allowed,
        profile.forbidden,
    )
    with pytest.raises(InternalConsistencyError):
        profile_structure(corrupt)
    # forbidden neighbourhood rule: make 4 allowed, 5 forbidden
    swapped = DistanceProfile(
        profile.d,
        21,
        (profile.allowed - {5}) | {4},
        (profile.forbidden - {4}) | {5},
    )
    with pytest.raises(InternalConsistencyError):
        profile_structure(swapped)


def test_gap_values_in_generated_windows():
    profile = distance_profile(FIB, 40)
    w = generate(FIB, 0, 999)
    ones = w.one_positions()
    gaps = {b - a for a, b in zip(ones, ones[1:])}
    assert gaps == {profile.d1, profile.d1 + 1}
