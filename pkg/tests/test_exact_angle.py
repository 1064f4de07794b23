"""Exact-arithmetic core: canonical forms, ordering, floors, rotation."""

import random
from decimal import Decimal, getcontext
from fractions import Fraction

import pytest

from sturmgas.errors import FieldMismatchError, InvalidRotationError
from sturmgas.exact_angle import (
    GOLDEN,
    QI_ZERO,
    QuadIrrational,
    RotationParams,
    continued_fraction,
    convergents,
    parse_qi,
    qi_compare,
    qi_floor,
    qi_frac,
    qi_make,
    rotate,
)

getcontext().prec = 60


def to_decimal(x: QuadIrrational) -> Decimal:
    return (Decimal(x.a) + Decimal(x.b) * Decimal(x.d).sqrt()) / Decimal(x.c)


def test_make_golden():
    g = qi_make(-1, 1, 2, 5)
    assert (g.a, g.b, g.c, g.d) == (-1, 1, 2, 5)
    assert g == GOLDEN
    # 2/(1+sqrt(5)) rationalizes to the same number
    assert g.reciprocal() == qi_make(1, 1, 2, 5)


def test_make_rational_reduction():
    assert qi_make(3, 0, 6, 0) == qi_make(1, 0, 2, 0)


def test_make_square_factor_extraction():
    x = qi_make(1, 2, 1, 8)
    assert (x.a, x.b, x.c, x.d) == (1, 4, 1, 2)


def test_make_perfect_square_radicand():
    assert qi_make(1, 3, 2, 9) == qi_make(10, 0, 2, 0) == qi_make(5, 0, 1, 0)


def test_make_negative_denominator_normalized():
    x = qi_make(1, 1, -2, 5)
    assert x.c == 2 and x.a == -1 and x.b == -1


def test_make_rejects_zero_denominator():
    with pytest.raises(ValueError):
        qi_make(1, 1, 0, 5)


def test_make_rejects_negative_radicand():
    with pytest.raises(ValueError):
        qi_make(1, 1, 1, -3)


def test_raw_constructor_requires_canonical_fields():
    with pytest.raises(ValueError):
        QuadIrrational(2, 2, 4, 5)
    with pytest.raises(ValueError):
        QuadIrrational(1, 1, 1, 8)
    with pytest.raises(ValueError):
        QuadIrrational(1, 0, 1, 5)


def test_compare_golden_above_half():
    assert qi_compare(GOLDEN, qi_make(1, 0, 2, 0)) == 1


def test_compare_reflexive():
    x = qi_make(3, -2, 7, 13)
    assert qi_compare(x, x) == 0


def test_compare_double_golden_minus_one_below_golden():
    # 2g - 1 < g is exactly g < 1
    assert qi_compare(2 * GOLDEN - 1, GOLDEN) == -1
    assert GOLDEN < qi_make(1, 0, 1, 0)


def test_compare_rejects_mixed_surds():
    with pytest.raises(FieldMismatchError):
        qi_compare(qi_make(0, 1, 1, 2), qi_make(0, 1, 1, 3))


def test_floor_examples():
    assert qi_floor(3 * (2 + GOLDEN)) == 7
    assert qi_floor(GOLDEN) == 0
    assert qi_floor(2 + GOLDEN) == 2


def test_floor_negative_values():
    assert qi_floor(-GOLDEN) == -1
    assert qi_floor(qi_make(-7, 3, 2, 5)) == -1
    assert qi_floor(qi_make(7, -3, 2, 5)) == 0


def test_rotate_examples():
    assert rotate(QI_ZERO, GOLDEN, 1) == GOLDEN
    assert rotate(GOLDEN, GOLDEN, 1) == 2 * GOLDEN - 1
    assert rotate(QI_ZERO, GOLDEN, -1) == 1 - GOLDEN


def _random_qi(rng, bound=10**6, d_choices=(0, 2, 3, 5, 7)):
    d = rng.choice(d_choices)
    b = rng.randint(-bound, bound) if d else 0
    return qi_make(rng.randint(-bound, bound), b, rng.randint(1, bound), d)


def test_roundtrip_stability():
    rng = random.Random(7)
    for _ in range(200):
        x = _random_qi(rng)
        assert qi_compare(qi_make(x.a, x.b, x.c, x.d), x) == 0


def test_floor_frac_consistency():
    rng = random.Random(11)
    for _ in range(300):
        x = _random_qi(rng, bound=10**4)
        f = qi_frac(x)
        assert f.sign() >= 0 and (f - 1).sign() < 0
        assert x == qi_floor(x) + f


def test_rotation_group_action():
    rng = random.Random(13)
    for _ in range(100):
        theta = qi_frac(_random_qi(rng, bound=500, d_choices=(0, 5)))
        j, k = rng.randint(-20, 20), rng.randint(-20, 20)
        assert rotate(theta, GOLDEN, j + k) == rotate(rotate(theta, GOLDEN, j), GOLDEN, k)


def test_order_transitive_antisymmetric():
    rng = random.Random(17)
    for _ in range(200):
        x, y, z = (_random_qi(rng, bound=1000, d_choices=(0, 5)) for _ in range(3))
        assert qi_compare(x, y) == -qi_compare(y, x)
        if x < y and y < z:
            assert x < z


def test_agreement_with_high_precision_evaluation():
    # sanity cross-check against 60-digit decimal evaluation, not the oracle
    rng = random.Random(23)
    for _ in range(10_000):
        x = _random_qi(rng)
        approx = to_decimal(x)
        assert abs(Decimal(float(x)) - approx) <= Decimal("1e-12") * max(
            1, abs(approx)
        )


def test_compare_matches_decimal_on_well_separated_pairs():
    rng = random.Random(29)
    done = 0
    while done < 2000:
        x = _random_qi(rng, d_choices=(0, 5))
        y = _random_qi(rng, d_choices=(0, 5))
        diff = to_decimal(x) - to_decimal(y)
        if abs(diff) < Decimal("1e-12"):
            continue
        assert qi_compare(x, y) == (1 if diff > 0 else -1)
        done += 1


def test_arithmetic_matches_fractions():
    a = QuadIrrational.from_fraction(Fraction(3, 7))
    b = QuadIrrational.from_fraction(Fraction(-2, 5))
    assert (a + b).as_fraction() == Fraction(3, 7) + Fraction(-2, 5)
    assert (a * b).as_fraction() == Fraction(3, 7) * Fraction(-2, 5)
    assert (a / b).as_fraction() == Fraction(3, 7) / Fraction(-2, 5)


def test_continued_fraction_of_golden_is_all_ones():
    assert continued_fraction(GOLDEN, 10) == [0] + [1] * 9


def test_convergents_are_fibonacci_ratios():
    convs = convergents(GOLDEN, 9)
    assert (13, 21) in convs and (8, 13) in convs


def test_parse_qi():
    assert parse_qi("fib") == GOLDEN
    assert parse_qi("-1,1,2,5") == GOLDEN
    assert parse_qi(str(GOLDEN)) == GOLDEN
    with pytest.raises(ValueError):
        parse_qi("1,2,3")
    with pytest.raises(ValueError):
        parse_qi("a,b,c,d")


def test_rotation_params_validation():
    with pytest.raises(InvalidRotationError):
        RotationParams(qi_make(2, 0, 3, 0), QI_ZERO)
    RotationParams(qi_make(1, 1, 4, 5), QI_ZERO)  # ~0.809, inside (1/2, 1)
    # gamma below 1/2 rejected
    with pytest.raises(ValueError):
        RotationParams(qi_make(-1, 1, 4, 5), QI_ZERO)
    with pytest.raises(FieldMismatchError):
        RotationParams(GOLDEN, qi_make(0, 1, 2, 2))
    with pytest.raises(ValueError):
        RotationParams(GOLDEN, qi_make(3, 0, 2, 0))  # psi outside [0, 1)


def test_endpoint_hits():
    assert RotationParams(GOLDEN, QI_ZERO).endpoint_hits() == (0, 1)
    assert RotationParams(GOLDEN, GOLDEN).endpoint_hits() == (-1, 0)
    generic = RotationParams(GOLDEN, QuadIrrational.from_fraction(Fraction(1, 3)))
    assert generic.endpoint_hits() is None
