import random

import pytest

from quatorder.errors import (
    NoSquareRootError,
    NotANormError,
    PrecisionLossError,
    SearchExhaustedError,
)
from quatorder.numth import (
    INFINITE_PLACE,
    PadicNum,
    find_a,
    find_hashimoto_prime,
    hensel_sqrt,
    hilbert_symbol,
    is_prime,
    is_square_unit,
    is_squarefree,
    legendre,
    next_prime,
    prime_factors,
    solve_norm_equation,
    sqrt_mod,
    valuation,
)


def test_prime_predicates():
    primes = [n for n in range(2, 60) if is_prime(n)]
    assert primes == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
    assert not is_prime(1)
    assert next_prime(13) == 17
    assert next_prime(1) == 2
    assert prime_factors(360) == [2, 3, 5]
    assert is_squarefree(35)
    assert not is_squarefree(12)


def test_valuation():
    assert valuation(40, 2) == 3
    assert valuation(40, 5) == 1
    from fractions import Fraction
    assert valuation(Fraction(3, 8), 2) == -3
    with pytest.raises(ValueError):
        valuation(0, 3)


def test_legendre_matches_enumeration():
    for q in [n for n in range(3, 100) if is_prime(n)]:
        squares = {(x * x) % q for x in range(1, q)}
        for a in range(1, q):
            assert legendre(a, q) == (1 if a in squares else -1)
        assert legendre(q, q) == 0


def test_sqrt_mod_canonical():
    r = sqrt_mod(2, 7)
    assert r == 3 and pow(r, 2, 7) == 2
    assert sqrt_mod(4, 13) == 2
    with pytest.raises(NoSquareRootError):
        sqrt_mod(3, 7)


def test_is_square_unit_two_adic():
    assert is_square_unit(17, 2)
    assert not is_square_unit(13, 2)
    assert is_square_unit(13, 3)
    assert not is_square_unit(13, 11)


def test_padic_roundtrip_and_arithmetic():
    x = PadicNum.from_rational(35, 11, 8)
    y = PadicNum.from_rational(-4, 11, 8)
    assert (x + y).residue(3) == 31
    assert (x * y).eq_mod(PadicNum.from_rational(-140, 11, 8), 8)
    inv = PadicNum.from_rational(1, 11, 8) / x
    assert (inv * x).eq_mod(PadicNum.from_rational(1, 11, 8), 8)
    z = PadicNum.exact_zero(11)
    assert z.is_zero_mod(50)


def test_padic_precision_guard():
    # cancellation leaves a truncated zero whose deeper valuation is unknown
    a = PadicNum.from_rational(1, 11, 4)
    b = PadicNum.from_rational(1 + 11**4, 11, 4)
    with pytest.raises(PrecisionLossError):
        (a - b).val_at_least(10)
    assert PadicNum.from_rational(11**6, 11, 4).val_at_least(3)


def test_hensel_squares_high_precision():
    rng = random.Random(0)
    for q in (2, 3, 13, 29):
        for _ in range(20):
            x = rng.randint(1, 50_000)
            while x % q == 0:
                x = rng.randint(1, 50_000)
            r = hensel_sqrt(x * x, q, 24)
            assert (r * r - PadicNum.from_rational(x * x, q, 24)).is_zero_mod(24)


def test_hensel_canonical_choice():
    r = hensel_sqrt(2, 7, 10)
    assert r.residue(1) == 3
    r2 = hensel_sqrt(17, 2, 10)
    assert r2.residue(2) == 1
    with pytest.raises(NoSquareRootError):
        hensel_sqrt(5, 2, 10)


def test_solve_norm_equation_conventions():
    # x^2 - 13 y^2 = -105 over Z_11, both witness conventions
    x, y = solve_norm_equation(13, -105, 11, 12)
    lhs = x * x - PadicNum.from_rational(13, 11, 12) * y * y
    assert lhs.eq_mod(PadicNum.from_rational(-105, 11, 12), 12)
    x0, y0 = solve_norm_equation(13, -105, 11, 12, prefer_y_zero=True)
    assert y0.is_zero_mod(12)
    lhs0 = x0 * x0 - PadicNum.from_rational(13, 11, 12) * y0 * y0
    assert lhs0.eq_mod(PadicNum.from_rational(-105, 11, 12), 12)


def test_solve_norm_equation_two_adic():
    x, y = solve_norm_equation(5, -11, 2, 12)
    lhs = x * x - PadicNum.from_rational(5, 2, 12) * y * y
    assert lhs.eq_mod(PadicNum.from_rational(-11, 2, 12), 10)
    with pytest.raises(NotANormError):
        solve_norm_equation(13, 11, 11, 8)


def test_hilbert_product_formula():
    rng = random.Random(7)
    for _ in range(200):
        a = rng.randint(-80, 80) or 1
        b = rng.randint(-80, 80) or 1
        places = {2, INFINITE_PLACE}
        places.update(prime_factors(abs(a)))
        places.update(prime_factors(abs(b)))
        prod = 1
        for place in places:
            prod *= hilbert_symbol(a, b, place)
        assert prod == 1, (a, b)


def test_hilbert_symbol_known_values():
    assert hilbert_symbol(-1, -1, 2) == -1
    assert hilbert_symbol(-1, -1, INFINITE_PLACE) == -1
    assert hilbert_symbol(-1, -1, 3) == 1
    assert hilbert_symbol(2, 7, 7) == 1
    assert hilbert_symbol(-105, 13, 5) == -1
    assert hilbert_symbol(-105, 13, 13) == 1


def test_find_hashimoto_prime_flagship():
    assert find_hashimoto_prime(35, 3) == 13
    assert find_hashimoto_prime(35, 1) == 13
    assert find_hashimoto_prime(6, 1) == 5
    assert find_hashimoto_prime(1, 6) == 1
    with pytest.raises(SearchExhaustedError):
        find_hashimoto_prime(35, 3, bound=5)


def test_find_a_values():
    assert find_a(35, 3, 13) == 5
    assert find_a(35, 1, 13) == 6
    assert find_a(6, 1, 5) == 2
    assert find_a(1, 6, 1) == 0
