"""Rational and q-adic number theory primitives.

Everything downstream leans on the conventions fixed here:

* ``sqrt_mod`` returns the root in [0, q//2] (and the root ≡ 1 mod 4 for q=2),
* ``hensel_sqrt`` lifts that canonical residue,
* ``solve_norm_equation`` scans x₀ = 0, 1, 2, ... and lifts y, so the returned
  pair is deterministic and has x an exact integer,
* ``find_hashimoto_prime`` / ``find_a`` return the smallest admissible values.

Changing any of these silently changes which sublattices the rest of the
package constructs, so they are pinned by tests.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import (
    InvalidParametersError,
    NoSquareRootError,
    NotANormError,
    PrecisionLossError,
    SearchExhaustedError,
)

INFINITE_PLACE = "inf"

# valuation assigned to an exactly-known zero; large enough that every
# congruence test at desk scale sees it as zero.
_ZERO_VAL = 10**9

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin (valid far beyond desk scale)."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def next_prime(n: int) -> int:
    k = n + 1
    while not is_prime(k):
        k += 1
    return k


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of |n|, ascending (trial division)."""
    n = abs(n)
    if n <= 1:
        return []
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def is_squarefree(n: int) -> bool:
    n = abs(n)
    if n == 0:
        return False
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        while n % d == 0:
            n //= d
        d += 1 if d == 2 else 2
    return True


def valuation(x, q: int) -> int:
    """q-adic valuation of a nonzero int or Fraction."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("valuation of zero")
    v = 0
    n = x.numerator
    while n % q == 0:
        n //= q
        v += 1
    d = x.denominator
    while d % q == 0:
        d //= q
        v -= 1
    return v


def unit_residue(x, q: int, modulus: int) -> int:
    """Residue of the q-unit part of x modulo ``modulus`` (a power of q)."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("zero has no unit part")
    n, d = x.numerator, x.denominator
    while n % q == 0:
        n //= q
    while d % q == 0:
        d //= q
    return n * pow(d, -1, modulus) % modulus


def legendre(a: int, q: int) -> int:
    """Legendre symbol (a/q) for an odd prime q; values -1, 0, 1."""
    if q == 2 or not is_prime(q):
        raise InvalidParametersError(f"legendre needs an odd prime, got {q}")
    a %= q
    if a == 0:
        return 0
    s = pow(a, (q - 1) // 2, q)
    return 1 if s == 1 else -1


def sqrt_mod(a: int, q: int) -> int:
    """Square root of a modulo an odd prime q, canonical root in [0, q//2].

    Tonelli-Shanks; raises NoSquareRootError when (a/q) = -1.
    """
    if q == 2:
        return a % 2
    a %= q
    if a == 0:
        return 0
    if legendre(a, q) != 1:
        raise NoSquareRootError(f"{a} is not a square mod {q}")
    if q % 4 == 3:
        r = pow(a, (q + 1) // 4, q)
        return min(r, q - r)
    # write q-1 = s * 2^e with s odd
    s, e = q - 1, 0
    while s % 2 == 0:
        s //= 2
        e += 1
    n = 2
    while legendre(n, q) != -1:
        n += 1
    x = pow(a, (s + 1) // 2, q)
    b = pow(a, s, q)
    g = pow(n, s, q)
    r = e
    while True:
        t, m = b, 0
        while t != 1:
            t = t * t % q
            m += 1
        if m == 0:
            return min(x, q - x)
        gs = pow(g, 1 << (r - m - 1), q)
        x = x * gs % q
        b = b * gs % q * gs % q
        g = gs * gs % q
        r = m


def is_square_unit(x, q: int) -> bool:
    """Whether the q-unit x is a square in Z_q (x given as int or Fraction)."""
    if valuation(x, q) != 0:
        raise InvalidParametersError(f"{x} is not a unit at {q}")
    if q == 2:
        return unit_residue(x, 2, 8) == 1
    return legendre(unit_residue(x, q, q), q) == 1


class PadicNum:
    """A q-adic number known to finite precision.

    A nonzero value is ``unit * q**val + O(q**(val + prec))`` with
    0 < unit < q**prec and q ∤ unit.  A value that is indistinguishable from
    zero is stored with unit == 0 and prec == 0; ``val`` is then a lower bound
    on the valuation.  Arithmetic tracks the minimum surviving precision; ask
    questions with ``is_zero_mod`` / ``residue`` and you either get an answer
    that is certain or a PrecisionLossError.
    """

    __slots__ = ("q", "val", "unit", "prec")

    def __init__(self, q: int, val: int, unit: int, prec: int):
        self.q = q
        self.val = val
        self.unit = unit
        self.prec = prec

    # -- constructors ---------------------------------------------------

    @classmethod
    def _normalized(cls, q: int, shift: int, residue: int, digits: int) -> "PadicNum":
        """Build shift-scaled value from residue known mod q**digits."""
        if digits <= 0:
            return cls(q, shift, 0, 0)
        residue %= q**digits
        if residue == 0:
            return cls(q, shift + digits, 0, 0)
        j = 0
        while residue % q == 0:
            residue //= q
            j += 1
        return cls(q, shift + j, residue % q ** (digits - j), digits - j)

    @classmethod
    def from_rational(cls, x, q: int, prec: int) -> "PadicNum":
        x = Fraction(x)
        if x == 0:
            return cls(q, _ZERO_VAL, 0, 0)
        v = valuation(x, q)
        return cls(q, v, unit_residue(x, q, q**prec), prec)

    @classmethod
    def exact_zero(cls, q: int) -> "PadicNum":
        return cls(q, _ZERO_VAL, 0, 0)

    # -- queries ---------------------------------------------------------

    @property
    def abs_prec(self) -> int:
        """Exponent m such that the value is known modulo q**m."""
        return self.val + self.prec if self.unit else self.val

    @property
    def is_known_zero(self) -> bool:
        return self.unit == 0

    def val_at_least(self, m: int) -> bool:
        if self.unit:
            return self.val >= m
        if self.val >= m:
            return True
        raise PrecisionLossError(
            f"cannot decide valuation >= {m}: only O({self.q}^{self.val}) known"
        )

    def is_zero_mod(self, m: int) -> bool:
        return self.val_at_least(m)

    def residue(self, m: int) -> int:
        """Canonical integer in [0, q**m) congruent to the value mod q**m."""
        if self.unit == 0:
            if self.val >= m:
                return 0
            raise PrecisionLossError(f"residue mod {self.q}^{m} not determined")
        if self.val < 0:
            raise PrecisionLossError(f"value has negative valuation {self.val}")
        if self.abs_prec < m:
            raise PrecisionLossError(
                f"residue mod {self.q}^{m} needs more precision (have {self.abs_prec})"
            )
        return self.unit * self.q**self.val % self.q**m

    def eq_mod(self, other: "PadicNum", m: int) -> bool:
        return (self - other).is_zero_mod(m)

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: "PadicNum"):
        if self.q != other.q:
            raise InvalidParametersError("mixed residue characteristics")

    def _shifted_int(self, base: int, digits: int) -> int:
        if self.unit == 0:
            return 0
        return self.unit * self.q ** (self.val - base) % self.q**digits

    def __add__(self, other):
        if not isinstance(other, PadicNum):
            return NotImplemented
        self._check(other)
        m = min(self.abs_prec, other.abs_prec)
        base = min(self.val, other.val)
        digits = m - base
        if digits <= 0:
            return PadicNum(self.q, m, 0, 0)
        r = self._shifted_int(base, digits) + other._shifted_int(base, digits)
        return PadicNum._normalized(self.q, base, r, digits)

    def __neg__(self):
        if self.unit == 0:
            return self
        return PadicNum(self.q, self.val, (-self.unit) % self.q**self.prec, self.prec)

    def __sub__(self, other):
        if not isinstance(other, PadicNum):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, PadicNum):
            return NotImplemented
        self._check(other)
        if self.unit == 0 or other.unit == 0:
            return PadicNum(self.q, min(self.val + other.val, _ZERO_VAL), 0, 0)
        prec = min(self.prec, other.prec)
        unit = self.unit * other.unit % self.q**prec
        return PadicNum(self.q, self.val + other.val, unit, prec)

    def __truediv__(self, other):
        if not isinstance(other, PadicNum):
            return NotImplemented
        self._check(other)
        if other.unit == 0:
            raise ZeroDivisionError("division by an (indistinguishable-from-)zero value")
        prec = min(self.prec, other.prec) if self.unit else other.prec
        if self.unit == 0:
            return PadicNum(self.q, self.val - other.val, 0, 0)
        unit = self.unit * pow(other.unit, -1, self.q**prec) % self.q**prec
        return PadicNum(self.q, self.val - other.val, unit, prec)

    def __repr__(self):
        if self.unit == 0:
            return f"O({self.q}^{self.val})"
        return f"{self.unit}*{self.q}^{self.val} + O({self.q}^{self.abs_prec})"

    def to_json(self) -> dict:
        m = self.abs_prec
        body = {"q": self.q, "prec": m}
        if self.unit and self.val < 0:
            body["val"] = self.val
            body["residue"] = str(self.unit % self.q**self.prec)
        else:
            body["residue"] = str(0 if self.unit == 0 else self.unit * self.q**self.val % self.q**m)
        return body


def hensel_sqrt(a, q: int, k: int) -> PadicNum:
    """Square root of a q-unit square, as a PadicNum of relative precision k.

    For odd q the result lifts the canonical residue sqrt_mod(a, q); for q=2
    the input must be ≡ 1 (mod 8) and the root is normalized ≡ 1 (mod 4).
    """
    if k < 1:
        raise InvalidParametersError("precision must be >= 1")
    if isinstance(a, PadicNum):
        if a.q != q:
            raise InvalidParametersError("mixed residue characteristics")
        if a.unit == 0 or a.val != 0:
            raise InvalidParametersError("hensel_sqrt expects a q-adic unit")
        if a.prec < k:
            raise PrecisionLossError(f"input known mod {q}^{a.prec}, need {q}^{k}")
        residue_mod = lambda m: a.unit % q**m
    else:
        fa = Fraction(a)
        if fa == 0 or valuation(fa, q) != 0:
            raise InvalidParametersError("hensel_sqrt expects a q-adic unit")
        residue_mod = lambda m: unit_residue(fa, q, q**m)

    if q == 2:
        if residue_mod(3) != 1:
            raise NoSquareRootError("2-adic squares among units are ≡ 1 mod 8")
        if k <= 2:
            return PadicNum(2, 0, 1 % 2**k if k > 1 else 1, k)
        x, m = 1, 3
        while m < k:
            if (x * x - residue_mod(m + 1)) % 2 ** (m + 1):
                x += 1 << (m - 1)
            m += 1
        x %= 2**k
        if x % 4 == 3:
            x = (2**k - x) % 2**k
        return PadicNum(2, 0, x, k)

    x = sqrt_mod(residue_mod(1), q)
    if x == 0:
        raise NoSquareRootError("not a unit square")
    m = 1
    while m < k:
        m = min(2 * m, k)
        mod = q**m
        x = (x + residue_mod(m) * pow(x, -1, mod)) * pow(2, -1, mod) % mod
    if x % q > q // 2:
        x = (q**k - x) % q**k
    return PadicNum(q, 0, x, k)


def solve_norm_equation(
    p: int, t, q: int, k: int, *, prefer_y_zero: bool = False
) -> tuple[PadicNum, PadicNum]:
    """Solve x² - p·y² = t over Z_q, p a nonsquare q-unit, t a q-unit.

    Returns (x, y) to precision k.  Deterministic: x₀ = 0, 1, 2, ... is the
    first integer making (x₀² - t)/p a square unit (or zero) in Z_q, and y is
    its canonical Hensel root, so x is always an exact integer and y the root
    of an explicit rational.  With prefer_y_zero=True the branch (√t, 0) is
    taken whenever t is a square in Z_q.
    """
    t = Fraction(t)
    if not is_prime(q):
        raise InvalidParametersError(f"{q} is not prime")
    if valuation(Fraction(p), q) != 0 or is_square_unit(p, q):
        raise InvalidParametersError(f"{p} must be a nonsquare unit at {q}")
    if valuation(t, q) != 0:
        raise NotANormError(f"{t} is not a q-unit at {q}")
    if hilbert_symbol(t, Fraction(p), q) != 1:
        raise NotANormError(f"{t} is not a norm from Z_{q}(sqrt {p})")

    zero = PadicNum.exact_zero(q)
    if q == 2:
        # p ≡ 5 (mod 8); one of the two scans below succeeds for every odd t.
        for y0 in range(8):
            c = t + p * y0 * y0
            if unit_residue(c, 2, 8) == 1 and valuation(c, 2) == 0:
                return hensel_sqrt(c, 2, k), PadicNum.from_rational(y0, 2, k)
        for x0 in range(8):
            c = (Fraction(x0 * x0) - t) / p
            if c != 0 and valuation(c, 2) == 0 and unit_residue(c, 2, 8) == 1:
                return PadicNum.from_rational(x0, 2, k), hensel_sqrt(c, 2, k)
        raise NotANormError(f"{t} admits no representation at q=2")

    if prefer_y_zero and legendre(unit_residue(t, q, q), q) == 1:
        return hensel_sqrt(t, q, k), zero

    pinv = pow(p % q, -1, q)
    tres = unit_residue(t, q, q)
    for x0 in range(q):
        u = (x0 * x0 - tres) * pinv % q
        if u == 0:
            if x0 == 0:
                continue
            # t ≡ x₀² mod q, so t itself is a square unit: take y = 0.
            return hensel_sqrt(t, q, k), zero
        if legendre(u, q) == 1:
            c = (Fraction(x0 * x0) - t) / p
            return PadicNum.from_rational(x0, q, k), hensel_sqrt(c, q, k)
    raise NotANormError(f"no solution found at q={q} (unexpected)")


def _two_adic_eps_omega(x: Fraction) -> tuple[int, int]:
    r = unit_residue(x, 2, 8)
    eps = (r - 1) // 2 % 2
    omega = (r * r - 1) // 8 % 2
    return eps, omega


def hilbert_symbol(a, b, place) -> int:
    """Hilbert symbol (a, b) at a finite prime or INFINITE_PLACE; values ±1."""
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise InvalidParametersError("hilbert symbol needs nonzero arguments")
    if place == INFINITE_PLACE:
        return -1 if a < 0 and b < 0 else 1
    q = place
    if not isinstance(q, int) or not is_prime(q):
        raise InvalidParametersError(f"not a place: {place!r}")
    alpha, beta = valuation(a, q), valuation(b, q)
    if q == 2:
        eu, ou = _two_adic_eps_omega(a)
        ev, ov = _two_adic_eps_omega(b)
        exp = eu * ev + alpha * ov + beta * ou
        return -1 if exp % 2 else 1
    ru = unit_residue(a, q, q)
    rv = unit_residue(b, q, q)
    eps = (q - 1) // 2 % 2
    sign = -1 if alpha * beta * eps % 2 else 1
    if beta % 2:
        sign *= legendre(ru, q)
    if alpha % 2:
        sign *= legendre(rv, q)
    return sign


def find_hashimoto_prime(delta: int, level: int, bound: int = 100_000) -> int:
    """Smallest prime p satisfying the congruence/splitting conditions.

    p ≡ 1 (mod 4); p ≡ 5 (mod 8) if 2 | delta, p ≡ 1 (mod 8) if 2 | level;
    (p/ℓ) = -1 at every odd prime ℓ | delta and (p/ℓ) = +1 at every odd
    prime ℓ | level.  For delta = 1 the convention p = 1 is returned.
    """
    _validate_delta_level(delta, level)
    if delta == 1:
        return 1
    odd_delta = [ell for ell in prime_factors(delta) if ell != 2]
    odd_level = [ell for ell in prime_factors(level) if ell != 2]
    p = 2
    while p <= bound:
        if p % 4 == 1:
            if (delta % 2 == 0 and p % 8 != 5) or (level % 2 == 0 and p % 8 != 1):
                p = next_prime(p)
                continue
            if all(legendre(p, ell) == -1 for ell in odd_delta) and all(
                legendre(p, ell) == 1 for ell in odd_level
            ):
                return p
        p = next_prime(p)
    raise SearchExhaustedError(f"no admissible prime below {bound} for ({delta}, {level})")


def find_a(delta: int, level: int, p: int) -> int:
    """Smallest a in [0, p) with a²·delta·level ≡ -1 (mod p); 0 when delta = 1."""
    if delta == 1:
        return 0
    dn = delta * level % p
    if dn == 0:
        raise InvalidParametersError("p divides delta*level")
    target = (-pow(dn, -1, p)) % p
    r = sqrt_mod(target, p)  # raises NoSquareRootError when -1/dn is a non-residue
    if r == 0:
        raise InvalidParametersError("degenerate congruence")
    return min(r, p - r)


def _validate_delta_level(delta: int, level: int):
    if delta < 1 or not is_squarefree(delta):
        raise InvalidParametersError(f"discriminant {delta} must be a positive squarefree integer")
    if len(prime_factors(delta)) % 2:
        raise InvalidParametersError(
            f"discriminant {delta} must have an even number of prime factors"
        )
    if level < 1:
        raise InvalidParametersError(f"level {level} must be a positive integer")
    from math import gcd

    if gcd(delta, level) != 1:
        raise InvalidParametersError(f"level {level} and discriminant {delta} must be coprime")
