"""Rational quaternion algebras B = (-ΔN, p | Q) and their Eichler orders.

The algebra attached to a squarefree discriminant Δ (even number of prime
factors), a coprime level N and an admissible prime p has

    i² = -ΔN,   j² = p,   k = ij = -ji,   k² = pΔN.

For Δ > 1 the order R(N) has the basis

    e₁ = 1,  e₂ = (1+j)/2,  e₃ = (i+k)/2,  e₄ = (aΔN·j + k)/p

with a²ΔN ≡ -1 (mod p); the degenerate model Δ = 1 uses p = 1, a = 0 and
e₄ = N·j + k.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from . import numth
from .errors import InvalidParametersError
from .exact import ZLattice4, frac_to_str, reduced_discriminant


@dataclass(frozen=True)
class AlgebraParams:
    """Validated (Δ, N, p, a) tuple identifying the algebra and its order."""

    delta: int
    level: int
    p: int
    a: int

    def __post_init__(self):
        numth._validate_delta_level(self.delta, self.level)
        if self.delta == 1:
            if self.p != 1 or self.a != 0:
                raise InvalidParametersError("the split algebra uses p = 1, a = 0")
            return
        p = self.p
        if not numth.is_prime(p) or p % 4 != 1:
            raise InvalidParametersError(f"p = {p} must be a prime ≡ 1 (mod 4)")
        if self.delta % 2 == 0 and p % 8 != 5:
            raise InvalidParametersError(f"p = {p} must be ≡ 5 (mod 8) when the discriminant is even")
        if self.level % 2 == 0 and p % 8 != 1:
            raise InvalidParametersError(f"p = {p} must be ≡ 1 (mod 8) when the level is even")
        if gcd(p, self.delta * self.level) != 1:
            raise InvalidParametersError("p must not divide ΔN")
        for ell in numth.prime_factors(self.delta):
            if ell != 2 and numth.legendre(p, ell) != -1:
                raise InvalidParametersError(f"p must be a non-residue mod {ell}")
        for ell in numth.prime_factors(self.level):
            if ell != 2 and numth.legendre(p, ell) != 1:
                raise InvalidParametersError(f"p must be a residue mod {ell}")
        if not 0 <= self.a < p:
            raise InvalidParametersError("a must be reduced into [0, p)")
        if (self.a * self.a * self.delta * self.level + 1) % p:
            raise InvalidParametersError("a²ΔN ≡ -1 (mod p) fails")

    @classmethod
    def create(cls, delta: int, level: int, *, prime_bound: int = 100_000) -> "AlgebraParams":
        """Smallest admissible p and a for the given discriminant and level."""
        p = numth.find_hashimoto_prime(delta, level, prime_bound)
        a = numth.find_a(delta, level, p)
        return cls(delta, level, p, a)

    @property
    def dn(self) -> int:
        return self.delta * self.level

    def to_json(self) -> dict:
        return {"delta": self.delta, "level": self.level, "p": self.p, "a": self.a}


class QuatElem:
    """Element x + y·i + z·j + t·k with exact rational coefficients."""

    __slots__ = ("params", "x", "y", "z", "t")

    def __init__(self, params: AlgebraParams, x, y, z, t):
        self.params = params
        self.x = Fraction(x)
        self.y = Fraction(y)
        self.z = Fraction(z)
        self.t = Fraction(t)

    def _check(self, other: "QuatElem"):
        if self.params != other.params:
            raise InvalidParametersError("elements of different algebras")

    def coefficients(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.x, self.y, self.z, self.t)

    def __add__(self, other):
        if isinstance(other, QuatElem):
            self._check(other)
            return QuatElem(self.params, self.x + other.x, self.y + other.y, self.z + other.z, self.t + other.t)
        return QuatElem(self.params, self.x + Fraction(other), self.y, self.z, self.t)

    __radd__ = __add__

    def __neg__(self):
        return QuatElem(self.params, -self.x, -self.y, -self.z, -self.t)

    def __sub__(self, other):
        if isinstance(other, QuatElem):
            self._check(other)
            return self + (-other)
        return self + (-Fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, QuatElem):
            c = Fraction(other)
            return QuatElem(self.params, self.x * c, self.y * c, self.z * c, self.t * c)
        self._check(other)
        dn = self.params.dn
        p = self.params.p
        x1, y1, z1, t1 = self.coefficients()
        x2, y2, z2, t2 = other.coefficients()
        return QuatElem(
            self.params,
            x1 * x2 - dn * y1 * y2 + p * z1 * z2 + p * dn * t1 * t2,
            x1 * y2 + y1 * x2 - p * z1 * t2 + p * t1 * z2,
            x1 * z2 + z1 * x2 - dn * y1 * t2 + dn * t1 * y2,
            x1 * t2 + t1 * x2 + y1 * z2 - z1 * y2,
        )

    def __rmul__(self, other):
        return self * other  # scalars commute

    def __pow__(self, n: int):
        if n < 0:
            raise InvalidParametersError("negative powers not supported")
        out = QuatElem(self.params, 1, 0, 0, 0)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conj(self) -> "QuatElem":
        return QuatElem(self.params, self.x, -self.y, -self.z, -self.t)

    def reduced_norm(self) -> Fraction:
        dn, p = self.params.dn, self.params.p
        return self.x**2 + dn * self.y**2 - p * self.z**2 - p * dn * self.t**2

    def reduced_trace(self) -> Fraction:
        return 2 * self.x

    def __eq__(self, other):
        return (
            isinstance(other, QuatElem)
            and self.params == other.params
            and self.coefficients() == other.coefficients()
        )

    def __hash__(self):
        return hash((self.params, self.coefficients()))

    def __repr__(self):
        return f"QuatElem({self})"

    def __str__(self):
        return pretty(self)

    def to_json(self) -> dict:
        return {
            "x": frac_to_str(self.x),
            "y": frac_to_str(self.y),
            "z": frac_to_str(self.z),
            "t": frac_to_str(self.t),
        }

    @classmethod
    def from_json(cls, params: AlgebraParams, body: dict) -> "QuatElem":
        return cls(params, Fraction(body["x"]), Fraction(body["y"]), Fraction(body["z"]), Fraction(body["t"]))


def one(params: AlgebraParams) -> QuatElem:
    return QuatElem(params, 1, 0, 0, 0)


def gens(params: AlgebraParams) -> tuple[QuatElem, QuatElem, QuatElem]:
    """The generators i, j, k."""
    return (
        QuatElem(params, 0, 1, 0, 0),
        QuatElem(params, 0, 0, 1, 0),
        QuatElem(params, 0, 0, 0, 1),
    )


def pretty(u: QuatElem) -> str:
    """Common-denominator rendering, e.g. (525j+k)/13 or (-5+i-5j+k)/2."""
    from math import lcm

    den = lcm(*[c.denominator for c in u.coefficients()])
    nums = [int(c * den) for c in u.coefficients()]
    if not any(nums):
        return "0"
    parts = []
    for n, sym in zip(nums, ("", "i", "j", "k")):
        if n == 0:
            continue
        if sym and abs(n) == 1:
            text = sym
        else:
            text = f"{abs(n)}{sym}"
        parts.append(("-" if n < 0 else "+") + text)
    body = "".join(parts)
    body = body[1:] if body[0] == "+" else body
    if den == 1:
        return body
    if len(parts) > 1:
        return f"({body})/{den}"
    return f"{body}/{den}"


@lru_cache(maxsize=None)
def hashimoto_basis(params: AlgebraParams) -> tuple[QuatElem, QuatElem, QuatElem, QuatElem]:
    """The order basis (e₁, e₂, e₃, e₄) of R(N)."""
    half = Fraction(1, 2)
    e1 = QuatElem(params, 1, 0, 0, 0)
    e2 = QuatElem(params, half, 0, half, 0)
    e3 = QuatElem(params, 0, half, 0, half)
    if params.delta == 1:
        e4 = QuatElem(params, 0, 0, params.level, 1)
    else:
        e4 = QuatElem(params, 0, 0, Fraction(params.a * params.dn, params.p), Fraction(1, params.p))
    return (e1, e2, e3, e4)


def coords_in_hashimoto(u: QuatElem) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """Coefficients (c₁..c₄) of u over the order basis; always solvable."""
    params = u.params
    c3 = 2 * u.y
    if params.delta == 1:
        c4 = u.t - u.y
        c2 = 2 * u.z - 2 * params.level * c4
        c1 = u.x - u.z + params.level * c4
    else:
        adn = Fraction(params.a * params.dn)
        c4 = params.p * (u.t - u.y)
        c2 = 2 * u.z - 2 * adn * (u.t - u.y)
        c1 = u.x - u.z + adn * (u.t - u.y)
    return (c1, c2, c3, c4)


def element_from_coords(params: AlgebraParams, coords) -> QuatElem:
    e = hashimoto_basis(params)
    out = QuatElem(params, 0, 0, 0, 0)
    for c, basis_elem in zip(coords, e):
        out = out + basis_elem * Fraction(c)
    return out


def order_lattice(params: AlgebraParams) -> ZLattice4:
    """R(N) as a lattice in (1, i, j, k)-coordinates."""
    rows = [list(e.coefficients()) for e in hashimoto_basis(params)]
    return ZLattice4.from_rows(rows, ambient=("quat", params.delta, params.level, params.p))

def elements_lattice(params: AlgebraParams, elems) -> ZLattice4:
    rows = [list(e.coefficients()) for e in elems]
    return ZLattice4.from_rows(rows, ambient=("quat", params.delta, params.level, params.p))


def coefficient_lattice(params: AlgebraParams, elems) -> ZLattice4:
    """Lattice of order-basis coordinate vectors of the given elements."""
    rows = [list(coords_in_hashimoto(e)) for e in elems]
    return ZLattice4.from_rows(rows, ambient=("coords", params.delta, params.level, params.p))


def phi_membership(u: QuatElem, order: ZLattice4 | None = None) -> bool:
    """Whether u lies in the norm-one group of the order (default R(N))."""
    lattice = order if order is not None else order_lattice(u.params)
    return lattice.contains(u.coefficients()) and u.reduced_norm() == 1


def order_discriminant(params: AlgebraParams) -> int:
    return reduced_discriminant(hashimoto_basis(params))
