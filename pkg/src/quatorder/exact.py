"""Exact linear algebra: HNF lattices, 2x2 matrices, quadratic irrationals.

All lattice work happens over Z after clearing denominators; the Hermite
normal form here is the row-style echelon form with positive pivots and the
entries above each pivot reduced into [0, pivot), which makes it a canonical
representative usable for equality tests.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt, lcm

from .errors import AmbientMismatchError, InvalidParametersError, NotAnOrderBasisError

Rational = Fraction


def frac_to_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def frac_from_str(s: str) -> Fraction:
    return Fraction(s)


def is_perfect_square(n: int) -> bool:
    if n < 0:
        return False
    r = isqrt(n)
    return r * r == n


# ---------------------------------------------------------------------------
# integer matrices


def det_int(rows: list[list[int]]) -> int:
    """Determinant of a square integer matrix (fraction-free Bareiss)."""
    n = len(rows)
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def det_frac(rows) -> Fraction:
    n = len(rows)
    scaled = []
    scale = Fraction(1)
    for r in rows:
        d = lcm(*[Fraction(x).denominator for x in r]) if r else 1
        scale /= d
        scaled.append([int(Fraction(x) * d) for x in r])
    return scale * det_int(scaled) if n else Fraction(1)


def hnf(rows: list[list[int]]) -> list[list[int]]:
    """Canonical row HNF; zero rows dropped."""
    h, _ = hnf_with_transform(rows)
    return [r for r in h if any(r)]


def hnf_with_transform(rows: list[list[int]]) -> tuple[list[list[int]], list[list[int]]]:
    """Return (H, U) with U unimodular, U @ rows == H, H in row HNF.

    H keeps its zero rows (at the bottom) so the corresponding rows of U form
    a basis of the left kernel.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    a = [list(r) for r in rows]
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    rank = 0
    for col in range(n):
        # clear the column below position `rank` by gcd elimination
        while True:
            piv = None
            for i in range(rank, m):
                if a[i][col] and (piv is None or abs(a[i][col]) < abs(a[piv][col])):
                    piv = i
            if piv is None:
                break
            a[rank], a[piv] = a[piv], a[rank]
            u[rank], u[piv] = u[piv], u[rank]
            done = True
            for i in range(rank + 1, m):
                if a[i][col]:
                    t = a[i][col] // a[rank][col]
                    a[i] = [x - t * y for x, y in zip(a[i], a[rank])]
                    u[i] = [x - t * y for x, y in zip(u[i], u[rank])]
                    if a[i][col]:
                        done = False
            if done:
                break
        if piv is None:
            continue
        if a[rank][col] < 0:
            a[rank] = [-x for x in a[rank]]
            u[rank] = [-x for x in u[rank]]
        for i in range(rank):
            t = a[i][col] // a[rank][col]
            if t:
                a[i] = [x - t * y for x, y in zip(a[i], a[rank])]
                u[i] = [x - t * y for x, y in zip(u[i], u[rank])]
        rank += 1
    return a, u


def left_kernel(rows: list[list[int]]) -> list[list[int]]:
    """Basis (HNF) of {u : u @ rows == 0}."""
    h, u = hnf_with_transform(rows)
    ker = [u[i] for i in range(len(h)) if not any(h[i])]
    return hnf(ker) if ker else []


def right_kernel(rows: list[list[int]]) -> list[list[int]]:
    """Basis (HNF) of {v : rows @ v == 0}, vectors as rows."""
    if not rows:
        return []
    t = [[rows[i][j] for i in range(len(rows))] for j in range(len(rows[0]))]
    return left_kernel(t)


def congruence_kernel(rows: list[list[int]], modulus: int) -> list[list[int]]:
    """Basis (HNF) of {v in Z^n : rows @ v ≡ 0 (mod modulus)}."""
    if not rows:
        raise InvalidParametersError("empty congruence system")
    r, n = len(rows), len(rows[0])
    aug = [list(rows[i]) + [modulus if j == i else 0 for j in range(r)] for i in range(r)]
    ker = right_kernel(aug)
    return hnf([v[:n] for v in ker])


def saturation(rows: list[list[int]]) -> list[list[int]]:
    """HNF basis of (Q-span of rows) ∩ Z^n."""
    ortho = right_kernel(rows)
    if not ortho:
        n = len(rows[0])
        return hnf([[int(i == j) for j in range(n)] for i in range(n)])
    return right_kernel(ortho)


# ---------------------------------------------------------------------------
# quadratic irrationals a + b*sqrt(d)


class QuadRat:
    """Exact element a + b·√d of Q(√d); d a fixed nonsquare rational."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.d = Fraction(d)

    def _check(self, other):
        if self.d != other.d:
            raise InvalidParametersError("mixed quadratic fields")

    def __add__(self, other):
        if isinstance(other, QuadRat):
            self._check(other)
            return QuadRat(self.a + other.a, self.b + other.b, self.d)
        return QuadRat(self.a + Fraction(other), self.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadRat(-self.a, -self.b, self.d)

    def __sub__(self, other):
        return self + (-other if isinstance(other, QuadRat) else QuadRat(-Fraction(other), 0, self.d))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, QuadRat):
            self._check(other)
            return QuadRat(
                self.a * other.a + self.d * self.b * other.b,
                self.a * other.b + self.b * other.a,
                self.d,
            )
        c = Fraction(other)
        return QuadRat(self.a * c, self.b * c, self.d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, QuadRat):
            other = QuadRat(other, 0, self.d)
        self._check(other)
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError
        inv = QuadRat(other.a / n, -other.b / n, self.d)
        return self * inv

    def conj(self) -> "QuadRat":
        return QuadRat(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def trace(self) -> Fraction:
        return 2 * self.a

    def is_rational(self) -> bool:
        return self.b == 0

    def __eq__(self, other):
        if isinstance(other, QuadRat):
            return self.d == other.d and self.a == other.a and self.b == other.b
        return self.b == 0 and self.a == Fraction(other)

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def __repr__(self):
        return f"({frac_to_str(self.a)} + {frac_to_str(self.b)}*sqrt({self.d}))"

    def to_json(self) -> dict:
        return {"a": frac_to_str(self.a), "b": frac_to_str(self.b)}


# ---------------------------------------------------------------------------
# generic 2x2 matrices


class Mat2:
    """2x2 matrix over any ring with +, -, *."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d):
        self.a, self.b, self.c, self.d = a, b, c, d

    @classmethod
    def scalar(cls, x, zero) -> "Mat2":
        return cls(x, zero, zero, x)

    def __add__(self, other):
        return Mat2(self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d)

    def __sub__(self, other):
        return Mat2(self.a - other.a, self.b - other.b, self.c - other.c, self.d - other.d)

    def __neg__(self):
        return Mat2(-self.a, -self.b, -self.c, -self.d)

    def __mul__(self, other):
        if isinstance(other, Mat2):
            return Mat2(
                self.a * other.a + self.b * other.c,
                self.a * other.b + self.b * other.d,
                self.c * other.a + self.d * other.c,
                self.c * other.b + self.d * other.d,
            )
        return Mat2(self.a * other, self.b * other, self.c * other, self.d * other)

    def __rmul__(self, other):
        return Mat2(other * self.a, other * self.b, other * self.c, other * self.d)

    def trace(self):
        return self.a + self.d

    def det(self):
        return self.a * self.d - self.b * self.c

    def entries(self) -> tuple:
        return (self.a, self.b, self.c, self.d)

    def __eq__(self, other):
        return isinstance(other, Mat2) and self.entries() == other.entries()

    def __repr__(self):
        return f"[[{self.a}, {self.b}], [{self.c}, {self.d}]]"


# ---------------------------------------------------------------------------
# rank <= 4 lattices in Q^4


class ZLattice4:
    """Finitely generated subgroup of Q^4, stored as (1/denom)·(HNF rows).

    The pair (denom, rows) is reduced, so two lattices are equal iff their
    stored data are equal.  An optional ``ambient`` tag guards against
    intersecting lattices that live in different coordinate systems.
    """

    __slots__ = ("denom", "rows", "ambient")

    def __init__(self, denom: int, rows: tuple, ambient=None):
        self.denom = denom
        self.rows = rows
        self.ambient = ambient

    @classmethod
    def from_rows(cls, rational_rows, ambient=None) -> "ZLattice4":
        rows = [[Fraction(x) for x in r] for r in rational_rows]
        for r in rows:
            if len(r) != 4:
                raise InvalidParametersError("ZLattice4 rows must have length 4")
        if not rows:
            return cls(1, (), ambient)
        d = lcm(*[x.denominator for r in rows for x in r])
        ints = [[int(x * d) for x in r] for r in rows]
        h = hnf(ints)
        if not h:
            return cls(1, (), ambient)
        g = d
        for r in h:
            for x in r:
                g = gcd(g, x)
        if g > 1:
            d //= g
            h = [[x // g for x in r] for r in h]
        return cls(d, tuple(tuple(r) for r in h), ambient)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def basis(self) -> list[list[Fraction]]:
        return [[Fraction(x, self.denom) for x in r] for r in self.rows]

    def scaled_rows(self, denom: int) -> list[list[int]]:
        if denom % self.denom:
            raise InvalidParametersError("incompatible scaling")
        f = denom // self.denom
        return [[x * f for x in r] for r in self.rows]

    def contains(self, vec) -> bool:
        v = [Fraction(x) for x in vec]
        w = [x * self.denom for x in v]
        if any(x.denominator != 1 for x in w):
            return False
        w = [int(x) for x in w]
        for row in self.rows:
            pc = next(j for j, x in enumerate(row) if x)
            if w[pc] % row[pc]:
                return False
            t = w[pc] // row[pc]
            w = [x - t * y for x, y in zip(w, row)]
        return not any(w)

    def _check_ambient(self, other: "ZLattice4"):
        if self.ambient is not None and other.ambient is not None and self.ambient != other.ambient:
            raise AmbientMismatchError(f"{self.ambient} vs {other.ambient}")

    def intersect(self, other: "ZLattice4") -> "ZLattice4":
        self._check_ambient(other)
        if not self.rows or not other.rows:
            return ZLattice4(1, (), self.ambient or other.ambient)
        d = lcm(self.denom, other.denom)
        a = self.scaled_rows(d)
        b = other.scaled_rows(d)
        stacked = a + [[-x for x in r] for r in b]
        ker = left_kernel(stacked)
        gens = []
        for u in ker:
            g = [0, 0, 0, 0]
            for coef, row in zip(u[: len(a)], a):
                for j in range(4):
                    g[j] += coef * row[j]
            gens.append([Fraction(x, d) for x in g])
        return ZLattice4.from_rows(gens, self.ambient or other.ambient)

    def index_in(self, superlattice: "ZLattice4") -> int:
        """[superlattice : self] for two full-rank lattices with self ⊆ superlattice."""
        self._check_ambient(superlattice)
        if self.rank != 4 or superlattice.rank != 4:
            raise InvalidParametersError("index needs two rank-4 lattices")
        d = lcm(self.denom, superlattice.denom)
        num = det_int(self.scaled_rows(d))
        den = det_int(superlattice.scaled_rows(d))
        ratio = Fraction(abs(num), abs(den))
        if ratio.denominator != 1:
            raise InvalidParametersError("not a sublattice")
        return int(ratio)

    def saturate(self) -> "ZLattice4":
        sat = saturation([list(r) for r in self.rows]) if self.rows else []
        return ZLattice4.from_rows([[Fraction(x, self.denom) for x in r] for r in sat], self.ambient)

    def __eq__(self, other):
        return (
            isinstance(other, ZLattice4)
            and self.denom == other.denom
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.denom, self.rows))

    def __repr__(self):
        return f"ZLattice4(1/{self.denom} * {list(map(list, self.rows))})"

    def to_json(self) -> list:
        return [[frac_to_str(x) for x in row] for row in self.basis()]


def lattice_intersect(l1: ZLattice4, l2: ZLattice4) -> ZLattice4:
    return l1.intersect(l2)


# ---------------------------------------------------------------------------
# trace forms


def gram_trace_matrix(elems) -> list[list[Fraction]]:
    """Gram matrix of reduced traces tr(x·y) for a list of elements."""
    return [[(x * y).reduced_trace() for y in elems] for x in elems]


def reduced_discriminant(elems) -> int:
    """√|det| of the reduced-trace Gram matrix of four elements.

    Raises NotAnOrderBasisError unless the determinant is a nonzero integer
    whose absolute value is a perfect square.
    """
    if len(elems) != 4:
        raise NotAnOrderBasisError("need exactly four elements")
    d = det_frac(gram_trace_matrix(elems))
    if d == 0:
        raise NotAnOrderBasisError("degenerate trace form")
    if d.denominator != 1 or not is_perfect_square(abs(int(d))):
        raise NotAnOrderBasisError(f"trace form determinant {d} is not a square integer")
    return isqrt(abs(int(d)))
