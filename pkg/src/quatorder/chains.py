"""Intersections of descending order chains refined at one prime.

Fix a division algebra (delta > 1) with its level-1 order R.  Refining the
level at a prime q gives a descending chain of suborders whose members are,
locally at q, the matrices with lower-left entry divisible by q^n.  The
intersection of the whole chain is a rank-2 ring: the kernel of the exact
lower-left functional.  Three independent routes compute it:

* a closed-form basis, one of two shapes ({1, (1+j)/2} at primes where p is
  a q-adic square; {1, a*dn + i} up to basis change otherwise),
* the exact kernel of the lower-left functional written symbolically over a
  real quadratic field Q(theta),
* q-adic congruence kernels at increasing finite depths, which must descend,
  contain the closed form, and grow in index by exactly q per digit.

At primes where neither p nor -dn is a q-adic square the lower-left
functional only takes the quadratic shape after an auxiliary level N with
(N/q) = -1 is introduced; the chain is then computed inside the level-N
order and can be carried back to level 1 by the level isomorphism.

A family corollary: intersecting the chains of several primes cuts the ring
down to Z, whose only norm-one elements are 1 and -1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .errors import (
    CaseMismatchError,
    InvalidParametersError,
    PrecisionLossError,
    RamifiedPlaceError,
    SearchExhaustedError,
)
from .exact import ZLattice4, congruence_kernel, is_perfect_square, right_kernel
from .numth import (
    PadicNum,
    find_a,
    find_hashimoto_prime,
    hensel_sqrt,
    is_prime,
    is_square_unit,
    legendre,
    solve_norm_equation,
    valuation,
)
from .quat import (
    AlgebraParams,
    QuatElem,
    coefficient_lattice,
    coords_in_hashimoto,
    element_from_coords,
    hashimoto_basis,
    pretty,
)
from .report import Report

CHAIN_SQUARE = "square"
CHAIN_AT_P = "at_p"
CHAIN_DIRECT = "direct"
CHAIN_AUX = "aux"

DEFAULT_DEPTHS = (8, 10, 12)
DEFAULT_AUX_BOUND = 200

# Prime families whose chain rings are pairwise transverse under the generic
# witness convention.  Pairwise triviality is a property of a curated family,
# not of arbitrary prime sets: any two primes at which p is a square share
# the ring Z[(1+j)/2], so a family contains at most one of each shape.
TRANSVERSE_FAMILIES = {35: (3, 11, 13, 19), 6: (5, 7, 11, 13)}


@dataclass
class ChainBasis:
    """Rank-2 basis of the chain intersection at q.

    params is the order the basis lives in: level 1, except in the auxiliary
    case where it is the level used to reach the quadratic shape.
    """

    params: AlgebraParams
    q: int
    case: str
    basis: tuple
    aux_level: int | None = None
    oracle_depth: int | None = None
    stabilized: bool | None = None

    def lattice(self) -> ZLattice4:
        return coefficient_lattice(self.params, self.basis)

    def to_json(self) -> dict:
        out = {
            "q": self.q,
            "case": self.case,
            "level": self.params.level,
            "basis": [pretty(u) for u in self.basis],
            "basis_coords": [
                [str(c) for c in coords_in_hashimoto(u)] for u in self.basis
            ],
        }
        if self.aux_level is not None:
            out["aux_level"] = self.aux_level
        if self.oracle_depth is not None:
            out["oracle_depth"] = self.oracle_depth
        if self.stabilized is not None:
            out["stabilized"] = self.stabilized
        return out


def _level_one(delta: int, p: int | None, prime_bound: int) -> AlgebraParams:
    if delta == 1:
        raise CaseMismatchError(
            "chain intersections in the matrix algebra have rank 3; "
            "they are only quadratic rings over a division algebra (delta > 1)"
        )
    if p is None:
        p = find_hashimoto_prime(delta, 1, prime_bound)
    return AlgebraParams(delta, 1, p, find_a(delta, 1, p))


def _neg_dn_is_q_square(dn: int, q: int) -> bool:
    if q == 2:
        return (-dn) % 8 == 1
    return dn % q != 0 and legendre(-dn, q) == 1


def classify_chain(params: AlgebraParams, q: int) -> str:
    """Case label for the chain at q, built on the level-1 order."""
    if not isinstance(q, int) or not is_prime(q):
        raise InvalidParametersError(f"chain prime must be a rational prime: {q!r}")
    if params.delta % q == 0:
        raise RamifiedPlaceError(f"q={q} ramifies in the algebra; the chain degenerates")
    if q == params.p:
        return CHAIN_AT_P
    if is_square_unit(params.p, q):
        return CHAIN_SQUARE
    if _neg_dn_is_q_square(params.dn, q):
        return CHAIN_DIRECT
    return CHAIN_AUX


def _aux_level(params: AlgebraParams, q: int, bound: int = DEFAULT_AUX_BOUND) -> int:
    """Smallest admissible auxiliary level making -dn*N a q-adic square."""
    delta, p = params.delta, params.p
    for n in range(2, bound + 1):
        if gcd(n, delta) != 1:
            continue
        if q == 2:
            if (-delta * n) % 8 != 1:
                continue
        else:
            if n % q == 0 or legendre(n, q) != -1:
                continue
        ok = all(
            legendre(p, s) == 1
            for s in _odd_prime_factors(n)
        )
        if not ok:
            continue
        if n % 2 == 0 and p % 8 != 1:
            continue
        return n
    raise SearchExhaustedError(
        f"no auxiliary level <= {bound} for delta={delta}, p={p}, q={q}"
    )


def _odd_prime_factors(n: int):
    out = []
    m = n
    d = 3
    while m % 2 == 0:
        m //= 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 2
    if m > 1:
        out.append(m)
    return out


def _chain_vector(params: AlgebraParams) -> QuatElem:
    """The non-trivial closed-form generator -2*a*dn*e2 - 2*e3 + p*e4.

    Collapses to -(a*dn + i): the chain ring is Z[a*dn + i], a quadratic
    order of discriminant -4*dn.
    """
    e1, e2, e3, e4 = hashimoto_basis(params)
    return e2 * (-2 * params.a * params.dn) + e3 * (-2) + e4 * params.p


def chain_closed_form(
    delta: int,
    q: int,
    p: int | None = None,
    aux_bound: int = DEFAULT_AUX_BOUND,
    prime_bound: int = 100_000,
) -> ChainBasis:
    """Closed-form basis of the chain intersection at q."""
    params = _level_one(delta, p, prime_bound)
    case = classify_chain(params, q)
    e1, e2, _, _ = hashimoto_basis(params)
    if case == CHAIN_SQUARE:
        return ChainBasis(params, q, case, (e1, e2))
    if case in (CHAIN_AT_P, CHAIN_DIRECT):
        return ChainBasis(params, q, case, (e1, _chain_vector(params)))
    n_aux = _aux_level(params, q, bound=aux_bound)
    params_n = AlgebraParams(delta, n_aux, params.p, find_a(delta, n_aux, params.p))
    basis = (hashimoto_basis(params_n)[0], _chain_vector(params_n))
    return ChainBasis(params_n, q, case, basis, aux_level=n_aux)


# ---------------------------------------------------------------------------
# route two: the exact symbolic kernel of the lower-left functional


def _x_scan(params: AlgebraParams, q: int, prefer_y_zero: bool):
    """Pick the witness shape for the norm-form data at a non-square prime.

    Returns None to indicate the pure-root shape (x = sqrt(-dn), y = 0),
    available exactly when -dn is a q-adic square; otherwise the smallest
    x0 >= 0 making (x0^2 + dn)/p a q-adic unit square that is not a rational
    square (a rational value would collapse the quadratic field).

    At q = 2 with p = 5 mod 8 the generic shape never exists: (x0^2+dn)/p
    is 3 or 7 mod 8 for every x0 keeping it odd.  The pure-root shape is
    forced there, whatever the convention.
    """
    dn, p = params.dn, params.p
    if q == 2:
        if _neg_dn_is_q_square(dn, 2):
            return None
        raise CaseMismatchError("no quadratic witness at q=2 unless -dn = 1 mod 8")
    if prefer_y_zero and _neg_dn_is_q_square(dn, q):
        return None
    for x0 in range(0, 8 * q + 64):
        u = Fraction(x0 * x0 + dn, p)
        res = (u.numerator * pow(u.denominator, -1, q)) % q
        if res == 0 or legendre(res, q) != 1:
            continue
        if is_perfect_square(u.numerator) and is_perfect_square(u.denominator):
            continue
        return x0
    raise SearchExhaustedError(f"no norm-form witness residue at q={q}")


def _symbolic_ll(params: AlgebraParams, q: int, prefer_y_zero: bool):
    """Rational and sqrt parts of ll(e_i), plus the radicand of theta."""
    dn, p, a = params.dn, params.p, params.a
    half = Fraction(1, 2)
    if q == p:
        alpha = [Fraction(0), Fraction(p, 2), Fraction(0), Fraction(a * dn)]
        beta = [Fraction(0), Fraction(0), Fraction(p, 2), Fraction(1)]
        return alpha, beta, Fraction(-dn)
    if is_square_unit(p, q):
        alpha = [Fraction(0), Fraction(0), Fraction(-dn, 2), Fraction(0)]
        beta = [Fraction(0), Fraction(0), Fraction(dn, 2), Fraction(dn, p)]
        return alpha, beta, Fraction(p)
    x0 = _x_scan(params, q, prefer_y_zero)
    if x0 is None:
        alpha = [Fraction(0), half, Fraction(0), Fraction(a * dn, p)]
        beta = [Fraction(0), Fraction(0), -half, Fraction(-1, p)]
        return alpha, beta, Fraction(-dn)
    alpha = [Fraction(0), half, Fraction(-x0, 2), Fraction(a * dn - x0, p)]
    beta = [Fraction(0), Fraction(0), half, Fraction(0)]
    return alpha, beta, Fraction(x0 * x0 + dn, p)


def chain_kernel_exact(
    params: AlgebraParams, q: int, prefer_y_zero: bool = True
) -> ZLattice4:
    """Exact kernel of the lower-left functional as a rank-2 lattice.

    The functional takes values in Q(theta); its kernel is the simultaneous
    kernel of the rational and the theta components, computed over Z.
    """
    if params.delta % q == 0:
        raise RamifiedPlaceError(f"q={q} ramifies in the algebra")
    alpha, beta, theta_d = _symbolic_ll(params, q, prefer_y_zero)
    if theta_d > 0 and is_perfect_square(theta_d.numerator) and is_perfect_square(
        theta_d.denominator
    ):
        raise InvalidParametersError("degenerate witness: theta is rational")
    den = 1
    for c in alpha + beta:
        den = den * c.denominator // gcd(den, c.denominator)
    rows = [
        [int(c * den) for c in alpha],
        [int(c * den) for c in beta],
    ]
    kernel_rows = right_kernel(rows)
    return ZLattice4.from_rows(
        kernel_rows, ambient=("coords", params.delta, params.level, params.p)
    )


# ---------------------------------------------------------------------------
# route three: q-adic congruence kernels at finite depth


def _qadic_ll(params: AlgebraParams, q: int, k: int):
    """ll(e_i) as q-adic numbers, scaled by 2p to clear denominators."""
    dn, p, a = params.dn, params.p, params.a

    def pn(v):
        return PadicNum.from_rational(v, q, k)

    scale = pn(2 * p)
    if q == p:
        s = hensel_sqrt(Fraction(-dn), p, k)
        if (a * s.residue(1) + 1) % p != 0:
            s = -s
        coeffs = [pn(0), pn(Fraction(p, 2)), pn(Fraction(p, 2)) * s, pn(a * dn) + s]
    elif is_square_unit(p, q):
        omega = hensel_sqrt(p, q, k)
        coeffs = [
            pn(0),
            pn(0),
            pn(Fraction(dn, 2)) * (omega - pn(1)),
            pn(Fraction(dn, p)) * omega,
        ]
    else:
        x, y = solve_norm_equation(p, Fraction(-dn), q, k, prefer_y_zero=True)
        half = pn(Fraction(1, 2))
        coeffs = [pn(0), half, (y - x) * half, (pn(a * dn) - x) / pn(p)]
    return [c * scale for c in coeffs]


def chain_oracle(
    params: AlgebraParams, q: int, depth: int, k: int | None = None
) -> ZLattice4:
    """Depth-n congruence kernel {v : ll(v) = 0 mod q^depth} as a lattice.

    Needs at least depth + 5 digits of working precision so truncation in
    the Hensel witnesses cannot contaminate the asserted digits.
    """
    if depth < 1:
        raise InvalidParametersError(f"depth must be positive: {depth}")
    if k is None:
        k = depth + 6
    if k <= depth + 4:
        raise PrecisionLossError(f"oracle at depth {depth} needs precision > {depth + 4}")
    lam = valuation(2 * params.p, q)
    coeffs = _qadic_ll(params, q, k)
    modulus = q ** (depth + lam)
    residues = [c.residue(depth + lam) for c in coeffs]
    rows = congruence_kernel([residues], modulus)
    return ZLattice4.from_rows(
        rows, ambient=("coords", params.delta, params.level, params.p)
    )


def _is_sublattice(sub: ZLattice4, sup: ZLattice4) -> bool:
    return all(
        sup.contains([Fraction(x, sub.denom) for x in row]) for row in sub.rows
    )


def verify_chain(
    delta: int,
    q: int,
    p: int | None = None,
    depths: tuple = DEFAULT_DEPTHS,
    k: int | None = None,
    aux_bound: int = DEFAULT_AUX_BOUND,
    prime_bound: int = 100_000,
) -> tuple[ChainBasis, Report]:
    """Run all three routes and cross-check them.

    Returns the closed-form basis (annotated with the deepest oracle depth
    and the overall outcome) together with the detailed report.
    """
    cb = chain_closed_form(delta, q, p=p, aux_bound=aux_bound, prime_bound=prime_bound)
    params = cb.params
    report = Report()

    closed = cb.lattice()
    report.add("closed.rank", closed.rank == 2, "closed-form span has rank 2")

    ring_ok = True
    for u in cb.basis:
        for v in cb.basis:
            if not closed.contains(list(coords_in_hashimoto(u * v))):
                ring_ok = False
    report.add("closed.ring", ring_ok, "closed-form span is multiplicatively closed")

    symbolic = chain_kernel_exact(params, q, prefer_y_zero=True)
    report.add(
        "closed.symbolic_kernel",
        closed == symbolic,
        "closed form equals the exact kernel of the lower-left functional",
    )

    depths = tuple(sorted(depths))
    oracles = {}
    for d in depths:
        oracles[d] = chain_oracle(params, q, d, k=k)
        report.add(
            f"oracle.contains_closed.depth{d}",
            _is_sublattice(closed, oracles[d]),
            f"closed form inside the depth-{d} congruence kernel",
        )
    for d1, d2 in zip(depths, depths[1:]):
        report.add(
            f"oracle.descending.depth{d1}_{d2}",
            _is_sublattice(oracles[d2], oracles[d1]),
            "deeper kernels are smaller",
        )
        report.add(
            f"oracle.index_growth.depth{d1}_{d2}",
            oracles[d2].index_in(oracles[d1]) == q ** (d2 - d1),
            f"index grows by {q}^{d2 - d1}",
        )

    cb.oracle_depth = depths[-1]
    cb.stabilized = report.passed
    return cb, report


# ---------------------------------------------------------------------------
# several primes at once: transport to level 1 and intersect


def chain_lattice_level_one(
    delta: int,
    q: int,
    p: int | None = None,
    aux_bound: int = DEFAULT_AUX_BOUND,
    prime_bound: int = 100_000,
) -> ZLattice4:
    """The chain intersection at q as a lattice in level-1 coordinates.

    Uses the generic witness convention (smallest valid x0) at non-square
    primes, so that distinct primes pick out genuinely transverse quadratic
    subrings; auxiliary chains are carried back by the level isomorphism.
    """
    from .isomap import build_psi

    params = _level_one(delta, p, prime_bound)
    case = classify_chain(params, q)
    if case != CHAIN_AUX:
        return chain_kernel_exact(params, q, prefer_y_zero=False)
    n_aux = _aux_level(params, q, bound=aux_bound)
    params_n = AlgebraParams(delta, n_aux, params.p, find_a(delta, n_aux, params.p))
    lat_n = chain_kernel_exact(params_n, q, prefer_y_zero=False)
    psi = build_psi(delta, n_aux, 1, p=params.p)
    rows = []
    for row in lat_n.rows:
        u = element_from_coords(params_n, [Fraction(x, lat_n.denom) for x in row])
        rows.append(list(coords_in_hashimoto(psi.apply(u))))
    return ZLattice4.from_rows(rows, ambient=("coords", delta, 1, params.p))


def pairwise_intersections(
    delta: int,
    qs,
    p: int | None = None,
    aux_bound: int = DEFAULT_AUX_BOUND,
    prime_bound: int = 100_000,
) -> dict:
    """Intersections of the level-1 chain lattices for every pair of primes."""
    qs = sorted(set(qs))
    lats = {
        q: chain_lattice_level_one(delta, q, p=p, aux_bound=aux_bound, prime_bound=prime_bound)
        for q in qs
    }
    out = {}
    for i, q1 in enumerate(qs):
        for q2 in qs[i + 1 :]:
            out[(q1, q2)] = lats[q1].intersect(lats[q2])
    return out


def global_intersection(
    delta: int,
    qs,
    p: int | None = None,
    aux_bound: int = DEFAULT_AUX_BOUND,
    prime_bound: int = 100_000,
) -> ZLattice4:
    """Intersection of the level-1 chain lattices over all the given primes."""
    qs = sorted(set(qs))
    if not qs:
        raise InvalidParametersError("need at least one prime")
    acc = None
    for q in qs:
        lat = chain_lattice_level_one(delta, q, p=p, aux_bound=aux_bound, prime_bound=prime_bound)
        acc = lat if acc is None else acc.intersect(lat)
    return acc


def verify_chain_family(
    delta: int,
    qs,
    p: int | None = None,
    aux_bound: int = DEFAULT_AUX_BOUND,
    prime_bound: int = 100_000,
) -> Report:
    """Pairwise and global triviality of the chain family, plus the corollary.

    Every pairwise intersection and the global one must be exactly Z*1; the
    only norm-one elements of Z*1 are 1 and -1.
    """
    params = _level_one(delta, p, prime_bound)
    report = Report()
    unit = ZLattice4.from_rows(
        [[1, 0, 0, 0]], ambient=("coords", delta, 1, params.p)
    )
    pairs = pairwise_intersections(
        delta, qs, p=params.p, aux_bound=aux_bound, prime_bound=prime_bound
    )
    for (q1, q2), lat in sorted(pairs.items()):
        report.add(
            f"pairwise.{q1}_{q2}",
            lat == unit,
            "intersection of the two chain rings is Z*1",
        )
    glob = global_intersection(
        delta, qs, p=params.p, aux_bound=aux_bound, prime_bound=prime_bound
    )
    report.add("global.trivial", glob == unit, "intersection over all primes is Z*1")
    norm_one_ok = glob == unit
    if norm_one_ok:
        one = element_from_coords(params, [1, 0, 0, 0])
        norm_one_ok = one.reduced_norm() == 1 and (-one).reduced_norm() == 1
    report.add(
        "global.norm_one",
        norm_one_ok,
        "norm-one elements of the intersection are exactly 1 and -1",
    )
    return report
