"""The two copies of the level-Nq order sitting inside the level-N order.

For a prime q coprime to the discriminant, the Eichler order of level Nq
embeds in the level-N order R in exactly two ways up to the local building
structure: one copy deepens the lower-left congruence of the 2x2 model at q,
the other creates an upper-right congruence.  Both copies are given by closed
basis formulas in the standard order basis e1..e4, with integer coefficients
read off q-adic residues of the splitting data:

* q a non-square witness prime: residues of the norm-form solution (x, y),
* q with p a q-adic square: residues of (p -/+ sqrt(p))/2,
* q = p itself: the residue of sqrt(-dn) mod p for one copy and mod p^2 for
  the other, where the deeper lift is what makes the second basis integral.

verify_degeneracy replays, for each copy: membership in R, the local
congruence at q, the determinant and index certificates, multiplicative
closure, the reduced discriminant dn*q, agreement with an independently
computed congruence-kernel lattice, and the index q^2 of the intersection of
the two copies.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    CaseMismatchError,
    InvalidParametersError,
    PrecisionLossError,
    RamifiedPlaceError,
)
from .exact import ZLattice4, congruence_kernel, reduced_discriminant
from .numth import PadicNum, is_prime, is_square_unit, valuation
from .quat import (
    AlgebraParams,
    coefficient_lattice,
    coords_in_hashimoto,
    hashimoto_basis,
    pretty,
)
from .report import Report
from .split import LocalSplitting, build_splitting

# Degeneracy case labels (a strict subset of the splitting cases).
DEG_NONSQUARE = "nonsquare"
DEG_SQUARE = "square"
DEG_AT_P = "at_p"


@dataclass(frozen=True)
class DegeneracyConstants:
    """The integer residues entering the closed basis formulas."""

    case: str
    q: int
    values: dict

    def to_json(self) -> dict:
        return {"case": self.case, "q": self.q, **{k: int(v) for k, v in self.values.items()}}


@dataclass
class DegeneracyPair:
    """Bases f and g of the two level-Nq copies inside the level-N order."""

    params: AlgebraParams
    q: int
    case: str
    constants: DegeneracyConstants
    f: tuple
    g: tuple
    splitting: LocalSplitting

    @property
    def f_coords(self) -> list[list[Fraction]]:
        return [list(coords_in_hashimoto(u)) for u in self.f]

    @property
    def g_coords(self) -> list[list[Fraction]]:
        return [list(coords_in_hashimoto(u)) for u in self.g]

    def f_lattice(self) -> ZLattice4:
        return coefficient_lattice(self.params, self.f)

    def g_lattice(self) -> ZLattice4:
        return coefficient_lattice(self.params, self.g)

    def to_json(self) -> dict:
        from .exact import det_frac

        return {
            "q": self.q,
            "case": self.case,
            "f": [pretty(u) for u in self.f],
            "g": [pretty(u) for u in self.g],
            "f_coords": [[str(c) for c in row] for row in self.f_coords],
            "g_coords": [[str(c) for c in row] for row in self.g_coords],
            "constants": self.constants.to_json(),
            "det_f": str(det_frac(self.f_coords)),
            "det_g": str(det_frac(self.g_coords)),
        }


def classify_degeneracy(params: AlgebraParams, q: int) -> str:
    """Case label for the degeneracy at q, rejecting impossible primes.

    Ramified primes carry no level-Nq order at all; q = 2 with p = 5 mod 8
    has no splitting model to read residues from.
    """
    if not isinstance(q, int) or not is_prime(q):
        raise InvalidParametersError(f"degeneracy prime must be a rational prime: {q!r}")
    if params.delta % q == 0:
        raise RamifiedPlaceError(
            f"q={q} divides the discriminant {params.delta}; no level-Nq order exists"
        )
    if params.delta == 1:
        return DEG_SQUARE
    if q == params.p:
        return DEG_AT_P
    if is_square_unit(params.p, q):
        return DEG_SQUARE
    if q % 2 == 1:
        return DEG_NONSQUARE
    raise CaseMismatchError(
        f"no residue data at q=2 for p={params.p} = 5 mod 8 with odd delta={params.delta}"
    )


def degeneracy_bases(
    params: AlgebraParams,
    q: int,
    k: int = 20,
    prefer_y_zero: bool = False,
) -> DegeneracyPair:
    """Construct the two level-Nq bases inside the level-N order.

    k is the q-adic working precision for the underlying splitting; the basis
    coefficients themselves are exact integers.
    """
    case = classify_degeneracy(params, q)
    if k < 8:
        raise PrecisionLossError(f"precision too small to read residues reliably: {k}")
    splitting = build_splitting(params, q, k=k, prefer_y_zero=prefer_y_zero)
    e1, e2, e3, e4 = hashimoto_basis(params)
    dn = params.dn
    a = params.a
    p = params.p

    if case == DEG_NONSQUARE:
        x = splitting.data["x"]
        y = splitting.data["y"]
        c1 = (y - x).residue(1)
        c2 = pow(p, -1, q)
        c3 = x.residue(1)
        consts = DegeneracyConstants(case, q, {"c1": c1, "c2": c2, "c3": c3})
        f = (e1, e2 * -c1 + e3, e2 * (-2 * c2 * (a * dn - c3)) + e4, e2 * q)
        g = (e1, e2 * c1 + e3, e2 * (-2 * c2 * (a * dn + c3)) + e4, e2 * q)
        return DegeneracyPair(params, q, case, consts, f, g, splitting)

    if case == DEG_SQUARE:
        if params.delta == 1:
            c, cp = 0, 1 % q
        else:
            omega = splitting.data["omega"]
            two = PadicNum.from_rational(2, q, k)
            p_adic = PadicNum.from_rational(p, q, k)
            c = ((p_adic - omega) / two).residue(1)
            cp = ((p_adic + omega) / two).residue(1)
        consts = DegeneracyConstants(case, q, {"c": c, "c_prime": cp})
        f = (e1, e2, e3 + e4 * -c, e4 * q)
        g = (e1, e2, e3 + e4 * -cp, e4 * q)
        return DegeneracyPair(params, q, case, consts, f, g, splitting)

    # q = p: the copy with the upper-right congruence needs sqrt(-dn) mod p^2,
    # one digit deeper than the lower-left copy.
    s = splitting.data["s"]
    c4 = s.residue(1)
    c4_lift = s.residue(2)
    b_inv = pow(2 * (a * dn + c4), -1, p)
    a_co = (1 - 2 * b_inv * (a * dn + c4)) // p
    consts = DegeneracyConstants(
        case, q, {"c4": c4, "c4_lift": c4_lift, "A": a_co, "B": b_inv}
    )
    f = (
        e1,
        e2 * -c4 + e3,
        e2 * (-2 * (a * dn + c4)) + e4 * p,
        (e2 * a_co + e4 * b_inv) * p,
    )
    g = (
        e1,
        e2 * c4 + e3,
        e2 * Fraction(-2 * (a * dn - c4_lift), p) + e4,
        e2 * p,
    )
    return DegeneracyPair(params, q, case, consts, f, g, splitting)


def _residue_mod(value, q: int, m: int) -> int:
    """Canonical residue in [0, q^m) of a q-integral coefficient."""
    if isinstance(value, PadicNum):
        return value.residue(m)
    value = Fraction(value)
    mod = q**m
    if value.denominator % q == 0:
        raise PrecisionLossError(f"{value} is not {q}-integral")
    return (value.numerator * pow(value.denominator, -1, mod)) % mod


def _side_kernel(pair: DegeneracyPair, side: str) -> ZLattice4:
    """Independent lattice of e-coordinate vectors meeting the q-congruence.

    Reads the relevant matrix entry of each basis image, reduces to integer
    residues, and solves the congruence with generic lattice machinery; no
    degeneracy formula enters.
    """
    params = pair.params
    q = pair.q
    s = pair.splitting
    m = 1 + (valuation(params.level, q) if params.level % q == 0 else 0) if side == "f" else 1
    basis = hashimoto_basis(params)
    entries = [s.lower_left(e) if side == "f" else s.upper_right(e) for e in basis]
    residues = [_residue_mod(v, q, m) for v in entries]
    rows = congruence_kernel([residues], q**m)
    return ZLattice4.from_rows(rows, ambient=("coords", params.delta, params.level, params.p))


def verify_degeneracy(pair: DegeneracyPair, check_level: int | None = None) -> Report:
    """Replay every certificate of the two embedded copies."""
    from .exact import det_frac
    from .quat import order_lattice

    params = pair.params
    q = pair.q
    s = pair.splitting
    report = Report()
    if check_level is None:
        check_level = max(1, s.precision - 6)

    r_lat = order_lattice(params)
    identity = ZLattice4.from_rows(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
        ambient=("coords", params.delta, params.level, params.p),
    )
    expected_disc = params.dn * q

    for side, basis in (("f", pair.f), ("g", pair.g)):
        coords = [list(coords_in_hashimoto(u)) for u in basis]
        lat = coefficient_lattice(params, basis)

        in_order = all(r_lat.contains(list(u.coefficients())) for u in basis)
        report.add(f"membership.{side}.order", in_order, "all four lie in the level-N order")

        for idx, u in enumerate(basis, start=1):
            img = s.embed(u)
            if side == "f":
                ok, why = s.matrix_in_shape(img, check_level, extra_ll=1)
            else:
                ok, why = s.matrix_in_shape(img, check_level)
                if ok and not s.entry_val_at_least(img.b, 1):
                    ok, why = False, "upper-right entry not divisible by q"
            report.add(
                f"membership.{side}.e{idx}",
                ok,
                why or f"image satisfies the level-Nq congruence at {q}",
            )

        det = det_frac(coords)
        report.add(
            f"determinant.{side}",
            abs(det) == q,
            f"|det| = {abs(det)}, expected {q}",
        )
        report.add(
            f"index.{side}",
            lat.index_in(identity) == q,
            f"index in the level-N order = {q}",
        )

        closed = True
        for u in basis:
            for v in basis:
                w = u * v
                if not lat.contains(list(coords_in_hashimoto(w))):
                    closed = False
        report.add(
            f"closure.{side}",
            closed,
            "all 16 pairwise products stay in the span",
        )

        report.add(
            f"discriminant.{side}",
            reduced_discriminant(basis) == expected_disc,
            f"reduced discriminant = {expected_disc}",
        )

        report.add(
            f"kernel.{side}",
            lat == _side_kernel(pair, side),
            "basis span = independently solved congruence kernel",
        )

    inter = pair.f_lattice().intersect(pair.g_lattice())
    report.add(
        "intersection.index",
        inter.index_in(identity) == q * q,
        f"index of the intersection of the two copies = {q}^2",
    )
    return report
