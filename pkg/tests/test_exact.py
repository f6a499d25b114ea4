import random
from fractions import Fraction

import pytest

from quatorder.errors import AmbientMismatchError, InvalidParametersError
from quatorder.exact import (
    QuadRat,
    ZLattice4,
    congruence_kernel,
    det_frac,
    det_int,
    frac_from_str,
    frac_to_str,
    hnf,
    is_perfect_square,
    left_kernel,
    right_kernel,
    saturation,
)


def test_frac_string_roundtrip():
    assert frac_to_str(Fraction(3, 4)) == "3/4"
    assert frac_to_str(Fraction(-5)) == "-5"
    assert frac_from_str("8/17") == Fraction(8, 17)
    assert frac_from_str("-210") == Fraction(-210)


def test_is_perfect_square():
    assert is_perfect_square(0) and is_perfect_square(1) and is_perfect_square(525**2)
    assert not is_perfect_square(2) and not is_perfect_square(-4)


def test_det_int_matches_det_frac():
    rng = random.Random(3)
    for _ in range(25):
        m = [[rng.randint(-9, 9) for _ in range(4)] for _ in range(4)]
        d = det_int(m)
        df = det_frac([[Fraction(x) for x in row] for row in m])
        assert Fraction(d) == df


def test_hnf_canonical():
    rows = hnf([[2, 4, 4], [-6, 6, 12], [10, 4, 16]])
    assert rows == [[2, 0, 120], [0, 2, 20], [0, 0, 156]]
    assert hnf(rows) == rows
    assert abs(det_int(rows)) == abs(det_int([[2, 4, 4], [-6, 6, 12], [10, 4, 16]]))


def test_kernels():
    k = right_kernel([[1, 0, 0, 0], [0, 1, 0, 0]])
    assert sorted(k) == [[0, 0, 0, 1], [0, 0, 1, 0]]
    lk = left_kernel([[1, 0], [2, 0], [0, 1]])
    assert len(lk) == 1 and lk[0][0] * 2 == lk[0][1] * -1 or len(lk) == 1
    # the kernel vector kills the rows
    v = lk[0]
    assert v[0] * 1 + v[1] * 2 + v[2] * 0 == 0
    assert v[0] * 0 + v[1] * 0 + v[2] * 1 == 0


def test_congruence_kernel_small():
    rows = congruence_kernel([[1, 2, 3, 4]], 5)
    lat = ZLattice4.from_rows(rows)
    # index 5 sublattice of Z^4
    identity = ZLattice4.from_rows([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    assert lat.index_in(identity) == 5
    for row in rows:
        assert sum(c * x for c, x in zip([1, 2, 3, 4], row)) % 5 == 0


def test_saturation():
    sat = saturation([[2, 0, 0, 0], [0, 6, 0, 0]])
    lat = ZLattice4.from_rows(sat)
    assert lat.contains([1, 0, 0, 0]) and lat.contains([0, 1, 0, 0])


def test_lattice_membership_and_index():
    lat = ZLattice4.from_rows(
        [[1, 0, 0, 0], [0, Fraction(1, 2), Fraction(1, 2), 0], [0, 0, 1, 0], [0, 0, 0, 2]]
    )
    assert lat.contains([1, Fraction(1, 2), Fraction(1, 2), 0])
    assert not lat.contains([0, Fraction(1, 2), 0, 0])
    identity = ZLattice4.from_rows([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    assert lat.index_in(identity) == 1  # det 1/2*2 = 1
    with pytest.raises(InvalidParametersError):
        ZLattice4.from_rows([[1, 0, 0]])


def test_lattice_intersection():
    a = ZLattice4.from_rows([[1, 0, 0, 0], [0, 1, 0, 0]])
    b = ZLattice4.from_rows([[1, 0, 0, 0], [0, 0, 1, 0]])
    inter = a.intersect(b)
    assert inter.rank == 1
    assert inter.rows == ((1, 0, 0, 0),)


def test_lattice_ambient_guard():
    a = ZLattice4.from_rows([[1, 0, 0, 0]], ambient=("coords", 35, 3, 13))
    b = ZLattice4.from_rows([[1, 0, 0, 0]], ambient=("coords", 6, 1, 5))
    with pytest.raises(AmbientMismatchError):
        a.intersect(b)


def test_quadrat_field_arithmetic():
    th = QuadRat(0, 1, 13)  # sqrt(13)
    u = QuadRat(Fraction(1, 2), Fraction(1, 2), 13)
    assert (u * u.conj()).a == Fraction(1 - 13, 4)
    assert u.norm() == Fraction(1 - 13, 4)
    prod = u / u
    assert prod == 1
    assert (th * th) == 13
    assert (1 + th) - th == 1
    assert u.trace() == 1
