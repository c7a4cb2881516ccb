"""Exact quaternion arithmetic against the 4x4 real matrix representation."""
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import hamilton_matrix, quat_mul_basis, rand_quat, seeded
from qres.qcore import CRat, Quat

I = Quat(CRat(0, 1), CRat(0))
J = Quat(CRat(0), CRat(1))
K = Quat(CRat(0), CRat(0, 1))
ONE = Quat(CRat(1), CRat(0))

fractions_st = st.fractions(min_value=-9, max_value=9, max_denominator=5)
crat_st = st.builds(CRat, fractions_st, fractions_st)
quat_st = st.builds(Quat, crat_st, crat_st)


def test_basis_table():
    assert I * I == -ONE
    assert J * J == -ONE
    assert K * K == -ONE
    assert I * J == K
    assert J * K == I
    assert K * I == J
    assert J * I == -K


def test_j_moves_conjugation_across():
    rng = seeded(1)
    for _ in range(20):
        w = CRat(Fraction(rng.randrange(-9, 10), rng.randrange(1, 5)),
                 Fraction(rng.randrange(-9, 10), rng.randrange(1, 5)))
        left = J * Quat(w, CRat(0))
        right = Quat(w.conjugate(), CRat(0)) * J
        assert left == right


def test_product_matches_hamilton_basis_formula():
    rng = seeded(2)
    for _ in range(40):
        q, p = rand_quat(rng), rand_quat(rng)
        got = (q * p).basis_coeffs()
        want = quat_mul_basis(q.basis_coeffs(), p.basis_coeffs())
        assert got == tuple(want)


def test_product_matches_matrix_representation():
    rng = seeded(3)
    for _ in range(25):
        q, p = rand_quat(rng), rand_quat(rng)
        vec = np.array([float(x) for x in p.basis_coeffs()])
        want = hamilton_matrix(q) @ vec
        got = np.array([float(x) for x in (q * p).basis_coeffs()])
        assert np.allclose(got, want, atol=1e-12)


def test_matrix_determinant_is_modulus_sq_squared():
    rng = seeded(4)
    for _ in range(15):
        q = rand_quat(rng)
        det = np.linalg.det(hamilton_matrix(q))
        m = float(q.modulus_sq())
        assert det == pytest.approx(m * m, rel=1e-9)


def test_conjugation_transposes_the_matrix():
    rng = seeded(5)
    for _ in range(15):
        q = rand_quat(rng)
        assert np.array_equal(hamilton_matrix(q.conj()), hamilton_matrix(q).T)


@settings(max_examples=60, deadline=None)
@given(quat_st, quat_st, quat_st)
def test_associativity_exact(a, b, c):
    assert (a * b) * c == a * (b * c)


@settings(max_examples=60, deadline=None)
@given(quat_st, quat_st)
def test_modulus_multiplicative_exact(a, b):
    assert (a * b).modulus_sq() == a.modulus_sq() * b.modulus_sq()


@settings(max_examples=60, deadline=None)
@given(quat_st, quat_st)
def test_conj_antihomomorphism(a, b):
    assert (a * b).conj() == b.conj() * a.conj()


@settings(max_examples=60, deadline=None)
@given(quat_st)
def test_inverse_both_sides(q):
    if q.modulus_sq() == 0:
        return
    assert q * q.inv() == ONE
    assert q.inv() * q == ONE


@settings(max_examples=40, deadline=None)
@given(quat_st, quat_st)
def test_division_undoes_multiplication(a, b):
    if b.modulus_sq() == 0:
        return
    assert (a / b) * b == a


def test_from_basis_round_trip():
    q = Quat.from_basis(Fraction(1), Fraction(-2), Fraction(3, 2), Fraction(0))
    assert q.basis_coeffs() == (Fraction(1), Fraction(-2), Fraction(3, 2),
                                Fraction(0))
    assert q.z1 == CRat(Fraction(1), Fraction(-2))
    assert q.z2 == CRat(Fraction(3, 2), Fraction(0))


def test_exactness_tracking():
    assert Quat(CRat(1), CRat(2)).is_exact
    assert not Quat(1.0 + 0j, 0j).is_exact
    mixed = Quat(CRat(1), CRat(0)) * Quat(0.5 + 0j, 0j)
    assert not mixed.is_exact


def test_numeric_promotion_matches_exact():
    rng = seeded(6)
    for _ in range(10):
        q, p = rand_quat(rng), rand_quat(rng)
        exact = q * p
        approx = q.to_numeric() * p.to_numeric()
        assert complex(approx.z1) == pytest.approx(complex(exact.z1), abs=1e-12)
        assert complex(approx.z2) == pytest.approx(complex(exact.z2), abs=1e-12)


def test_norm_and_modulus_consistency():
    q = Quat(3.0 + 0j, 4.0 + 0j)
    assert q.norm() == pytest.approx(5.0)
    assert float(Quat(CRat(3), CRat(4)).modulus_sq()) == 25.0


def test_crat_field_operations_exact():
    a = CRat(Fraction(1, 2), Fraction(-3, 4))
    b = CRat(Fraction(2), Fraction(1, 3))
    assert (a + b) - b == a
    assert (a * b) / b == a
    assert a * a.conjugate() == CRat(a.re * a.re + a.im * a.im)
    with pytest.raises(ZeroDivisionError):
        a / CRat(0)


def test_crat_matches_python_complex():
    rng = seeded(7)
    for _ in range(20):
        a = CRat(Fraction(rng.randrange(-9, 10), rng.randrange(1, 5)),
                 Fraction(rng.randrange(-9, 10), rng.randrange(1, 5)))
        b = CRat(Fraction(rng.randrange(-9, 10), rng.randrange(1, 5)),
                 Fraction(rng.randrange(-9, 10), rng.randrange(1, 5)))
        za, zb = complex(a), complex(b)
        assert complex(a * b) == pytest.approx(za * zb, abs=1e-12)
        assert complex(a + b) == pytest.approx(za + zb, abs=1e-12)
