import random
from fractions import Fraction

import pytest

from warpconv.coords import CoordFunction
from warpconv.deform import (DeformationMatrix, DeformationSpec, QSpec,
                             check_additivity, deform_coordinate,
                             deform_operator, factorization_check,
                             invert_transverse_block, momentum_shift,
                             momentum_shift_via_commutators, rieffel_product)
from warpconv.errors import (SingularMatrixError, UnsupportedDegreeError,
                             UnsupportedOperandError)
from warpconv.operators import OperatorExpr
from warpconv.parsing import parse
from warpconv.scalars import QC, SymbolicScalar

F = Fraction


def axial(b1=0, b2=0, b3=0):
    return DeformationMatrix.axial(b1, b2, b3)


def test_matrix_skew_validation():
    assert axial(1, 2, 3).is_skew_symmetric()
    with pytest.raises(ValueError):
        DeformationSpec(DeformationMatrix([[1, 0, 0], [0, 0, 0], [0, 0, 0]]),
                        QSpec.coordinate())
    with pytest.raises(ValueError):
        DeformationMatrix([[0, CoordFunction.x(1), 0],
                           [-CoordFunction.x(1), 0, 0], [0, 0, 0]])


def test_axial_round_trip():
    m = axial(F(1, 2), -2, 3)
    b = m.axial_part()
    assert b[0] == CoordFunction.scalar(F(1, 2))
    assert b[1] == CoordFunction.scalar(-2)
    assert b[2] == CoordFunction.scalar(3)


def test_momentum_shift_matches_commutator_route():
    rng = random.Random(2)
    for q in (QSpec.coordinate(), QSpec.radial_power(2),
              QSpec.radial_power(F(3, 2)), QSpec.transverse_radial()):
        vals = [F(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(3)]
        spec = DeformationSpec(axial(*vals), q)
        fast = momentum_shift(spec)
        slow = momentum_shift_via_commutators(spec)
        for a, b in zip(fast, slow):
            assert (a - b).is_zero()


def test_zero_matrix_is_identity_deformation():
    spec = DeformationSpec(DeformationMatrix.zero(), QSpec.radial_power(1))
    a = parse("X1*P1*P2 + e^2/r")
    assert deform_operator(a, spec) == a


def test_coordinate_generator_constant_field():
    # Q = X, axial b along x1: P_2 -> P_2 - b x3, P_3 -> P_3 + b x2
    spec = DeformationSpec(axial(F(1, 3)), QSpec.coordinate())
    s = momentum_shift(spec)
    assert s[0].is_structurally_zero()
    assert s[1] == CoordFunction.x(3).scale(F(-1, 3))
    assert s[2] == CoordFunction.x(2).scale(F(1, 3))


def test_transverse_generator_vortex_field():
    # Q = X/rho: shift is -(Bx)_j / rho^2
    b = F(2)
    spec = DeformationSpec(axial(b), QSpec.transverse_radial())
    s = momentum_shift(spec)
    rho2 = CoordFunction.rho_power(-2)
    assert s[0].is_structurally_zero()
    assert (s[1] + (CoordFunction.x(3) * rho2).scale(b)).is_zero()
    assert (s[2] - (CoordFunction.x(2) * rho2).scale(b)).is_zero()


def test_radial_generator_shift():
    # Q = X/r^(3/2): shift is -(Bx)_j / r^3
    spec = DeformationSpec(axial(1), QSpec.radial_power(F(3, 2)))
    s = momentum_shift(spec)
    r3 = CoordFunction.r_power(-3)
    assert (s[1] + CoordFunction.x(3) * r3).is_zero()
    assert (s[2] - CoordFunction.x(2) * r3).is_zero()


def test_deform_free_hamiltonian_expands():
    spec = DeformationSpec(axial(F(1, 2)), QSpec.coordinate())
    h = deform_operator(OperatorExpr.free_hamiltonian(), spec)
    s = momentum_shift(spec)
    expected = OperatorExpr.zero()
    for j in (1, 2, 3):
        f = OperatorExpr.momentum(j) + OperatorExpr.from_coord(s[j - 1])
        expected = expected + f * f
    expected = expected.scale(SymbolicScalar.symbol("m", -1, F(1, 2)))
    assert h == expected


def test_coordinate_part_passes_through():
    spec = DeformationSpec(axial(1), QSpec.coordinate())
    pot = parse("e^2/r")
    h = deform_operator(OperatorExpr.free_hamiltonian() + pot, spec)
    h0 = deform_operator(OperatorExpr.free_hamiltonian(), spec)
    assert h == h0 + pot


def test_degree_three_rejected():
    spec = DeformationSpec(axial(1), QSpec.coordinate())
    with pytest.raises(UnsupportedDegreeError):
        deform_operator(parse("P1*P1*P1"), spec)


def test_deform_coordinate_examples():
    assert deform_coordinate(DeformationMatrix.zero()) == (
        OperatorExpr.position(1), OperatorExpr.position(2),
        OperatorExpr.position(3))
    # theta_23 = t: X2 - t P3, X3 + t P2, X1 unchanged
    t = F(5, 7)
    theta = axial(t)  # axial along x1 puts t in the (2,3) slot
    x = deform_coordinate(theta)
    assert x[0] == OperatorExpr.position(1)
    assert x[1] == OperatorExpr.position(2) - OperatorExpr.momentum(3).scale(t)
    assert x[2] == OperatorExpr.position(3) + OperatorExpr.momentum(2).scale(t)


def test_rieffel_diagonal_sum_undeformed():
    for q in (QSpec.coordinate(), QSpec.radial_power(2),
              QSpec.transverse_radial()):
        spec = DeformationSpec(axial(F(1, 2), F(-1, 3), 1), q)
        total = OperatorExpr.zero()
        for k in (1, 2, 3):
            pk = OperatorExpr.momentum(k)
            total = total + rieffel_product(pk, pk, spec)
        assert total == parse("P1*P1 + P2*P2 + P3*P3")


def test_rieffel_coordinate_functions_undeformed():
    spec = DeformationSpec(axial(1), QSpec.radial_power(1))
    f = parse("X1*r^-1")
    g = parse("X2")
    assert rieffel_product(f, g, spec) == f * g


def test_rieffel_off_diagonal_constant_correction():
    # P2 x P3 with B_23 = b and Q = X: P2 P3 - i b
    b = F(3, 4)
    spec = DeformationSpec(axial(b), QSpec.coordinate())
    got = rieffel_product(OperatorExpr.momentum(2), OperatorExpr.momentum(3),
                          spec)
    expected = parse("P2*P3") - OperatorExpr.scalar(QC(0, b))
    assert got == expected


def test_rieffel_rejects_quadratic_operands():
    spec = DeformationSpec(axial(1), QSpec.coordinate())
    with pytest.raises(UnsupportedOperandError):
        rieffel_product(parse("P1*P1"), parse("P2"), spec)


def test_additivity_same_generator():
    rng = random.Random(9)
    h0 = OperatorExpr.free_hamiltonian()
    for q in (QSpec.coordinate(), QSpec.radial_power(2),
              QSpec.transverse_radial()):
        for k in range(5):
            m1 = axial(*[F(rng.randint(-4, 4), rng.randint(1, 3))
                         for _ in range(3)])
            m2 = axial(*[F(rng.randint(-4, 4), rng.randint(1, 3))
                         for _ in range(3)])
            assert check_additivity(h0, DeformationSpec(m1, q),
                                    DeformationSpec(m2, q), seed=k)


def test_additivity_zero_second_spec():
    h0 = OperatorExpr.free_hamiltonian()
    s1 = DeformationSpec(axial(1), QSpec.coordinate())
    s2 = DeformationSpec(DeformationMatrix.zero(), QSpec.coordinate())
    assert check_additivity(h0, s1, s2)


def test_order_independence_different_generators():
    h0 = OperatorExpr.free_hamiltonian()
    s1 = DeformationSpec(axial(F(1, 2)), QSpec.coordinate())
    s2 = DeformationSpec(axial(F(2, 3)), QSpec.radial_power(F(3, 2)))
    assert check_additivity(h0, s1, s2)


def test_factorization_catalog():
    assert factorization_check(
        DeformationSpec(DeformationMatrix.zero(), QSpec.coordinate()))
    assert factorization_check(
        DeformationSpec(axial(F(1, 2)), QSpec.coordinate()))
    assert factorization_check(
        DeformationSpec(axial(2), QSpec.transverse_radial()))


def test_invert_transverse_block():
    b = SymbolicScalar.symbol("e", 1, F(1, 2))
    m = DeformationMatrix.axial(b)
    inv = invert_transverse_block(m, 1)
    prod_entry = m.rows[1][2] * inv.rows[2][1]
    assert prod_entry == CoordFunction.one()
    with pytest.raises(SingularMatrixError):
        invert_transverse_block(DeformationMatrix.zero(), 1)


def test_hermiticity_of_deformed_hamiltonian():
    for q in (QSpec.coordinate(), QSpec.radial_power(F(3, 2)),
              QSpec.transverse_radial()):
        spec = DeformationSpec(axial(F(1, 2), F(1, 3), F(-2)), q)
        h = deform_operator(OperatorExpr.free_hamiltonian(), spec)
        assert h.is_hermitian()
