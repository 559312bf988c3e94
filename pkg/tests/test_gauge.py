from fractions import Fraction

import pytest

from warpconv.coords import CoordFunction
from warpconv.deform import DeformationMatrix, DeformationSpec, QSpec
from warpconv.errors import ZeroCouplingError
from warpconv.gauge import (bianchi_check, extract_gauge_field,
                            field_strength, jacobi_maxwell_report,
                            lorentz_force)
from warpconv.models import (aharonov_bohm, coulomb_potential, free,
                             get_preset, landau, lense_thirring,
                             symmetric_gauge_field, flux_line_field)
from warpconv.operators import OperatorExpr
from warpconv.scalars import QC, SymbolicScalar

F = Fraction
E = SymbolicScalar.symbol("e")


def test_extract_landau_symmetric_gauge():
    preset = landau()
    gf = extract_gauge_field(preset.specs[0], E)
    for got, expected in zip(gf.components, symmetric_gauge_field()):
        assert (got - expected).is_zero()


def test_extract_flux_line():
    preset = aharonov_bohm()
    gf = extract_gauge_field(preset.specs[0], E)
    for got, expected in zip(gf.components, flux_line_field()):
        assert (got - expected).is_zero()


def test_extract_lense_thirring_proportional_to_vortex():
    preset = lense_thirring()
    gf = extract_gauge_field(preset.specs[0], preset.coupling)
    # components proportional to epsilon_jkl x_k Omega_l / r^3
    om = SymbolicScalar.symbol("Omega")
    r3 = CoordFunction.r_power(-3)
    assert gf.components[0].is_structurally_zero()
    assert (gf.components[1] + (CoordFunction.x(3) * r3).scale(om)).is_zero()
    assert (gf.components[2] - (CoordFunction.x(2) * r3).scale(om)).is_zero()


def test_extract_zero_coupling_error():
    preset = landau()
    with pytest.raises(ZeroCouplingError):
        extract_gauge_field(preset.specs[0], SymbolicScalar.of(0))


def test_field_strength_landau_is_constant():
    preset = landau()
    fs = field_strength(preset.specs[0], E)
    assert fs.is_antisymmetric()
    assert (fs[(2, 3)] - CoordFunction.scalar(
        SymbolicScalar.symbol("B"))).is_zero()
    for ij in ((1, 2), (1, 3)):
        assert fs[ij].is_zero()


def test_field_strength_aharonov_bohm_vanishes_off_axis():
    preset = aharonov_bohm()
    fs = field_strength(preset.specs[0], E)
    assert fs.is_zero()


def test_field_strength_zero_spec():
    preset = free()
    fs = field_strength(preset.specs[0], E)
    assert fs.is_zero()


def test_curl_equals_commutator_route():
    for name in ("landau", "aharonov_bohm", "lense_thirring",
                 "gravito_constant"):
        preset = get_preset(name)
        for spec in preset.specs:
            fs = field_strength(spec, preset.coupling)
            curl = extract_gauge_field(spec, preset.coupling).curl()
            assert fs.equivalent(curl)


def test_field_strength_scales_linearly():
    preset = landau()
    spec = preset.specs[0]
    doubled = DeformationSpec(spec.matrix.scale(QC(F(2))), spec.generator)
    f1 = field_strength(spec, E)
    f2 = field_strength(doubled, E)
    assert (f2[(2, 3)] - f1[(2, 3)].scale(QC(F(2)))).is_zero()


def test_lorentz_force_landau_magnetic_only():
    preset = landau()
    res = lorentz_force(preset.specs[0], CoordFunction.zero(), E)
    assert res.identity_holds
    for d in res.field_divergence:
        assert d.is_zero()
    # no electric part: the commutator with H only involves momenta
    c1 = res.commutators[0]
    assert c1.equals(OperatorExpr.zero())  # field along x1: P1 commutes


def test_lorentz_force_coulomb():
    # zero deformation, phi = e^2/r: C_j = i g d_j phi exactly
    preset = free()
    phi = coulomb_potential()
    res = lorentz_force(preset.specs[0], phi, E)
    assert res.identity_holds
    ig = SymbolicScalar(QC(0, F(1))) * E
    for j in (1, 2, 3):
        expected = OperatorExpr.from_coord(phi.partial(j).scale(ig))
        assert res.commutators[j - 1].equals(expected)


def test_lorentz_force_zero_everything():
    preset = free()
    res = lorentz_force(preset.specs[0], CoordFunction.zero(), E)
    assert res.identity_holds
    for c in res.commutators:
        assert c.is_structurally_zero()


def test_bianchi_catalog():
    for name in ("landau", "lense_thirring", "aharonov_bohm"):
        preset = get_preset(name)
        for spec in preset.specs:
            assert bianchi_check(spec)


def test_jacobi_maxwell_reports_all_zero():
    cases = [
        ("landau", CoordFunction.zero()),
        ("aharonov_bohm", CoordFunction.zero()),
        ("free", coulomb_potential()),
    ]
    for name, pot in cases:
        preset = get_preset(name)
        rep = jacobi_maxwell_report(preset.specs[0], pot, preset.coupling)
        assert rep["static_fields"] is True
        assert rep["all_zero"] is True
        assert len(rep["identities"]) == 15
        for entry in rep["identities"]:
            assert entry["zero"] is True
            assert entry["residual"] == "0"


def test_noncommuting_momenta_iff_field():
    from warpconv.deform import shifted_momentum
    lan = landau()
    p2 = shifted_momentum(lan.specs[0], 2)
    p3 = shifted_momentum(lan.specs[0], 3)
    assert not p2.commutator(p3).equals(OperatorExpr.zero())
    ab = aharonov_bohm()
    q2 = shifted_momentum(ab.specs[0], 2)
    q3 = shifted_momentum(ab.specs[0], 3)
    assert q2.commutator(q3).equals(OperatorExpr.zero())
