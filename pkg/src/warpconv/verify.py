"""Named symbolic identity suite.

Each check is registered with a stable name so the CLI can run a selection
and emit one report entry per identity.  The negative-control switch flips
the sign of the commutator route inside the gauge cross-check only: a
deliberate wrong-convention injection that must leave additivity passing
while the curl comparison fails, confirming the suite actually has teeth.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .coords import CoordFunction
from .deform import (DeformationMatrix, DeformationSpec, QSpec,
                     check_additivity, deform_coordinate, deform_operator,
                     factorization_check, momentum_shift,
                     momentum_shift_via_commutators, rieffel_product)
from .gauge import extract_gauge_field, field_strength, jacobi_maxwell_report
from .models import (PRESETS, coulomb_potential, get_preset, guiding_center,
                     uncertainty_area_symbolic)
from .operators import OperatorExpr
from .scalars import QC, SymbolicScalar

CATALOG_GENERATORS = (
    ("Q=X", QSpec.coordinate),
    ("Q=X_r1", lambda: QSpec.radial_power(1)),
    ("Q=X_r3_2", lambda: QSpec.radial_power(Fraction(3, 2))),
    ("Q=X_r2", lambda: QSpec.radial_power(2)),
    ("Q=X_rho", QSpec.transverse_radial),
)

COEFFICIENT_EXPONENTS = (Fraction(-1), Fraction(0), Fraction(1),
                         Fraction(3, 2), Fraction(2), Fraction(3))


def _rand_skew(rng: random.Random) -> DeformationMatrix:
    vals = [Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(3)]
    return DeformationMatrix.axial(*vals) if rng.random() < 0.5 else (
        DeformationMatrix([
            [0, vals[0], vals[1]],
            [-vals[0], 0, vals[2]],
            [-vals[1], -vals[2], 0],
        ]))


def _half_over_m() -> SymbolicScalar:
    return SymbolicScalar.symbol("m", -1, Fraction(1, 2))


class Check:
    def __init__(self, name: str, passed: bool, detail: str = "",
                 residual: str = ""):
        self.name = name
        self.passed = bool(passed)
        self.detail = detail
        self.residual = residual

    def to_json_dict(self) -> dict:
        out = {"name": self.name, "passed": self.passed}
        if self.detail:
            out["detail"] = self.detail
        if self.residual:
            out["residual"] = self.residual
        return out


def _deformed_hamiltonian_closed_form(tag: str, make_q, seed: int) -> Check:
    """deform(H0) against (1/2m) sum_j Phat_j^2 with the shift rebuilt from
    engine commutators, i G = i (B Q)_k [Q_k, P_j]."""
    rng = random.Random(seed)
    spec = DeformationSpec(_rand_skew(rng), make_q())
    lhs = deform_operator(OperatorExpr.free_hamiltonian(), spec)
    shifts = momentum_shift_via_commutators(spec)
    rhs = OperatorExpr.zero()
    for j in (1, 2, 3):
        phat = OperatorExpr.momentum(j) + OperatorExpr.from_coord(shifts[j - 1])
        rhs = rhs + phat * phat
    rhs = rhs.scale(_half_over_m())
    ok = lhs.equals(rhs, seed=seed)
    return Check(f"deformed_hamiltonian::{tag}", ok)


def _deformed_momentum_closed_form(tag: str, make_q, seed: int) -> Check:
    rng = random.Random(seed)
    spec = DeformationSpec(_rand_skew(rng), make_q())
    shifts = momentum_shift_via_commutators(spec)
    ok = True
    for j in (1, 2, 3):
        lhs = deform_operator(OperatorExpr.momentum(j), spec)
        rhs = OperatorExpr.momentum(j) + OperatorExpr.from_coord(shifts[j - 1])
        ok = ok and lhs.equals(rhs, seed=seed + j)
    return Check(f"deformed_momentum::{tag}", ok)


def _deformed_coordinate_check(seed: int) -> Check:
    rng = random.Random(seed)
    theta = _rand_skew(rng)
    coords = deform_coordinate(theta)
    ok = True
    for j in range(3):
        expected = OperatorExpr.position(j + 1)
        for k in range(3):
            entry = theta.rows[j][k]
            if not entry.is_structurally_zero():
                expected = expected - OperatorExpr.momentum(k + 1).coord_multiply(entry)
        ok = ok and coords[j] == expected
    return Check("deformed_coordinate", ok)


def _factorization_checks(seed: int) -> list[Check]:
    out = []
    for tag, make_q in CATALOG_GENERATORS:
        rng = random.Random(seed + hash(tag) % 1000)
        spec = DeformationSpec(_rand_skew(rng), make_q())
        out.append(Check(f"factorization::{tag}",
                         factorization_check(spec, seed=seed)))
    return out


def _additivity_check(seed: int, cases: int) -> Check:
    rng = random.Random(seed)
    h0 = OperatorExpr.free_hamiltonian()
    failures = 0
    for n in range(cases):
        if n % 10 == 3:
            q = QSpec.radial_power(rng.choice((1, 2)))
        elif n % 10 == 7:
            q = QSpec.transverse_radial()
        else:
            q = QSpec.coordinate()
        s1 = DeformationSpec(_rand_skew(rng), q)
        s2 = DeformationSpec(_rand_skew(rng), q)
        if not check_additivity(h0, s1, s2, seed=seed + n):
            failures += 1
    return Check("additivity", failures == 0,
                 detail=f"{cases} random skew pairs, {failures} failures")


def _rieffel_checks(seed: int) -> list[Check]:
    out = []
    half = _half_over_m()
    for tag, make_q in CATALOG_GENERATORS:
        rng = random.Random(seed + len(tag))
        spec = DeformationSpec(_rand_skew(rng), make_q())
        total = OperatorExpr.zero()
        for k in (1, 2, 3):
            pk = OperatorExpr.momentum(k)
            total = total + rieffel_product(pk, pk, spec)
        plain = (OperatorExpr.momentum(1) * OperatorExpr.momentum(1)
                 + OperatorExpr.momentum(2) * OperatorExpr.momentum(2)
                 + OperatorExpr.momentum(3) * OperatorExpr.momentum(3))
        ok = total.equals(plain, seed=seed)
        # The deformed scalar product also reproduces the free Hamiltonian.
        ok = ok and total.scale(half).equals(OperatorExpr.free_hamiltonian(),
                                             seed=seed + 1)
        out.append(Check(f"rieffel_diagonal::{tag}", ok))
    return out


def _coefficient_checks(seed: int) -> list[Check]:
    """The radial-generator bracket coefficients a(n) = n^2 - 3n and
    n^2 - 2n + 3, recovered from engine anticommutators and products."""
    out = []
    for n in COEFFICIENT_EXPONENTS:
        q = QSpec.radial_power(n)
        a_n = n * n - 3 * n
        ok_a = True
        for k in (1, 2, 3):
            acc = OperatorExpr.zero()
            qk = OperatorExpr.from_coord(q.components[k - 1])
            for j in (1, 2, 3):
                pj = OperatorExpr.momentum(j)
                acc = acc + pj.anticommutator(pj.commutator(qk))
            coord = acc.coordinate_part()
            expected = (CoordFunction.x(k) * CoordFunction.r_power(-(n + 2))
                        ).scale(QC(-a_n))
            ok_a = ok_a and (coord - expected).is_zero(seed=seed + k)
        out.append(Check(f"coefficient_anticommutator::n={n}", ok_a,
                         detail=f"|a(n)| = |{a_n}|"))

        norm = n * n - 2 * n + 3
        acc = OperatorExpr.zero()
        for l in (1, 2, 3):
            ql = OperatorExpr.from_coord(q.components[l - 1])
            for j in (1, 2, 3):
                c = ql.commutator(OperatorExpr.momentum(j))
                acc = acc + c * c
        expected = OperatorExpr.from_coord(
            CoordFunction.r_power(-2 * n).scale(QC(-norm)))
        ok_b = acc.equals(expected, seed=seed + 17)
        out.append(Check(f"coefficient_gradient_norm::n={n}", ok_b,
                         detail=f"n^2-2n+3 = {norm}"))
    return out


def _model_checks(seed: int) -> list[Check]:
    out = []
    for name in sorted(PRESETS):
        preset = get_preset(name)
        ok = preset.matches_reference(seed=seed)
        out.append(Check(f"model::{name}", ok))
        if preset.linearized_reference is not None:
            out.append(Check(f"model_linearized::{name}",
                             preset.matches_linearized(seed=seed + 1)))
        h_def = preset.deformed()
        out.append(Check(f"hermitian::{name}",
                         h_def.is_hermitian(seed=seed + 2)))
    for kind in ("constant", "lense_thirring"):
        preset = get_preset(f"combined_{kind}")
        base = preset.base_hamiltonian()
        s1, s2 = preset.specs
        one_way = deform_operator(deform_operator(base, s1), s2)
        other = deform_operator(deform_operator(base, s2), s1)
        out.append(Check(f"order_independence::{kind}",
                         one_way.equals(other, seed=seed + 3)))
    return out


def _moyal_checks(seed: int, cases: int = 100) -> list[Check]:
    rng = random.Random(seed)
    failures = 0
    for n in range(cases):
        theta = _rand_skew(rng)
        coords = deform_coordinate(theta)
        for i in range(3):
            for j in range(3):
                comm = coords[i].commutator(coords[j])
                expected = OperatorExpr.from_coord(
                    theta.rows[i][j].scale(QC(0, Fraction(2))))
                if comm != expected:
                    failures += 1
    out = [Check("moyal_plane_random", failures == 0,
                 detail=f"[X_th_i, X_th_j] = 2 i theta_ij, {cases} matrices "
                        "(equals -2 i theta^ij in the raised-index display)")]

    bmat = DeformationMatrix.axial(
        SymbolicScalar(QC(Fraction(-1)), (("Omega", 1), ("m", 1))))
    coords, comms = guiding_center(bmat)
    from .deform import invert_transverse_block
    binv = invert_transverse_block(bmat, 1)
    ok = True
    for i in range(3):
        for j in range(3):
            expected = binv.rows[j][i].scale(QC(0, Fraction(1)))
            ok = ok and (comms[i][j] - expected).is_structurally_zero()
    out.append(Check("guiding_center_plane", ok,
                     detail="[Xg_i, Xg_j] = i (B^-1)_ji exactly"))

    area = uncertainty_area_symbolic()
    expected = SymbolicScalar(QC(Fraction(2)),
                              (("Omega", -1), ("hbar", 1), ("m", -1), ("pi", 1)))
    out.append(Check("uncertainty_area_symbolic",
                     area.coeff == expected.coeff and area.mono == expected.mono))
    return out


def _gauge_checks(seed: int, negative_control: bool = False) -> list[Check]:
    out = []
    for name in sorted(PRESETS):
        preset = get_preset(name)
        g = preset.coupling
        ok = True
        for spec in preset.specs:
            fs_comm = field_strength(spec, g)
            if negative_control:
                # Wrong-convention injection: divide by +ig instead of -ig.
                flipped = tuple(
                    tuple(-f for f in row) for row in fs_comm.rows)
                from .gauge import FieldStrength
                fs_comm = FieldStrength(flipped)
            fs_curl = extract_gauge_field(spec, g).curl()
            if not spec.matrix.is_zero():
                ok = ok and fs_comm.equivalent(fs_curl, seed=seed)
            else:
                ok = ok and fs_comm.is_zero(seed=seed)
        out.append(Check(f"gauge_cross_check::{name}", ok))

    from .gauge import bianchi_check
    for name in ("landau", "aharonov_bohm", "lense_thirring",
                 "gravito_constant"):
        preset = get_preset(name)
        ok = all(bianchi_check(spec, seed=seed) for spec in preset.specs)
        out.append(Check(f"bianchi::{name}", ok))

    ab = get_preset("aharonov_bohm")
    fs = field_strength(ab.specs[0], ab.coupling)
    out.append(Check("ab_field_strength_zero_off_axis", fs.is_zero(seed=seed)))

    for name, pot in (("landau", CoordFunction.zero()),
                      ("aharonov_bohm", CoordFunction.zero()),
                      ("zeeman", coulomb_potential())):
        preset = get_preset(name)
        rep = jacobi_maxwell_report(preset.specs[0], pot, preset.coupling,
                                    seed=seed)
        out.append(Check(f"jacobi_maxwell::{name}", rep["all_zero"]))

    landau = get_preset("landau")
    fs = field_strength(landau.specs[0], landau.coupling)
    from .deform import shifted_momentum
    p2 = shifted_momentum(landau.specs[0], 2)
    p3 = shifted_momentum(landau.specs[0], 3)
    noncomm = not p2.commutator(p3).equals(OperatorExpr.zero(), seed=seed)
    fnonzero = not fs[(2, 3)].is_zero(seed=seed)
    out.append(Check("noncommuting_iff_field", noncomm == fnonzero and fnonzero))

    rng = random.Random(seed)
    lam = Fraction(rng.randint(1, 9), rng.randint(1, 5))
    spec = DeformationSpec(_rand_skew(rng), QSpec.radial_power(2))
    scaled = DeformationSpec(spec.matrix.scale(QC(lam)), spec.generator)
    a1 = extract_gauge_field(spec, SymbolicScalar.symbol("e"))
    a2 = extract_gauge_field(scaled, SymbolicScalar.symbol("e"))
    ok = all((a2.components[i] - a1.components[i].scale(QC(lam))).is_zero(
        seed=seed + i) for i in range(3))
    out.append(Check("gauge_field_linearity", ok))
    return out


def run_suite(seed: int = 0, additivity_cases: int = 100,
              moyal_cases: int = 100, select: list[str] | None = None,
              negative_control: bool = False) -> dict:
    """Run the full identity suite (or a name-prefix selection of it)."""
    if select is not None and not select:
        return {"seed": seed, "negative_control": negative_control,
                "all_pass": True, "checks": []}
    checks: list[Check] = []
    for i, (tag, make_q) in enumerate(CATALOG_GENERATORS):
        checks.append(_deformed_hamiltonian_closed_form(tag, make_q, seed + i))
        checks.append(_deformed_momentum_closed_form(tag, make_q, seed + 10 + i))
    checks.append(_deformed_coordinate_check(seed + 20))
    checks.extend(_factorization_checks(seed + 30))
    checks.append(_additivity_check(seed + 40, additivity_cases))
    checks.extend(_rieffel_checks(seed + 50))
    checks.extend(_coefficient_checks(seed + 60))
    checks.extend(_model_checks(seed + 70))
    checks.extend(_moyal_checks(seed + 80, moyal_cases))
    checks.extend(_gauge_checks(seed + 90, negative_control=negative_control))

    if select is not None:
        if not select:
            checks = []
        else:
            checks = [c for c in checks
                      if any(c.name.startswith(s) for s in select)]
    return {
        "seed": seed,
        "negative_control": negative_control,
        "all_pass": all(c.passed for c in checks),
        "checks": [c.to_json_dict() for c in checks],
    }
