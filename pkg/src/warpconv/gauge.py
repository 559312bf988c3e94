"""Gauge structure induced by deformation.

A deformation shifts each momentum by a coordinate function S_j; writing
S_j = g A_j identifies a gauge field A with coupling g.  The commutator of
two shifted momenta is then -i g F_ij with F the curl of A, the commutator
with the shifted Hamiltonian produces the Lorentz force, and the Jacobi
identity yields the homogeneous (source-free) field equations.  All fields
here are static coordinate functions, so time-derivative terms vanish
identically; reports state this restriction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .coords import CoordFunction
from .deform import DeformationSpec, deform_operator, momentum_shift, shifted_momentum
from .errors import ZeroCouplingError
from .operators import OperatorExpr, require_coordinate_only
from .scalars import QC, SymbolicScalar

_I = QC(0, Fraction(1))
_NEG_I = QC(0, Fraction(-1))


@dataclass(frozen=True)
class GaugeField:
    """Vector potential A_r with its coupling g, so that S_r = g A_r."""

    components: tuple[CoordFunction, CoordFunction, CoordFunction]
    coupling: SymbolicScalar

    def curl(self) -> "FieldStrength":
        """F_ij = dA_j/dx_i - dA_i/dx_j, independent of any commutator."""
        a = self.components
        rows = []
        for i in (1, 2, 3):
            row = []
            for j in (1, 2, 3):
                row.append(a[j - 1].partial(i) - a[i - 1].partial(j))
            rows.append(tuple(row))
        return FieldStrength(tuple(rows))

    def evaluate_float(self, point, constants) -> tuple[float, float, float]:
        vals = []
        for comp in self.components:
            v = comp.evaluate_float(point, constants)
            vals.append(v.real)
        return tuple(vals)


@dataclass(frozen=True)
class FieldStrength:
    """Antisymmetric 3x3 matrix of coordinate functions."""

    rows: tuple

    def __getitem__(self, ij: tuple[int, int]) -> CoordFunction:
        i, j = ij
        return self.rows[i - 1][j - 1]

    def is_antisymmetric(self) -> bool:
        for i in range(3):
            for j in range(3):
                s = self.rows[i][j] + self.rows[j][i]
                if not s.is_structurally_zero():
                    return False
        return True

    def axial_vector(self) -> tuple[CoordFunction, CoordFunction, CoordFunction]:
        """b_k with F_ij = epsilon_ijk b_k."""
        return (self.rows[1][2], self.rows[2][0], self.rows[0][1])

    def equivalent(self, other: "FieldStrength", seed: int = 0) -> bool:
        for i in range(3):
            for j in range(3):
                if not (self.rows[i][j] - other.rows[i][j]).is_zero(
                        seed=seed + 7 * i + j):
                    return False
        return True

    def is_zero(self, seed: int = 0) -> bool:
        return all(f.is_zero(seed=seed + 3 * i + j)
                   for i, row in enumerate(self.rows)
                   for j, f in enumerate(row))


def extract_gauge_field(spec: DeformationSpec,
                        coupling: SymbolicScalar) -> GaugeField:
    """A_r = S_r / g where S is the momentum shift of the deformation."""
    if coupling.is_zero():
        raise ZeroCouplingError("gauge field extraction needs a nonzero coupling")
    inv = coupling.inverse()
    comps = tuple(s.scale(inv) for s in momentum_shift(spec))
    return GaugeField(comps, coupling)


def field_strength(spec: DeformationSpec,
                   coupling: SymbolicScalar | None = None) -> FieldStrength:
    """F_ij from the commutators of the shifted momenta, divided by -i g.

    The commutator must close on a pure coordinate function; a momentum
    remainder would mean the normal-ordering engine is broken and raises
    InternalInconsistencyError.
    """
    if coupling is None:
        coupling = SymbolicScalar.of(1)
    if coupling.is_zero():
        raise ZeroCouplingError("field strength needs a nonzero coupling")
    phat = [shifted_momentum(spec, j) for j in (1, 2, 3)]
    norm = coupling.inverse()
    rows = []
    for i in range(3):
        row = []
        for j in range(3):
            comm = phat[i].commutator(phat[j])
            f = require_coordinate_only(comm, f"[P{i+1}^def, P{j+1}^def]")
            # divide by -i g:  f / (-i g) = f * i / g
            row.append(f.scale(_I).scale(norm))
        rows.append(tuple(row))
    return FieldStrength(tuple(rows))


@dataclass(frozen=True)
class LorentzForceResult:
    """Commutators [H_def + g*phi, P_j^def] and their closed-form identity."""

    commutators: tuple[OperatorExpr, OperatorExpr, OperatorExpr]
    identity_holds: bool
    field_divergence: tuple[CoordFunction, CoordFunction, CoordFunction]


def lorentz_force(spec: DeformationSpec, potential: CoordFunction,
                  coupling: SymbolicScalar, seed: int = 0) -> LorentzForceResult:
    """Equations of motion for the deformed system.

    Computes C_j = [H_def + g*phi, P_j^def] and asserts the closed form

        C_j = i g (dphi/dx_j) - (i g / 2m) sum_k (Phat_k F_kj + F_kj Phat_k),

    i.e. electric force plus the magnetic part at the symmetric operator
    ordering the commutator itself produces.  The divergence sum_k d_k F_kj
    (zero for every catalog field) is returned so callers can rewrite the
    magnetic part in the fully right-ordered form.
    """
    h_def = deform_operator(OperatorExpr.free_hamiltonian(), spec)
    h_tot = h_def + OperatorExpr.from_coord(potential.scale(coupling))
    phat = [shifted_momentum(spec, j) for j in (1, 2, 3)]
    fs = field_strength(spec, coupling)

    ig = SymbolicScalar(_I) * coupling
    half_over_m = SymbolicScalar.symbol("m", -1, Fraction(1, 2))
    comms = []
    ok = True
    for j in (1, 2, 3):
        c = h_tot.commutator(phat[j - 1])
        rhs = OperatorExpr.from_coord(potential.partial(j).scale(ig))
        for k in (1, 2, 3):
            fkj = OperatorExpr.from_coord(fs[(k, j)])
            sym = phat[k - 1] * fkj + fkj * phat[k - 1]
            rhs = rhs - sym.scale(ig * half_over_m)
        ok = ok and c.equals(rhs, seed=seed + j)
        comms.append(c)
    div = tuple(
        sum((fs[(k, j)].partial(k) for k in (1, 2, 3)), CoordFunction.zero())
        for j in (1, 2, 3))
    return LorentzForceResult(tuple(comms), ok, div)


def bianchi_check(spec: DeformationSpec, seed: int = 0) -> bool:
    """d_k F_ij + d_i F_jk + d_j F_ki = 0, checked symbolically."""
    fs = field_strength(spec)
    for k in (1, 2, 3):
        for i in (1, 2, 3):
            for j in (1, 2, 3):
                total = (fs[(i, j)].partial(k) + fs[(j, k)].partial(i)
                         + fs[(k, i)].partial(j))
                if not total.is_zero(seed=seed + 9 * k + 3 * i + j):
                    return False
    return True


def jacobi_maxwell_report(spec: DeformationSpec, potential: CoordFunction,
                          coupling: SymbolicScalar, seed: int = 0) -> dict:
    """Jacobi identities of the deformed momenta and Hamiltonian.

    Every combination must normalize to exactly zero; for static fields the
    electric identity reduces to the vanishing curl of the gradient of phi.
    Returns a JSON-ready report with one entry per identity.
    """
    h_def = deform_operator(OperatorExpr.free_hamiltonian(), spec)
    h_tot = h_def + OperatorExpr.from_coord(potential.scale(coupling))
    phat = [shifted_momentum(spec, j) for j in (1, 2, 3)]

    identities = []

    def record(name: str, expr: OperatorExpr):
        zero = expr.is_structurally_zero() or expr.equals(
            OperatorExpr.zero(), seed=seed + len(identities))
        identities.append({
            "identity": name,
            "zero": bool(zero),
            "residual": str(expr) if not zero else "0",
        })

    pairs = [(1, 2), (1, 3), (2, 3)]
    for k in (1, 2, 3):
        for (i, j) in pairs:
            expr = (phat[k - 1].commutator(phat[i - 1].commutator(phat[j - 1]))
                    + phat[i - 1].commutator(phat[j - 1].commutator(phat[k - 1]))
                    + phat[j - 1].commutator(phat[k - 1].commutator(phat[i - 1])))
            record(f"jacobi_spatial_P{k}_P{i}_P{j}", expr)
    for (i, j) in pairs:
        expr = (h_tot.commutator(phat[i - 1].commutator(phat[j - 1]))
                + phat[i - 1].commutator(phat[j - 1].commutator(h_tot))
                + phat[j - 1].commutator(h_tot.commutator(phat[i - 1])))
        record(f"jacobi_time_H_P{i}_P{j}", expr)

    # Static electric field E = -grad(phi): curl E = 0 pairwise.
    e_field = [-potential.partial(j) for j in (1, 2, 3)]
    for (i, j) in pairs:
        resid = e_field[j - 1].partial(i) - e_field[i - 1].partial(j)
        zero = resid.is_zero(seed=seed + 50 + i + j)
        identities.append({
            "identity": f"curl_E_{i}{j}",
            "zero": bool(zero),
            "residual": str(CoordFunction.zero() if zero else resid),
        })

    return {
        "static_fields": True,
        "all_zero": all(e["zero"] for e in identities),
        "identities": identities,
    }
