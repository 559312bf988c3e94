"""Closed-form warped-convolution deformation of operator expressions.

A deformation is specified by a real skew-symmetric 3x3 matrix B with
symbolic scalar entries and a generator Q(X), a commuting triple of
coordinate functions.  On the momentum-degree <= 2 class the deformation
acts by the in-place substitution

    P_j  ->  P_j + S_j,      S_j = -(B Q)_k dQ_k/dx_j,

with coordinate-only parts unchanged; the shift S_j is again a coordinate
function, so the result stays in the algebra.  The truncated
Baker-Campbell-Hausdorff expansion behind this rule closes after the first
commutator because the generator components commute.  Momentum degree >= 3
has no closed form here and is rejected.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .coords import CoordFunction, ScalarLike, _as_scalar
from .errors import (SingularMatrixError, UnsupportedDegreeError,
                     UnsupportedOperandError)
from .operators import OperatorExpr, P_ZERO
from .scalars import QC, SymbolicScalar

_EPS = ((0, 1, 2), (1, 2, 0), (2, 0, 1))  # even permutations of (0,1,2)


def _as_entry(v) -> CoordFunction:
    if isinstance(v, CoordFunction):
        f = v
    else:
        f = CoordFunction.scalar(_as_scalar(v))
    for (a, p, q, _) in f.terms:
        if any(a) or p != 0 or q != 0:
            raise ValueError("deformation-matrix entries must be scalars")
    return f


class DeformationMatrix:
    """Real skew-symmetric 3x3 matrix of symbolic scalars."""

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence]):
        self.rows = tuple(tuple(_as_entry(v) for v in row) for row in rows)
        if len(self.rows) != 3 or any(len(r) != 3 for r in self.rows):
            raise ValueError("expected a 3x3 matrix")

    @staticmethod
    def zero() -> "DeformationMatrix":
        z = CoordFunction.zero()
        return DeformationMatrix([[z, z, z], [z, z, z], [z, z, z]])

    @staticmethod
    def axial(b1=0, b2=0, b3=0) -> "DeformationMatrix":
        """B_ij = epsilon_ijk b^k for an axial vector (b1, b2, b3)."""
        b = [_as_entry(b1), _as_entry(b2), _as_entry(b3)]
        z = CoordFunction.zero()
        return DeformationMatrix([
            [z, b[2], -b[1]],
            [-b[2], z, b[0]],
            [b[1], -b[0], z],
        ])

    def axial_part(self) -> tuple[CoordFunction, CoordFunction, CoordFunction]:
        """Recover b^k from B_ij = epsilon_ijk b^k (valid for skew B)."""
        return (self.rows[1][2], self.rows[2][0], self.rows[0][1])

    def is_skew_symmetric(self) -> bool:
        for i in range(3):
            for j in range(3):
                if not (self.rows[i][j] + self.rows[j][i]).is_structurally_zero():
                    return False
        return True

    def __add__(self, other: "DeformationMatrix") -> "DeformationMatrix":
        return DeformationMatrix([
            [self.rows[i][j] + other.rows[i][j] for j in range(3)]
            for i in range(3)
        ])

    def __neg__(self) -> "DeformationMatrix":
        return DeformationMatrix([[-v for v in row] for row in self.rows])

    def scale(self, s: ScalarLike) -> "DeformationMatrix":
        return DeformationMatrix([[v.scale(s) for v in row]
                                  for row in self.rows])

    def apply(self, vec: Sequence[CoordFunction]) -> list[CoordFunction]:
        """(B v)_i = sum_j B_ij v_j for a triple of coordinate functions."""
        return [
            self.rows[i][0] * vec[0] + self.rows[i][1] * vec[1]
            + self.rows[i][2] * vec[2]
            for i in range(3)
        ]

    def is_zero(self) -> bool:
        return all(v.is_structurally_zero() for row in self.rows for v in row)

    def __eq__(self, other) -> bool:
        return isinstance(other, DeformationMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __str__(self) -> str:
        return "[" + "; ".join(
            ", ".join(str(v) for v in row) for row in self.rows) + "]"


@dataclass(frozen=True)
class QSpec:
    """Deformation generator Q(X): a commuting triple of coordinate functions."""

    components: tuple[CoordFunction, CoordFunction, CoordFunction]
    tag: str = "custom"
    param: Fraction | None = None

    @staticmethod
    def coordinate() -> "QSpec":
        return QSpec(tuple(CoordFunction.x(j) for j in (1, 2, 3)), "coordinate")

    @staticmethod
    def radial_power(n) -> "QSpec":
        """Q_j = x_j / r^n."""
        n = Fraction(n)
        comps = tuple(
            CoordFunction.x(j) * CoordFunction.r_power(-n) for j in (1, 2, 3))
        return QSpec(comps, "radial-power", n)

    @staticmethod
    def transverse_radial() -> "QSpec":
        """Q_j = x_j / rho."""
        comps = tuple(
            CoordFunction.x(j) * CoordFunction.rho_power(-1) for j in (1, 2, 3))
        return QSpec(comps, "transverse-radial")

    def __eq__(self, other) -> bool:
        return (isinstance(other, QSpec)
                and self.components == other.components)

    def __hash__(self):
        return hash(self.components)


@dataclass(frozen=True)
class DeformationSpec:
    """Matrix-generator pair defining one warped-convolution deformation."""

    matrix: DeformationMatrix
    generator: QSpec = field(default_factory=QSpec.coordinate)

    def __post_init__(self):
        if not self.matrix.is_skew_symmetric():
            raise ValueError("deformation matrix must be skew-symmetric")


def momentum_shift(spec: DeformationSpec) -> list[CoordFunction]:
    """The shift S_j added to P_j by the deformation: S_j = -(BQ)_k dQ_k/dx_j."""
    comps = spec.generator.components
    bq = spec.matrix.apply(comps)
    out = []
    for j in (1, 2, 3):
        s = CoordFunction.zero()
        for k in range(3):
            s = s + bq[k] * comps[k].partial(j)
        out.append(-s)
    return out


def momentum_shift_via_commutators(spec: DeformationSpec) -> list[CoordFunction]:
    """Same shift computed as i (B Q)_k [Q_k, P_j] through the commutator engine.

    Independent of the derivative shortcut in ``momentum_shift``; used by the
    verification suite to cross-check the two routes.
    """
    comps = spec.generator.components
    bq = spec.matrix.apply(comps)
    out = []
    for j in (1, 2, 3):
        acc = OperatorExpr.zero()
        for k in range(3):
            comm = OperatorExpr.from_coord(comps[k]).commutator(
                OperatorExpr.momentum(j))
            acc = acc + comm.coord_multiply(bq[k])
        acc = acc.scale(QC(0, Fraction(1)))  # times i
        from .operators import require_coordinate_only
        out.append(require_coordinate_only(acc, "momentum shift"))
    return out


def shifted_momentum(spec: DeformationSpec, axis: int) -> OperatorExpr:
    """Deformed momentum component P_axis + S_axis."""
    s = momentum_shift(spec)[axis - 1]
    return OperatorExpr.momentum(axis) + OperatorExpr.from_coord(s)


def deform_operator(a: OperatorExpr, spec: DeformationSpec) -> OperatorExpr:
    """Deform a momentum polynomial of total degree <= 2.

    Each momentum factor is replaced in place, preserving the normal-form
    factor order P1 before P2 before P3; coordinate-only parts commute with
    the generator and pass through unchanged.
    """
    deg = a.momentum_degree()
    if deg > 2:
        raise UnsupportedDegreeError(
            f"no closed-form deformation for momentum degree {deg} > 2")
    if spec.matrix.is_zero():
        return a
    shifts = momentum_shift(spec)
    phat = [OperatorExpr.momentum(j) + OperatorExpr.from_coord(shifts[j - 1])
            for j in (1, 2, 3)]
    out = OperatorExpr.zero()
    for pm, f in a.terms.items():
        piece = OperatorExpr.from_coord(f)
        for j in (1, 2, 3):
            for _ in range(pm[j - 1]):
                piece = piece * phat[j - 1]
        out = out + piece
    return out


def deform_sequence(a: OperatorExpr,
                    specs: Sequence[DeformationSpec]) -> OperatorExpr:
    out = a
    for spec in specs:
        out = deform_operator(out, spec)
    return out


def deform_coordinate(theta: DeformationMatrix) -> tuple[OperatorExpr, ...]:
    """Deformed coordinates X_j - (theta P)_j for a skew matrix theta."""
    if not theta.is_skew_symmetric():
        raise ValueError("theta must be skew-symmetric")
    out = []
    for j in range(3):
        expr = OperatorExpr.position(j + 1)
        for k in range(3):
            entry = theta.rows[j][k]
            if entry.is_structurally_zero():
                continue
            expr = expr - OperatorExpr.momentum(k + 1).coord_multiply(entry)
        out.append(expr)
    return tuple(out)


def rieffel_product(a: OperatorExpr, b: OperatorExpr,
                    spec: DeformationSpec) -> OperatorExpr:
    """Deformed product on the momentum-linear class.

    For momentum factors the evaluated oscillatory integral leaves
    P_k x P_j = P_k P_j - i B_ls dQ_l/dx_k dQ_s/dx_j; coordinate-function
    coefficients pass through untouched, extended bilinearly term by term.
    """
    if a.momentum_degree() > 1 or b.momentum_degree() > 1:
        raise UnsupportedOperandError(
            "Rieffel product is only evaluated on momentum-linear operands")
    comps = spec.generator.components
    grad = [[comps[l].partial(j + 1) for j in range(3)] for l in range(3)]
    out = OperatorExpr.zero()
    for alpha, f in a.terms.items():
        for beta, g in b.terms.items():
            fg = f * g
            pm = (alpha[0] + beta[0], alpha[1] + beta[1], alpha[2] + beta[2])
            out = out + OperatorExpr({pm: fg})
            if sum(alpha) == 1 and sum(beta) == 1:
                k = alpha.index(1)
                j = beta.index(1)
                corr = CoordFunction.zero()
                for l in range(3):
                    for s in range(3):
                        entry = spec.matrix.rows[l][s]
                        if entry.is_structurally_zero():
                            continue
                        corr = corr + entry * grad[l][k] * grad[s][j]
                out = out - OperatorExpr.from_coord(
                    (fg * corr).scale(QC(0, Fraction(1))))
    return out


def check_additivity(a: OperatorExpr, spec1: DeformationSpec,
                     spec2: DeformationSpec, seed: int = 0) -> bool:
    """Deforming twice equals deforming once with the summed matrix.

    With a shared generator the comparison is against B1 + B2; with two
    different (necessarily commuting) generators the two application orders
    are compared instead.
    """
    twice = deform_operator(deform_operator(a, spec1), spec2)
    if spec1.generator == spec2.generator:
        summed = DeformationSpec(spec1.matrix + spec2.matrix, spec1.generator)
        return twice.equals(deform_operator(a, summed), seed=seed)
    swapped = deform_operator(deform_operator(a, spec2), spec1)
    return twice.equals(swapped, seed=seed)


def factorization_check(spec: DeformationSpec, seed: int = 0) -> bool:
    """Deformed free Hamiltonian equals the squared deformed momenta / 2m."""
    h0 = OperatorExpr.free_hamiltonian()
    lhs = deform_operator(h0, spec)
    rhs = OperatorExpr.zero()
    for j in (1, 2, 3):
        pj = deform_operator(OperatorExpr.momentum(j), spec)
        rhs = rhs + pj * pj
    rhs = rhs.scale(SymbolicScalar.symbol("m", -1, Fraction(1, 2)))
    return lhs.equals(rhs, seed=seed)


def invert_transverse_block(matrix: DeformationMatrix,
                            axis: int) -> DeformationMatrix:
    """Inverse of the 2x2 block transverse to ``axis`` (zero elsewhere).

    For an axial matrix B = epsilon_ijk b^k along ``axis`` the block is
    [[0, b], [-b, 0]] with inverse [[0, -1/b], [1/b, 0]].
    """
    others = [k for k in range(3) if k != axis - 1]
    i, j = others
    b = matrix.rows[i][j]
    if b.is_structurally_zero():
        raise SingularMatrixError("transverse block is singular")
    if len(b.terms) != 1:
        raise SingularMatrixError(
            "transverse block entry is a sum; no exact scalar inverse")
    ((a, p, q, mono), coeff), = b.terms.items()
    from .scalars import mono_inv
    inv_entry = CoordFunction(
        {((0, 0, 0), Fraction(0), Fraction(0), mono_inv(mono)):
         QC(Fraction(1)) / coeff})
    z = CoordFunction.zero()
    rows = [[z, z, z], [z, z, z], [z, z, z]]
    rows[i][j] = -inv_entry
    rows[j][i] = inv_entry
    return DeformationMatrix(rows)
