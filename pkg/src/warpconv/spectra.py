"""Grid verification of deformed Hamiltonians.

The physical spectra of interest are transverse: for a field along x1 the
level structure lives in the (x2, x3) plane, so the Hamiltonian is
discretized in the p1 = 0 sector on a Dirichlet box with the grid offset by
half a cell (no node ever hits r = 0 or rho = 0).  First-derivative terms
use the symmetrized central-difference stencil, which keeps the matrix
hermitian to machine precision.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
import scipy.linalg
import scipy.sparse
import scipy.sparse.linalg

from .coords import CoordFunction
from .errors import (NonConvergenceError, SingularLoopError,
                     UnsupportedOperandError)
from .gauge import GaugeField
from .models import ModelPreset

_DENSE_LIMIT = 4096  # unknowns below which the dense solver is used


@dataclass(frozen=True)
class GridSpec:
    """Transverse Dirichlet box: extent L, N points per axis."""

    extent: float
    points: int
    plane_axes: tuple[int, int] = (2, 3)
    boundary: str = "dirichlet"

    def __post_init__(self):
        if self.extent <= 0:
            raise ValueError("grid extent must be positive")
        if self.points < 2:
            raise ValueError("need at least 2 points per axis")
        if self.boundary != "dirichlet":
            raise ValueError("only Dirichlet walls are implemented")

    @property
    def spacing(self) -> float:
        # Interior-node Dirichlet grid: walls at +-L/2 are one spacing
        # beyond the outermost nodes, so the effective box length is
        # exactly L.  For even N the nodes sit at half-integer multiples
        # of the spacing and never hit r = 0 or rho = 0.
        return self.extent / (self.points + 1)

    def nodes(self) -> np.ndarray:
        h = self.spacing
        return -self.extent / 2.0 + (np.arange(self.points) + 1) * h

    def metadata(self) -> dict:
        return {"extent": self.extent, "points": self.points,
                "plane_axes": list(self.plane_axes), "boundary": self.boundary}


@dataclass
class SpectrumResult:
    """Ascending eigenvalues with residual certificates and grid metadata."""

    eigenvalues: list[float]
    residuals: list[float]
    grid: dict
    warnings: list[str] = field(default_factory=list)
    seed: int = 0

    @property
    def count(self) -> int:
        return len(self.eigenvalues)

    def to_json_dict(self) -> dict:
        return {
            "eigenvalues": [float(v) for v in self.eigenvalues],
            "residuals": [float(v) for v in self.residuals],
            "count": self.count,
            "grid": self.grid,
            "warnings": list(self.warnings),
            "seed": self.seed,
        }

    def to_csv(self) -> str:
        lines = ["index,eigenvalue,residual"]
        for i, (ev, res) in enumerate(zip(self.eigenvalues, self.residuals)):
            lines.append(f"{i},{ev!r},{res!r}")
        return "\n".join(lines) + "\n"


def _bind_constants(constants: dict | None) -> dict:
    out = {"pi": math.pi}
    if constants:
        out.update({k: float(v) for k, v in constants.items()})
    return out


def _plane_profile(f: CoordFunction, grid: GridSpec, constants: dict,
                   what: str) -> np.ndarray:
    """Sample a coordinate function on the x1 = 0 plane of the grid."""
    xs = grid.nodes()
    n = grid.points
    out = np.empty((n, n), dtype=float)
    for i2, x2 in enumerate(xs):
        for i3, x3 in enumerate(xs):
            v = f.evaluate_float((0.0, x2, x3), constants)
            if abs(v.imag) > 1e-12 * (1.0 + abs(v.real)):
                raise UnsupportedOperandError(
                    f"{what} is not real on the grid: {v}")
            out[i2, i3] = v.real
    return out


def _require_transverse(shift: list[CoordFunction]):
    """The p1 = 0 sector needs shifts independent of x1 (no x1 power, no r power)."""
    for j, s in enumerate(shift, start=1):
        for (a, p, _, _) in s.terms:
            if a[0] != 0 or p != 0:
                raise UnsupportedOperandError(
                    f"momentum shift S_{j} depends on x1; this preset has no "
                    "transverse-plane reduction")


def discretize(preset: ModelPreset, grid: GridSpec,
               constants: dict) -> tuple[scipy.sparse.csr_matrix, dict]:
    """Sparse hermitian matrix of (1/2m)
    [(P2+S2)^2 + (P3+S3)^2 + S1^2] + potential on the transverse grid.

    Returns (matrix, info); info carries warnings (coarse grid, magnetic
    length under 4 spacings) and the hermiticity defect.
    """
    consts = _bind_constants(constants)
    if "m" not in consts:
        from .errors import UnboundConstantError
        raise UnboundConstantError("mass constant 'm' must be bound")
    mass = consts["m"]
    shift = preset.shift_functions()
    _require_transverse(shift)

    n = grid.points
    h = grid.spacing
    warnings: list[str] = []
    if n < 16:
        warnings.append(f"grid-too-coarse: N={n} < 16")

    s1 = _plane_profile(shift[0], grid, consts, "S_1")
    s2 = _plane_profile(shift[1], grid, consts, "S_2")
    s3 = _plane_profile(shift[2], grid, consts, "S_3")

    vpot = np.zeros((n, n))
    if preset.potential is not None:
        vpot = _plane_profile(preset.potential, grid, consts, "potential")

    # Effective field strength at the box center for the coarseness check.
    probe = (0.0, 0.25 * h, 0.25 * h)
    f23 = (shift[2].partial(2) - shift[1].partial(3)).evaluate_float(
        probe, consts).real
    if f23 != 0.0:
        ell = 1.0 / math.sqrt(abs(f23))
        if ell < 4 * h:
            warnings.append(
                f"grid-too-coarse: magnetic length {ell:.3g} < 4 spacings")

    size = n * n
    diag = (4.0 / (2.0 * mass * h * h)) * np.ones((n, n))
    diag += (s1 ** 2 + s2 ** 2 + s3 ** 2) / (2.0 * mass) + vpot

    rows, cols, vals = [], [], []
    idx = np.arange(size).reshape(n, n)

    rows.append(idx.ravel())
    cols.append(idx.ravel())
    vals.append(diag.ravel().astype(complex))

    kin = -1.0 / (2.0 * mass * h * h)

    # Axis 2 hops (rows of the (i2, i3) layout).
    a, b = idx[:-1, :].ravel(), idx[1:, :].ravel()
    savg = (s2[:-1, :] + s2[1:, :]).ravel() / 2.0
    hop = kin + (-1j / (2.0 * mass)) * savg / h
    rows.append(a), cols.append(b), vals.append(hop)
    rows.append(b), cols.append(a), vals.append(np.conj(hop))

    # Axis 3 hops.
    a, b = idx[:, :-1].ravel(), idx[:, 1:].ravel()
    savg = (s3[:, :-1] + s3[:, 1:]).ravel() / 2.0
    hop = kin + (-1j / (2.0 * mass)) * savg / h
    rows.append(a), cols.append(b), vals.append(hop)
    rows.append(b), cols.append(a), vals.append(np.conj(hop))

    mat = scipy.sparse.coo_matrix(
        (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
        shape=(size, size)).tocsr()

    defect = abs(mat - mat.getH()).max()
    info = {
        "warnings": warnings,
        "hermiticity_defect": float(defect),
        "grid": grid.metadata(),
        "effective_field": float(f23),
        "mass": mass,
    }
    return mat, info


def eigenvalues(matrix: scipy.sparse.spmatrix, k: int, info: dict | None = None,
                seed: int = 0, residual_tol: float = 1e-8) -> SpectrumResult:
    """k smallest eigenvalues with residual certificates.

    Dense solver below 4096 unknowns, shift-invert Lanczos above; the
    Lanczos start vector is seeded, so results are reproducible.
    """
    if not 1 <= k <= 64:
        raise ValueError("k must be between 1 and 64")
    size = matrix.shape[0]
    if k >= size - 1:
        raise ValueError("k must be smaller than the matrix dimension - 1")
    if size < _DENSE_LIMIT:
        dense = matrix.toarray()
        vals, vecs = scipy.linalg.eigh(dense, subset_by_index=[0, k - 1])
    else:
        rng = np.random.default_rng(seed)
        v0 = rng.standard_normal(size)
        try:
            vals, vecs = scipy.sparse.linalg.eigsh(
                matrix.tocsc(), k=k, sigma=0.0, which="LM", v0=v0)
        except scipy.sparse.linalg.ArpackNoConvergence as exc:
            raise NonConvergenceError(
                "Lanczos iteration did not converge",
                {"converged": len(exc.eigenvalues), "requested": k}) from exc
        order = np.argsort(vals)
        vals, vecs = vals[order], vecs[:, order]

    residuals = []
    for i in range(k):
        v = vecs[:, i]
        res = np.linalg.norm(matrix @ v - vals[i] * v) / np.linalg.norm(v)
        residuals.append(float(res))
    bad = [r for r in residuals if r > residual_tol]
    if bad:
        raise NonConvergenceError(
            f"{len(bad)} residuals exceed {residual_tol}",
            {"max_residual": max(bad)})
    return SpectrumResult(
        eigenvalues=[float(v) for v in vals],
        residuals=residuals,
        grid=(info or {}).get("grid", {}),
        warnings=list((info or {}).get("warnings", [])),
        seed=seed,
    )


@dataclass(frozen=True)
class DegeneracyReport:
    tolerance: float
    clusters: tuple  # of (mean energy, multiplicity)

    def sizes(self) -> list[int]:
        return [size for _, size in self.clusters]

    def means(self) -> list[float]:
        return [mean for mean, _ in self.clusters]

    def to_json_dict(self) -> dict:
        return {"tolerance": self.tolerance,
                "clusters": [{"energy": m, "multiplicity": s}
                             for m, s in self.clusters]}


def landau_degeneracy(result: SpectrumResult, tol: float) -> DegeneracyReport:
    """Cluster eigenvalues within tol and report level multiplicities."""
    clusters = []
    current: list[float] = []
    for ev in result.eigenvalues:
        if current and ev - current[-1] > tol:
            clusters.append((sum(current) / len(current), len(current)))
            current = []
        current.append(ev)
    if current:
        clusters.append((sum(current) / len(current), len(current)))
    return DegeneracyReport(tolerance=tol, clusters=tuple(clusters))


def landau_level_values(result: SpectrumResult, omega_hint: float,
                        levels: int = 4, window: float = 0.08) -> list[float]:
    """Band-head energies of the lowest Landau-like levels.

    In a Dirichlet box each bulk level appears as a tight cluster whose
    lowest member (the band head) is exponentially close to the ideal
    (n + 1/2) omega; edge states climb upward from each band and leave a
    clean gap (about 0.12 omega empirically) below the next head.
    ``omega_hint`` locates a +-window*omega search interval around
    head_0 + n*omega; the head is the smallest eigenvalue inside it.
    The hint only needs to be right to ~8 percent, far looser than any
    accuracy claim tested against the returned values.
    """
    evs = result.eigenvalues
    heads = [evs[0]]
    for n in range(1, levels):
        target = heads[0] + n * omega_hint
        cands = [e for e in evs if abs(e - target) < window * omega_hint]
        if not cands:
            raise NonConvergenceError(
                f"no eigenvalue near expected level {n}",
                {"target": target, "count": len(evs)})
        heads.append(min(cands))
    return heads


def distinct_level_spacings(result: SpectrumResult, omega_hint: float,
                            levels: int = 4) -> list[float]:
    """Spacings between consecutive band heads (see landau_level_values)."""
    heads = landau_level_values(result, omega_hint, levels)
    return [b - a for a, b in zip(heads, heads[1:])]


def holonomy(gauge: GaugeField, radius: float, center=(0.0, 0.0, 0.0),
             points: int = 256, constants: dict | None = None) -> float:
    """Line integral of A around a circle in the (x2, x3) plane.

    The loop is traversed counterclockwise as seen from +x1 (right-hand
    orientation about the x1 axis).  Trapezoidal quadrature on the closed
    loop; raises SingularLoopError if a quadrature node falls on the axis
    of a singular field.
    """
    if radius <= 0:
        raise ValueError("loop radius must be positive")
    if points < 8:
        raise ValueError("need at least 8 quadrature points")
    consts = _bind_constants(constants)
    singular = any(q < 0 for comp in gauge.components
                   for (_, _, q, _) in comp.terms)
    c1, c2, c3 = center
    total = 0.0
    dtheta = 2.0 * math.pi / points
    for i in range(points):
        th = i * dtheta
        x2 = c2 + radius * math.cos(th)
        x3 = c3 + radius * math.sin(th)
        if singular and math.hypot(x2, x3) < 1e-9:
            raise SingularLoopError("loop touches the singular axis rho = 0")
        a2 = gauge.components[1].evaluate_float((c1, x2, x3), consts).real
        a3 = gauge.components[2].evaluate_float((c1, x2, x3), consts).real
        total += (-a2 * math.sin(th) + a3 * math.cos(th)) * radius * dtheta
    return total


def interference_phase(e, phi_in_pi) -> complex:
    """exp(i e phi) for a flux phi given as a rational multiple of pi.

    Reduced exactly modulo 2 pi first, so e.g. e*phi = 2 pi returns exactly
    1 and e*phi = pi returns exactly -1.
    """
    x = Fraction(e) * Fraction(phi_in_pi) % 2  # angle in units of pi
    if x == 0:
        return complex(1.0, 0.0)
    if x == 1:
        return complex(-1.0, 0.0)
    return cmath.exp(1j * math.pi * float(x))


def phases_equal(e, phi1_in_pi, phi2_in_pi) -> bool:
    """Exact equality of interference phases for two fluxes."""
    diff = Fraction(e) * (Fraction(phi1_in_pi) - Fraction(phi2_in_pi)) % 2
    return diff == 0
