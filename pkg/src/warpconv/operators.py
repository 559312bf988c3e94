"""Normal-ordered operator expressions on the 3D Heisenberg algebra.

An ``OperatorExpr`` is a finite sum of CoordFunction * P1^k1 P2^k2 P3^k3
terms with all coordinate dependence strictly left of all momentum factors.
The sign convention throughout is

    P_j = -i d/dx_j,   [X_j, P_k] = i delta_jk,   [P_j, f(X)] = -i df/dx_j,

so products are normal-ordered by repeatedly commuting momenta past
coordinate functions, which stays inside the class because CoordFunction
is closed under partial derivatives.

Structural normal forms are unique, but algebraically equal expressions can
differ structurally (powers of r and rho are not rewritten against the
polynomial part).  The authoritative equality is ``equals``: structural
match first, then exact evaluation of the difference at random rational
points, coefficient by coefficient.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Mapping

from .coords import CoordFunction, ScalarLike
from .errors import InternalInconsistencyError
from .scalars import QC, QC_ZERO, RationalLike, SymbolicScalar, frac_parse, frac_str

PMulti = tuple  # (k1, k2, k3) nonnegative ints

P_ZERO: PMulti = (0, 0, 0)


class OperatorExpr:
    """Finite normal-ordered sum of (coordinate function) * (momentum monomial)."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[PMulti, CoordFunction] | None = None):
        clean: dict[PMulti, CoordFunction] = {}
        if terms:
            for pm, f in terms.items():
                if not f.is_structurally_zero():
                    clean[tuple(pm)] = f
        self.terms = clean

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero() -> "OperatorExpr":
        return OperatorExpr()

    @staticmethod
    def identity() -> "OperatorExpr":
        return OperatorExpr({P_ZERO: CoordFunction.one()})

    @staticmethod
    def from_coord(f: CoordFunction) -> "OperatorExpr":
        return OperatorExpr({P_ZERO: f})

    @staticmethod
    def scalar(v: ScalarLike) -> "OperatorExpr":
        return OperatorExpr.from_coord(CoordFunction.scalar(v))

    @staticmethod
    def momentum(axis: int, exp: int = 1) -> "OperatorExpr":
        pm = [0, 0, 0]
        pm[axis - 1] = exp
        return OperatorExpr({tuple(pm): CoordFunction.one()})

    @staticmethod
    def position(axis: int, exp: int = 1) -> "OperatorExpr":
        return OperatorExpr.from_coord(CoordFunction.x(axis, exp))

    @staticmethod
    def free_hamiltonian() -> "OperatorExpr":
        """(P1^2 + P2^2 + P3^2) / (2m) with symbolic mass m."""
        half_over_m = SymbolicScalar.symbol("m", -1, Fraction(1, 2))
        coeff = CoordFunction.scalar(half_over_m)
        return OperatorExpr({
            (2, 0, 0): coeff, (0, 2, 0): coeff, (0, 0, 2): coeff,
        })

    # -- linear structure ----------------------------------------------

    def __add__(self, other: "OperatorExpr") -> "OperatorExpr":
        out = dict(self.terms)
        for pm, f in other.terms.items():
            acc = out.get(pm)
            acc = f if acc is None else acc + f
            if acc.is_structurally_zero():
                out.pop(pm, None)
            else:
                out[pm] = acc
        return OperatorExpr(out)

    def __sub__(self, other: "OperatorExpr") -> "OperatorExpr":
        return self + (-other)

    def __neg__(self) -> "OperatorExpr":
        return OperatorExpr({pm: -f for pm, f in self.terms.items()})

    def scale(self, v: ScalarLike) -> "OperatorExpr":
        return OperatorExpr({pm: f.scale(v) for pm, f in self.terms.items()})

    def coord_multiply(self, f: CoordFunction) -> "OperatorExpr":
        """Left multiplication by a coordinate function (no reordering)."""
        return OperatorExpr({pm: f * g for pm, g in self.terms.items()})

    # -- products ------------------------------------------------------

    def __mul__(self, other: "OperatorExpr") -> "OperatorExpr":
        """Normal-ordered operator product."""
        out: dict[PMulti, CoordFunction] = {}
        for alpha, f in self.terms.items():
            for beta, g in other.terms.items():
                for gamma, h in _push_momentum_past(alpha, g):
                    pm = (gamma[0] + beta[0], gamma[1] + beta[1],
                          gamma[2] + beta[2])
                    piece = f * h
                    acc = out.get(pm)
                    acc = piece if acc is None else acc + piece
                    if acc.is_structurally_zero():
                        out.pop(pm, None)
                    else:
                        out[pm] = acc
        return OperatorExpr(out)

    def power(self, n: int) -> "OperatorExpr":
        if n < 0:
            raise ValueError("negative operator powers are not defined")
        acc = OperatorExpr.identity()
        for _ in range(n):
            acc = acc * self
        return acc

    def commutator(self, other: "OperatorExpr") -> "OperatorExpr":
        return self * other - other * self

    def anticommutator(self, other: "OperatorExpr") -> "OperatorExpr":
        return self * other + other * self

    def adjoint(self) -> "OperatorExpr":
        """Conjugate coefficients, reverse factor order, re-normal-order."""
        out = OperatorExpr.zero()
        for pm, f in self.terms.items():
            pexpr = OperatorExpr({pm: CoordFunction.one()})
            out = out + pexpr * OperatorExpr.from_coord(f.conjugate())
        return out

    # -- queries ---------------------------------------------------------

    def momentum_degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(pm) for pm in self.terms)

    def coordinate_part(self) -> CoordFunction:
        return self.terms.get(P_ZERO, CoordFunction.zero())

    def coefficient(self, pm: PMulti) -> CoordFunction:
        return self.terms.get(tuple(pm), CoordFunction.zero())

    def is_structurally_zero(self) -> bool:
        return not self.terms

    def constants_present(self) -> set[str]:
        names: set[str] = set()
        for f in self.terms.values():
            names |= f.constants_present()
        return names

    def drop_degree_at_least(self, names, cutoff: int = 2) -> "OperatorExpr":
        """Explicit truncation: drop terms of degree >= cutoff in the constants."""
        return OperatorExpr({
            pm: f.drop_degree_at_least(names, cutoff)
            for pm, f in self.terms.items()
        })

    def substitute_symbol(self, name: str, value: SymbolicScalar) -> "OperatorExpr":
        return OperatorExpr({
            pm: f.substitute_symbol(name, value)
            for pm, f in self.terms.items()
        })

    # -- equality oracle --------------------------------------------------

    def equals(self, other: "OperatorExpr", seed: int = 0,
               points: int = 24) -> bool:
        ok, _ = self.equals_detailed(other, seed=seed, points=points)
        return ok

    def equals_detailed(self, other: "OperatorExpr", seed: int = 0,
                        points: int = 24) -> tuple[bool, bool]:
        """(equal?, exact?).  Structural match first, then the evaluation
        oracle on each normal-form coefficient of the difference."""
        if self.terms == other.terms:
            return True, True
        diff = self - other
        exact_all = True
        for k, (pm, f) in enumerate(sorted(diff.terms.items())):
            zero, exact = f.is_zero_detailed(seed=seed + 101 * k, points=points)
            if not zero:
                return False, exact
            exact_all = exact_all and exact
        return True, exact_all

    def is_hermitian(self, seed: int = 0) -> bool:
        return self.equals(self.adjoint(), seed=seed)

    def evaluate(self, point, momentum,
                 constants: Mapping[str, RationalLike] | None = None) -> QC:
        """Exact value with momentum symbols treated as commuting rationals.

        Valid for comparing normal-ordered expressions only; the actual
        equality criterion works coefficient-wise (see ``equals``).
        """
        mom = tuple(Fraction(v) for v in momentum)
        total = QC_ZERO
        for pm, f in self.terms.items():
            v = f.evaluate(point, constants)
            v = v.scale(mom[0] ** pm[0] * mom[1] ** pm[1] * mom[2] ** pm[2])
            total = total + v
        return total

    # -- serialization ------------------------------------------------------

    def to_json_dict(self) -> dict:
        items = []
        for pm in sorted(self.terms):
            f = self.terms[pm]
            for (a, p, q, mono), coeff in f.sorted_terms():
                items.append({
                    "coeff": {"re": frac_str(coeff.re), "im": frac_str(coeff.im)},
                    "constants": {name: exp for name, exp in mono},
                    "x": list(a),
                    "r": frac_str(p),
                    "rho": frac_str(q),
                    "P": list(pm),
                })
        return {"terms": items}

    @staticmethod
    def from_json_dict(data: dict) -> "OperatorExpr":
        out = OperatorExpr.zero()
        for item in data["terms"]:
            coeff = QC(frac_parse(item["coeff"]["re"]),
                       frac_parse(item["coeff"]["im"]))
            mono = tuple(sorted((k, int(v))
                                for k, v in item["constants"].items()))
            f = CoordFunction({
                (tuple(item["x"]), frac_parse(item["r"]),
                 frac_parse(item["rho"]), mono): coeff
            })
            out = out + OperatorExpr({tuple(item["P"]): f})
        return out

    # -- presentation ---------------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, OperatorExpr) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset((pm, f) for pm, f in self.terms.items()))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        chunks = []
        for pm in sorted(self.terms):
            f = self.terms[pm]
            pstr = "*".join(
                (f"P{j + 1}" if k == 1 else f"P{j + 1}^{k}")
                for j, k in enumerate(pm) if k
            )
            fstr = str(f)
            if not pstr:
                chunks.append(fstr)
            elif fstr == "1":
                chunks.append(pstr)
            else:
                body = fstr if len(f.terms) == 1 and not fstr.startswith("-") \
                    else f"({fstr})"
                chunks.append(f"{body}*{pstr}")
        return " + ".join(chunks)

    def __repr__(self) -> str:
        return f"OperatorExpr({self})"


def _push_momentum_past(alpha: PMulti, g: CoordFunction):
    """Rewrite P^alpha g(X) as sum_beta c_beta(X) P^beta.

    Uses [P_j, f] = -i df/dx_j repeatedly:
    P^alpha g = sum_{beta <= alpha} binom(alpha, beta) (-i)^{|alpha - beta|}
                (d^{alpha-beta} g) P^beta.
    """
    if not any(alpha):
        yield alpha, g
        return
    derivs = _derivative_table(g, alpha)
    for b1 in range(alpha[0] + 1):
        for b2 in range(alpha[1] + 1):
            for b3 in range(alpha[2] + 1):
                delta = (alpha[0] - b1, alpha[1] - b2, alpha[2] - b3)
                d = derivs[delta]
                if d.is_structurally_zero():
                    continue
                n = sum(delta)
                c = (math.comb(alpha[0], b1) * math.comb(alpha[1], b2)
                     * math.comb(alpha[2], b3))
                # (-i)^n cycles 1, -i, -1, i
                rot = n % 4
                scalar = QC(Fraction(c))
                if rot == 1:
                    scalar = QC(0, Fraction(-c))
                elif rot == 2:
                    scalar = QC(Fraction(-c))
                elif rot == 3:
                    scalar = QC(0, Fraction(c))
                yield (b1, b2, b3), d.scale(scalar)


def _derivative_table(g: CoordFunction, alpha: PMulti) -> dict:
    """All partial derivatives d^delta g for delta <= alpha."""
    table = {(0, 0, 0): g}
    for axis in (1, 2, 3):
        new = {}
        for delta, f in table.items():
            cur = f
            new[delta] = cur
            for k in range(1, alpha[axis - 1] + 1):
                cur = cur.partial(axis)
                d = list(delta)
                d[axis - 1] = k
                new[tuple(d)] = cur
        table = new
    return table


def require_coordinate_only(expr: OperatorExpr, what: str) -> CoordFunction:
    """Assert an expression has no momentum part and return its coordinate part."""
    for pm in expr.terms:
        if any(pm):
            raise InternalInconsistencyError(
                f"{what} has a momentum-dependent remainder: {expr}")
    return expr.coordinate_part()
