"""Coordinate functions: exact sums of c * x1^a1 x2^a2 x3^a3 * r^p * rho^q.

Here r = |x| and rho = sqrt(x2^2 + x3^2); the exponents p, q are rational,
the x-exponents nonnegative integers, and each coefficient is a rational
complex number times a monomial in named constants.  The class is closed
under pointwise products and partial derivatives, which is everything the
operator algebra needs.

Powers of r and rho are never rewritten against the polynomial part
(x2^2 + x3^2 is not collapsed to rho^2); equality questions are settled by
exact evaluation at random rational points instead.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Iterable, Mapping, Union

import mpmath

from .errors import (NonExactPointError, SingularPointError,
                     UnboundConstantError)
from .scalars import (MONO_ONE, QC, QC_ONE, QC_ZERO, Monomial, RationalLike,
                      SymbolicScalar, mono_degree, mono_make, mono_mul,
                      mono_pow, mono_str, mono_value)

Axis = int  # 1, 2 or 3
XExp = tuple  # (a1, a2, a3) nonnegative ints
TermKey = tuple  # (XExp, p: Fraction, q: Fraction, mono: Monomial)

ScalarLike = Union[int, Fraction, QC, SymbolicScalar]


def _as_scalar(v: ScalarLike) -> SymbolicScalar:
    if isinstance(v, SymbolicScalar):
        return v
    if isinstance(v, QC):
        return SymbolicScalar(v)
    return SymbolicScalar(QC(Fraction(v)))


class CoordFunction:
    """Finite exact sum of coordinate-monomial terms."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[TermKey, QC] | None = None):
        clean: dict[TermKey, QC] = {}
        if terms:
            for key, coeff in terms.items():
                if not coeff.is_zero():
                    clean[key] = coeff
        self.terms = clean

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero() -> "CoordFunction":
        return CoordFunction()

    @staticmethod
    def term(coeff: ScalarLike, a: tuple[int, int, int] = (0, 0, 0),
             p: RationalLike = 0, q: RationalLike = 0) -> "CoordFunction":
        s = _as_scalar(coeff)
        key = (tuple(a), Fraction(p), Fraction(q), s.mono)
        return CoordFunction({key: s.coeff})

    @staticmethod
    def one() -> "CoordFunction":
        return CoordFunction.term(1)

    @staticmethod
    def scalar(v: ScalarLike) -> "CoordFunction":
        return CoordFunction.term(v)

    @staticmethod
    def x(axis: Axis, exp: int = 1) -> "CoordFunction":
        a = [0, 0, 0]
        a[axis - 1] = exp
        return CoordFunction.term(1, tuple(a))

    @staticmethod
    def r_power(p: RationalLike) -> "CoordFunction":
        return CoordFunction.term(1, (0, 0, 0), p, 0)

    @staticmethod
    def rho_power(q: RationalLike) -> "CoordFunction":
        return CoordFunction.term(1, (0, 0, 0), 0, q)

    # -- ring operations ----------------------------------------------

    def __add__(self, other: "CoordFunction") -> "CoordFunction":
        out = dict(self.terms)
        for key, c in other.terms.items():
            acc = out.get(key, QC_ZERO) + c
            if acc.is_zero():
                out.pop(key, None)
            else:
                out[key] = acc
        return CoordFunction(out)

    def __sub__(self, other: "CoordFunction") -> "CoordFunction":
        return self + (-other)

    def __neg__(self) -> "CoordFunction":
        return CoordFunction({k: -c for k, c in self.terms.items()})

    def __mul__(self, other: "CoordFunction") -> "CoordFunction":
        out: dict[TermKey, QC] = {}
        for (a1, p1, q1, m1), c1 in self.terms.items():
            for (a2, p2, q2, m2), c2 in other.terms.items():
                key = (
                    (a1[0] + a2[0], a1[1] + a2[1], a1[2] + a2[2]),
                    p1 + p2, q1 + q2, mono_mul(m1, m2),
                )
                acc = out.get(key, QC_ZERO) + c1 * c2
                if acc.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = acc
        return CoordFunction(out)

    def scale(self, v: ScalarLike) -> "CoordFunction":
        s = _as_scalar(v)
        if s.is_zero():
            return CoordFunction.zero()
        out: dict[TermKey, QC] = {}
        for (a, p, q, m), c in self.terms.items():
            out[(a, p, q, mono_mul(m, s.mono))] = c * s.coeff
        return CoordFunction(out)

    def divide_scalar(self, v: SymbolicScalar) -> "CoordFunction":
        return self.scale(v.inverse())

    def conjugate(self) -> "CoordFunction":
        return CoordFunction({k: c.conjugate() for k, c in self.terms.items()})

    def partial(self, axis: Axis) -> "CoordFunction":
        """Exact d/dx_axis within the class."""
        j = axis - 1
        out: dict[TermKey, QC] = {}

        def _acc(key: TermKey, c: QC):
            s = out.get(key, QC_ZERO) + c
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s

        for (a, p, q, m), c in self.terms.items():
            if a[j] > 0:
                na = list(a)
                na[j] -= 1
                _acc((tuple(na), p, q, m), c.scale(a[j]))
            if p != 0:
                na = list(a)
                na[j] += 1
                _acc((tuple(na), p - 2, q, m), c.scale(p))
            if q != 0 and axis in (2, 3):
                na = list(a)
                na[j] += 1
                _acc((tuple(na), p, q - 2, m), c.scale(q))
        return CoordFunction(out)

    # -- structure queries --------------------------------------------

    def is_structurally_zero(self) -> bool:
        return not self.terms

    def constants_present(self) -> set[str]:
        names: set[str] = set()
        for (_, _, _, m) in self.terms:
            names.update(n for n, _ in m)
        return names

    def max_degree_in(self, names: Iterable[str]) -> int:
        names = set(names)
        if not self.terms:
            return 0
        return max(mono_degree(m, names) for (_, _, _, m) in self.terms)

    def drop_degree_at_least(self, names: Iterable[str],
                             cutoff: int = 2) -> "CoordFunction":
        """Drop terms of combined degree >= cutoff in the listed constants."""
        names = set(names)
        return CoordFunction({
            (a, p, q, m): c for (a, p, q, m), c in self.terms.items()
            if mono_degree(m, names) < cutoff
        })

    def substitute_symbol(self, name: str,
                          value: SymbolicScalar) -> "CoordFunction":
        """Replace a named constant by another scalar, exactly."""
        out: dict[TermKey, QC] = {}
        for (a, p, q, m), c in self.terms.items():
            exp = dict(m).get(name, 0)
            if exp == 0:
                key, coeff = (a, p, q, m), c
            else:
                rest = tuple(pair for pair in m if pair[0] != name)
                if exp > 0:
                    factor = QC_ONE
                    for _ in range(exp):
                        factor = factor * value.coeff
                else:
                    factor = QC_ONE
                    for _ in range(-exp):
                        factor = factor / value.coeff
                key = (a, p, q, mono_mul(rest, mono_pow(value.mono, exp)))
                coeff = c * factor
            acc = out.get(key, QC_ZERO) + coeff
            if acc.is_zero():
                out.pop(key, None)
            else:
                out[key] = acc
        return CoordFunction(out)

    # -- evaluation ----------------------------------------------------

    def _needs(self) -> tuple[int, int]:
        """Radical depth needed for exact evaluation of r and rho powers.

        0: only squares needed, 1: the radius itself, 2: its square root,
        3: deeper (not exactly evaluable on rational points).
        """
        need_r = need_q = 0
        for (_, p, q, _) in self.terms:
            for val, cur in ((p, "r"), (q, "q")):
                d = val.denominator
                if d == 1:
                    lvl = 0 if val.numerator % 2 == 0 else 1
                elif d == 2:
                    lvl = 2
                else:
                    lvl = 3
                if cur == "r":
                    need_r = max(need_r, lvl)
                else:
                    need_q = max(need_q, lvl)
        return need_r, need_q

    def evaluate(self, point: tuple[RationalLike, RationalLike, RationalLike],
                 constants: Mapping[str, RationalLike] | None = None) -> QC:
        """Exact value at a rational point.

        Raises SingularPointError at r=0 / rho=0 with negative powers,
        UnboundConstantError for missing constants, and NonExactPointError
        when an odd or fractional radial power is requested at a point whose
        radius (or its square root) is irrational.
        """
        x = tuple(Fraction(v) for v in point)
        constants = constants or {}
        r2 = x[0] ** 2 + x[1] ** 2 + x[2] ** 2
        rho2 = x[1] ** 2 + x[2] ** 2
        total = QC_ZERO
        for (a, p, q, m), c in self.terms.items():
            val = c.scale(mono_value(m, constants))
            for j in range(3):
                if a[j]:
                    val = val.scale(x[j] ** a[j])
            if p != 0:
                val = val.scale(_radical_power(r2, p, "r"))
            if q != 0:
                val = val.scale(_radical_power(rho2, q, "rho"))
            total = total + val
        return total

    def evaluate_float(self, point, constants: Mapping[str, float]) -> complex:
        """Floating-point value; constants must all be bound numerically."""
        x1, x2, x3 = (float(v) for v in point)
        r2 = x1 * x1 + x2 * x2 + x3 * x3
        rho2 = x2 * x2 + x3 * x3
        total = 0j
        for (a, p, q, m), c in self.terms.items():
            v = c.to_complex()
            for name, exp in m:
                if name not in constants:
                    raise UnboundConstantError(f"constant '{name}' has no value")
                v *= float(constants[name]) ** exp
            v *= x1 ** a[0] * x2 ** a[1] * x3 ** a[2]
            if p != 0:
                if r2 == 0.0 and p < 0:
                    raise SingularPointError("r=0 with negative power")
                v *= r2 ** (float(p) / 2.0)
            if q != 0:
                if rho2 == 0.0 and q < 0:
                    raise SingularPointError("rho=0 with negative power")
                v *= rho2 ** (float(q) / 2.0)
            total += v
        return total

    def _evaluate_mp(self, point, constants) -> mpmath.mpc:
        x = [mpmath.mpf(v.numerator) / v.denominator for v in point]
        r2 = x[0] ** 2 + x[1] ** 2 + x[2] ** 2
        rho2 = x[1] ** 2 + x[2] ** 2
        total = mpmath.mpc(0)
        for (a, p, q, m), c in self.terms.items():
            v = mpmath.mpc(mpmath.mpf(c.re.numerator) / c.re.denominator,
                           mpmath.mpf(c.im.numerator) / c.im.denominator)
            for name, exp in m:
                cv = Fraction(constants[name])
                v *= (mpmath.mpf(cv.numerator) / cv.denominator) ** exp
            for j in range(3):
                if a[j]:
                    v *= x[j] ** a[j]
            if p != 0:
                v *= r2 ** (mpmath.mpf(p.numerator) / p.denominator / 2)
            if q != 0:
                v *= rho2 ** (mpmath.mpf(q.numerator) / q.denominator / 2)
            total += v
        return total

    # -- probabilistic zero test ---------------------------------------

    def is_zero(self, seed: int = 0, points: int = 24) -> bool:
        ok, _ = self.is_zero_detailed(seed=seed, points=points)
        return ok

    def is_zero_detailed(self, seed: int = 0,
                         points: int = 24) -> tuple[bool, bool]:
        """(zero?, exact?) via random rational evaluation.

        Exact arithmetic whenever the radical structure allows it; otherwise
        high-precision floating point with tolerance 1e-30 and the second
        flag cleared.
        """
        if not self.terms:
            return True, True
        rng = random.Random(seed)
        names = sorted(self.constants_present())
        need_r, need_rho = self._needs()
        exact = not (need_r >= 3 or need_rho >= 3
                     or (need_r == 2 and need_rho == 2))
        for _ in range(points):
            consts = {n: _rand_nonzero(rng) for n in names}
            if exact:
                pt = sample_point(rng, need_r, need_rho)
                if not self.evaluate(pt, consts).is_zero():
                    return False, True
            else:
                pt = sample_point(rng, min(need_r, 1), min(need_rho, 1))
                with mpmath.workdps(60):
                    v = self._evaluate_mp(pt, consts)
                    scale = sum(abs(c.re) + abs(c.im)
                                for c in self.terms.values())
                    if abs(v) > mpmath.mpf("1e-30") * (1 + scale):
                        return False, False
        return True, exact

    def equivalent(self, other: "CoordFunction", seed: int = 0,
                   points: int = 24) -> bool:
        return (self - other).is_zero(seed=seed, points=points)

    # -- presentation ---------------------------------------------------

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: _term_sort_key(kv[0]))

    def __eq__(self, other) -> bool:
        return isinstance(other, CoordFunction) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for key, coeff in self.sorted_terms():
            parts.append(_term_str(key, coeff))
        out = parts[0]
        for piece in parts[1:]:
            if piece.startswith("-"):
                out += " - " + piece[1:]
            else:
                out += " + " + piece
        return out

    def __repr__(self) -> str:
        return f"CoordFunction({self})"


def _term_sort_key(key: TermKey):
    a, p, q, m = key
    return (a, p, q, m)


def _exp_str(base: str, e: Fraction) -> str:
    if e == 1:
        return base
    if e.denominator == 1 and e >= 0:
        return f"{base}^{e}"
    return f"{base}^({e})"


def _term_str(key: TermKey, coeff: QC) -> str:
    a, p, q, m = key
    factors = []
    ms = mono_str(m)
    if ms:
        factors.append(ms)
    for j in range(3):
        if a[j]:
            factors.append(_exp_str(f"X{j + 1}", Fraction(a[j])))
    if p != 0:
        factors.append(_exp_str("r", p))
    if q != 0:
        factors.append(_exp_str("rho", q))
    cs = str(coeff)
    if not factors:
        return cs
    body = "*".join(factors)
    if cs == "1":
        return body
    if cs == "-1":
        return f"-{body}"
    return f"{cs}*{body}"


# -- radical arithmetic on exact points ---------------------------------


def _sqrt_exact(v: Fraction) -> Fraction | None:
    if v < 0:
        return None
    n, d = v.numerator, v.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def _radical_power(sq: Fraction, exp: Fraction, label: str) -> Fraction:
    """Exact value of radius^exp given radius^2 = sq."""
    if sq == 0:
        if exp < 0:
            raise SingularPointError(f"{label}=0 with negative power {exp}")
        return Fraction(0)
    d = exp.denominator
    if d == 1 and exp.numerator % 2 == 0:
        return sq ** (exp.numerator // 2)
    root = _sqrt_exact(sq)
    if root is None:
        raise NonExactPointError(
            f"{label}^({exp}) is irrational at this point; "
            "choose a Pythagorean-style point")
    if d == 1:
        return root ** exp.numerator
    if d == 2:
        root4 = _sqrt_exact(root)
        if root4 is None:
            raise NonExactPointError(
                f"{label}^({exp}) needs {label}^(1/2) rational at this point")
        return root4 ** int(2 * exp)
    raise NonExactPointError(
        f"exponent {exp} of {label} is not exactly evaluable")


# -- random rational points ----------------------------------------------


def _rand_nonzero(rng: random.Random) -> Fraction:
    num = rng.randint(1, 7) * rng.choice((1, -1))
    return Fraction(num, rng.randint(1, 5))


def _rand_fraction(rng: random.Random) -> Fraction:
    den = rng.randint(1, 7)
    return Fraction(rng.randint(-10 * den, 10 * den), den)


def sample_point(rng: random.Random, need_r: int = 0,
                 need_rho: int = 0) -> tuple[Fraction, Fraction, Fraction]:
    """Random rational point with r != 0, rho != 0.

    need_* = 0 requires nothing beyond rationality of the squares, 1 makes
    the radius itself rational (double Pythagorean point), 2 additionally
    makes it a perfect square of a rational.  need_r = need_rho = 2 is not
    jointly achievable off the x1 = 0 plane and is rejected here.
    """
    if need_r == 2 and need_rho == 2:
        raise NonExactPointError(
            "cannot make both r and rho perfect squares at a generic point")
    if need_r == 0 and need_rho == 0:
        while True:
            pt = (_rand_fraction(rng), _rand_fraction(rng), _rand_fraction(rng))
            if pt[1] != 0 or pt[2] != 0:
                return pt

    # Double-Pythagorean construction: rho and r both rational.
    t = Fraction(rng.randint(1, 6), rng.randint(1, 6))
    u = Fraction(rng.randint(2, 7), rng.randint(1, 6))
    rho0 = Fraction(rng.randint(1, 8), rng.randint(1, 4))
    one = Fraction(1)
    c2 = 2 * t / (one + t * t)
    c3 = (one - t * t) / (one + t * t)
    x2, x3 = rho0 * c2, rho0 * c3
    x1 = rho0 * (one - u * u) / (2 * u)
    r = rho0 * (one + u * u) / (2 * u)
    if need_r == 2:
        sigma = r * rng.randint(1, 3) ** 2
    elif need_rho == 2:
        sigma = rho0 * rng.randint(1, 3) ** 2
    else:
        sigma = Fraction(rng.randint(1, 4), rng.randint(1, 4))
    s1, s2, s3 = (rng.choice((1, -1)) for _ in range(3))
    return (s1 * sigma * x1, s2 * sigma * x2, s3 * sigma * x3)
