"""Exact univariate polynomials, rational functions and rational series fitting.

Coefficients are :class:`fractions.Fraction`; nothing in this module
touches floating point.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence


class PoleAtMinusOne(ArithmeticError):
    """The reduced denominator vanishes at t = -1."""


class NoCertificate(ValueError):
    """No rational function of bounded order reproduces the whole prefix."""

    def __init__(self, first_mismatch: int | None, message: str | None = None):
        super().__init__(message or f"no verified rational fit (first mismatch at index {first_mismatch})")
        self.first_mismatch = first_mismatch


class Polynomial:
    """Polynomial in one variable, coefficients in ascending degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def constant(cls, c) -> "Polynomial":
        return cls([c])

    @classmethod
    def monomial(cls, degree: int, c=1) -> "Polynomial":
        return cls([0] * degree + [c])

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __call__(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial([other])
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Polynomial({[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}{'*' if mono else ''}{mono}"
            terms.append(("-" if c < 0 else "+", body))
        sign, body = terms[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __neg__(self) -> "Polynomial":
        return Polynomial(-c for c in self.coeffs)

    def __add__(self, other) -> "Polynomial":
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(self[k] + other[k] for k in range(n))

    __radd__ = __add__

    def __sub__(self, other) -> "Polynomial":
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> "Polynomial":
        return _as_poly(other) - self

    def __mul__(self, other) -> "Polynomial":
        other = _as_poly(other)
        if self.is_zero() or other.is_zero():
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Polynomial":
        out = Polynomial([1])
        for _ in range(e):
            out = out * self
        return out

    def __divmod__(self, other) -> tuple["Polynomial", "Polynomial"]:
        other = _as_poly(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.leading()
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] / lead
            if c:
                quot[k - dq] = c
                for j, b in enumerate(other.coeffs):
                    rem[k - dq + j] -= c * b
        return Polynomial(quot), Polynomial(rem)

    def __floordiv__(self, other) -> "Polynomial":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "Polynomial":
        return divmod(self, other)[1]

    def exact_div(self, other) -> "Polynomial":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError(f"{self} is not divisible by {other}")
        return q

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        lead = self.leading()
        return Polynomial(c / lead for c in self.coeffs)

    def scale(self, c) -> "Polynomial":
        return Polynomial(Fraction(c) * a for a in self.coeffs)

    def truncate(self, n: int) -> "Polynomial":
        """Keep coefficients of degree < n."""
        return Polynomial(self.coeffs[:n])


def _as_poly(x) -> Polynomial:
    return x if isinstance(x, Polynomial) else Polynomial([x])


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd over the rationals (zero if both are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


class RationalFunction:
    """Reduced quotient ``num / den``.

    Normal form: ``gcd(num, den) = 1`` and ``den(0) = 1``, or ``den`` monic
    when ``den(0) = 0``.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num, den = _as_poly(num), _as_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            num, den = Polynomial(), Polynomial([1])
        else:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num.exact_div(g), den.exact_div(g)
        norm = den[0] if den[0] != 0 else den.leading()
        self.num = num.scale(1 / norm)
        self.den = den.scale(1 / norm)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"RationalFunction({self.num}, {self.den})"

    def __str__(self) -> str:
        if self.den == 1:
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def is_power_series(self) -> bool:
        return self.den[0] != 0

    def taylor(self, n: int) -> list[Fraction]:
        """First ``n`` Taylor coefficients at t = 0."""
        if not self.is_power_series():
            raise ArithmeticError("denominator vanishes at 0")
        h0 = self.den[0]
        out: list[Fraction] = []
        for k in range(n):
            acc = self.num[k]
            for j in range(1, min(k, self.den.degree) + 1):
                acc -= self.den[j] * out[k - j]
            out.append(acc / h0)
        return out

    def integer_coefficients(self) -> tuple[list[int], list[int]]:
        """Numerator and denominator as coprime integer lists, ascending degree."""
        dens = [c.denominator for c in self.num.coeffs + self.den.coeffs]
        lcm = 1
        for d in dens:
            lcm = lcm * d // math.gcd(lcm, d)
        g = [int(c * lcm) for c in self.num.coeffs]
        h = [int(c * lcm) for c in self.den.coeffs]
        content = 0
        for c in g + h:
            content = math.gcd(content, c)
        content = content or 1
        return [c // content for c in g] or [0], [c // content for c in h]


def taylor_prefix(R: RationalFunction, length: int) -> list[int | Fraction]:
    return [int(c) if c.denominator == 1 else c for c in R.taylor(length)]


def eval_at_minus_one(R: RationalFunction) -> Fraction:
    """``num(-1) / den(-1)`` for the reduced form of ``R``."""
    d = R.den(-1)
    if d == 0:
        raise PoleAtMinusOne(f"{R} has a pole at t = -1")
    return R.num(-1) / d


# -- resolvent -------------------------------------------------------------

def bareiss_det(matrix: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Fraction-free determinant of a square matrix with polynomial entries."""
    M = [[_as_poly(x) for x in row] for row in matrix]
    n = len(M)
    if n == 0:
        return Polynomial([1])
    sign = 1
    prev = Polynomial([1])
    for k in range(n - 1):
        if M[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not M[i][k].is_zero()), None)
            if swap is None:
                return Polynomial()
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]).exact_div(prev)
        prev = M[k][k]
    det = M[n - 1][n - 1]
    return det if sign > 0 else -det


def resolvent_series(A, u: Sequence[int] | None = None, v: Sequence[int] | None = None) -> RationalFunction:
    """Rational function with Taylor coefficients ``u^T A^n v``.

    ``u^T adj(M) v = det(M + v u^T) - det(M)`` with ``M = I - tA``.
    """
    rows = A.entries if hasattr(A, "entries") else A
    n = len(rows)
    u = [1] * n if u is None else list(u)
    v = [1] * n if v is None else list(v)
    t = Polynomial([0, 1])
    M = [[Polynomial([1 if i == j else 0]) - t.scale(rows[i][j]) for j in range(n)] for i in range(n)]
    det = bareiss_det(M)
    bumped = [[M[i][j] + Polynomial([v[i] * u[j]]) for j in range(n)] for i in range(n)]
    return RationalFunction(bareiss_det(bumped) - det, det)


# -- fitting ---------------------------------------------------------------

def _nullvector(rows: list[list[Fraction]], ncols: int) -> list[Fraction]:
    """A nonzero solution of ``rows @ x = 0`` (requires fewer equations than unknowns)."""
    m = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][col]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    free = next(c for c in range(ncols) if c not in pivots)
    x = [Fraction(0)] * ncols
    x[free] = Fraction(1)
    for i, col in enumerate(pivots):
        x[col] = -m[i][free]
    return x


def pade(coeffs: Sequence, num_degree: int, den_degree: int) -> RationalFunction | None:
    """Type ``(num_degree, den_degree)`` approximant matching ``coeffs[:num_degree + den_degree + 1]``.

    Returns ``None`` when the reduced approximant is not a power series.
    """
    c = [Fraction(x) for x in coeffs]
    K = num_degree + den_degree
    if len(c) < K + 1:
        raise ValueError("not enough coefficients for this approximant")

    def coef(k: int) -> Fraction:
        return c[k] if k >= 0 else Fraction(0)

    eqs = [[coef(k - j) for j in range(den_degree + 1)] for k in range(num_degree + 1, K + 1)]
    h = Polynomial(_nullvector(eqs, den_degree + 1))
    g = (h * Polynomial(c[:K + 1])).truncate(num_degree + 1)
    if g.is_zero():
        R = RationalFunction(0)
    else:
        R = RationalFunction(g, h)
    return R if R.is_power_series() else None


def _first_mismatch(R: RationalFunction, coeffs: Sequence[Fraction]) -> int | None:
    for k, (a, b) in enumerate(zip(R.taylor(len(coeffs)), coeffs)):
        if a != b:
            return k
    return None


def fit_rational(prefix: Sequence, max_order: int | None = None) -> RationalFunction:
    """Recover a rational generating function from ``c_0 ... c_M`` with a certificate.

    For each recurrence order ``d = 0, 1, ...`` up to ``max_order`` (default
    ``M // 4``) a candidate with denominator degree ``d`` is fitted to
    ``c_0 ... c_{M // 2}`` and must then reproduce every remaining
    coefficient. The first candidate that does is returned.
    """
    c = [Fraction(x) for x in prefix]
    M = len(c) - 1
    if M < 3:
        raise ValueError("need at least four coefficients")
    K = M // 2
    cap = M // 4 if max_order is None else max_order
    best = -1
    for d in range(0, min(cap, K) + 1):
        R = pade(c, K - d, d)
        if R is None:
            continue
        miss = _first_mismatch(R, c)
        if miss is None:
            return R
        best = max(best, miss)
    raise NoCertificate(best if best >= 0 else None)
