"""Exact truncated power series and polynomials over the rationals.

A PowerSeries knows its coefficients for z^0..z^order only; binary
operations truncate to the smaller order and never extend it.  All
coefficients are `fractions.Fraction`, so equality tests in the
differential suites are exact.  Everything here is immutable and pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class SeriesError(ValueError):
    pass


class InexactDivision(SeriesError):
    """Polynomial division left a remainder where exactness was required."""

    def __init__(self, message: str, remainder: "Polynomial"):
        super().__init__(f"{message} (remainder {remainder!r})")
        self.remainder = remainder


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"exact rational expected, got {type(x).__name__}")


@dataclass(frozen=True)
class PowerSeries:
    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if not self.coeffs:
            raise SeriesError("a series needs at least the constant term")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @staticmethod
    def from_coeffs(values: Iterable, order: int | None = None) -> "PowerSeries":
        cs = [_frac(v) for v in values]
        if order is not None:
            cs = cs[: order + 1] + [Fraction(0)] * (order + 1 - len(cs))
        return PowerSeries(tuple(cs))

    @staticmethod
    def zero(order: int) -> "PowerSeries":
        return PowerSeries((Fraction(0),) * (order + 1))

    @staticmethod
    def one(order: int) -> "PowerSeries":
        return PowerSeries.constant(1, order)

    @staticmethod
    def constant(value, order: int) -> "PowerSeries":
        return PowerSeries((_frac(value),) + (Fraction(0),) * order)

    @staticmethod
    def x(order: int) -> "PowerSeries":
        if order < 1:
            return PowerSeries.zero(order)
        return PowerSeries.from_coeffs([0, 1], order)

    def coef(self, n: int) -> Fraction:
        return self.coeffs[n]

    def truncate(self, order: int) -> "PowerSeries":
        if order > self.order:
            raise SeriesError("cannot extend a truncated series")
        return PowerSeries(self.coeffs[: order + 1])

    def agrees_with(self, other: "PowerSeries", order: int) -> bool:
        return self.coeffs[: order + 1] == other.coeffs[: order + 1]

    def __add__(self, other) -> "PowerSeries":
        if isinstance(other, PowerSeries):
            m = min(self.order, other.order)
            return PowerSeries(tuple(self.coeffs[i] + other.coeffs[i] for i in range(m + 1)))
        c = _frac(other)
        return PowerSeries((self.coeffs[0] + c,) + self.coeffs[1:])

    __radd__ = __add__

    def __neg__(self) -> "PowerSeries":
        return PowerSeries(tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> "PowerSeries":
        return self + (-other if isinstance(other, PowerSeries) else -_frac(other))

    def __rsub__(self, other) -> "PowerSeries":
        return (-self) + other

    def __mul__(self, other) -> "PowerSeries":
        if isinstance(other, PowerSeries):
            m = min(self.order, other.order)
            out = [Fraction(0)] * (m + 1)
            for i, a in enumerate(self.coeffs[: m + 1]):
                if not a:
                    continue
                for j in range(m + 1 - i):
                    b = other.coeffs[j]
                    if b:
                        out[i + j] += a * b
            return PowerSeries(tuple(out))
        c = _frac(other)
        return PowerSeries(tuple(c * a for a in self.coeffs))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "PowerSeries":
        if n < 0:
            raise SeriesError("negative powers are not defined on series")
        acc = PowerSeries.one(self.order)
        for _ in range(n):
            acc = acc * self
        return acc

    def __truediv__(self, other) -> "PowerSeries":
        if not isinstance(other, PowerSeries):
            return self * (Fraction(1) / _frac(other))
        if other.coeffs[0] == 0:
            raise SeriesError("division needs a nonzero constant term")
        m = min(self.order, other.order)
        b0 = other.coeffs[0]
        out = [Fraction(0)] * (m + 1)
        for n in range(m + 1):
            acc = self.coeffs[n]
            for k in range(n):
                if out[k] and other.coeffs[n - k]:
                    acc -= out[k] * other.coeffs[n - k]
            out[n] = acc / b0
        return PowerSeries(tuple(out))

    def __rtruediv__(self, other) -> "PowerSeries":
        return PowerSeries.constant(other, self.order) / self

    def sqrt(self) -> "PowerSeries":
        """Square root with constant term +1; requires constant term 1.

        Solved degree by degree from s*s = self.
        """
        if self.coeffs[0] != 1:
            raise SeriesError("sqrt needs constant term 1")
        out = [Fraction(1)] + [Fraction(0)] * self.order
        for n in range(1, self.order + 1):
            acc = self.coeffs[n]
            for k in range(1, n):
                acc -= out[k] * out[n - k]
            out[n] = acc / 2
        return PowerSeries(tuple(out))

    def exp(self) -> "PowerSeries":
        if self.coeffs[0] != 0:
            raise SeriesError("exp needs constant term 0")
        out = [Fraction(1)] + [Fraction(0)] * self.order
        for n in range(1, self.order + 1):
            acc = Fraction(0)
            for k in range(1, n + 1):
                if self.coeffs[k]:
                    acc += k * self.coeffs[k] * out[n - k]
            out[n] = acc / n
        return PowerSeries(tuple(out))

    def log(self) -> "PowerSeries":
        if self.coeffs[0] != 1:
            raise SeriesError("log needs constant term 1")
        out = [Fraction(0)] * (self.order + 1)
        for n in range(1, self.order + 1):
            acc = n * self.coeffs[n]
            for k in range(1, n):
                if out[k] and self.coeffs[n - k]:
                    acc -= k * out[k] * self.coeffs[n - k]
            out[n] = acc / n
        return PowerSeries(tuple(out))

    def __repr__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}*z")
            else:
                terms.append(f"{c}*z^{i}")
        body = " + ".join(terms) if terms else "0"
        return f"{body} + O(z^{self.order + 1})"


@dataclass(frozen=True)
class Polynomial:
    """Dense exact polynomial; no trailing zero coefficients are stored."""

    coeffs: tuple[Fraction, ...] = ()

    @staticmethod
    def from_coeffs(values: Iterable) -> "Polynomial":
        cs = [_frac(v) for v in values]
        while cs and cs[-1] == 0:
            cs.pop()
        return Polynomial(tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def coef(self, n: int) -> Fraction:
        return self.coeffs[n] if n < len(self.coeffs) else Fraction(0)

    def __call__(self, x):
        acc = Fraction(0) if isinstance(x, (int, Fraction)) else 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + (c if isinstance(x, (int, Fraction)) else float(c))
        return acc

    def __add__(self, other: "Polynomial") -> "Polynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial.from_coeffs(
            [self.coef(i) + other.coef(i) for i in range(n)]
        )

    def __neg__(self) -> "Polynomial":
        return Polynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if self.is_zero or other.is_zero:
                return Polynomial()
            out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if not a:
                    continue
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] += a * b
            return Polynomial.from_coeffs(out)
        return Polynomial.from_coeffs([_frac(other) * c for c in self.coeffs])

    __rmul__ = __mul__

    def divmod(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        if other.is_zero:
            raise SeriesError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [Fraction(0)] * max(len(rem) - len(other.coeffs) + 1, 0)
        d = other.coeffs
        while len(rem) >= len(d) and rem:
            f = rem[-1] / d[-1]
            k = len(rem) - len(d)
            q[k] = f
            for i, c in enumerate(d):
                rem[k + i] -= f * c
            while rem and rem[-1] == 0:
                rem.pop()
        return Polynomial.from_coeffs(q), Polynomial.from_coeffs(rem)

    def divexact(self, other: "Polynomial") -> "Polynomial":
        q, r = self.divmod(other)
        if not r.is_zero:
            raise InexactDivision("polynomial division is not exact", r)
        return q

    def compose_scaled(self, scale, power: int) -> "Polynomial":
        """Substitute z -> scale * z**power."""
        s = _frac(scale)
        out = [Fraction(0)] * (power * self.degree + 1 if self.coeffs else 1)
        for i, c in enumerate(self.coeffs):
            out[power * i] += c * s**i
        return Polynomial.from_coeffs(out)

    def to_series(self, order: int) -> PowerSeries:
        return PowerSeries.from_coeffs(self.coeffs or (0,), order)

    def __repr__(self) -> str:
        if self.is_zero:
            return "Polynomial(0)"
        parts = [f"{c}*z^{i}" for i, c in enumerate(self.coeffs) if c]
        return "Polynomial(" + " + ".join(parts) + ")"


POLY_ZERO = Polynomial()
POLY_ONE = Polynomial.from_coeffs([1])


def identity_minus_adjacency_z(matrix: Sequence[Sequence[int]]) -> list[list[Polynomial]]:
    """Entries of (1 - A z) as polynomials, from an integer matrix A."""
    d = len(matrix)
    out = []
    for i in range(d):
        if len(matrix[i]) != d:
            raise SeriesError("adjacency matrix must be square")
        row = []
        for j in range(d):
            const = 1 if i == j else 0
            row.append(Polynomial.from_coeffs([const, -matrix[i][j]]))
        out.append(row)
    return out


def matmul_poly(a: Sequence[Sequence[Polynomial]], b: Sequence[Sequence[Polynomial]]):
    d = len(a)
    out = []
    for i in range(d):
        row = []
        for j in range(d):
            acc = POLY_ZERO
            for k in range(d):
                acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(row)
    return out


def det_poly_matrix(matrix: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Exact determinant by memoized cofactor expansion.

    Meant for the small matrices that arise here (dimension <= 8 or so);
    the 0x0 determinant is 1 by the empty-product convention.
    """
    d = len(matrix)
    for row in matrix:
        if len(row) != d:
            raise SeriesError("determinant needs a square matrix")
    if d == 0:
        return POLY_ONE
    cache: dict[tuple[int, tuple[int, ...]], Polynomial] = {}

    def minor(row: int, cols: tuple[int, ...]) -> Polynomial:
        if row == d:
            return POLY_ONE
        key = (row, cols)
        hit = cache.get(key)
        if hit is not None:
            return hit
        acc = POLY_ZERO
        for i, c in enumerate(cols):
            entry = matrix[row][c]
            if entry.is_zero:
                continue
            sub = minor(row + 1, cols[:i] + cols[i + 1 :])
            term = entry * sub
            acc = acc + term if i % 2 == 0 else acc - term
        cache[key] = acc
        return acc

    return minor(0, tuple(range(d)))


def zeta_from_counts(counts: Sequence[int], order: int) -> PowerSeries:
    """Series exp(sum_n counts[n-1] z^n / n); counts[i] is the number of
    points fixed by the (i+1)-th shift power."""
    if len(counts) < order:
        raise SeriesError(f"need {order} counts, got {len(counts)}")
    if any(c < 0 for c in counts[:order]):
        raise SeriesError("periodic counts must be nonnegative")
    body = [Fraction(0)] + [Fraction(counts[n - 1], n) for n in range(1, order + 1)]
    return PowerSeries(tuple(body)).exp()


def counts_from_zeta(zeta: PowerSeries) -> list[Fraction]:
    """Inverse of zeta_from_counts: the coefficient sequence of z * zeta'/zeta.

    Returns exact rationals; integrality is the caller's check.
    """
    if zeta.coeffs[0] != 1:
        raise SeriesError("a zeta series has constant term 1")
    lg = zeta.log()
    return [n * lg.coef(n) for n in range(1, zeta.order + 1)]
