"""Topological entropy from root conditions, closed forms, and growth.

Exactness lives in the series layer; entropy is inherently a real number,
so roots are located in double precision by a sign-change scan and
bisection (derivative-free, bracket-guaranteed) with a final Newton
polish where an analytic derivative is available.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .graphs import first_return_fraction
from .series import Polynomial
from .shifts import GraphBrackets, ShiftSpec, entropy_estimate


class RootError(ArithmeticError):
    pass


@dataclass(frozen=True)
class EntropyResult:
    value: float
    root: float
    residual: float | None
    bracket: tuple[float, float] | None
    method: str
    note: str = ""
    sequence: tuple[float, ...] | None = None


def _scan_sign_change(f: Callable[[float], float], lo: float, hi: float,
                      steps: int = 1024) -> tuple[float, float]:
    x0, y0 = lo, f(lo)
    for i in range(1, steps + 1):
        x1 = lo + (hi - lo) * i / steps
        y1 = f(x1)
        if y0 == 0.0:
            return (x0, x0)
        if (y0 < 0.0) != (y1 < 0.0):
            return (x0, x1)
        x0, y0 = x1, y1
    raise RootError(f"no sign change of the root equation in ({lo}, {hi})")


def _bisect(f: Callable[[float], float], a: float, b: float,
            width: float = 1e-14) -> tuple[float, float]:
    if a == b:
        return a, b
    fa = f(a)
    while b - a > width:
        m = 0.5 * (a + b)
        fm = f(m)
        if fm == 0.0:
            return m, m
        if (fa < 0.0) != (fm < 0.0):
            b = m
        else:
            a, fa = m, fm
    return a, b


def _poly_derivative(p: Polynomial) -> Polynomial:
    return Polynomial.from_coeffs(
        [i * c for i, c in enumerate(p.coeffs)][1:] or [0]
    )


def _polish_newton(p: Polynomial, x: float, a: float, b: float) -> float:
    dp = _poly_derivative(p)
    for _ in range(3):
        d = dp(x)
        if d == 0.0:
            break
        step = p(x) / d
        nx = x - step
        if not (a <= nx <= b):
            break
        x = nx
    return x


def _root_of_polynomial(p: Polynomial, lo: float, hi: float,
                        width: float = 1e-14) -> EntropyResult:
    a, b = _scan_sign_change(p, lo, hi)
    a, b = _bisect(p, a, b, width)
    root = _polish_newton(p, 0.5 * (a + b), a, b)
    return EntropyResult(
        value=-math.log(root),
        root=root,
        residual=abs(p(root)),
        bracket=(a, b),
        method="root-equation",
    )


def entropy_graph_brackets(spec: GraphBrackets, width: float = 1e-14) -> EntropyResult:
    """Entropy of the carrier-plus-loops construction: minus the log of
    the smallest positive root of z g(z) (km^2 + K) = km den-wise, where
    g is the carrier return series, km the larger one-sided loop total
    and K the pair weight.  If the plus side dominates, the two sides are
    swapped first; reversal exchanges their roles."""
    num, den = first_return_fraction(spec.graph)
    km, kp = spec.total_minus, spec.total_plus
    if kp > km:
        km, kp = kp, km
    weight = km * km + spec.pair_weight
    zpoly = Polynomial.from_coeffs([0, 1])
    f = zpoly * num * weight - km * den
    upper = 1.0
    if den.degree >= 1:
        try:
            a, b = _scan_sign_change(den, 0.0, 1.0)
            a, b = _bisect(den, a, b, width)
            upper = 0.5 * (a + b)
        except RootError:
            upper = 1.0
    return _root_of_polynomial(f, 0.0, upper, width)


def entropy_bouquet(n: int, circles: int, circle_len: int,
                    width: float = 1e-14) -> EntropyResult:
    """Entropy over a rosette carrier: the positive root of
    z^Q + ((n+1)/J) z - 1/J, which is unique since the polynomial is
    strictly increasing on the positive axis."""
    if n < 2 or circles < 1 or circle_len < 1:
        raise ValueError("need n >= 2 and positive rosette parameters")
    coeffs = [Fraction(0)] * (circle_len + 1)
    coeffs[0] = Fraction(-1, circles)
    coeffs[1] += Fraction(n + 1, circles)
    coeffs[circle_len] += 1
    return _root_of_polynomial(Polynomial.from_coeffs(coeffs), 0.0, 1.0, width)


_CLOSED_FORMS = ("bouquet_1_2", "schroeder", "even_odd", "psi_uniform")


def entropy_closed(name: str, n: int, k: int | None = None) -> EntropyResult:
    """Evaluated closed forms for the families that have one.

    ``psi_uniform`` needs the uniform rule size k; at k = n the closed
    form degenerates (a log 0 term), and the plain bracket-shift value
    log(n + 1) is returned with an explanatory note.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    if name == "bouquet_1_2":
        root = (math.sqrt((n + 1) ** 2 + 4) - (n + 1)) / 2
        residual = abs(root * root + (n + 1) * root - 1)
    elif name == "schroeder":
        root = (math.sqrt((n + 2) ** 2 + 4) - (n + 2)) / 2
        residual = abs(root * root + (n + 2) * root - 1)
    elif name == "even_odd":
        root = (n + 2 - math.sqrt((n + 2) ** 2 - 4 * n)) / (2 * n)
        residual = abs(n * root * root - (n + 2) * root + 1)
    elif name == "psi_uniform":
        if k is None or not 1 <= k <= n:
            raise ValueError("psi_uniform needs 1 <= k <= n")
        if k == n:
            root = 1.0 / (n + 1)
            return EntropyResult(
                value=math.log(n + 1),
                root=root,
                residual=abs((n + 1) * root - 1),
                bracket=None,
                method="closed-form",
                note="rule size equals the alphabet: no pair is excluded, "
                     "so the plain bracket-shift value applies",
            )
        disc = math.sqrt((n * n + k) ** 2 + 4 * (n - k) * n * n)
        root = (disc - (n * n + k)) / (2 * n * (n - k))
        residual = abs(n * (n - k) * root * root + (n * n + k) * root - n)
    else:
        raise ValueError(f"no closed form named {name!r}; pick from {_CLOSED_FORMS}")
    return EntropyResult(
        value=-math.log(root),
        root=root,
        residual=residual,
        bracket=None,
        method="closed-form",
    )


def entropy_growth_check(spec: ShiftSpec, n_max: int) -> EntropyResult:
    """Growth-rate estimate from word counts; for sanity comparison only."""
    est = entropy_estimate(spec, n_max)
    return EntropyResult(
        value=est.value,
        root=math.exp(-est.value),
        residual=None,
        bracket=None,
        method="growth-estimate",
        sequence=est.sequence,
    )
