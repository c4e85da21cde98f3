"""Exact arithmetic in the bracket-matching (polycyclic) inverse monoid.

For each letter g in 1..N there is an opening generator g(-) and a closing
generator g(+).  A g(-) immediately followed by g'(+) cancels to the
identity when g = g', and annihilates the whole product to zero when
g != g'.  Every nonzero element therefore has a unique reduced form: a
block of closing letters followed by a block of opening letters.  Values
are immutable and safe to share between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

MINUS = -1
PLUS = 1


@dataclass(frozen=True)
class Generator:
    """A single signed letter: ``letter`` in 1..N, ``sign`` MINUS or PLUS."""

    letter: int
    sign: int

    def __post_init__(self) -> None:
        if self.sign not in (MINUS, PLUS):
            raise ValueError(f"sign must be {MINUS} or {PLUS}, got {self.sign!r}")
        if self.letter < 1:
            raise ValueError(f"letter must be >= 1, got {self.letter!r}")

    def element(self) -> "MonoidElement":
        if self.sign == MINUS:
            return MonoidElement(minus=(self.letter,))
        return MonoidElement(plus=(self.letter,))


@dataclass(frozen=True)
class MonoidElement:
    """A reduced monoid element: closing letters ``plus`` then opening
    letters ``minus``, or the absorbing zero (``is_zero``)."""

    plus: tuple[int, ...] = ()
    minus: tuple[int, ...] = ()
    is_zero: bool = False

    def __post_init__(self) -> None:
        if self.is_zero and (self.plus or self.minus):
            raise ValueError("zero carries no letters")

    @property
    def is_identity(self) -> bool:
        return not self.is_zero and not self.plus and not self.minus

    def __mul__(self, other: "MonoidElement") -> "MonoidElement":
        return mul(self, other)

    def __repr__(self) -> str:
        if self.is_zero:
            return "0"
        if self.is_identity:
            return "1"
        parts = [f"{g}(+)" for g in self.plus] + [f"{g}(-)" for g in self.minus]
        return "*".join(parts)


ZERO = MonoidElement(is_zero=True)
ONE = MonoidElement()


def gminus(letter: int) -> MonoidElement:
    """Opening generator for ``letter``."""
    return MonoidElement(minus=(letter,))


def gplus(letter: int) -> MonoidElement:
    """Closing generator for ``letter``."""
    return MonoidElement(plus=(letter,))


def mul(a: MonoidElement, b: MonoidElement) -> MonoidElement:
    """Product in reduced form.

    The opening tail of ``a`` cancels pairwise against the closing head of
    ``b``; any letter mismatch at the boundary annihilates to zero.
    Runs in time linear in the shorter boundary block.
    """
    if a.is_zero or b.is_zero:
        return ZERO
    m, p = a.minus, b.plus
    t = min(len(m), len(p))
    for r in range(t):
        if m[len(m) - 1 - r] != p[r]:
            return ZERO
    if len(m) <= len(p):
        return MonoidElement(a.plus + p[t:], b.minus)
    return MonoidElement(a.plus, m[: len(m) - t] + b.minus)


def word_product(symbols: Iterable, phi: Mapping) -> MonoidElement:
    """Left-to-right product of the images of ``symbols`` under ``phi``.

    The empty sequence gives the identity.  Raises ``KeyError`` for a
    symbol outside phi's domain.
    """
    acc = ONE
    for s in symbols:
        if s not in phi:
            raise KeyError(f"symbol {s!r} has no monoid image")
        acc = mul(acc, phi[s])
        if acc.is_zero:
            return ZERO
    return acc


def powers_never_vanish(e: MonoidElement) -> bool:
    """True iff e**k is nonzero for every k >= 1.

    Checking k <= 2 suffices: write e with closing block P and opening
    block M.  If e*e != 0 the boundary product M*P reduces cleanly to a
    remainder R that is the identity, purely closing, or purely opening;
    then e**k = P * R**(k-1) * M involves no further boundary and stays
    nonzero for all k.
    """
    return not e.is_zero and not mul(e, e).is_zero


def multiplier_class(e: MonoidElement) -> str:
    """Sign class of an element: zero, neutral, negative, positive, mixed.

    Purely opening elements are negative, purely closing ones positive,
    mirroring the sign carried by the generators.
    """
    if e.is_zero:
        return "zero"
    if e.is_identity:
        return "neutral"
    if e.plus and not e.minus:
        return "positive"
    if e.minus and not e.plus:
        return "negative"
    return "mixed"
