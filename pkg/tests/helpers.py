"""Shared brute-force helpers for the test suite.

Deliberately independent of the library's counting paths: expected
values are re-derived by plain enumeration so the fast implementations
are checked against a second opinion.
"""

from dyckzeta.monoid import MINUS, mul
from dyckzeta.shifts import Br


def enumerate_code_words(spec, root, length):
    """All admissible, indecomposable matched bracket words of the given
    length whose first symbol is the opening bracket of ``root``."""
    from dyckzeta.shifts import _engine

    eng = _engine(spec)
    out = []

    def rec(word, prod, height):
        if len(word) == length:
            if height == 0:
                out.append(word)
            return
        if height == 0 and word:
            return
        for sym in eng.alphabet:
            nxt = mul(prod, eng.phi[sym])
            if nxt.is_zero:
                continue
            h2 = height + (1 if sym.sign == MINUS else -1)
            if h2 < 0:
                continue
            cand = word + (sym,)
            if not _suffix_ok(cand, eng):
                continue
            rec(cand, nxt, h2)

    start = (Br(MINUS, root),)
    rec(start, eng.phi[start[0]], 1)
    return out


def _suffix_ok(word, eng):
    for length, words in eng.forbidden_by_len.items():
        if len(word) >= length and word[-length:] in words:
            return False
    return True
