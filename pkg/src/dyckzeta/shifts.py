"""Subshift family specifications and brute-force ground-truth oracles.

Each spec describes one family: the plain bracket (Dyck) shift, its
neutral-symbol (Motzkin) extension, the carrier-graph construction that
attaches bracket loops to a distinguished vertex of a labeled graph, and
the word-exclusion families derived from these.  The oracles enumerate
admissible words and periodic points exactly, by depth-first search with
prefix pruning; they are the ground truth the closed forms are verified
against.

Periodic points are decided by a finite criterion equivalent to "every
power of the word is admissible":

  (a) the monoid image e of the word satisfies e != 0 and e*e != 0,
      which forces every e**k nonzero;
  (b) for carrier-graph families, the relation of vertex pairs joined by
      a path labeled by the word must contain a directed cycle - powers
      of the relation are the relations of powers of the word, and a
      finite relation has all powers nonempty iff its digraph has a
      cycle;
  (c) every factor of length <= F of the m-fold repetition avoids the
      finite forbidden list, where F is the longest forbidden word and
      m = ceil(F/len(word)) + 1, so all short factors of the periodic
      repetition are covered.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, NamedTuple, Sequence

from .graphs import (
    LabeledGraph,
    Lbl,
    adjacency,
    compose_relation,
    identity_relation,
    is_irreducible,
    is_right_resolving,
    label_steps,
    relation_has_cycle,
)
from .monoid import MINUS, PLUS, MonoidElement, ONE, mul

_allow_small_alphabet = False


class _SmallAlphabetOverride:
    """Debug-only escape hatch: permits one-letter alphabets so that the
    oracles can be unit-tested on tiny cases."""

    def __enter__(self):
        global _allow_small_alphabet
        self._saved = _allow_small_alphabet
        _allow_small_alphabet = True
        return self

    def __exit__(self, *exc):
        global _allow_small_alphabet
        _allow_small_alphabet = self._saved
        return False


def small_alphabet_override() -> _SmallAlphabetOverride:
    return _SmallAlphabetOverride()


class SpecError(ValueError):
    pass


class Br(NamedTuple):
    """A bracket symbol: sign MINUS/PLUS, letter 1..N, copy index."""

    sign: int
    letter: int
    copy: int = 1


NEUTRAL = Lbl("1")


def symbol_str(sym) -> str:
    if isinstance(sym, Br):
        letter = chr(ord("a") + sym.letter - 1) if sym.letter <= 26 else f"g{sym.letter}"
        tag = "-" if sym.sign == MINUS else "+"
        suffix = f"#{sym.copy}" if sym.copy != 1 else ""
        return f"{letter}({tag}){suffix}"
    if isinstance(sym, Lbl):
        return sym.name
    return str(sym)


def _check_letters(n: int) -> None:
    if n < 2 and not _allow_small_alphabet:
        raise SpecError(f"the letter alphabet needs at least 2 letters, got {n}")
    if n < 1:
        raise SpecError("the letter alphabet cannot be empty")


def as_subset_map(mapping: Mapping[int, Iterable[int]] | Sequence[Iterable[int]],
                  size: int, universe: int) -> tuple[frozenset[int], ...]:
    """Normalize a {index: subset} mapping (1-based, total on 1..size,
    values within 1..universe, all nonempty) to a tuple of frozensets."""
    if isinstance(mapping, Mapping):
        items = {int(k): v for k, v in mapping.items()}
    else:
        items = {i + 1: v for i, v in enumerate(mapping)}
    if set(items) != set(range(1, size + 1)):
        raise SpecError(f"mapping must cover exactly 1..{size}, got keys {sorted(items)}")
    out = []
    for i in range(1, size + 1):
        vals = frozenset(int(v) for v in items[i])
        if not vals:
            raise SpecError(f"the subset assigned to {i} is empty")
        if not all(1 <= v <= universe for v in vals):
            raise SpecError(f"subset for {i} leaves the range 1..{universe}")
        out.append(vals)
    return tuple(out)


@dataclass(frozen=True)
class Dyck:
    """Bracket shift on n letter pairs: words with nonzero monoid product."""

    n: int

    def __post_init__(self) -> None:
        _check_letters(self.n)


@dataclass(frozen=True)
class Motzkin:
    """Bracket shift with one extra neutral symbol mapped to the identity."""

    n: int

    def __post_init__(self) -> None:
        _check_letters(self.n)


@dataclass(frozen=True)
class GraphBrackets:
    """Carrier-graph construction: a right-resolving labeled graph with a
    distinguished vertex, plus k_minus[g]/k_plus[g] bracket loops per
    letter attached there.  Carrier symbols act as the monoid identity;
    loop symbols act as their bracket generators."""

    n: int
    graph: LabeledGraph
    k_minus: tuple[int, ...]
    k_plus: tuple[int, ...]

    def __post_init__(self) -> None:
        _check_letters(self.n)
        if len(self.k_minus) != self.n or len(self.k_plus) != self.n:
            raise SpecError("loop counts must list one entry per letter")
        if any(k < 1 for k in self.k_minus + self.k_plus):
            raise SpecError("loop counts must be >= 1")
        if self.graph.distinguished is None:
            raise SpecError("the carrier graph needs a distinguished vertex")
        if not is_right_resolving(self.graph):
            raise SpecError("the carrier labeling must be right-resolving")
        if not self.graph.is_degenerate:
            a = adjacency(self.graph)
            if not is_irreducible(a):
                raise SpecError("a nondegenerate carrier must be irreducible")

    @property
    def total_minus(self) -> int:
        return sum(self.k_minus)

    @property
    def total_plus(self) -> int:
        return sum(self.k_plus)

    @property
    def pair_weight(self) -> int:
        return sum(m * p for m, p in zip(self.k_minus, self.k_plus))


@dataclass(frozen=True)
class PsiExclusion:
    """Bracket shift minus the length-two closing pairs b(+)a(+) whose
    leading letter b is not in psi(a)."""

    n: int
    psi: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        _check_letters(self.n)
        if len(self.psi) != self.n:
            raise SpecError("psi must assign a subset to every letter")
        for i, s in enumerate(self.psi, start=1):
            if not s:
                raise SpecError(f"psi({i}) is empty")
            if not all(1 <= v <= self.n for v in s):
                raise SpecError(f"psi({i}) leaves the letter range")

    @property
    def uniform_size(self) -> int | None:
        sizes = {len(s) for s in self.psi}
        return sizes.pop() if len(sizes) == 1 else None


@dataclass(frozen=True)
class TripleExclusion:
    """Bracket shift minus the closing triples with distinct outer letters."""

    n: int

    def __post_init__(self) -> None:
        _check_letters(self.n)


@dataclass(frozen=True)
class MotzkinRestricted:
    """Neutral-symbol bracket shift minus every closing-then-bracket pair
    and minus the two length-three neutral patterns around a closing."""

    n: int

    def __post_init__(self) -> None:
        _check_letters(self.n)


@dataclass(frozen=True)
class XiExclusion:
    """Loop-alphabet exclusion family: j loop symbols plus n bracket
    pairs, with transition constraints xi_omega between loops across a
    closing bracket and xi_gamma after a matched bracket pair."""

    n: int
    j: int
    xi_omega: tuple[frozenset[int], ...]
    xi_gamma: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        _check_letters(self.n)
        if self.j < 1:
            raise SpecError("need at least one loop symbol")
        if len(self.xi_omega) != self.j:
            raise SpecError("xi_omega must assign a subset to every loop symbol")
        if len(self.xi_gamma) != self.n:
            raise SpecError("xi_gamma must assign a subset to every letter")
        for name, m, size in (("xi_omega", self.xi_omega, self.j),
                              ("xi_gamma", self.xi_gamma, self.n)):
            for i, s in enumerate(m, start=1):
                if not s:
                    raise SpecError(f"{name}({i}) is empty")
                if not all(1 <= v <= self.j for v in s):
                    raise SpecError(f"{name}({i}) leaves the loop range 1..{self.j}")
        if len({len(s) for s in self.xi_omega}) != 1:
            raise SpecError("xi_omega must have constant subset size")
        if len({len(s) for s in self.xi_gamma}) != 1:
            raise SpecError("xi_gamma must have constant subset size")
        if not is_irreducible(self.transition_matrix):
            raise SpecError("the xi_omega transition matrix must be irreducible")

    @property
    def k(self) -> int:
        return len(self.xi_omega[0])

    @property
    def l(self) -> int:
        return len(self.xi_gamma[0])

    @property
    def transition_matrix(self) -> tuple[tuple[int, ...], ...]:
        return tuple(
            tuple(1 if w2 + 1 in self.xi_omega[w1] else 0 for w2 in range(self.j))
            for w1 in range(self.j)
        )


ShiftSpec = (
    Dyck | Motzkin | GraphBrackets | PsiExclusion | TripleExclusion
    | MotzkinRestricted | XiExclusion
)


def loop_symbol(j: int) -> Lbl:
    return Lbl(f"w{j}")


def alphabet(spec: ShiftSpec) -> list:
    """Deterministic symbol order for the family."""
    minus = [Br(MINUS, g) for g in range(1, spec.n + 1)]
    plus = [Br(PLUS, g) for g in range(1, spec.n + 1)]
    if isinstance(spec, Dyck) or isinstance(spec, (PsiExclusion, TripleExclusion)):
        return minus + plus
    if isinstance(spec, (Motzkin, MotzkinRestricted)):
        return minus + plus + [NEUTRAL]
    if isinstance(spec, XiExclusion):
        return [loop_symbol(j) for j in range(1, spec.j + 1)] + minus + plus
    if isinstance(spec, GraphBrackets):
        loops = []
        for g in range(1, spec.n + 1):
            loops.extend(Br(MINUS, g, k) for k in range(1, spec.k_minus[g - 1] + 1))
        for g in range(1, spec.n + 1):
            loops.extend(Br(PLUS, g, k) for k in range(1, spec.k_plus[g - 1] + 1))
        return spec.graph.labels() + loops
    raise SpecError(f"unknown spec {spec!r}")


def forbidden_words(spec: ShiftSpec) -> list[tuple]:
    """Fully expanded finite forbidden list (empty for the base families)."""
    n = spec.n
    if isinstance(spec, PsiExclusion):
        return [
            (Br(PLUS, b), Br(PLUS, a))
            for a in range(1, n + 1)
            for b in range(1, n + 1)
            if b not in spec.psi[a - 1]
        ]
    if isinstance(spec, TripleExclusion):
        return [
            (Br(PLUS, g1), Br(PLUS, g), Br(PLUS, g2))
            for g in range(1, n + 1)
            for g1 in range(1, n + 1)
            for g2 in range(1, n + 1)
            if g1 != g2
        ]
    if isinstance(spec, MotzkinRestricted):
        out: list[tuple] = []
        for g in range(1, n + 1):
            for g2 in range(1, n + 1):
                out.append((Br(PLUS, g), Br(MINUS, g2)))
                out.append((Br(PLUS, g), Br(PLUS, g2)))
        for g in range(1, n + 1):
            out.append((NEUTRAL, NEUTRAL, Br(PLUS, g)))
            out.append((Br(MINUS, g), NEUTRAL, Br(PLUS, g)))
        return out
    if isinstance(spec, XiExclusion):
        out = []
        loops = [loop_symbol(j) for j in range(1, spec.j + 1)]
        for g in range(1, n + 1):
            for g2 in range(1, n + 1):
                out.append((Br(PLUS, g), Br(MINUS, g2)))
                out.append((Br(PLUS, g), Br(PLUS, g2)))
        for w1 in loops:
            for w2 in loops:
                for g in range(1, n + 1):
                    out.append((w1, w2, Br(PLUS, g)))
        for g in range(1, n + 1):
            for w in loops:
                out.append((Br(MINUS, g), w, Br(PLUS, g)))
        for j1 in range(1, spec.j + 1):
            for g in range(1, n + 1):
                for j2 in range(1, spec.j + 1):
                    if j2 not in spec.xi_omega[j1 - 1]:
                        out.append((loop_symbol(j1), Br(PLUS, g), loop_symbol(j2)))
        for g in range(1, n + 1):
            for j2 in range(1, spec.j + 1):
                if j2 not in spec.xi_gamma[g - 1]:
                    out.append((Br(MINUS, g), Br(PLUS, g), loop_symbol(j2)))
        return out
    return []


class _Engine(NamedTuple):
    alphabet: tuple
    phi: dict
    steps: dict | None
    num_vertices: int
    forbidden_by_len: dict[int, frozenset[tuple]]
    fmax: int


@lru_cache(maxsize=None)
def _engine(spec: ShiftSpec) -> _Engine:
    syms = tuple(alphabet(spec))
    phi = {}
    for s in syms:
        if isinstance(s, Br):
            phi[s] = MonoidElement(plus=(s.letter,)) if s.sign == PLUS else MonoidElement(minus=(s.letter,))
        else:
            phi[s] = ONE
    steps = None
    nv = 1
    if isinstance(spec, GraphBrackets) and not spec.graph.is_degenerate:
        steps = dict(label_steps(spec.graph))
        v = spec.graph.distinguished
        loop_step = {v: (v,)}
        for s in syms:
            if isinstance(s, Br):
                steps[s] = loop_step
        nv = spec.graph.num_vertices
    forb = forbidden_words(spec)
    by_len: dict[int, set[tuple]] = {}
    for f in forb:
        by_len.setdefault(len(f), set()).add(f)
    fmax = max(by_len) if by_len else 0
    return _Engine(
        alphabet=syms,
        phi=phi,
        steps=steps,
        num_vertices=nv,
        forbidden_by_len={k: frozenset(v) for k, v in by_len.items()},
        fmax=fmax,
    )


def _ends_forbidden(tail: tuple, by_len: dict[int, frozenset[tuple]]) -> bool:
    for length, words in by_len.items():
        if len(tail) >= length and tail[-length:] in words:
            return True
    return False


def _scan_forbidden(word: Sequence, by_len: dict[int, frozenset[tuple]]) -> bool:
    w = tuple(word)
    for length, words in by_len.items():
        for i in range(len(w) - length + 1):
            if w[i : i + length] in words:
                return True
    return False


def _check_symbols(eng: _Engine, word: Sequence) -> None:
    known = set(eng.alphabet)
    for s in word:
        if s not in known:
            raise SpecError(f"symbol {symbol_str(s)} is not in the alphabet")


def is_admissible(spec: ShiftSpec, word: Sequence) -> bool:
    """A word is admissible iff its monoid image is nonzero, it labels a
    path of the carrier graph (where there is one), and it contains no
    forbidden factor."""
    eng = _engine(spec)
    _check_symbols(eng, word)
    acc = ONE
    for s in word:
        acc = mul(acc, eng.phi[s])
        if acc.is_zero:
            return False
    if eng.steps is not None:
        rel = identity_relation(eng.num_vertices)
        for s in word:
            rel = compose_relation(rel, eng.steps[s])
            if not rel:
                return False
    if eng.fmax and _scan_forbidden(word, eng.forbidden_by_len):
        return False
    return True


def count_words(spec: ShiftSpec, length: int) -> int:
    """Number of admissible words of exactly the given length, by pruned
    depth-first extension (a prefix that fails is abandoned)."""
    if length < 1:
        raise SpecError("word length must be >= 1")
    eng = _engine(spec)
    keep = eng.fmax - 1 if eng.fmax else 0

    def rec(depth: int, prod: MonoidElement, rel, tail: tuple) -> int:
        if depth == length:
            return 1
        total = 0
        for s in eng.alphabet:
            p2 = mul(prod, eng.phi[s])
            if p2.is_zero:
                continue
            if rel is not None:
                r2 = compose_relation(rel, eng.steps[s])
                if not r2:
                    continue
            else:
                r2 = None
            if eng.fmax:
                probe = tail + (s,)
                if _ends_forbidden(probe, eng.forbidden_by_len):
                    continue
                t2 = probe[-keep:] if keep else ()
            else:
                t2 = ()
            total += rec(depth + 1, p2, r2, t2)
        return total

    rel0 = identity_relation(eng.num_vertices) if eng.steps is not None else None
    return rec(0, ONE, rel0, ())


def _wrap_clean(word: tuple, eng: _Engine) -> bool:
    if not eng.fmax:
        return True
    m = math.ceil(eng.fmax / len(word)) + 1
    return not _scan_forbidden(word * m, eng.forbidden_by_len)


def is_periodic_point(spec: ShiftSpec, word: Sequence) -> bool:
    """Whether the bi-infinite repetition of ``word`` lies in the shift;
    see the module docstring for the finite criterion used."""
    w = tuple(word)
    if not w:
        raise SpecError("a periodic word must be nonempty")
    eng = _engine(spec)
    _check_symbols(eng, w)
    prod = ONE
    for s in w:
        prod = mul(prod, eng.phi[s])
        if prod.is_zero:
            return False
    if mul(prod, prod).is_zero:
        return False
    if eng.steps is not None:
        rel = identity_relation(eng.num_vertices)
        for s in w:
            rel = compose_relation(rel, eng.steps[s])
            if not rel:
                return False
        if not relation_has_cycle(rel, eng.num_vertices):
            return False
    return _wrap_clean(w, eng)


def count_periodic(spec: ShiftSpec, length: int) -> int:
    """card of the set of points fixed by the length-th shift power: every
    word of that length whose repetition is admissible counts, including
    repetitions of shorter words."""
    if length < 1:
        raise SpecError("period must be >= 1")
    eng = _engine(spec)
    keep = eng.fmax - 1 if eng.fmax else 0

    def rec(depth: int, prod: MonoidElement, rel, tail: tuple, word: tuple) -> int:
        if depth == length:
            if mul(prod, prod).is_zero:
                return 0
            if rel is not None and not relation_has_cycle(rel, eng.num_vertices):
                return 0
            return 1 if _wrap_clean(word, eng) else 0
        total = 0
        for s in eng.alphabet:
            p2 = mul(prod, eng.phi[s])
            if p2.is_zero:
                continue
            if rel is not None:
                r2 = compose_relation(rel, eng.steps[s])
                if not r2:
                    continue
            else:
                r2 = None
            if eng.fmax:
                probe = tail + (s,)
                if _ends_forbidden(probe, eng.forbidden_by_len):
                    continue
                t2 = probe[-keep:] if keep else ()
            else:
                t2 = ()
            total += rec(depth + 1, p2, r2, t2, word + (s,))
        return total

    rel0 = identity_relation(eng.num_vertices) if eng.steps is not None else None
    return rec(0, ONE, rel0, (), ())


def periodic_counts(spec: ShiftSpec, n_max: int) -> list[int]:
    return [count_periodic(spec, n) for n in range(1, n_max + 1)]


def word_counts_upto(spec: ShiftSpec, n_max: int) -> list[int]:
    """Admissible-word counts for every length 1..n_max in one pass over
    the prefix tree."""
    if n_max < 1:
        raise SpecError("need n_max >= 1")
    eng = _engine(spec)
    keep = eng.fmax - 1 if eng.fmax else 0
    counts = [0] * (n_max + 1)

    def rec(depth: int, prod: MonoidElement, rel, tail: tuple) -> None:
        counts[depth] += 1
        if depth == n_max:
            return
        for s in eng.alphabet:
            p2 = mul(prod, eng.phi[s])
            if p2.is_zero:
                continue
            if rel is not None:
                r2 = compose_relation(rel, eng.steps[s])
                if not r2:
                    continue
            else:
                r2 = None
            if eng.fmax:
                probe = tail + (s,)
                if _ends_forbidden(probe, eng.forbidden_by_len):
                    continue
                t2 = probe[-keep:] if keep else ()
            else:
                t2 = ()
            rec(depth + 1, p2, r2, t2)

    rel0 = identity_relation(eng.num_vertices) if eng.steps is not None else None
    rec(0, ONE, rel0, ())
    return counts[1:]


class GrowthEstimate(NamedTuple):
    value: float
    sequence: tuple[float, ...]


def entropy_estimate(spec: ShiftSpec, n_max: int) -> GrowthEstimate:
    """Growth-rate estimate (1/n) log #words at n = n_max, with the whole
    sequence up to n_max reported for monotonicity inspection."""
    if n_max < 2:
        raise SpecError("the growth estimate needs n_max >= 2")
    counts = word_counts_upto(spec, n_max)
    seq = tuple(math.log(c) / n for n, c in enumerate(counts, start=1))
    return GrowthEstimate(value=seq[-1], sequence=seq)
