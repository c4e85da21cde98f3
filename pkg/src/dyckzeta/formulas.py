"""Closed-form generating functions and zeta series for the catalog.

Every zeta function here is evaluated as an exact truncated power series,
so it can be compared coefficient-by-coefficient against the enumeration
oracles in `shifts`.  The comparison helper at the bottom implements the
discrepancy policy: a mismatch produces a structured report rather than
an assertion, because the closed form is the object under test and the
oracle is ground truth.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .graphs import (
    LabeledGraph,
    build_degenerate,
    first_return_gf,
    matrix_period,
    presented_shift_zeta,
    q_polynomial,
)
from .monoid import MINUS, PLUS
from .series import (
    Polynomial,
    PowerSeries,
    counts_from_zeta,
    det_poly_matrix,
    identity_minus_adjacency_z,
)
from .shifts import (
    Br,
    Dyck,
    GraphBrackets,
    Motzkin,
    MotzkinRestricted,
    PsiExclusion,
    ShiftSpec,
    TripleExclusion,
    XiExclusion,
    count_periodic,
    is_admissible,
)


class FormulaError(ValueError):
    pass


class NoClosedForm(FormulaError):
    """The family has no closed-form zeta; use the oracle route."""


class ClassificationError(FormulaError):
    pass


class CapabilityError(FormulaError):
    pass


class DomainError(FormulaError):
    pass


# ---------------------------------------------------------------------------
# rule-map classification


@dataclass(frozen=True)
class PsiClassification:
    """Partition of the letters induced by a rule map psi.

    ``targets_all`` holds letters whose target set is the whole alphabet,
    ``complement_like`` the closure of letters whose target set omits
    exactly themselves, ``self_like`` the closure of letters that target
    only themselves, and ``remaining`` the rest.  ``classes`` partitions
    ``remaining``; the k_* tuples give, per class, how many targets of a
    representative fall into each part (well-defined by construction).
    """

    n: int
    targets_all: frozenset[int]
    complement_like: frozenset[int]
    self_like: frozenset[int]
    remaining: frozenset[int]
    classes: tuple[frozenset[int], ...]
    symmetries: tuple[tuple[int, ...], ...]
    k_all: tuple[int, ...]
    k_complement: tuple[int, ...]
    k_self: tuple[int, ...]
    k_cross: tuple[tuple[int, ...], ...]


def _psi_tuple(n: int, psi) -> tuple[frozenset[int], ...]:
    from .shifts import as_subset_map

    if isinstance(psi, tuple) and all(isinstance(s, frozenset) for s in psi):
        return psi
    return as_subset_map(psi, n, n)


def psi_symmetries(n: int, psi) -> list[tuple[int, ...]]:
    """All permutations p of the letters with p(psi(g)) = psi(p(g))."""
    pm = _psi_tuple(n, psi)
    out = []
    for perm in itertools.permutations(range(1, n + 1)):
        if all(
            frozenset(perm[b - 1] for b in pm[g - 1]) == pm[perm[g - 1] - 1]
            for g in range(1, n + 1)
        ):
            out.append(perm)
    return out


def classify_psi(n: int, psi) -> PsiClassification:
    """Classify the letters under the equivalence generated by equal rule
    images and by symmetry orbits; exhaustive symmetry search, so the
    alphabet is capped at 8 letters."""
    if n > 8:
        raise CapabilityError("classification searches all permutations; n <= 8 only")
    pm = _psi_tuple(n, psi)
    syms = psi_symmetries(n, pm)

    parent = list(range(n + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a: int, b: int) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            if pm[a - 1] == pm[b - 1]:
                union(a, b)
    for perm in syms:
        for g in range(1, n + 1):
            union(g, perm[g - 1])

    classes_by_root: dict[int, set[int]] = {}
    for g in range(1, n + 1):
        classes_by_root.setdefault(find(g), set()).add(g)
    all_classes = [frozenset(c) for c in classes_by_root.values()]

    full = frozenset(range(1, n + 1))
    targets_all = frozenset(g for g in full if pm[g - 1] == full)
    comp_seeds = {g for g in full if pm[g - 1] == full - {g}}
    self_seeds = {g for g in full if pm[g - 1] == frozenset({g})}

    def closure(seeds: set[int]) -> frozenset[int]:
        out: set[int] = set()
        for c in all_classes:
            if c & seeds:
                out |= c
        return frozenset(out)

    if targets_all and closure(set(targets_all)) != targets_all:
        raise ClassificationError("letters targeting everything must form one class")
    complement_like = closure(comp_seeds)
    self_like = closure(self_seeds)
    if complement_like & self_like:
        raise ClassificationError(
            "a class mixes complement-type and self-type seed letters; "
            "the four-part classification does not apply"
        )
    remaining = full - targets_all - complement_like - self_like
    classes = tuple(sorted((c for c in all_classes if c <= remaining), key=min))

    def constant_over(cls: frozenset[int], part) -> int:
        vals = {len(pm[a - 1] & part) for a in cls}
        if len(vals) != 1:
            raise ClassificationError(
                f"intersection count is not constant over class {sorted(cls)}"
            )
        return vals.pop()

    k_all = tuple(constant_over(c, targets_all) for c in classes)
    k_complement = tuple(constant_over(c, complement_like) for c in classes)
    k_self = tuple(constant_over(c, self_like) for c in classes)
    k_cross = tuple(
        tuple(constant_over(a, b) for b in classes) for a in classes
    )
    return PsiClassification(
        n=n,
        targets_all=targets_all,
        complement_like=complement_like,
        self_like=self_like,
        remaining=frozenset(remaining),
        classes=classes,
        symmetries=tuple(syms),
        k_all=k_all,
        k_complement=k_complement,
        k_self=k_self,
        k_cross=k_cross,
    )


# ---------------------------------------------------------------------------
# the per-letter code system and its series solution


def solve_psi_system(n: int, psi, order: int):
    """Per-letter code generating functions for the pair-exclusion shift.

    Solves g_a = z^2 (1 + (1/xi) * sum over b in psi(a) of g_b) with
    xi = 1 - sum of all g_b, by coefficientwise fixed-point iteration
    from g == 0.  Each sweep fixes at least one further degree, so
    order+1 sweeps reach a fixed point through the truncation order.
    Returns (per-letter series tuple, xi series).
    """
    pm = _psi_tuple(n, psi)
    one = PowerSeries.one(order)
    z2 = PowerSeries.x(order) ** 2
    gs = [PowerSeries.zero(order)] * n
    for _ in range(order + 1):
        xi = one
        for g in gs:
            xi = xi - g
        inv = one / xi
        nxt = []
        for a in range(1, n + 1):
            tot = PowerSeries.zero(order)
            for b in pm[a - 1]:
                tot = tot + gs[b - 1]
            nxt.append(z2 * (one + inv * tot))
        gs = nxt
    xi = one
    for g in gs:
        xi = xi - g
    return tuple(gs), xi


def psi_system_residuals(n: int, psi, gs: Sequence[PowerSeries], xi: PowerSeries):
    """Residual series of the defining equations; all zero at a solution."""
    pm = _psi_tuple(n, psi)
    order = xi.order
    one = PowerSeries.one(order)
    z2 = PowerSeries.x(order) ** 2
    inv = one / xi
    out = []
    for a in range(1, n + 1):
        tot = PowerSeries.zero(order)
        for b in pm[a - 1]:
            tot = tot + gs[b - 1]
        out.append(gs[a - 1] - z2 * (one + inv * tot))
    return out


def uniform_code_gf(n: int, k: int, order: int) -> PowerSeries:
    """Per-letter code series when every rule set has the same size k."""
    if not 1 <= k <= n:
        raise FormulaError(f"need 1 <= k <= n, got k={k}, n={n}")
    one = PowerSeries.one(order)
    z2 = PowerSeries.x(order) ** 2
    base = one + (n - k) * z2
    return (base - (base * base - 4 * n * z2).sqrt()) * Fraction(1, 2 * n)


# ---------------------------------------------------------------------------
# code-word transport between letters (the uniform-rule bijection)


def _chi(psi, a: int, b: int):
    sa, sb = sorted(psi[a - 1]), sorted(psi[b - 1])
    table = dict(zip(sa, sb))
    return lambda g: table[g]


def _split_matched(word: tuple) -> list[tuple]:
    parts = []
    h = 0
    start = 0
    for i, s in enumerate(word):
        h += 1 if s.sign == MINUS else -1
        if h < 0:
            raise DomainError("interior dips below its base height")
        if h == 0:
            parts.append(word[start : i + 1])
            start = i + 1
    if start != len(word):
        raise DomainError("interior does not close")
    return parts


def transport_code_word(spec: PsiExclusion, alpha: int, beta: int, word: Sequence) -> tuple:
    """Length-preserving transport of a code word from the family rooted
    at ``alpha`` to the family rooted at ``beta``.

    Requires a uniform rule map.  The word must be admissible for the
    pair-exclusion shift, start with the opening bracket of ``alpha``,
    have identity monoid product, and be indecomposable.  The transport
    keeps all inner code factors except the last one, which is rewritten
    recursively under the order-preserving matching of the two rule sets;
    on each fixed length this is a bijection between the two families.
    """
    if spec.uniform_size is None:
        raise FormulaError("transport needs a uniform rule map")
    w = tuple(word)
    if not w or not all(isinstance(s, Br) for s in w):
        raise DomainError("expected a nonempty bracket word")
    if w[0] != Br(MINUS, alpha):
        raise DomainError(f"word must start with the opening bracket of {alpha}")
    if not is_admissible(spec, w):
        raise DomainError("word is not admissible for the pair-exclusion shift")
    heights = list(itertools.accumulate(1 if s.sign == MINUS else -1 for s in w))
    if heights[-1] != 0 or any(h <= 0 for h in heights[:-1]):
        raise DomainError("word is not an indecomposable matched code word")

    def go(a: int, b: int, d: tuple) -> tuple:
        if len(d) == 2:
            return (Br(MINUS, b), Br(PLUS, b))
        parts = _split_matched(d[1:-1])
        last = parts[-1]
        g = last[0].letter
        g2 = _chi(spec.psi, a, b)(g)
        mid: tuple = ()
        for p in parts[:-1]:
            mid += p
        return (Br(MINUS, b),) + mid + go(g, g2, last) + (Br(PLUS, b),)

    return go(alpha, beta, w)


# ---------------------------------------------------------------------------
# carrier-graph construction: component series and assembled zeta


def gf_matched_code(pair_weight: int, g_return: PowerSeries) -> PowerSeries:
    """Series of the matched code over a carrier with return series
    ``g_return``: (1 - sqrt(1 - 4 K g^2 z^2)) / 2 for K = pair_weight."""
    if pair_weight < 1:
        raise FormulaError("the construction needs at least one bracket pair")
    order = g_return.order
    u = g_return * PowerSeries.x(order)
    one = PowerSeries.one(order)
    return (one - (one - 4 * pair_weight * u * u).sqrt()) * Fraction(1, 2)


def gf_one_sided_code(side_total: int, g_return: PowerSeries,
                      g_matched: PowerSeries) -> PowerSeries:
    """Matched code extended by a run of same-signed brackets on one side:
    g_matched / (1 - side_total * g_return * z)."""
    order = g_return.order
    u = g_return * PowerSeries.x(order)
    return g_matched / (PowerSeries.one(order) - side_total * u)


def carrier_zeta(graph: LabeledGraph, order: int) -> PowerSeries:
    """Zeta series of the shift presented by the carrier graph.

    Catalog rule: the degenerate carrier contributes 1; a bijectively
    labeled carrier is its own edge shift with zeta 1/det(1 - A z); any
    other carrier is handled by brute-force periodic counts of the
    label-sequence shift.
    """
    if graph.is_degenerate:
        return PowerSeries.one(order)
    if len(graph.labels()) == len(graph.edges):
        from .graphs import adjacency

        det = det_poly_matrix(identity_minus_adjacency_z(adjacency(graph)))
        return PowerSeries.one(order) / det.to_series(order)
    return presented_shift_zeta(graph, order)


def zeta_graph_brackets(spec: GraphBrackets, order: int,
                        zeta_carrier: PowerSeries | None = None) -> PowerSeries:
    """Assembled zeta of the carrier-plus-bracket-loops construction."""
    zc = carrier_zeta(spec.graph, order) if zeta_carrier is None else zeta_carrier
    g_return = first_return_gf(spec.graph, order)
    one = PowerSeries.one(order)
    u = g_return * PowerSeries.x(order)
    s = (one - 4 * spec.pair_weight * u * u).sqrt()
    num = 2 * zc * (one + s)
    den = (one - 2 * spec.total_minus * u + s) * (one - 2 * spec.total_plus * u + s)
    return num / den


def dyck_graph_spec(n: int) -> GraphBrackets:
    """The plain bracket shift as the degenerate case of the construction."""
    ones = (1,) * n
    return GraphBrackets(n, build_degenerate(), ones, ones)


def zeta_bouquet(n: int, circles: int, circle_len: int, order: int) -> PowerSeries:
    """Closed form over a rosette carrier of ``circles`` cycles of length
    ``circle_len`` with one bracket pair per letter."""
    if n < 2:
        raise FormulaError("need at least two letters")
    one = PowerSeries.one(order)
    z = PowerSeries.x(order)
    base = one - circles * z**circle_len
    s = (base * base - 4 * n * z * z).sqrt()
    return 2 * (base + s) / ((base - 2 * n * z + s) ** 2)


def zeta_schroeder(n: int, order: int) -> PowerSeries:
    """Closed form for the even-carrier construction rooted at the state
    with the loop (the Schroeder shift)."""
    if n < 2:
        raise FormulaError("need at least two letters")
    one = PowerSeries.one(order)
    z = PowerSeries.x(order)
    base = one - z - z * z
    s = (base * base - 4 * n * z * z).sqrt()
    num = 2 * (one + z) * (base + s)
    den = (one - (2 * n + 1) * z - z * z + s) ** 2
    return num / den


def zeta_even_odd(n: int, order: int) -> PowerSeries:
    """Closed form for the even-carrier construction rooted at the state
    without the loop."""
    if n < 2:
        raise FormulaError("need at least two letters")
    one = PowerSeries.one(order)
    z = PowerSeries.x(order)
    base = one - z - z * z
    s = (base * base - 4 * n * (z * (one - z)) ** 2).sqrt()
    num = 2 * (one + z) * (base + s)
    den = (one - (2 * n + 1) * z + (2 * n - 1) * z * z + s) ** 2
    return num / den


# ---------------------------------------------------------------------------
# exclusion families


def transition_matrix_from_psi(n: int, psi) -> tuple[tuple[int, ...], ...]:
    """0/1 matrix with entry (b, a) = 1 iff b is in psi(a)."""
    pm = _psi_tuple(n, psi)
    return tuple(
        tuple(1 if b + 1 in pm[a] else 0 for a in range(n)) for b in range(n)
    )


def zeta_psi_uniform(n: int, k: int, transition: Sequence[Sequence[int]],
                     order: int) -> PowerSeries:
    """Zeta of the pair-exclusion shift with a uniform rule map of size k,
    assembled from the quadratic code series and det(1 - A z) of the
    rule transition matrix."""
    if not 1 <= k <= n:
        raise FormulaError(f"need 1 <= k <= n, got k={k}")
    one = PowerSeries.one(order)
    z = PowerSeries.x(order)
    z2 = z * z
    base = one + (n - k) * z2
    g = (base - (base * base - 4 * n * z2).sqrt()) * Fraction(1, 2)
    det = det_poly_matrix(identity_minus_adjacency_z(transition)).to_series(order)
    num = (one - k * z) * (one - g)
    den = det * (one - n * z - g) * (one - k * z - g)
    return num / den


def zeta_triple_exclusion(n: int, order: int) -> PowerSeries:
    """Zeta of the bracket shift minus closing triples with distinct
    outer letters.

    The periodic points split into the full shift on opening brackets,
    the all-closing points (period two, since any three consecutive
    closings force equal outer letters), the coded system of
    opening-run-plus-matched-block words, and the coded system of blocks
    made of a matched concatenation followed by one maximal run of
    unmatched closings (whose letters are forced two-periodically by the
    triple rule, with a free letter only right after a two-letter matched
    block).  Assembling the four parts gives, with the matched-code
    series g = (1 + (n-1) z^2 - rho)/2,

      2 (1 - (n-1) z^2 + rho)
      -----------------------------------------------------------------
      (1 - 2nz - (n-1)z^2 + rho)(1 - 2z - (n-1)z^2 - 2n(n-1)z^3 + rho)
        * (1-z)^(n-1) (1-z^2)^(n(n-1)/2)
    """
    if n < 2:
        raise FormulaError("need at least two letters")
    one = PowerSeries.one(order)
    z = PowerSeries.x(order)
    z2 = z * z
    rho = ((one - (n + 1) * z2) ** 2 - 4 * n * n * z2 * z2).sqrt()
    num = 2 * (one - (n - 1) * z2 + rho)
    d1 = one - 2 * n * z - (n - 1) * z2 + rho
    d2 = one - 2 * z - (n - 1) * z2 - 2 * n * (n - 1) * z * z2 + rho
    tail = (one - z) ** (n - 1) * (one - z2) ** (n * (n - 1) // 2)
    return num / (d1 * d2 * tail)


def zeta_motzkin_restricted(n: int, order: int) -> PowerSeries:
    """Zeta of the neutral-symbol exclusion family; its code series is the
    root of a quadratic fixed by the square-root branch at 1."""
    if n < 2:
        raise FormulaError("need at least two letters")
    one = PowerSeries.one(order)
    z = PowerSeries.x(order)
    g = (one - z - ((one - z) * (one - z - 4 * n * z**3)).sqrt()) * Fraction(1, 2)
    num = one - z - g
    den = (one - (n + 1) * z - g) * ((one - n * z * z) * (one - z) - g)
    return num / den


def zeta_xi(spec: XiExclusion, order: int) -> PowerSeries:
    """Zeta of the loop-alphabet exclusion family, assembled from the
    cubic code series, the quotient polynomial of the loop transition
    matrix, and its period."""
    n, j, k, l = spec.n, spec.j, spec.k, spec.l
    a = spec.transition_matrix
    period = matrix_period(a)
    q = q_polynomial(a, k, period)
    one = PowerSeries.one(order)
    z = PowerSeries.x(order)
    z3 = z**3
    base = one - j * z + n * (l - k) * z3
    g = (base - (base * base - 4 * n * l * z3 * (one - j * z)).sqrt()) * Fraction(1, 2)
    num = one - j * z - g
    d1 = one - (j + n) * z - g
    d2 = (one - n * k * z * z) * (one - j * z) - g
    q_sub = q.compose_scaled(Fraction(n), 2).to_series(order)
    cyc = Polynomial.from_coeffs(
        [(n * k) ** (r // 2) if r % 2 == 0 else 0 for r in range(2 * period - 1)]
    ).to_series(order)
    return num / (d1 * d2 * q_sub * cyc)


def zeta_combiner(zeta_minus_side: PowerSeries, zeta_plus_side: PowerSeries,
                  zeta_overlap: PowerSeries, g_minus: PowerSeries,
                  g_matched: PowerSeries, g_plus: PowerSeries) -> PowerSeries:
    """Zeta of a shift whose periodic points split into two boundary
    shifts and three coded systems: the product of the boundary zetas and
    the one-sided code zetas, divided by the overlap zeta and the matched
    code zeta.  A coded system of a circular code with series g has zeta
    1/(1 - g)."""
    for g in (g_minus, g_matched, g_plus):
        if g.coef(0) != 0:
            raise FormulaError("code series must vanish at z = 0")
    for zt in (zeta_minus_side, zeta_plus_side, zeta_overlap):
        if zt.coef(0) != 1:
            raise FormulaError("zeta series must equal 1 at z = 0")
    one = PowerSeries.one(g_matched.order)
    num = zeta_minus_side * zeta_plus_side * (one - g_matched)
    den = zeta_overlap * (one - g_minus) * (one - g_plus)
    return num / den


# ---------------------------------------------------------------------------
# dispatch and differential verification


def closed_form_zeta(spec: ShiftSpec, order: int) -> PowerSeries:
    if isinstance(spec, Dyck):
        return zeta_graph_brackets(dyck_graph_spec(spec.n), order)
    if isinstance(spec, Motzkin):
        return zeta_bouquet(spec.n, 1, 1, order)
    if isinstance(spec, GraphBrackets):
        return zeta_graph_brackets(spec, order)
    if isinstance(spec, PsiExclusion):
        k = spec.uniform_size
        if k is None:
            raise NoClosedForm(
                "nonuniform rule maps have no closed-form zeta; "
                "use the enumeration oracle"
            )
        return zeta_psi_uniform(spec.n, k, transition_matrix_from_psi(spec.n, spec.psi), order)
    if isinstance(spec, TripleExclusion):
        return zeta_triple_exclusion(spec.n, order)
    if isinstance(spec, MotzkinRestricted):
        return zeta_motzkin_restricted(spec.n, order)
    if isinstance(spec, XiExclusion):
        return zeta_xi(spec, order)
    raise FormulaError(f"unknown spec {spec!r}")


@dataclass(frozen=True)
class VerifyRow:
    n: int
    formula: Fraction
    oracle: int

    @property
    def match(self) -> bool:
        return self.formula.denominator == 1 and int(self.formula) == self.oracle


@dataclass(frozen=True)
class VerifyReport:
    rows: tuple[VerifyRow, ...]

    @property
    def all_match(self) -> bool:
        return all(r.match for r in self.rows)

    def summary(self) -> str:
        lines = []
        for r in self.rows:
            flag = "ok" if r.match else "MISMATCH"
            lines.append(f"n={r.n}: formula={r.formula} oracle={r.oracle} {flag}")
        return "\n".join(lines)


def compare_with_oracle(spec: ShiftSpec, series: PowerSeries, max_n: int) -> VerifyReport:
    """Differential check of a closed-form zeta against brute-force
    periodic counts; returns the full per-n report either way."""
    if series.order < max_n:
        raise FormulaError(f"series order {series.order} below max_n {max_n}")
    formula_counts = counts_from_zeta(series)
    rows = tuple(
        VerifyRow(n=n, formula=formula_counts[n - 1], oracle=count_periodic(spec, n))
        for n in range(1, max_n + 1)
    )
    return VerifyReport(rows=rows)
