"""Finite labeled directed graphs and their counting series.

Vertices are dense indices 0..V-1.  Labels are opaque hashable symbols;
the catalog builders label edges with distinct `Lbl` names where the
construction wants a bijective labeling.  Graphs are immutable after
construction and all queries are pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, NamedTuple, Sequence

from .series import (
    Polynomial,
    PowerSeries,
    det_poly_matrix,
    identity_minus_adjacency_z,
    zeta_from_counts,
)


class GraphError(ValueError):
    pass


class Lbl(NamedTuple):
    """An edge-label symbol of a carrier graph."""

    name: str


@dataclass(frozen=True)
class LabeledGraph:
    num_vertices: int
    edges: tuple[tuple[int, int, object], ...]
    distinguished: int | None = None

    def __post_init__(self) -> None:
        if self.num_vertices < 1:
            raise GraphError("a graph needs at least one vertex")
        for s, t, _ in self.edges:
            if not (0 <= s < self.num_vertices and 0 <= t < self.num_vertices):
                raise GraphError(f"edge ({s},{t}) out of range")
        if self.distinguished is not None and not (
            0 <= self.distinguished < self.num_vertices
        ):
            raise GraphError("distinguished vertex out of range")

    @property
    def is_degenerate(self) -> bool:
        return self.num_vertices == 1 and not self.edges

    def labels(self) -> list[object]:
        """Distinct labels in first-occurrence order."""
        seen: list[object] = []
        for _, _, lab in self.edges:
            if lab not in seen:
                seen.append(lab)
        return seen


def adjacency(graph: LabeledGraph) -> tuple[tuple[int, ...], ...]:
    d = graph.num_vertices
    m = [[0] * d for _ in range(d)]
    for s, t, _ in graph.edges:
        m[s][t] += 1
    return tuple(tuple(row) for row in m)


def build_degenerate() -> LabeledGraph:
    """One vertex, no edges; the carrier of the plain bracket shift."""
    return LabeledGraph(1, (), distinguished=0)


def build_bouquet(circles: int, circle_len: int) -> LabeledGraph:
    """A rosette of `circles` cycles of length `circle_len` sharing one
    vertex, every edge labeled by its own name (bijective labeling)."""
    if circles < 1 or circle_len < 1:
        raise GraphError("bouquet parameters must be >= 1")
    edges: list[tuple[int, int, object]] = []
    if circle_len == 1:
        for j in range(1, circles + 1):
            edges.append((0, 0, Lbl(f"w{j}")))
        return LabeledGraph(1, tuple(edges), distinguished=0)
    nv = 1 + circles * (circle_len - 1)
    vid = lambda j, q: 1 + (j - 1) * (circle_len - 1) + (q - 1)
    for j in range(1, circles + 1):
        edges.append((0, vid(j, 1), Lbl(f"w{j}.1")))
        for q in range(1, circle_len - 1):
            edges.append((vid(j, q), vid(j, q + 1), Lbl(f"w{j}.{q + 1}")))
        edges.append((vid(j, circle_len - 1), 0, Lbl(f"w{j}.{circle_len}")))
    return LabeledGraph(nv, tuple(edges), distinguished=0)


def build_even_automaton(distinguish_odd: bool = False) -> LabeledGraph:
    """The two-state presentation of the even system: a loop labeled "1"
    at the even state and a pair of "0" edges between the states.  The
    flag selects which state carries the attached loops downstream."""
    edges = (
        (0, 0, Lbl("1")),
        (0, 1, Lbl("0")),
        (1, 0, Lbl("0")),
    )
    return LabeledGraph(2, edges, distinguished=1 if distinguish_odd else 0)


def is_right_resolving(graph: LabeledGraph) -> bool:
    seen: set[tuple[int, object]] = set()
    for s, _, lab in graph.edges:
        if (s, lab) in seen:
            return False
        seen.add((s, lab))
    return True


def first_return_fraction(graph: LabeledGraph, vertex: int | None = None):
    """Numerator/denominator polynomials of the return-path series at
    ``vertex``: the minor of (1 - A z) with that row and column removed,
    over det(1 - A z)."""
    v = graph.distinguished if vertex is None else vertex
    if v is None:
        raise GraphError("no vertex selected")
    a = adjacency(graph)
    full = identity_minus_adjacency_z(a)
    den = det_poly_matrix(full)
    minor = [
        [full[i][j] for j in range(graph.num_vertices) if j != v]
        for i in range(graph.num_vertices)
        if i != v
    ]
    num = det_poly_matrix(minor)
    return num, den


def first_return_gf(graph: LabeledGraph, order: int, vertex: int | None = None) -> PowerSeries:
    """Counting series of all paths that start and end at ``vertex``
    (equivalently, of arbitrary concatenations of first returns).  The
    degenerate graph contributes only the empty path, i.e. the series 1.
    """
    num, den = first_return_fraction(graph, vertex)
    return num.to_series(order) / den.to_series(order)


def count_return_paths(graph: LabeledGraph, length: int, vertex: int | None = None) -> int:
    """Brute-force oracle: number of paths of the given length from
    ``vertex`` back to itself, by depth-first walking."""
    v = graph.distinguished if vertex is None else vertex
    succ: dict[int, list[int]] = {}
    for s, t, _ in graph.edges:
        succ.setdefault(s, []).append(t)

    def walk(at: int, left: int) -> int:
        if left == 0:
            return 1 if at == v else 0
        return sum(walk(t, left - 1) for t in succ.get(at, ()))

    return walk(v, length)


def is_irreducible(matrix: Sequence[Sequence[int]]) -> bool:
    """Strong connectivity of the digraph of positive entries."""
    d = len(matrix)
    if d == 0:
        return False

    def reach(start: int, transpose: bool) -> set[int]:
        seen = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for w in range(d):
                val = matrix[w][u] if transpose else matrix[u][w]
                if val and w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen

    if d == 1:
        return matrix[0][0] > 0
    return len(reach(0, False)) == d and len(reach(0, True)) == d


def matrix_period(matrix: Sequence[Sequence[int]]) -> int:
    """gcd of cycle lengths through vertex 0; requires irreducibility."""
    if not is_irreducible(matrix):
        raise GraphError("period is defined for irreducible matrices only")
    d = len(matrix)
    level = {0: 0}
    frontier = [0]
    g = 0
    while frontier:
        nxt = []
        for u in frontier:
            for w in range(d):
                if not matrix[u][w]:
                    continue
                if w in level:
                    g = gcd(g, level[u] + 1 - level[w])
                else:
                    level[w] = level[u] + 1
                    nxt.append(w)
        frontier = nxt
    return abs(g)


def q_polynomial(matrix: Sequence[Sequence[int]], row_sum: int, period: int) -> Polynomial:
    """Quotient of det(1 - A z) by (1 - row_sum**period * z**period).

    Defined for irreducible 0/1 matrices with constant row sum, where the
    division is exact; a nonzero remainder signals a precondition
    violation and raises.
    """
    d = len(matrix)
    for row in matrix:
        if len(row) != d or any(v not in (0, 1) for v in row):
            raise GraphError("expected a square 0/1 matrix")
        if sum(row) != row_sum:
            raise GraphError(f"every row must sum to {row_sum}")
    if not is_irreducible(matrix):
        raise GraphError("matrix must be irreducible")
    det = det_poly_matrix(identity_minus_adjacency_z(matrix))
    divisor_coeffs = [0] * (period + 1)
    divisor_coeffs[0] = 1
    divisor_coeffs[period] = -(row_sum**period)
    divisor = Polynomial.from_coeffs(divisor_coeffs)
    return det.divexact(divisor)


def label_steps(graph: LabeledGraph) -> dict[object, dict[int, tuple[int, ...]]]:
    """Per-label successor maps: label -> {source: targets}."""
    out: dict[object, dict[int, list[int]]] = {}
    for s, t, lab in graph.edges:
        out.setdefault(lab, {}).setdefault(s, []).append(t)
    return {lab: {s: tuple(ts) for s, ts in m.items()} for lab, m in out.items()}


def compose_relation(
    rel: Iterable[tuple[int, int]], step: dict[int, tuple[int, ...]]
) -> frozenset[tuple[int, int]]:
    return frozenset((u, w) for u, v in rel for w in step.get(v, ()))


def relation_has_cycle(rel: Iterable[tuple[int, int]], num_vertices: int) -> bool:
    """True iff the digraph of the relation contains a directed cycle,
    i.e. the relation stays nonempty under every power."""
    succ: dict[int, set[int]] = {}
    for u, v in rel:
        succ.setdefault(u, set()).add(v)
    color = [0] * num_vertices  # 0 unseen, 1 on stack, 2 done

    def visit(u: int) -> bool:
        color[u] = 1
        for v in succ.get(u, ()):
            if color[v] == 1:
                return True
            if color[v] == 0 and visit(v):
                return True
        color[u] = 2
        return False

    return any(color[u] == 0 and visit(u) for u in list(succ))


def identity_relation(num_vertices: int) -> frozenset[tuple[int, int]]:
    return frozenset((v, v) for v in range(num_vertices))


def presented_shift_periodic_counts(graph: LabeledGraph, n_max: int) -> list[int]:
    """Periodic-point counts of the shift of label sequences: the number
    of label words w of each length whose path relation admits a cycle,
    so that the periodic repetition of w labels a bi-infinite path."""
    steps = label_steps(graph)
    alphabet = graph.labels()
    nv = graph.num_vertices
    counts = [0] * n_max

    def rec(depth: int, rel: frozenset[tuple[int, int]]) -> None:
        if depth > 0 and relation_has_cycle(rel, nv):
            counts[depth - 1] += 1
        if depth == n_max:
            return
        for lab in alphabet:
            nxt = compose_relation(rel, steps[lab])
            if nxt:
                rec(depth + 1, nxt)

    rec(0, identity_relation(nv))
    return counts


def presented_shift_zeta(graph: LabeledGraph, order: int) -> PowerSeries:
    """Zeta series of the label-sequence shift by brute-force counting."""
    return zeta_from_counts(presented_shift_periodic_counts(graph, order), order)
