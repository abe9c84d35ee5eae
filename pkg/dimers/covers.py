"""
Mixed Dimer Covers

Validation and exhaustive enumeration of mixed dimer covers, the brute
force oracle that the matrix formulas are checked against.
"""

import logging
from dataclasses import dataclass

from django.utils.translation import gettext_lazy as _

from .conf import get_setting
from .exceptions import GuardExceeded, InconsistentCover, InvalidLabeling
from .snake import MixedDimerCover, canonical_edges, format_vertex
from .transfer import ZERO, matrix_count

logger = logging.getLogger(__name__)

METHODS = ('brute', 'matrix', 'auto')


@dataclass(frozen=True)
class Violation:
    vertex: tuple
    expected: int
    actual: int

    @property
    def difference(self):
        """Positive for a surplus, negative for a deficit."""
        return self.actual - self.expected

    def __str__(self):
        kind = "surplus" if self.difference > 0 else "deficit"
        return f"vertex {format_vertex(self.vertex)}: {kind} of {abs(self.difference)}"


@dataclass(frozen=True)
class CoverReport:
    violations: tuple

    @property
    def valid(self):
        return not self.violations

    def __bool__(self):
        return self.valid


def validate_cover(graph, labeling, cover):
    """Check sum of multiplicities at every vertex against its label."""
    for edge in cover.support:
        graph.check_edge(edge)
    violations = []
    for v in graph.vertices:
        actual = cover.degree(v)
        if actual != labeling[v]:
            violations.append(Violation(v, labeling[v], actual))
    return CoverReport(tuple(violations))


def _search_plan(graph):
    """Edges in tile order, and for each edge the vertices it closes."""
    order = graph.edges_in_tile_order
    last_use = {}
    for i, (u, v) in enumerate(order):
        last_use[u] = i
        last_use[v] = i
    closes = [tuple(w for w in edge if last_use[w] == i) for i, edge in enumerate(order)]
    return order, closes


def _choices(edge, closing, residual):
    u, v = edge
    high = min(residual[u], residual[v])
    if not closing:
        return range(high + 1)
    need = {residual[w] for w in closing}
    if len(need) > 1:
        return ()
    value = need.pop()
    return (value,) if value <= high else ()


def predict_count(graph, labeling):
    """
    Exact |Omega| by dynamic programming over residual vertex degrees.

    Only vertices touched but not yet closed carry state, so the number of
    states stays small along a snake.
    """
    order, closes = _search_plan(graph)
    index = {v: i for i, v in enumerate(graph.vertices)}
    start = tuple(labeling[v] for v in graph.vertices)
    states = {start: 1}
    for edge, closing in zip(order, closes):
        i, j = index[edge[0]], index[edge[1]]
        nxt = {}
        for state, ways in states.items():
            residual = {edge[0]: state[i], edge[1]: state[j]}
            for value in _choices(edge, closing, residual):
                new = list(state)
                new[i] -= value
                new[j] -= value
                key = tuple(new)
                nxt[key] = nxt.get(key, 0) + ways
        states = nxt
    return sum(ways for state, ways in states.items() if not any(state))


def enumerate_covers(graph, labeling, guard=None):
    """
    Every mixed dimer cover for the labeling, sorted by the dense
    multiplicity vector over ``graph.edges``.
    """
    guard = get_setting('ENUMERATION_GUARD') if guard is None else guard
    predicted = predict_count(graph, labeling)
    if predicted > guard:
        logger.warning("Refusing to enumerate %s covers of %r (guard %s)", predicted, graph.word, guard)
        raise GuardExceeded(predicted, guard)

    order, closes = _search_plan(graph)
    residual = dict(labeling.labels)
    chosen = {}
    found = []

    def search(pos):
        if pos == len(order):
            if not any(residual.values()):
                found.append(MixedDimerCover.from_mapping(chosen))
            return
        edge = order[pos]
        u, v = edge
        for value in _choices(edge, closes[pos], residual):
            residual[u] -= value
            residual[v] -= value
            chosen[edge] = value
            search(pos + 1)
            residual[u] += value
            residual[v] += value
        chosen.pop(edge, None)

    search(0)
    found.sort(key=lambda cover: cover.dense(graph))
    logger.debug("enumerated %d covers of %r", len(found), graph.word)
    return found


def count_covers(graph, labeling, method='auto'):
    """
    |Omega_n(G)|.

    ``matrix`` needs a straight or zigzag word with a D0-labeling;
    ``auto`` uses it when possible and otherwise the exact residual count.
    """
    if method not in METHODS:
        raise InvalidLabeling(_("Unknown counting method %(method)r."), method=method)
    if method == 'brute':
        return len(enumerate_covers(graph, labeling))
    if method == 'matrix':
        return matrix_count(graph, labeling)
    if (graph.is_straight or graph.is_zigzag) and labeling.sequence(graph) is not None:
        return matrix_count(graph, labeling)
    return predict_count(graph, labeling)


def final_edge(graph):
    """
    The edge whose multiplicity refines counts by their last index.

    For straight snakes this is the rightmost vertical edge. Otherwise it
    is the edge of the last tile that is neither in D0 nor shared with the
    previous tile.
    """
    last = graph.tiles[-1]
    if graph.is_straight:
        return last.right
    d0 = set(canonical_edges(graph))
    previous = set(graph.tiles[-2].edges) if graph.n > 1 else set()
    rest = [e for e in last.edges if e not in d0 and e not in previous]
    return rest[-1]


def filter_by_final_edge(covers, edge, k, graph=None):
    if graph is not None:
        edge = graph.check_edge(edge)
    return [cover for cover in covers if cover[edge] == k]


def weighted_count(graph, labeling, weighting):
    """Sum of cover weights over Omega, by enumeration."""
    total = ZERO
    for cover in enumerate_covers(graph, labeling):
        total = total + weighting.cover_weight(cover)
    return total


def complete_cover(graph, labeling, known):
    """
    Fill in the unknown multiplicities from the degree equations.

    Repeatedly settles a vertex with a single unknown incident edge. Raises
    InconsistentCover when the equations are stuck or contradict.
    """
    values = {graph.check_edge(edge): int(m) for edge, m in known.items()}
    if any(m < 0 for m in values.values()):
        raise InconsistentCover(_("Multiplicities must be nonnegative."))
    progress = True
    while progress and len(values) < len(graph.edges):
        progress = False
        for v in graph.vertices:
            unknown = [e for e in graph.incident[v] if e not in values]
            if len(unknown) != 1:
                continue
            rest = labeling[v] - sum(values[e] for e in graph.incident[v] if e in values)
            if rest < 0:
                raise InconsistentCover(
                    _("Vertex %(vertex)s is over its label."), vertex=format_vertex(v),
                )
            values[unknown[0]] = rest
            progress = True
    if len(values) < len(graph.edges):
        raise InconsistentCover(_("The degree equations do not determine the cover."))
    cover = MixedDimerCover.from_mapping(values)
    report = validate_cover(graph, labeling, cover)
    if not report.valid:
        raise InconsistentCover(
            _("Cover violates the labeling: %(violations)s."),
            violations=", ".join(str(v) for v in report.violations),
        )
    return cover
