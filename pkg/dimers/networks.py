"""
Networks

Planar networks built from U and L blocks, their path-weight matrices, and
the perfectly oriented graphs whose perfect matchings are in bijection with
source-to-sink paths.
"""

import logging
import re
from dataclasses import dataclass

import networkx as nx
import pydot
from django.utils.translation import gettext_lazy as _

from .conf import get_setting
from .exceptions import ConsistencyError, DimensionMismatch, GuardExceeded
from .lattice import BLACK, WHITE
from .transfer import ONE, LaurentMatrix, LaurentPoly, matrix_product, structural_matrix

logger = logging.getLogger(__name__)

BLOCKS = ('U', 'L')

_FACTOR = re.compile(r'^\s*([UuLl])\s*(\d+)\s*:\s*(\d+)\s*$')


def parse_factors(text):
    """'U1:1,L1:2' -> [('U', 1, 1), ('L', 1, 2)]."""
    factors = []
    for chunk in filter(None, (c.strip() for c in text.split(','))):
        match = _FACTOR.match(chunk)
        if not match:
            raise DimensionMismatch(_("Cannot read factor %(factor)r; expected e.g. U1:2."), factor=chunk)
        kind, a, b = match.groups()
        factors.append((kind.upper(), int(a), int(b)))
    return factors


def format_factors(factors):
    return ",".join(f"{kind}{a}:{b}" for kind, a, b in factors)


def factor_matrix(kind, a, b):
    """U_{a,b} = R_{a,b} W_b, or L_{a,b} = W_a R_{a,b}."""
    kind = kind.upper()
    if kind == 'U':
        return structural_matrix('R', a, b) @ structural_matrix('W', b, b)
    if kind == 'L':
        return structural_matrix('L', a, b)
    raise DimensionMismatch(_("Network blocks are U or L, not %(kind)r."), kind=kind)


def _check_chain(factors):
    for kind, a, b in factors:
        if kind not in BLOCKS:
            raise DimensionMismatch(_("Network blocks are U or L, not %(kind)r."), kind=kind)
        if a < 0 or b < 0:
            raise DimensionMismatch(_("Matrix dimensions must be nonnegative."))
    for (_k1, _a1, b1), (_k2, a2, _b2) in zip(factors, factors[1:]):
        if b1 != a2:
            raise DimensionMismatch(
                _("Cannot glue a block with %(left)d sinks to one with %(right)d sources."),
                left=b1 + 1, right=a2 + 1,
            )


@dataclass(frozen=True, eq=False)
class Network:
    """An acyclic planar digraph with ordered boundary vertices."""

    graph: nx.DiGraph
    sources: tuple
    sinks: tuple

    @property
    def positions(self):
        return dict(self.graph.nodes(data='pos'))

    def to_json(self):
        return {
            'vertices': [
                {'id': v, 'x': pos[0], 'y': pos[1]} for v, pos in self.graph.nodes(data='pos')
            ],
            'arcs': [
                [u, v, str(w)] for u, v, w in self.graph.edges(data='weight', default=ONE)
            ],
            'sources': list(self.sources),
            'sinks': list(self.sinks),
        }


def _terminal(column, index):
    return f"t{column}.{index}"


def network_for_factors(factors, strands=1):
    """
    Concatenate the blocks left to right.

    Block k has max(a, b) + 1 horizontal strands, each with a middle vertex
    in column 2k+1. U blocks use the top a+1 strands as sources and the top
    b+1 as sinks, with downward rungs between middle vertices; L blocks are
    aligned to the bottom with upward rungs. Only terminals are shared
    between neighbouring blocks. An empty chain gives ``strands`` parallel
    arcs.
    """
    factors = [(kind.upper(), int(a), int(b)) for kind, a, b in factors]
    _check_chain(factors)
    g = nx.DiGraph()

    if not factors:
        for i in range(1, strands + 1):
            g.add_node(_terminal(0, i), pos=(0, -i))
            g.add_node(_terminal(1, i), pos=(2, -i))
            g.add_edge(_terminal(0, i), _terminal(1, i), weight=ONE)
        return Network(g, tuple(_terminal(0, i) for i in range(1, strands + 1)),
                       tuple(_terminal(1, i) for i in range(1, strands + 1)))

    offset = previous_first_row = 0
    for k, (kind, a, b) in enumerate(factors):
        size = max(a, b) + 1
        if kind == 'U':
            source_strand = {s: s for s in range(1, a + 2)}
            sink_strand = {s: s for s in range(1, b + 2)}
        else:
            source_strand = {size - a - 1 + i: i for i in range(1, a + 2)}
            sink_strand = {size - b - 1 + j: j for j in range(1, b + 2)}
        if k > 0:
            # align this block's first source with the previous block's first sink
            first = min(source_strand, key=source_strand.get)
            offset = previous_first_row - first
        x = 2 * k
        for s in range(1, size + 1):
            row = s + offset
            left = _terminal(k, source_strand[s]) if s in source_strand else f"a{k}.{s}"
            right = _terminal(k + 1, sink_strand[s]) if s in sink_strand else f"z{k}.{s}"
            middle = f"m{k}.{s}"
            g.add_node(left, pos=(x, -row))
            g.add_node(middle, pos=(x + 1, -row))
            g.add_node(right, pos=(x + 2, -row))
            g.add_edge(left, middle, weight=ONE)
            g.add_edge(middle, right, weight=ONE)
        for s in range(1, size):
            upper, lower = f"m{k}.{s}", f"m{k}.{s + 1}"
            if kind == 'U':
                g.add_edge(upper, lower, weight=ONE)
            else:
                g.add_edge(lower, upper, weight=ONE)
        first_sink = min(sink_strand, key=sink_strand.get)
        previous_first_row = first_sink + offset

    _kind, a0, _b = factors[0]
    _kind, _a, bn = factors[-1]
    sources = tuple(_terminal(0, i) for i in range(1, a0 + 2))
    sinks = tuple(_terminal(len(factors), j) for j in range(1, bn + 2))
    logger.debug("network %s has %d vertices", format_factors(factors), g.number_of_nodes())
    return Network(g, sources, sinks)


def path_weight_matrix(network):
    """Entry (i, j) sums the weights of all paths from source i to sink j."""
    g = network.graph
    order = list(nx.topological_sort(g))
    rows = []
    for source in network.sources:
        total = {source: ONE}
        for v in order:
            if v not in total:
                continue
            for _u, w, weight in g.out_edges(v, data='weight', default=ONE):
                total[w] = total.get(w, LaurentPoly()) + total[v] * weight
        rows.append([total.get(sink, LaurentPoly()) for sink in network.sinks])
    return LaurentMatrix(rows)


def chain_matrix(factors):
    return matrix_product([factor_matrix(kind, a, b) for kind, a, b in factors])


def euler_factors(n):
    """U11 L12 U23 L34 ..., the n-1 blocks whose paths count E_n."""
    if n < 2:
        raise DimensionMismatch(_("Euler networks start at n=2."))
    factors = [('U', 1, 1)]
    for k in range(2, n):
        factors.append(('L' if k % 2 == 0 else 'U', k - 1, k))
    return factors


def euler_terminals(n):
    """Source and sink indices for the Euler network."""
    return 1, (n if (n - 1) % 2 else 1)


def catalan_factors(n):
    """U11 L12 L23 ... L(n-1)n, whose paths from 1 to 1 count C_n."""
    if n < 1:
        raise DimensionMismatch(_("Catalan networks start at n=1."))
    return [('U', 1, 1)] + [('L', k - 1, k) for k in range(2, n + 1)]


@dataclass(frozen=True, eq=False)
class MatchingGraph:
    """
    A perfectly oriented network and its undirected residue.

    ``oriented`` keeps the source and sink; ``graph`` drops them and is the
    graph whose perfect matchings are counted.
    """

    oriented: nx.MultiDiGraph
    graph: nx.MultiGraph
    source: str
    sink: str

    def color(self, v):
        return self.oriented.nodes[v]['color']

    @property
    def black(self):
        return sorted(v for v, c in self.graph.nodes(data='color') if c == BLACK)

    @property
    def white(self):
        return sorted(v for v, c in self.graph.nodes(data='color') if c == WHITE)


def _midpoint(g, u, v):
    (x1, y1), (x2, y2) = g.nodes[u]['pos'], g.nodes[v]['pos']
    return ((x1 + x2) / 2, (y1 + y2) / 2)


def perfectly_orient(network, source=1, sink=1):
    """
    Keep the paths from one source to one sink and make the result
    bipartite with a unique in-arrow at every white vertex and a unique
    out-arrow at every black one.
    """
    start, end = network.sources[source - 1], network.sinks[sink - 1]
    base = network.graph
    if start == end:
        raise DimensionMismatch(_("Source and sink must differ."))
    keep = (nx.descendants(base, start) & nx.ancestors(base, end)) | {start, end}
    g = nx.MultiDiGraph()
    for v in keep:
        g.add_node(v, pos=base.nodes[v]['pos'])
    for u, v, weight in base.edges(data='weight', default=ONE):
        if u in keep and v in keep:
            g.add_edge(u, v, weight=weight)

    # smooth pass-through vertices
    for v in list(g.nodes):
        if v in (start, end) or g.in_degree(v) != 1 or g.out_degree(v) != 1:
            continue
        (u, _v, w1), = g.in_edges(v, data='weight')
        (_v, w, w2), = g.out_edges(v, data='weight')
        g.remove_node(v)
        g.add_edge(u, w, weight=w1 * w2)

    g.nodes[start]['color'] = BLACK
    g.nodes[end]['color'] = WHITE
    for v in list(g.nodes):
        if v in (start, end):
            continue
        ins, outs = g.in_degree(v), g.out_degree(v)
        if ins == 1:
            g.nodes[v]['color'] = WHITE
        elif outs == 1:
            g.nodes[v]['color'] = BLACK
        elif ins == 2 and outs == 2:
            x, y = g.nodes[v]['pos']
            black, white = f"{v}/b", f"{v}/w"
            g.add_node(black, pos=(x - 0.25, y), color=BLACK)
            g.add_node(white, pos=(x + 0.25, y), color=WHITE)
            for u, _v, weight in list(g.in_edges(v, data='weight')):
                g.add_edge(u, black, weight=weight)
            for _v, w, weight in list(g.out_edges(v, data='weight')):
                g.add_edge(white, w, weight=weight)
            g.add_edge(black, white, weight=ONE)
            g.remove_node(v)
        else:
            raise ConsistencyError(f"Vertex {v} has {ins} in-arcs and {outs} out-arcs")

    # an opposite-colored vertex on every monochromatic arc
    for u, v, key, weight in list(g.edges(keys=True, data='weight')):
        color = g.nodes[u]['color']
        if color != g.nodes[v]['color']:
            continue
        middle = f"{u}>{v}#{key}"
        g.add_node(middle, pos=_midpoint(g, u, v), color=WHITE if color == BLACK else BLACK)
        g.remove_edge(u, v, key)
        g.add_edge(u, middle, weight=weight)
        g.add_edge(middle, v, weight=ONE)

    undirected = nx.MultiGraph()
    for v, data in g.nodes(data=True):
        if v not in (start, end):
            undirected.add_node(v, **data)
    for u, v, key in g.edges(keys=True):
        if u not in (start, end) and v not in (start, end):
            undirected.add_edge(u, v, key=key)
    logger.debug("matching graph with %d vertices and %d edges",
                 undirected.number_of_nodes(), undirected.number_of_edges())
    return MatchingGraph(oriented=g, graph=undirected, source=start, sink=end)


def euler_matching_graph(n):
    source, sink = euler_terminals(n)
    return perfectly_orient(network_for_factors(euler_factors(n)), source, sink)


def catalan_matching_graph(n):
    return perfectly_orient(network_for_factors(catalan_factors(n)), 1, 1)


def count_perfect_matchings(graph):
    """
    Exact number of perfect matchings by deleting a lowest-degree vertex
    together with each of its neighbours, memoized on the remaining vertex
    set.
    """
    g = getattr(graph, 'graph', graph)
    limit = get_setting('MATCHING_VERTEX_LIMIT')
    if g.number_of_nodes() > limit:
        raise GuardExceeded(g.number_of_nodes(), limit, what='vertices')
    if g.number_of_nodes() % 2:
        return 0
    colors = [c for _v, c in g.nodes(data='color') if c is not None]
    if colors and colors.count(BLACK) != colors.count(WHITE):
        return 0

    nodes = sorted(g.nodes, key=lambda v: (g.nodes[v].get('pos', (0, 0)), str(v)))
    rank = {v: i for i, v in enumerate(nodes)}
    adjacency = {
        rank[v]: {rank[u]: g.number_of_edges(v, u) for u in g.neighbors(v) if u != v}
        for v in nodes
    }
    memo = {}

    def count(remaining):
        if not remaining:
            return 1
        if remaining in memo:
            return memo[remaining]
        pivot = min(remaining, key=lambda v: (sum(1 for u in adjacency[v] if u in remaining), v))
        total = 0
        for u, multiplicity in adjacency[pivot].items():
            if u in remaining:
                total += multiplicity * count(remaining - {pivot, u})
        memo[remaining] = total
        return total

    result = count(frozenset(range(len(nodes))))
    logger.debug("%d perfect matchings on %d vertices (%d states)", result, len(nodes), len(memo))
    return result


def enumerate_paths(matching):
    """Source-to-sink paths of the oriented graph as tuples of (u, v, key) arcs."""
    g = matching.oriented
    return [tuple(path) for path in nx.all_simple_edge_paths(g, matching.source, matching.sink)]


def path_to_matching(matching, path):
    """
    Arcs off the path directed black to white, and arcs on the path
    directed white to black, minus those touching the source or sink.
    """
    g = matching.oriented
    on_path = set(path)
    chosen = set()
    for u, v, key in g.edges(keys=True):
        if matching.source in (u, v) or matching.sink in (u, v):
            continue
        direction = (g.nodes[u]['color'], g.nodes[v]['color'])
        if (u, v, key) in on_path:
            if direction == (WHITE, BLACK):
                chosen.add((u, v, key))
        elif direction == (BLACK, WHITE):
            chosen.add((u, v, key))
    return frozenset(chosen)


def is_perfect_matching(matching, edges):
    covered = {}
    for u, v, key in edges:
        if not matching.graph.has_edge(u, v, key):
            return False
        for w in (u, v):
            covered[w] = covered.get(w, 0) + 1
    return all(covered.get(v) == 1 for v in matching.graph.nodes)


def to_pydot(matching):
    """A pydot graph of the matching graph with bipartition colours."""
    g = matching.graph
    names = {v: f"v{i}" for i, v in enumerate(sorted(g.nodes))}
    dot = pydot.Dot('M', graph_type='graph')
    dot.set_node_defaults(shape='circle', label=' ', width=0.2, style='filled')
    for v in sorted(g.nodes):
        x, y = g.nodes[v]['pos']
        fill = 'black' if g.nodes[v]['color'] == BLACK else 'white'
        dot.add_node(pydot.Node(names[v], fillcolor=fill, pos=f"{x},{y}!", tooltip=str(v)))
    for u, v in sorted((min(names[a], names[b]), max(names[a], names[b])) for a, b, _k in g.edges(keys=True)):
        dot.add_edge(pydot.Edge(u, v))
    return dot


def to_dot(matching):
    return to_pydot(matching).to_string()
