"""
Face Twist Lattices

Checkerboard colorings, face twists, the Hasse diagram of the twist order
on mixed dimer covers, rank polynomials, meets and joins, and the Birkhoff
decomposition into join-irreducibles and order ideals.
"""

import logging
from collections import deque
from dataclasses import dataclass
from functools import cached_property

import networkx as nx
import numpy as np
import pydot
from django.utils.translation import gettext_lazy as _

from .conf import get_setting
from .covers import enumerate_covers
from .exceptions import ConsistencyError, NotDistributive, TwistRefused
from .snake import U, format_edge
from .transfer import LaurentPoly, q_power

logger = logging.getLogger(__name__)

BLACK = 'black'
WHITE = 'white'

# exhaustive distributivity check on all triples up to this many elements
TRIPLE_CHECK_LIMIT = 150


@dataclass(frozen=True)
class VertexColoring:
    """Checkerboard coloring fixed by one black vertex."""

    black: tuple

    def color(self, vertex):
        same = (vertex[0] + vertex[1] - self.black[0] - self.black[1]) % 2 == 0
        return BLACK if same else WHITE

    def reversed(self):
        return VertexColoring((self.black[0] + 1, self.black[1]))

    def colors(self, graph):
        return {v: self.color(v) for v in graph.vertices}


def color_vertices(graph):
    """
    The black corner of the last tile is bottom-right when the word ends in
    R (or is empty) and top-right when it ends in U.
    """
    last = graph.tiles[-1]
    if graph.word.endswith(U):
        return VertexColoring(last.upper_right)
    return VertexColoring(last.lower_right)


def odd_edges(tile, coloring):
    """Edges traversed white to black going counter-clockwise around the tile."""
    return tuple(edge for edge, start, end in tile.counter_clockwise()
                 if coloring.color(start) == WHITE and coloring.color(end) == BLACK)


def even_edges(tile, coloring):
    odd = set(odd_edges(tile, coloring))
    return tuple(edge for edge in tile.edges if edge not in odd)


def face_twist(graph, coloring, cover, tile_index, direction='+'):
    """
    A positive twist lowers the odd edges of the tile by one and raises the
    even ones; a negative twist does the reverse.
    """
    tile = graph.tile(tile_index)
    lower = odd_edges(tile, coloring)
    raise_ = even_edges(tile, coloring)
    if direction == '-':
        lower, raise_ = raise_, lower
    elif direction != '+':
        raise ValueError(f"Unknown twist direction {direction!r}")
    for edge in lower:
        if cover[edge] == 0:
            raise TwistRefused(tile_index, format_edge(edge))
    delta = {edge: -1 for edge in lower}
    delta.update({edge: 1 for edge in raise_})
    return cover.changed(delta)


def can_twist(graph, coloring, cover, tile_index, direction='+'):
    try:
        face_twist(graph, coloring, cover, tile_index, direction)
    except TwistRefused:
        return False
    return True


class HasseDiagram:
    """
    A ranked cover digraph. Nodes are indices into ``elements``; edges go
    from lower to upper and may carry a ``tile`` attribute.
    """

    def __init__(self, elements, covers, ranks=None, tiles=None):
        self.elements = tuple(elements)
        self.index = {e: i for i, e in enumerate(self.elements)}
        diagram = nx.DiGraph()
        diagram.add_nodes_from(range(len(self.elements)))
        for k, (lo, hi) in enumerate(covers):
            attrs = {'tile': tiles[k]} if tiles is not None else {}
            diagram.add_edge(lo, hi, **attrs)
        if not nx.is_directed_acyclic_graph(diagram):
            raise ConsistencyError("Hasse diagram has a cycle")
        self.diagram = diagram
        self.ranks = tuple(ranks) if ranks is not None else self._ranks_from_bottom()

    def _ranks_from_bottom(self):
        ranks = [0] * len(self.elements)
        for node in nx.topological_sort(self.diagram):
            preds = list(self.diagram.predecessors(node))
            if preds:
                ranks[node] = max(ranks[p] for p in preds) + 1
        return ranks

    def __len__(self):
        return len(self.elements)

    @property
    def covers(self):
        return sorted(self.diagram.edges())

    def node(self, x):
        """Accept an index or an element."""
        if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
            return int(x)
        return self.index[x]

    @cached_property
    def leq(self):
        """leq[i, j] iff element i <= element j."""
        n = len(self.elements)
        leq = np.eye(n, dtype=bool)
        for node in reversed(list(nx.topological_sort(self.diagram))):
            for succ in self.diagram.successors(node):
                leq[node] |= leq[succ]
        leq.flags.writeable = False
        return leq

    @cached_property
    def _upsets(self):
        return {self.leq[i].tobytes(): i for i in range(len(self.elements))}

    @cached_property
    def _downsets(self):
        return {self.leq[:, i].tobytes(): i for i in range(len(self.elements))}

    @property
    def minimal(self):
        return [n for n in self.diagram.nodes if self.diagram.in_degree(n) == 0]

    @property
    def maximal(self):
        return [n for n in self.diagram.nodes if self.diagram.out_degree(n) == 0]

    @property
    def bottom(self):
        mins = self.minimal
        if len(mins) != 1:
            raise NotDistributive(_("Expected a unique minimal element, found %(count)d."), count=len(mins))
        return mins[0]

    @property
    def top(self):
        maxs = self.maximal
        if len(maxs) != 1:
            raise NotDistributive(_("Expected a unique maximal element, found %(count)d."), count=len(maxs))
        return maxs[0]

    def is_graded(self):
        return all(self.ranks[hi] == self.ranks[lo] + 1 for lo, hi in self.diagram.edges())

    def lower_covers(self, x):
        return sorted(self.diagram.predecessors(self.node(x)))

    def upper_covers(self, x):
        return sorted(self.diagram.successors(self.node(x)))

    def meet_index(self, i, j):
        below = self.leq[:, i] & self.leq[:, j]
        found = self._downsets.get(below.tobytes())
        if found is None:
            raise NotDistributive(_("Elements %(i)d and %(j)d have no meet."), i=i, j=j)
        return found

    def join_index(self, i, j):
        above = self.leq[i] & self.leq[j]
        found = self._upsets.get(above.tobytes())
        if found is None:
            raise NotDistributive(_("Elements %(i)d and %(j)d have no join."), i=i, j=j)
        return found

    def relabel(self, fn):
        """The same diagram with every element replaced by fn(element)."""
        tiles = [self.diagram.edges[e].get('tile') for e in self.covers]
        return HasseDiagram([fn(e) for e in self.elements], self.covers, self.ranks,
                            tiles if any(t is not None for t in tiles) else None)

    def reversed(self):
        """The dual order."""
        top = max(self.ranks) if self.ranks else 0
        return HasseDiagram(self.elements, [(hi, lo) for lo, hi in self.covers],
                            [top - r for r in self.ranks])

    def to_networkx(self):
        return self.diagram.copy()

    def __str__(self):
        return f"HasseDiagram({len(self.elements)} elements, {self.diagram.number_of_edges()} covers)"


def build_lattice(graph, labeling, coloring=None, guard=None):
    """
    The face twist order on Omega_n(G).

    Covers come from positive twists; ranks are twist distances from the
    unique cover that admits no negative twist.
    """
    coloring = coloring or color_vertices(graph)
    elements = enumerate_covers(graph, labeling, guard=guard)
    index = {c: i for i, c in enumerate(elements)}
    covers, tiles = [], []
    for i, cover in enumerate(elements):
        for tile in graph.tiles:
            try:
                upper = face_twist(graph, coloring, cover, tile.index, '+')
            except TwistRefused:
                continue
            if upper not in index:
                raise ConsistencyError(f"Twist at tile {tile.index} left Omega")
            covers.append((i, index[upper]))
            tiles.append(tile.index)

    lattice = HasseDiagram(elements, covers, ranks=[0] * len(elements), tiles=tiles)
    bottom = lattice.bottom
    ranks = [None] * len(elements)
    ranks[bottom] = 0
    queue = deque([bottom])
    while queue:
        node = queue.popleft()
        for succ in lattice.diagram.successors(node):
            if ranks[succ] is None:
                ranks[succ] = ranks[node] + 1
                queue.append(succ)
    if any(r is None for r in ranks):
        raise ConsistencyError("Some covers are not reachable from the minimal cover")
    lattice.ranks = tuple(ranks)
    if not lattice.is_graded():
        raise ConsistencyError("Twist order is not graded")
    logger.debug("lattice for %r: %d elements, %d covers", graph.word, len(elements), len(covers))
    return lattice


def rank_polynomial(lattice, name='q'):
    total = LaurentPoly()
    for r in lattice.ranks:
        total = total + q_power(r, name)
    return total


def meet(lattice, x, y):
    return lattice.elements[lattice.meet_index(lattice.node(x), lattice.node(y))]


def join(lattice, x, y):
    return lattice.elements[lattice.join_index(lattice.node(x), lattice.node(y))]


def twist_counts(lattice, tiles):
    """Positive twists per tile along any chain from the bottom."""
    counts = {lattice.bottom: (0,) * tiles}
    for node in nx.topological_sort(lattice.diagram):
        for succ in lattice.diagram.successors(node):
            tile = lattice.diagram.edges[node, succ]['tile']
            step = list(counts[node])
            step[tile - 1] += 1
            step = tuple(step)
            if counts.setdefault(succ, step) != step:
                raise ConsistencyError("Twist counts depend on the chain")
    return [counts[i] for i in range(len(lattice))]


def minimal_weight_exponent(lattice, weighting, name='q'):
    """Exponent N of the weight q^N of the minimal cover."""
    weight = weighting.cover_weight(lattice.elements[lattice.bottom])
    if len(weight.terms) != 1 or set(weight.variables) - {name}:
        raise NotDistributive(_("The minimal cover weight %(w)s is not a power of %(name)s."),
                              w=str(weight), name=name)
    (mono, _coeff), = weight.terms.items()
    return dict(mono).get(name, 0)


# distributivity and Birkhoff

@dataclass(frozen=True, eq=False)
class FinitePoset:
    """Elements with a reflexive, antisymmetric, transitive relation matrix."""

    elements: tuple
    leq: np.ndarray

    def __post_init__(self):
        leq = self.leq
        if not leq.diagonal().all():
            raise NotDistributive(_("The relation is not reflexive."))
        if (leq & leq.T & ~np.eye(len(leq), dtype=bool)).any():
            raise NotDistributive(_("The relation is not antisymmetric."))
        closure = (leq.astype(np.int64) @ leq.astype(np.int64)) > 0
        if (closure & ~leq).any():
            raise NotDistributive(_("The relation is not transitive."))

    def __len__(self):
        return len(self.elements)

    @cached_property
    def cover_matrix(self):
        lt = self.leq.copy()
        lt[np.diag_indices_from(lt)] = False
        between = (lt.astype(np.int64) @ lt.astype(np.int64)) > 0
        return lt & ~between

    @property
    def covers(self):
        return [(int(i), int(j)) for i, j in zip(*np.nonzero(self.cover_matrix))]

    def rank_profile(self):
        """Number of elements at each height (longest chain below)."""
        heights = [0] * len(self.elements)
        graph = nx.DiGraph(self.covers)
        graph.add_nodes_from(range(len(self.elements)))
        for node in nx.topological_sort(graph):
            for succ in graph.successors(node):
                heights[succ] = max(heights[succ], heights[node] + 1)
        profile = [0] * (max(heights, default=-1) + 1)
        for h in heights:
            profile[h] += 1
        return tuple(profile)


def join_irreducibles(lattice):
    return [i for i in range(len(lattice)) if lattice.diagram.in_degree(i) == 1]


def ideal_lattice(poset):
    """
    The lattice J(P) of order ideals, ordered by inclusion. Elements are
    frozensets of poset indices; ranks are ideal sizes.
    """
    n = len(poset)
    below = [frozenset(int(j) for j in np.flatnonzero(poset.leq[:, i]) if j != i) for i in range(n)]
    start = frozenset()
    seen = {start: 0}
    order = [start]
    covers = []
    queue = deque([start])
    while queue:
        ideal = queue.popleft()
        for i in range(n):
            if i in ideal or not below[i] <= ideal:
                continue
            bigger = ideal | {i}
            if bigger not in seen:
                seen[bigger] = len(order)
                order.append(bigger)
                queue.append(bigger)
            covers.append((seen[ideal], seen[bigger]))
    return HasseDiagram(order, covers, ranks=[len(i) for i in order])


def birkhoff_isomorphism(lattice, poset_nodes, ideals):
    """
    Map each ideal of the join-irreducibles to the join of its members and
    check that this is an order isomorphism onto the lattice.
    """
    bottom = lattice.bottom
    image = []
    for ideal in ideals.elements:
        node = bottom
        for p in ideal:
            node = lattice.join_index(node, poset_nodes[p])
        image.append(node)
    if len(set(image)) != len(lattice) or len(ideals) != len(lattice):
        raise NotDistributive(
            _("The lattice has %(size)d elements but its join-irreducibles have %(ideals)d ideals."),
            size=len(lattice), ideals=len(ideals),
        )
    mapped = {(image[lo], image[hi]) for lo, hi in ideals.covers}
    if mapped != set(lattice.covers):
        raise NotDistributive(_("Ideals and lattice elements are not order isomorphic."))
    return dict(zip(ideals.elements, image))


def birkhoff_poset(lattice):
    """
    The poset of join-irreducibles. Raises NotDistributive unless the ideal
    lattice of that poset maps isomorphically onto the input.
    """
    nodes = join_irreducibles(lattice)
    leq = lattice.leq[np.ix_(nodes, nodes)].copy()
    leq.flags.writeable = False
    poset = FinitePoset(tuple(lattice.elements[i] for i in nodes), leq)
    birkhoff_isomorphism(lattice, nodes, ideal_lattice(poset))
    return poset


def _all_triples_distributive(lattice):
    n = len(lattice)
    meet_table = np.array([[lattice.meet_index(i, j) for j in range(n)] for i in range(n)])
    join_table = np.array([[lattice.join_index(i, j) for j in range(n)] for i in range(n)])
    for x in range(n):
        lhs = meet_table[x][join_table]
        rhs = join_table[np.ix_(meet_table[x], meet_table[x])]
        if not np.array_equal(lhs, rhs):
            return False
    return True


def is_distributive(lattice, exhaustive=None):
    """
    x meet (y join z) = (x meet y) join (x meet z) on all triples for small
    lattices; larger ones are checked through the Birkhoff isomorphism.
    """
    if exhaustive is None:
        exhaustive = len(lattice) <= TRIPLE_CHECK_LIMIT
    try:
        lattice.bottom
        lattice.top
        if exhaustive:
            return _all_triples_distributive(lattice)
        birkhoff_poset(lattice)
    except NotDistributive:
        return False
    return True


def chain_lattice(length):
    return HasseDiagram(range(length + 1), [(i, i + 1) for i in range(length)])


def to_pydot(lattice, label=str, rankdir=None):
    """A pydot digraph with one node per element, grouped by rank."""
    g = pydot.Dot('G', graph_type='digraph', rankdir=rankdir or get_setting('DOT_RANKDIR'))
    g.set_node_defaults(shape='box', fontsize=10)
    for i, element in enumerate(lattice.elements):
        g.add_node(pydot.Node(f"n{i}", label=str(label(element))))
    for rank in sorted(set(lattice.ranks)):
        level = pydot.Subgraph(f"rank{rank}", rank='same')
        for i, r in enumerate(lattice.ranks):
            if r == rank:
                level.add_node(pydot.Node(f"n{i}"))
        g.add_subgraph(level)
    for lo, hi in lattice.covers:
        tile = lattice.diagram.edges[lo, hi].get('tile')
        attrs = {'label': str(tile)} if tile is not None else {}
        g.add_edge(pydot.Edge(f"n{lo}", f"n{hi}", **attrs))
    return g


def to_dot(lattice, label=str, rankdir=None):
    return to_pydot(lattice, label=label, rankdir=rankdir).to_string()
