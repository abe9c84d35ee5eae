"""
Snake Graphs

Snake graphs built from words over {R, U}, their canonical dimer cover D0,
standard labeling and canonical lattice path P0, plus the value types the
rest of the app passes around (vertex labelings and mixed dimer covers).

Vertices are integer lattice points, edges are sorted vertex pairs.
"""

import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache

from django.utils.translation import gettext_lazy as _

from .exceptions import ConsistencyError, InvalidLabeling, InvalidWord, UnknownEdge

logger = logging.getLogger(__name__)

R = 'R'
U = 'U'
ALPHABET = frozenset((R, U))


def flip(letter):
    return U if letter == R else R


def make_edge(u, v):
    return (u, v) if u <= v else (v, u)


def parse_word(word):
    """Normalize a snake word; the empty word is allowed."""
    if word is None:
        word = ''
    word = str(word).strip().upper()
    if not set(word) <= ALPHABET:
        raise InvalidWord(word)
    return word


def format_vertex(v):
    return f"{v[0]},{v[1]}"


def format_edge(edge):
    return f"({format_vertex(edge[0])})-({format_vertex(edge[1])})"


@dataclass(frozen=True)
class Tile:
    """A unit square of a snake graph, indexed from 1."""

    index: int
    corner: tuple

    @property
    def lower_left(self):
        return self.corner

    @property
    def lower_right(self):
        return (self.corner[0] + 1, self.corner[1])

    @property
    def upper_right(self):
        return (self.corner[0] + 1, self.corner[1] + 1)

    @property
    def upper_left(self):
        return (self.corner[0], self.corner[1] + 1)

    @property
    def bottom(self):
        return (self.lower_left, self.lower_right)

    @property
    def right(self):
        return (self.lower_right, self.upper_right)

    @property
    def top(self):
        return (self.upper_left, self.upper_right)

    @property
    def left(self):
        return (self.lower_left, self.upper_left)

    @property
    def vertices(self):
        return (self.lower_left, self.lower_right, self.upper_right, self.upper_left)

    @property
    def edges(self):
        return (self.bottom, self.right, self.top, self.left)

    def counter_clockwise(self):
        """Edges with their traversal direction, starting at the lower-left vertex."""
        return (
            (self.bottom, self.lower_left, self.lower_right),
            (self.right, self.lower_right, self.upper_right),
            (self.top, self.upper_right, self.upper_left),
            (self.left, self.upper_left, self.lower_left),
        )


@dataclass(frozen=True)
class SnakeGraph:
    """
    A snake graph: tiles glued right (R) or up (U) in the order of the word.

    A word of length n-1 gives n tiles, 2n+2 vertices and 3n+1 edges.
    """

    word: str
    tiles: tuple

    @cached_property
    def vertices(self):
        return tuple(sorted({v for tile in self.tiles for v in tile.vertices}))

    @cached_property
    def edges(self):
        return tuple(sorted({e for tile in self.tiles for e in tile.edges}))

    @cached_property
    def edge_index(self):
        return {edge: i for i, edge in enumerate(self.edges)}

    @cached_property
    def incident(self):
        incident = {v: [] for v in self.vertices}
        for edge in self.edges:
            incident[edge[0]].append(edge)
            incident[edge[1]].append(edge)
        return {v: tuple(edges) for v, edges in incident.items()}

    @cached_property
    def edge_tiles(self):
        """Tile indices containing each edge (one or two)."""
        owners = {edge: [] for edge in self.edges}
        for tile in self.tiles:
            for edge in tile.edges:
                owners[edge].append(tile.index)
        return {edge: tuple(idx) for edge, idx in owners.items()}

    @cached_property
    def edges_in_tile_order(self):
        seen = []
        found = set()
        for tile in self.tiles:
            for edge in (tile.bottom, tile.left, tile.right, tile.top):
                if edge not in found:
                    found.add(edge)
                    seen.append(edge)
        return tuple(seen)

    @property
    def n(self):
        return len(self.tiles)

    @property
    def bottom_left(self):
        return (0, 0)

    @property
    def top_right(self):
        return self.tiles[-1].upper_right

    @property
    def is_straight(self):
        return set(self.word) <= {R}

    @property
    def is_zigzag(self):
        return all(letter == (U if i % 2 == 0 else R) for i, letter in enumerate(self.word))

    def tile(self, index):
        return self.tiles[index - 1]

    def check_edge(self, edge):
        edge = make_edge(*edge)
        if edge not in self.edge_index:
            raise UnknownEdge(format_edge(edge))
        return edge

    def __str__(self):
        return f"SnakeGraph({self.word!r}, {self.n} tiles)"


def build_snake(word):
    """Glue unit squares starting at (0, 0), one step per letter."""
    word = parse_word(word)
    x, y = 0, 0
    tiles = [Tile(1, (0, 0))]
    for i, letter in enumerate(word, start=2):
        if letter == R:
            x += 1
        else:
            y += 1
        tiles.append(Tile(i, (x, y)))
    return SnakeGraph(word=word, tiles=tuple(tiles))


def straight_word(tiles):
    return R * (tiles - 1)


def zigzag_word(tiles):
    return ''.join(U if i % 2 == 0 else R for i in range(tiles - 1))


def straight_snake(tiles):
    return build_snake(straight_word(tiles))


def zigzag_snake(tiles):
    return build_snake(zigzag_word(tiles))


def final_letter(word):
    """
    The direction the last tile is treated as leaving in.

    A straight ending repeats the last letter, a corner ending flips it.
    Words of length at most one end with both vertical edges.
    """
    if len(word) < 2:
        return R
    if word[-1] == word[-2]:
        return word[-1]
    return flip(word[-1])


@dataclass(frozen=True)
class MixedDimerCover:
    """Edge multiplicities; zero entries are not stored."""

    items: tuple

    @classmethod
    def from_mapping(cls, multiplicity):
        items = []
        for edge, count in multiplicity.items():
            count = int(count)
            if count < 0:
                raise InvalidLabeling(_("Edge multiplicities must be nonnegative."))
            if count:
                items.append((make_edge(*edge), count))
        return cls(tuple(sorted(items)))

    @classmethod
    def from_edges(cls, edges):
        counts = {}
        for edge in edges:
            edge = make_edge(*edge)
            counts[edge] = counts.get(edge, 0) + 1
        return cls.from_mapping(counts)

    @cached_property
    def multiplicity(self):
        return dict(self.items)

    def __getitem__(self, edge):
        return self.multiplicity.get(make_edge(*edge), 0)

    def __iter__(self):
        return iter(self.items)

    def __len__(self):
        return len(self.items)

    @property
    def support(self):
        return tuple(edge for edge, _count in self.items)

    @property
    def size(self):
        return sum(count for _edge, count in self.items)

    def degree(self, vertex):
        return sum(count for edge, count in self.items if vertex in edge)

    def dense(self, graph):
        return tuple(self[edge] for edge in graph.edges)

    def changed(self, delta):
        counts = dict(self.multiplicity)
        for edge, step in delta.items():
            counts[edge] = counts.get(edge, 0) + step
        return MixedDimerCover.from_mapping(counts)

    def key(self):
        """Canonical one-line serialization."""
        return ";".join(f"{format_edge(edge)}x{count}" for edge, count in self.items)

    def __str__(self):
        return self.key() or "(empty)"


@dataclass(frozen=True)
class VertexLabeling:
    """The vertex function n: every vertex gets a nonnegative integer."""

    items: tuple

    @classmethod
    def from_mapping(cls, graph, labels):
        missing = [v for v in graph.vertices if v not in labels]
        if missing:
            raise InvalidLabeling(
                _("Labeling is missing vertices %(missing)s."),
                missing=", ".join(format_vertex(v) for v in missing),
            )
        values = {}
        for v in graph.vertices:
            value = int(labels[v])
            if value < 0:
                raise InvalidLabeling(_("Vertex labels must be nonnegative."))
            values[v] = value
        return cls(tuple(sorted(values.items())))

    @classmethod
    def constant(cls, graph, k):
        return cls.from_mapping(graph, {v: k for v in graph.vertices})

    @classmethod
    def from_sequence(cls, graph, m):
        """The D0-labeling giving both endpoints of the k-th D0 edge the label m[k]."""
        d0 = canonical_edges(graph)
        if len(m) != len(d0):
            raise InvalidLabeling(
                _("Expected %(expected)d labels along D0, got %(got)d."),
                expected=len(d0), got=len(m),
            )
        labels = {}
        for edge, value in zip(d0, m):
            labels[edge[0]] = value
            labels[edge[1]] = value
        return cls.from_mapping(graph, labels)

    @classmethod
    def from_vertex_list(cls, graph, values):
        if len(values) != len(graph.vertices):
            raise InvalidLabeling(
                _("Expected %(expected)d vertex labels, got %(got)d."),
                expected=len(graph.vertices), got=len(values),
            )
        return cls.from_mapping(graph, dict(zip(graph.vertices, values)))

    @cached_property
    def labels(self):
        return dict(self.items)

    def __getitem__(self, vertex):
        return self.labels[vertex]

    def is_d_labeling(self, edges):
        return all(self[u] == self[v] for u, v in edges)

    def sequence(self, graph):
        """Labels along D0 in order, or None if this is not a D0-labeling."""
        d0 = canonical_edges(graph)
        if not self.is_d_labeling(d0):
            return None
        return tuple(self[u] for u, _v in d0)

    def with_sequence_ends(self, graph, first, last):
        """Relabel the endpoints of the first and last D0 edges."""
        d0 = canonical_edges(graph)
        labels = dict(self.labels)
        for v in d0[0]:
            labels[v] = first
        for v in d0[-1]:
            labels[v] = last
        return VertexLabeling.from_mapping(graph, labels)


@dataclass(frozen=True)
class EdgePath:
    """A north-east lattice path."""

    edges: tuple
    start: tuple
    end: tuple

    @classmethod
    def from_steps(cls, start, steps):
        x, y = start
        edges = []
        for step in steps:
            nxt = (x + 1, y) if step == R else (x, y + 1)
            edges.append(make_edge((x, y), nxt))
            x, y = nxt
        return cls(edges=tuple(edges), start=start, end=(x, y))

    @property
    def vertices(self):
        points = [self.start]
        for u, v in self.edges:
            points.append(v)
        return tuple(points)

    @property
    def steps(self):
        return ''.join(R if u[1] == v[1] else U for u, v in self.edges)

    def __len__(self):
        return len(self.edges)


def canonical_edges(graph):
    """
    The edges of D0 in their linear order.

    Every tile but the last contributes one edge: its bottom edge when the
    snake continues up, its left edge when it continues right. This puts
    the left edge of every UR corner and the bottom edge of every RU
    corner in D0, and fills the interiors of straight segments. The last
    tile contributes the pair of parallel edges picked by final_letter.
    """
    return _canonical_edges(graph.word, graph.tiles)


@lru_cache(maxsize=1024)
def _canonical_edges(word, tiles):
    edges = []
    for tile, letter in zip(tiles, word):
        edges.append(tile.bottom if letter == U else tile.left)
    last = tiles[-1]
    if final_letter(word) == U:
        edges.extend((last.bottom, last.top))
    else:
        edges.extend((last.left, last.right))

    covered = [v for edge in edges for v in edge]
    expected = {v for tile in tiles for v in tile.vertices}
    if len(covered) != len(set(covered)) or set(covered) != expected:
        logger.error("D0 construction is not a perfect matching for word %r", word)
        raise ConsistencyError(f"D0 for {word!r} is not a perfect matching")
    return tuple(edges)


def canonical_dimer_cover(graph):
    return MixedDimerCover.from_edges(canonical_edges(graph))


def standard_labeling(graph):
    """The k-th edge of D0 carries label k on both endpoints."""
    return VertexLabeling.from_sequence(graph, tuple(range(1, graph.n + 2)))


def parse_labeling(graph, text):
    """
    ``standard``, ``const:k``, or a comma list. A list of n+1 values runs
    along D0; a list of 2n+2 values follows the sorted vertices.
    """
    text = (text or 'standard').strip()
    if text == 'standard':
        return standard_labeling(graph)
    if text.startswith('const:'):
        value = text.split(':', 1)[1]
        if not value.strip().isdigit():
            raise InvalidLabeling(_("Constant labels must be nonnegative integers, got %(value)r."), value=value)
        return VertexLabeling.constant(graph, int(value))
    try:
        values = [int(x) for x in text.split(',')]
    except ValueError:
        raise InvalidLabeling(_("Cannot read labels %(text)r."), text=text)
    if len(values) == graph.n + 1:
        return VertexLabeling.from_sequence(graph, values)
    if len(values) == len(graph.vertices):
        return VertexLabeling.from_vertex_list(graph, values)
    raise InvalidLabeling(
        _("Expected %(d0)d labels along D0 or %(vertices)d vertex labels, got %(got)d."),
        d0=graph.n + 1, vertices=len(graph.vertices), got=len(values),
    )


def canonical_lattice_path(graph):
    """
    P0: the steps of the word, then around the last tile.

    The last two steps go along the edge picked by final_letter and then
    its perpendicular, so P0 meets D0 only on the last tile. A single tile
    takes its left edge and then its top edge.
    """
    if not graph.word:
        return EdgePath.from_steps((0, 0), U + R)
    last = final_letter(graph.word)
    return EdgePath.from_steps((0, 0), graph.word + last + flip(last))


def all_words(max_length):
    """Every word of length at most max_length, shortest first."""
    words = ['']
    frontier = ['']
    for _length in range(max_length):
        frontier = [w + letter for w in frontier for letter in (R, U)]
        words.extend(frontier)
    return words
