"""
Snake Duality

The tile maps that carry a snake graph to its dual, mixed lattice paths,
and the permutation sets read off from twist counts.
"""

import logging
from dataclasses import dataclass

from django.utils.translation import gettext_lazy as _

from .covers import enumerate_covers
from .exceptions import ConsistencyError, InvalidCode, UnsupportedLabeling
from .lattice import HasseDiagram, build_lattice, twist_counts
from .permutations import lehmer_decode
from .snake import (
    MixedDimerCover, VertexLabeling, build_snake, canonical_lattice_path, flip, make_edge,
    parse_word, standard_labeling,
)

logger = logging.getLogger(__name__)


def dual_word(word):
    """Flip the letters in odd (1-indexed) positions."""
    word = parse_word(word)
    return ''.join(flip(letter) if i % 2 == 0 else letter for i, letter in enumerate(word))


def _reflect(point, corner):
    x0, y0 = corner
    return (x0 + point[1] - y0, y0 + point[0] - x0)


def tile_map(word, i, positions, labels):
    """
    Cut along the down-diagonal of tile i and reflect everything past the
    cut across the up-diagonal. Labels at the two cut corners swap.
    """
    graph = build_snake(word)
    tile = graph.tile(i)
    left_edges = {e for t in graph.tiles[:i - 1] for e in t.edges} | {tile.bottom, tile.left}
    left_vertices = {v for e in left_edges for v in e} - {tile.upper_left, tile.lower_right}
    corner = tile.lower_left

    moved = {}
    for original, edge in positions.items():
        if edge in left_edges:
            moved[original] = edge
        else:
            moved[original] = make_edge(_reflect(edge[0], corner), _reflect(edge[1], corner))
    relabeled = {}
    for vertex, value in labels.items():
        target = vertex if vertex in left_vertices else _reflect(vertex, corner)
        relabeled[target] = value
    new_word = word[:i - 1] + ''.join(flip(letter) for letter in word[i - 1:])
    return new_word, moved, relabeled


@dataclass(frozen=True)
class DualImage:
    graph: object
    edge_map: dict
    labels: object = None
    cover: object = None


def dual_map(graph, labels=None, cover=None):
    """
    Apply tau_n o ... o tau_1.

    ``labels`` may be a VertexLabeling or any vertex -> value mapping; it
    comes back in the same form. ``cover`` is any edge multiset.
    """
    word = graph.word
    positions = {e: e for e in graph.edges}
    as_labeling = isinstance(labels, VertexLabeling)
    values = dict(labels.labels) if as_labeling else dict(labels or {})
    for i in range(1, graph.n + 1):
        word, positions, values = tile_map(word, i, positions, values)
    if word != dual_word(graph.word):
        raise ConsistencyError(f"Tile maps gave {word!r} for the dual of {graph.word!r}")
    dual = build_snake(word)
    if set(positions.values()) != set(dual.edges):
        raise ConsistencyError("Tile maps do not biject edges onto the dual graph")

    image_labels = None
    if labels is not None:
        image_labels = VertexLabeling.from_mapping(dual, values) if as_labeling else values
    image_cover = None
    if cover is not None:
        image_cover = MixedDimerCover.from_mapping({positions[e]: m for e, m in cover})
    return DualImage(graph=dual, edge_map=positions, labels=image_labels, cover=image_cover)


class MixedLatticePath(MixedDimerCover):
    """An edge multiset that decomposes into the paths L_0, ..., L_n."""


def _paths(graph, start, end, length):
    """North-east paths inside the graph, lowest (rightmost-first) first."""
    edges = set(graph.edges)
    out = []

    def walk(at, steps):
        if len(steps) == length:
            if at == end:
                out.append(tuple(steps))
            return
        for nxt in ((at[0] + 1, at[1]), (at[0], at[1] + 1)):
            edge = make_edge(at, nxt)
            if edge in edges:
                steps.append(edge)
                walk(nxt, steps)
                steps.pop()

    walk(start, [])
    return out


def decompose_mixed_path(graph, multiset):
    """
    Paths L_n, ..., L_0 whose union is the multiset, or None.

    L_i has i+1 edges and starts at the (n-i)-th vertex of the canonical
    path. Longer paths are placed first, each trying its lowest candidate
    first.
    """
    counts = dict(multiset.multiplicity if hasattr(multiset, 'multiplicity') else multiset)
    n = graph.n
    if sum(counts.values()) != (n + 1) * (n + 2) // 2:
        return None
    p0 = canonical_lattice_path(graph).vertices
    end = graph.top_right
    candidates = {i: _paths(graph, p0[n - i], end, i + 1) for i in range(n + 1)}
    chosen = {}

    def place(i):
        if i < 0:
            return not any(counts.values())
        for path in candidates[i]:
            if all(counts.get(e, 0) > 0 for e in path):
                for e in path:
                    counts[e] -= 1
                chosen[i] = path
                if place(i - 1):
                    return True
                for e in path:
                    counts[e] += 1
        return False

    if place(n):
        return [chosen[i] for i in range(n + 1)]
    return None


def is_mixed_lattice_path(graph, multiset):
    return decompose_mixed_path(graph, multiset) is not None


def enumerate_mixed_paths(graph, check=True, guard=None):
    """
    Mixed lattice paths on a standardly labeled graph: the images of the
    covers of its dual under the tile maps.
    """
    dual = build_snake(dual_word(graph.word))
    labeling = standard_labeling(dual)
    paths = []
    for cover in enumerate_covers(dual, labeling, guard=guard):
        image = dual_map(dual, cover=cover).cover
        path = MixedLatticePath(image.items)
        if check and not is_mixed_lattice_path(graph, path):
            raise ConsistencyError(f"Dual image {path} of a cover is not a mixed lattice path")
        paths.append(path)
    paths.sort(key=lambda p: p.dense(graph))
    return paths


def path_flip(graph, path, tile_index):
    """Replace a right-then-up corner around the tile by up-then-right."""
    tile = graph.tile(tile_index)
    if path[tile.bottom] == 0 or path[tile.right] == 0:
        return None
    return MixedLatticePath(path.changed({
        tile.bottom: -1, tile.right: -1, tile.left: 1, tile.top: 1,
    }).items)


def build_path_lattice(graph, guard=None):
    """Mixed lattice paths on the graph ordered by flips."""
    elements = enumerate_mixed_paths(graph, check=False, guard=guard)
    index = {p: i for i, p in enumerate(elements)}
    covers, tiles = [], []
    for i, path in enumerate(elements):
        for tile in graph.tiles:
            upper = path_flip(graph, path, tile.index)
            if upper is not None and upper in index:
                covers.append((i, index[upper]))
                tiles.append(tile.index)
    return HasseDiagram(elements, covers, tiles=tiles)


def flip_counts(graph, guard=None):
    """(a_1, ..., a_n): flips per tile from the minimal mixed lattice path."""
    return twist_counts(build_path_lattice(graph, guard=guard), graph.n)


def snake_permutation_set(graph, labeling=None, guard=None, lattice=None):
    """
    The Lehmer codes (a_n, ..., a_1, 0) for the twist counts a_i of every
    cover, in lattice element order. Tile i may twist at most i times.
    Pass ``lattice`` to reuse an already built twist lattice of ``graph``.
    """
    if lattice is None:
        labeling = labeling or standard_labeling(graph)
        lattice = build_lattice(graph, labeling, guard=guard)
    codes = []
    for counts in twist_counts(lattice, graph.n):
        for i, a in enumerate(counts, start=1):
            if a > i:
                raise UnsupportedLabeling(
                    _("Tile %(tile)d twists %(count)d times, more than its index allows."),
                    tile=i, count=a,
                )
        codes.append(tuple(reversed(counts)) + (0,))
    logger.debug("S_G for %r has %d codes", graph.word, len(codes))
    return codes


def snake_permutations(graph, labeling=None):
    return [lehmer_decode(code) for code in snake_permutation_set(graph, labeling)]


def cycle_notation(sigma):
    seen = set()
    cycles = []
    for start in range(1, len(sigma) + 1):
        if start in seen:
            continue
        cycle = [start]
        seen.add(start)
        nxt = sigma[start - 1]
        while nxt != start:
            cycle.append(nxt)
            seen.add(nxt)
            nxt = sigma[nxt - 1]
        cycles.append(cycle)
    sep = '' if len(sigma) <= 9 else ','
    return ''.join('(' + sep.join(str(x) for x in cycle) + ')' for cycle in cycles)


def coxeter_word_code(reduced_word, n):
    """0/1 Lehmer code with L_i = 1 iff s_i occurs in the word."""
    used = set(int(i) for i in reduced_word)
    if any(not 1 <= i < n for i in used):
        raise InvalidCode(_("Adjacent transpositions in S_%(n)d are s_1..s_%(top)d."), n=n, top=n - 1)
    return tuple(1 if i in used else 0 for i in range(1, n + 1))
