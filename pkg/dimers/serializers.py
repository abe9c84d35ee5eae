"""
Snake Graph Dimer Models Serializers

DRF serializers for every JSON shape the app reads or writes: query
parameters of the API, and graphs, covers, polynomials, matrices, Hasse
diagrams, networks and triangles on the way out.
"""

from rest_framework import serializers

from .conf import get_setting
from .covers import METHODS
from .exceptions import InvalidWord
from .permutations import TRIANGLES
from .snake import MixedDimerCover, format_vertex, make_edge, parse_word, standard_labeling


def _point(v):
    return [v[0], v[1]]


def _at_most_setting(value, name):
    limit = get_setting(name)
    if value > limit:
        raise serializers.ValidationError(
            f"Ensure this value is less than or equal to {limit}.", code='max_value',
        )
    return value


class WordField(serializers.CharField):
    """A snake word; blank means the empty word."""

    def __init__(self, **kwargs):
        kwargs.setdefault('allow_blank', True)
        kwargs.setdefault('required', False)
        kwargs.setdefault('default', '')
        kwargs.setdefault('trim_whitespace', True)
        super().__init__(**kwargs)

    def to_internal_value(self, data):
        try:
            return parse_word(super().to_internal_value(data))
        except InvalidWord as exc:
            raise serializers.ValidationError(exc.messages, code=exc.code)


class CoverEdgesField(serializers.Field):
    """[[[x, y], [x, y], multiplicity], ...] with positive multiplicities only."""

    default_error_messages = {
        'shape': "Each entry must be [[x, y], [x, y], multiplicity].",
    }

    def to_representation(self, items):
        return [[_point(u), _point(v), count] for (u, v), count in items]

    def to_internal_value(self, data):
        if not isinstance(data, list):
            self.fail('shape')
        counts = {}
        for entry in data:
            try:
                (x1, y1), (x2, y2), count = entry
                edge = make_edge((int(x1), int(y1)), (int(x2), int(y2)))
                count = int(count)
            except (TypeError, ValueError):
                self.fail('shape')
            if count < 0:
                self.fail('shape')
            counts[edge] = counts.get(edge, 0) + count
        return MixedDimerCover.from_mapping(counts).items


# query parameters

class WordQuerySerializer(serializers.Serializer):
    word = WordField()


class LabeledWordQuerySerializer(WordQuerySerializer):
    labels = serializers.CharField(required=False, default='standard')


class CountQuerySerializer(LabeledWordQuerySerializer):
    method = serializers.ChoiceField(choices=METHODS, default='auto')


class HasseQuerySerializer(LabeledWordQuerySerializer):
    guard = serializers.IntegerField(required=False, min_value=0)
    node_label = serializers.ChoiceField(choices=('cover', 'code', 'index'), default='cover')

    def validate_guard(self, value):
        # clients may lower the guard, never raise it
        return _at_most_setting(value, 'ENUMERATION_GUARD')


class QPolyParamsSerializer(serializers.Serializer):
    kind = serializers.ChoiceField(choices=('euler', 'catalan'))
    n = serializers.IntegerField(min_value=1)

    def validate_n(self, value):
        return _at_most_setting(value, 'QPOLY_N_LIMIT')

    def validate(self, attrs):
        if attrs['kind'] == 'euler' and attrs['n'] < 2:
            raise serializers.ValidationError({'n': "q-Euler polynomials start at n=2."})
        return attrs


class TriangleParamsSerializer(serializers.Serializer):
    kind = serializers.ChoiceField(choices=TRIANGLES)
    n = serializers.IntegerField(min_value=1, max_value=60)


# results

class SnakeGraphSerializer(serializers.Serializer):
    """
    {word, vertices, edges, labels}. Labels come from ``context['labeling']``
    (a VertexLabeling or a vertex -> value dict) and default to the
    standard labeling.
    """

    word = serializers.CharField(read_only=True)
    vertices = serializers.SerializerMethodField()
    edges = serializers.SerializerMethodField()
    labels = serializers.SerializerMethodField()

    def get_vertices(self, graph):
        return [_point(v) for v in graph.vertices]

    def get_edges(self, graph):
        return [[_point(u), _point(v)] for u, v in graph.edges]

    def get_labels(self, graph):
        labeling = self.context.get('labeling') or standard_labeling(graph)
        values = getattr(labeling, 'labels', labeling)
        return {format_vertex(v): values[v] for v in sorted(values)}


class CoverSerializer(serializers.Serializer):
    edges = CoverEdgesField(source='items')

    def to_cover(self):
        return MixedDimerCover(self.validated_data['items'])


class PolynomialSerializer(serializers.Serializer):
    text = serializers.SerializerMethodField()
    terms = serializers.SerializerMethodField()

    def get_text(self, poly):
        return str(poly)

    def get_terms(self, poly):
        return poly.to_json()


class MatrixSerializer(serializers.Serializer):
    shape = serializers.SerializerMethodField()
    entries = serializers.SerializerMethodField()

    def get_shape(self, matrix):
        return list(matrix.shape)

    def get_entries(self, matrix):
        return matrix.to_json()


class CountSerializer(serializers.Serializer):
    word = serializers.CharField()
    labels = serializers.ListField(child=serializers.IntegerField(), allow_null=True)
    method = serializers.CharField()
    count = serializers.IntegerField()


class TriangleSerializer(serializers.Serializer):
    kind = serializers.CharField()
    rows = serializers.ListField(child=serializers.ListField(child=serializers.IntegerField()))


class HasseSerializer(serializers.Serializer):
    """
    {elements, covers, ranks}. ``context['label']`` renders elements and
    defaults to str.
    """

    elements = serializers.SerializerMethodField()
    covers = serializers.SerializerMethodField()
    ranks = serializers.SerializerMethodField()

    def get_elements(self, lattice):
        label = self.context.get('label', str)
        return [label(e) for e in lattice.elements]

    def get_covers(self, lattice):
        return [[lo, hi] for lo, hi in lattice.covers]

    def get_ranks(self, lattice):
        return list(lattice.ranks)


class NetworkSerializer(serializers.Serializer):
    vertices = serializers.SerializerMethodField()
    arcs = serializers.SerializerMethodField()
    sources = serializers.SerializerMethodField()
    sinks = serializers.SerializerMethodField()

    def get_vertices(self, network):
        return network.to_json()['vertices']

    def get_arcs(self, network):
        return network.to_json()['arcs']

    def get_sources(self, network):
        return list(network.sources)

    def get_sinks(self, network):
        return list(network.sinks)


class DualSerializer(serializers.Serializer):
    """The dual graph with transported labels and the edge bijection."""

    word = serializers.SerializerMethodField()
    dual = serializers.SerializerMethodField()
    edge_map = serializers.SerializerMethodField()

    def get_word(self, image):
        return self.context.get('word', '')

    def get_dual(self, image):
        return SnakeGraphSerializer(image.graph, context={'labeling': image.labels}).data

    def get_edge_map(self, image):
        return [
            [[_point(u), _point(v)], [_point(x), _point(y)]]
            for (u, v), (x, y) in sorted(image.edge_map.items())
        ]
