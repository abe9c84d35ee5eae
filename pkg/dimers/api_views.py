"""
Snake Graph Dimer Models API Views

Read-only REST API views. Every endpoint computes its answer on demand.
"""

import logging

from django.core.exceptions import ValidationError as DjangoValidationError
from rest_framework import permissions, status
from rest_framework.exceptions import ValidationError
from rest_framework.response import Response
from rest_framework.views import APIView
from rest_framework.views import exception_handler as drf_exception_handler

from .covers import count_covers
from .duality import dual_map, dual_word, snake_permutation_set
from .exceptions import GuardExceeded, error_message
from .lattice import build_lattice, rank_polynomial
from .permutations import triangle
from .serializers import (
    CountQuerySerializer,
    CountSerializer,
    CoverSerializer,
    DualSerializer,
    HasseQuerySerializer,
    HasseSerializer,
    LabeledWordQuerySerializer,
    PolynomialSerializer,
    QPolyParamsSerializer,
    SnakeGraphSerializer,
    TriangleParamsSerializer,
    TriangleSerializer,
)
from .snake import build_snake, canonical_dimer_cover, canonical_lattice_path, parse_labeling
from .transfer import q_catalan_poly, q_euler_poly

logger = logging.getLogger(__name__)


def _first_code(codes):
    """The first error code in a DRF ``get_codes()`` tree."""
    if isinstance(codes, dict):
        codes = list(codes.values())
    if isinstance(codes, list):
        return _first_code(codes[0]) if codes else 'invalid'
    return codes or 'invalid'


def exception_handler(exc, context):
    """Library errors become 400 responses with {detail, code}."""
    if isinstance(exc, DjangoValidationError):
        code = getattr(exc, 'code', None) or 'invalid'
        return Response({'detail': error_message(exc), 'code': code}, status=status.HTTP_400_BAD_REQUEST)
    if isinstance(exc, GuardExceeded):
        logger.warning("API request refused: %s", exc)
        return Response(
            {'detail': str(exc), 'code': 'guard_exceeded', 'predicted': exc.predicted, 'guard': exc.guard},
            status=status.HTTP_400_BAD_REQUEST,
        )
    if isinstance(exc, ValidationError):
        code = _first_code(exc.get_codes())
        return Response({'detail': exc.detail, 'code': code}, status=status.HTTP_400_BAD_REQUEST)
    return drf_exception_handler(exc, context)


class DimersAPIView(APIView):
    """Base view: open access, query parameters validated by ``query_serializer_class``."""

    permission_classes = [permissions.AllowAny]
    query_serializer_class = None

    def get_query(self, request, **extra):
        data = dict(request.query_params.items())
        data.update(extra)
        serializer = self.query_serializer_class(data=data)
        serializer.is_valid(raise_exception=True)
        return serializer.validated_data

    def get_graph(self, query):
        graph = build_snake(query['word'])
        labeling = parse_labeling(graph, query.get('labels'))
        return graph, labeling


class SnakeView(DimersAPIView):
    """Graph JSON for a word, with D0 and P0."""

    query_serializer_class = LabeledWordQuerySerializer

    def get(self, request):
        graph, labeling = self.get_graph(self.get_query(request))
        data = dict(SnakeGraphSerializer(graph, context={'labeling': labeling}).data)
        data['canonical_cover'] = CoverSerializer(canonical_dimer_cover(graph)).data['edges']
        data['canonical_path'] = canonical_lattice_path(graph).steps
        return Response(data)


class CountView(DimersAPIView):
    query_serializer_class = CountQuerySerializer

    def get(self, request):
        query = self.get_query(request)
        graph, labeling = self.get_graph(query)
        count = count_covers(graph, labeling, method=query['method'])
        sequence = labeling.sequence(graph)
        serializer = CountSerializer({
            'word': graph.word,
            'labels': list(sequence) if sequence is not None else None,
            'method': query['method'],
            'count': count,
        })
        return Response(serializer.data)


class QPolyView(DimersAPIView):
    query_serializer_class = QPolyParamsSerializer

    def get(self, request, kind, n):
        query = self.get_query(request, kind=kind, n=n)
        build = q_euler_poly if query['kind'] == 'euler' else q_catalan_poly
        poly = build(query['n'])
        return Response({
            'kind': query['kind'],
            'n': query['n'],
            'polynomial': PolynomialSerializer(poly).data,
            'value_at_1': poly.substitute({'q': 1}),
        })


class TriangleView(DimersAPIView):
    query_serializer_class = TriangleParamsSerializer

    def get(self, request, kind, n):
        query = self.get_query(request, kind=kind, n=n)
        table = triangle(query['kind'], query['n'])
        return Response(TriangleSerializer({'kind': table.kind, 'rows': [list(r) for r in table.rows]}).data)


class HasseView(DimersAPIView):
    """The face twist lattice of a labeled snake."""

    query_serializer_class = HasseQuerySerializer

    def get(self, request):
        query = self.get_query(request)
        graph, labeling = self.get_graph(query)
        lattice = build_lattice(graph, labeling, guard=query.get('guard'))
        if query['node_label'] == 'code':
            codes = snake_permutation_set(graph, lattice=lattice)
            code_of = dict(zip(lattice.elements, codes))

            def render(cover):
                return "".join(str(x) for x in code_of[cover])
        elif query['node_label'] == 'index':
            render = lattice.index.get
        else:
            render = str
        data = dict(HasseSerializer(lattice, context={'label': render}).data)
        data['rank_polynomial'] = PolynomialSerializer(rank_polynomial(lattice)).data
        return Response(data)


class DualView(DimersAPIView):
    query_serializer_class = LabeledWordQuerySerializer

    def get(self, request):
        graph, labeling = self.get_graph(self.get_query(request))
        image = dual_map(graph, labels=labeling)
        data = dict(DualSerializer(image, context={'word': graph.word}).data)
        data['dual_word'] = dual_word(graph.word)
        return Response(data)
