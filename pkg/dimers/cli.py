"""
Snake Graph Dimer Models Command Line

Subcommands shared by ``manage.py snake`` and :func:`run`. Results go to
stdout, diagnostics to stderr. Exit status is 0 on success, 2 for invalid
input and 3 when a guard refuses an enumeration.
"""

import argparse
import contextlib
import io
import logging

from django.core.exceptions import ValidationError
from rest_framework.exceptions import APIException
from rest_framework.parsers import JSONParser
from rest_framework.renderers import JSONRenderer

from . import covers as cover_ops
from . import lattice as lattice_ops
from . import networks
from .duality import dual_map, snake_permutation_set
from .exceptions import GuardExceeded, error_message
from .permutations import (
    alt_to_cover, cat_to_cover, cover_to_alt, cover_to_cat, format_permutation, parse_permutation,
    triangle,
)
from .serializers import (
    CountSerializer, CoverSerializer, DualSerializer, HasseSerializer, MatrixSerializer,
    NetworkSerializer, PolynomialSerializer, SnakeGraphSerializer, TriangleSerializer,
)
from .snake import build_snake, parse_labeling, straight_snake, zigzag_snake
from .transfer import (
    LaurentPoly, q_catalan_poly, q_catalan_weight, q_euler_poly, q_euler_weights,
    straight_product, symbolic_weight, weighted_straight_product, weighted_zigzag_product,
    zigzag_product,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_GUARD = 3

FORMATS = ('text', 'json', 'dot')
WEIGHTS = ('symbolic', 'q-euler', 'q-catalan')


class UsageError(Exception):
    pass


class CliParser(argparse.ArgumentParser):
    """Raises instead of exiting, so callers choose the stream and status."""

    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def render_json(data):
    return JSONRenderer().render(data, renderer_context={'indent': 2}).decode()


def parse_json(text):
    return JSONParser().parse(io.BytesIO(text.encode()))


def _sequence(text):
    try:
        return tuple(int(x) for x in text.split(',') if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma separated list of integers, got {text!r}")


def _word_options(parser, labels=True):
    parser.add_argument('--word', default='', help="snake word over R and U (default: the empty word)")
    if labels:
        parser.add_argument('--labels', default='standard',
                            help="standard, const:k, or a comma list along D0 or over sorted vertices")


def _output_options(parser, formats=('text', 'json')):
    parser.add_argument('--format', choices=formats, default='text')


def add_subcommands(parser):
    """Attach the subcommands to ``parser`` (an argparse or Django CommandParser)."""
    parser.add_argument('--guard', type=int, default=None,
                        help="largest predicted enumeration size to attempt")
    sub = parser.add_subparsers(dest='subcommand', metavar='SUBCOMMAND')
    sub.required = True

    p = sub.add_parser('count', help="count mixed dimer covers")
    _word_options(p)
    p.add_argument('--method', choices=cover_ops.METHODS, default='auto')
    _output_options(p)

    p = sub.add_parser('enumerate', help="list every mixed dimer cover")
    _word_options(p)
    _output_options(p)

    p = sub.add_parser('matrix', help="straight or zigzag transfer matrix product")
    p.add_argument('shape', choices=('straight', 'zigzag'))
    p.add_argument('labels', type=_sequence, help="label sequence m0,m1,...")
    p.add_argument('--weights', choices=WEIGHTS, default=None)
    p.add_argument('--q', type=int, default=None, help="specialize q to an integer")
    _output_options(p)

    p = sub.add_parser('qpoly', help="q-Euler, q-Catalan or rank polynomials")
    p.add_argument('kind', choices=('euler', 'catalan', 'rank'))
    p.add_argument('n', type=int, nargs='?', default=None)
    _word_options(p)
    p.add_argument('--q', type=int, default=None, help="specialize q to an integer")
    _output_options(p)

    p = sub.add_parser('triangle', help="Entringer, ballot or Seidel triangle")
    p.add_argument('kind', choices=('entringer', 'ballot', 'seidel'))
    p.add_argument('n', type=int)
    _output_options(p)

    p = sub.add_parser('bijection', help="permutations to covers and back")
    p.add_argument('family', choices=('alt', 'cat'))
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument('--perm', help="permutation in one-line notation")
    group.add_argument('--cover', help="cover JSON {\"edges\": [[[x,y],[x,y],m], ...]}")
    p.add_argument('--tiles', type=int, default=None, help="number of tiles for --cover")
    _output_options(p)

    p = sub.add_parser('hasse', help="face twist lattice")
    _word_options(p)
    p.add_argument('--node-label', choices=('cover', 'code', 'index'), default='cover')
    _output_options(p, FORMATS)

    p = sub.add_parser('dual', help="dual snake graph with transported labels")
    _word_options(p)
    _output_options(p)

    p = sub.add_parser('network', help="path-weight matrix or matching graph of a factor chain")
    p.add_argument('factors', help="factor chain such as U1:1,L1:2")
    p.add_argument('--source', type=int, default=1)
    p.add_argument('--sink', type=int, default=1)
    _output_options(p, FORMATS)

    p = sub.add_parser('matchings', help="perfect matchings of the Euler or Catalan graphs")
    p.add_argument('family', choices=('euler', 'catalan'))
    p.add_argument('n', type=int)
    _output_options(p, FORMATS)
    return parser


def build_parser():
    parser = CliParser(prog='snake', description=__doc__.strip().splitlines()[0])
    return add_subcommands(parser)


# handlers

def _graph(options):
    graph = build_snake(options['word'])
    return graph, parse_labeling(graph, options.get('labels'))


def _weight(name, m):
    if name == 'q-euler':
        return q_euler_weights(len(m) - 1)
    if name == 'q-catalan':
        return q_catalan_weight
    return symbolic_weight


def _specialize(poly, q):
    if q is None:
        return poly
    return poly.substitute({'q': q})


def handle_count(options):
    graph, labeling = _graph(options)
    if options['method'] == 'brute':
        count = len(cover_ops.enumerate_covers(graph, labeling, guard=options.get('guard')))
    else:
        count = cover_ops.count_covers(graph, labeling, method=options['method'])
    if options['format'] == 'json':
        sequence = labeling.sequence(graph)
        return render_json(CountSerializer({
            'word': graph.word,
            'labels': list(sequence) if sequence is not None else None,
            'method': options['method'],
            'count': count,
        }).data)
    return str(count)


def handle_enumerate(options):
    graph, labeling = _graph(options)
    found = cover_ops.enumerate_covers(graph, labeling, guard=options.get('guard'))
    if options['format'] == 'json':
        return render_json({
            'graph': SnakeGraphSerializer(graph, context={'labeling': labeling}).data,
            'covers': [CoverSerializer(c).data for c in found],
        })
    return "\n".join(c.key() for c in found)


def handle_matrix(options):
    m = options['labels']
    weights = options.get('weights')
    if weights is None:
        product = straight_product(m) if options['shape'] == 'straight' else zigzag_product(m)
    else:
        build = weighted_straight_product if options['shape'] == 'straight' else weighted_zigzag_product
        product = build(m, _weight(weights, m))
    if options.get('q') is not None:
        product = product.substitute({'q': options['q']})
    if options['format'] == 'json':
        return render_json(MatrixSerializer(product).data)
    return str(product)


def handle_qpoly(options):
    kind, n = options['kind'], options.get('n')
    if kind == 'rank':
        graph, labeling = _graph(options)
        poly = lattice_ops.rank_polynomial(lattice_ops.build_lattice(graph, labeling, guard=options.get('guard')))
    else:
        if n is None:
            raise UsageError(f"qpoly {kind} needs n")
        poly = q_euler_poly(n) if kind == 'euler' else q_catalan_poly(n)
    value = _specialize(poly, options.get('q'))
    if options['format'] == 'json':
        if isinstance(value, LaurentPoly):
            return render_json(PolynomialSerializer(value).data)
        return render_json({'q': options['q'], 'value': str(value)})
    return str(value)


def handle_triangle(options):
    table = triangle(options['kind'], options['n'])
    if options['format'] == 'json':
        return render_json(TriangleSerializer({'kind': table.kind, 'rows': [list(r) for r in table.rows]}).data)
    return str(table)


def handle_bijection(options):
    family = options['family']
    if options.get('perm'):
        sigma = parse_permutation(options['perm'])
        cover = alt_to_cover(sigma) if family == 'alt' else cat_to_cover(sigma)
        if options['format'] == 'json':
            return render_json(CoverSerializer(cover).data)
        return cover.key()

    serializer = CoverSerializer(data=parse_json(options["cover"]))
    serializer.is_valid(raise_exception=True)
    cover = serializer.to_cover()
    tiles = options.get('tiles')
    if tiles is None:
        raise UsageError("bijection --cover needs --tiles")
    if family == 'alt':
        sigma = cover_to_alt(cover, straight_snake(tiles))
    else:
        sigma = cover_to_cat(cover, zigzag_snake(tiles))
    if options['format'] == 'json':
        return render_json({'permutation': list(sigma)})
    return format_permutation(sigma)


def handle_hasse(options):
    graph, labeling = _graph(options)
    guard = options.get('guard')
    lattice = lattice_ops.build_lattice(graph, labeling, guard=guard)
    node_label = options.get('node_label', 'cover')
    if node_label == 'code':
        code_of = dict(zip(lattice.elements, snake_permutation_set(graph, labeling, guard=guard)))

        def label(cover):
            return "".join(str(x) for x in code_of[cover])
    elif node_label == 'index':
        label = lattice.index.get
    else:
        label = str
    if options['format'] == 'dot':
        return lattice_ops.to_dot(lattice, label=label)
    if options['format'] == 'json':
        return render_json(HasseSerializer(lattice, context={'label': label}).data)
    lines = [f"{i} rank={r} {label(e)}" for i, (e, r) in enumerate(zip(lattice.elements, lattice.ranks))]
    lines.extend(f"{lo} < {hi}" for lo, hi in lattice.covers)
    return "\n".join(lines)


def handle_dual(options):
    graph, labeling = _graph(options)
    image = dual_map(graph, labels=labeling)
    if options['format'] == 'json':
        return render_json(DualSerializer(image, context={'word': graph.word}).data)
    sequence = image.labels.sequence(image.graph)
    labels = ",".join(str(x) for x in sequence) if sequence is not None else "(not a D0-labeling)"
    return f"{image.graph.word or '(empty)'}\n{labels}"


def handle_network(options):
    factors = networks.parse_factors(options['factors'])
    network = networks.network_for_factors(factors)
    if options['format'] == 'dot':
        return networks.to_dot(networks.perfectly_orient(network, options['source'], options['sink']))
    matrix = networks.path_weight_matrix(network)
    if options['format'] == 'json':
        data = dict(NetworkSerializer(network).data)
        data['matrix'] = MatrixSerializer(matrix).data
        return render_json(data)
    return str(matrix)


def handle_matchings(options):
    family, n = options['family'], options['n']
    if family == 'euler':
        graph = networks.euler_matching_graph(n)
    else:
        graph = networks.catalan_matching_graph(n)
    if options['format'] == 'dot':
        return networks.to_dot(graph)
    count = networks.count_perfect_matchings(graph)
    paths = len(networks.enumerate_paths(graph))
    if options['format'] == 'json':
        return render_json({
            'family': family, 'n': n, 'matchings': count, 'paths': paths,
            'vertices': graph.graph.number_of_nodes(), 'edges': graph.graph.number_of_edges(),
        })
    return f"{count}"


HANDLERS = {
    'count': handle_count,
    'enumerate': handle_enumerate,
    'matrix': handle_matrix,
    'qpoly': handle_qpoly,
    'triangle': handle_triangle,
    'bijection': handle_bijection,
    'hasse': handle_hasse,
    'dual': handle_dual,
    'network': handle_network,
    'matchings': handle_matchings,
}


def dispatch(options):
    """Run one parsed subcommand and return its output text."""
    text = HANDLERS[options['subcommand']](options)
    return text if text.endswith("\n") else text + "\n"


def execute(options, stdout, stderr):
    """Run parsed options; library errors become exit codes."""
    try:
        stdout.write(dispatch(options))
    except GuardExceeded as exc:
        logger.warning("%s", exc)
        stderr.write(f"{exc}\n")
        return EXIT_GUARD
    except (ValidationError, UsageError, ValueError) as exc:
        stderr.write(f"{error_message(exc)}\n")
        return EXIT_INVALID
    except APIException as exc:
        stderr.write(f"{exc.detail}\n")
        return EXIT_INVALID
    return EXIT_OK


def run(argv, stdout, stderr):
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(stdout):
            namespace = parser.parse_args(list(argv))
    except UsageError as exc:
        stderr.write(f"{exc}\n")
        return EXIT_INVALID
    except SystemExit as exc:
        return int(exc.code or 0)
    return execute(vars(namespace), stdout, stderr)
