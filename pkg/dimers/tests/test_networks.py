from django.test import SimpleTestCase, override_settings

from dimers.exceptions import DimensionMismatch, GuardExceeded
from dimers.lattice import BLACK, WHITE
from dimers.networks import (
    catalan_factors, catalan_matching_graph, chain_matrix, count_perfect_matchings, enumerate_paths,
    euler_factors, euler_matching_graph, euler_terminals, factor_matrix, format_factors,
    is_perfect_matching, network_for_factors, parse_factors, path_to_matching, path_weight_matrix,
    perfectly_orient, to_dot,
)
from dimers.transfer import LaurentMatrix, structural_matrix

EULER = {2: 1, 3: 2, 4: 5, 5: 16, 6: 61, 7: 272}
CATALAN = {1: 1, 2: 2, 3: 5, 4: 14, 5: 42, 6: 132}


class FactorTests(SimpleTestCase):
    def test_parse_and_format(self):
        factors = parse_factors('U1:1, l1:2,U2:3')
        self.assertEqual(factors, [('U', 1, 1), ('L', 1, 2), ('U', 2, 3)])
        self.assertEqual(format_factors(factors), 'U1:1,L1:2,U2:3')
        self.assertEqual(parse_factors(''), [])
        for bad in ('X1:2', 'U1', 'U1:b'):
            with self.assertRaises(DimensionMismatch):
                parse_factors(bad)

    def test_block_matrices(self):
        self.assertEqual(factor_matrix('U', 2, 2), [[1, 1, 1], [0, 1, 1], [0, 0, 1]])
        self.assertEqual(factor_matrix('L', 1, 2), structural_matrix('W', 1, 1) @ structural_matrix('R', 1, 2))
        with self.assertRaises(DimensionMismatch):
            factor_matrix('R', 1, 1)

    def test_families(self):
        self.assertEqual(euler_factors(5), [('U', 1, 1), ('L', 1, 2), ('U', 2, 3), ('L', 3, 4)])
        self.assertEqual(catalan_factors(3), [('U', 1, 1), ('L', 1, 2), ('L', 2, 3)])
        self.assertEqual(euler_terminals(4), (1, 4))
        self.assertEqual(euler_terminals(5), (1, 1))
        with self.assertRaises(DimensionMismatch):
            euler_factors(1)
        with self.assertRaises(DimensionMismatch):
            catalan_factors(0)


class NetworkTests(SimpleTestCase):
    def test_single_u_block(self):
        network = network_for_factors([('U', 2, 2)])
        self.assertEqual(len(network.sources), 3)
        self.assertEqual(len(network.sinks), 3)
        self.assertEqual(path_weight_matrix(network), [[1, 1, 1], [0, 1, 1], [0, 0, 1]])

    def test_parallel_strands(self):
        network = network_for_factors([], strands=3)
        self.assertEqual(path_weight_matrix(network), LaurentMatrix.identity(3))

    def test_concatenation_multiplies(self):
        chains = [
            [('U', 1, 1), ('L', 1, 2), ('U', 2, 3)],
            [('L', 2, 1), ('U', 1, 3)],
            [('U', 3, 1), ('L', 1, 1), ('L', 1, 4)],
            [('L', 0, 2), ('U', 2, 0)],
            catalan_factors(4),
            euler_factors(6),
        ]
        for factors in chains:
            network = network_for_factors(factors)
            self.assertEqual(path_weight_matrix(network), chain_matrix(factors), format_factors(factors))

    def test_chain_must_glue(self):
        with self.assertRaises(DimensionMismatch):
            network_for_factors([('U', 1, 1), ('L', 2, 3)])
        with self.assertRaises(DimensionMismatch):
            network_for_factors([('R', 1, 1)])

    def test_path_counts(self):
        for n, value in EULER.items():
            source, sink = euler_terminals(n)
            matrix = path_weight_matrix(network_for_factors(euler_factors(n)))
            self.assertEqual(matrix.entry(source, sink), value, n)
        for n, value in CATALAN.items():
            matrix = path_weight_matrix(network_for_factors(catalan_factors(n)))
            self.assertEqual(matrix.entry(1, 1), value, n)

    def test_json(self):
        data = network_for_factors([('U', 1, 1)]).to_json()
        self.assertEqual(data['sources'], ['t0.1', 't0.2'])
        self.assertEqual(data['sinks'], ['t1.1', 't1.2'])
        self.assertIn(['m0.1', 'm0.2', '1'], data['arcs'])
        self.assertEqual(len(data['vertices']), 6)


class MatchingGraphTests(SimpleTestCase):
    def test_single_strand(self):
        matching = perfectly_orient(network_for_factors([], strands=1))
        self.assertEqual(matching.graph.number_of_nodes(), 0)
        self.assertEqual(count_perfect_matchings(matching), 1)

    def test_orientation_rules(self):
        matching = euler_matching_graph(5)
        g = matching.oriented
        self.assertEqual(matching.color(matching.source), BLACK)
        self.assertEqual(matching.color(matching.sink), WHITE)
        for v in g.nodes:
            if v in (matching.source, matching.sink):
                continue
            if matching.color(v) == WHITE:
                self.assertEqual(g.in_degree(v), 1, v)
            else:
                self.assertEqual(g.out_degree(v), 1, v)
        for u, v in g.edges():
            self.assertNotEqual(matching.color(u), matching.color(v))
        self.assertEqual(len(matching.black), len(matching.white))

    def test_euler_matchings(self):
        for n in range(2, 8):
            matching = euler_matching_graph(n)
            self.assertEqual(count_perfect_matchings(matching), EULER[n], n)
            self.assertEqual(len(enumerate_paths(matching)), EULER[n], n)

    def test_catalan_matchings(self):
        for n in range(1, 7):
            matching = catalan_matching_graph(n)
            self.assertEqual(count_perfect_matchings(matching), CATALAN[n], n)
            self.assertEqual(len(enumerate_paths(matching)), CATALAN[n], n)

    def test_paths_give_distinct_perfect_matchings(self):
        for matching in (euler_matching_graph(5), catalan_matching_graph(4)):
            images = set()
            for path in enumerate_paths(matching):
                chosen = path_to_matching(matching, path)
                self.assertTrue(is_perfect_matching(matching, chosen))
                images.add(chosen)
            self.assertEqual(len(images), count_perfect_matchings(matching))

    @override_settings(DIMERS_SETTINGS={'MATCHING_VERTEX_LIMIT': 2})
    def test_vertex_limit(self):
        with self.assertRaises(GuardExceeded):
            count_perfect_matchings(euler_matching_graph(5))

    def test_dot(self):
        dot = to_dot(catalan_matching_graph(3))
        self.assertTrue(dot.startswith("graph M {"))
        self.assertIn("fillcolor=black", dot)
        self.assertIn("fillcolor=white", dot)
        self.assertIn(" -- ", dot)
