import itertools
from fractions import Fraction

from django.test import SimpleTestCase

from dimers.covers import count_covers, weighted_count
from dimers.exceptions import DimensionMismatch, UnsupportedLabeling, UnsupportedShape
from dimers.snake import VertexLabeling, build_snake, standard_labeling, straight_snake, zigzag_snake
from dimers.transfer import (
    EdgeWeighting, LaurentMatrix, LaurentPoly, edge_names, genocchi_labels, genocchi_number,
    q_catalan_poly, q_catalan_weight, q_euler_poly, q_power, straight_product, structural_matrix,
    weighted_factor, weighted_straight_product, weighted_zigzag_product, zigzag_product,
)

q = LaurentPoly.var('q')


def var(name):
    return LaurentPoly.var(name)


class LaurentPolyTests(SimpleTestCase):
    def test_arithmetic(self):
        square = (q + q ** -1) ** 2
        self.assertEqual(square, q ** 2 + 2 + q ** -2)
        self.assertEqual(str(square), "q^-2 + 2 + q^2")
        self.assertEqual(square - square, 0)
        self.assertFalse(square - square)
        self.assertEqual(3 - q, -(q - 3))

    def test_inverse_of_units_only(self):
        self.assertEqual((-q ** 3).inverse(), -q ** -3)
        with self.assertRaises(ValueError):
            (2 * q).inverse()
        with self.assertRaises(ValueError):
            (1 + q).inverse()

    def test_substitute(self):
        poly = q ** 2 + 2 * q + 1
        self.assertEqual(poly.substitute({'q': 1}), 4)
        self.assertEqual(q.inverse().substitute({'q': 2}), Fraction(1, 2))
        mixed = var('a') * q + var('b')
        self.assertEqual(mixed.substitute({'q': 1}), var('a') + var('b'))
        self.assertEqual(mixed.specialize(a=1, b=1, q=3), 4)

    def test_univariate_coefficients(self):
        poly = LaurentPoly.from_univariate('q', [1, 0, 3], low=-1)
        self.assertEqual(poly, q ** -1 + 3 * q)
        self.assertEqual(poly.coefficients('q'), (-1, [1, 0, 3]))
        with self.assertRaises(ValueError):
            (q + var('t')).coefficients('q')

    def test_variable_order(self):
        poly = var('a10') + var('a2') + var('b1') + var('a0')
        self.assertEqual(poly.variables, ('a0', 'a2', 'a10', 'b1'))
        self.assertEqual(LaurentPoly.from_json(poly.to_json()), poly)

    def test_promote_rejects_floats(self):
        with self.assertRaises(TypeError):
            q + 0.5


class StructuralMatrixTests(SimpleTestCase):
    def test_r_and_l(self):
        self.assertEqual(structural_matrix('R', 2, 2), [[1, 1, 1], [1, 1, 0], [1, 0, 0]])
        self.assertEqual(structural_matrix('R', 3, 1), [[1, 1], [1, 0], [0, 0], [0, 0]])
        self.assertEqual(structural_matrix('L', 2, 2), [[1, 0, 0], [1, 1, 0], [1, 1, 1]])

    def test_l_is_w_times_r(self):
        for a in range(4):
            for b in range(4):
                self.assertEqual(
                    structural_matrix('L', a, b),
                    structural_matrix('W', a, a) @ structural_matrix('R', a, b),
                )

    def test_dimension_errors(self):
        with self.assertRaises(DimensionMismatch):
            structural_matrix('W', 2, 3)
        with self.assertRaises(DimensionMismatch):
            structural_matrix('R', -1, 2)
        with self.assertRaises(DimensionMismatch):
            structural_matrix('R', 1, 2) @ structural_matrix('R', 1, 2)
        with self.assertRaises(DimensionMismatch):
            LaurentMatrix([[1, 2], [3]])
        with self.assertRaises(DimensionMismatch):
            weighted_factor('U', 1, 2, q)

    def test_weighted_factors(self):
        t = var('t')
        self.assertEqual(weighted_factor('U', 1, 1, t), [[t, 1], [1, 0]])
        self.assertEqual(weighted_factor('T', 1, 2, t), [[1, 0, 0], [0, t, 0]])
        self.assertEqual(weighted_factor('W', 1, 1, t), [[0, t], [t, 0]])
        self.assertEqual(weighted_factor('U', 2, 2, 1), structural_matrix('R', 2, 2))


class ProductTests(SimpleTestCase):
    def test_single_square(self):
        self.assertEqual(straight_product((2, 3)), [[3, 3, 2, 1], [2, 2, 2, 1], [1, 1, 1, 1]])
        self.assertEqual(straight_product((1, 1)), [[2, 1], [1, 1]])

    def test_first_row_of_straight_product(self):
        row = [x.constant_value() for x in straight_product((1, 2, 3, 4)).row(1)]
        self.assertEqual(row, [16, 16, 14, 10, 5])

    def assertEntriesCountCovers(self, graph, m, product):
        labeling = VertexLabeling.from_sequence(graph, m)
        for i in range(1, m[0] + 2):
            for j in range(1, m[-1] + 2):
                moved = labeling.with_sequence_ends(graph, m[0] + 1 - i, m[-1] + 1 - j)
                self.assertEqual(count_covers(graph, moved, method='brute'), product.entry(i, j), (m, i, j))

    def test_entries_count_covers_with_moved_ends(self):
        for length in range(2, 5):
            for m in itertools.product(range(1, 5), repeat=length):
                self.assertEntriesCountCovers(straight_snake(length - 1), m, straight_product(m))

    def test_zigzag_entries_count_covers_with_moved_ends(self):
        for length in range(2, 5):
            for m in itertools.product(range(1, 5), repeat=length):
                self.assertEntriesCountCovers(zigzag_snake(length - 1), m, zigzag_product(m))

    def test_zigzag_products(self):
        self.assertEqual(zigzag_product((1, 2, 3, 4)).entry(1, 1), 14)
        self.assertEqual(zigzag_product((2, 4, 6)).entry(1, 1), 12)

    def test_empty_sequence(self):
        with self.assertRaises(UnsupportedLabeling):
            straight_product(())


class WeightedProductTests(SimpleTestCase):
    def test_single_square_weights(self):
        a0, a1, b1, c1 = var('a0'), var('a1'), var('b1'), var('c1')
        expected = a0 ** 2 * a1 ** 3 + a0 * a1 ** 2 * b1 * c1 + a1 * b1 ** 2 * c1 ** 2
        self.assertEqual(weighted_straight_product((2, 3)).entry(1, 1), expected)

    def test_all_ones_gives_the_count(self):
        for m in ((2, 3), (1, 2, 3), (1, 1, 2, 2)):
            ones = weighted_straight_product(m).specialize_all(1).entry(1, 1)
            self.assertEqual(ones, straight_product(m).entry(1, 1), m)
        for m in ((1, 2, 3), (1, 2, 3, 4), (2, 4, 6)):
            ones = weighted_zigzag_product(m).specialize_all(1).entry(1, 1)
            self.assertEqual(ones, zigzag_product(m).entry(1, 1), m)

    def test_cover_weights_match_straight_product(self):
        for tiles in (1, 2, 3):
            graph = straight_snake(tiles)
            labeling = standard_labeling(graph)
            m = labeling.sequence(graph)
            self.assertEqual(
                weighted_count(graph, labeling, EdgeWeighting.named(graph)),
                weighted_straight_product(m).entry(1, 1),
            )

    def test_cover_weights_match_zigzag_product(self):
        for tiles in (1, 2, 3):
            graph = zigzag_snake(tiles)
            labeling = standard_labeling(graph)
            m = labeling.sequence(graph)
            self.assertEqual(
                weighted_count(graph, labeling, EdgeWeighting.named(graph)),
                weighted_zigzag_product(m).entry(1, 1),
            )

    def test_fourteen_term_zigzag_entry(self):
        a0, a1, a2, a3 = (var(f'a{k}') for k in range(4))
        b1, b2, b3 = (var(f'b{k}') for k in range(1, 4))
        c1, c2, c3 = (var(f'c{k}') for k in range(1, 4))
        expected = (
            a3 ** 4 * b1 * b2 ** 2 * b3 ** 3
            + a2 * a3 ** 3 * b1 * b2 ** 2 * b3 ** 2 * c3
            + a1 * a3 ** 3 * b1 * b2 * b3 ** 2 * c2 * c3
            + a2 ** 2 * a3 ** 2 * b1 * b2 ** 2 * b3 * c3 ** 2
            + a0 * a3 ** 3 * b2 * b3 ** 2 * c1 * c2 * c3
            + a1 * a2 * a3 ** 2 * b1 * b2 * b3 * c2 * c3 ** 2
            + a2 ** 3 * a3 * b1 * b2 ** 2 * c3 ** 3
            + a0 * a2 * a3 ** 2 * b2 * b3 * c1 * c2 * c3 ** 2
            + a1 ** 2 * a3 ** 2 * b1 * b3 * c2 ** 2 * c3 ** 2
            # every cover has ten edges, so c3 enters this term cubed
            + a1 * a2 ** 2 * a3 * b1 * b2 * c2 * c3 ** 3
            + a0 * a1 * a3 ** 2 * b3 * c1 * c2 ** 2 * c3 ** 2
            + a0 * a2 ** 2 * a3 * b2 * c1 * c2 * c3 ** 3
            + a1 ** 2 * a2 * a3 * b1 * c2 ** 2 * c3 ** 3
            + a0 * a1 * a2 * a3 * c1 * c2 ** 2 * c3 ** 3
        )
        self.assertEqual(weighted_zigzag_product((1, 2, 3, 4)).entry(1, 1), expected)

    def test_edge_names(self):
        graph = zigzag_snake(2)
        names = edge_names(graph)
        self.assertEqual(len(names), len(graph.edges))
        self.assertEqual(names[((0, 0), (1, 0))], ('b', 1))
        self.assertEqual(names[((0, 1), (1, 1))], ('a', 1))
        self.assertEqual(names[((1, 1), (1, 2))], ('a', 2))
        self.assertEqual(names[((0, 2), (1, 2))], ('c', 2))
        with self.assertRaises(UnsupportedShape):
            edge_names(build_snake('RU'))


class QPolynomialTests(SimpleTestCase):
    def test_q_euler(self):
        self.assertEqual(q_euler_poly(2), q)
        self.assertEqual(
            str(q_euler_poly(5)),
            "q^2 + 2*q^3 + 3*q^4 + 4*q^5 + 3*q^6 + 2*q^7 + q^8",
        )

    def test_q_euler_values_at_one(self):
        for n, value in {3: 2, 4: 5, 5: 16, 6: 61, 7: 272}.items():
            self.assertEqual(q_euler_poly(n).substitute({'q': 1}), value)

    def test_q_catalan(self):
        self.assertEqual(q_catalan_poly(1), 1)
        self.assertEqual(q_catalan_poly(2), 1 + q)
        self.assertEqual(str(q_catalan_poly(4)), "1 + q + 2*q^2 + 3*q^3 + 3*q^4 + 3*q^5 + q^6")
        for n, value in {3: 5, 5: 42, 6: 132}.items():
            self.assertEqual(q_catalan_poly(n).substitute({'q': 1}), value)

    def test_q_catalan_from_cover_weights(self):
        graph = zigzag_snake(3)
        weighting = EdgeWeighting.named(graph, q_catalan_weight)
        self.assertEqual(weighted_count(graph, standard_labeling(graph), weighting), q_catalan_poly(4))

    def test_lower_bounds(self):
        with self.assertRaises(UnsupportedLabeling):
            q_euler_poly(1)
        with self.assertRaises(UnsupportedLabeling):
            q_catalan_poly(0)
        self.assertEqual(q_power(0), 1)


class GenocchiTests(SimpleTestCase):
    def test_labels(self):
        self.assertEqual(genocchi_labels(8), (1, 1, 2, 2, 3, 3))
        with self.assertRaises(UnsupportedLabeling):
            genocchi_labels(2)

    def test_median_genocchi_numbers(self):
        values = [genocchi_number(n) for n in range(3, 9)]
        self.assertEqual(values, [1, 2, 3, 8, 17, 56])

    def test_brute_force_counts(self):
        for n in range(4, 8):
            graph = straight_snake(n - 3)
            labeling = VertexLabeling.from_sequence(graph, genocchi_labels(n))
            self.assertEqual(count_covers(graph, labeling, method='brute'), genocchi_number(n), n)
        self.assertEqual([genocchi_number(n) for n in range(4, 8)], [2, 3, 8, 17])
