import numpy as np
from django.test import SimpleTestCase, override_settings

from dimers.exceptions import ConsistencyError, GuardExceeded, NotDistributive, TwistRefused
from dimers.lattice import (
    BLACK, WHITE, FinitePoset, HasseDiagram, birkhoff_poset, build_lattice, can_twist, chain_lattice,
    color_vertices, face_twist, ideal_lattice, is_distributive, join, join_irreducibles, meet,
    minimal_weight_exponent, odd_edges, rank_polynomial, to_dot, to_pydot, twist_counts,
)
from dimers.snake import MixedDimerCover, all_words, build_snake, standard_labeling, straight_snake, zigzag_snake
from dimers.transfer import EdgeWeighting, LaurentPoly, q_catalan_poly, q_euler_poly, q_euler_weights, q_power

q = LaurentPoly.var('q')


def straight_cover(b1, b2):
    """Covers of the two-square straight snake are fixed by the bottom multiplicities."""
    return MixedDimerCover.from_mapping({
        ((0, 0), (0, 1)): 1 - b1,
        ((1, 0), (1, 1)): 2 - b1 - b2,
        ((2, 0), (2, 1)): 3 - b2,
        ((0, 0), (1, 0)): b1,
        ((0, 1), (1, 1)): b1,
        ((1, 0), (2, 0)): b2,
        ((1, 1), (2, 1)): b2,
    })


class ColoringTests(SimpleTestCase):
    def test_black_corner(self):
        self.assertEqual(color_vertices(build_snake('RRR')).color((4, 0)), BLACK)
        self.assertEqual(color_vertices(build_snake('URUR')).color((3, 2)), BLACK)
        self.assertEqual(color_vertices(build_snake('RU')).color((2, 2)), BLACK)
        self.assertEqual(color_vertices(build_snake('')).color((0, 0)), WHITE)

    def test_reversed(self):
        coloring = color_vertices(build_snake('RR'))
        flipped = coloring.reversed()
        for v in build_snake('RR').vertices:
            self.assertNotEqual(coloring.color(v), flipped.color(v))

    def test_odd_edges(self):
        graph = straight_snake(2)
        coloring = color_vertices(graph)
        self.assertEqual(set(odd_edges(graph.tile(1), coloring)), {graph.tile(1).left, graph.tile(1).right})
        self.assertEqual(set(odd_edges(graph.tile(2), coloring)), {graph.tile(2).bottom, graph.tile(2).top})


class FaceTwistTests(SimpleTestCase):
    def setUp(self):
        self.graph = straight_snake(2)
        self.coloring = color_vertices(self.graph)

    def test_positive_twists(self):
        self.assertEqual(face_twist(self.graph, self.coloring, straight_cover(0, 1), 1), straight_cover(1, 1))
        self.assertEqual(face_twist(self.graph, self.coloring, straight_cover(0, 2), 2), straight_cover(0, 1))
        self.assertEqual(face_twist(self.graph, self.coloring, straight_cover(1, 1), 1, '-'), straight_cover(0, 1))

    def test_refused(self):
        bottom = straight_cover(0, 2)
        self.assertFalse(can_twist(self.graph, self.coloring, bottom, 1))
        self.assertFalse(can_twist(self.graph, self.coloring, bottom, 2, '-'))
        with self.assertRaises(TwistRefused) as ctx:
            face_twist(self.graph, self.coloring, bottom, 1)
        self.assertEqual(ctx.exception.tile, 1)
        with self.assertRaises(ValueError):
            face_twist(self.graph, self.coloring, bottom, 2, '*')


class BuildLatticeTests(SimpleTestCase):
    def test_two_square_straight_snake(self):
        graph = straight_snake(2)
        lattice = build_lattice(graph, standard_labeling(graph))
        self.assertEqual(len(lattice), 5)
        rank_of = dict(zip(lattice.elements, lattice.ranks))
        self.assertEqual(rank_of[straight_cover(0, 2)], 0)
        self.assertEqual(rank_of[straight_cover(0, 1)], 1)
        self.assertEqual(rank_of[straight_cover(0, 0)], 2)
        self.assertEqual(rank_of[straight_cover(1, 1)], 2)
        self.assertEqual(rank_of[straight_cover(1, 0)], 3)
        self.assertEqual(rank_polynomial(lattice), 1 + q + 2 * q ** 2 + q ** 3)
        self.assertTrue(lattice.is_graded())

    def test_meet_and_join(self):
        graph = straight_snake(2)
        lattice = build_lattice(graph, standard_labeling(graph))
        self.assertEqual(meet(lattice, straight_cover(0, 0), straight_cover(1, 1)), straight_cover(0, 1))
        self.assertEqual(join(lattice, straight_cover(0, 0), straight_cover(1, 1)), straight_cover(1, 0))
        self.assertEqual(lattice.elements[lattice.bottom], straight_cover(0, 2))
        self.assertEqual(lattice.elements[lattice.top], straight_cover(1, 0))

    def test_twist_counts(self):
        graph = straight_snake(2)
        lattice = build_lattice(graph, standard_labeling(graph))
        counts = twist_counts(lattice, graph.n)
        self.assertEqual(counts[lattice.bottom], (0, 0))
        self.assertEqual(counts[lattice.top], (1, 2))

    def test_rank_polynomials_are_q_euler(self):
        for n in range(3, 7):
            graph = straight_snake(n - 2)
            lattice = build_lattice(graph, standard_labeling(graph))
            self.assertEqual(rank_polynomial(lattice) * q_power(n // 2), q_euler_poly(n), n)
            weighting = EdgeWeighting.named(graph, q_euler_weights(graph.n))
            self.assertEqual(n * n // 4 + minimal_weight_exponent(lattice, weighting), n // 2)

    def test_rank_polynomials_are_q_catalan(self):
        for n in range(2, 7):
            graph = zigzag_snake(n - 1)
            lattice = build_lattice(graph, standard_labeling(graph))
            self.assertEqual(rank_polynomial(lattice), q_catalan_poly(n), n)

    def test_reversed_coloring_gives_the_dual(self):
        graph = build_snake('RUR')
        labeling = standard_labeling(graph)
        lattice = build_lattice(graph, labeling)
        dual = build_lattice(graph, labeling, coloring=color_vertices(graph).reversed())
        self.assertEqual(set(dual.covers), {(hi, lo) for lo, hi in lattice.covers})
        self.assertEqual(lattice.reversed().covers, dual.covers)

    def test_guard(self):
        graph = straight_snake(3)
        with self.assertRaises(GuardExceeded):
            build_lattice(graph, standard_labeling(graph), guard=3)


class DistributivityTests(SimpleTestCase):
    def test_twist_lattices_are_distributive(self):
        for word in ('R', 'RR', 'U', 'UR', 'RU', 'RUR', 'URRU'):
            graph = build_snake(word)
            lattice = build_lattice(graph, standard_labeling(graph))
            self.assertTrue(is_distributive(lattice), word)
            self.assertTrue(is_distributive(lattice, exhaustive=False), word)

    def test_every_short_word(self):
        for word in all_words(5):
            graph = build_snake(word)
            lattice = build_lattice(graph, standard_labeling(graph))
            self.assertTrue(lattice.is_graded(), word)
            self.assertEqual(lattice.ranks[lattice.bottom], 0, word)
            self.assertEqual(lattice.ranks[lattice.top], max(lattice.ranks), word)
            self.assertTrue(is_distributive(lattice), word)
            # birkhoff_poset raises unless the ideals map isomorphically onto the lattice
            poset = birkhoff_poset(lattice)
            self.assertEqual(len(ideal_lattice(poset)), len(lattice), word)
            self.assertEqual(len(poset), max(lattice.ranks), word)

    def test_zigzag_birkhoff_posets(self):
        for n in range(1, 7):
            lattice = build_lattice(zigzag_snake(n), standard_labeling(zigzag_snake(n)))
            self.assertEqual(len(birkhoff_poset(lattice)), n * (n + 1) // 2, n)

    def test_diamond_is_not(self):
        diamond = HasseDiagram(range(5), [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)])
        self.assertFalse(is_distributive(diamond))
        self.assertFalse(is_distributive(diamond, exhaustive=False))

    def test_two_minima(self):
        vee = HasseDiagram(range(3), [(0, 2), (1, 2)])
        self.assertFalse(is_distributive(vee))
        with self.assertRaises(NotDistributive):
            vee.bottom

    def test_birkhoff(self):
        graph = straight_snake(2)
        lattice = build_lattice(graph, standard_labeling(graph))
        self.assertEqual(len(join_irreducibles(lattice)), 3)
        poset = birkhoff_poset(lattice)
        self.assertEqual(poset.rank_profile(), (1, 2))
        self.assertEqual(len(ideal_lattice(poset)), len(lattice))

    def test_chain(self):
        chain = chain_lattice(3)
        self.assertTrue(is_distributive(chain))
        self.assertEqual(rank_polynomial(chain), 1 + q + q ** 2 + q ** 3)
        self.assertEqual(len(birkhoff_poset(chain)), 3)

    def test_poset_axioms(self):
        with self.assertRaises(NotDistributive):
            FinitePoset((0, 1), np.array([[True, False], [False, False]]))
        with self.assertRaises(NotDistributive):
            FinitePoset((0, 1), np.array([[True, True], [True, True]]))
        not_transitive = np.array([
            [True, True, False],
            [False, True, True],
            [False, False, True],
        ])
        with self.assertRaises(NotDistributive):
            FinitePoset((0, 1, 2), not_transitive)

    def test_cycle(self):
        with self.assertRaises(ConsistencyError):
            HasseDiagram(range(2), [(0, 1), (1, 0)])


class DotTests(SimpleTestCase):
    def test_dot(self):
        dot = to_dot(chain_lattice(2), label=lambda x: f'e{x}')
        self.assertTrue(dot.startswith("digraph G {"))
        self.assertIn("n1 -> n2;", dot)
        graph = to_pydot(chain_lattice(2), label=lambda x: f'e{x}')
        self.assertEqual(graph.get('rankdir'), 'BT')
        self.assertEqual(graph.get_node('n0')[0].get('label'), 'e0')
        edges = {(e.get_source(), e.get_destination()) for e in graph.get_edges()}
        self.assertEqual(edges, {('n0', 'n1'), ('n1', 'n2')})
        self.assertEqual([s.get('rank') for s in graph.get_subgraphs()], ['same'] * 3)

    def test_cover_labels(self):
        graph = build_snake('')
        lattice = build_lattice(graph, standard_labeling(graph))
        dot = to_pydot(lattice)
        self.assertEqual(len(dot.get_edges()), 1)
        self.assertEqual(dot.get_node('n1')[0].get('label'), str(lattice.elements[1]))

    @override_settings(DIMERS_SETTINGS={'DOT_RANKDIR': 'LR'})
    def test_rankdir_setting(self):
        graph = build_snake('')
        lattice = build_lattice(graph, standard_labeling(graph))
        dot = to_pydot(lattice)
        self.assertEqual(dot.get('rankdir'), 'LR')
        self.assertEqual(dot.get_edges()[0].get('label'), '1')
