from itertools import product

from django.test import SimpleTestCase

from generators.reductions import (
    SourceGraph, certify_3coloring, certify_clique, certify_partition, certify_psi,
    certify_psi_2machine, clique_parameters, decode_3coloring, gen_3coloring, gen_clique,
    gen_partition, gen_psi, gen_psi_2machine, psi_layout, source_graph_from_dict,
)
from scheduling.classifier import classify
from scheduling.core import Schedule, ScheduleEntry, check_schedule, validate_instance, variant_flags
from scheduling.exceptions import (
    DecodeError, GenerationError, InstanceFormatError, PreconditionError,
)
from scheduling.oracle import brute_force

TRIANGLE = SourceGraph(('a', 'b', 'c'), (('a', 'b'), ('b', 'c'), ('a', 'c')))
PATH = SourceGraph(('a', 'b', 'c'), (('a', 'b'), ('b', 'c')))
EDGE_PATTERN = SourceGraph(('1', '2'), (('1', '2'),))


def feasible(inst):
    return brute_force(inst, cmax=inst.cmax) is not None


def proper_colorings(graph):
    for colors in product((1, 2, 3), repeat=len(graph.vertices)):
        coloring = dict(zip(graph.vertices, colors))
        if all(coloring[u] != coloring[v] for u, v in graph.edges):
            yield coloring


class SourceGraphTestCase(SimpleTestCase):
    """Tests para los grafos fuente de las reducciones"""

    def test_from_dict(self):
        graph = source_graph_from_dict({'vertices': ['x', 'y'], 'edges': [['x', 'y']], 'chi': {'x': '1', 'y': '2'}})
        self.assertEqual(graph.index('y'), 2)
        self.assertTrue(graph.has_edge('y', 'x'))
        self.assertEqual(graph.chi, {'x': '1', 'y': '2'})
        self.assertEqual(graph.to_networkx().number_of_edges(), 1)

    def test_rejects_bad_graphs(self):
        with self.assertRaises(GenerationError):
            SourceGraph(('a', 'a'))
        with self.assertRaises(GenerationError):
            SourceGraph(('a',), (('a', 'b'),))
        with self.assertRaises(GenerationError):
            SourceGraph(('a',), (('a', 'a'),))
        with self.assertRaises(GenerationError):
            SourceGraph(('a', 'b'), (('a', 'b'), ('b', 'a')))

    def test_rejects_unknown_fields(self):
        with self.assertRaises(InstanceFormatError):
            source_graph_from_dict({'vertices': ['a'], 'weights': [1]})


class ThreeColoringTestCase(SimpleTestCase):
    """Tests para la reducción desde 3-coloración"""

    def test_triangle_sizes(self):
        inst = gen_3coloring(TRIANGLE)
        self.assertEqual(inst.n, 54)
        self.assertEqual(inst.k, 12)
        self.assertEqual(inst.cmax, 12)
        self.assertTrue(validate_instance(inst).ok)
        self.assertEqual(classify(variant_flags(inst)).row_id, 3)

    def test_single_vertex(self):
        inst = gen_3coloring(SourceGraph(('a',)))
        self.assertEqual((inst.n, inst.k, inst.cmax), (6, 2, 2))

    def test_empty_graph(self):
        inst = gen_3coloring(SourceGraph(()))
        self.assertEqual((inst.n, inst.k), (0, 0))

    def test_certified_triangle(self):
        inst = gen_3coloring(TRIANGLE)
        schedule = certify_3coloring(TRIANGLE, {'a': 1, 'b': 2, 'c': 3})
        verdict = check_schedule(inst, schedule)
        self.assertTrue(verdict.feasible)
        self.assertEqual(verdict.jobs_done, 12)
        self.assertEqual(sorted(entry.start + 1 for entry in schedule.entries), list(range(1, 13)))

    def test_round_trip_on_small_graphs(self):
        graphs = [
            SourceGraph(('a',)),
            SourceGraph(('a', 'b'), (('a', 'b'),)),
            PATH,
            TRIANGLE,
            SourceGraph(('a', 'b', 'c', 'd'), (('a', 'b'), ('b', 'c'), ('c', 'd'), ('d', 'a'))),
            SourceGraph(('a', 'b', 'c', 'd'), (('a', 'b'), ('a', 'c'), ('a', 'd'), ('b', 'c'))),
        ]
        for graph in graphs:
            for coloring in proper_colorings(graph):
                with self.subTest(edges=graph.edges, coloring=coloring):
                    self.assertEqual(decode_3coloring(graph, certify_3coloring(graph, coloring)), coloring)

    def test_improper_coloring(self):
        with self.assertRaises(PreconditionError):
            certify_3coloring(TRIANGLE, {'a': 1, 'b': 1, 'c': 2})
        with self.assertRaises(PreconditionError):
            certify_3coloring(TRIANGLE, {'a': 1, 'b': 2})

    def test_decode_rejects_short_schedule(self):
        with self.assertRaises(DecodeError):
            decode_3coloring(TRIANGLE, Schedule((ScheduleEntry('v1^1', 0, 0),)))

    def test_edge_graph_feasible_by_oracle(self):
        """La dirección inversa: un 6-schedule existe para una arista"""
        edge = SourceGraph(('a', 'b'), (('a', 'b'),))
        inst = gen_3coloring(edge)
        found = brute_force(inst, cmax=inst.cmax)
        self.assertIsNotNone(found)
        coloring = decode_3coloring(edge, found[1])
        self.assertNotEqual(coloring['a'], coloring['b'])


class CliqueTestCase(SimpleTestCase):
    """Tests para la reducción desde k-Clique"""

    def test_parameters(self):
        self.assertEqual(clique_parameters(3), (6, 9))
        self.assertEqual(clique_parameters(1), (1, 2))

    def test_triangle_feasible(self):
        inst = gen_clique(TRIANGLE, 3)
        self.assertEqual((inst.k, inst.cmax), (6, 9))
        self.assertTrue(feasible(inst))
        self.assertTrue(check_schedule(inst, certify_clique(TRIANGLE, 3, ['a', 'b', 'c'])).feasible)

    def test_path_infeasible(self):
        inst = gen_clique(PATH, 3)
        self.assertEqual((inst.k, inst.cmax), (6, 9))
        self.assertTrue(validate_instance(inst).ok)
        self.assertFalse(feasible(inst))

    def test_single_vertex_clique(self):
        self.assertTrue(feasible(gen_clique(SourceGraph(('a',)), 1)))
        self.assertFalse(feasible(gen_clique(SourceGraph(()), 1)))

    def test_padding_keeps_row(self):
        inst = gen_clique(SourceGraph(('a', 'b'), (('a', 'b'),)), 3)
        self.assertEqual(inst.k, 6)
        self.assertEqual(inst.n, 6)
        self.assertFalse(feasible(inst))
        self.assertEqual(classify(variant_flags(inst)).row_id, 9)

    def test_invalid_inputs(self):
        with self.assertRaises(GenerationError):
            gen_clique(TRIANGLE, 0)
        with self.assertRaises(PreconditionError):
            certify_clique(PATH, 3, ['a', 'b', 'c'])


class PartitionedSubgraphTestCase(SimpleTestCase):
    """Tests para la reducción desde isomorfismo de subgrafos particionado"""

    def setUp(self):
        self.target = SourceGraph(('x', 'y'), (('x', 'y'),), chi={'x': '1', 'y': '2'})
        self.isolated = SourceGraph(('x', 'y'), (), chi={'x': '1', 'y': '2'})

    def test_layout_stamps(self):
        layout = psi_layout(self.target, EDGE_PATTERN)
        self.assertEqual(layout.stamps, (0, 9, 12))
        self.assertEqual(layout.processing(1), 9)
        self.assertEqual(layout.processing(2), 3)

    def test_single_edge_instance(self):
        inst = gen_psi(self.target, EDGE_PATTERN)
        jobs = {job.id: (job.proc[0], job.release) for job in inst.jobs}
        self.assertEqual(jobs, {'v1': (9, 0), 'v2': (3, 9), 'e1': (1, 12)})
        self.assertEqual((inst.k, inst.cmax), (3, 13))
        self.assertTrue(feasible(inst))
        self.assertTrue(check_schedule(inst, certify_psi(self.target, EDGE_PATTERN, {'1': 'x', '2': 'y'})).feasible)

    def test_isolated_vertices_infeasible(self):
        inst = gen_psi(self.isolated, EDGE_PATTERN)
        self.assertTrue(validate_instance(inst).ok)
        self.assertFalse(feasible(inst))

    def test_two_machine_version(self):
        inst = gen_psi_2machine(self.target, EDGE_PATTERN)
        self.assertEqual(inst.m, 2)
        self.assertEqual((inst.k, inst.cmax), (6, 13))
        self.assertFalse(variant_flags(inst).has_release)
        schedule = certify_psi_2machine(self.target, EDGE_PATTERN, {'1': 'x', '2': 'y'})
        verdict = check_schedule(inst, schedule)
        self.assertTrue(verdict.feasible)
        self.assertEqual(verdict.jobs_done, 6)

    def test_two_machine_infeasible_without_edge(self):
        self.assertFalse(feasible(gen_psi_2machine(self.isolated, EDGE_PATTERN)))

    def test_chi_must_be_onto(self):
        target = SourceGraph(('x', 'y'), (('x', 'y'),), chi={'x': '1', 'y': '1'})
        with self.assertRaises(GenerationError):
            gen_psi(target, EDGE_PATTERN)

    def test_chi_required(self):
        with self.assertRaises(GenerationError):
            gen_psi(SourceGraph(('x',)), EDGE_PATTERN)

    def test_bad_embedding(self):
        with self.assertRaises(PreconditionError):
            certify_psi(self.isolated, EDGE_PATTERN, {'1': 'x', '2': 'y'})


class PartitionTestCase(SimpleTestCase):
    """Tests para la equivalencia con Subset Sum en dos máquinas"""

    def test_even_split(self):
        inst = gen_partition([1, 2, 3])
        self.assertEqual((inst.m, inst.k, inst.cmax), (2, 3, 3))
        self.assertTrue(feasible(inst))
        self.assertTrue(check_schedule(inst, certify_partition([1, 2, 3], [2])).feasible)

    def test_padding_for_target(self):
        inst = gen_partition([1, 1, 1], target=1)
        self.assertEqual((inst.n, inst.cmax), (4, 2))
        self.assertTrue(feasible(inst))
        self.assertTrue(check_schedule(inst, certify_partition([1, 1, 1], [0], target=1)).feasible)

    def test_pair(self):
        self.assertTrue(feasible(gen_partition([2, 2])))

    def test_no_split(self):
        self.assertFalse(feasible(gen_partition([1, 1, 4])))

    def test_unreachable_target(self):
        self.assertFalse(feasible(gen_partition([2, 4], target=1)))

    def test_invalid_inputs(self):
        with self.assertRaises(GenerationError):
            gen_partition([1, 2])
        with self.assertRaises(GenerationError):
            gen_partition([0, 2])
        with self.assertRaises(PreconditionError):
            certify_partition([1, 2, 3], [0])
