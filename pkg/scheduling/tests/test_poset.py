from itertools import combinations

import numpy as np
from django.test import SimpleTestCase

from generators.corpus import chain, diamond, random_dag, ternary_tree
from scheduling.core import Instance, Job, MachineEnv
from scheduling.exceptions import InvalidInstanceError, NotAnAntichainError
from scheduling.poset import (
    PrecedenceGraph, bit, build_poset, comp_set, depth, enumerate_antichains, enumerate_max_antichains,
    ids_of, iter_bits, mask_of, maximals, minimals, pred_set, restrict_to_time,
)

HORIZON = 100


def independent(n):
    return Instance(MachineEnv.single(), tuple(Job(f'x{i}', (1,)) for i in range(n)), k=n)


def exhaustive_antichains(graph, t):
    """Referencia: (máscara, profundidad) de todas las anticadenas de G^t"""
    graph_t = graph.restrict_to_time(t)
    nodes = [node for node in range(graph.n) if graph_t.active & bit(node)]
    found = []
    for size in range(len(nodes) + 1):
        for subset in combinations(nodes, size):
            mask = sum(bit(node) for node in subset)
            if graph_t.is_antichain(mask):
                found.append((mask, graph_t.depth_of(mask)))
    return found


class PrecedenceGraphTestCase(SimpleTestCase):
    """Tests para el cierre transitivo y los slots rho"""

    def test_diamond_reachability(self):
        inst = diamond()
        graph = PrecedenceGraph.from_instance(inst)
        a, b, c, d = (inst.index[job_id] for job_id in 'abcd')
        self.assertTrue(graph.down[d] & bit(a))
        self.assertFalse(graph.down[c] & bit(b))
        self.assertFalse(graph.down[b] & bit(c))

    def test_chain_rho(self):
        graph = PrecedenceGraph.from_instance(chain(3))
        self.assertEqual(graph.rho, [1, 2, 3])

    def test_release_shifts_rho(self):
        inst = Instance(
            MachineEnv.single(),
            (Job('a', (1,), release=4), Job('b', (1,))),
            (('a', 'b'),),
            k=2,
        )
        self.assertEqual(PrecedenceGraph.from_instance(inst).rho, [5, 6])

    def test_tree_root_precedes_everything(self):
        inst = ternary_tree()
        graph = PrecedenceGraph.from_instance(inst)
        root = inst.index['r']
        self.assertEqual(graph.up[root], (1 << inst.n) - 1)

    def test_pred_and_comp_sets(self):
        inst = diamond()
        graph = PrecedenceGraph.from_instance(inst)
        antichain = mask_of(inst, ['b', 'c'])
        self.assertEqual(ids_of(inst, pred_set(graph, antichain)), ['a', 'b', 'c'])
        self.assertEqual(ids_of(inst, comp_set(graph, antichain)), ['a', 'b', 'c', 'd'])

    def test_minimal_and_maximal(self):
        inst = diamond()
        graph = PrecedenceGraph.from_instance(inst)
        self.assertEqual(ids_of(inst, graph.minimal()), ['a'])
        self.assertEqual(ids_of(inst, graph.maximal()), ['d'])
        self.assertEqual(ids_of(inst, graph.minimal(mask_of(inst, ['b', 'c', 'd']))), ['b', 'c'])

    def test_maximals_of_pred_set_is_the_antichain(self):
        inst = ternary_tree()
        graph = build_poset(inst)
        antichain = mask_of(inst, ['c1', 'g21', 'g33'])
        self.assertEqual(maximals(graph, pred_set(graph, antichain)), antichain)
        self.assertEqual(ids_of(inst, minimals(graph, pred_set(graph, antichain))), ['r'])

    def test_build_poset_rejects_cycle(self):
        inst = Instance(
            MachineEnv.single(),
            (Job('a', (1,)), Job('b', (1,))),
            (('a', 'b'), ('b', 'a')),
            k=1,
        )
        with self.assertRaises(InvalidInstanceError):
            build_poset(inst)


class RestrictToTimeTestCase(SimpleTestCase):
    """Tests para G^t"""

    def test_no_releases_keeps_every_node(self):
        graph = PrecedenceGraph.from_instance(independent(4))
        for t in (1, 2, 5):
            self.assertEqual(restrict_to_time(graph, t).active, graph.active)

    def test_time_zero_is_empty(self):
        graph = PrecedenceGraph.from_instance(diamond())
        self.assertEqual(restrict_to_time(graph, 0).active, 0)

    def test_chain_prefixes(self):
        inst = chain(3)
        graph = PrecedenceGraph.from_instance(inst)
        self.assertEqual(ids_of(inst, restrict_to_time(graph, 2).active), ['j1', 'j2'])


class DepthTestCase(SimpleTestCase):
    """Tests para la profundidad d^t(A)"""

    def setUp(self):
        self.inst = ternary_tree()
        self.graph = PrecedenceGraph.from_instance(self.inst)

    def test_tree_child_depth(self):
        """Un hijo: su predecesor y él mismo más los otros dos hijos minimales"""
        self.assertEqual(depth(self.graph, HORIZON, mask_of(self.inst, ['c1'])), 4)

    def test_tree_empty_and_root(self):
        self.assertEqual(depth(self.graph, HORIZON, 0), 1)
        self.assertEqual(depth(self.graph, HORIZON, mask_of(self.inst, ['r'])), 1)

    def test_independent_empty_set(self):
        graph = PrecedenceGraph.from_instance(independent(5))
        self.assertEqual(depth(graph, HORIZON, 0), 5)

    def test_not_an_antichain(self):
        with self.assertRaises(NotAnAntichainError):
            depth(self.graph, HORIZON, mask_of(self.inst, ['r', 'c1']))

    def test_outside_g_t(self):
        with self.assertRaises(NotAnAntichainError):
            depth(self.graph, 1, mask_of(self.inst, ['c1']))


class EnumerateAntichainsTestCase(SimpleTestCase):
    """Tests para la enumeración de anticadenas acotadas por profundidad"""

    def test_chain_max_antichains(self):
        inst = chain(3)
        graph = PrecedenceGraph.from_instance(inst)
        found = [ids_of(inst, mask) for mask in enumerate_max_antichains(graph, 3)]
        self.assertEqual(found, [['j1'], ['j2'], ['j3']])

    def test_tree_max_antichains_k2(self):
        inst = ternary_tree()
        graph = PrecedenceGraph.from_instance(inst)
        found = [ids_of(inst, mask) for mask in enumerate_max_antichains(graph, 2)]
        self.assertEqual(found, [['r']])

    def test_two_independent_k1(self):
        graph = PrecedenceGraph.from_instance(independent(2))
        self.assertEqual(enumerate_max_antichains(graph, 1), [])

    def test_tree_all_antichains_k2(self):
        inst = ternary_tree()
        graph = PrecedenceGraph.from_instance(inst)
        self.assertEqual(enumerate_antichains(graph, HORIZON, 2), [0, mask_of(inst, ['r'])])

    def test_chain_all_antichains_k2(self):
        inst = chain(3)
        graph = PrecedenceGraph.from_instance(inst)
        found = [ids_of(inst, mask) for mask in enumerate_antichains(graph, HORIZON, 2)]
        self.assertEqual(found, [[], ['j1'], ['j2']])

    def test_k_zero_on_nonempty_graph(self):
        graph = PrecedenceGraph.from_instance(diamond())
        self.assertEqual(enumerate_antichains(graph, HORIZON, 0), [])

    def test_matches_exhaustive_enumeration(self):
        """La enumeración coincide con la búsqueda exhaustiva en varias formas de DAG"""
        for inst in (diamond(), chain(4), ternary_tree(), independent(4), ternary_tree(release=2)):
            graph = PrecedenceGraph.from_instance(inst)
            for t in (1, 2, 3, HORIZON):
                reference = exhaustive_antichains(graph, t)
                for k in range(0, 5):
                    with self.subTest(inst=inst.n, t=t, k=k):
                        expected = {mask for mask, value in reference if value <= k}
                        self.assertEqual(set(enumerate_antichains(graph, t, k)), expected)

    def test_count_bound(self):
        """Nunca más de 4^k anticadenas con profundidad <= k"""
        graph = PrecedenceGraph.from_instance(independent(8))
        for k in range(0, 5):
            self.assertLessEqual(len(enumerate_antichains(graph, HORIZON, k)), 4 ** k)


def random_poset(rng, n):
    edges = random_dag(rng, n, float(rng.uniform(0.05, 0.5)))
    jobs = tuple(Job(f'x{i}', (1,)) for i in range(n))
    prec = tuple((f'x{u}', f'x{v}') for u, v in edges)
    return Instance(MachineEnv.single(), jobs, prec, k=1)


def subset_filter(graph):
    """Referencia 2^n: (máscara, profundidad, maximal) de cada anticadena"""
    comparable = [graph.down[node] | graph.up[node] for node in range(graph.n)]
    found = []
    for mask in range(1 << graph.n):
        if all(comparable[node] & mask == bit(node) for node in iter_bits(mask)):
            maximal = graph.comp_set(mask) == graph.active
            found.append((mask, graph.depth_of(mask), maximal))
    return found


class AntichainBoundTestCase(SimpleTestCase):
    """Cotas 2^k / 4^k y enumeración exacta sobre DAGs aleatorios"""

    DAGS = 200
    MAX_N = 20
    MAX_K = 8
    EXHAUSTIVE_N = 14

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        rng = np.random.default_rng(2024)
        cls.graphs = [
            PrecedenceGraph.from_instance(random_poset(rng, int(rng.integers(1, cls.MAX_N + 1))))
            for _ in range(cls.DAGS)
        ]

    def test_corpus_shape(self):
        sizes = [graph.n for graph in self.graphs]
        self.assertEqual(len(sizes), 200)
        self.assertLessEqual(max(sizes), 20)
        self.assertTrue(any(size <= self.EXHAUSTIVE_N for size in sizes))

    def test_count_bounds(self):
        for position, graph in enumerate(self.graphs):
            for k in range(self.MAX_K + 1):
                with self.subTest(dag=position, n=graph.n, k=k):
                    self.assertLessEqual(len(enumerate_max_antichains(graph, k)), 2 ** k)
                    self.assertLessEqual(len(enumerate_antichains(graph, HORIZON, k)), 4 ** k)

    def test_enumeration_matches_subset_filter(self):
        for position, graph in enumerate(self.graphs):
            if graph.n > self.EXHAUSTIVE_N:
                continue
            reference = subset_filter(graph)
            for k in range(self.MAX_K + 1):
                expected = {mask for mask, value, _ in reference if value <= k}
                expected_max = {mask for mask, value, maximal in reference if maximal and value <= k}
                with self.subTest(dag=position, n=graph.n, k=k):
                    self.assertEqual(set(enumerate_antichains(graph, HORIZON, k)), expected)
                    self.assertEqual(set(enumerate_max_antichains(graph, k)), expected_max)
                    self.assertLessEqual(len(expected_max), 2 ** k)
                    self.assertLessEqual(len(expected), 4 ** k)
