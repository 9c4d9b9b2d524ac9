from dataclasses import replace

import numpy as np
from django.test import SimpleTestCase

from generators.corpus import chain, diamond, random_instance, ternary_tree
from scheduling.antichain_dp import minimize_makespan
from scheduling.core import Instance, Job, MachineEnv, Schedule, SolverStats, check_schedule
from scheduling.exceptions import BudgetExceededError
from scheduling.oracle import brute_force, greedy_realize


class GreedyRealizeTestCase(SimpleTestCase):
    """Tests para la realización de secuencias por máquina"""

    def test_chain_in_order(self):
        schedule = greedy_realize(chain(2), [['j1', 'j2']])
        self.assertEqual(schedule.makespan(chain(2)), 2)

    def test_wrong_order(self):
        self.assertIsNone(greedy_realize(chain(2), [['j2', 'j1']]))

    def test_release_alone(self):
        inst = Instance(MachineEnv.single(), (Job('a', (2,), release=5),), k=1)
        self.assertEqual(greedy_realize(inst, [['a']]).makespan(inst), 7)

    def test_missing_predecessor(self):
        self.assertIsNone(greedy_realize(chain(2), [['j2']]))

    def test_cross_machine_precedence(self):
        inst = diamond(m=2)
        schedule = greedy_realize(inst, [['a', 'b', 'd'], ['c']])
        self.assertEqual(schedule.makespan(inst), 3)
        self.assertTrue(check_schedule(inst, schedule).feasible)


class BruteForceTestCase(SimpleTestCase):
    """Tests para el oráculo exhaustivo"""

    def test_agrees_with_dp_on_fixtures(self):
        for inst in (ternary_tree(), ternary_tree(m=2, k=5), diamond(), chain(4, k=2), diamond(m=2)):
            with self.subTest(n=inst.n, m=inst.m, k=inst.k):
                self.assertEqual(brute_force(inst)[0], minimize_makespan(inst)[0])

    def test_k_one_is_best_single_job(self):
        inst = Instance(
            MachineEnv.unrelated(2),
            (Job('a', (5, 4), release=1), Job('b', (3, 9), release=2)),
            k=1,
        )
        self.assertEqual(brute_force(inst)[0], 5)

    def test_zero_deadlines_infeasible(self):
        inst = Instance(MachineEnv.single(), (Job('a', (1,), deadline=0), Job('b', (1,), deadline=0)), k=1)
        self.assertIsNone(brute_force(inst))

    def test_cmax_bound(self):
        self.assertIsNone(brute_force(diamond(), cmax=3))
        self.assertEqual(brute_force(diamond(), cmax=4)[0], 4)

    def test_k_zero_and_k_too_large(self):
        self.assertEqual(brute_force(chain(2), k=0)[0], 0)
        self.assertIsNone(brute_force(chain(2), k=3))

    def test_schedule_is_certified(self):
        inst = Instance(
            MachineEnv.identical(2),
            tuple(Job(f'j{i}', (1 + i % 3,), release=i % 2, deadline=6) for i in range(5)),
            (('j0', 'j3'), ('j1', 'j4')),
            k=4,
        )
        makespan, schedule = brute_force(inst)
        verdict = check_schedule(inst, schedule)
        self.assertTrue(verdict.feasible)
        self.assertEqual(verdict.jobs_done, 4)
        self.assertEqual(verdict.makespan, makespan)

    def test_budget_exceeded(self):
        inst = Instance(MachineEnv.identical(2), tuple(Job(f'j{i}', (1,)) for i in range(8)), k=6)
        stats = SolverStats()
        with self.assertRaises(BudgetExceededError):
            brute_force(inst, budget=10, stats=stats)
        self.assertEqual(stats.nodes_expanded, 11)


def assignment_of(inst, schedule):
    """Secuencias por máquina en orden de inicio"""
    sequences = [[] for _ in range(inst.m)]
    for entry in sorted(schedule.entries, key=lambda entry: (entry.start, entry.machine)):
        sequences[entry.machine].append(entry.job)
    return sequences


def delayed(rng, schedule):
    """Mismo orden por máquina con huecos aleatorios acumulados"""
    shift = {}
    entries = []
    for entry in sorted(schedule.entries, key=lambda entry: (entry.machine, entry.start)):
        shift[entry.machine] = shift.get(entry.machine, 0) + int(rng.integers(0, 3))
        entries.append(replace(entry, start=entry.start + shift[entry.machine]))
    return Schedule(tuple(entries)).sorted()


class GreedyNormalizationTestCase(SimpleTestCase):
    """Re-realizar la asignación de un schedule factible nunca empeora el makespan"""

    INSTANCES = 60

    def feasible_schedules(self, seed, **flags):
        rng = np.random.default_rng(seed)
        found = 0
        while found < self.INSTANCES:
            inst = random_instance(rng, int(rng.integers(2, 7)), m=2, **flags)
            result = brute_force(inst)
            if result is None:
                continue
            found += 1
            schedule = result[1]
            yield inst, schedule
            variant = delayed(rng, schedule)
            if check_schedule(inst, variant).feasible:
                yield inst, variant

    def assert_normalizes(self, inst, schedule):
        original = check_schedule(inst, schedule)
        self.assertTrue(original.feasible)
        realized = greedy_realize(inst, assignment_of(inst, schedule))
        self.assertIsNotNone(realized)
        verdict = check_schedule(inst, realized)
        self.assertTrue(verdict.feasible, verdict.violations)
        self.assertEqual(verdict.jobs_done, original.jobs_done)
        self.assertLessEqual(verdict.makespan, original.makespan)

    def test_unrelated_with_windows(self):
        schedules = self.feasible_schedules(11, release=True, deadline=True, unrelated=True)
        for position, (inst, schedule) in enumerate(schedules):
            with self.subTest(case=position, n=inst.n, k=inst.k):
                self.assert_normalizes(inst, schedule)

    def test_identical_with_precedences(self):
        schedules = self.feasible_schedules(12, release=True, deadline=True, prec=True)
        for position, (inst, schedule) in enumerate(schedules):
            with self.subTest(case=position, n=inst.n, k=inst.k):
                self.assert_normalizes(inst, schedule)
