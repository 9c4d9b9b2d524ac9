import json
import tempfile
from io import StringIO
from pathlib import Path

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, override_settings

from generators.corpus import chain, ternary_tree
from scheduling import cli
from scheduling.classifier import Algorithm
from scheduling.core import Instance, Job, MachineEnv, dump_instance, instance_to_dict
from scheduling.exceptions import DispatchError
from scheduling.services import build_options, resolve_algorithm, solve_instance


class CommandFilesMixin:
    def setUp(self):
        tmp = tempfile.TemporaryDirectory()
        self.addCleanup(tmp.cleanup)
        self.dir = Path(tmp.name)

    def write_instance(self, inst, name='inst.json'):
        path = self.dir / name
        dump_instance(inst, path)
        return str(path)

    def write_json(self, data, name):
        path = self.dir / name
        path.write_text(json.dumps(data), encoding='utf-8')
        return str(path)

    def run_cli(self, *argv):
        stdout, stderr = StringIO(), StringIO()
        code = cli.run(list(argv), stdout=stdout, stderr=stderr)
        return code, stdout.getvalue(), stderr.getvalue()


class ServicesTestCase(SimpleTestCase):
    """Tests para la capa de servicio compartida por comandos y API"""

    def test_resolve_algorithm_names(self):
        tree = ternary_tree()
        self.assertIsNone(resolve_algorithm(tree, 'auto'))
        self.assertEqual(resolve_algorithm(tree, 'greedy'), Algorithm.GREEDY_PREC)
        self.assertEqual(resolve_algorithm(tree, 'dp'), Algorithm.ANTICHAIN_DP)
        plain = Instance(MachineEnv.single(), (Job('a', (2,)),), k=1)
        self.assertEqual(resolve_algorithm(plain, 'greedy'), Algorithm.GREEDY_EDD)
        self.assertEqual(resolve_algorithm(plain, 'moore'), Algorithm.SMALLEST_P)

    def test_unknown_algorithm(self):
        with self.assertRaises(DispatchError):
            resolve_algorithm(ternary_tree(), 'simplex')

    def test_unknown_mode(self):
        with self.assertRaises(DispatchError):
            build_options(mode='eager')

    @override_settings(SOLVER_SETTINGS={'DEFAULT_SEED': 17, 'ORACLE_BUDGET': 99})
    def test_options_from_settings(self):
        options = build_options()
        self.assertEqual(options.seed, 17)
        self.assertEqual(options.budget, 99)
        self.assertEqual(build_options(seed=3).seed, 3)

    def test_seed_only_for_colorcode(self):
        tree = solve_instance(ternary_tree())
        self.assertNotIn('seed', tree.to_dict())
        inst = Instance(MachineEnv.identical(2), (Job('a', (3,)), Job('b', (1,)), Job('c', (2,))), k=3)
        outcome = solve_instance(inst, seed=5)
        self.assertEqual(outcome.to_dict()['seed'], 5)
        self.assertEqual(outcome.to_dict()['algorithm'], 'ColorCode')


class SolveCommandTestCase(CommandFilesMixin, SimpleTestCase):
    """Tests para el comando solve y sus códigos de salida"""

    def test_tree_with_dp(self):
        path = self.write_instance(ternary_tree())
        code, out, _ = self.run_cli('solve', '--instance', path, '--algorithm', 'dp')
        self.assertEqual(code, 0)
        payload = json.loads(out)
        self.assertTrue(payload['feasible'])
        self.assertEqual(payload['makespan'], 2)
        self.assertEqual(payload['algorithm'], 'AntichainDP')
        self.assertEqual(payload['row'], 1)

    def test_output_is_deterministic(self):
        path = self.write_instance(ternary_tree(m=2, k=4, release=1))
        first = self.run_cli('solve', '--instance', path)
        second = self.run_cli('solve', '--instance', path)
        self.assertEqual(first, second)

    def test_infeasible_is_exit_zero(self):
        path = self.write_instance(chain(3))
        code, out, _ = self.run_cli('solve', '--instance', path, '--cmax', '2')
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(out), {
            'feasible': False, 'makespan': None, 'jobs_done': 0, 'algorithm': 'GreedyPrec', 'row': 1,
        })

    def test_cycle_is_exit_three(self):
        inst = Instance(MachineEnv.single(), (Job('a', (1,)), Job('b', (1,))), (('a', 'b'), ('b', 'a')), k=1)
        code, _, err = self.run_cli('solve', '--instance', self.write_instance(inst))
        self.assertEqual(code, 3)
        self.assertIn('cycle', err)

    def test_malformed_json_is_exit_three(self):
        data = instance_to_dict(chain(2))
        data['colour'] = 'red'
        code, _, err = self.run_cli('solve', '--instance', self.write_json(data, 'bad.json'))
        self.assertEqual(code, 3)
        self.assertIn('colour', err)

    def test_missing_file_is_exit_two(self):
        code, _, _ = self.run_cli('solve', '--instance', str(self.dir / 'missing.json'))
        self.assertEqual(code, 2)

    def test_bad_arguments_are_exit_two(self):
        self.assertEqual(self.run_cli('solve')[0], 2)
        self.assertEqual(self.run_cli('solve', '--instance', 'x.json', '--algorithm', 'simplex')[0], 2)
        self.assertEqual(self.run_cli('teleport')[0], 2)
        self.assertEqual(self.run_cli()[0], 2)

    def test_inapplicable_algorithm_is_exit_two(self):
        inst = Instance(MachineEnv.single(), (Job('a', (2,), deadline=4),), k=1)
        code, _, _ = self.run_cli('solve', '--instance', self.write_instance(inst), '--algorithm', 'dp')
        self.assertEqual(code, 2)

    @override_settings(SOLVER_SETTINGS={'ORACLE_BUDGET': 5})
    def test_budget_is_exit_four(self):
        inst = Instance(MachineEnv.identical(2), tuple(Job(f'j{i}', (1,)) for i in range(8)), k=6)
        code, _, err = self.run_cli('solve', '--instance', self.write_instance(inst), '--algorithm', 'oracle')
        self.assertEqual(code, 4)
        self.assertIn('budget', err)

    def test_emit_schedule(self):
        path = self.write_instance(ternary_tree())
        target = self.dir / 'schedule.json'
        code, _, _ = self.run_cli('solve', '--instance', path, '--emit-schedule', str(target))
        self.assertEqual(code, 0)
        schedule = json.loads(target.read_text(encoding='utf-8'))
        self.assertEqual(schedule['makespan'], 2)
        self.assertEqual(len(schedule['entries']), 2)

    def test_pretty_output(self):
        out = StringIO()
        call_command('solve', '--instance', self.write_instance(ternary_tree()), '--pretty', stdout=out)
        self.assertIn('✅', out.getvalue())
        self.assertIn('Fila 1', out.getvalue())

    def test_call_command_raises_with_returncode(self):
        inst = Instance(MachineEnv.single(), (Job('a', (1,)),), k=2)
        with self.assertRaises(CommandError) as ctx:
            call_command('solve', '--instance', self.write_instance(inst), stdout=StringIO())
        self.assertEqual(ctx.exception.returncode, 3)


class ClassifyCommandTestCase(CommandFilesMixin, SimpleTestCase):
    """Tests para el comando classify"""

    def test_json_output(self):
        code, out, _ = self.run_cli('classify', '--instance', self.write_instance(ternary_tree(m=2, release=1)))
        self.assertEqual(code, 0)
        info = json.loads(out)
        self.assertEqual(info['row'], 6)
        self.assertEqual(info['class'], 'FPT')
        self.assertEqual(info['algorithm'], 'AntichainDP')
        self.assertEqual(info['problem'], 'P|r_j,prec,p_j=1|k-sched,C_max')

    def test_invalid_instance(self):
        code, _, _ = self.run_cli('classify', '--instance', self.write_instance(chain(2, k=5)))
        self.assertEqual(code, 3)


class EnumerateAntichainsCommandTestCase(CommandFilesMixin, SimpleTestCase):
    """Tests para el comando enumerate-antichains"""

    def test_tree(self):
        path = self.write_instance(ternary_tree())
        code, out, _ = self.run_cli('enumerate-antichains', '--instance', path, '--k', '2')
        self.assertEqual(code, 0)
        payload = json.loads(out)
        self.assertEqual(payload['t'], 3)
        self.assertEqual(payload['count'], 2)
        self.assertEqual(payload['antichains'], [[], ['r']])

    def test_explicit_time(self):
        path = self.write_instance(chain(3))
        code, out, _ = self.run_cli('enumerate-antichains', '--instance', path, '--k', '3', '--t', '2')
        self.assertEqual(json.loads(out)['antichains'], [[], ['j1'], ['j2']])

    def test_negative_k(self):
        path = self.write_instance(chain(3))
        self.assertEqual(self.run_cli('enumerate-antichains', '--instance', path, '--k', '-1')[0], 2)
