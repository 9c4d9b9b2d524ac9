import json

from django.core.cache import cache
from django.test import TestCase, override_settings
from django.urls import reverse

from generators.corpus import chain, ternary_tree
from scheduling.core import instance_to_dict
from solver_api.caching import ResponseCache


class SolverApiTestCase(TestCase):
    """Tests para la API HTTP de los solvers"""

    def setUp(self):
        cache.clear()
        self.tree = instance_to_dict(ternary_tree())

    def post(self, name, data, query=''):
        return self.client.post(
            reverse(f'solver_api:{name}') + query, data=json.dumps(data), content_type='application/json',
        )

    def test_status(self):
        response = self.client.get(reverse('solver_api:status'))
        self.assertEqual(response.status_code, 200)
        data = json.loads(response.content)
        self.assertEqual(data['status'], 'ok')
        self.assertEqual(data['table_rows'], 40)
        self.assertIn('/api/solve/', data['endpoints'])

    def test_solve_tree(self):
        response = self.post('solve', self.tree, '?algorithm=dp')
        self.assertEqual(response.status_code, 200)
        data = json.loads(response.content)
        self.assertTrue(data['feasible'])
        self.assertEqual(data['makespan'], 2)
        self.assertEqual(data['algorithm'], 'AntichainDP')
        self.assertEqual(len(data['schedule']['entries']), 2)
        self.assertFalse(data['cached'])

    def test_second_call_is_cached(self):
        self.post('solve', self.tree)
        data = json.loads(self.post('solve', self.tree).content)
        self.assertTrue(data['cached'])
        self.assertEqual(data['makespan'], 2)

    def test_params_change_the_cache_key(self):
        first = ResponseCache.get_cache_key('solve', self.tree, 'auto', None, None, None, None)
        second = ResponseCache.get_cache_key('solve', self.tree, 'auto', None, None, 1, None)
        self.assertNotEqual(first, second)
        reordered = dict(reversed(list(self.tree.items())))
        self.assertEqual(first, ResponseCache.get_cache_key('solve', reordered, 'auto', None, None, None, None))

    def test_cmax_query(self):
        data = json.loads(self.post('solve', instance_to_dict(chain(3)), '?cmax=2').content)
        self.assertFalse(data['feasible'])
        self.assertIsNone(data['schedule'])

    def test_malformed_instance(self):
        payload = dict(self.tree, colour='red')
        response = self.post('solve', payload)
        self.assertEqual(response.status_code, 400)
        data = json.loads(response.content)
        self.assertEqual(data['error'], 'malformed instance')
        self.assertIn('colour', data['detail'])

    def test_invalid_instance(self):
        response = self.post('solve', instance_to_dict(chain(2, k=5)))
        self.assertEqual(response.status_code, 400)
        self.assertEqual(json.loads(response.content)['error'], 'InvalidInstanceError')

    def test_bad_query_params(self):
        self.assertEqual(self.post('solve', self.tree, '?seed=abc').status_code, 400)
        self.assertEqual(self.post('solve', self.tree, '?algorithm=simplex').status_code, 400)
        self.assertEqual(self.post('solve', self.tree, '?mode=eager').status_code, 400)

    @override_settings(SOLVER_SETTINGS={'ORACLE_BUDGET': 5})
    def test_budget_exceeded(self):
        payload = instance_to_dict(ternary_tree(m=2, k=6))
        response = self.post('solve', payload, '?algorithm=oracle')
        self.assertEqual(response.status_code, 422)
        self.assertEqual(json.loads(response.content)['error'], 'budget exceeded')

    def test_classify(self):
        response = self.post('classify', instance_to_dict(ternary_tree(m=2, release=1)))
        self.assertEqual(response.status_code, 200)
        data = json.loads(response.content)
        self.assertEqual(data['row'], 6)
        self.assertEqual(data['class'], 'FPT')

    def test_get_not_allowed_on_solve(self):
        self.assertEqual(self.client.get(reverse('solver_api:solve')).status_code, 405)
