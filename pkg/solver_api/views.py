"""
API HTTP de la suite: resolver y clasificar instancias en formato JSON
"""
import logging

from rest_framework import status
from rest_framework.decorators import api_view
from rest_framework.response import Response

from scheduling.classifier import TABLE_ROWS
from scheduling.core import instance_from_dict
from scheduling.exceptions import BudgetExceededError, InstanceFormatError, SchedulingError
from scheduling.services import ALGORITHM_CHOICES, classify_instance, solve_instance, solver_settings

from .caching import ResponseCache

logger = logging.getLogger(__name__)

API_VERSION = '1.0.0'


class QueryParamError(ValueError):
    pass


def _int_param(request, name):
    raw = request.query_params.get(name)
    if raw in (None, ''):
        return None
    try:
        return int(raw)
    except ValueError:
        raise QueryParamError(f'{name} must be an integer, got {raw!r}')


def _error(message, detail=None, code=status.HTTP_400_BAD_REQUEST):
    return Response({'error': message, 'detail': detail}, status=code)


def _error_response(error: SchedulingError):
    """Errores de la suite -> 400, salvo presupuesto agotado -> 422"""
    if isinstance(error, BudgetExceededError):
        return _error('budget exceeded', str(error), status.HTTP_422_UNPROCESSABLE_ENTITY)
    if isinstance(error, InstanceFormatError):
        return _error('malformed instance', error.errors)
    return _error(type(error).__name__, str(error))


@api_view(['POST'])
def api_solve(request):
    """Resuelve la instancia del body; parámetros opcionales en la query"""
    algorithm = request.query_params.get('algorithm', 'auto')
    if algorithm not in ALGORITHM_CHOICES:
        return _error('invalid parameter', f'algorithm must be one of {ALGORITHM_CHOICES}')
    mode = request.query_params.get('mode') or None
    try:
        seed, trials, cmax = (_int_param(request, name) for name in ('seed', 'trials', 'cmax'))
    except QueryParamError as e:
        return _error('invalid parameter', str(e))

    cache_key = ResponseCache.get_cache_key('solve', request.data, algorithm, seed, trials, cmax, mode)
    cached = ResponseCache.get(cache_key)
    if cached is not None:
        logger.info('Cache HIT para solve')
        return Response({**cached, 'cached': True})

    try:
        inst = instance_from_dict(request.data)
        outcome = solve_instance(inst, algorithm, cmax=cmax, trials=trials, seed=seed, mode=mode)
    except SchedulingError as e:
        logger.warning(f'solve rechazado: {e}')
        return _error_response(e)

    payload = {
        **outcome.to_dict(),
        'problem': outcome.result.row.problem,
        'schedule': outcome.schedule_dict(),
    }
    ResponseCache.set(cache_key, payload)
    return Response({**payload, 'cached': False})


@api_view(['POST'])
def api_classify(request):
    cache_key = ResponseCache.get_cache_key('classify', request.data)
    cached = ResponseCache.get(cache_key)
    if cached is not None:
        return Response(cached)

    try:
        info = classify_instance(instance_from_dict(request.data))
    except SchedulingError as e:
        return _error_response(e)
    ResponseCache.set(cache_key, info)
    return Response(info)


@api_view(['GET'])
def api_status(request):
    """Estado del servicio y configuración efectiva de los solvers"""
    config = solver_settings()
    return Response({
        'status': 'ok',
        'version': API_VERSION,
        'table_rows': len(TABLE_ROWS),
        'algorithms': ALGORITHM_CHOICES,
        'settings': {
            'oracle_budget': config['ORACLE_BUDGET'],
            'max_colors': config['MAX_COLORS'],
            'default_seed': config['DEFAULT_SEED'],
            'failure_target': config['FAILURE_TARGET'],
            'dp_mode': config['DP_MODE'],
        },
        'endpoints': ['/api/solve/', '/api/classify/', '/api/status/'],
    })
