"""
Servicio de resolución compartido por los comandos y la API HTTP.

Es el único lugar que lee SOLVER_SETTINGS; los solvers reciben todo por
argumento.
"""
import logging
from dataclasses import dataclass
from typing import Dict, Optional

from django.conf import settings
from django.core.management.base import CommandError

from .antichain_dp import DpMode
from .classifier import Algorithm, DispatchResult, SolveOptions, classify, dispatch
from .colorcode import DEFAULT_FAILURE_TARGET, DEFAULT_MAX_COLORS
from .core import Instance, load_instance, schedule_to_dict, validate_instance, variant_flags
from .exceptions import (
    BudgetExceededError, DispatchError, InstanceFormatError, InvalidInstanceError, SchedulingError,
)
from .oracle import DEFAULT_BUDGET

logger = logging.getLogger(__name__)

EXIT_USAGE = 2
EXIT_INVALID_INSTANCE = 3
EXIT_BUDGET = 4

ALGORITHM_CHOICES = ['auto', 'dp', 'colorcode', 'greedy', 'moore', 'oracle']

DEFAULT_SOLVER_SETTINGS = {
    'ORACLE_BUDGET': DEFAULT_BUDGET,
    'MAX_COLORS': DEFAULT_MAX_COLORS,
    'DEFAULT_SEED': 0,
    'FAILURE_TARGET': DEFAULT_FAILURE_TARGET,
    'DP_MODE': DpMode.LAZY.value,
    'API_CACHE_TIMEOUT': 300,
    'SLOW_SOLVE_SECONDS': 1.0,
}


def solver_settings() -> Dict:
    """SOLVER_SETTINGS del proyecto completado con los valores por defecto"""
    return {**DEFAULT_SOLVER_SETTINGS, **getattr(settings, 'SOLVER_SETTINGS', {})}


def build_options(trials: Optional[int] = None, seed: Optional[int] = None,
                  mode: Optional[str] = None, budget: Optional[int] = None,
                  method: str = 'fast') -> SolveOptions:
    config = solver_settings()
    try:
        dp_mode = DpMode(mode or config['DP_MODE'])
    except ValueError:
        raise DispatchError(f'unknown DP mode: {mode or config["DP_MODE"]}')
    return SolveOptions(
        trials=trials,
        seed=config['DEFAULT_SEED'] if seed is None else seed,
        mode=dp_mode,
        budget=config['ORACLE_BUDGET'] if budget is None else budget,
        failure_target=config['FAILURE_TARGET'],
        max_colors=config['MAX_COLORS'],
        method=method,
        slow_seconds=config['SLOW_SOLVE_SECONDS'],
    )


def resolve_algorithm(inst: Instance, name: str) -> Optional[Algorithm]:
    """Nombre de la CLI -> algoritmo concreto (None = el de la fila)"""
    if name == 'auto':
        return None
    flags = variant_flags(inst)
    if name == 'dp':
        return Algorithm.ANTICHAIN_DP
    if name == 'colorcode':
        return Algorithm.COLOR_CODE
    if name == 'oracle':
        return Algorithm.ORACLE
    if name == 'greedy':
        return Algorithm.GREEDY_PREC if flags.has_prec else Algorithm.GREEDY_EDD
    if name == 'moore':
        if flags.has_release or flags.has_deadline:
            return Algorithm.MOORE
        return Algorithm.SMALLEST_P
    raise DispatchError(f'unknown algorithm: {name} (choose from {", ".join(ALGORITHM_CHOICES)})')


@dataclass
class SolveOutcome:
    instance: Instance
    result: DispatchResult
    seed: int

    @property
    def uses_seed(self) -> bool:
        return self.result.algorithm == Algorithm.COLOR_CODE

    def to_dict(self) -> Dict:
        """Objeto JSON de salida de `solve` (sin tiempos: salida determinista)"""
        schedule = self.result.schedule
        payload = {
            'feasible': self.result.feasible,
            'makespan': self.result.makespan,
            'jobs_done': len(schedule) if schedule is not None else 0,
            'algorithm': self.result.algorithm.value,
            'row': self.result.row.row_id,
        }
        if self.uses_seed:
            payload['seed'] = self.seed
        return payload

    def schedule_dict(self) -> Optional[Dict]:
        if self.result.schedule is None:
            return None
        return schedule_to_dict(self.result.schedule, self.instance)


def solve_instance(inst: Instance, algorithm: str = 'auto', cmax: Optional[int] = None,
                   trials: Optional[int] = None, seed: Optional[int] = None,
                   mode: Optional[str] = None, budget: Optional[int] = None) -> SolveOutcome:
    if cmax is not None:
        inst = inst.with_cmax(cmax)
    options = build_options(trials, seed, mode, budget)
    result = dispatch(inst, options, resolve_algorithm(inst, algorithm))
    logger.info(
        f'Fila {result.row.row_id} con {result.algorithm.value}: '
        f'factible={result.feasible}, makespan={result.makespan}'
    )
    return SolveOutcome(inst, result, options.seed)


def classify_instance(inst: Instance) -> Dict:
    report = validate_instance(inst)
    if not report.ok:
        raise InvalidInstanceError(report)
    row = classify(variant_flags(inst))
    return {
        'row': row.row_id,
        'problem': row.problem,
        'class': row.complexity.value,
        'result_type': row.result_type,
        'algorithm': row.algorithm.value,
        'runtime': row.runtime,
        'bound_note': row.bound_note,
    }


def exit_code_for(error: SchedulingError) -> int:
    if isinstance(error, (InstanceFormatError, InvalidInstanceError)):
        return EXIT_INVALID_INSTANCE
    if isinstance(error, BudgetExceededError):
        return EXIT_BUDGET
    return EXIT_USAGE


def command_error(error: SchedulingError) -> CommandError:
    """Traduce un error de la suite al CommandError con su código de salida"""
    message = str(error)
    if isinstance(error, InstanceFormatError) and error.errors:
        message = f'{message}: {error.errors}'
    return CommandError(message, returncode=exit_code_for(error))


def load_for_command(path) -> Instance:
    """load_instance con los errores ya traducidos a CommandError"""
    try:
        return load_instance(path)
    except OSError as e:
        raise CommandError(f'cannot read instance {path}: {e}', returncode=EXIT_USAGE)
    except SchedulingError as e:
        raise command_error(e)
