"""
Tabla de complejidad de las 40 variantes y despacho al solver correspondiente.
"""
import logging
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Optional, Tuple

from .antichain_dp import DpMode, minimize_makespan
from .colorcode import DEFAULT_FAILURE_TARGET, DEFAULT_MAX_COLORS, minimize_colorcode
from .core import (
    Instance, MachineModel, Schedule, SolverStats, VariantFlags, check_schedule,
    validate_instance, variant_flags,
)
from .exceptions import CertificateError, DispatchError, InvalidInstanceError, InvalidVariantError
from .oracle import DEFAULT_BUDGET, brute_force
from .polysolvers import greedy_edd_unit, greedy_prec_unit, solve_single_machine

logger = logging.getLogger(__name__)
performance_logger = logging.getLogger('performance')


class Complexity(str, Enum):
    POLY = 'P'
    FPT = 'FPT'
    W1_HARD = 'W[1]-hard'


class Algorithm(str, Enum):
    GREEDY_PREC = 'GreedyPrec'
    GREEDY_EDD = 'GreedyEDD'
    SMALLEST_P = 'SmallestP'
    MOORE = 'Moore'
    ANTICHAIN_DP = 'AntichainDP'
    COLOR_CODE = 'ColorCode'
    ORACLE = 'Oracle'


@dataclass(frozen=True)
class TableRow:
    row_id: int
    flags: VariantFlags
    complexity: Complexity
    result_type: str
    algorithm: Algorithm
    excluded_runtime: str = ''
    reduction_from: str = ''
    runtime: str = 'n^O(1)'

    @property
    def problem(self) -> str:
        return self.flags.three_field()

    @property
    def bound_note(self) -> str:
        if not self.excluded_runtime:
            return ''
        return f'no {self.excluded_runtime} algorithm under ETH (from {self.reduction_from})'


def _flags(env: str, beta: str) -> VariantFlags:
    fields = set(filter(None, beta.split(',')))
    return VariantFlags(
        env=MachineModel(env),
        has_release='r_j' in fields,
        has_deadline='d_j' in fields,
        has_prec='prec' in fields,
        unit_p='p_j=1' in fields,
    )


_P, _FPT, _W1 = Complexity.POLY, Complexity.FPT, Complexity.W1_HARD
_COLORING = ('n^o(k/log k)', '3-Coloring', 'n^O(k)')
_PSI = ('n^o(k/log k)', 'Partitioned Subgraph Isomorphism', 'n^O(k)')
_SUBSET_SUM = ('O*(2^o(k))', 'Subset Sum', 'O*(2^O(k))')
_DP_BOUND = ('O*(2^o(sqrt(k log k)))', 'P|prec,p_j=1|C_max', 'O*(2^O(k))')
_NONE = ('', '', 'n^O(1)')

_ROWS = [
    # Con precedencias
    (1, '1', 'prec,p_j=1', _P, 'A', Algorithm.GREEDY_PREC, _NONE),
    (2, '1', 'r_j,prec,p_j=1', _P, 'A', Algorithm.GREEDY_PREC, _NONE),
    (3, '1', 'd_j,prec,p_j=1', _W1, 'B', Algorithm.ORACLE, _COLORING),
    (4, '1', 'r_j,d_j,prec,p_j=1', _W1, 'B', Algorithm.ORACLE, _COLORING),
    (5, 'P', 'prec,p_j=1', _FPT, 'C', Algorithm.ANTICHAIN_DP, _DP_BOUND),
    (6, 'P', 'r_j,prec,p_j=1', _FPT, 'C', Algorithm.ANTICHAIN_DP, _DP_BOUND),
    (7, 'P', 'd_j,prec,p_j=1', _W1, 'B', Algorithm.ORACLE, _COLORING),
    (8, 'P', 'r_j,d_j,prec,p_j=1', _W1, 'B', Algorithm.ORACLE, _COLORING),
    (9, '1', 'prec', _W1, 'D', Algorithm.ORACLE, ('n^o(sqrt(k))', 'k-Clique', 'n^O(k)')),
    (10, '1', 'r_j,prec', _W1, 'D', Algorithm.ORACLE, _PSI),
    (11, '1', 'd_j,prec', _W1, 'D', Algorithm.ORACLE, _PSI),
    (12, '1', 'r_j,d_j,prec', _W1, 'D', Algorithm.ORACLE, _PSI),
    (13, 'P', 'prec', _W1, 'D', Algorithm.ORACLE, _PSI),
    (14, 'P', 'r_j,prec', _W1, 'D', Algorithm.ORACLE, _PSI),
    (15, 'P', 'd_j,prec', _W1, 'D', Algorithm.ORACLE, _PSI),
    (16, 'P', 'r_j,d_j,prec', _W1, 'D', Algorithm.ORACLE, _PSI),
    (17, 'R', 'prec', _W1, 'D', Algorithm.ORACLE, _PSI),
    (18, 'R', 'r_j,prec', _W1, 'D', Algorithm.ORACLE, _PSI),
    (19, 'R', 'd_j,prec', _W1, 'D', Algorithm.ORACLE, _PSI),
    (20, 'R', 'r_j,d_j,prec', _W1, 'D', Algorithm.ORACLE, _PSI),
    # Sin precedencias
    (21, '1', 'p_j=1', _P, 'E', Algorithm.GREEDY_EDD, _NONE),
    (22, '1', 'r_j,p_j=1', _P, 'E', Algorithm.GREEDY_EDD, _NONE),
    (23, '1', 'd_j,p_j=1', _P, 'E', Algorithm.GREEDY_EDD, _NONE),
    (24, '1', 'r_j,d_j,p_j=1', _P, 'E', Algorithm.GREEDY_EDD, _NONE),
    (25, 'P', 'p_j=1', _P, 'E', Algorithm.GREEDY_EDD, _NONE),
    (26, 'P', 'r_j,p_j=1', _P, 'E', Algorithm.GREEDY_EDD, _NONE),
    (27, 'P', 'd_j,p_j=1', _P, 'E', Algorithm.GREEDY_EDD, _NONE),
    (28, 'P', 'r_j,d_j,p_j=1', _P, 'E', Algorithm.GREEDY_EDD, _NONE),
    (29, '1', '', _P, 'F', Algorithm.SMALLEST_P, _NONE),
    (30, '1', 'r_j', _P, 'F', Algorithm.MOORE, _NONE),
    (31, '1', 'd_j', _P, 'F', Algorithm.MOORE, _NONE),
    (32, '1', 'r_j,d_j', _FPT, 'G', Algorithm.COLOR_CODE, _SUBSET_SUM),
    (33, 'P', '', _FPT, 'G', Algorithm.COLOR_CODE, _SUBSET_SUM),
    (34, 'P', 'r_j', _FPT, 'G', Algorithm.COLOR_CODE, _SUBSET_SUM),
    (35, 'P', 'd_j', _FPT, 'G', Algorithm.COLOR_CODE, _SUBSET_SUM),
    (36, 'P', 'r_j,d_j', _FPT, 'G', Algorithm.COLOR_CODE, _SUBSET_SUM),
    (37, 'R', '', _FPT, 'G', Algorithm.COLOR_CODE, _SUBSET_SUM),
    (38, 'R', 'r_j', _FPT, 'G', Algorithm.COLOR_CODE, _SUBSET_SUM),
    (39, 'R', 'd_j', _FPT, 'G', Algorithm.COLOR_CODE, _SUBSET_SUM),
    (40, 'R', 'r_j,d_j', _FPT, 'G', Algorithm.COLOR_CODE, _SUBSET_SUM),
]

TABLE_ROWS: Tuple[TableRow, ...] = tuple(
    TableRow(
        row_id=row_id,
        flags=_flags(env, beta),
        complexity=complexity,
        result_type=result_type,
        algorithm=algorithm,
        excluded_runtime=bounds[0],
        reduction_from=bounds[1],
        runtime=bounds[2],
    )
    for row_id, env, beta, complexity, result_type, algorithm, bounds in _ROWS
)

_BY_FLAGS: Dict[Tuple, TableRow] = {row.flags.key: row for row in TABLE_ROWS}


def classify(flags: VariantFlags) -> TableRow:
    """Fila de la tabla para los flags dados"""
    violations = flags.violations()
    if violations:
        raise InvalidVariantError(violations[0])
    return _BY_FLAGS[flags.key]


@dataclass
class SolveOptions:
    trials: Optional[int] = None
    seed: int = 0
    mode: DpMode = DpMode.LAZY
    budget: int = DEFAULT_BUDGET
    failure_target: float = DEFAULT_FAILURE_TARGET
    max_colors: int = DEFAULT_MAX_COLORS
    method: str = 'fast'
    slow_seconds: float = 1.0


@dataclass
class DispatchResult:
    row: TableRow
    algorithm: Algorithm
    result: Optional[Tuple[int, Schedule]]
    stats: SolverStats = field(default_factory=SolverStats)
    wall_time: float = 0.0

    @property
    def feasible(self) -> bool:
        return self.result is not None

    @property
    def makespan(self) -> Optional[int]:
        return self.result[0] if self.result else None

    @property
    def schedule(self) -> Optional[Schedule]:
        return self.result[1] if self.result else None


def run_algorithm(inst: Instance, algorithm: Algorithm, options: Optional[SolveOptions] = None,
                  stats: Optional[SolverStats] = None) -> Optional[Tuple[int, Schedule]]:
    """Ejecuta un solver concreto y certifica su salida con check_schedule"""
    options = options or SolveOptions()
    stats = stats if stats is not None else SolverStats()
    flags = variant_flags(inst)

    if algorithm == Algorithm.GREEDY_PREC:
        if flags.env != MachineModel.SINGLE:
            logger.warning('GreedyPrec con varias máquinas es heurístico')
        result = greedy_prec_unit(inst)
    elif algorithm == Algorithm.GREEDY_EDD:
        result = greedy_edd_unit(inst)
    elif algorithm in (Algorithm.SMALLEST_P, Algorithm.MOORE):
        result = solve_single_machine(inst)
    elif algorithm == Algorithm.ANTICHAIN_DP:
        result = minimize_makespan(inst, options.mode, stats)
    elif algorithm == Algorithm.COLOR_CODE:
        result = minimize_colorcode(
            inst, options.trials, options.seed, options.method,
            options.max_colors, options.failure_target, stats,
        )
    else:
        result = brute_force(inst, cmax=inst.cmax, budget=options.budget, stats=stats)

    if result is not None and inst.cmax is not None and result[0] > inst.cmax:
        result = None
    if result is not None:
        verdict = check_schedule(inst, result[1])
        if not verdict.feasible or verdict.jobs_done < inst.k or verdict.makespan != result[0]:
            logger.error(f'{algorithm.value}: certificado rechazado {verdict.violations}')
            raise CertificateError(algorithm.value, verdict)
    return result


def dispatch(inst: Instance, options: Optional[SolveOptions] = None,
             algorithm: Optional[Algorithm] = None) -> DispatchResult:
    """Valida, clasifica y resuelve con el algoritmo de la fila (o el forzado)"""
    report = validate_instance(inst)
    if not report.ok:
        raise InvalidInstanceError(report)

    row = classify(variant_flags(inst))
    algorithm = algorithm or row.algorithm
    logger.info(f'Fila {row.row_id} ({row.problem}): {algorithm.value}')

    options = options or SolveOptions()
    stats = SolverStats()
    started = time.perf_counter()
    result = run_algorithm(inst, algorithm, options, stats)
    elapsed = time.perf_counter() - started

    if elapsed > options.slow_seconds:
        performance_logger.warning(f'Solve lento: {algorithm.value} tardó {elapsed:.2f}s (n={inst.n}, k={inst.k})')
    return DispatchResult(row, algorithm, result, stats, elapsed)
