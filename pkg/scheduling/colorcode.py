"""
Color coding + convolución rápida de subconjuntos para R|r_j,d_j|k-sched,C_max.

Cada trabajo recibe un color en 1..k. Por máquina se calcula B(X): el menor
makespan de una secuencia que usa exactamente un trabajo de cada color de X.
Un schedule colorido existe si las tablas umbral A_i = [B_i <= C_max] cubren
todos los colores vía convolución de subconjuntos.
"""
import itertools
import logging
import math
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .core import (
    Instance, MachineKind, Schedule, ScheduleEntry, SolverStats, check_schedule, variant_flags,
)
from .exceptions import CertificateError, DispatchError, TableSizeError
from .poset import bit, iter_bits, submasks

logger = logging.getLogger(__name__)

# Aritmética de las transformadas: primo > 2^20, productos caben en int64
MODULUS = 2**31 - 1
DEFAULT_MAX_COLORS = 20
DEFAULT_FAILURE_TARGET = 0.25


@dataclass(frozen=True)
class ColorAssignment:
    colors: Tuple[int, ...]  # color (1..k) por índice de trabajo
    seed: Optional[int] = None

    def color_of(self, index: int) -> int:
        return self.colors[index]


@dataclass
class SubsetTable:
    k: int
    best: List[Optional[int]]                   # B(X); None = infinito
    choice: List[Optional[Tuple[int, int]]]     # (color, trabajo) que cierra X


def default_trials(k: int, failure_target: float = DEFAULT_FAILURE_TARGET) -> int:
    """ceil(e^k * ln(1/target)) intentos dejan la probabilidad de fallo <= target"""
    if k <= 0:
        return 1
    return math.ceil(math.exp(k) * math.log(1 / failure_target))


def random_coloring(n: int, k: int, seed: int) -> ColorAssignment:
    rng = np.random.default_rng(seed)
    return ColorAssignment(tuple(int(c) for c in rng.integers(1, k + 1, size=n)), seed)


def iter_colorings(n: int, k: int, trials: int, seed: int) -> Iterator[ColorAssignment]:
    """
    Coloraciones a probar. Con k == n la identidad es perfecta; si k^n no
    supera el número de intentos se enumeran todas; si no, el intento i usa
    random_coloring(n, k, seed + i).
    """
    if k == n:
        yield ColorAssignment(tuple(range(1, n + 1)))
        return
    if k ** n <= trials:
        for colors in itertools.product(range(1, k + 1), repeat=n):
            yield ColorAssignment(colors)
        return
    for trial in range(trials):
        yield random_coloring(n, k, seed + trial)


def machine_dp(inst: Instance, machine: int, coloring: ColorAssignment, k: int,
               cmax: Optional[int] = None, max_colors: int = DEFAULT_MAX_COLORS) -> SubsetTable:
    """
    Tabla B_i(X) por orden creciente de popcount.

    Con `cmax` las compleciones mayores se descartan durante la DP; el umbral
    resultante coincide con construir B_i completa y umbralizar después.
    """
    if k > max_colors:
        raise TableSizeError(f'k={k} colors exceeds the table limit of {max_colors}')

    size = 1 << k
    by_color: List[List[int]] = [[] for _ in range(k)]
    for index, color in enumerate(coloring.colors):
        by_color[color - 1].append(index)

    best: List[Optional[int]] = [None] * size
    choice: List[Optional[Tuple[int, int]]] = [None] * size
    best[0] = 0
    for subset in sorted(range(1, size), key=int.bit_count):
        current = None
        for color in iter_bits(subset):
            previous = best[subset ^ bit(color)]
            if previous is None:
                continue
            for index in by_color[color]:
                job = inst.jobs[index]
                completion = max(job.release, previous) + job.p(machine)
                if not job.meets_deadline(completion):
                    continue
                if cmax is not None and completion > cmax:
                    continue
                if current is None or completion < current:
                    current = completion
                    choice[subset] = (color, index)
        best[subset] = current
    return SubsetTable(k, best, choice)


def threshold_table(table: SubsetTable, cmax: int) -> np.ndarray:
    return np.array(
        [1 if value is not None and value <= cmax else 0 for value in table.best],
        dtype=np.int64,
    )


# ===== Convolución de subconjuntos =====

def _popcounts(size: int) -> np.ndarray:
    return np.array([value.bit_count() for value in range(size)], dtype=np.int64)


def _ranked(table: np.ndarray, k: int, popcounts: np.ndarray) -> np.ndarray:
    size = 1 << k
    ranked = np.zeros((k + 1, size), dtype=np.int64)
    ranked[popcounts, np.arange(size)] = table
    return ranked


def _zeta(ranked: np.ndarray, k: int) -> np.ndarray:
    for position in range(k):
        view = ranked.reshape(k + 1, -1, 2, 1 << position)
        view[:, :, 1, :] += view[:, :, 0, :]
        np.mod(ranked, MODULUS, out=ranked)
    return ranked


def _moebius(ranked: np.ndarray, k: int) -> np.ndarray:
    for position in range(k):
        view = ranked.reshape(k + 1, -1, 2, 1 << position)
        view[:, :, 1, :] -= view[:, :, 0, :]
        np.mod(ranked, MODULUS, out=ranked)
    return ranked


def _fast_convolution(f: np.ndarray, g: np.ndarray) -> np.ndarray:
    size = len(f)
    k = size.bit_length() - 1
    popcounts = _popcounts(size)
    f_hat = _zeta(_ranked(f, k, popcounts), k)
    g_hat = _zeta(_ranked(g, k, popcounts), k)

    h_hat = np.zeros_like(f_hat)
    for rank in range(k + 1):
        for split in range(rank + 1):
            h_hat[rank] = (h_hat[rank] + (f_hat[split] * g_hat[rank - split]) % MODULUS) % MODULUS

    h = _moebius(h_hat, k)[popcounts, np.arange(size)]
    return (h > 0).astype(np.int64)


def _naive_convolution(f: np.ndarray, g: np.ndarray) -> np.ndarray:
    size = len(f)
    masks = np.arange(size)
    result = np.zeros(size, dtype=np.int64)
    for subset in np.flatnonzero(f):
        partners = masks[((masks & subset) == 0) & (g > 0)]
        result[subset | partners] = 1
    return result


def subset_convolution(f: np.ndarray, g: np.ndarray, method: str = 'fast') -> np.ndarray:
    """(f*g)(X) > 0, recortado a 0/1"""
    if method == 'naive':
        return _naive_convolution(f, g)
    return _fast_convolution(f, g)


def _identity(size: int) -> np.ndarray:
    identity = np.zeros(size, dtype=np.int64)
    identity[0] = 1
    return identity


def _peel(tables: Sequence[np.ndarray], prefixes: Sequence[np.ndarray]) -> List[int]:
    """Reconstruye X_1..X_m de atrás hacia adelante; prefixes[i] = A_1*...*A_i"""
    remaining = len(tables[0]) - 1
    parts = [0] * len(tables)
    for machine in range(len(tables) - 1, -1, -1):
        for subset in submasks(remaining):
            if tables[machine][subset] and prefixes[machine][remaining ^ subset]:
                parts[machine] = subset
                remaining ^= subset
                break
    return parts


def subset_convolution_cover(tables: Sequence[np.ndarray], method: str = 'fast') -> Optional[List[int]]:
    """Partición X_1..X_m del conjunto completo de colores con A_i(X_i) = 1, o None"""
    size = len(tables[0])
    prefixes = [_identity(size)]
    for table in tables:
        prefixes.append(subset_convolution(prefixes[-1], table, method))
    if not prefixes[-1][size - 1]:
        return None
    return _peel(tables, prefixes)


def _identical_cover(table: np.ndarray, machines: int, method: str = 'fast') -> Optional[List[int]]:
    """Misma tabla en todas las máquinas: decisión por cuadrados sucesivos"""
    size = len(table)
    k = size.bit_length() - 1
    # A(vacío) = 1, así que más de k máquinas no amplían el soporte
    effective = min(machines, max(k, 1))

    power, base, exponent = _identity(size), table, effective
    while exponent:
        if exponent & 1:
            power = subset_convolution(power, base, method)
        exponent >>= 1
        if exponent:
            base = subset_convolution(base, base, method)
    if not power[size - 1]:
        return None

    parts = subset_convolution_cover([table] * effective, method)
    return parts + [0] * (machines - effective)


# ===== Solvers =====

def _check_variant(inst: Instance):
    if variant_flags(inst).has_prec:
        raise DispatchError('color coding does not support precedence constraints')


def _machine_tables(inst, coloring, k, cmax, max_colors) -> List[SubsetTable]:
    if inst.machines.kind == MachineKind.UNRELATED:
        return [machine_dp(inst, machine, coloring, k, cmax, max_colors) for machine in range(inst.m)]
    return [machine_dp(inst, 0, coloring, k, cmax, max_colors)]


def _cover(inst, tables, cmax, method) -> Optional[List[int]]:
    thresholds = [threshold_table(table, cmax) for table in tables]
    if len(thresholds) == 1 and inst.m > 1:
        return _identical_cover(thresholds[0], inst.m, method)
    return subset_convolution_cover(thresholds, method)


def _realize(inst: Instance, tables: List[SubsetTable], parts: List[int]) -> Schedule:
    entries = []
    for machine, subset in enumerate(parts):
        table = tables[machine] if len(tables) > 1 else tables[0]
        sequence = []
        while subset:
            color, index = table.choice[subset]
            sequence.append(index)
            subset ^= bit(color)
        time = 0
        for index in reversed(sequence):
            job = inst.jobs[index]
            start = max(job.release, time)
            time = start + job.p(machine)
            entries.append(ScheduleEntry(job=job.id, machine=machine, start=start))
    schedule = Schedule(tuple(entries)).sorted()

    verdict = check_schedule(inst, schedule)
    if not verdict.feasible:
        logger.error(f'Color coding produjo un schedule inválido: {verdict.violations}')
        raise CertificateError('colorcode', verdict)
    return schedule


def colorful_decide(inst: Instance, k: int, cmax: int, coloring: ColorAssignment,
                    method: str = 'fast', max_colors: int = DEFAULT_MAX_COLORS) -> Optional[Schedule]:
    """Schedule verificado con un trabajo de cada color y makespan <= cmax, o None"""
    _check_variant(inst)
    if k == 0:
        return Schedule()
    tables = _machine_tables(inst, coloring, k, cmax, max_colors)
    parts = _cover(inst, tables, cmax, method)
    if parts is None:
        return None
    return _realize(inst, tables, parts)


def colorful_optimum(inst: Instance, coloring: ColorAssignment, upper: Optional[int] = None,
                     method: str = 'fast',
                     max_colors: int = DEFAULT_MAX_COLORS) -> Optional[Tuple[int, Schedule]]:
    """Mejor makespan colorido para una coloración (solo valores <= upper)"""
    _check_variant(inst)
    k = inst.k
    if k == 0:
        return 0, Schedule()

    tables = _machine_tables(inst, coloring, k, None, max_colors)
    values = sorted({value for table in tables for value in table.best if value is not None})
    if upper is not None:
        values = [value for value in values if value <= upper]
    if not values or _cover(inst, tables, values[-1], method) is None:
        return None

    low, high = 0, len(values) - 1
    while low < high:
        middle = (low + high) // 2
        if _cover(inst, tables, values[middle], method) is not None:
            high = middle
        else:
            low = middle + 1
    parts = _cover(inst, tables, values[low], method)
    schedule = _realize(inst, tables, parts)
    return schedule.makespan(inst), schedule


def solve_colorcode(inst: Instance, k: int, cmax: int, trials: Optional[int] = None, seed: int = 0,
                    method: str = 'fast', max_colors: int = DEFAULT_MAX_COLORS,
                    failure_target: float = DEFAULT_FAILURE_TARGET,
                    stats: Optional[SolverStats] = None) -> Optional[Schedule]:
    """Primer testigo colorido entre las coloraciones probadas"""
    _check_variant(inst)
    trials = default_trials(k, failure_target) if trials is None else trials
    for attempt, coloring in enumerate(iter_colorings(inst.n, k, trials, seed), start=1):
        schedule = colorful_decide(inst, k, cmax, coloring, method, max_colors)
        if stats is not None:
            stats.trials += 1
            stats.table_entries += (1 << k) * inst.m
        if schedule is not None:
            logger.debug(f'Color coding: testigo en el intento {attempt}')
            return schedule
    logger.info(f'Color coding: sin testigo tras {trials} intentos (seed={seed})')
    return None


def minimize_colorcode(inst: Instance, trials: Optional[int] = None, seed: int = 0,
                       method: str = 'fast', max_colors: int = DEFAULT_MAX_COLORS,
                       failure_target: float = DEFAULT_FAILURE_TARGET,
                       stats: Optional[SolverStats] = None) -> Optional[Tuple[int, Schedule]]:
    """Menor makespan colorido sobre todas las coloraciones probadas"""
    _check_variant(inst)
    k = inst.k
    if k == 0:
        return 0, Schedule()

    trials = default_trials(k, failure_target) if trials is None else trials
    best = None
    for coloring in iter_colorings(inst.n, k, trials, seed):
        upper = None if best is None else best[0] - 1
        found = colorful_optimum(inst, coloring, upper, method, max_colors)
        if stats is not None:
            stats.trials += 1
            stats.table_entries += (1 << k) * inst.m
        if found is not None:
            best = found
    return best
