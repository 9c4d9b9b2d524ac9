"""
Oráculo exhaustivo: referencia para todas las pruebas de equivalencia.

Todo schedule útil es la realización "lo antes posible" de una asignación de
secuencias por máquina, así que basta con enumerar esas realizaciones.
"""
import logging
from typing import Dict, List, Optional, Sequence, Tuple

from .core import Instance, MachineKind, Schedule, ScheduleEntry, SolverStats
from .exceptions import BudgetExceededError

logger = logging.getLogger(__name__)

DEFAULT_BUDGET = 10**9

SequenceAssignment = Tuple[Tuple[str, ...], ...]


def _parents_by_id(inst: Instance) -> Dict[str, List[str]]:
    parents = {job.id: [] for job in inst.jobs}
    for u, v in inst.prec:
        parents[v].append(u)
    return parents


def greedy_realize(inst: Instance, assignment: Sequence[Sequence[str]]) -> Optional[Schedule]:
    """
    Coloca cada trabajo lo antes posible respetando el orden de su máquina.

    Una máquina avanza cuando todos los predecesores de su siguiente trabajo ya
    están colocados; si una pasada completa no coloca nada, la asignación es
    inviable (dependencia cruzada imposible).
    """
    assigned = [job_id for sequence in assignment for job_id in sequence]
    if len(set(assigned)) != len(assigned):
        return None
    parents = _parents_by_id(inst)
    assigned_set = set(assigned)
    if any(u not in assigned_set for job_id in assigned for u in parents[job_id]):
        return None

    completion: Dict[str, int] = {}
    position = [0] * len(assignment)
    frontier = [0] * len(assignment)
    entries = []
    while len(entries) < len(assigned):
        moved = False
        for machine, sequence in enumerate(assignment):
            while position[machine] < len(sequence):
                job = inst.job(sequence[position[machine]])
                if any(u not in completion for u in parents[job.id]):
                    break
                start = max(
                    [job.release, frontier[machine]] + [completion[u] for u in parents[job.id]]
                )
                end = start + job.p(machine)
                if not job.meets_deadline(end):
                    return None
                completion[job.id] = end
                frontier[machine] = end
                position[machine] += 1
                entries.append(ScheduleEntry(job.id, machine, start))
                moved = True
        if not moved:
            return None
    return Schedule(tuple(entries)).sorted()


class _Search:
    """Búsqueda en profundidad en orden estricto de (inicio, máquina)"""

    def __init__(self, inst: Instance, k: int, cmax: Optional[int], budget: int):
        self.inst = inst
        self.k = k
        self.cmax = cmax
        self.budget = budget
        self.steps = 0
        self.identical = inst.machines.kind != MachineKind.UNRELATED
        self.parents = [[] for _ in range(inst.n)]
        for u, v in inst.prec_indices:
            self.parents[v].append(u)
        self.completion: Dict[int, int] = {}
        self.frontier = [0] * inst.m
        self.used = [False] * inst.m
        self.entries: List[ScheduleEntry] = []
        self.best: Optional[Tuple[int, Tuple[ScheduleEntry, ...]]] = None

    def run(self, last_key=(-1, -1), makespan=0):
        if len(self.entries) == self.k:
            if self.best is None or makespan < self.best[0]:
                self.best = (makespan, tuple(self.entries))
            return

        first_unused = next((i for i in range(self.inst.m) if not self.used[i]), None)
        for index, job in enumerate(self.inst.jobs):
            if index in self.completion:
                continue
            if any(u not in self.completion for u in self.parents[index]):
                continue
            ready = max([job.release] + [self.completion[u] for u in self.parents[index]])

            for machine in range(self.inst.m):
                if self.identical and not self.used[machine] and machine != first_unused:
                    continue
                start = max(ready, self.frontier[machine])
                if (start, machine) <= last_key:
                    continue
                end = start + job.p(machine)
                if not job.meets_deadline(end):
                    continue
                if self.cmax is not None and end > self.cmax:
                    continue
                if self.best is not None and max(makespan, end) >= self.best[0]:
                    continue

                self.steps += 1
                if self.steps > self.budget:
                    raise BudgetExceededError(self.budget)

                saved = (self.frontier[machine], self.used[machine])
                self.completion[index] = end
                self.frontier[machine] = end
                self.used[machine] = True
                self.entries.append(ScheduleEntry(job.id, machine, start))

                self.run((start, machine), max(makespan, end))

                self.entries.pop()
                self.frontier[machine], self.used[machine] = saved
                del self.completion[index]


def brute_force(inst: Instance, k: Optional[int] = None, cmax: Optional[int] = None,
                budget: int = DEFAULT_BUDGET,
                stats: Optional[SolverStats] = None) -> Optional[Tuple[int, Schedule]]:
    """Makespan mínimo con k trabajos (y <= cmax si se da), o None"""
    k = inst.k if k is None else k
    if k == 0:
        return 0, Schedule()
    if k > inst.n:
        return None

    search = _Search(inst, k, cmax, budget)
    try:
        search.run()
    finally:
        if stats is not None:
            stats.nodes_expanded += search.steps
    logger.debug(f'Oráculo: {search.steps} pasos de realización')

    if search.best is None:
        return None
    makespan, entries = search.best
    return makespan, Schedule(entries).sorted()
