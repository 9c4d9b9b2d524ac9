"""
Solvers polinomiales: greedy con precedencias, greedy EDD, k trabajos más
cortos y Moore-Hodgson (directo y con inversión temporal).
"""
import heapq
import logging
from typing import List, Optional, Sequence, Tuple

from .core import Instance, MachineModel, Schedule, ScheduleEntry, variant_flags
from .exceptions import DispatchError

logger = logging.getLogger(__name__)


def _deadline_key(deadline: Optional[int]) -> Tuple[bool, int]:
    return (deadline is None, deadline or 0)


def _finish(inst: Instance, entries: List[ScheduleEntry]) -> Tuple[int, Schedule]:
    schedule = Schedule(tuple(entries)).sorted()
    return schedule.makespan(inst), schedule


def greedy_prec_unit(inst: Instance, k: Optional[int] = None) -> Optional[Tuple[int, Schedule]]:
    """
    Slot a slot, hasta m trabajos disponibles (liberados y con predecesores
    terminados) de menor índice. Óptimo en una máquina; con m > 1 es heurística.
    """
    flags = variant_flags(inst)
    if not flags.unit_p or flags.has_deadline:
        raise DispatchError(f'precedence greedy does not apply to {flags.three_field()}')
    k = inst.k if k is None else k
    if k == 0:
        return 0, Schedule()
    if k > inst.n:
        return None

    parents: List[List[int]] = [[] for _ in range(inst.n)]
    for u, v in inst.prec_indices:
        parents[v].append(u)

    done_at = {}
    entries = []
    slot = 0
    while len(entries) < k:
        slot += 1
        ready = [
            index for index in range(inst.n)
            if index not in done_at and all(done_at.get(p, slot) < slot for p in parents[index])
        ]
        available = [index for index in ready if inst.jobs[index].release <= slot - 1]
        if not available:
            if not ready:
                return None
            # saltar al siguiente release entre los listos
            slot = min(inst.jobs[index].release for index in ready)
            continue
        for machine, index in enumerate(available[:min(inst.m, k - len(entries))]):
            done_at[index] = slot
            entries.append(ScheduleEntry(inst.jobs[index].id, machine, slot - 1))
    return _finish(inst, entries)


def greedy_edd_unit(inst: Instance, k: Optional[int] = None) -> Optional[Tuple[int, Schedule]]:
    """Slot a slot, hasta m trabajos liberados y no vencidos de menor deadline"""
    flags = variant_flags(inst)
    if not flags.unit_p or flags.has_prec:
        raise DispatchError(f'EDD greedy does not apply to {flags.three_field()}')
    k = inst.k if k is None else k
    if k == 0:
        return 0, Schedule()

    alive = {
        index for index, job in enumerate(inst.jobs)
        if job.meets_deadline(job.release + 1)
    }
    entries = []
    slot = 0
    while len(entries) < k:
        slot += 1
        alive = {index for index in alive if inst.jobs[index].meets_deadline(slot)}
        if not alive:
            return None
        available = [index for index in alive if inst.jobs[index].release <= slot - 1]
        if not available:
            slot = min(inst.jobs[index].release for index in alive)
            continue
        available.sort(key=lambda index: (_deadline_key(inst.jobs[index].deadline), index))
        for machine, index in enumerate(available[:min(inst.m, k - len(entries))]):
            alive.discard(index)
            entries.append(ScheduleEntry(inst.jobs[index].id, machine, slot - 1))
    return _finish(inst, entries)


def moore_max_ontime(items: Sequence[Tuple[int, Optional[int]]]) -> List[int]:
    """
    Moore-Hodgson sobre pares (p, d). Devuelve los índices del mayor conjunto
    a tiempo, en orden EDD.
    """
    order = sorted(range(len(items)), key=lambda i: (_deadline_key(items[i][1]), i))
    heap = []
    total = 0
    for index in order:
        processing, deadline = items[index]
        heapq.heappush(heap, (-processing, -index))
        total += processing
        if deadline is not None and total > deadline:
            longest, _ = heapq.heappop(heap)
            total += longest
    kept = {-negative_index for _, negative_index in heap}
    return [index for index in order if index in kept]


def _binary_search(low: int, high: int, feasible) -> Optional[int]:
    """Menor C en [low, high] con feasible(C), asumiendo monotonía"""
    if low > high or not feasible(high):
        return None
    while low < high:
        middle = (low + high) // 2
        if feasible(middle):
            high = middle
        else:
            low = middle + 1
    return low


def solve_single_machine(inst: Instance, k: Optional[int] = None) -> Optional[Tuple[int, Schedule]]:
    """1||, 1|d_j| y 1|r_j| con k-sched"""
    flags = variant_flags(inst)
    if flags.env != MachineModel.SINGLE or flags.has_prec or (flags.has_release and flags.has_deadline):
        raise DispatchError(f'single-machine solver does not apply to {flags.three_field()}')

    k = inst.k if k is None else k
    if k == 0:
        return 0, Schedule()
    if k > inst.n:
        return None

    processing = [job.p(0) for job in inst.jobs]

    if not flags.has_release and not flags.has_deadline:
        chosen = sorted(range(inst.n), key=lambda index: (processing[index], index))[:k]
        return _back_to_back(inst, chosen)

    if flags.has_deadline:
        def ontime(cmax):
            items = [
                (processing[index], cmax if job.deadline is None else min(job.deadline, cmax))
                for index, job in enumerate(inst.jobs)
            ]
            return moore_max_ontime(items)

        best = _binary_search(1, sum(processing), lambda cmax: len(ontime(cmax)) >= k)
        if best is None:
            return None
        return _back_to_back(inst, ontime(best)[:k])

    # 1|r_j|: invertir el tiempo convierte releases en deadlines C - r_j
    def reversed_ontime(cmax):
        return moore_max_ontime([
            (processing[index], cmax - job.release) for index, job in enumerate(inst.jobs)
        ])

    upper = max(job.release for job in inst.jobs) + sum(processing)
    best = _binary_search(1, upper, lambda cmax: len(reversed_ontime(cmax)) >= k)
    if best is None:
        return None

    entries = []
    reversed_completion = 0
    for index in reversed_ontime(best)[:k]:
        reversed_completion += processing[index]
        entries.append(ScheduleEntry(inst.jobs[index].id, 0, best - reversed_completion))
    return _finish(inst, entries)


def _back_to_back(inst: Instance, chosen: Sequence[int]) -> Tuple[int, Schedule]:
    entries = []
    time = 0
    for index in chosen:
        entries.append(ScheduleEntry(inst.jobs[index].id, 0, time))
        time += inst.jobs[index].p(0)
    logger.debug(f'Una máquina: {len(entries)} trabajos consecutivos, makespan {time}')
    return _finish(inst, entries)
