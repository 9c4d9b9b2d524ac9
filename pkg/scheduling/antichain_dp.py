"""
Programación dinámica sobre anticadenas para P|r_j,prec,p_j=1|k-sched,C_max.

Convención de tiempo: un trabajo "en el slot t" ocupa [t-1, t) y se completa
en t. Un trabajo puede ir en el slot t si rho_j <= t.

Dos modos:
  - faithful: tabla hacia adelante sobre los slots de evento, solo para
    anticadenas con d^t <= k; entradas ausentes cuentan como falsas.
  - lazy: recursión memoizada del instante mínimo en que pred(A) puede
    completarse (los pasos ociosos se colapsan en un max).
Ambos deben coincidir en todas las instancias.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterator, List, Optional, Tuple

from .core import Instance, MachineModel, Schedule, ScheduleEntry, SolverStats, variant_flags
from .exceptions import DispatchError
from .poset import NodeSet, PrecedenceGraph, bit, enumerate_antichains, iter_bits

logger = logging.getLogger(__name__)


class DpMode(str, Enum):
    FAITHFUL = 'faithful'
    LAZY = 'lazy'


@dataclass(frozen=True)
class DpKey:
    antichain: NodeSet
    t: int


@dataclass
class DpEntry:
    s_value: bool
    witness: Optional[NodeSet] = None   # X: trabajos en el slot `slot`
    slot: Optional[int] = None
    previous: Optional[NodeSet] = None  # A' = max(pred(A) \ X)


def event_slots(graph: PrecedenceGraph, k: int, horizon: int) -> List[int]:
    """
    Slots candidatos: 0 y rho + i con 0 <= i <= k, acotados por el horizonte.

    En un schedule sin huecos evitables cada slot ocupado pertenece a este
    conjunto.
    """
    slots = {0}
    for node in iter_bits(graph.active):
        for offset in range(k + 1):
            slot = graph.rho[node] + offset
            if slot > horizon:
                break
            slots.add(slot)
    return sorted(slots)


class DpContext:
    def __init__(self, inst: Instance, cmax: int, mode=DpMode.LAZY):
        self.inst = inst
        self.cmax = cmax
        self.mode = DpMode(mode)
        self.m = inst.m
        self.k = inst.k
        # G = G^{C_max}: lo que no cabe antes de C_max no existe
        self.graph = PrecedenceGraph.from_instance(inst).restrict_to_time(cmax)
        self.events = event_slots(self.graph, self.k, cmax)
        self._previous_event = {
            slot: (self.events[position - 1] if position else None)
            for position, slot in enumerate(self.events)
        }
        self.memo: Dict[DpKey, DpEntry] = {}
        self.earliest: Dict[NodeSet, Tuple[int, NodeSet, int, NodeSet]] = {}
        self.antichain_counts: Dict[int, int] = {}

    def previous_event(self, t: int) -> int:
        """Mayor slot de evento estrictamente menor que t (0 si no hay)"""
        if t in self._previous_event:
            return self._previous_event[t] or 0
        candidates = [slot for slot in self.events if slot < t]
        return candidates[-1] if candidates else 0

    def frontier(self, antichain: NodeSet, pred: NodeSet, chosen: NodeSet) -> NodeSet:
        """A' = max(pred(A) \\ X), calculado a partir de los padres directos de X"""
        remaining = pred & ~chosen
        result = antichain & ~chosen
        parents = 0
        for node in iter_bits(chosen):
            parents |= self.graph.parents[node]
        for node in iter_bits(parents & remaining):
            if self.graph.up[node] & remaining == bit(node):
                result |= bit(node)
        return result


def _gray_subsets(mask: NodeSet, limit: int) -> Iterator[NodeSet]:
    """Subconjuntos de `mask` de tamaño <= limit en orden de código Gray"""
    members = list(iter_bits(mask))
    for code in range(1 << len(members)):
        gray = code ^ (code >> 1)
        if gray.bit_count() > limit:
            continue
        subset = 0
        for position in iter_bits(gray):
            subset |= bit(members[position])
        yield subset


def _earliest_completion(ctx: DpContext, antichain: NodeSet) -> int:
    """Primer slot en que pred(A) puede estar completo (modo lazy)"""
    if antichain == 0:
        return 0
    cached = ctx.earliest.get(antichain)
    if cached is not None:
        return cached[0]

    graph = ctx.graph
    pred = graph.pred_set(antichain)
    lower_bound = -(-pred.bit_count() // ctx.m)
    best = None
    for chosen in _gray_subsets(antichain, ctx.m):
        if chosen == 0:
            continue
        previous = ctx.frontier(antichain, pred, chosen)
        slot = max(
            _earliest_completion(ctx, previous) + 1,
            max(graph.rho[node] for node in iter_bits(chosen)),
        )
        if best is None or slot < best[0]:
            best = (slot, chosen, slot, previous)
            if slot == lower_bound:
                break

    ctx.earliest[antichain] = best
    return best[0]


def compute_S(ctx: DpContext, antichain: NodeSet, t: int) -> bool:
    """S(A, t): pred(A) puede programarse completo para el slot t"""
    key = DpKey(antichain, t)
    entry = ctx.memo.get(key)
    if entry is not None:
        return entry.s_value

    graph = ctx.graph
    if antichain == 0:
        entry = DpEntry(True)
    elif t <= 0 or any(graph.rho[node] > t for node in iter_bits(antichain)):
        entry = DpEntry(False)
    else:
        pred = graph.pred_set(antichain)
        if pred.bit_count() > ctx.m * t:
            entry = DpEntry(False)
        elif ctx.mode == DpMode.LAZY:
            value = _earliest_completion(ctx, antichain)
            _, chosen, slot, previous = ctx.earliest[antichain]
            entry = DpEntry(value <= t, chosen, slot, previous)
        else:
            entry = _faithful_entry(ctx, antichain, pred, t)

    ctx.memo[key] = entry
    return entry.s_value


def _faithful_entry(ctx: DpContext, antichain: NodeSet, pred: NodeSet, t: int) -> DpEntry:
    previous_slot = ctx.previous_event(t)
    for chosen in _gray_subsets(antichain, ctx.m):
        previous = ctx.frontier(antichain, pred, chosen)
        if previous == 0:
            found = True
        else:
            earlier = ctx.memo.get(DpKey(previous, previous_slot))
            found = earlier is not None and earlier.s_value
        if found:
            return DpEntry(True, chosen, t, previous)
    return DpEntry(False)


def fill(ctx: DpContext, antichain: NodeSet, t: int) -> Optional[List[Tuple[int, int]]]:
    """
    R(A, t): completa con trabajos de min(G - pred(A)) después de t,
    por menor rho. Devuelve la cola [(trabajo, slot)] o None.
    """
    graph = ctx.graph
    pred = graph.pred_set(antichain)
    need = ctx.k - pred.bit_count()
    if need <= 0:
        return []

    candidates = sorted(
        iter_bits(graph.minimal(graph.active & ~pred)),
        key=lambda node: (graph.rho[node], node),
    )
    tail = []
    slot, used = t + 1, 0
    for node in candidates:
        if len(tail) == need:
            break
        if graph.rho[node] > slot:
            slot, used = graph.rho[node], 0
        if used == ctx.m:
            slot, used = slot + 1, 0
        if slot > ctx.cmax:
            break
        tail.append((node, slot))
        used += 1
    return tail if len(tail) == need else None


def _prefix_slots(ctx: DpContext, antichain: NodeSet, t: int) -> List[Tuple[int, int]]:
    placed = []
    while antichain:
        if ctx.mode == DpMode.LAZY:
            _, chosen, slot, previous = ctx.earliest[antichain]
        else:
            entry = ctx.memo[DpKey(antichain, t)]
            chosen, slot, previous = entry.witness, entry.slot, entry.previous
            t = ctx.previous_event(t)
        placed.extend((node, slot) for node in iter_bits(chosen))
        antichain = previous
    return placed


def _to_schedule(ctx: DpContext, placed: List[Tuple[int, int]]) -> Schedule:
    entries = []
    used: Dict[int, int] = {}
    for node, slot in sorted(placed, key=lambda item: (item[1], item[0])):
        machine = used.get(slot, 0)
        used[slot] = machine + 1
        entries.append(ScheduleEntry(job=ctx.inst.jobs[node].id, machine=machine, start=slot - 1))
    return Schedule(tuple(entries))


def _check_variant(inst: Instance):
    flags = variant_flags(inst)
    if not flags.unit_p or flags.has_deadline or flags.env == MachineModel.UNRELATED:
        raise DispatchError(
            f'antichain DP solves P|r_j,prec,p_j=1| only, got {flags.three_field()}'
        )


def decide(inst: Instance, cmax: int, mode=DpMode.LAZY,
           stats: Optional[SolverStats] = None) -> Optional[Schedule]:
    """Schedule con >= k trabajos y makespan <= cmax, o None"""
    _check_variant(inst)
    if inst.k == 0:
        return Schedule()
    if cmax < 1:
        return None

    ctx = DpContext(inst, cmax, mode)
    try:
        for t in ctx.events:
            antichains = enumerate_antichains(ctx.graph, t, ctx.k)
            ctx.antichain_counts[t] = len(antichains)
            logger.debug(f'DP t={t}: {len(antichains)} anticadenas con d^t <= {ctx.k}')
            for antichain in antichains:
                if not compute_S(ctx, antichain, t):
                    continue
                tail = fill(ctx, antichain, t)
                if tail is not None:
                    return _to_schedule(ctx, _prefix_slots(ctx, antichain, t) + tail)
        return None
    finally:
        if stats is not None:
            stats.memo_entries += len(ctx.memo) + len(ctx.earliest)
            for slot, count in ctx.antichain_counts.items():
                stats.antichain_counts[slot] = max(stats.antichain_counts.get(slot, 0), count)


def minimize_makespan(inst: Instance, mode=DpMode.LAZY,
                      stats: Optional[SolverStats] = None) -> Optional[Tuple[int, Schedule]]:
    """Menor C_max del conjunto de eventos que admite k trabajos (búsqueda binaria)"""
    _check_variant(inst)
    if inst.k == 0:
        return 0, Schedule()

    graph = PrecedenceGraph.from_instance(inst)
    horizon = max(graph.rho, default=0) + inst.k
    candidates = [slot for slot in event_slots(graph, inst.k, horizon) if slot >= 1]
    if not candidates:
        return None

    best = decide(inst, candidates[-1], mode, stats)
    if best is None:
        logger.info(f'DP: ningún C_max <= {horizon} admite {inst.k} trabajos')
        return None

    low, high = 0, len(candidates) - 1
    while low < high:
        middle = (low + high) // 2
        schedule = decide(inst, candidates[middle], mode, stats)
        if schedule is not None:
            best, high = schedule, middle
        else:
            low = middle + 1
    return best.makespan(inst), best
