"""
Generadores de instancias a partir de reducciones de dureza.

Cada generador construye la instancia de scheduling; los `certify_*` construyen
el schedule de la dirección directa (testigo fuente -> schedule factible) y
`decode_3coloring` recupera la coloración desde un schedule.

Los ids de los trabajos codifican su origen (índices desde 1):
  3-coloración: v{i}^{a}, w{i}^{a}, e{j}^{ab}, f{j}^{ab}
  clique y PSI: v{i} (vértice), e{j} (arista), r{i} (máquina de releases),
  x{i} (relleno), z{i} (trabajo muerto que completa k <= n)
"""
import logging
from dataclasses import dataclass
from itertools import permutations
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx

from scheduling.core import (
    Instance, Job, MachineEnv, Schedule, ScheduleEntry, check_schedule, load_json,
)
from scheduling.exceptions import (
    DecodeError, GenerationError, InstanceFormatError, PreconditionError,
)
from scheduling.serializers import SourceGraphSerializer

logger = logging.getLogger(__name__)

COLORS = (1, 2, 3)


@dataclass(frozen=True)
class SourceGraph:
    vertices: Tuple[str, ...]
    edges: Tuple[Tuple[str, str], ...] = ()
    chi: Optional[Dict[str, str]] = None

    def __post_init__(self):
        position = {}
        for index, vertex in enumerate(self.vertices, start=1):
            if vertex in position:
                raise GenerationError(f'duplicate vertex: {vertex}')
            position[vertex] = index
        seen = set()
        for u, v in self.edges:
            if u not in position or v not in position:
                raise GenerationError(f'unknown vertex in edge ({u}, {v})')
            if u == v:
                raise GenerationError(f'self-loop on {u}')
            key = frozenset((u, v))
            if key in seen:
                raise GenerationError(f'duplicate edge ({u}, {v})')
            seen.add(key)
        object.__setattr__(self, '_position', position)
        object.__setattr__(self, '_edge_set', seen)

    def index(self, vertex: str) -> int:
        """Índice (desde 1) del vértice"""
        return self._position[vertex]

    def has_edge(self, u: str, v: str) -> bool:
        return frozenset((u, v)) in self._edge_set

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(self.vertices)
        graph.add_edges_from(self.edges)
        return graph


def source_graph_from_dict(data) -> SourceGraph:
    serializer = SourceGraphSerializer(data=data)
    if not serializer.is_valid():
        raise InstanceFormatError('malformed source graph JSON', serializer.errors)
    payload = serializer.validated_data
    return SourceGraph(
        vertices=tuple(payload['vertices']),
        edges=tuple((u, v) for u, v in payload['edges']),
        chi=dict(payload['chi']) if 'chi' in payload else None,
    )


def load_source_graph(path) -> SourceGraph:
    return source_graph_from_dict(load_json(path))


def _unit(job_id: str, deadline: Optional[int] = None, release: int = 0) -> Job:
    return Job(id=job_id, proc=(1,), release=release, deadline=deadline)


def _single_machine_schedule(placed: Sequence[Tuple[str, int]]) -> Schedule:
    return Schedule(tuple(ScheduleEntry(job_id, 0, start) for job_id, start in placed)).sorted()


def _dead_padding(missing: int, cmax: int) -> List[Job]:
    """
    Trabajos que nunca terminan antes de cmax. Mantienen k <= n cuando la
    fuente es demasiado pequeña, sin cambiar la respuesta de la instancia.
    """
    return [Job(id=f'z{i}', proc=(cmax + 1,)) for i in range(1, missing + 1)]


def _certified(inst: Instance, schedule: Schedule, what: str) -> Schedule:
    verdict = check_schedule(inst, schedule)
    if not verdict.feasible or verdict.jobs_done < inst.k:
        # un testigo válido siempre produce un schedule factible
        raise GenerationError(f'{what} certificate rejected: {verdict.violations}')
    return schedule


# ===== 3-COLORACIÓN -> 1|d_j,prec,p_j=1 =====

def _coloring_layout(g: SourceGraph) -> Tuple[int, int]:
    return len(g.vertices), len(g.edges)


def gen_3coloring(g: SourceGraph) -> Instance:
    """
    Una máquina, trabajos unitarios y k = cmax = 2n' + 2m'.

    Deadlines: v_i en i, e_j en n'+j, f_j en n'+2m'+1-j y w_i en 2n'+2m'+1-i,
    de modo que cada bloque ocupa su propio tramo de slots.
    """
    n, m = _coloring_layout(g)
    jobs: List[Job] = []
    prec: List[Tuple[str, str]] = []

    for i in range(1, n + 1):
        for a in COLORS:
            jobs.append(_unit(f'v{i}^{a}', deadline=i))
            jobs.append(_unit(f'w{i}^{a}', deadline=2 * n + 2 * m + 1 - i))
            prec.append((f'v{i}^{a}', f'w{i}^{a}'))

    for j, (u, v) in enumerate(g.edges, start=1):
        iu, iv = g.index(u), g.index(v)
        for a, b in permutations(COLORS, 2):
            e_job, f_job = f'e{j}^{a}{b}', f'f{j}^{a}{b}'
            jobs.append(_unit(e_job, deadline=n + j))
            jobs.append(_unit(f_job, deadline=n + 2 * m + 1 - j))
            prec.extend([(e_job, f_job), (f'v{iu}^{a}', e_job), (f'v{iv}^{b}', e_job)])

    k = 2 * n + 2 * m
    logger.info(f'3-coloración: {len(jobs)} trabajos, k = cmax = {k}')
    return Instance(MachineEnv.single(), tuple(jobs), tuple(prec), k=k, cmax=k)


def _check_coloring(g: SourceGraph, coloring: Dict[str, int]) -> None:
    for vertex in g.vertices:
        if coloring.get(vertex) not in COLORS:
            raise PreconditionError(f'vertex {vertex} has no color in 1..3')
    for u, v in g.edges:
        if coloring[u] == coloring[v]:
            raise PreconditionError(f'improper coloring: edge ({u}, {v}) is monochromatic')


def certify_3coloring(g: SourceGraph, coloring: Dict[str, int]) -> Schedule:
    """Cada trabajo elegido se procesa justo en el slot de su deadline"""
    _check_coloring(g, coloring)
    n, m = _coloring_layout(g)
    inst = gen_3coloring(g)

    placed = []
    for i, vertex in enumerate(g.vertices, start=1):
        a = coloring[vertex]
        placed.append((f'v{i}^{a}', i - 1))
        placed.append((f'w{i}^{a}', 2 * n + 2 * m - i))
    for j, (u, v) in enumerate(g.edges, start=1):
        a, b = coloring[u], coloring[v]
        placed.append((f'e{j}^{a}{b}', n + j - 1))
        placed.append((f'f{j}^{a}{b}', n + 2 * m - j))
    return _certified(inst, _single_machine_schedule(placed), '3-coloring')


def decode_3coloring(g: SourceGraph, sched: Schedule) -> Dict[str, int]:
    """Lee el color de cada vértice del único v_i^a procesado"""
    inst = gen_3coloring(g)
    verdict = check_schedule(inst, sched)
    if not verdict.feasible or verdict.jobs_done < inst.k:
        raise DecodeError(f'schedule is not a feasible {inst.k}-schedule: {verdict.violations}')

    scheduled = set(sched.job_ids())
    coloring = {}
    for i, vertex in enumerate(g.vertices, start=1):
        chosen = [a for a in COLORS if f'v{i}^{a}' in scheduled]
        if len(chosen) != 1:
            raise DecodeError(f'vertex {vertex}: expected one scheduled color job, found {len(chosen)}')
        coloring[vertex] = chosen[0]

    for u, v in g.edges:
        if coloring[u] == coloring[v]:
            raise DecodeError(f'decoded coloring is improper on edge ({u}, {v})')
    return coloring


# ===== k-CLIQUE -> 1|prec|k-sched,C_max =====

def clique_parameters(q: int) -> Tuple[int, int]:
    """(k', cmax) para un clique de tamaño q"""
    edges = q * (q - 1) // 2
    return q + edges, 2 * q + edges


def gen_clique(g: SourceGraph, q: int) -> Instance:
    if q < 1:
        raise GenerationError(f'clique size must be positive, got {q}')
    jobs = [Job(id=f'v{i}', proc=(2,)) for i in range(1, len(g.vertices) + 1)]
    prec = []
    for j, (u, v) in enumerate(g.edges, start=1):
        jobs.append(Job(id=f'e{j}', proc=(1,)))
        prec.extend([(f'v{g.index(u)}', f'e{j}'), (f'v{g.index(v)}', f'e{j}')])

    k, cmax = clique_parameters(q)
    jobs.extend(_dead_padding(k - len(jobs), cmax))
    logger.info(f'Clique q={q}: {len(jobs)} trabajos, k={k}, cmax={cmax}')
    return Instance(MachineEnv.single(), tuple(jobs), tuple(prec), k=k, cmax=cmax)


def certify_clique(g: SourceGraph, q: int, clique: Sequence[str]) -> Schedule:
    """Vértices del clique primero (p=2), después sus aristas"""
    members = list(clique)
    if len(members) != q or len(set(members)) != q:
        raise PreconditionError(f'expected {q} distinct vertices, got {members}')
    for position, u in enumerate(members):
        if u not in g.vertices:
            raise PreconditionError(f'unknown vertex {u}')
        for v in members[position + 1:]:
            if not g.has_edge(u, v):
                raise PreconditionError(f'not a clique: ({u}, {v}) is not an edge')

    placed = [(f'v{g.index(vertex)}', 2 * position) for position, vertex in enumerate(members)]
    time = 2 * q
    chosen = set(members)
    for j, (u, v) in enumerate(g.edges, start=1):
        if u in chosen and v in chosen:
            placed.append((f'e{j}', time))
            time += 1
    return _certified(gen_clique(g, q), _single_machine_schedule(placed), 'clique')


# ===== PARTITIONED SUBGRAPH ISOMORPHISM =====

@dataclass(frozen=True)
class PsiLayout:
    s: int
    color: Dict[str, int]                     # vértice objetivo -> índice de color (1..s)
    edge_jobs: Tuple[Tuple[int, str, str], ...]  # (j, u, v) aristas con colores adyacentes en el patrón
    stamps: Tuple[int, ...]                    # t_0 .. t_s
    pattern_edges: int

    @property
    def t_s(self) -> int:
        return self.stamps[-1]

    def processing(self, color: int) -> int:
        return 3 ** (self.s + 1 - color)


def psi_layout(target: SourceGraph, pattern: SourceGraph) -> PsiLayout:
    s = len(pattern.vertices)
    if s == 0:
        raise GenerationError('pattern graph has no vertices')
    if target.chi is None:
        raise GenerationError('target graph needs a coloring chi')

    color = {}
    for vertex in target.vertices:
        value = target.chi.get(vertex)
        if value is None:
            raise GenerationError(f'chi undefined on target vertex {vertex}')
        if value not in pattern.vertices:
            raise GenerationError(f'chi({vertex}) = {value} is not a pattern vertex')
        color[vertex] = pattern.index(value)
    if set(color.values()) != set(range(1, s + 1)):
        raise GenerationError('chi is not onto the pattern vertices')

    adjacent = {frozenset((pattern.index(a), pattern.index(b))) for a, b in pattern.edges}
    edge_jobs = tuple(
        (j, u, v) for j, (u, v) in enumerate(target.edges, start=1)
        if frozenset((color[u], color[v])) in adjacent
    )
    stamps = [0]
    for i in range(1, s + 1):
        stamps.append(stamps[-1] + 3 ** (s + 1 - i))
    return PsiLayout(s, color, edge_jobs, tuple(stamps), len(pattern.edges))


def gen_psi(target: SourceGraph, pattern: SourceGraph) -> Instance:
    """1|prec,r_j|: releases geométricos fuerzan un vértice por color"""
    layout = psi_layout(target, pattern)
    jobs = [
        Job(
            id=f'v{i}',
            proc=(layout.processing(layout.color[vertex]),),
            release=layout.stamps[layout.color[vertex] - 1],
        )
        for i, vertex in enumerate(target.vertices, start=1)
    ]
    prec = []
    for j, u, v in layout.edge_jobs:
        jobs.append(_unit(f'e{j}', release=layout.t_s))
        prec.extend([(f'v{target.index(u)}', f'e{j}'), (f'v{target.index(v)}', f'e{j}')])

    k = layout.s + layout.pattern_edges
    cmax = layout.t_s + layout.pattern_edges
    jobs.extend(_dead_padding(k - len(jobs), cmax))
    logger.info(f"PSI: s={layout.s}, |E'|={layout.pattern_edges}, k={k}, cmax={cmax}")
    return Instance(MachineEnv.single(), tuple(jobs), tuple(prec), k=k, cmax=cmax)


def gen_psi_2machine(target: SourceGraph, pattern: SourceGraph) -> Instance:
    """
    P2|prec|: la segunda máquina simula los releases con una cadena r_1 < ... < r_s
    (p(r_i) = 3^(s+1-i)) seguida de |E'| rellenos unitarios.
    """
    layout = psi_layout(target, pattern)
    jobs: List[Job] = []
    prec: List[Tuple[str, str]] = []

    for i in range(1, layout.s + 1):
        jobs.append(Job(id=f'r{i}', proc=(layout.processing(i),)))
        if i > 1:
            prec.append((f'r{i - 1}', f'r{i}'))

    for i, vertex in enumerate(target.vertices, start=1):
        color = layout.color[vertex]
        jobs.append(Job(id=f'v{i}', proc=(layout.processing(color),)))
        if color > 1:
            prec.append((f'r{color - 1}', f'v{i}'))

    last = f'r{layout.s}'
    for j, u, v in layout.edge_jobs:
        jobs.append(_unit(f'e{j}'))
        prec.extend([
            (last, f'e{j}'), (f'v{target.index(u)}', f'e{j}'), (f'v{target.index(v)}', f'e{j}'),
        ])
    for filler in range(1, layout.pattern_edges + 1):
        jobs.append(_unit(f'x{filler}'))
        prec.append((last, f'x{filler}'))

    k = 2 * layout.s + 2 * layout.pattern_edges
    cmax = layout.t_s + layout.pattern_edges
    jobs.extend(_dead_padding(k - len(jobs), cmax))
    logger.info(f'PSI dos máquinas: {len(jobs)} trabajos, k={k}, cmax={cmax}')
    return Instance(MachineEnv.identical(2), tuple(jobs), tuple(prec), k=k, cmax=cmax)


def _psi_placement(target: SourceGraph, pattern: SourceGraph, phi: Dict[str, str],
                   layout: PsiLayout) -> List[Tuple[str, int]]:
    for a in pattern.vertices:
        image = phi.get(a)
        if image is None or image not in target.vertices:
            raise PreconditionError(f'phi({a}) is not a target vertex')
        if target.chi.get(image) != a:
            raise PreconditionError(f'phi({a}) = {image} has color {target.chi.get(image)}')

    placed = [
        (f'v{target.index(phi[a])}', layout.stamps[pattern.index(a) - 1])
        for a in pattern.vertices
    ]
    by_endpoints = {frozenset((u, v)): j for j, u, v in layout.edge_jobs}
    for offset, (a, b) in enumerate(pattern.edges):
        j = by_endpoints.get(frozenset((phi[a], phi[b])))
        if j is None:
            raise PreconditionError(f'pattern edge ({a}, {b}) has no image in the target')
        placed.append((f'e{j}', layout.t_s + offset))
    return placed


def certify_psi(target: SourceGraph, pattern: SourceGraph, phi: Dict[str, str]) -> Schedule:
    """phi: vértice del patrón -> vértice objetivo de ese color"""
    layout = psi_layout(target, pattern)
    placed = _psi_placement(target, pattern, phi, layout)
    return _certified(gen_psi(target, pattern), _single_machine_schedule(placed), 'PSI')


def certify_psi_2machine(target: SourceGraph, pattern: SourceGraph, phi: Dict[str, str]) -> Schedule:
    layout = psi_layout(target, pattern)
    entries = [ScheduleEntry(job_id, 0, start) for job_id, start in _psi_placement(target, pattern, phi, layout)]
    entries.extend(ScheduleEntry(f'r{i}', 1, layout.stamps[i - 1]) for i in range(1, layout.s + 1))
    entries.extend(
        ScheduleEntry(f'x{filler}', 1, layout.t_s + filler - 1)
        for filler in range(1, layout.pattern_edges + 1)
    )
    schedule = Schedule(tuple(entries)).sorted()
    return _certified(gen_psi_2machine(target, pattern), schedule, 'PSI two-machine')


# ===== PARTITION / SUBSET SUM -> P2||k-sched,C_max =====

def partition_parameters(values: Sequence[int], target: Optional[int] = None) -> Tuple[int, int]:
    """(relleno D, cmax); D = 0 significa sin trabajo de relleno"""
    if any(value < 1 for value in values):
        raise GenerationError('partition values must be positive integers')
    total = sum(values)
    if target is None:
        if total % 2:
            raise GenerationError(f'odd sum {total} cannot be split evenly')
        return 0, total // 2
    if not 0 <= target <= total:
        raise GenerationError(f'target {target} outside 0..{total}')
    pad = abs(total - 2 * target)
    return pad, (total + pad) // 2


def gen_partition(values: Sequence[int], target: Optional[int] = None) -> Instance:
    """Dos máquinas idénticas, k = n: factible sii existe el reparto"""
    pad, cmax = partition_parameters(values, target)
    jobs = [Job(id=f'a{i}', proc=(value,)) for i, value in enumerate(values, start=1)]
    if pad:
        jobs.append(Job(id='pad', proc=(pad,)))
    logger.info(f'Partición: {len(values)} valores, relleno {pad}, cmax={cmax}')
    return Instance(MachineEnv.identical(2), tuple(jobs), (), k=len(jobs), cmax=cmax)


def certify_partition(values: Sequence[int], side: Sequence[int], target: Optional[int] = None) -> Schedule:
    """side: índices (desde 0) de los valores que van a la máquina 0"""
    pad, cmax = partition_parameters(values, target)
    chosen = set(side)
    if len(chosen) != len(side) or any(not 0 <= index < len(values) for index in chosen):
        raise PreconditionError(f'invalid side indices: {list(side)}')
    load = sum(values[index] for index in chosen)
    goal = sum(values) // 2 if target is None else target
    if load not in (goal, sum(values) - goal):
        raise PreconditionError(f'side sums to {load}, expected {goal}')

    frontier = [0, 0]
    entries = []
    for index, value in enumerate(values):
        machine = 0 if index in chosen else 1
        entries.append(ScheduleEntry(f'a{index + 1}', machine, frontier[machine]))
        frontier[machine] += value
    if pad:
        machine = 0 if frontier[0] <= frontier[1] else 1
        entries.append(ScheduleEntry('pad', machine, frontier[machine]))
    return _certified(gen_partition(values, target), Schedule(tuple(entries)).sorted(), 'partition')
