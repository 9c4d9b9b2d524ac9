"""
Modelo de datos de la suite: máquinas, trabajos, instancias y schedules.

Incluye la validación estructural de instancias, el verificador independiente
de schedules (certificado universal de todos los solvers) y el codec JSON.
"""
import json
import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from functools import cached_property
from typing import Dict, List, Optional, Tuple

import networkx as nx

from .exceptions import InstanceFormatError, ScheduleStructureError
from .serializers import InstanceSerializer, ScheduleSerializer

logger = logging.getLogger(__name__)


class MachineKind(str, Enum):
    SINGLE = 'single'
    IDENTICAL = 'identical'
    UNRELATED = 'unrelated'


@dataclass(frozen=True)
class MachineEnv:
    kind: MachineKind
    count: int = 1

    @classmethod
    def single(cls):
        return cls(MachineKind.SINGLE, 1)

    @classmethod
    def identical(cls, m):
        return cls(MachineKind.IDENTICAL, m)

    @classmethod
    def unrelated(cls, m):
        return cls(MachineKind.UNRELATED, m)


@dataclass(frozen=True)
class Job:
    id: str
    proc: Tuple[int, ...]
    release: int = 0
    deadline: Optional[int] = None  # None = sin deadline (+infinito)

    def p(self, machine: int = 0) -> int:
        """Tiempo de proceso en la máquina indicada"""
        if len(self.proc) == 1:
            return self.proc[0]
        return self.proc[machine]

    @property
    def min_p(self) -> int:
        return min(self.proc)

    @property
    def is_unit(self) -> bool:
        return all(value == 1 for value in self.proc)

    def meets_deadline(self, completion: int) -> bool:
        return self.deadline is None or completion <= self.deadline


@dataclass(frozen=True)
class Instance:
    machines: MachineEnv
    jobs: Tuple[Job, ...]
    prec: Tuple[Tuple[str, str], ...] = ()
    k: int = 1
    cmax: Optional[int] = None

    @property
    def n(self) -> int:
        return len(self.jobs)

    @property
    def m(self) -> int:
        return self.machines.count

    @cached_property
    def index(self) -> Dict[str, int]:
        """Mapa id -> posición en `jobs`"""
        return {job.id: position for position, job in enumerate(self.jobs)}

    @cached_property
    def prec_indices(self) -> Tuple[Tuple[int, int], ...]:
        return tuple((self.index[u], self.index[v]) for u, v in self.prec)

    def job(self, job_id: str) -> Job:
        return self.jobs[self.index[job_id]]

    def with_k(self, k: int) -> 'Instance':
        return replace(self, k=k)

    def with_cmax(self, cmax: Optional[int]) -> 'Instance':
        return replace(self, cmax=cmax)


@dataclass(frozen=True)
class ScheduleEntry:
    job: str
    machine: int
    start: int


@dataclass(frozen=True)
class Schedule:
    entries: Tuple[ScheduleEntry, ...] = ()

    def __len__(self):
        return len(self.entries)

    def job_ids(self) -> List[str]:
        return [entry.job for entry in self.entries]

    def completion_times(self, inst: Instance) -> Dict[str, int]:
        return {
            entry.job: entry.start + inst.job(entry.job).p(entry.machine)
            for entry in self.entries
        }

    def makespan(self, inst: Instance) -> int:
        return max(self.completion_times(inst).values(), default=0)

    def sorted(self) -> 'Schedule':
        """Copia con las entradas ordenadas por (inicio, máquina, trabajo)"""
        return Schedule(tuple(sorted(self.entries, key=lambda e: (e.start, e.machine, e.job))))


class MachineModel(str, Enum):
    SINGLE = '1'
    IDENTICAL = 'P'
    UNRELATED = 'R'


@dataclass(frozen=True)
class VariantFlags:
    env: MachineModel
    has_release: bool = False
    has_deadline: bool = False
    has_prec: bool = False
    unit_p: bool = False

    @property
    def key(self) -> Tuple:
        return (self.env, self.has_release, self.has_deadline, self.has_prec, self.unit_p)

    def violations(self) -> List[str]:
        if self.unit_p and self.env == MachineModel.UNRELATED:
            return ['p_j=1 requires identical machines: unit jobs on unrelated machines are P']
        return []

    def three_field(self) -> str:
        beta = []
        if self.has_release:
            beta.append('r_j')
        if self.has_deadline:
            beta.append('d_j')
        if self.has_prec:
            beta.append('prec')
        if self.unit_p:
            beta.append('p_j=1')
        return f"{self.env.value}|{','.join(beta)}|k-sched,C_max"


def variant_flags(inst: Instance) -> VariantFlags:
    """Flags derivados de los datos; P(1) y R(1) se normalizan a una máquina"""
    unit = all(job.is_unit for job in inst.jobs)
    if inst.m == 1:
        env = MachineModel.SINGLE
    elif inst.machines.kind == MachineKind.UNRELATED and not unit:
        env = MachineModel.UNRELATED
    else:
        env = MachineModel.IDENTICAL
    return VariantFlags(
        env=env,
        has_release=any(job.release > 0 for job in inst.jobs),
        has_deadline=any(job.deadline is not None for job in inst.jobs),
        has_prec=bool(inst.prec),
        unit_p=unit,
    )


@dataclass
class ValidationReport:
    violations: List[str] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


@dataclass
class FeasibilityVerdict:
    feasible: bool
    jobs_done: int
    makespan: int
    violations: List[str] = field(default_factory=list)


@dataclass
class SolverStats:
    """Contadores que rellenan los solvers (benchmark y logs)"""
    memo_entries: int = 0
    table_entries: int = 0
    nodes_expanded: int = 0
    trials: int = 0
    antichain_counts: Dict[int, int] = field(default_factory=dict)


def precedence_digraph(inst: Instance) -> nx.DiGraph:
    graph = nx.DiGraph()
    graph.add_nodes_from(job.id for job in inst.jobs)
    graph.add_edges_from(inst.prec)
    return graph


def validate_instance(inst: Instance) -> ValidationReport:
    """Reporta todas las violaciones estructurales; nunca lanza por contenido"""
    report = ValidationReport()
    env = inst.machines

    if env.count < 1:
        report.violations.append('machine count must be positive')
    if env.kind == MachineKind.SINGLE and env.count != 1:
        report.violations.append('single machine environment must have m=1')

    seen = set()
    for job in inst.jobs:
        if job.id in seen:
            report.violations.append(f'duplicate job id: {job.id}')
        seen.add(job.id)

        expected = env.count if env.kind == MachineKind.UNRELATED else 1
        if len(job.proc) != expected:
            report.violations.append(
                f'job {job.id}: expected {expected} processing time(s), got {len(job.proc)}'
            )
        if any(value < 1 for value in job.proc):
            report.violations.append(f'job {job.id}: processing time must be positive')
        if job.release < 0:
            report.violations.append(f'job {job.id}: release must be non-negative')
        if job.deadline is not None and job.deadline < 1:
            report.violations.append(f'job {job.id}: deadline must be positive')
        elif job.deadline is not None and job.proc and job.release + job.min_p > job.deadline:
            report.warnings.append(
                f'job {job.id} unschedulable: release + p exceeds deadline'
            )

    if inst.k < 0:
        report.violations.append('k must be non-negative')
    if inst.k > inst.n:
        report.violations.append(f'k exceeds job count (k={inst.k}, n={inst.n})')
    if inst.cmax is not None and inst.cmax < 0:
        report.violations.append('cmax must be non-negative')

    known_edges = True
    for u, v in inst.prec:
        if u not in seen or v not in seen:
            report.violations.append(f'unknown job in precedence edge ({u}, {v})')
            known_edges = False

    if known_edges:
        try:
            cycle = nx.find_cycle(precedence_digraph(inst))
        except nx.NetworkXNoCycle:
            pass
        else:
            path = ' -> '.join([u for u, _ in cycle] + [cycle[0][0]])
            report.violations.append(f'precedence cycle: {path}')

    if report.violations:
        logger.debug(f'Instancia inválida: {report.violations}')
    return report


def check_schedule(inst: Instance, sched: Schedule) -> FeasibilityVerdict:
    """
    Verificador independiente de schedules.

    Lanza ScheduleStructureError solo si el schedule referencia trabajos o
    máquinas inexistentes; todo lo demás se reporta como violación.
    """
    violations = []
    completion = {}
    start = {}

    for entry in sched.entries:
        if entry.job not in inst.index:
            raise ScheduleStructureError(f'unknown job in schedule: {entry.job}')
        if not 0 <= entry.machine < inst.m:
            raise ScheduleStructureError(
                f'unknown machine {entry.machine} for job {entry.job}'
            )
        if entry.job in start:
            violations.append(f'duplicate job: {entry.job}')
            continue

        job = inst.job(entry.job)
        start[entry.job] = entry.start
        completion[entry.job] = entry.start + job.p(entry.machine)

        if entry.start < job.release:
            violations.append(
                f'release violated: job {job.id} starts at {entry.start} before {job.release}'
            )
        if not job.meets_deadline(completion[entry.job]):
            violations.append(
                f'deadline violated: job {job.id} completes at {completion[entry.job]} after {job.deadline}'
            )

    by_machine: Dict[int, List[ScheduleEntry]] = {}
    for entry in sched.entries:
        by_machine.setdefault(entry.machine, []).append(entry)
    for machine, entries in sorted(by_machine.items()):
        entries.sort(key=lambda e: e.start)
        for previous, current in zip(entries, entries[1:]):
            previous_end = previous.start + inst.job(previous.job).p(machine)
            if previous_end > current.start:
                violations.append(
                    f'machine overlap on machine {machine}: {previous.job} and {current.job}'
                )

    for u, v in inst.prec:
        if v not in start:
            continue
        if u not in start:
            violations.append(f'predecessor unscheduled: {u} must precede {v}')
        elif completion[u] > start[v]:
            violations.append(
                f'precedence violated: {u} completes at {completion[u]} after {v} starts at {start[v]}'
            )

    return FeasibilityVerdict(
        feasible=not violations,
        jobs_done=len(start),
        makespan=max(completion.values(), default=0),
        violations=violations,
    )


# ===== CODEC JSON =====

def instance_from_dict(data) -> Instance:
    serializer = InstanceSerializer(data=data)
    if not serializer.is_valid():
        raise InstanceFormatError('malformed instance JSON', serializer.errors)
    payload = serializer.validated_data

    machines = payload['machines']
    kind = MachineKind(machines['kind'])
    count = 1 if kind == MachineKind.SINGLE else machines['count']
    jobs = tuple(
        Job(id=job['id'], proc=job['p'], release=job['r'], deadline=job['d'])
        for job in payload['jobs']
    )
    return Instance(
        machines=MachineEnv(kind, count),
        jobs=jobs,
        prec=tuple((u, v) for u, v in payload['prec']),
        k=payload['k'],
        cmax=payload['cmax'],
    )


def instance_to_dict(inst: Instance) -> dict:
    return {
        'machines': {'kind': inst.machines.kind.value, 'count': inst.m},
        'jobs': [
            {
                'id': job.id,
                'p': job.proc[0] if len(job.proc) == 1 else list(job.proc),
                'r': job.release,
                'd': job.deadline,
            }
            for job in inst.jobs
        ],
        'prec': [[u, v] for u, v in inst.prec],
        'k': inst.k,
        'cmax': inst.cmax,
    }


def schedule_to_dict(sched: Schedule, inst: Optional[Instance] = None) -> dict:
    return {
        'entries': [
            {'job': entry.job, 'machine': entry.machine, 'start': entry.start}
            for entry in sched.entries
        ],
        'makespan': sched.makespan(inst) if inst is not None else None,
    }


def schedule_from_dict(data) -> Schedule:
    serializer = ScheduleSerializer(data=data)
    if not serializer.is_valid():
        raise InstanceFormatError('malformed schedule JSON', serializer.errors)
    return Schedule(tuple(
        ScheduleEntry(job=entry['job'], machine=entry['machine'], start=entry['start'])
        for entry in serializer.validated_data['entries']
    ))


def load_json(path):
    try:
        with open(path, encoding='utf-8') as handle:
            return json.load(handle)
    except json.JSONDecodeError as e:
        raise InstanceFormatError(f'invalid JSON in {path}: {e}')


def load_instance(path) -> Instance:
    return instance_from_dict(load_json(path))


def dump_instance(inst: Instance, path) -> None:
    with open(path, 'w', encoding='utf-8') as handle:
        json.dump(instance_to_dict(inst), handle, indent=2)
        handle.write('\n')
