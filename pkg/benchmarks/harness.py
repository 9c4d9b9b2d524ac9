"""
Harness de benchmark: resuelve un corpus de instancias JSON y escribe el CSV.

Las entradas se resuelven de forma independiente (opcionalmente en un pool de
procesos); el CSV se escribe al final desde el proceso principal.
"""
import csv
import json
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Dict, List, Optional, Sequence

import django

from scheduling.classifier import SolveOptions, dispatch
from scheduling.core import load_instance
from scheduling.exceptions import (
    AntichainBoundError, BudgetExceededError, DispatchError, InstanceFormatError,
    InvalidInstanceError,
)
from scheduling.services import resolve_algorithm

logger = logging.getLogger(__name__)

BENCH_COLUMNS = [
    'instance_id', 'algorithm', 'row', 'status', 'feasible', 'makespan', 'k', 'wall_time',
    'memo_entries', 'table_entries', 'nodes_expanded', 'trials', 'max_antichains',
    'antichain_counts', 'seed',
]


def corpus_paths(directory) -> List[Path]:
    return sorted(Path(directory).glob('*.json'))


def check_antichain_bound(counts: Dict[int, int], k: int) -> None:
    """Ningún slot puede tener más de 4^k anticadenas de profundidad <= k"""
    for slot, count in counts.items():
        if count > 4 ** k:
            raise AntichainBoundError(f'{count} antichains at t={slot} exceed 4^{k}')


def bench_instance(path, options: SolveOptions, algorithm: str = 'auto') -> Dict:
    """Una fila del CSV; los errores de la instancia quedan en `status`"""
    path = Path(path)
    record = {column: None for column in BENCH_COLUMNS}
    record.update(instance_id=path.stem, algorithm=algorithm, status='ok', seed=options.seed)

    started = time.perf_counter()
    try:
        inst = load_instance(path)
        record['k'] = inst.k
        result = dispatch(inst, options, resolve_algorithm(inst, algorithm))
    except (InstanceFormatError, InvalidInstanceError) as e:
        record['status'] = 'invalid'
        logger.warning(f'{path.name}: instancia inválida ({e})')
        return record
    except DispatchError as e:
        record['status'] = 'unsupported'
        logger.warning(f'{path.name}: {e}')
        return record
    except BudgetExceededError:
        record['status'] = 'budget'
        record['wall_time'] = round(time.perf_counter() - started, 6)
        logger.warning(f'{path.name}: presupuesto del oráculo agotado')
        return record

    counts = {str(slot): count for slot, count in sorted(result.stats.antichain_counts.items())}
    record.update(
        algorithm=result.algorithm.value,
        row=result.row.row_id,
        feasible=result.feasible,
        makespan=result.makespan,
        wall_time=round(result.wall_time, 6),
        memo_entries=result.stats.memo_entries,
        table_entries=result.stats.table_entries,
        nodes_expanded=result.stats.nodes_expanded,
        trials=result.stats.trials,
        max_antichains=max(counts.values(), default=0),
        antichain_counts=counts,
    )
    try:
        check_antichain_bound(result.stats.antichain_counts, inst.k)
    except AntichainBoundError as e:
        record['status'] = 'bound'
        logger.warning(f'{path.name}: {e}')
    return record


def _init_worker():
    """Con spawn/forkserver los workers no heredan la configuración de Django"""
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'parsched_project.settings')
    django.setup()


def run_bench(paths: Sequence, options: SolveOptions, algorithm: str = 'auto',
              workers: int = 1) -> List[Dict]:
    paths = list(paths)
    if workers > 1 and len(paths) > 1:
        with ProcessPoolExecutor(max_workers=workers, initializer=_init_worker) as pool:
            records = list(pool.map(
                bench_instance, paths, [options] * len(paths), [algorithm] * len(paths),
            ))
    else:
        records = [bench_instance(path, options, algorithm) for path in paths]
    logger.info(f'Benchmark: {len(records)} instancias con {workers} worker(s)')
    return records


def write_csv(records: Sequence[Dict], path) -> None:
    with open(path, 'w', newline='', encoding='utf-8') as handle:
        writer = csv.DictWriter(handle, fieldnames=BENCH_COLUMNS)
        writer.writeheader()
        for record in records:
            row = dict(record)
            row['antichain_counts'] = json.dumps(row['antichain_counts'] or {}, sort_keys=True)
            writer.writerow(row)


def store_records(records: Sequence[Dict]) -> int:
    """Persiste las filas como BenchRecord; devuelve cuántas se guardaron"""
    from .models import BenchRecord

    created = BenchRecord.objects.bulk_create([
        BenchRecord.from_record({**record, 'antichain_counts': record['antichain_counts'] or {}})
        for record in records
    ])
    return len(created)


def summarize(records: Sequence[Dict]) -> Dict[str, Optional[int]]:
    return {
        'instances': len(records),
        'feasible': sum(1 for record in records if record['feasible']),
        'infeasible': sum(1 for record in records if record['feasible'] is False),
        'errors': sum(1 for record in records if record['status'] != 'ok'),
    }
