"""
Corpus aleatorios con semilla y fixtures con nombre (diamante, cadena, árbol).

El corpus recorre cíclicamente las 40 formas de la tabla de complejidad para
que todas las filas queden cubiertas con instancias pequeñas.
"""
import logging
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

import numpy as np

from scheduling.classifier import TABLE_ROWS
from scheduling.core import Instance, Job, MachineEnv, MachineModel, dump_instance

logger = logging.getLogger(__name__)

CORPUS_SETTINGS = {
    'MAX_N': 9,
    'MAX_M': 2,
    'MAX_K': 4,
    'MAX_P': 4,
    'EDGE_PROBABILITY': 0.3,
    'RELEASE_SPREAD': 4,
    'DEADLINE_SLACK': 6,
}


def _environment(m: int, unrelated: bool) -> MachineEnv:
    if m == 1:
        return MachineEnv.single()
    if unrelated:
        return MachineEnv.unrelated(m)
    return MachineEnv.identical(m)


def random_dag(rng: np.random.Generator, n: int, edge_probability: float) -> List[Tuple[int, int]]:
    """Arcos (u, v) con u < v en un orden aleatorio de los nodos"""
    order = rng.permutation(n).tolist()
    edges = []
    for position, u in enumerate(order):
        for v in order[position + 1:]:
            if rng.uniform() < edge_probability:
                edges.append((u, v))
    return edges


def random_instance(rng: np.random.Generator, n: int, m: int = 1, k: Optional[int] = None,
                    release: bool = False, deadline: bool = False, prec: bool = False,
                    unit: bool = False, unrelated: bool = False,
                    max_p: int = CORPUS_SETTINGS['MAX_P'],
                    edge_probability: float = CORPUS_SETTINGS['EDGE_PROBABILITY']) -> Instance:
    """
    Instancia aleatoria cuyos flags derivados coinciden con los pedidos
    (siempre que n y m lo permitan).
    """
    unrelated = unrelated and not unit and m > 1
    width = m if unrelated else 1

    proc = []
    for _ in range(n):
        if unit:
            proc.append((1,) * width)
        else:
            proc.append(tuple(int(value) for value in rng.integers(1, max_p + 1, size=width)))
    if not unit and n and all(value == 1 for times in proc for value in times):
        proc[0] = (2,) * width

    releases = [0] * n
    if release and n:
        releases = [int(value) for value in rng.integers(0, CORPUS_SETTINGS['RELEASE_SPREAD'] + 1, size=n)]
        if not any(releases):
            releases[int(rng.integers(n))] = 1

    deadlines: List[Optional[int]] = [None] * n
    if deadline and n:
        for index in range(n):
            if rng.uniform() < 0.8:
                slack = int(rng.integers(0, CORPUS_SETTINGS['DEADLINE_SLACK'] + 1))
                deadlines[index] = releases[index] + min(proc[index]) + slack
        if all(value is None for value in deadlines):
            deadlines[0] = releases[0] + min(proc[0]) + CORPUS_SETTINGS['DEADLINE_SLACK']

    edges = random_dag(rng, n, edge_probability) if prec else []
    if prec and not edges and n >= 2:
        edges = [(0, 1)]

    if k is None:
        k = int(rng.integers(1, min(CORPUS_SETTINGS['MAX_K'], n) + 1)) if n else 0

    jobs = tuple(
        Job(id=f'j{index}', proc=proc[index], release=releases[index], deadline=deadlines[index])
        for index in range(n)
    )
    return Instance(
        machines=_environment(m, unrelated),
        jobs=jobs,
        prec=tuple((f'j{u}', f'j{v}') for u, v in edges),
        k=k,
    )


def corpus(seed: int = 0, count: int = 500, max_n: int = CORPUS_SETTINGS['MAX_N'],
           max_m: int = CORPUS_SETTINGS['MAX_M'], max_k: int = CORPUS_SETTINGS['MAX_K']) -> List[Instance]:
    """`count` instancias con n <= max_n, m <= max_m y k <= max_k, fila a fila"""
    rng = np.random.default_rng(seed)
    instances = []
    for position in range(count):
        flags = TABLE_ROWS[position % len(TABLE_ROWS)].flags
        m = 1 if flags.env == MachineModel.SINGLE else max(2, max_m)
        n = int(rng.integers(2, max_n + 1))
        k = int(rng.integers(1, min(max_k, n) + 1))
        instances.append(random_instance(
            rng, n, m=m, k=k,
            release=flags.has_release,
            deadline=flags.has_deadline,
            prec=flags.has_prec,
            unit=flags.unit_p,
            unrelated=flags.env == MachineModel.UNRELATED,
        ))
    logger.debug(f'Corpus seed={seed}: {len(instances)} instancias')
    return instances


# ===== FIXTURES =====

def _fixture(ids: Sequence[str], prec, m: int, k: int, releases=None) -> Instance:
    releases = releases or {}
    env = MachineEnv.single() if m == 1 else MachineEnv.identical(m)
    jobs = tuple(Job(id=job_id, proc=(1,), release=releases.get(job_id, 0)) for job_id in ids)
    return Instance(env, jobs, tuple(prec), k=k)


def ternary_tree(m: int = 1, k: int = 2, release: int = 0) -> Instance:
    """
    Árbol ternario de 13 nodos: raíz r, hijos c1..c3 y nietos g11..g33.

    Con `release` > 0 el nieto g33 recibe ese release (fixture de P|r_j,prec,p_j=1).
    """
    ids = ['r'] + [f'c{child}' for child in range(1, 4)]
    prec = [('r', f'c{child}') for child in range(1, 4)]
    for child in range(1, 4):
        for grandchild in range(1, 4):
            ids.append(f'g{child}{grandchild}')
            prec.append((f'c{child}', f'g{child}{grandchild}'))
    return _fixture(ids, prec, m, k, {'g33': release} if release else None)


def diamond(m: int = 1, k: int = 4) -> Instance:
    return _fixture('abcd', [('a', 'b'), ('a', 'c'), ('b', 'd'), ('c', 'd')], m, k)


def chain(length: int, m: int = 1, k: Optional[int] = None) -> Instance:
    ids = [f'j{i}' for i in range(1, length + 1)]
    return _fixture(ids, list(zip(ids, ids[1:])), m, length if k is None else k)


def write_corpus(directory, instances: Sequence[Instance], prefix: str = 'inst') -> List[Path]:
    """Un JSON de instancia por archivo; devuelve las rutas en orden"""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for position, inst in enumerate(instances):
        path = directory / f'{prefix}_{position:04d}.json'
        dump_instance(inst, path)
        paths.append(path)
    logger.info(f'{len(paths)} instancias escritas en {directory}')
    return paths
