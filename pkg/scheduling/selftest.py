"""
Comprobaciones cruzadas entre solvers sobre el corpus incorporado.

Cada comprobación devuelve un CheckResult; `selftest` termina con éxito solo
si todas pasan.
"""
import itertools
import logging
from dataclasses import dataclass, field
from typing import Callable, List, Optional

import numpy as np

from .antichain_dp import DpMode, minimize_makespan
from .classifier import Algorithm, SolveOptions, TABLE_ROWS, dispatch
from .colorcode import subset_convolution
from .core import check_schedule, variant_flags
from .exceptions import SchedulingError
from .oracle import brute_force
from .polysolvers import moore_max_ontime
from .poset import PrecedenceGraph, depth, enumerate_antichains, mask_of

logger = logging.getLogger(__name__)

# con k <= 4 la probabilidad de no ver una coloración perfecta es < 1e-12
SELFTEST_TRIALS = 300


@dataclass(frozen=True)
class SelftestSizes:
    """Tamaños de cada comprobación"""
    corpus: int
    convolutions: int
    max_k: int
    moore_inputs: int
    moore_n: int


QUICK = SelftestSizes(corpus=120, convolutions=200, max_k=8, moore_inputs=30, moore_n=8)
FULL = SelftestSizes(corpus=520, convolutions=1000, max_k=10, moore_inputs=100, moore_n=10)


@dataclass
class CheckResult:
    name: str
    checked: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def check_oracle_equivalence(instances, seed: int = 0) -> CheckResult:
    result = CheckResult('oracle equivalence')
    options = SolveOptions(trials=SELFTEST_TRIALS, seed=seed)
    for position, inst in enumerate(instances):
        expected = brute_force(inst)
        outcome = dispatch(inst, options)
        result.checked += 1
        got = outcome.makespan
        want = expected[0] if expected else None
        if got != want:
            result.failures.append(
                f'#{position} row {outcome.row.row_id} {outcome.algorithm.value}: {got} != oracle {want}'
            )
        elif outcome.schedule is not None and not check_schedule(inst, outcome.schedule).feasible:
            result.failures.append(f'#{position}: schedule rejected by the checker')
    return result


def _makespan(found):
    return found[0] if found is not None else None


def check_dp_modes(instances) -> CheckResult:
    result = CheckResult('antichain DP modes agree')
    dp_rows = {row.flags.key for row in TABLE_ROWS if row.algorithm == Algorithm.ANTICHAIN_DP}
    for position, inst in enumerate(instances):
        if variant_flags(inst).key not in dp_rows:
            continue
        result.checked += 1
        faithful = minimize_makespan(inst, DpMode.FAITHFUL)
        lazy = minimize_makespan(inst, DpMode.LAZY)
        if _makespan(faithful) != _makespan(lazy):
            result.failures.append(f'#{position}: faithful {_makespan(faithful)} != lazy {_makespan(lazy)}')
    return result


def check_subset_convolution(seed: int = 0, count: int = 200, max_k: int = 8) -> CheckResult:
    result = CheckResult('fast subset convolution equals naive')
    rng = np.random.default_rng(seed)
    for position in range(count):
        k = int(rng.integers(0, max_k + 1))
        f = (rng.uniform(size=1 << k) < 0.3).astype(np.int64)
        g = (rng.uniform(size=1 << k) < 0.3).astype(np.int64)
        result.checked += 1
        if not np.array_equal(subset_convolution(f, g, 'fast'), subset_convolution(f, g, 'naive')):
            result.failures.append(f'table pair #{position} (k={k})')
    return result


def _best_ontime(items) -> int:
    for size in range(len(items), 0, -1):
        for subset in itertools.combinations(range(len(items)), size):
            ordered = sorted(subset, key=lambda i: (items[i][1] is None, items[i][1] or 0))
            time, ok = 0, True
            for index in ordered:
                time += items[index][0]
                if items[index][1] is not None and time > items[index][1]:
                    ok = False
                    break
            if ok:
                return size
    return 0


def check_moore(seed: int = 0, count: int = 30, n: int = 8) -> CheckResult:
    result = CheckResult('Moore-Hodgson equals exhaustive')
    rng = np.random.default_rng(seed)
    for position in range(count):
        items = [(int(rng.integers(1, 10)), int(rng.integers(1, 30))) for _ in range(n)]
        result.checked += 1
        got, want = len(moore_max_ontime(items)), _best_ontime(items)
        if got != want:
            result.failures.append(f'input #{position}: {got} != {want}')
    return result


def check_fixtures() -> CheckResult:
    from generators.corpus import ternary_tree

    result = CheckResult('tree fixture')
    inst = ternary_tree(m=1, k=2)
    graph = PrecedenceGraph.from_instance(inst)
    horizon = max(graph.rho)
    expectations = [
        ('depth({c1})', depth(graph, horizon, mask_of(inst, ['c1'])), 4),
        ('depth({})', depth(graph, horizon, 0), 1),
        ('depth({r})', depth(graph, horizon, mask_of(inst, ['r'])), 1),
        ('antichains k=2', enumerate_antichains(graph, horizon, 2), [0, mask_of(inst, ['r'])]),
        ('makespan m=1 k=2', minimize_makespan(inst)[0], 2),
    ]
    for name, got, want in expectations:
        result.checked += 1
        if got != want:
            result.failures.append(f'{name}: {got} != {want}')
    return result


def check_reductions() -> CheckResult:
    from generators.reductions import (
        SourceGraph, certify_3coloring, certify_clique, decode_3coloring, gen_clique,
    )

    result = CheckResult('reduction certificates')
    triangle = SourceGraph(('a', 'b', 'c'), (('a', 'b'), ('b', 'c'), ('a', 'c')))
    coloring = {'a': 1, 'b': 2, 'c': 3}
    result.checked += 1
    if decode_3coloring(triangle, certify_3coloring(triangle, coloring)) != coloring:
        result.failures.append('3-coloring round trip on K3')

    result.checked += 1
    try:
        certify_clique(triangle, 3, ['a', 'b', 'c'])
    except SchedulingError as e:
        result.failures.append(f'clique certificate on K3: {e}')

    path = SourceGraph(('a', 'b', 'c'), (('a', 'b'), ('b', 'c')))
    for graph, feasible in ((triangle, True), (path, False)):
        result.checked += 1
        inst = gen_clique(graph, 3)
        if (brute_force(inst, cmax=inst.cmax) is not None) != feasible:
            result.failures.append(f'clique q=3 on {len(graph.edges)} edges: expected feasible={feasible}')
    return result


def run_selftest(seed: int = 0, count: Optional[int] = None,
                 progress: Optional[Callable[[CheckResult], None]] = None,
                 sizes: SelftestSizes = QUICK) -> List[CheckResult]:
    """`count` sustituye el tamaño del corpus de `sizes`"""
    from generators.corpus import corpus

    instances = corpus(seed=seed, count=sizes.corpus if count is None else count)
    checks = [
        lambda: check_oracle_equivalence(instances, seed),
        lambda: check_dp_modes(instances),
        lambda: check_subset_convolution(seed, sizes.convolutions, sizes.max_k),
        lambda: check_moore(seed, sizes.moore_inputs, sizes.moore_n),
        check_fixtures,
        check_reductions,
    ]
    results = []
    for check in checks:
        outcome = check()
        logger.info(f'Selftest {outcome.name}: {outcome.checked} casos, {len(outcome.failures)} fallos')
        results.append(outcome)
        if progress is not None:
            progress(outcome)
    return results
