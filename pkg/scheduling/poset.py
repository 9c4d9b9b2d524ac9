"""
Orden parcial de precedencias con alcanzabilidad en bitsets enteros.

Los conjuntos de nodos se representan como máscaras `int` sobre los índices
de trabajo. Los subgrafos (G^t, G - S) comparten las tablas del grafo completo
y solo cambian la máscara de nodos activos: la relación heredada coincide con
la del subgrafo inducido porque solo se eliminan conjuntos convexos
(conjuntos superiores, conjuntos inferiores o elementos minimales).
"""
from typing import Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from .core import Instance, validate_instance
from .exceptions import InvalidInstanceError, NotAnAntichainError

NodeSet = int


def bit(index: int) -> NodeSet:
    return 1 << index


def iter_bits(mask: NodeSet) -> Iterator[int]:
    """Índices presentes en la máscara, en orden creciente"""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def submasks(mask: NodeSet) -> Iterator[NodeSet]:
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def antichain_key(mask: NodeSet) -> Tuple[int, ...]:
    """Clave canónica: índices ordenados"""
    return tuple(iter_bits(mask))


class PrecedenceGraph:
    """
    DAG de precedencias con cierre transitivo en bitsets.

    `down[x]` contiene x y todos sus predecesores; `up[x]` contiene x y todos
    sus sucesores. `rho[x]` es el primer slot unitario en que x puede
    completarse: max(r_x + 1, rho de cada predecesor + 1).
    """

    def __init__(self, n, edges, releases, active=None, _tables=None):
        self.n = n
        if _tables is None:
            _tables = self._build(n, edges, releases)
        self._tables = _tables
        self.parents, self.children, self.down, self.up, self.rho = _tables
        self.active = (1 << n) - 1 if active is None else active

    @classmethod
    def from_instance(cls, inst: Instance) -> 'PrecedenceGraph':
        return cls(inst.n, inst.prec_indices, [job.release for job in inst.jobs])

    @staticmethod
    def _build(n, edges, releases):
        graph = nx.DiGraph()
        graph.add_nodes_from(range(n))
        graph.add_edges_from(edges)
        order = list(nx.topological_sort(graph))

        parents = [0] * n
        children = [0] * n
        for u, v in edges:
            parents[v] |= bit(u)
            children[u] |= bit(v)

        down = [0] * n
        rho = [0] * n
        for node in order:
            reach = bit(node)
            earliest = releases[node] + 1
            for parent in iter_bits(parents[node]):
                reach |= down[parent]
                earliest = max(earliest, rho[parent] + 1)
            down[node] = reach
            rho[node] = earliest

        up = [0] * n
        for node in reversed(order):
            reach = bit(node)
            for child in iter_bits(children[node]):
                reach |= up[child]
            up[node] = reach

        return parents, children, down, up, rho

    def _with_active(self, active: NodeSet) -> 'PrecedenceGraph':
        return PrecedenceGraph(self.n, None, None, active=active, _tables=self._tables)

    def restrict_to_time(self, t: int) -> 'PrecedenceGraph':
        """G^t: trabajos activos que pueden completarse en el slot t o antes"""
        allowed = 0
        for node in iter_bits(self.active):
            if self.rho[node] <= t:
                allowed |= bit(node)
        return self._with_active(allowed)

    def without(self, mask: NodeSet) -> 'PrecedenceGraph':
        return self._with_active(self.active & ~mask)

    def pred_set(self, mask: NodeSet) -> NodeSet:
        """Cierre hacia abajo de A (incluye A)"""
        result = 0
        for node in iter_bits(mask):
            result |= self.down[node]
        return result & self.active

    def succ_set(self, mask: NodeSet) -> NodeSet:
        result = 0
        for node in iter_bits(mask):
            result |= self.up[node]
        return result & self.active

    def comp_set(self, mask: NodeSet) -> NodeSet:
        """Nodos comparables con algún elemento de A (incluye A)"""
        return self.pred_set(mask) | self.succ_set(mask)

    def minimal(self, mask: Optional[NodeSet] = None) -> NodeSet:
        mask = self.active if mask is None else mask & self.active
        result = 0
        for node in iter_bits(mask):
            if self.down[node] & mask == bit(node):
                result |= bit(node)
        return result

    def maximal(self, mask: Optional[NodeSet] = None) -> NodeSet:
        mask = self.active if mask is None else mask & self.active
        result = 0
        for node in iter_bits(mask):
            if self.up[node] & mask == bit(node):
                result |= bit(node)
        return result

    def is_antichain(self, mask: NodeSet) -> bool:
        for node in iter_bits(mask):
            if (self.down[node] | self.up[node]) & mask != bit(node):
                return False
        return True

    def depth_of(self, mask: NodeSet) -> int:
        """|pred(A)| + |min(G - comp(A))| sobre los nodos activos"""
        free = self.active & ~self.comp_set(mask)
        return self.pred_set(mask).bit_count() + self.minimal(free).bit_count()


# ===== Operaciones del módulo =====

def build_poset(inst: Instance) -> PrecedenceGraph:
    """PrecedenceGraph de una instancia válida; rechaza ciclos y aristas sueltas"""
    report = validate_instance(inst)
    if not report.ok:
        raise InvalidInstanceError(report)
    return PrecedenceGraph.from_instance(inst)


def minimals(graph: PrecedenceGraph, mask: NodeSet) -> NodeSet:
    return graph.minimal(mask)


def maximals(graph: PrecedenceGraph, mask: NodeSet) -> NodeSet:
    return graph.maximal(mask)


def restrict_to_time(graph: PrecedenceGraph, t: int) -> PrecedenceGraph:
    return graph.restrict_to_time(t)


def pred_set(graph: PrecedenceGraph, mask: NodeSet) -> NodeSet:
    return graph.pred_set(mask)


def comp_set(graph: PrecedenceGraph, mask: NodeSet) -> NodeSet:
    return graph.comp_set(mask)


def depth(graph: PrecedenceGraph, t: int, mask: NodeSet) -> int:
    """Profundidad d^t(A); A debe ser anticadena contenida en G^t"""
    graph_t = graph.restrict_to_time(t)
    if mask & ~graph_t.active:
        raise NotAnAntichainError(f'set {antichain_key(mask)} is not contained in G^{t}')
    if not graph_t.is_antichain(mask):
        raise NotAnAntichainError(f'set {antichain_key(mask)} is not an antichain')
    return graph_t.depth_of(mask)


def _max_antichains(graph: PrecedenceGraph, nodes: NodeSet, budget: int) -> Iterator[NodeSet]:
    if nodes == 0:
        yield 0
        return

    minimals = list(iter_bits(graph.minimal(nodes)))
    if len(minimals) <= budget:
        yield sum(bit(node) for node in minimals)

    kept = 0
    removed = 0
    for position, node in enumerate(minimals, start=1):
        if position > budget:
            break
        rest = nodes & ~removed & ~bit(node)
        for sub in _max_antichains(graph, rest, budget - position):
            # node debe quedar debajo de la anticadena para que la unión sea maximal
            if graph.up[node] & sub:
                yield sub | kept
        kept |= bit(node)
        removed |= graph.up[node] & nodes


def enumerate_max_antichains(graph: PrecedenceGraph, k: int) -> List[NodeSet]:
    """Anticadenas maximales de profundidad <= k, en orden canónico"""
    if k < 0:
        return []
    found = set(_max_antichains(graph, graph.active, k))
    return sorted(found, key=antichain_key)


def enumerate_antichains(graph: PrecedenceGraph, t: int, k: int) -> List[NodeSet]:
    """Todas las anticadenas de G^t con d^t <= k, sin duplicados"""
    graph_t = graph.restrict_to_time(t)
    result = set()
    for maximal_mask in enumerate_max_antichains(graph_t, k):
        for sub in submasks(maximal_mask):
            if sub not in result and graph_t.depth_of(sub) <= k:
                result.add(sub)
    return sorted(result, key=antichain_key)


def mask_of(inst: Instance, job_ids: Sequence[str]) -> NodeSet:
    mask = 0
    for job_id in job_ids:
        mask |= bit(inst.index[job_id])
    return mask


def ids_of(inst: Instance, mask: NodeSet) -> List[str]:
    return [inst.jobs[node].id for node in iter_bits(mask)]
