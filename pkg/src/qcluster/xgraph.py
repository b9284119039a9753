"""Exchange-graph enumeration of finite-type quantum seeds."""
from __future__ import annotations

import time
from collections import Counter, deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Set, Tuple

from .seeds import MutationCache, QSeed, check_compat, mutate_seed, seed_cluster_key
from .qarith import TorusElem

DEFAULT_BUDGET = 50_000


@dataclass
class ExchangeGraph:
    nodes: Dict[bytes, QSeed] = field(default_factory=dict)
    edges: Set[Tuple[bytes, bytes, int]] = field(default_factory=set)
    variables: Dict[bytes, TorusElem] = field(default_factory=dict)
    complete: bool = True
    root: Optional[bytes] = None
    runtime_ms: float = 0.0
    diagonal: Optional[List[int]] = None
    # node -> (node it was discovered from, mutated position), in BFS order
    parent: Dict[bytes, Tuple[bytes, int]] = field(default_factory=dict)

    def degree(self) -> Counter:
        deg: Counter = Counter()
        for a, b, _ in self.edges:
            deg[a] += 1
            deg[b] += 1
        return deg

    def is_regular(self, m: int) -> bool:
        deg = self.degree()
        return len(deg) == len(self.nodes) and all(d == m for d in deg.values())

    def report(self, type_name: Optional[str] = None) -> dict:
        return {
            "nodes": len(self.nodes),
            "edges": len(self.edges),
            "mutable_variables": len(self.variables),
            "type": type_name,
            "complete": self.complete,
            "runtime_ms": round(self.runtime_ms, 1),
        }


class NodeBudgetExceeded(RuntimeError):
    def __init__(self, graph: ExchangeGraph):
        super().__init__(f"exchange graph exceeds {len(graph.nodes)} nodes")
        self.graph = graph


def enumerate_graph(
    seed: QSeed,
    max_nodes: int = DEFAULT_BUDGET,
    cache: Optional[MutationCache] = None,
    workers: int = 1,
    check: bool = True,
    on_seed: Optional[Callable[[QSeed], None]] = None,
    batch: int = 256,
) -> ExchangeGraph:
    """Breadth-first closure of ``seed`` under mutation in every mutable direction.

    Clusters are deduplicated by :func:`seed_cluster_key`.  ``check`` runs
    :func:`check_compat` on every mutated seed and requires the diagonal to
    stay the same.  The frontier is processed in batches whose results are
    merged in frontier order, so the graph does not depend on ``workers``.
    """
    t0 = time.perf_counter()
    cache = cache or MutationCache(seed.frame)
    diag = check_compat(seed)
    g = ExchangeGraph(diagonal=diag)
    root = seed_cluster_key(seed)
    g.root = root
    g.nodes[root] = seed
    for i in seed.mutable:
        g.variables.setdefault(seed.vars[i].canonical_key(), seed.vars[i])
    if on_seed:
        on_seed(seed)
    frontier = deque([root])
    edge_dir: Dict[Tuple[bytes, bytes], int] = {}
    pool = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None

    def expand(key: bytes):
        s = g.nodes[key]
        out = []
        for k in s.mutable:
            t = mutate_seed(s, k, cache)
            if check and check_compat(t) != diag:
                raise AssertionError(f"compatibility diagonal changed after mutating at {k}")
            out.append((k, t, seed_cluster_key(t)))
        return out

    try:
        while frontier:
            chunk = [frontier.popleft() for _ in range(min(batch, len(frontier)))]
            results = list(pool.map(expand, chunk)) if pool else [expand(c) for c in chunk]
            for key, res in zip(chunk, results):
                for k, t, tkey in res:
                    if tkey not in g.nodes:
                        if len(g.nodes) >= max_nodes:
                            g.complete = False
                            g.runtime_ms = (time.perf_counter() - t0) * 1000
                            raise NodeBudgetExceeded(g)
                        g.nodes[tkey] = t
                        g.parent[tkey] = (key, k)
                        frontier.append(tkey)
                        v = t.vars[k]
                        g.variables.setdefault(v.canonical_key(), v)
                        if on_seed:
                            on_seed(t)
                    pair = (key, tkey) if key < tkey else (tkey, key)
                    edge_dir.setdefault(pair, k)
    finally:
        if pool:
            pool.shutdown()
        # direction is the mutated position in the seed that first found the edge
        g.edges = {(a, b, k) for (a, b), k in edge_dir.items()}
    g.runtime_ms = (time.perf_counter() - t0) * 1000
    return g


enumerate = enumerate_graph


def census(g: ExchangeGraph) -> dict:
    """Cluster count, distinct mutable variables and per-variable multiplicity."""
    if not g.complete:
        raise ValueError("census needs a complete enumeration")
    mult: Counter = Counter()
    for s in g.nodes.values():
        for i in s.mutable:
            mult[s.vars[i].canonical_key()] += 1
    return {
        "num_clusters": len(g.nodes),
        "num_mutable_variables": len(mult),
        "multiplicity": dict(mult),
    }
