"""Identification of enumerated cluster variables with named elements.

Two certificates are available for "torus element ``t`` equals candidate ``c``":

* ``phi``: :func:`verify_cluster_variable`, which clears denominators and
  compares images in K_q[M(k, n)];
* ``exchange``: if ``t`` arose by mutating seed ``P`` at ``k`` and every
  variable of ``P`` is already identified, then ``t = c`` iff
  ``img(P_k) c`` equals the image of the exchange numerator.  K_q[M(k, n)]
  is a domain, so this is an exact test of equality in the skew field.

Candidates are first filtered by their value at ``q = 1`` on a random
integer matrix, a necessary condition for equality.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .catalog import CatalogEntry, Candidate
from .qarith import TorusElem
from .qmatrix import QMatElem, _PowerCache, qm_mul, qm_prod, verify_cluster_variable
from .quivers import classify_finite_type
from .seeds import MutationCache, QSeed, mutate_seed
from .xgraph import ExchangeGraph, NodeBudgetExceeded, census, enumerate_graph


@dataclass
class VerificationReport:
    name: str
    clusters: int = 0
    edges: int = 0
    variables: int = 0
    identified: Dict[str, str] = field(default_factory=dict)
    unidentified: List[str] = field(default_factory=list)
    failures: List[str] = field(default_factory=list)
    runtime_ms: float = 0.0
    type: Optional[str] = None
    method: str = ""

    @property
    def passed(self) -> bool:
        return not self.failures and not self.unidentified

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "clusters": self.clusters,
            "edges": self.edges,
            "variables": self.variables,
            "type": self.type,
            "method": self.method,
            "identified": dict(sorted(self.identified.items())),
            "unidentified": list(self.unidentified),
            "failures": list(self.failures),
            "passed": self.passed,
            "runtime_ms": round(self.runtime_ms, 1),
        }


# ---------------------------------------------------------------------------
# q = 1 evaluation
# ---------------------------------------------------------------------------

def random_matrix(ambient: Tuple[int, int], seed: int = 0, bound: int = 10**6) -> List[List[int]]:
    rng = random.Random(seed)
    k, n = ambient
    return [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(k)]


def torus_at_point(t: TorusElem, point: Sequence[Fraction]) -> Fraction:
    """Value at ``q = 1`` with initial variable ``i`` set to ``point[i]``."""
    total = Fraction(0)
    for e, c in t.at_q_one().items():
        term = Fraction(c)
        for x, a in zip(point, e):
            if a:
                term *= x ** a
        total += term
    return total


class Fingerprints:
    """Values at ``q = 1`` of candidates and torus elements at one random matrix."""

    def __init__(self, entry: CatalogEntry, seed: int = 0):
        for attempt in range(100):
            self.matrix = random_matrix(entry.ambient, seed + attempt)
            self.point = [Fraction(g.at_q_one(self.matrix)) for g in entry.assignment]
            if all(self.point):
                break
        else:  # pragma: no cover
            raise RuntimeError("could not find a point with nonzero initial values")
        self._torus: Dict[bytes, Fraction] = {}
        self._cand: Dict[str, Fraction] = {}

    def torus(self, t: TorusElem) -> Fraction:
        key = t.canonical_key()
        v = self._torus.get(key)
        if v is None:
            v = self._torus[key] = torus_at_point(t, self.point)
        return v

    def candidate(self, c: Candidate) -> Fraction:
        v = self._cand.get(c.name)
        if v is None:
            v = self._cand[c.name] = Fraction(c.value.at_q_one(self.matrix))
        return v


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------

def exchange_images(seed: QSeed, k: int, images: Sequence[QMatElem]) -> Tuple[QMatElem, QMatElem]:
    """Images of ``Y_k`` and of the exchange numerator ``Y_k X'_k``.

    ``images[i]`` is the image of ``seed.vars[i]``.  The numerator is
    ``sum_{a = a+, a-} v^{(L a)_k + N(a)} img_1^{a_1} ... img_r^{a_r}`` with ``N``
    the normalization exponent of the current ``L``.
    """
    col = seed.B[:, seed.column(k)]
    L = seed.L
    amb = images[0].ambient
    rhs = QMatElem._raw(amb, {})
    for a in (np.where(col > 0, col, 0), np.where(col < 0, -col, 0)):
        idx = [i for i in range(seed.r) if a[i]]
        norm = sum(int(a[i]) * int(a[j]) * int(L[j, i]) for p, i in enumerate(idx) for j in idx[p + 1:])
        shift = int(L[k] @ a) + norm
        factors = [images[i] for i in idx for _ in range(int(a[i]))]
        rhs = rhs + qm_prod(factors, amb).shift(shift)
    return images[k], rhs


def certify_exchange(seed: QSeed, k: int, images: Sequence[QMatElem], candidate: QMatElem) -> bool:
    yk, rhs = exchange_images(seed, k, images)
    return qm_mul(yk, candidate) == rhs


# ---------------------------------------------------------------------------
# pipeline
# ---------------------------------------------------------------------------

def default_method(entry: CatalogEntry) -> str:
    return "exchange" if entry.name in ("gr3:7", "gr3:8") else "phi"


def identify_graph(
    entry: CatalogEntry,
    g: ExchangeGraph,
    method: Optional[str] = None,
    fp: Optional[Fingerprints] = None,
    report: Optional[VerificationReport] = None,
) -> VerificationReport:
    """Name every mutable variable of a complete graph; see the module docstring."""
    method = method or default_method(entry)
    fp = fp or Fingerprints(entry)
    rep = report or VerificationReport(entry.name)
    rep.method = method
    cands: List[Candidate] = entry.expected["candidates"]
    by_value: Dict[Fraction, List[Candidate]] = {}
    for c in cands:
        by_value.setdefault(fp.candidate(c), []).append(c)
    for val, group in by_value.items():
        if len(group) > 1:
            rep.failures.append("candidates share a q=1 value: " + ", ".join(c.name for c in group))

    seed0 = entry.seed
    images: Dict[bytes, QMatElem] = {}
    names: Dict[bytes, str] = {}
    for i, v in enumerate(seed0.vars):
        images[v.canonical_key()] = entry.assignment[i]
        names[v.canonical_key()] = seed0.labels[i]
    power = _PowerCache(entry.assignment) if method == "phi" else None
    hit: Dict[str, bytes] = {}

    def attempt(t: TorusElem, parent: Optional[QSeed], k: Optional[int]) -> Optional[Candidate]:
        for c in by_value.get(fp.torus(t), []):
            if method == "phi" or parent is None:
                ok = verify_cluster_variable(t, c.value, entry.assignment, checked=True, cache=power)
            else:
                imgs = [images.get(v.canonical_key()) for v in parent.vars]
                if any(x is None for x in imgs):
                    ok = verify_cluster_variable(t, c.value, entry.assignment, checked=True)
                else:
                    ok = certify_exchange(parent, k, imgs, c.value)
            if ok:
                return c
        return None

    def record(key: bytes, c: Optional[Candidate]):
        if c is None:
            rep.unidentified.append(key.decode())
            return
        images[key] = c.value
        names[key] = c.name
        rep.identified[key.decode()] = c.name
        if c.name in hit:
            rep.failures.append(f"{c.name} matched twice")
        hit[c.name] = key

    for i in seed0.mutable:
        key = seed0.vars[i].canonical_key()
        c = attempt(seed0.vars[i], None, None)
        record(key, c)
    for node, (pkey, k) in g.parent.items():
        t = g.nodes[node].vars[k]
        key = t.canonical_key()
        if key in names or key.decode() in rep.unidentified:
            continue
        record(key, attempt(t, g.nodes[pkey], k))
    missing = [c.name for c in cands if c.name not in hit]
    if missing:
        rep.failures.append("candidates never hit: " + ", ".join(missing))
    rep.names = names  # type: ignore[attr-defined]
    return rep


def verify_entry(entry: CatalogEntry, budget: int = 50_000, method: Optional[str] = None, workers: int = 1) -> VerificationReport:
    """Enumerate, identify every mutable variable and compare with the expected census."""
    t0 = time.perf_counter()
    rep = VerificationReport(entry.name)
    exp = entry.expected
    rep.type = classify_finite_type(entry.seed.B, entry.seed.mutable)
    if rep.type != exp.get("type"):
        rep.failures.append(f"type {rep.type}, expected {exp.get('type')}")
    cache = MutationCache(entry.seed.frame)
    try:
        g = enumerate_graph(entry.seed, max_nodes=budget, cache=cache, workers=workers)
    except NodeBudgetExceeded as exc:
        rep.clusters = len(exc.graph.nodes)
        rep.failures.append(f"node budget {budget} exceeded")
        rep.runtime_ms = (time.perf_counter() - t0) * 1000
        return rep
    cen = census(g)
    rep.clusters, rep.edges, rep.variables = cen["num_clusters"], len(g.edges), cen["num_mutable_variables"]
    if rep.variables != exp["mutable"]:
        rep.failures.append(f"{rep.variables} mutable variables, expected {exp['mutable']}")
    if rep.clusters != exp["clusters"]:
        rep.failures.append(f"{rep.clusters} clusters, expected {exp['clusters']}")
    if not g.is_regular(len(entry.seed.mutable)):
        rep.failures.append("exchange graph is not regular")
    identify_graph(entry, g, method=method, report=rep)
    rep.runtime_ms = (time.perf_counter() - t0) * 1000
    return rep


# ---------------------------------------------------------------------------
# commutative oracle
# ---------------------------------------------------------------------------

def _classical_mutate_B(B: List[List[int]], k: int, kc: int) -> List[List[int]]:
    r, m = len(B), len(B[0])
    out = [row[:] for row in B]
    for i in range(r):
        for j in range(m):
            if i == k or j == kc:
                out[i][j] = -B[i][j]
            else:
                a, b = B[i][kc], B[k][j]
                out[i][j] = B[i][j] + (abs(a) * b + a * abs(b)) // 2
    return out


@dataclass
class ClassicalGraph:
    nodes: Dict[tuple, Tuple[Fraction, ...]]
    edges: int
    variables: set


def commutative_oracle(entry: CatalogEntry, seed: int = 1, max_nodes: int = 100_000) -> ClassicalGraph:
    """Classical (``q = 1``) exchange graph by evaluation at a random positive point.

    Cluster variables are represented by their exact rational values at
    random positive integers for the initial cluster; the classical
    exchange relation ``x_k x'_k = prod x_i^{[b_ik]+} + prod x_i^{[-b_ik]+}``
    is applied directly.  Positivity of the Laurent expansions keeps every
    value nonzero.
    """
    s0 = entry.seed
    rng = random.Random(seed)
    x0 = tuple(Fraction(rng.randint(2, 10**6)) for _ in range(s0.r))
    mut = list(s0.mutable)
    B0 = [[int(x) for x in row] for row in s0.B]

    def key(x):
        return tuple(sorted(x[i] for i in mut))

    nodes = {key(x0): x0}
    state = {key(x0): B0}
    frontier = [key(x0)]
    edges = set()
    variables = {x0[i] for i in mut}
    while frontier:
        nxt = []
        for kk in frontier:
            x, B = nodes[kk], state[kk]
            for kc, k in enumerate(mut):
                plus = Fraction(1)
                minus = Fraction(1)
                for i in range(s0.r):
                    b = B[i][kc]
                    if b > 0:
                        plus *= x[i] ** b
                    elif b < 0:
                        minus *= x[i] ** (-b)
                y = list(x)
                y[k] = (plus + minus) / x[k]
                y = tuple(y)
                ky = key(y)
                edges.add(frozenset((kk, ky)))
                if ky not in nodes:
                    if len(nodes) >= max_nodes:
                        raise RuntimeError("classical node budget exceeded")
                    nodes[ky] = y
                    state[ky] = _classical_mutate_B(B, k, kc)
                    variables.add(y[k])
                    nxt.append(ky)
        frontier = nxt
    cg = ClassicalGraph(nodes, len(edges), variables)
    cg.point = x0  # type: ignore[attr-defined]
    return cg


def q1_agreement(g: ExchangeGraph, cg: ClassicalGraph) -> List[str]:
    """Compare the ``q = 1`` specialization of every quantum node with the classical graph.

    Both graphs are evaluated at the classical oracle's point; node sets
    must coincide.  Returns a list of problems (empty on success).
    """
    point = cg.point  # type: ignore[attr-defined]
    memo: Dict[bytes, Fraction] = {}
    seen = set()
    problems = []
    for key, s in g.nodes.items():
        vals = []
        for i in s.mutable:
            t = s.vars[i]
            k = t.canonical_key()
            if k not in memo:
                memo[k] = torus_at_point(t, point)
            vals.append(memo[k])
        nk = tuple(sorted(vals))
        if nk not in cg.nodes:
            problems.append(f"quantum node at path {list(s.path)} has no classical counterpart")
        seen.add(nk)
    if len(seen) != len(cg.nodes):
        problems.append(f"{len(seen)} specialized nodes vs {len(cg.nodes)} classical nodes")
    return problems


def label_variable(entry: CatalogEntry, t: TorusElem, fp: Optional[Fingerprints] = None) -> Optional[str]:
    """Name of the candidate equal to ``t``, certified with :func:`verify_cluster_variable`."""
    for i, v in enumerate(entry.seed.vars):
        if v == t:
            return entry.seed.labels[i]
    fp = fp or Fingerprints(entry)
    val = fp.torus(t)
    for c in entry.expected["candidates"]:
        if fp.candidate(c) == val and verify_cluster_variable(t, c.value, entry.assignment, checked=True):
            return c.name
    return None
