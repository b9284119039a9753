"""Quivers of exchange matrices, finite-type recognition and the B-from-L solve."""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import sympy

from .seeds import mutate_B_square


class NoSolution(ValueError):
    pass


class NonUnique(ValueError):
    def __init__(self, msg, dimension):
        super().__init__(msg)
        self.dimension = dimension


class NonIntegral(ValueError):
    pass


@dataclass(frozen=True)
class Quiver:
    labels: Tuple[str, ...]
    frozen: Tuple[bool, ...]
    arrows: Tuple[Tuple[int, int, int], ...]

    def to_json(self) -> dict:
        return {
            "vertices": [{"label": l, "frozen": f} for l, f in zip(self.labels, self.frozen)],
            "arrows": [list(a) for a in self.arrows],
        }

    @classmethod
    def from_json(cls, data) -> "Quiver":
        return cls(
            tuple(v["label"] for v in data["vertices"]),
            tuple(bool(v["frozen"]) for v in data["vertices"]),
            tuple(tuple(a) for a in data["arrows"]),
        )

    def render(self) -> str:
        lines = []
        for i, j, w in self.arrows:
            a = f"[{self.labels[i]}]" if self.frozen[i] else self.labels[i]
            b = f"[{self.labels[j]}]" if self.frozen[j] else self.labels[j]
            lines.append(f"{a} -> {b}" + (f" ({w})" if w != 1 else ""))
        return "\n".join(lines)


def b_to_quiver(B, labels: Sequence[str], mutable: Sequence[int]) -> Quiver:
    """Arrow ``i -> j`` of weight ``b_ij`` for each positive entry.

    Columns of ``B`` are the mutable positions; entries between two frozen
    vertices are not recorded by ``B`` and so never appear.
    """
    B = np.asarray(B)
    r = len(labels)
    mut = list(mutable)
    arrows = set()
    for i in range(r):
        for jc, j in enumerate(mut):
            x = int(B[i, jc])
            if x > 0:
                arrows.add((i, j, x))
            elif x < 0:
                arrows.add((j, i, -x))
    ms = set(mut)
    return Quiver(tuple(labels), tuple(i not in ms for i in range(r)), tuple(sorted(arrows)))


def quiver_to_b(Q: Quiver, mutable: Sequence[int]) -> np.ndarray:
    r = len(Q.labels)
    col = {k: c for c, k in enumerate(mutable)}
    B = np.zeros((r, len(mutable)), dtype=np.int64)
    for i, j, w in Q.arrows:
        if j in col:
            B[i, col[j]] += w
        if i in col:
            B[j, col[i]] -= w
    return B


# ---------------------------------------------------------------------------
# finite-type recognition
# ---------------------------------------------------------------------------

def _refine(M: np.ndarray) -> List[int]:
    m = M.shape[0]
    colors = [0] * m
    for _ in range(m + 1):
        sig = []
        for v in range(m):
            out = sorted((int(M[v, u]), colors[u]) for u in range(m) if M[v, u])
            sig.append((colors[v], tuple(out)))
        table = {s: c for c, s in enumerate(sorted(set(sig)))}
        new = [table[s] for s in sig]
        if new == colors:
            break
        colors = new
    return colors


def canonical_form(M) -> Tuple[Tuple[int, ...], ...]:
    """Canonical form of a skew-symmetric matrix under simultaneous permutation."""
    M = np.asarray(M, dtype=np.int64)
    m = M.shape[0]
    colors = _refine(M)
    classes: Dict[int, List[int]] = {}
    for v, c in enumerate(colors):
        classes.setdefault(c, []).append(v)
    groups = [classes[c] for c in sorted(classes)]
    best = None
    for choice in itertools.product(*(itertools.permutations(g) for g in groups)):
        order = [v for part in choice for v in part]
        cand = tuple(tuple(int(M[a, b]) for b in order) for a in order)
        if best is None or cand < best:
            best = cand
    return best


def _components(M: np.ndarray) -> List[List[int]]:
    m = M.shape[0]
    seen = [False] * m
    comps = []
    for s in range(m):
        if seen[s]:
            continue
        comp, stack = [], [s]
        seen[s] = True
        while stack:
            v = stack.pop()
            comp.append(v)
            for u in range(m):
                if M[v, u] and not seen[u]:
                    seen[u] = True
                    stack.append(u)
        comps.append(sorted(comp))
    return comps


def dynkin_name(M) -> Optional[str]:
    """Name of the Dynkin diagram if ``M`` is an orientation of one (connected)."""
    M = np.asarray(M)
    m = M.shape[0]
    if np.any(np.abs(M) > 1):
        return None
    edges = [(a, b) for a in range(m) for b in range(a + 1, m) if M[a, b]]
    if len(edges) != m - 1:
        return None
    deg = [0] * m
    for a, b in edges:
        deg[a] += 1
        deg[b] += 1
    if m == 1:
        return "A1"
    if max(deg) <= 2:
        return f"A{m}"
    branch = [v for v in range(m) if deg[v] >= 3]
    if len(branch) != 1 or deg[branch[0]] != 3:
        return None
    c = branch[0]
    adj = {v: [u for u in range(m) if M[v, u]] for v in range(m)}
    arms = []
    for start in adj[c]:
        length, prev, cur = 1, c, start
        while True:
            nxt = [u for u in adj[cur] if u != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return f"D{m}"
    if arms[0] == 1 and arms[1] == 2 and arms[2] in (2, 3, 4):
        return f"E{m}"
    return None


def _classify_connected(M: np.ndarray, cap: int) -> str:
    m = M.shape[0]
    start = canonical_form(M)
    seen = {start}
    queue = deque([start])
    while queue:
        cur = np.array(queue.popleft(), dtype=np.int64)
        if np.any(np.abs(cur) >= 2):
            return "infinite"
        name = dynkin_name(cur)
        if name:
            return name
        for k in range(m):
            nxt = canonical_form(mutate_B_square(cur, k))
            if nxt not in seen:
                if len(seen) >= cap:
                    return "unknown"
                seen.add(nxt)
                queue.append(nxt)
    return "unknown"


def classify_finite_type(B, mutable: Optional[Sequence[int]] = None, cap: int = 100_000) -> str:
    """Dynkin type of the mutable part, ``"infinite"`` or ``"unknown"``.

    Breadth-first search over the mutation class up to isomorphism, stopping
    at the first orientation of a Dynkin diagram.  Disconnected quivers are
    classified per component and joined with ``+``.
    """
    B = np.asarray(B, dtype=np.int64)
    if mutable is not None:
        B = B[list(mutable), :]
    if B.shape[0] != B.shape[1] or not np.array_equal(B, -B.T):
        raise ValueError("principal part must be square and skew-symmetric")
    if B.shape[0] == 0:
        return "empty"
    names = []
    for comp in _components(B):
        sub = B[np.ix_(comp, comp)]
        names.append(_classify_connected(sub, cap))
    for bad in ("infinite", "unknown"):
        if bad in names:
            return bad
    return "+".join(sorted(names, key=lambda s: (s[0], int(s[1:]))))


# ---------------------------------------------------------------------------
# exchange matrix from quasi-commutation matrix
# ---------------------------------------------------------------------------

def solve_B_from_L(L, mutable: Sequence[int], d: int = 2, gradings=None) -> np.ndarray:
    """Unique integer ``B`` with ``B^T L = (d I | 0)`` and skew-symmetric principal part.

    The right-hand side has ``d`` on the diagonal of the mutable columns and
    zeros elsewhere.  When ``L`` is singular the columns are only determined
    up to its kernel; ``gradings`` (an ``r x g`` matrix of degrees of the
    cluster variables) then adds the homogeneity conditions ``B^T G = 0``,
    which every exchange relation of a graded algebra satisfies.  Solved
    exactly over the rationals.
    """
    L = sympy.Matrix(np.asarray(L, dtype=np.int64).tolist())
    r = L.shape[0]
    mut = list(mutable)
    m = len(mut)
    nvar = r * m  # B[i, j] -> i * m + j
    rows, rhs = [], []
    for j, k in enumerate(mut):
        for c in range(r):
            row = [0] * nvar
            for i in range(r):
                row[i * m + j] = L[i, c]
            rows.append(row)
            rhs.append(d if c == k else 0)
    for a in range(m):
        for b in range(a, m):
            row = [0] * nvar
            row[mut[a] * m + b] += 1
            row[mut[b] * m + a] += 1
            rows.append(row)
            rhs.append(0)
    if gradings is not None:
        G = np.asarray(gradings, dtype=np.int64)
        for j in range(m):
            for g in range(G.shape[1]):
                row = [0] * nvar
                for i in range(r):
                    row[i * m + j] = int(G[i, g])
                rows.append(row)
                rhs.append(0)
    A = sympy.Matrix(rows)
    y = sympy.Matrix(rhs)
    try:
        sol, params = A.gauss_jordan_solve(y)
    except ValueError:
        raise NoSolution("B^T L = (d I | 0) has no solution") from None
    if params.shape[0]:
        raise NonUnique("solution space is not a point", params.shape[0])
    out = np.zeros((r, m), dtype=np.int64)
    for i in range(r):
        for j in range(m):
            x = sol[i * m + j]
            if not x.is_integer:
                raise NonIntegral(f"B[{i},{j}] = {x} is not an integer")
            out[i, j] = int(x)
    return out
