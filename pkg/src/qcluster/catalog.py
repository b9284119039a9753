"""Catalog of initial seeds and named elements.

Gr(2,n) and the Schubert cells use closed-form ``B``/``L``; the Gr(3,n)
seeds take ``L`` from the quantum-matrix oracle and ``B`` from the grid
quiver, cross-checked against :func:`solve_B_from_L`.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .qarith import FrameMismatch, QCoeff
from .qmatrix import QMatElem, build_L_oracle, qm_prod, quantum_minor
from .quivers import classify_finite_type, solve_B_from_L
from .seeds import QSeed, check_compat


class CrossCheckFailed(AssertionError):
    pass


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    seed: QSeed
    assignment: Tuple[QMatElem, ...]
    expected: dict = field(default_factory=dict)

    @property
    def ambient(self) -> Tuple[int, int]:
        return self.assignment[0].ambient


def minor_label(cols: Sequence[int]) -> str:
    sep = "," if max(cols) > 9 else ""
    return "[" + sep.join(map(str, cols)) + "]"


def entry_label(i: int, j: int) -> str:
    return f"({i}{j})"


def _validate(name, labels, mutable, B, L, assignment, expect_diag) -> CatalogEntry:
    seed = QSeed.initial(labels, mutable, B, L)
    diag = check_compat(seed)
    if diag != expect_diag:
        raise CrossCheckFailed(f"{name}: compatibility diagonal {diag}")
    oracle = build_L_oracle(assignment, labels)
    if oracle != [list(map(int, r)) for r in np.asarray(L)]:
        raise FrameMismatch(f"{name}: L differs from the quantum-matrix oracle")
    return CatalogEntry(name, seed, tuple(assignment))


# ---------------------------------------------------------------------------
# Gr(2, n)
# ---------------------------------------------------------------------------

def gr2_matrices(n: int) -> Tuple[List[str], List[int], np.ndarray, np.ndarray]:
    """Labels, mutable positions, ``B`` and ``L`` of the fan triangulation seed."""
    # rows: [1n], [1(n-1)], ..., [12], [23], ..., [(n-1)n]
    rows: List[Tuple[str, int]] = [("1", i) for i in range(n, 1, -1)] + [("e", j) for j in range(2, n)]
    labels = [minor_label((1, i)) if kind == "1" else minor_label((i, i + 1)) for kind, i in rows]
    cols = list(range(n - 1, 2, -1))
    mutable = [rows.index(("1", k)) for k in cols]

    def b(row, k):
        kind, i = row
        if kind == "1":
            return {k + 1: -1, k - 1: 1}.get(i, 0)
        return {k - 1: -1, k: 1}.get(i, 0)

    # edge [j(j+1)] is indexed by j; the formulas run over 1 <= j <= n-1 with [1n] playing j = n
    def lval(r1, r2):
        (a, i), (c, k) = r1, r2
        if a == "1" and c == "1":
            return int(np.sign(k - i))
        if a == "1":
            l = k
            return 0 if i >= l + 2 else (1 if i in (l, l + 1) else 2)
        if c == "1":
            j = i
            return 0 if j <= k - 2 else (-1 if j in (k - 1, k) else -2)
        j, l = i, k
        return max(-2, min(2, l - j))

    B = np.array([[b(r, k) for k in cols] for r in rows], dtype=np.int64)
    L = np.array([[lval(r1, r2) for r2 in rows] for r1 in rows], dtype=np.int64)
    return labels, mutable, B, L


def gr2_seed(n: int) -> CatalogEntry:
    if not 4 <= n <= 12:
        raise ValueError("gr2 needs 4 <= n <= 12")
    labels, mutable, B, L = gr2_matrices(n)
    amb = (2, n)
    pairs = [(1, i) for i in range(n, 1, -1)] + [(j, j + 1) for j in range(2, n)]
    assignment = [quantum_minor(p, amb) for p in pairs]
    e = _validate(f"gr2:{n}", labels, mutable, B, L, assignment, [2] * (n - 3))
    return _with_expected(e)


# ---------------------------------------------------------------------------
# Gr(3, n), n = 6, 7, 8
# ---------------------------------------------------------------------------

def _grid(n: int):
    """Vertices P(i, j) of the rectangular grid quiver and its arrows.

    ``P(0,j) = {j-1,j,j+1}``, ``P(1,j) = {1,j,j+1}``, ``P(2,j) = {1,2,j+1}``;
    column 2 collapses to ``{1,2,3}``.
    """
    def P(i, j):
        return ((j - 1, j, j + 1), (1, j, j + 1), (1, 2, j + 1))[i] if j > 2 else (1, 2, 3)

    arrows = []
    for j in range(2, n - 1):
        for i in (1, 2):
            arrows.append((P(i, j), P(i, j + 1)))
        arrows.append((P(1, j + 1), P(2, j)))
        arrows.append((P(0, j + 1), P(1, j)))
    for j in range(3, n):
        arrows.append((P(2, j), P(1, j)))
        arrows.append((P(1, j), P(0, j)))
    return arrows


def gr3_labels(n: int) -> Tuple[List[Tuple[int, ...]], int]:
    """Initial cluster (mutable first) and the number of mutable positions."""
    mut = [(1, j, j + 1) for j in range(n - 2, 2, -1)] + [(1, 2, j + 1) for j in range(n - 2, 2, -1)]
    frozen = [(j, j + 1, j + 2) for j in range(1, n - 1)] + [(1, n - 1, n), (1, 2, n)]
    return mut + frozen, len(mut)


def gr3_grid_B(n: int) -> np.ndarray:
    cluster, m = gr3_labels(n)
    pos = {c: i for i, c in enumerate(cluster)}
    r = len(cluster)
    Q = np.zeros((r, r), dtype=np.int64)
    for a, b in _grid(n):
        if a != b:
            Q[pos[a], pos[b]] += 1
            Q[pos[b], pos[a]] -= 1
    return Q[:, :m]


def gr3_seed(n: int) -> CatalogEntry:
    if n not in (6, 7, 8):
        raise ValueError("gr3 is defined for n = 6, 7, 8")
    cluster, m = gr3_labels(n)
    labels = [minor_label(c) for c in cluster]
    amb = (3, n)
    assignment = [quantum_minor(c, amb) for c in cluster]
    L = np.array(build_L_oracle(assignment, labels), dtype=np.int64)
    B = gr3_grid_B(n)
    grading = [[int(c in cols) for c in range(1, n + 1)] for cols in cluster]
    solved = solve_B_from_L(L, range(m), d=2, gradings=grading)
    if not np.array_equal(B, solved):
        raise CrossCheckFailed(f"gr3:{n}: grid quiver and solved B disagree")
    want = {6: "D4", 7: "E6", 8: "E8"}[n]
    got = classify_finite_type(B, range(m))
    if got != want:
        raise CrossCheckFailed(f"gr3:{n}: type {got}, expected {want}")
    e = _validate(f"gr3:{n}", labels, list(range(m)), B, L, assignment, [2] * m)
    return _with_expected(e)


# ---------------------------------------------------------------------------
# quantum Schubert cells in K_q[M(2, n-2)]
# ---------------------------------------------------------------------------

def schubert_matrices(t: int, s: int):
    # rows: (1t), ..., (11), (21), [12], ..., [(s-1)s]
    rows = [("x1", i) for i in range(t, 0, -1)] + [("x2", 1)] + [("d", j) for j in range(1, s)]
    labels = [entry_label(1, i) if a == "x1" else entry_label(2, 1) if a == "x2" else minor_label((i, i + 1))
              for a, i in rows]
    cols = list(range(s - 1, 0, -1))
    mutable = [rows.index(("x1", k)) for k in cols]

    def b(row, k):
        a, i = row
        if a == "x1":
            return {k + 1: -1, k - 1: 1}.get(i, 0)
        if a == "x2":
            return -1 if k == 1 else 0
        return {k - 1: -1, k: 1}.get(i, 0)

    def lval(r1, r2):
        (a, i), (c, k) = r1, r2
        if a == "x1" and c == "x1":
            return int(np.sign(k - i))
        if a == "x1" and c == "x2":
            return 1 if i == 1 else 0
        if a == "x2" and c == "x1":
            return -1 if k == 1 else 0
        if a == "x2" and c == "x2":
            return 0
        if a == "x1":
            l = k
            return -1 if i >= l + 2 else (0 if i in (l, l + 1) else 1)
        if c == "x1":
            j = i
            return 1 if j <= k - 2 else (0 if j in (k - 1, k) else -1)
        if a == "x2":
            return 0 if k == 1 else 1
        if c == "x2":
            return 0 if i == 1 else -1
        return max(-2, min(2, k - i))

    B = np.array([[b(r, k) for k in cols] for r in rows], dtype=np.int64)
    L = np.array([[lval(r1, r2) for r2 in rows] for r1 in rows], dtype=np.int64)
    return labels, mutable, B, L, rows


def schubert_seed(n: int, t: int, s: int) -> CatalogEntry:
    if not (2 <= s <= t <= n - 2):
        raise ValueError("Schubert cell needs 2 <= s <= t <= n-2")
    labels, mutable, B, L, rows = schubert_matrices(t, s)
    amb = (2, n - 2)
    assignment = []
    for a, i in rows:
        if a == "x1":
            assignment.append(QMatElem.gen(amb, 1, i))
        elif a == "x2":
            assignment.append(QMatElem.gen(amb, 2, 1))
        else:
            assignment.append(quantum_minor((i, i + 1), amb))
    e = _validate(f"schubert:{n}:{t}:{s}", labels, mutable, B, L, assignment, [2] * (s - 1))
    return _with_expected(e, t=t, s=s)


# ---------------------------------------------------------------------------
# named elements
# ---------------------------------------------------------------------------

def _d(cols, n) -> QMatElem:
    return quantum_minor(tuple(cols), (3, n))


def named_quadratic(kind: str, cols: Sequence[int], n: Optional[int] = None) -> QMatElem:
    """``X_q`` or ``Y_q`` on a 6-subset, as an element of K_q[M(3, n)]."""
    a, b, c, d, e, f = sorted(cols)
    n = n or f
    if kind == "X":
        # q^{3/2} (D[cef] D[abd] - q D[def] D[abc])
        t1 = qm_prod([_d((c, e, f), n), _d((a, b, d), n)])
        t2 = qm_prod([_d((d, e, f), n), _d((a, b, c), n)])
        return (t1 - t2.shift(2)).shift(3)
    if kind == "Y":
        # q^{1/2} (D[bcf] D[ade] - q^2 D[def] D[abc])
        t1 = qm_prod([_d((b, c, f), n), _d((a, d, e), n)])
        t2 = qm_prod([_d((d, e, f), n), _d((a, b, c), n)])
        return (t1 - t2.shift(4)).shift(1)
    raise ValueError("kind must be X or Y")


# (q-power, three minors) per term; every row reads c1 m m m - c2 m m m - c3 m m m
CUBIC_TABLE: Dict[Tuple[str, int, int], Tuple[Tuple[int, Tuple[str, str, str]], ...]] = {
    ("A", 1, 0): ((-1, ("134", "258", "167")), (1, ("134", "678", "125")), (1, ("158", "234", "167"))),
    ("A", 2, 0): ((-1, ("245", "136", "278")), (1, ("245", "178", "236")), (-1, ("126", "345", "278"))),
    ("A", 3, 0): ((1, ("356", "247", "138")), (1, ("356", "128", "347")), (1, ("237", "456", "138"))),
    ("A", 4, 0): ((3, ("467", "358", "124")), (1, ("467", "123", "458")), (3, ("348", "567", "124"))),
    ("A", 5, 0): ((3, ("578", "146", "235")), (3, ("578", "234", "156")), (1, ("145", "678", "235"))),
    ("A", 6, 0): ((1, ("168", "257", "346")), (1, ("168", "345", "267")), (1, ("256", "178", "346"))),
    ("A", 7, 0): ((-1, ("127", "368", "457")), (-1, ("127", "456", "378")), (1, ("367", "128", "457"))),
    ("A", 8, 0): ((-1, ("238", "147", "568")), (1, ("238", "567", "148")), (1, ("478", "123", "568"))),
    ("B", 1, 0): ((0, ("258", "134", "267")), (2, ("258", "167", "234")), (-3, ("128", "234", "567"))),
    ("B", 2, 0): ((-2, ("136", "245", "378")), (0, ("136", "278", "345")), (-5, ("123", "345", "678"))),
    ("B", 3, 0): ((0, ("247", "356", "148")), (0, ("247", "138", "456")), (-3, ("234", "456", "178"))),
    ("B", 4, 0): ((2, ("358", "467", "125")), (0, ("358", "124", "567")), (-1, ("345", "567", "128"))),
    ("B", 5, 0): ((0, ("146", "578", "236")), (-2, ("146", "235", "678")), (1, ("456", "678", "123"))),
    ("B", 6, 0): ((0, ("257", "168", "347")), (0, ("257", "346", "178")), (1, ("567", "178", "234"))),
    ("B", 7, 0): ((0, ("368", "127", "458")), (2, ("368", "457", "128")), (1, ("678", "128", "345"))),
    ("B", 8, 0): ((0, ("147", "238", "156")), (2, ("147", "568", "123")), (-1, ("178", "123", "456"))),
    ("B", 1, 1): ((0, ("258", "167", "348")), (-2, ("258", "134", "678")), (1, ("128", "678", "345"))),
    ("B", 2, 1): ((0, ("136", "278", "145")), (-2, ("136", "245", "178")), (-1, ("123", "178", "456"))),
    ("B", 3, 1): ((0, ("247", "138", "256")), (0, ("247", "356", "128")), (-1, ("234", "128", "567"))),
    ("B", 4, 1): ((0, ("358", "124", "367")), (2, ("358", "467", "123")), (-1, ("345", "123", "678"))),
    ("B", 5, 1): ((-2, ("146", "235", "478")), (0, ("146", "578", "234")), (1, ("456", "234", "178"))),
    ("B", 6, 1): ((0, ("257", "346", "158")), (0, ("257", "168", "345")), (3, ("567", "345", "128"))),
    ("B", 7, 1): ((2, ("368", "457", "126")), (0, ("368", "127", "456")), (5, ("678", "456", "123"))),
    ("B", 8, 1): ((0, ("147", "568", "237")), (-2, ("147", "238", "567")), (3, ("178", "567", "234"))),
}


def cubic_name(family: str, i: int, j: int = 0) -> str:
    return f"A_q({i})" if family == "A" else f"B_q({i},{j})"


def named_cubic(family: str, i: int, j: int = 0) -> QMatElem:
    """Three-term cubic element of K_q[M(3, 8)] from the tabulated expressions."""
    key = (family, i, 0 if family == "A" else j)
    if key not in CUBIC_TABLE:
        raise ValueError(f"no cubic {key}")
    out = None
    for t, (qpow, mins) in enumerate(CUBIC_TABLE[key]):
        term = qm_prod([_d(tuple(int(ch) for ch in m), 8) for m in mins]).shift(2 * qpow)
        out = term if t == 0 else out - term
    return out


# ---------------------------------------------------------------------------
# expectations
# ---------------------------------------------------------------------------

@dataclass
class Candidate:
    name: str
    kind: str  # minor | quadratic | cubic | entry
    make: object = field(repr=False)
    _value: Optional[QMatElem] = field(default=None, repr=False)

    @property
    def value(self) -> QMatElem:
        if self._value is None:
            self._value = self.make()
        return self._value


def _minor_candidates(k, n, exclude):
    out = []
    for cols in itertools.combinations(range(1, n + 1), k):
        name = minor_label(cols)
        if name not in exclude:
            out.append(Candidate(name, "minor", lambda c=cols: quantum_minor(c, (k, n))))
    return out


def _with_expected(entry: CatalogEntry, **kw) -> CatalogEntry:
    object.__setattr__(entry, "expected", expected_census(entry, **kw))
    return entry


def expected_census(entry: CatalogEntry, t: Optional[int] = None, s: Optional[int] = None) -> dict:
    """Expected mutable count, cluster count and the named candidate list."""
    seed = entry.seed
    frozen = {seed.labels[i] for i in seed.frozen}
    initial = set(seed.labels)
    family = entry.name.split(":")[0]
    k, n = entry.ambient
    if family == "gr2":
        cands = _minor_candidates(2, n, frozen)
        m = n - 3
        counts = {"mutable": (n * n - 3 * n) // 2, "total": n * (n - 1) // 2, "type": f"A{m}",
                  "clusters": _catalan(m + 1)}
    elif family == "gr3":
        cands = _minor_candidates(3, n, frozen)
        for cols in itertools.combinations(range(1, n + 1), 6):
            tag = "".join(map(str, cols))
            for kind in "XY":
                cands.append(Candidate(f"{kind}_q^{tag}", "quadratic",
                                       lambda kd=kind, c=cols: named_quadratic(kd, c, n)))
        if n == 8:
            for key in CUBIC_TABLE:
                fam, i, j = key
                cands.append(Candidate(cubic_name(fam, i, j), "cubic", lambda a=key: named_cubic(*a)))
        counts = {6: {"mutable": 16, "clusters": 50, "type": "D4"},
                  7: {"mutable": 42, "clusters": 833, "type": "E6"},
                  8: {"mutable": 128, "clusters": 25080, "type": "E8"}}[n]
        counts = dict(counts, minors=len(_minor_candidates(3, n, frozen)),
                      quadratics=2 * len(list(itertools.combinations(range(n), 6))),
                      cubics=24 if n == 8 else 0)
    elif family == "schubert":
        t = t if t is not None else int(entry.name.split(":")[2])
        s = s if s is not None else int(entry.name.split(":")[3])
        amb = entry.ambient
        # the cell generated by X_{1j}, j <= t, and X_{2j}, j <= s
        cands = []
        for i, top in ((1, t), (2, s)):
            for j in range(1, top + 1):
                name = entry_label(i, j)
                if name not in frozen:
                    cands.append(Candidate(name, "entry", lambda i=i, j=j: QMatElem.gen(amb, i, j)))
        for a, b in itertools.combinations(range(1, s + 1), 2):
            name = minor_label((a, b))
            if name not in frozen:
                cands.append(Candidate(name, "minor", lambda c=(a, b): quantum_minor(c, amb)))
        m = s - 1
        counts = {"mutable": len(cands), "type": f"A{m}", "clusters": _catalan(m + 1)}
    else:
        raise ValueError(f"unknown catalog family {family}")
    order = {"minor": 0, "entry": 0, "quadratic": 1, "cubic": 2}
    cands.sort(key=lambda c: order[c.kind])
    return dict(counts, candidates=cands, frozen=sorted(frozen), initial=sorted(initial))


def _catalan(n: int) -> int:
    from math import comb
    return comb(2 * n, n) // (n + 1)


@lru_cache(maxsize=None)
def load(name: str) -> CatalogEntry:
    """Catalog entry by name: ``gr2:n``, ``gr3:n`` or ``schubert:n:t:s``."""
    parts = name.strip().split(":")
    try:
        args = [int(p) for p in parts[1:]]
    except ValueError:
        raise ValueError(f"bad catalog name {name!r}") from None
    if parts[0] == "gr2" and len(args) == 1:
        return gr2_seed(*args)
    if parts[0] == "gr3" and len(args) == 1:
        return gr3_seed(*args)
    if parts[0] == "schubert" and len(args) == 3:
        return schubert_seed(*args)
    raise ValueError(f"bad catalog name {name!r}")
