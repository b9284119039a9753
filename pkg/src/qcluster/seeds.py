"""Quantum seeds and mutation.

A seed keeps its cluster variables as elements of the quantum torus of the
*initial* seed (the Laurent expansions), together with the current exchange
matrix ``B`` (rows: all positions, columns: mutable positions) and the
current quasi-commutation matrix ``L``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

from .qarith import (
    Frame,
    NotQuasiCommuting,
    TorusElem,
    torus_commutation_exponent,
    torus_exact_div,
)


class Incompatible(ValueError):
    """``B^T L`` is not a positive diagonal block plus a zero block."""

    def __init__(self, msg, entries=()):
        super().__init__(msg)
        self.entries = list(entries)


class NotMutable(ValueError):
    pass


def _ro(a) -> np.ndarray:
    arr = np.array(a, dtype=np.int64)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class QSeed:
    labels: Tuple[str, ...]
    mutable: Tuple[int, ...]
    B: np.ndarray
    L: np.ndarray
    vars: Tuple[TorusElem, ...]
    frame: Frame
    path: Tuple[int, ...] = ()

    @classmethod
    def initial(cls, labels: Sequence[str], mutable: Sequence[int], B, L) -> "QSeed":
        frame = Frame(L)
        vars_ = tuple(TorusElem.generator(frame, i) for i in range(frame.r))
        return cls(tuple(labels), tuple(mutable), _ro(B), _ro(L), vars_, frame)

    def __post_init__(self):
        r = len(self.labels)
        if self.B.shape != (r, len(self.mutable)):
            raise ValueError(f"B has shape {self.B.shape}, expected {(r, len(self.mutable))}")
        if self.L.shape != (r, r):
            raise ValueError("L must be r x r")
        if len(self.vars) != r:
            raise ValueError("cluster size differs from the label count")

    @property
    def r(self) -> int:
        return len(self.labels)

    @property
    def frozen(self) -> Tuple[int, ...]:
        ms = set(self.mutable)
        return tuple(i for i in range(self.r) if i not in ms)

    def column(self, k: int) -> int:
        try:
            return self.mutable.index(k)
        except ValueError:
            raise NotMutable(f"position {k} ({self.labels[k]}) is frozen") from None

    def principal(self) -> np.ndarray:
        return self.B[list(self.mutable), :]

    def same_as(self, other: "QSeed") -> bool:
        """Identical vars, B and L (labels and path are metadata)."""
        return (
            self.mutable == other.mutable
            and np.array_equal(self.B, other.B)
            and np.array_equal(self.L, other.L)
            and all(a == b for a, b in zip(self.vars, other.vars))
        )

    def to_json(self) -> dict:
        return {
            "labels": list(self.labels),
            "mutable": list(self.mutable),
            "B": self.B.tolist(),
            "L": self.L.tolist(),
            "frame": [list(r) for r in self.frame.L],
            "path": list(self.path),
            "vars": [v.to_json() for v in self.vars],
        }

    @classmethod
    def from_json(cls, data: dict) -> "QSeed":
        frame = Frame(data.get("frame", data["L"]))
        vars_ = tuple(TorusElem.from_json(frame, v) for v in data["vars"])
        return cls(
            tuple(data["labels"]),
            tuple(data["mutable"]),
            _ro(data["B"]),
            _ro(data["L"]),
            vars_,
            frame,
            tuple(data.get("path", ())),
        )

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))


def check_compat(seed: QSeed) -> List[int]:
    """Return the diagonal of ``B^T L`` on the mutable columns.

    Raises :class:`Incompatible` listing every offending ``(column, position)``.
    """
    prod = seed.B.T @ seed.L
    bad = []
    diag = []
    for j, k in enumerate(seed.mutable):
        for i in range(seed.r):
            x = int(prod[j, i])
            if i == k:
                if x <= 0:
                    bad.append((j, i, x))
                diag.append(x)
            elif x != 0:
                bad.append((j, i, x))
    if bad:
        raise Incompatible(f"B^T L has {len(bad)} offending entries, first {bad[0]}", bad)
    return diag


def mutate_B(B, k_col: int, k_row: int) -> np.ndarray:
    """Matrix mutation at the mutable position with row ``k_row`` / column ``k_col``."""
    B = np.asarray(B, dtype=np.int64)
    bk = B[:, k_col]
    rk = B[k_row, :]
    out = B + (np.abs(bk)[:, None] * rk[None, :] + bk[:, None] * np.abs(rk)[None, :]) // 2
    out[k_row, :] = -B[k_row, :]
    out[:, k_col] = -B[:, k_col]
    return out


def mutate_B_square(B, k: int) -> np.ndarray:
    """Mutation of a matrix whose columns are indexed like its first rows."""
    return mutate_B(B, k, k)


class MutationCache:
    """Interning and memo tables shared across many mutations of one frame.

    Cluster variables are interned by canonical key; ordered products,
    exchange quotients and pairwise commutation exponents are memoized on
    interned ids.  ``full_commutation`` controls whether new ``L`` entries
    are certified with full products or read off leading and trailing terms.
    """

    def __init__(self, frame: Frame, full_commutation: bool = True):
        self.frame = frame
        self.full_commutation = full_commutation
        self.ids: Dict[bytes, int] = {}
        self.elems: List[TorusElem] = []
        self._mono: Dict[FrozenSet, TorusElem] = {}
        self._quo: Dict[tuple, TorusElem] = {}
        self._comm: Dict[Tuple[int, int], int] = {}
        self.stats = {"products": 0, "divisions": 0, "commutations": 0}

    def intern(self, t: TorusElem) -> int:
        key = t.canonical_key()
        i = self.ids.get(key)
        if i is None:
            i = self.ids[key] = len(self.elems)
            self.elems.append(t)
        return i

    def canon(self, t: TorusElem) -> TorusElem:
        return self.elems[self.intern(t)]

    def norm_monomial(self, seed: QSeed, a: Sequence[int]) -> TorusElem:
        """Normalized monomial ``M(a)`` in the cluster of ``seed`` (``a >= 0``)."""
        items = frozenset((self.intern(seed.vars[i]), int(x)) for i, x in enumerate(a) if x)
        res = self._mono.get(items)
        if res is None:
            self.stats["products"] += 1
            res = _ordered_normalized(seed, a)
            self._mono[items] = res
        return res

    def commutation(self, s: TorusElem, t: TorusElem) -> int:
        i, j = self.intern(s), self.intern(t)
        if i == j:
            return 0
        c = self._comm.get((i, j))
        if c is None:
            self.stats["commutations"] += 1
            if self.full_commutation:
                c = torus_commutation_exponent(s, t)
            else:
                c = _extreme_commutation(s, t)
            self._comm[(i, j)] = c
            self._comm[(j, i)] = -c
        return c


def _ordered_normalized(seed: QSeed, a: Sequence[int]) -> TorusElem:
    L = seed.L
    frame = seed.frame
    idx = [i for i, x in enumerate(a) if x]
    norm = 0
    for p, i in enumerate(idx):
        for j in idx[p + 1:]:
            norm += int(a[i]) * int(a[j]) * int(L[j, i])
    out = TorusElem.one(frame)
    for i in idx:
        out = out * (seed.vars[i] ** int(a[i]))
    return out.shift(norm)


def _extreme_commutation(s: TorusElem, t: TorusElem) -> int:
    frame = s.frame
    c1 = frame.form(s.leading(), t.leading())
    c2 = frame.form(s.trailing(), t.trailing())
    if c1 != c2:
        raise NotQuasiCommuting("leading and trailing terms disagree on the commutation exponent")
    return c1


def exchange_numerator(seed: QSeed, k: int, cache: Optional[MutationCache] = None) -> TorusElem:
    """``Y_k X'_k``: the two exchange monomials with ``Y_k^{-1}`` moved to the left.

    With ``a = -e_k + a'`` one has ``M(a) = v^{(L a')_k} Y_k^{-1} M(a')`` in the
    current cluster, so ``X'_k = Y_k^{-1} (v^{(L a+)_k} M(a+) + v^{(L a-)_k} M(a-))``.
    """
    col = seed.B[:, seed.column(k)]
    plus = np.where(col > 0, col, 0)
    minus = np.where(col < 0, -col, 0)
    cache = cache or MutationCache(seed.frame)
    Lk = seed.L[k]
    out = None
    for a in (plus, minus):
        shift = int(Lk @ a)
        term = cache.norm_monomial(seed, a).shift(shift)
        out = term if out is None else out + term
    return out


def exchange_variable(seed: QSeed, k: int, cache: Optional[MutationCache] = None) -> TorusElem:
    """The new cluster variable ``X'_k`` as a Laurent expansion in the initial cluster."""
    cache = cache or MutationCache(seed.frame)
    num = exchange_numerator(seed, k, cache)
    key = (cache.intern(seed.vars[k]), cache.intern(num))
    res = cache._quo.get(key)
    if res is None:
        cache.stats["divisions"] += 1
        res = cache.canon(torus_exact_div(num, seed.vars[k], side="left"))
        cache._quo[key] = res
    return res


def mutate_L(seed: QSeed, k: int, newvar: TorusElem, cache: Optional[MutationCache] = None) -> np.ndarray:
    """``L'`` computed from the mutated cluster by commutation exponents."""
    cache = cache or MutationCache(seed.frame)
    L = np.array(seed.L, dtype=np.int64)
    for j in range(seed.r):
        if j == k:
            continue
        c = cache.commutation(newvar, seed.vars[j])
        L[k, j] = c
        L[j, k] = -c
    return L


def mutate_L_formula(B, L, k: int, k_col: int, sign: int = 1) -> np.ndarray:
    """``E^T L E`` with ``E = I`` except column ``k``: ``-1`` at ``k``, ``max(0, -sign b_ik)`` elsewhere."""
    B = np.asarray(B, dtype=np.int64)
    L = np.asarray(L, dtype=np.int64)
    r = L.shape[0]
    E = np.eye(r, dtype=np.int64)
    for i in range(r):
        E[i, k] = max(0, -sign * int(B[i, k_col]))
    E[k, k] = -1
    return E.T @ L @ E


def derived_label(seed: QSeed, k: int) -> str:
    path = ".".join(str(p) for p in seed.path + (k,))
    return f"mut({k};{path})"


def mutate_seed(seed: QSeed, k: int, cache: Optional[MutationCache] = None, label: Optional[str] = None) -> QSeed:
    kc = seed.column(k)
    cache = cache or MutationCache(seed.frame)
    new = exchange_variable(seed, k, cache)
    L2 = mutate_L(seed, k, new, cache)
    B2 = mutate_B(seed.B, kc, k)
    vars_ = list(seed.vars)
    vars_[k] = new
    labels = list(seed.labels)
    labels[k] = label if label is not None else derived_label(seed, k)
    return QSeed(tuple(labels), seed.mutable, _ro(B2), _ro(L2), tuple(vars_), seed.frame, seed.path + (k,))


def mutate_sequence(seed: QSeed, seq: Sequence[int], cache: Optional[MutationCache] = None) -> QSeed:
    cache = cache or MutationCache(seed.frame)
    for k in seq:
        seed = mutate_seed(seed, k, cache)
    return seed


def seed_cluster_key(seed: QSeed) -> bytes:
    """Order-independent key of the mutable part of the cluster."""
    keys = sorted(seed.vars[i].canonical_key() for i in seed.mutable)
    return b"|".join(keys)


def check_quasi_commutation(seed: QSeed) -> None:
    """Every pair of cluster variables quasi-commutes with exponent ``L[i, j]``."""
    for i in range(seed.r):
        for j in range(i + 1, seed.r):
            c = torus_commutation_exponent(seed.vars[i], seed.vars[j])
            if c != int(seed.L[i, j]):
                raise NotQuasiCommuting(
                    f"{seed.labels[i]}, {seed.labels[j]}: exponent {c} but L says {int(seed.L[i, j])}"
                )
