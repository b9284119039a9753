"""Quantum matrix algebra K_q[M(k, n)] in PBW normal form.

Generators ``x[i, c]`` (1-based) are numbered row-major, ``g = (i-1) n + (c-1)``,
and a normal-form word is a non-decreasing tuple of generator numbers.  The
straightening rules, for a generator pair ``y x`` with ``y > x``::

    same row      x[i,d] x[i,c] = q^-1 x[i,c] x[i,d]          (d > c)
    same column   x[j,c] x[i,c] = q^-1 x[i,c] x[j,c]          (j > i)
    j > i, d > c  x[j,d] x[i,c] = x[i,c] x[j,d] - (q - q^-1) x[i,d] x[j,c]
    j > i, d < c  x[j,d] x[i,c] = x[i,c] x[j,d]
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from .qarith import FrameMismatch, NotQuasiCommuting, QCoeff, TorusElem, _clean

Word = Tuple[int, ...]
Poly = Dict[Word, Dict[int, int]]


class AmbientMismatch(ValueError):
    pass


class NegativeExponent(ValueError):
    pass


def _acc(dst: Poly, w: Word, c: Mapping[int, int], shift: int = 0, scale: int = 1):
    slot = dst.get(w)
    if slot is None:
        slot = dst[w] = {}
    for k, x in c.items():
        kk = k + shift
        val = slot.get(kk, 0) + scale * x
        if val:
            slot[kk] = val
        else:
            del slot[kk]
    if not slot:
        del dst[w]


def _poly_mul_coeff(a: Mapping[int, int], b: Mapping[int, int]) -> Dict[int, int]:
    out: Dict[int, int] = {}
    for k, x in a.items():
        for l, y in b.items():
            out[k + l] = out.get(k + l, 0) + x * y
    return _clean(out)


class _Straightener:
    """Memoized normal-form multiplication for one ambient size."""

    _instances: Dict[Tuple[int, int], "_Straightener"] = {}

    def __init__(self, k: int, n: int):
        self.k, self.n = k, n
        self._ins: Dict[Tuple[Word, int], Poly] = {}
        self._swap: Dict[Tuple[int, int], List[Tuple[Dict[int, int], int, int]]] = {}

    @classmethod
    def get(cls, k: int, n: int) -> "_Straightener":
        inst = cls._instances.get((k, n))
        if inst is None:
            inst = cls._instances[(k, n)] = cls(k, n)
        return inst

    def swap(self, y: int, x: int):
        """Rewrite ``y x`` (y > x) as a combination of ordered pairs."""
        key = (y, x)
        res = self._swap.get(key)
        if res is None:
            n = self.n
            j, d = divmod(y, n)
            i, c = divmod(x, n)
            if j == i or d == c:
                res = [({-2: 1}, x, y)]
            elif d > c:
                res = [({0: 1}, x, y), ({2: -1, -2: 1}, i * n + d, j * n + c)]
            else:
                res = [({0: 1}, x, y)]
            self._swap[key] = res
        return res

    def insert(self, w: Word, x: int) -> Poly:
        """Normal form of ``w * x`` for a normal word ``w``."""
        if not w or w[-1] <= x:
            return {w + (x,): {0: 1}}
        key = (w, x)
        res = self._ins.get(key)
        if res is not None:
            return res
        y = w[-1]
        pre = w[:-1]
        out: Poly = {}
        for c, x1, y1 in self.swap(y, x):
            for u, cu in self.insert(pre, x1).items():
                cc = _poly_mul_coeff(c, cu)
                for u2, cu2 in self.insert(u, y1).items():
                    _acc(out, u2, _poly_mul_coeff(cc, cu2))
        self._ins[key] = out
        return out

    def mul_words(self, w1: Word, w2: Word) -> Poly:
        cur: Poly = {w1: {0: 1}}
        for x in w2:
            nxt: Poly = {}
            for u, cu in cur.items():
                for u2, c2 in self.insert(u, x).items():
                    _acc(nxt, u2, _poly_mul_coeff(cu, c2))
            cur = nxt
        return cur

    def clear(self):
        self._ins.clear()


@dataclass(frozen=True)
class MinorLabel:
    columns: Tuple[int, ...]

    def __post_init__(self):
        cols = tuple(self.columns)
        if list(cols) != sorted(set(cols)):
            raise ValueError("minor columns must be strictly increasing")
        object.__setattr__(self, "columns", cols)

    def __str__(self):
        return "[" + "".join(map(str, self.columns)) + "]"

    @classmethod
    def parse(cls, s: str) -> "MinorLabel":
        s = s.strip().strip("[]")
        return cls(tuple(int(ch) for ch in s))


class QMatElem:
    """Normal-form element of K_q[M(k, n)]."""

    __slots__ = ("ambient", "_d")

    def __init__(self, ambient: Tuple[int, int], terms: Mapping[Word, Mapping[int, int] | QCoeff | int] | None = None):
        self.ambient = (int(ambient[0]), int(ambient[1]))
        d: Poly = {}
        for w, c in (terms or {}).items():
            w = tuple(w)
            if list(w) != sorted(w):
                raise ValueError("use nf_reduce for words that are not in normal form")
            if isinstance(c, QCoeff):
                c = c.terms
            elif isinstance(c, int):
                c = {0: c}
            _acc(d, w, c)
        self._d = d

    @classmethod
    def _raw(cls, ambient, d: Poly) -> "QMatElem":
        obj = cls.__new__(cls)
        obj.ambient = ambient
        obj._d = d
        return obj

    @classmethod
    def one(cls, ambient) -> "QMatElem":
        return cls._raw(tuple(ambient), {(): {0: 1}})

    @classmethod
    def gen(cls, ambient, i: int, c: int) -> "QMatElem":
        k, n = ambient
        if not (1 <= i <= k and 1 <= c <= n):
            raise ValueError(f"x[{i},{c}] is outside K_q[M({k},{n})]")
        return cls._raw(tuple(ambient), {((i - 1) * n + (c - 1),): {0: 1}})

    def terms(self) -> Dict[Word, QCoeff]:
        return {w: QCoeff(c) for w, c in self._d.items()}

    def __len__(self):
        return len(self._d)

    def is_zero(self):
        return not self._d

    def degree(self) -> int:
        return max((len(w) for w in self._d), default=0)

    def _check(self, other):
        if not isinstance(other, QMatElem):
            raise TypeError("expected a QMatElem")
        if other.ambient != self.ambient:
            raise AmbientMismatch("elements live in different quantum matrix algebras")

    def __add__(self, other):
        self._check(other)
        d = {w: dict(c) for w, c in self._d.items()}
        for w, c in other._d.items():
            _acc(d, w, c)
        return QMatElem._raw(self.ambient, d)

    def __neg__(self):
        return QMatElem._raw(self.ambient, {w: {k: -x for k, x in c.items()} for w, c in self._d.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: QCoeff | int) -> "QMatElem":
        if isinstance(c, int):
            c = QCoeff(c)
        d = {}
        for w, x in self._d.items():
            y = _poly_mul_coeff(x, c.terms)
            if y:
                d[w] = y
        return QMatElem._raw(self.ambient, d)

    def shift(self, k: int) -> "QMatElem":
        return QMatElem._raw(self.ambient, {w: {a + k: x for a, x in c.items()} for w, c in self._d.items()})

    def __mul__(self, other):
        if isinstance(other, (int, QCoeff)):
            return self.scale(other)
        return qm_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, QCoeff)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, QMatElem):
            return NotImplemented
        return self.ambient == other.ambient and self._d == other._d

    def __hash__(self):
        return hash((self.ambient, tuple(sorted((w, tuple(sorted(c.items()))) for w, c in self._d.items()))))

    def at_q_one(self, matrix) -> int:
        """Evaluate at ``q = 1`` on a numeric ``k x n`` matrix (commutative shadow)."""
        n = self.ambient[1]
        tot = 0
        for w, c in self._d.items():
            val = sum(c.values())
            for g in w:
                val *= matrix[g // n][g % n]
            tot += val
        return tot

    def to_json(self):
        n = self.ambient[1]
        terms = []
        for w in sorted(self._d):
            runs = []
            for g, grp in itertools.groupby(w):
                runs.append([g // n + 1, g % n + 1, len(list(grp))])
            terms.append({"word": runs, "coeff": [[k, self._d[w][k]] for k in sorted(self._d[w])]})
        return {"ambient": list(self.ambient), "terms": terms}

    @classmethod
    def from_json(cls, data) -> "QMatElem":
        k, n = data["ambient"]
        d = {}
        for t in data["terms"]:
            w = []
            for row, col, e in t["word"]:
                w.extend([(row - 1) * n + (col - 1)] * e)
            d[tuple(w)] = {int(a): int(b) for a, b in t["coeff"]}
        return cls((k, n), d)

    def __repr__(self):
        n = self.ambient[1]
        if not self._d:
            return "0"
        parts = []
        for w in sorted(self._d):
            mon = "*".join(f"x{g // n + 1}{g % n + 1}" for g in w) or "1"
            parts.append(f"({QCoeff(self._d[w])}){mon}")
        return " + ".join(parts)


def qm_mul(a: QMatElem, b: QMatElem) -> QMatElem:
    a._check(b)
    st = _Straightener.get(*a.ambient)
    out: Poly = {}
    for w1, c1 in a._d.items():
        for w2, c2 in b._d.items():
            c12 = _poly_mul_coeff(c1, c2)
            for w, c in st.mul_words(w1, w2).items():
                _acc(out, w, _poly_mul_coeff(c12, c))
    return QMatElem._raw(a.ambient, out)


def qm_prod(factors: Sequence[QMatElem], ambient=None) -> QMatElem:
    if not factors:
        if ambient is None:
            raise ValueError("empty product needs an ambient")
        return QMatElem.one(ambient)
    out = factors[0]
    for f in factors[1:]:
        out = qm_mul(out, f)
    return out


def _rewrite_once(w: Word, pos: int, n: int) -> List[Tuple[Dict[int, int], Word]]:
    """Apply the straightening rule at adjacent position ``pos`` of ``w``."""
    y, x = w[pos], w[pos + 1]
    j, d = divmod(y, n)
    i, c = divmod(x, n)
    pre, post = w[:pos], w[pos + 2:]
    if j == i or d == c:
        return [({-2: 1}, pre + (x, y) + post)]
    if d > c:
        return [({0: 1}, pre + (x, y) + post), ({2: -1, -2: 1}, pre + (i * n + d, j * n + c) + post)]
    return [({0: 1}, pre + (x, y) + post)]


def nf_reduce(words: Mapping[Word, Mapping[int, int] | QCoeff | int] | Iterable[int], ambient: Tuple[int, int], strategy: str = "leftmost") -> QMatElem:
    """Reduce an arbitrary linear combination of words to PBW normal form.

    Rewrites one out-of-order adjacent pair at a time.  ``strategy`` picks the
    leftmost or rightmost such pair, or ``"random"``; the result must not
    depend on the choice.  This is the plain rewriting system; products of
    normal-form elements go through the memoized :func:`qm_mul` instead.
    """
    import random as _random

    if not isinstance(words, Mapping):
        words = {tuple(words): {0: 1}}
    n = ambient[1]
    todo: Poly = {}
    for w, c in words.items():
        if isinstance(c, QCoeff):
            c = c.terms
        elif isinstance(c, int):
            c = {0: c}
        _acc(todo, tuple(w), c)
    done: Poly = {}
    rng = _random.Random(0)
    while todo:
        w, c = todo.popitem()
        bad = [p for p in range(len(w) - 1) if w[p] > w[p + 1]]
        if not bad:
            _acc(done, w, c)
            continue
        if strategy == "leftmost":
            pos = bad[0]
        elif strategy == "rightmost":
            pos = bad[-1]
        else:
            pos = rng.choice(bad)
        for cc, w2 in _rewrite_once(w, pos, n):
            _acc(todo, w2, _poly_mul_coeff(cc, c))
    return QMatElem._raw(tuple(ambient), done)


def _perm_length(p: Sequence[int]) -> int:
    return sum(1 for a in range(len(p)) for b in range(a + 1, len(p)) if p[a] > p[b])


def quantum_minor(cols: MinorLabel | Sequence[int], ambient: Tuple[int, int], rows: Sequence[int] | None = None) -> QMatElem:
    """``sum_sigma (-q)^{l(sigma)} x[r1, c_sigma(1)] ... x[rm, c_sigma(m)]``."""
    cols = cols.columns if isinstance(cols, MinorLabel) else tuple(cols)
    k, n = ambient
    if rows is None:
        rows = tuple(range(1, k + 1))
    if len(rows) != len(cols):
        raise ValueError("row and column sets must have the same size")
    if any(not 1 <= c <= n for c in cols) or any(not 1 <= r <= k for r in rows):
        raise ValueError("minor index outside the ambient")
    if list(cols) != sorted(set(cols)) or list(rows) != sorted(set(rows)):
        raise ValueError("minor indices must be strictly increasing")
    terms: Poly = {}
    for perm in itertools.permutations(range(len(cols))):
        ell = _perm_length(perm)
        w = tuple((rows[a] - 1) * n + (cols[perm[a]] - 1) for a in range(len(cols)))
        _acc(terms, w, {2 * ell: (-1) ** ell})
    return nf_reduce(terms, ambient)


def quasi_exp_minors(a: QMatElem, b: QMatElem) -> int:
    """The integer ``c`` with ``a b = q^c b a`` in normal form."""
    a._check(b)
    if a.is_zero() or b.is_zero():
        raise ValueError("quasi-commutation exponent of zero is undefined")
    ab = qm_mul(a, b)
    ba = qm_mul(b, a)
    if set(ab._d) != set(ba._d):
        raise NotQuasiCommuting("products have different supports")
    w = next(iter(ab._d))
    shift = min(ab._d[w]) - min(ba._d[w])
    if shift % 2 or ba.shift(shift) != ab:
        raise NotQuasiCommuting("elements do not quasi-commute")
    return shift // 2


def build_L_oracle(cluster: Sequence[QMatElem], labels: Sequence[str] | None = None) -> List[List[int]]:
    r = len(cluster)
    L = [[0] * r for _ in range(r)]
    for i in range(r):
        for j in range(i + 1, r):
            try:
                c = quasi_exp_minors(cluster[i], cluster[j])
            except NotQuasiCommuting as exc:
                names = (labels[i], labels[j]) if labels else (i, j)
                raise NotQuasiCommuting(f"{names[0]} and {names[1]} do not quasi-commute") from exc
            L[i][j] = c
            L[j][i] = -c
    return L


class _PowerCache:
    """Normal forms of ordered products ``g_1^{e_1} ... g_r^{e_r}``."""

    def __init__(self, assignment: Sequence[QMatElem]):
        self.assignment = list(assignment)
        self.ambient = assignment[0].ambient
        self._memo: Dict[Tuple[int, ...], QMatElem] = {(0,) * len(assignment): QMatElem.one(self.ambient)}

    def get(self, e: Tuple[int, ...]) -> QMatElem:
        res = self._memo.get(e)
        if res is not None:
            return res
        last = max(i for i, x in enumerate(e) if x)
        prev = list(e)
        prev[last] -= 1
        res = qm_mul(self.get(tuple(prev)), self.assignment[last])
        self._memo[e] = res
        return res


def check_assignment(frame_L: Sequence[Sequence[int]], assignment: Sequence[QMatElem]) -> None:
    L = build_L_oracle(assignment)
    if [list(r) for r in frame_L] != L:
        raise FrameMismatch("assignment quasi-commutation exponents differ from the frame")


def phi_embed(t: TorusElem, assignment: Sequence[QMatElem], checked: bool = False, cache: _PowerCache | None = None) -> QMatElem:
    """Map a torus element with non-negative exponents into K_q[M(k, n)].

    ``M(e) -> v^{sum_{i<j} e_i e_j l_ji} NF(g_1^{e_1} ... g_r^{e_r})``.
    """
    if len(assignment) != t.frame.r:
        raise FrameMismatch("assignment length differs from the frame size")
    if not checked:
        check_assignment(t.frame.L, assignment)
    cache = cache or _PowerCache(assignment)
    out = QMatElem._raw(assignment[0].ambient, {})
    for e, c in t._d.items():
        if min(e) < 0:
            raise NegativeExponent(f"exponent {e} has a negative entry")
        norm = t.frame.normalization(e)
        out = out + cache.get(e).scale(QCoeff(c)).shift(norm)
    return out


def verify_cluster_variable(t: TorusElem, candidate: QMatElem, assignment: Sequence[QMatElem], checked: bool = False, cache: _PowerCache | None = None) -> bool:
    """Decide ``t == candidate`` in the skew field.

    With ``d`` the componentwise-minimal vector clearing the negative
    exponents of ``t``, compares ``phi(M(d) t)`` with ``phi(M(d)) candidate``.
    """
    if not checked:
        check_assignment(t.frame.L, assignment)
    cache = cache or _PowerCache(assignment)
    d = tuple(max(0, -x) for x in t.min_exponents())
    md = TorusElem.monomial(t.frame, d)
    lhs = phi_embed(md * t, assignment, checked=True, cache=cache)
    rhs = qm_mul(phi_embed(md, assignment, checked=True, cache=cache), candidate)
    return lhs == rhs
