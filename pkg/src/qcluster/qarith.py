"""Exact scalars in Z[v, v^-1] (v = q^(1/2)) and based quantum tori.

All q-powers are stored on the v scale: q^k is the v-exponent 2k.

A :class:`TorusElem` is a finite sum of normalized monomials ``M(a)`` over a
skew-symmetric integer matrix ``L`` (the :class:`Frame`).  The normalized
monomials multiply as ``M(a) M(b) = v^{a^T L b} M(a + b)``.
"""
from __future__ import annotations

import heapq
import json
from typing import Dict, Iterable, Mapping, Sequence, Tuple

ExpVec = Tuple[int, ...]


class InexactDivision(ArithmeticError):
    """Raised when an exact quotient does not exist."""


class NotQuasiCommuting(ValueError):
    pass


class FrameMismatch(ValueError):
    pass


# ---------------------------------------------------------------------------
# scalar ring
# ---------------------------------------------------------------------------

def _clean(d: Dict[int, int]) -> Dict[int, int]:
    return {k: c for k, c in d.items() if c}


class QCoeff:
    """Laurent polynomial in ``v`` with integer coefficients.

    >>> (QCoeff.q(1) - QCoeff.q(-1)) * (QCoeff.q(1) + QCoeff.q(-1)) == QCoeff.q(2) - QCoeff.q(-2)
    True
    """

    __slots__ = ("_t", "_hash")

    def __init__(self, terms: Mapping[int, int] | int = 0):
        if isinstance(terms, int):
            terms = {0: terms}
        self._t: Dict[int, int] = _clean(dict(terms))
        self._hash = None

    @classmethod
    def v(cls, k: int = 1, c: int = 1) -> "QCoeff":
        return cls({k: c})

    @classmethod
    def q(cls, k: int = 1, c: int = 1) -> "QCoeff":
        return cls({2 * k: c})

    @property
    def terms(self) -> Dict[int, int]:
        return dict(self._t)

    def items(self):
        return sorted(self._t.items())

    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self):
        return bool(self._t)

    def __eq__(self, other):
        if isinstance(other, int):
            other = QCoeff(other)
        if not isinstance(other, QCoeff):
            return NotImplemented
        return self._t == other._t

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(sorted(self._t.items())))
        return self._hash

    def __add__(self, other):
        if isinstance(other, int):
            other = QCoeff(other)
        d = dict(self._t)
        for k, c in other._t.items():
            d[k] = d.get(k, 0) + c
        return QCoeff(d)

    __radd__ = __add__

    def __neg__(self):
        return QCoeff({k: -c for k, c in self._t.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = QCoeff(other)
        return self + (-other)

    def __rsub__(self, other):
        return QCoeff(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return QCoeff({k: c * other for k, c in self._t.items()})
        if not isinstance(other, QCoeff):
            return NotImplemented
        d: Dict[int, int] = {}
        for a, x in self._t.items():
            for b, y in other._t.items():
                d[a + b] = d.get(a + b, 0) + x * y
        return QCoeff(d)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = QCoeff(1)
        for _ in range(e):
            out = out * self
        return out

    def shift(self, k: int) -> "QCoeff":
        """Multiply by ``v^k``."""
        return QCoeff({a + k: c for a, c in self._t.items()})

    def divexact(self, other: "QCoeff") -> "QCoeff":
        return QCoeff(_laurent_divexact(self._t, other._t))

    def at_one(self) -> int:
        return sum(self._t.values())

    def degrees(self) -> Tuple[int, int]:
        return min(self._t), max(self._t)

    def all_even(self) -> bool:
        return all(k % 2 == 0 for k in self._t)

    def to_json(self):
        return [[k, c] for k, c in sorted(self._t.items())]

    @classmethod
    def from_json(cls, data) -> "QCoeff":
        return cls({int(k): int(c) for k, c in data})

    def __repr__(self):
        if not self._t:
            return "0"
        parts = []
        for k, c in sorted(self._t.items(), reverse=True):
            if k == 0:
                parts.append(f"{c}")
            else:
                parts.append(f"{c}*v^{k}" if c != 1 else f"v^{k}")
        return " + ".join(parts)


def _laurent_divexact(num: Dict[int, int], den: Dict[int, int]) -> Dict[int, int]:
    """Exact division in Z[v^{+-1}] by long division from the top degree."""
    if not den:
        raise ZeroDivisionError("division by zero QCoeff")
    if not num:
        return {}
    rem = dict(num)
    dtop = max(den)
    dlow = min(den)
    lc = den[dtop]
    nlow = min(num)
    out: Dict[int, int] = {}
    while rem:
        top = max(rem)
        k = top - dtop
        if k < nlow - dlow:
            raise InexactDivision("QCoeff division has a remainder")
        c, r = divmod(rem[top], lc)
        if r:
            raise InexactDivision("QCoeff division has a non-integral quotient")
        out[k] = c
        for e, x in den.items():
            kk = e + k
            val = rem.get(kk, 0) - c * x
            if val:
                rem[kk] = val
            else:
                rem.pop(kk, None)
    return out


ONE = QCoeff(1)


# ---------------------------------------------------------------------------
# quantum torus
# ---------------------------------------------------------------------------

class Frame:
    """Skew-symmetric integer matrix ``L`` defining the torus commutation."""

    __slots__ = ("L", "r", "_hash")

    def __init__(self, L: Sequence[Sequence[int]]):
        L = tuple(tuple(int(x) for x in row) for row in L)
        r = len(L)
        for i in range(r):
            if len(L[i]) != r:
                raise ValueError("L must be square")
            for j in range(r):
                if L[i][j] != -L[j][i]:
                    raise ValueError(f"L is not skew-symmetric at ({i}, {j})")
        self.L = L
        self.r = r
        self._hash = hash(L)

    def __eq__(self, other):
        return isinstance(other, Frame) and (self is other or self.L == other.L)

    def __hash__(self):
        return self._hash

    def form(self, a: ExpVec, b: ExpVec) -> int:
        """The skew form ``a^T L b`` (v-exponent of ``M(a) M(b) / M(a+b)``)."""
        L = self.L
        tot = 0
        for i, ai in enumerate(a):
            if ai:
                row = L[i]
                for j, bj in enumerate(b):
                    if bj:
                        tot += ai * row[j] * bj
        return tot

    def row_form(self, a: ExpVec) -> Tuple[int, ...]:
        """``a^T L`` as a vector."""
        L = self.L
        out = [0] * self.r
        for i, ai in enumerate(a):
            if ai:
                row = L[i]
                for j in range(self.r):
                    out[j] += ai * row[j]
        return tuple(out)

    def normalization(self, a: ExpVec) -> int:
        """v-exponent ``sum_{i<j} a_i a_j l_ji`` of ``M(a)`` relative to ``X^a``."""
        L = self.L
        tot = 0
        nz = [(i, x) for i, x in enumerate(a) if x]
        for p, (i, ai) in enumerate(nz):
            for j, aj in nz[p + 1:]:
                tot += ai * aj * L[j][i]
        return tot

    def unit(self, i: int) -> ExpVec:
        e = [0] * self.r
        e[i] = 1
        return tuple(e)


def mono_mul(a: ExpVec, b: ExpVec, frame: Frame) -> Tuple[QCoeff, ExpVec]:
    """``M(a) M(b) = v^lam M(a+b)``; returns ``(v^lam, a+b)``."""
    if len(a) != frame.r or len(b) != frame.r:
        raise FrameMismatch("exponent length does not match the frame")
    return QCoeff.v(frame.form(a, b)), tuple(x + y for x, y in zip(a, b))


def _degkey(e: ExpVec):
    return (sum(e), e)


def _neg_degkey(e: ExpVec):
    return (-sum(e), tuple(-x for x in e))


def _add_into(dst: Dict[ExpVec, Dict[int, int]], e: ExpVec, c: Mapping[int, int], shift: int = 0, scale: int = 1):
    slot = dst.get(e)
    if slot is None:
        slot = dst[e] = {}
    for k, x in c.items():
        kk = k + shift
        val = slot.get(kk, 0) + scale * x
        if val:
            slot[kk] = val
        else:
            del slot[kk]
    if not slot:
        del dst[e]


class TorusElem:
    """Element of the based quantum torus over ``frame``.

    Terms map an exponent vector to its coefficient; internally the
    coefficient is kept as a plain ``{v_exponent: int}`` dict and is never
    mutated after construction.
    """

    __slots__ = ("frame", "_d", "_key", "_hash")

    def __init__(self, frame: Frame, terms: Mapping[ExpVec, QCoeff | Mapping[int, int] | int] | None = None):
        self.frame = frame
        d: Dict[ExpVec, Dict[int, int]] = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != frame.r:
                raise FrameMismatch("exponent length does not match the frame")
            if isinstance(c, QCoeff):
                c = c._t
            elif isinstance(c, int):
                c = {0: c}
            _add_into(d, e, c)
        self._d = d
        self._key = None
        self._hash = None

    @classmethod
    def _raw(cls, frame: Frame, d: Dict[ExpVec, Dict[int, int]]) -> "TorusElem":
        obj = cls.__new__(cls)
        obj.frame = frame
        obj._d = d
        obj._key = None
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, frame: Frame, a: ExpVec, coeff: QCoeff | int = 1) -> "TorusElem":
        return cls(frame, {tuple(a): coeff})

    @classmethod
    def generator(cls, frame: Frame, i: int) -> "TorusElem":
        return cls.monomial(frame, frame.unit(i))

    @classmethod
    def one(cls, frame: Frame) -> "TorusElem":
        return cls.monomial(frame, (0,) * frame.r)

    # -- inspection -------------------------------------------------------
    def terms(self) -> Dict[ExpVec, QCoeff]:
        return {e: QCoeff(c) for e, c in self._d.items()}

    def coeff(self, e: ExpVec) -> QCoeff:
        return QCoeff(self._d.get(tuple(e), {}))

    def is_zero(self) -> bool:
        return not self._d

    def __len__(self):
        return len(self._d)

    def support(self):
        return sorted(self._d, key=_degkey)

    def leading(self) -> ExpVec:
        return max(self._d, key=_degkey)

    def trailing(self) -> ExpVec:
        return min(self._d, key=_degkey)

    def min_exponents(self) -> ExpVec:
        return tuple(min(col) for col in zip(*self._d)) if self._d else (0,) * self.frame.r

    def is_monomial(self) -> bool:
        return len(self._d) == 1

    def v_exponents(self):
        for c in self._d.values():
            yield from c

    def all_even(self) -> bool:
        return all(k % 2 == 0 for k in self.v_exponents())

    def at_q_one(self) -> Dict[ExpVec, int]:
        """Commutative shadow: coefficients evaluated at ``v = 1``."""
        out = {}
        for e, c in self._d.items():
            s = sum(c.values())
            if s:
                out[e] = s
        return out

    def _check(self, other: "TorusElem"):
        if not isinstance(other, TorusElem):
            raise TypeError("expected a TorusElem")
        if other.frame is not self.frame and other.frame != self.frame:
            raise FrameMismatch("torus elements live over different frames")

    # -- ring operations ----------------------------------------------------
    def __add__(self, other: "TorusElem") -> "TorusElem":
        self._check(other)
        d = {e: dict(c) for e, c in self._d.items()}
        for e, c in other._d.items():
            _add_into(d, e, c)
        return TorusElem._raw(self.frame, d)

    def __neg__(self):
        return TorusElem._raw(self.frame, {e: {k: -x for k, x in c.items()} for e, c in self._d.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: QCoeff | int) -> "TorusElem":
        if isinstance(c, int):
            c = QCoeff(c)
        if c.is_zero():
            return TorusElem._raw(self.frame, {})
        d = {}
        for e, x in self._d.items():
            slot: Dict[int, int] = {}
            for k, y in x.items():
                for kk, z in c._t.items():
                    slot[k + kk] = slot.get(k + kk, 0) + y * z
            slot = _clean(slot)
            if slot:
                d[e] = slot
        return TorusElem._raw(self.frame, d)

    def shift(self, k: int) -> "TorusElem":
        """Multiply by ``v^k``."""
        return TorusElem._raw(self.frame, {e: {a + k: x for a, x in c.items()} for e, c in self._d.items()})

    def __mul__(self, other: "TorusElem") -> "TorusElem":
        if isinstance(other, (int, QCoeff)):
            return self.scale(other)
        self._check(other)
        frame = self.frame
        out: Dict[ExpVec, Dict[int, int]] = {}
        bterms = [(b, [(j, x) for j, x in enumerate(b) if x], cb) for b, cb in other._d.items()]
        for a, ca in self._d.items():
            aL = frame.row_form(a)
            for b, bnz, cb in bterms:
                lam = 0
                for j, x in bnz:
                    lam += aL[j] * x
                e = tuple(x + y for x, y in zip(a, b))
                slot = out.get(e)
                if slot is None:
                    slot = out[e] = {}
                for ka, xa in ca.items():
                    base = ka + lam
                    for kb, xb in cb.items():
                        kk = base + kb
                        slot[kk] = slot.get(kk, 0) + xa * xb
        d = {}
        for e, slot in out.items():
            slot = _clean(slot)
            if slot:
                d[e] = slot
        return TorusElem._raw(frame, d)

    def __rmul__(self, other):
        if isinstance(other, (int, QCoeff)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int) -> "TorusElem":
        out = TorusElem.one(self.frame)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, TorusElem):
            return NotImplemented
        return self.frame == other.frame and self._d == other._d

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.canonical_key())
        return self._hash

    # -- serialization ------------------------------------------------------
    def canonical_key(self) -> bytes:
        if self._key is None:
            if not self._d:
                self._key = b"0"
            else:
                parts = []
                for e in sorted(self._d):
                    c = self._d[e]
                    parts.append(",".join(map(str, e)) + ":" + ",".join(f"{k}/{c[k]}" for k in sorted(c)))
                self._key = ";".join(parts).encode()
        return self._key

    def to_json(self):
        return [
            {"exp": list(e), "coeff": [[k, self._d[e][k]] for k in sorted(self._d[e])]}
            for e in sorted(self._d)
        ]

    @classmethod
    def from_json(cls, frame: Frame, data) -> "TorusElem":
        terms = {}
        for t in data:
            terms[tuple(t["exp"])] = QCoeff.from_json(t["coeff"])
        return cls(frame, terms)

    def __repr__(self):
        if not self._d:
            return "TorusElem(0)"
        parts = []
        for e in sorted(self._d, key=_degkey, reverse=True):
            parts.append(f"({QCoeff(self._d[e])})M{list(e)}")
        return " + ".join(parts)


def torus_mul(s: TorusElem, t: TorusElem) -> TorusElem:
    return s * t


def torus_add(s: TorusElem, t: TorusElem) -> TorusElem:
    return s + t


def torus_canonical_key(s: TorusElem) -> bytes:
    return s.canonical_key()


def torus_commutation_exponent(s: TorusElem, t: TorusElem) -> int:
    """The integer ``c`` with ``s t = q^c t s``.

    Raises :class:`NotQuasiCommuting` when no single power of ``q`` works.
    """
    s._check(t)
    if s.is_zero() or t.is_zero():
        raise ValueError("commutation exponent of zero is undefined")
    if s.is_monomial() and t.is_monomial():
        lam = s.frame.form(next(iter(s._d)), next(iter(t._d)))
        return lam
    st = s * t
    ts = t * s
    e = st.leading()
    if e not in ts._d:
        raise NotQuasiCommuting("products have different supports")
    shift = min(st._d[e]) - min(ts._d[e])
    if shift % 2 or ts.shift(shift) != st:
        raise NotQuasiCommuting("elements do not quasi-commute")
    return shift // 2


def torus_exact_div(s: TorusElem, t: TorusElem, side: str = "right") -> TorusElem:
    """Exact quotient in the quantum torus.

    ``side="right"`` returns ``u`` with ``u t = s``; ``side="left"`` returns
    ``u`` with ``t u = s``.  Leading terms are cancelled in degree-lex order;
    a candidate quotient term below ``trail(s) - trail(t)`` proves that no
    exact quotient exists.
    """
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    s._check(t)
    if t.is_zero():
        raise ZeroDivisionError("division by zero torus element")
    frame = s.frame
    if s.is_zero():
        return TorusElem._raw(frame, {})
    lt = t.leading()
    lc = t._d[lt]
    floor = _degkey(tuple(x - y for x, y in zip(s.trailing(), t.trailing())))
    tterms = list(t._d.items())
    rem = {e: dict(c) for e, c in s._d.items()}
    heap = [_neg_degkey(e) + (e,) for e in rem]
    heapq.heapify(heap)
    quo: Dict[ExpVec, Dict[int, int]] = {}
    while rem:
        while True:
            item = heapq.heappop(heap)
            e = item[-1]
            if e in rem:
                break
        a = tuple(x - y for x, y in zip(e, lt))
        if _degkey(a) < floor:
            raise InexactDivision("torus division leaves a nonzero remainder")
        lam = frame.form(a, lt) if side == "right" else frame.form(lt, a)
        try:
            c = _laurent_divexact(rem[e], {k + lam: x for k, x in lc.items()})
        except InexactDivision as exc:
            raise InexactDivision("torus division leaves a nonzero remainder") from exc
        quo[a] = c
        # rem -= c M(a) * t  (or t * c M(a))
        for b, cb in tterms:
            lam2 = frame.form(a, b) if side == "right" else frame.form(b, a)
            f = tuple(x + y for x, y in zip(a, b))
            slot = rem.get(f)
            fresh = slot is None
            if fresh:
                slot = rem[f] = {}
            for ka, xa in c.items():
                for kb, xb in cb.items():
                    kk = ka + kb + lam2
                    val = slot.get(kk, 0) - xa * xb
                    if val:
                        slot[kk] = val
                    else:
                        del slot[kk]
            if not slot:
                del rem[f]
            elif fresh:
                heapq.heappush(heap, _neg_degkey(f) + (f,))
    return TorusElem._raw(frame, quo)


def word_commute_oracle(word: Iterable[Tuple[int, int]], frame: Frame) -> Tuple[int, ExpVec]:
    """Reorder a word of generator powers into ``X_1^{a_1} ... X_r^{a_r}``.

    ``word`` is a sequence of ``(index, exponent)`` letters.  Uses only the
    raw relation ``X_j X_i = q^{l_ji} X_i X_j`` letter by letter and returns
    the accumulated v-exponent together with the summed exponent vector.
    Kept deliberately naive: it serves as an oracle for :meth:`Frame.form`.
    """
    letters = []
    for i, e in word:
        sign = 1 if e > 0 else -1
        letters.extend([(i, sign)] * abs(e))
    L = frame.L
    vexp = 0
    n = len(letters)
    for p in range(n):
        for q in range(n - 1 - p):
            (j, s), (i, t) = letters[q], letters[q + 1]
            if j > i:
                # X_j^s X_i^t = q^{s t l_ji} X_i^t X_j^s
                vexp += 2 * s * t * L[j][i]
                letters[q], letters[q + 1] = letters[q + 1], letters[q]
    a = [0] * frame.r
    for i, s in letters:
        a[i] += s
    return vexp, tuple(a)


def ordered_monomial_oracle(a: ExpVec, frame: Frame) -> Tuple[int, ExpVec]:
    """v-exponent of ``X^a`` (ordered product) in terms of ``M(a)``."""
    return -frame.normalization(a), tuple(a)


def dumps_torus(s: TorusElem) -> str:
    return json.dumps(s.to_json(), separators=(",", ":"))
