"""Interval Fourier vectors with polynomial tail bounds.

A ``TailVector`` stores finitely many explicit interval coefficients (the
head, modes 1..n) plus a uniform bound on all higher modes: coefficient k > n
lies in ``tail_C / k**tail_s``.  The represented set is

    { v : v_k in head[k] for k <= n,  v_k in tail_C / k^tail_s for k > n }.

Sine vectors have no constant term; cosine vectors carry one.  The tail may
decay slowly or grow (``tail_s <= 1``, even negative): such vectors represent
sets that are unbounded in sup norm.  They are legal values -- only norm
queries refuse them.

The head always starts the tail at ``n = len(head)``; the re-indexing
operations (`extend_head`, `absorb_head`, `reindex_lower_s`) convert between
representations without losing containment.
"""

from __future__ import annotations

import numpy as np

from . import interval as iv
from .errors import (
    AdmissibilityViolation,
    BasisMismatch,
    ExponentNotSummable,
    UnboundedRepresentation,
)
from .interval import Interval

SINE = "sin"
COSINE = "cos"

_ZERO = Interval(0.0)
_UNIT = Interval(-1.0, 1.0)


class TailVector:
    """Immutable interval Fourier vector (head + polynomial tail)."""

    __slots__ = ("basis", "const", "head_lo", "head_hi", "tail_C", "tail_s")

    def __init__(self, basis, head_lo, head_hi, tail_C=_ZERO, tail_s=2.0, const=_ZERO):
        if basis not in (SINE, COSINE):
            raise BasisMismatch(f"unknown basis {basis!r}")
        head_lo = np.asarray(head_lo, float)
        head_hi = np.asarray(head_hi, float)
        if head_lo.shape != head_hi.shape or head_lo.ndim != 1:
            raise ValueError("head arrays must be 1-d with equal length")
        if np.any(head_lo > head_hi):
            raise ValueError("inverted head interval")
        head_lo = head_lo.copy()
        head_hi = head_hi.copy()
        head_lo.flags.writeable = False
        head_hi.flags.writeable = False
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "head_lo", head_lo)
        object.__setattr__(self, "head_hi", head_hi)
        object.__setattr__(self, "tail_C", tail_C)
        object.__setattr__(self, "tail_s", float(tail_s))
        object.__setattr__(self, "const", const if basis == COSINE else _ZERO)

    def __setattr__(self, name, value):
        raise AttributeError("TailVector is immutable")

    # -- constructors ----------------------------------------------------

    @staticmethod
    def sine(head, tail_C=_ZERO, tail_s=2.0) -> "TailVector":
        lo, hi = iv.varr(head)
        return TailVector(SINE, lo, hi, tail_C, tail_s)

    @staticmethod
    def cosine(const, head, tail_C=_ZERO, tail_s=2.0) -> "TailVector":
        lo, hi = iv.varr(head)
        return TailVector(COSINE, lo, hi, tail_C, tail_s, const=Interval._coerce(const))

    @staticmethod
    def zeros(basis, n, tail_s=2.0) -> "TailVector":
        z = np.zeros(n)
        return TailVector(basis, z, z.copy(), _ZERO, tail_s)

    def replace(self, **kw) -> "TailVector":
        args = dict(
            basis=self.basis,
            head_lo=self.head_lo,
            head_hi=self.head_hi,
            tail_C=self.tail_C,
            tail_s=self.tail_s,
            const=self.const,
        )
        args.update(kw)
        return TailVector(**args)

    # -- queries ---------------------------------------------------------

    @property
    def n_head(self) -> int:
        return len(self.head_lo)

    def coeff(self, k: int) -> Interval:
        """Interval bound for mode k (k >= 1; k = 0 is the cosine constant)."""
        if k == 0:
            return self.const
        if k <= self.n_head:
            return Interval(self.head_lo[k - 1], self.head_hi[k - 1])
        return self.tail_C / iv.ipow(k, self.tail_s)

    def head_intervals(self) -> list[Interval]:
        return [Interval(lo, hi) for lo, hi in zip(self.head_lo, self.head_hi)]

    def tail_is_zero(self) -> bool:
        return self.tail_C.lo == 0.0 and self.tail_C.hi == 0.0

    def is_bounded(self) -> bool:
        return self.tail_s > 1.0 or self.tail_is_zero()

    def head_mag(self) -> np.ndarray:
        return np.maximum(np.abs(self.head_lo), np.abs(self.head_hi))

    def max_head_mag(self) -> float:
        return float(self.head_mag().max()) if self.n_head else 0.0

    def __repr__(self):
        return (
            f"TailVector({self.basis}, n={self.n_head}, "
            f"tail={self.tail_C}/k^{self.tail_s:g})"
        )

    # -- serialization (certificate style) --------------------------------

    def to_lines(self) -> list[str]:
        lines = []
        if self.basis == COSINE:
            lines.append(f"0: {self.const.to_text()}")
        for k in range(1, self.n_head + 1):
            lines.append(f"{k}: {self.coeff(k).to_text()}")
        lines.append(
            f"tail: C={self.tail_C.to_text()} s={self.tail_s:.17g} n={self.n_head}"
        )
        return lines

    @staticmethod
    def from_lines(lines, basis=SINE) -> "TailVector":
        head = []
        const = _ZERO
        tail_C, tail_s = _ZERO, 2.0
        for raw in lines:
            line = raw.strip()
            if not line:
                continue
            if line.startswith("tail:"):
                parts = line[5:].split()
                for p in parts:
                    key, _, val = p.partition("=")
                    if key == "C":
                        tail_C = Interval.parse(val)
                    elif key == "s":
                        tail_s = float(val)
            else:
                k_str, _, rest = line.partition(":")
                k = int(k_str)
                if k == 0:
                    const = Interval.parse(rest)
                else:
                    head.append((k, Interval.parse(rest)))
        head.sort()
        coeffs = [c for _, c in head]
        if basis == COSINE:
            return TailVector.cosine(const, coeffs, tail_C, tail_s)
        return TailVector.sine(coeffs, tail_C, tail_s)


# -- elementwise algebra ---------------------------------------------------


def _check_basis(a: TailVector, b: TailVector):
    if a.basis != b.basis:
        raise BasisMismatch(f"{a.basis} vs {b.basis}")


def align_heads(a: TailVector, b: TailVector):
    """Extend the shorter head so both vectors share a tail start."""
    n = max(a.n_head, b.n_head)
    if a.n_head < n:
        a = extend_head(a, n)
    if b.n_head < n:
        b = extend_head(b, n)
    return a, b


def vadd(a: TailVector, b: TailVector) -> TailVector:
    """Elementwise sum; tails combine by the decay-rate case analysis.

    Equal exponents add the constants; otherwise the faster-decaying tail is
    absorbed into the slower one with the factor [0,1]/(n+1)^{|s1-s2|}.
    """
    _check_basis(a, b)
    a, b = align_heads(a, b)
    lo, hi = iv.vadd(a.head_lo, a.head_hi, b.head_lo, b.head_hi)
    n = a.n_head
    s1, s2 = a.tail_s, b.tail_s
    if a.tail_is_zero() and b.tail_is_zero():
        C, s = _ZERO, max(s1, s2)
    elif a.tail_is_zero():
        C, s = b.tail_C, s2
    elif b.tail_is_zero():
        C, s = a.tail_C, s1
    elif s1 == s2:
        C, s = a.tail_C + b.tail_C, s1
    elif s1 < s2:
        absorb = (Interval(0.0, 1.0) / iv.ipow(n + 1, s2 - s1)) * b.tail_C
        C, s = a.tail_C + absorb, s1
    else:
        absorb = (Interval(0.0, 1.0) / iv.ipow(n + 1, s1 - s2)) * a.tail_C
        C, s = b.tail_C + absorb, s2
    const = a.const + b.const if a.basis == COSINE else _ZERO
    return TailVector(a.basis, lo, hi, C, s, const=const)


def vneg(a: TailVector) -> TailVector:
    return vscale(a, Interval(-1.0))


def vsub(a: TailVector, b: TailVector) -> TailVector:
    return vadd(a, vneg(b))


def vscale(a: TailVector, c) -> TailVector:
    c = Interval._coerce(c)
    lo, hi = iv.vscale(a.head_lo, a.head_hi, c)
    const = a.const * c if a.basis == COSINE else _ZERO
    return TailVector(a.basis, lo, hi, a.tail_C * c, a.tail_s, const=const)


def reindex_lower_s(a: TailVector, s_new: float) -> TailVector:
    """Represent the same set with a slower tail decay s_new <= tail_s."""
    s_new = float(s_new)
    if s_new > a.tail_s:
        raise ValueError(f"cannot raise exponent {a.tail_s} -> {s_new}")
    if s_new == a.tail_s or a.tail_is_zero():
        return a.replace(tail_s=s_new)
    q = a.tail_C / iv.ipow(a.n_head + 1, a.tail_s - s_new)
    return a.replace(tail_C=iv.hull(_ZERO, q), tail_s=s_new)


def extend_head(a: TailVector, n_new: int) -> TailVector:
    """Materialize tail modes up to n_new as explicit head coefficients."""
    n = a.n_head
    if n_new < n:
        raise ValueError("extend_head shrinks the head; use absorb_head")
    if n_new == n:
        return a
    ks = np.arange(n + 1, n_new + 1, dtype=float)
    if a.tail_is_zero():
        new_lo = np.zeros(n_new - n)
        new_hi = np.zeros(n_new - n)
    else:
        pow_lo = np.array([iv.ipow(int(k), a.tail_s).lo for k in ks])
        pow_hi = np.array([iv.ipow(int(k), a.tail_s).hi for k in ks])
        inv_lo = iv.vnudge_down(1.0 / pow_hi)
        inv_hi = iv.vnudge_up(1.0 / pow_lo)
        new_lo, new_hi = iv.vscale(inv_lo, inv_hi, a.tail_C)
    lo = np.concatenate([a.head_lo, new_lo])
    hi = np.concatenate([a.head_hi, new_hi])
    return TailVector(a.basis, lo, hi, a.tail_C, a.tail_s, const=a.const)


def absorb_head(a: TailVector, k_new: int) -> TailVector:
    """Fold explicit modes above k_new into the tail constant."""
    n = a.n_head
    if k_new > n:
        raise ValueError("absorb_head grows the head; use extend_head")
    if k_new == n:
        return a
    C = a.tail_C
    for k in range(k_new + 1, n + 1):
        C = C.hull(a.coeff(k) * iv.ipow(k, a.tail_s))
    return TailVector(
        a.basis, a.head_lo[:k_new], a.head_hi[:k_new], C, a.tail_s, const=a.const
    )


# -- norms ------------------------------------------------------------------


def tail_sum_bound(C: Interval, s: float, n: int) -> Interval:
    """Upper bound |C| * n^(1-s)/(s-1) for the tail sum of |c_i|, i > n."""
    if s <= 1.0:
        raise ExponentNotSummable(f"s={s} <= 1")
    if n < 1:
        raise ValueError("n >= 1 required")
    if C.lo == 0.0 and C.hi == 0.0:
        return _ZERO
    mag = Interval(C.mag())
    bound = mag * iv.ipow(n, 1.0 - s) / Interval(s - 1.0)
    return Interval(0.0, bound.hi)


def sup_norm_bound(a: TailVector) -> Interval:
    """Upper bound on the C0 sup norm of every member function."""
    if not a.is_bounded():
        raise UnboundedRepresentation(f"tail s={a.tail_s} with C={a.tail_C}")
    total = iv.vsum(a.head_mag(), a.head_mag())
    total = Interval(0.0, total.hi)
    if a.basis == COSINE:
        total = total + Interval(0.0, a.const.mag())
    if not a.tail_is_zero():
        total = total + tail_sum_bound(a.tail_C, a.tail_s, a.n_head)
    return Interval(0.0, total.hi)


def h2_norm_sq_bound(a: TailVector) -> Interval:
    """Interval containing sum |u_k|^2 k^4 over every member (needs s > 5/2)."""
    if a.basis != SINE:
        raise BasisMismatch("H2 norm defined for sine vectors")
    lo_total = Interval(0.0)
    hi_total = Interval(0.0)
    for k in range(1, a.n_head + 1):
        c = a.coeff(k)
        mag = c.mag()
        mig = 0.0 if c.contains(0.0) else min(abs(c.lo), abs(c.hi))
        k4 = iv.ipow(k, 4)
        lo_total = lo_total + Interval(mig) * Interval(mig) * k4
        hi_total = hi_total + Interval(mag) * Interval(mag) * k4
    if not a.tail_is_zero():
        if a.tail_s <= 2.5:
            raise ExponentNotSummable(f"s={a.tail_s} <= 5/2")
        C2 = Interval(a.tail_C.mag())
        C2 = C2 * C2
        p = 2.0 * (a.tail_s - 2.0)
        tail = C2 * iv.ipow(a.n_head, 1.0 - p) / Interval(p - 1.0)
        hi_total = hi_total + Interval(0.0, tail.hi)
    return Interval(lo_total.lo, hi_total.hi)


# -- order and lattice -------------------------------------------------------


def _tails_comparable(a: TailVector, b: TailVector):
    """Bring both tails to the coarser exponent; None if incomparable."""
    if a.tail_s == b.tail_s:
        return a.tail_C, b.tail_C
    if a.tail_s > b.tail_s:
        return reindex_lower_s(a, b.tail_s).tail_C, b.tail_C
    # a decays slower than b: only a zero tail can be contained
    if a.tail_is_zero():
        return _ZERO, b.tail_C
    return None


def vsubset(a: TailVector, b: TailVector) -> bool:
    _check_basis(a, b)
    a, b = align_heads(a, b)
    if a.basis == COSINE and not a.const.subset(b.const):
        return False
    if np.any(a.head_lo < b.head_lo) or np.any(a.head_hi > b.head_hi):
        return False
    pair = _tails_comparable(a, b)
    if pair is None:
        return False
    Ca, Cb = pair
    return Ca.subset(Cb)


def vsubset_interior(a: TailVector, b: TailVector) -> bool:
    _check_basis(a, b)
    a, b = align_heads(a, b)
    if a.basis == COSINE and not a.const.subset_interior(b.const):
        return False
    if np.any(a.head_lo <= b.head_lo) or np.any(a.head_hi >= b.head_hi):
        return False
    pair = _tails_comparable(a, b)
    if pair is None:
        return False
    Ca, Cb = pair
    return Ca.subset_interior(Cb)


def vintersect(a: TailVector, b: TailVector) -> TailVector:
    """Modewise intersection; requires directly comparable tails."""
    _check_basis(a, b)
    a, b = align_heads(a, b)
    lo = np.maximum(a.head_lo, b.head_lo)
    hi = np.minimum(a.head_hi, b.head_hi)
    if np.any(lo > hi):
        raise ValueError("disjoint heads")
    if a.tail_s == b.tail_s:
        Cx = a.tail_C.intersect(b.tail_C)
        if Cx is iv.EMPTY:
            raise ValueError("disjoint tails")
        C, s = Cx, a.tail_s
    elif a.tail_is_zero():
        C, s = _ZERO, a.tail_s
    elif b.tail_is_zero():
        C, s = _ZERO, b.tail_s
    else:
        # either operand's tail contains the intersection; keep the one
        # with faster decay (tighter for large k)
        if a.tail_s > b.tail_s:
            C, s = a.tail_C, a.tail_s
        else:
            C, s = b.tail_C, b.tail_s
    const = a.const.intersect(b.const) if a.basis == COSINE else _ZERO
    if const is iv.EMPTY:
        raise ValueError("disjoint constants")
    return TailVector(a.basis, lo, hi, C, s, const=const)


def vsubset_tail_only(a: TailVector, b: TailVector) -> bool:
    pair = _tails_comparable(a, b)
    if pair is None:
        return False
    Ca, Cb = pair
    return Ca.subset(Cb)


def vhull(a: TailVector, b: TailVector) -> TailVector:
    _check_basis(a, b)
    a, b = align_heads(a, b)
    lo = np.minimum(a.head_lo, b.head_lo)
    hi = np.maximum(a.head_hi, b.head_hi)
    s = min(a.tail_s, b.tail_s)
    Ca = reindex_lower_s(a, s).tail_C
    Cb = reindex_lower_s(b, s).tail_C
    const = a.const.hull(b.const) if a.basis == COSINE else _ZERO
    return TailVector(a.basis, lo, hi, Ca.hull(Cb), s, const=const)


def zero_even_modes(a: TailVector) -> TailVector:
    """Pin even head modes to [0,0] (odd-subspace restriction)."""
    lo = a.head_lo.copy()
    hi = a.head_hi.copy()
    lo[1::2] = 0.0
    hi[1::2] = 0.0
    return TailVector(a.basis, lo, hi, a.tail_C, a.tail_s, const=a.const)


# -- phase-space wrappers ----------------------------------------------------


class PQSet:
    """Phase-space set X = X_P + X_Q: a bounded sine tail vector."""

    __slots__ = ("vector", "parity_odd")

    def __init__(self, vector: TailVector, parity_odd: bool = False):
        if vector.basis != SINE:
            raise BasisMismatch("phase-space sets use the sine basis")
        if not vector.is_bounded():
            raise UnboundedRepresentation("phase-space sets must be bounded (tail_s > 1)")
        if parity_odd:
            even_lo = vector.head_lo[1::2]
            even_hi = vector.head_hi[1::2]
            if np.any(even_lo != 0.0) or np.any(even_hi != 0.0):
                raise ValueError("parity restriction needs zero even head modes")
        object.__setattr__(self, "vector", vector)
        object.__setattr__(self, "parity_odd", bool(parity_odd))

    def __setattr__(self, name, value):
        raise AttributeError("PQSet is immutable")

    @property
    def n_head(self):
        return self.vector.n_head

    def replace_vector(self, vector: TailVector) -> "PQSet":
        return PQSet(vector, self.parity_odd)

    def __repr__(self):
        return f"PQSet({self.vector!r}, parity_odd={self.parity_odd})"


class VarPair:
    """Coupled (solution set, variational set) with independent decays."""

    __slots__ = ("u", "h")

    def __init__(self, u: PQSet, h: TailVector):
        if h.basis != SINE:
            raise BasisMismatch("variational sets use the sine basis")
        check_admissible(u.vector.tail_s, h.tail_s)
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "h", h)

    def __setattr__(self, name, value):
        raise AttributeError("VarPair is immutable")

    def __repr__(self):
        return f"VarPair(u={self.u!r}, h={self.h!r})"


def check_admissible(s1: float, s2: float):
    """Admissibility of the exponent pair for a variational representation."""
    if s1 <= 1.0:
        raise AdmissibilityViolation(f"s1={s1} <= 1")
    if s2 <= 0.0:
        if s1 + s2 <= 1.0:
            raise AdmissibilityViolation(f"s1+s2={s1 + s2} <= 1 with s2={s2} <= 0")
    elif s2 <= 1.0:
        if s1 - s2 <= 1.0:
            raise AdmissibilityViolation(f"s1-s2={s1 - s2} <= 1 with s2={s2} in (0,1]")
