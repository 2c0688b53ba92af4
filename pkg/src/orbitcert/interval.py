"""Outward-rounded interval arithmetic kernel.

Every numeric result in this package is an ``Interval`` produced here (or a
lo/hi array pair processed by the vectorized helpers at the bottom, which obey
the same containment contract).  The rounding strategy is software outward
rounding: after each native double operation the endpoints are nudged to the
adjacent representable number, except when the operation is provably exact.
No FPU rounding modes are touched, so values are safe to share between
threads and results do not depend on global state.

Containment contract: for any operation ``op`` and intervals ``A``, ``B``,
the returned interval contains ``{op(a, b) : a in A, b in B}``.
Transcendentals go through libm and are widened by 2 ulp per endpoint; the
certified error budget for them is 4 ulp.

Intervals are immutable.  ``+inf``/``-inf`` endpoints are permitted (they
appear only as tagged unbounded states), ``nan`` never is.
"""

from __future__ import annotations

import math
import re

import numpy as np

from .errors import DivisionByZeroInterval

_INF = math.inf

# n*u/(1-n*u) with u = 2^-53; standard bound for a float sum of n terms in
# any association order.
_U = 2.0 ** -53


def _gamma(n: int) -> float:
    nu = (n + 1) * _U
    return nu / (1.0 - nu)


def _down(x: float) -> float:
    return math.nextafter(x, -_INF)


def _up(x: float) -> float:
    return math.nextafter(x, _INF)


def _sig_bits(x: float) -> int:
    """Number of significant bits in the significand of a finite nonzero x."""
    m, _ = math.frexp(abs(x))
    mi = int(m * 9007199254740992.0)  # m * 2**53, exact
    return 54 - (mi & -mi).bit_length()


def _sum_is_exact(a: float, b: float, s: float) -> bool:
    if not math.isfinite(s):
        return False
    bb = s - a
    return (a - (s - bb)) + (b - bb) == 0.0


def _prod_is_exact(a: float, b: float, p: float) -> bool:
    if a == 0.0 or b == 0.0:
        return True
    if not math.isfinite(p) or abs(p) < 2.3e-308:
        return False
    sa = _sig_bits(a)
    sb = _sig_bits(b)
    # a power-of-two factor only shifts the exponent
    return sa == 1 or sb == 1 or sa + sb <= 53


class _Empty:
    """Marker returned by intersect() on disjoint inputs."""

    __slots__ = ()

    def __repr__(self):
        return "EMPTY"


EMPTY = _Empty()


class Interval:
    """Closed interval [lo, hi] with outward-rounded arithmetic."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo: float, hi: float | None = None):
        if hi is None:
            hi = lo
        lo = float(lo)
        hi = float(hi)
        if math.isnan(lo) or math.isnan(hi):
            raise ValueError("interval endpoints must not be NaN")
        if lo > hi:
            raise ValueError(f"inverted endpoints: [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    def __setattr__(self, name, value):
        raise AttributeError("Interval is immutable")

    # -- basic queries -------------------------------------------------

    def mid(self) -> float:
        m = 0.5 * (self.lo + self.hi)
        if math.isfinite(m):
            return m
        return 0.5 * self.lo + 0.5 * self.hi

    def width(self) -> float:
        return _up(self.hi - self.lo)

    def mag(self) -> float:
        """sup |x| over the interval (rounded up; exact for finite endpoints)."""
        return max(abs(self.lo), abs(self.hi))

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    def is_point(self) -> bool:
        return self.lo == self.hi

    def __eq__(self, other):
        return (
            isinstance(other, Interval)
            and self.lo == other.lo
            and self.hi == other.hi
        )

    def __hash__(self):
        return hash((self.lo, self.hi))

    def __repr__(self):
        return f"[{self.lo:.17g}, {self.hi:.17g}]"

    # -- arithmetic ----------------------------------------------------

    @staticmethod
    def _coerce(x) -> "Interval":
        if isinstance(x, Interval):
            return x
        return Interval(float(x))

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __add__(self, other):
        o = Interval._coerce(other)
        lo = self.lo + o.lo
        hi = self.hi + o.hi
        if not _sum_is_exact(self.lo, o.lo, lo):
            lo = _down(lo)
        if not _sum_is_exact(self.hi, o.hi, hi):
            hi = _up(hi)
        return Interval(lo, hi)

    __radd__ = __add__

    def __sub__(self, other):
        o = Interval._coerce(other)
        return self + (-o)

    def __rsub__(self, other):
        return Interval._coerce(other) - self

    def __mul__(self, other):
        o = Interval._coerce(other)
        cands = []
        for a in (self.lo, self.hi):
            for b in (o.lo, o.hi):
                p = a * b
                if math.isnan(p):  # 0 * inf: the endpoint product is 0
                    p = 0.0
                cands.append((a, b, p))
        lo_a, lo_b, lo = min(cands, key=lambda t: t[2])
        hi_a, hi_b, hi = max(cands, key=lambda t: t[2])
        if not _prod_is_exact(lo_a, lo_b, lo):
            lo = _down(lo)
        if not _prod_is_exact(hi_a, hi_b, hi):
            hi = _up(hi)
        return Interval(lo, hi)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = Interval._coerce(other)
        if o.lo <= 0.0 <= o.hi:
            raise DivisionByZeroInterval(f"0 in divisor {o}")
        exact_pow2 = o.is_point() and _sig_bits(o.lo) == 1
        cands = []
        for a in (self.lo, self.hi):
            for b in (o.lo, o.hi):
                q = a / b
                exact = exact_pow2 and math.isfinite(q) and (
                    q == 0.0 or abs(q) >= 2.3e-308
                )
                cands.append((q, exact))
        lo, lo_exact = min(cands, key=lambda t: t[0])
        hi, hi_exact = max(cands, key=lambda t: t[0])
        if not lo_exact:
            lo = _down(lo)
        if not hi_exact:
            hi = _up(hi)
        return Interval(lo, hi)

    def __rtruediv__(self, other):
        return Interval._coerce(other) / self

    # -- lattice -------------------------------------------------------

    def hull(self, other) -> "Interval":
        o = Interval._coerce(other)
        return Interval(min(self.lo, o.lo), max(self.hi, o.hi))

    def intersect(self, other):
        o = Interval._coerce(other)
        lo = max(self.lo, o.lo)
        hi = min(self.hi, o.hi)
        if lo > hi:
            return EMPTY
        return Interval(lo, hi)

    def subset(self, other: "Interval") -> bool:
        return other.lo <= self.lo and self.hi <= other.hi

    def subset_interior(self, other: "Interval") -> bool:
        return other.lo < self.lo and self.hi < other.hi

    # -- serialization -------------------------------------------------

    def to_text(self) -> str:
        return f"[{self.lo:.17g},{self.hi:.17g}]"

    @staticmethod
    def parse(text: str) -> "Interval":
        m = re.fullmatch(r"\s*\[\s*([^,\]]+)\s*,\s*([^,\]]+)\s*\]\s*", text)
        if m is None:
            raise ValueError(f"not an interval literal: {text!r}")
        return Interval(float(m.group(1)), float(m.group(2)))


ZERO = Interval(0.0)
ONE = Interval(1.0)


def hull(a, b) -> Interval:
    return Interval._coerce(a).hull(b)


def intersect(a, b):
    return Interval._coerce(a).intersect(b)


def subset(a: Interval, b: Interval) -> bool:
    return a.subset(b)


def subset_interior(a: Interval, b: Interval) -> bool:
    return a.subset_interior(b)


def add(a: Interval, b: Interval) -> Interval:
    return a + b


def sub(a: Interval, b: Interval) -> Interval:
    return a - b


def mul(a: Interval, b: Interval) -> Interval:
    return a * b


def div(a: Interval, b: Interval) -> Interval:
    return a / b


# -- transcendentals ---------------------------------------------------

# math.pi is the nearest double below pi, so [pi, nextafter(pi)] encloses it.
PI = Interval(math.pi, _up(math.pi))
TWO_PI = Interval(2.0 * math.pi, _up(2.0 * math.pi))
HALF_PI = Interval(0.5 * math.pi, _up(0.5 * math.pi))

# libm exp/expm1/log/sin on glibc are good to ~1 ulp; widen by 2 ulp per
# endpoint, staying inside the 4-ulp certified budget.
_LIBM_SLOP = 2


def _nudge(x: float, steps: int, direction: float) -> float:
    for _ in range(steps):
        x = math.nextafter(x, direction)
    return x


def _libm_enclose(f, x: float) -> tuple[float, float]:
    y = f(x)
    return _nudge(y, _LIBM_SLOP, -_INF), _nudge(y, _LIBM_SLOP, _INF)


def exp(a: Interval) -> Interval:
    if a.lo == 0.0 and a.hi == 0.0:
        return ONE
    lo = 0.0 if a.lo == -_INF else _libm_enclose(math.exp, a.lo)[0]
    hi = _INF if a.hi == _INF else _libm_enclose(math.exp, a.hi)[1]
    return Interval(max(lo, 0.0), hi)


def expm1(a: Interval) -> Interval:
    if a.lo == 0.0 and a.hi == 0.0:
        return ZERO
    lo = -1.0 if a.lo == -_INF else _libm_enclose(math.expm1, a.lo)[0]
    hi = _INF if a.hi == _INF else _libm_enclose(math.expm1, a.hi)[1]
    return Interval(max(lo, -1.0), hi)


def log(a: Interval) -> Interval:
    if a.lo <= 0.0:
        raise ValueError(f"log domain: {a}")
    if a.lo == 1.0 and a.hi == 1.0:
        return ZERO
    return Interval(
        _libm_enclose(math.log, a.lo)[0], _libm_enclose(math.log, a.hi)[1]
    )


def sin(a: Interval) -> Interval:
    """Enclosure of sin over the interval.

    Arguments wider than a full period return [-1, 1].  Otherwise the
    extrema locations are tested with interval arithmetic; when in doubt an
    extremum is assumed attained, which only widens the result.
    """
    if a.hi - a.lo >= TWO_PI.lo:
        return Interval(-1.0, 1.0)
    slo, shi = _libm_enclose(math.sin, a.lo)
    tlo, thi = _libm_enclose(math.sin, a.hi)
    lo = min(slo, tlo)
    hi = max(shi, thi)
    if _phase_hits(a, HALF_PI):
        hi = 1.0
    if _phase_hits(a, -HALF_PI):
        lo = -1.0
    return Interval(max(lo, -1.0), min(hi, 1.0))


def cos(a: Interval) -> Interval:
    return sin(a + HALF_PI)


def _phase_hits(a: Interval, offset: Interval) -> bool:
    """Whether a may contain offset + 2*pi*m for some integer m (conservative)."""
    q = (a - offset) / TWO_PI
    m = math.floor(q.hi)
    if m >= q.lo:
        return True
    # endpoint rounding may hide a hit right at the edge
    return q.hi - math.floor(q.hi) > 1.0 - 1e-12 or q.lo - math.floor(q.lo) < 1e-12


def sqrt(a: Interval) -> Interval:
    if a.lo < 0.0:
        raise ValueError(f"sqrt domain: {a}")
    lo = math.sqrt(a.lo)
    hi = math.sqrt(a.hi)
    # IEEE sqrt is correctly rounded, so one nudge suffices; skip it only
    # when lo*lo reproduces the radicand exactly (provably exact root).
    if not (_prod_is_exact(lo, lo, lo * lo) and lo * lo == a.lo):
        lo = _down(lo)
    if not (_prod_is_exact(hi, hi, hi * hi) and hi * hi == a.hi):
        hi = _up(hi)
    return Interval(max(lo, 0.0), hi)


def ipow(k: int, s) -> Interval:
    """Rigorous enclosure of k**s for an integer k >= 1.

    Small integer exponents use exact integer arithmetic (falling back to
    outward-rounded squaring precision-wise); everything else goes through
    exp(s*log k).
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if isinstance(s, Interval) and s.is_point():
        s = s.lo
    if not isinstance(s, Interval) and float(s) == int(s) and abs(s) <= 64:
        si = int(s)
        if si == 0:
            return ONE
        p = k ** abs(si)
        if p <= 2 ** 53:
            base = Interval(float(p))
        else:
            base = Interval(_down(float(p)), _up(float(p)))
        return ONE / base if si < 0 else base
    if k == 1:
        return ONE
    s_iv = s if isinstance(s, Interval) else Interval(float(s))
    return exp(s_iv * log(Interval(float(k))))


def pow_real(k: int, s: Interval) -> Interval:
    return ipow(k, s)


def expm1_div(lam: Interval, tau: Interval) -> Interval:
    """(e^(lam*tau) - 1) / lam; requires 0 not in lam."""
    if lam.lo <= 0.0 <= lam.hi:
        from .errors import EigenvalueContainsZero

        raise EigenvalueContainsZero(f"0 in {lam}")
    if tau.lo == 0.0 and tau.hi == 0.0:
        return ZERO
    return expm1(lam * tau) / lam


# -- vectorized helpers ------------------------------------------------
#
# Hot paths (convolutions, Jacobian transport) run on parallel lo/hi float64
# arrays.  Same containment contract as the scalar class; rounding is a
# plain 1-ulp outward nudge, plus an explicit accumulation bound for sums.

def varr(values) -> tuple[np.ndarray, np.ndarray]:
    """lo/hi arrays from a sequence of Intervals or numbers."""
    lo = np.array(
        [v.lo if isinstance(v, Interval) else float(v) for v in values], float
    )
    hi = np.array(
        [v.hi if isinstance(v, Interval) else float(v) for v in values], float
    )
    return lo, hi


def vnudge_down(x: np.ndarray) -> np.ndarray:
    return np.nextafter(x, -_INF)


def vnudge_up(x: np.ndarray) -> np.ndarray:
    return np.nextafter(x, _INF)


def vadd(alo, ahi, blo, bhi):
    return vnudge_down(alo + blo), vnudge_up(ahi + bhi)


def vsub(alo, ahi, blo, bhi):
    return vnudge_down(alo - bhi), vnudge_up(ahi - blo)


def vmul(alo, ahi, blo, bhi):
    p1 = alo * blo
    p2 = alo * bhi
    p3 = ahi * blo
    p4 = ahi * bhi
    lo = np.minimum(np.minimum(p1, p2), np.minimum(p3, p4))
    hi = np.maximum(np.maximum(p1, p2), np.maximum(p3, p4))
    return vnudge_down(lo), vnudge_up(hi)


def vscale(alo, ahi, c: Interval):
    p1 = alo * c.lo
    p2 = alo * c.hi
    p3 = ahi * c.lo
    p4 = ahi * c.hi
    lo = np.minimum(np.minimum(p1, p2), np.minimum(p3, p4))
    hi = np.maximum(np.maximum(p1, p2), np.maximum(p3, p4))
    return vnudge_down(lo), vnudge_up(hi)


def vsum(alo, ahi) -> Interval:
    """Rigorous interval enclosing the sum of an interval vector."""
    n = int(np.asarray(alo).size)
    if n == 0:
        return ZERO
    slo = float(np.sum(alo))
    shi = float(np.sum(ahi))
    g = _gamma(n)
    elo = g * float(np.sum(np.abs(alo)))
    ehi = g * float(np.sum(np.abs(ahi)))
    return Interval(_down(_down(slo) - _up(elo)), _up(_up(shi) + _up(ehi)))


def vdot(alo, ahi, blo, bhi) -> Interval:
    lo, hi = vmul(alo, ahi, blo, bhi)
    return vsum(lo, hi)


def vhull_zero(alo, ahi):
    """Per-entry hull with 0."""
    return np.minimum(alo, 0.0), np.maximum(ahi, 0.0)


def _mid_rad(lo: np.ndarray, hi: np.ndarray):
    mid = 0.5 * (lo + hi)
    bad = ~np.isfinite(mid)
    if np.any(bad):
        mid = np.where(bad, 0.5 * lo + 0.5 * hi, mid)
    rad = vnudge_up(np.maximum(hi - mid, mid - lo))
    return mid, rad


def imatmul(Alo, Ahi, Blo, Bhi):
    """Rigorous interval matrix product (midpoint-radius form).

    C_true = A@B with A in mA +- rA, B in mB +- rB satisfies
    C_true in mA@mB +- (rA@(|mB|+rB) + |mA|@rB), and the float evaluation of
    mA@mB is off by at most gamma_k * |mA|@|mB| for inner dimension k;
    radius accumulation slop is absorbed by a (1 + 8ku) inflation.
    """
    mA, rA = _mid_rad(np.asarray(Alo, float), np.asarray(Ahi, float))
    mB, rB = _mid_rad(np.asarray(Blo, float), np.asarray(Bhi, float))
    k = mA.shape[-1]
    aA = np.abs(mA)
    aB = np.abs(mB)
    mid = mA @ mB
    g = _gamma(k)
    rad = rA @ (aB + rB) + aA @ rB + g * (aA @ aB)
    rad = rad * (1.0 + 8.0 * k * _U) + 5e-324
    return vnudge_down(mid - rad), vnudge_up(mid + rad)


def imatvec(Alo, Ahi, xlo, xhi):
    lo, hi = imatmul(Alo, Ahi, xlo.reshape(-1, 1), xhi.reshape(-1, 1))
    return lo.ravel(), hi.ravel()
