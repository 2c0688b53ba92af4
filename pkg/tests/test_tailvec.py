"""Tail-vector algebra: frozen lemma cases, membership soundness, norms."""

import numpy as np
import pytest

from orbitcert import interval as iv
from orbitcert import tailvec as tv
from orbitcert.errors import (
    AdmissibilityViolation,
    BasisMismatch,
    ExponentNotSummable,
    UnboundedRepresentation,
)
from orbitcert.interval import Interval
from orbitcert.tailvec import PQSet, TailVector, VarPair


def sample_member(vec: TailVector, rng, k_max: int) -> np.ndarray:
    """A random member sequence (modes 1..k_max); index 0 <-> mode 1."""
    out = np.empty(k_max)
    for k in range(1, k_max + 1):
        c = vec.coeff(k)
        out[k - 1] = rng.uniform(c.lo, c.hi)
    return out


def coeffs_contain(vec: TailVector, seq: np.ndarray, slack: float = 1e-12) -> bool:
    for k in range(1, len(seq) + 1):
        c = vec.coeff(k)
        if not (c.lo - slack <= seq[k - 1] <= c.hi + slack):
            return False
    return True


u11 = Interval(-1.0, 1.0)


class TestVadd:
    def test_zero_tails_head_sum(self):
        a = TailVector.sine([Interval(1, 2), Interval(0, 1)])
        b = TailVector.sine([Interval(3, 3), Interval(-1, 0)])
        r = tv.vadd(a, b)
        assert r.coeff(1).contains(4.0) and r.coeff(1).contains(5.0)
        assert r.tail_is_zero()

    def test_equal_exponents(self):
        # [PAPER: equal-rate tail addition] C=[1,1],s=2 twice at n=4 -> [2,2], s=2
        a = TailVector.sine([iv.ZERO] * 4, Interval(1.0), 2.0)
        b = TailVector.sine([iv.ZERO] * 4, Interval(1.0), 2.0)
        r = tv.vadd(a, b)
        assert r.tail_s == 2.0
        assert r.tail_C.contains(2.0) and r.tail_C.width() < 1e-14

    def test_mixed_exponents(self):
        # [PAPER: mixed-rate tail addition] s1=2 plus s2=3 at n=4:
        # C = [1,1] + [0,1]*[-1,1]/5 = [0.8, 1.2] at s=2
        a = TailVector.sine([iv.ZERO] * 4, Interval(1.0), 2.0)
        b = TailVector.sine([iv.ZERO] * 4, u11, 3.0)
        r = tv.vadd(a, b)
        assert r.tail_s == 2.0
        assert r.tail_C.lo <= 0.8 + 1e-15 and r.tail_C.hi >= 1.2 - 1e-15
        assert r.tail_C.subset(Interval(0.79, 1.21))

    def test_membership_preserved(self):
        rng = np.random.default_rng(0)
        a = TailVector.sine([Interval(-0.5, 1.0)] * 4, Interval(-1, 2), 2.5)
        b = TailVector.sine([Interval(0.0, 0.25)] * 4, Interval(-1, 1), 4.0)
        r = tv.vadd(a, b)
        for _ in range(200):
            xa = sample_member(a, rng, 60)
            xb = sample_member(b, rng, 60)
            assert coeffs_contain(r, xa + xb)

    def test_basis_mismatch(self):
        a = TailVector.sine([iv.ZERO])
        b = TailVector.cosine(iv.ZERO, [iv.ZERO])
        with pytest.raises(BasisMismatch):
            tv.vadd(a, b)


class TestVscale:
    def test_identity(self):
        a = TailVector.sine([Interval(1, 2)], u11, 3.0)
        r = tv.vscale(a, Interval(1.0))
        assert r.coeff(1) == a.coeff(1) and r.tail_C == a.tail_C

    def test_zero(self):
        a = TailVector.sine([Interval(1, 2)], u11, 3.0)
        r = tv.vscale(a, Interval(0.0))
        assert r.coeff(1) == iv.ZERO and r.tail_is_zero()

    def test_sign_flip(self):
        a = TailVector.sine([Interval(1, 2)])
        r = tv.vscale(a, Interval(-2.0))
        assert r.coeff(1) == Interval(-4.0, -2.0)


class TestReindex:
    def test_zero_tail_any_exponent(self):
        a = TailVector.sine([iv.ZERO] * 3, iv.ZERO, 4.0)
        r = tv.reindex_lower_s(a, -1.0)
        assert r.tail_is_zero() and r.tail_s == -1.0

    def test_frozen_constant(self):
        # [PAPER: re-indexing, D+ = C+/(n+1)^(s-s1)] C=[1,1], s=4, n=4, s'=2
        a = TailVector.sine([iv.ZERO] * 4, Interval(1.0), 4.0)
        r = tv.reindex_lower_s(a, 2.0)
        assert r.tail_C.lo == 0.0
        assert abs(r.tail_C.hi - 1.0 / 25.0) < 1e-16

    def test_membership_preserved(self):
        rng = np.random.default_rng(1)
        a = TailVector.sine([Interval(-1, 1)] * 4, Interval(-0.5, 2.0), 3.5)
        r = tv.reindex_lower_s(a, 1.5)
        for _ in range(100):
            x = sample_member(a, rng, 80)
            assert coeffs_contain(r, x)


class TestHeadReindex:
    def test_absorb_frozen(self):
        # [PAPER: re-indexing, D+ = u5+ * 5^2] head mode 5 = [1,1], C=0, s=2
        a = TailVector.sine([iv.ZERO] * 4 + [Interval(1.0)], iv.ZERO, 2.0)
        r = tv.absorb_head(a, 4)
        assert r.n_head == 4
        assert r.tail_C.lo == 0.0 and abs(r.tail_C.hi - 25.0) < 1e-12

    def test_roundtrip_widens_only(self):
        a = TailVector.sine([Interval(0.1, 0.2)] * 3, Interval(-1, 1), 3.0)
        r = tv.absorb_head(tv.extend_head(a, 6), 3)
        assert a.tail_C.subset(r.tail_C)

    def test_membership_preserved_both(self):
        rng = np.random.default_rng(2)
        a = TailVector.sine([Interval(-0.3, 0.7)] * 5, Interval(-2, 1), 2.5)
        ext = tv.extend_head(a, 9)
        ab = tv.absorb_head(a, 2)
        for _ in range(100):
            x = sample_member(a, rng, 40)
            assert coeffs_contain(ext, x)
            assert coeffs_contain(ab, x)


class TestTailSumBound:
    def test_zero(self):
        assert tv.tail_sum_bound(iv.ZERO, 2.0, 5) == iv.ZERO

    def test_direct_formula(self):
        # n^(1-s)/(s-1) = 1 at s=2, n=1; true tail pi^2/6 - 1 ~ 0.6449
        b = tv.tail_sum_bound(Interval(-1, 1), 2.0, 1)
        assert abs(b.hi - 1.0) < 1e-15

    def test_partial_sum_oracle(self):
        # [DERIVED: partial-sum oracle] s=4, n=8: bound = 8^-3/3
        b = tv.tail_sum_bound(Interval(1.0), 4.0, 8)
        ks = np.arange(9, 10 ** 6, dtype=float)
        brute = float(np.sum(ks ** -4.0))
        assert brute <= b.hi
        assert abs(b.hi - 8.0 ** -3 / 3.0) < 1e-12

    def test_not_summable(self):
        with pytest.raises(ExponentNotSummable):
            tv.tail_sum_bound(Interval(1.0), 1.0, 4)


class TestSupNorm:
    def test_pure_sine(self):
        a = TailVector.sine([Interval(1.0)])
        assert abs(tv.sup_norm_bound(a).hi - 1.0) < 1e-15

    def test_zero(self):
        assert tv.sup_norm_bound(TailVector.zeros(tv.SINE, 3)).hi == 0.0

    def test_direct_formula(self):
        a = TailVector.sine(
            [Interval(1.0), Interval(-0.5)], Interval(1.0), 3.0
        )
        assert abs(tv.sup_norm_bound(a).hi - 1.625) < 1e-14

    def test_unbounded_refused(self):
        a = TailVector.sine([iv.ZERO], Interval(1.0), 0.5)
        with pytest.raises(UnboundedRepresentation):
            tv.sup_norm_bound(a)

    def test_dominates_grid_eval(self):
        rng = np.random.default_rng(3)
        a = TailVector.sine([Interval(-0.4, 0.9)] * 6, Interval(-1, 1), 3.0)
        bound = tv.sup_norm_bound(a).hi
        x = np.linspace(0, np.pi, 10_000)
        for _ in range(20):
            c = sample_member(a, rng, 50)
            vals = np.abs(sum(c[k] * np.sin((k + 1) * x) for k in range(50)))
            assert vals.max() <= bound + 1e-9


class TestH2Norm:
    def test_single_mode(self):
        a = TailVector.sine([iv.ZERO, Interval(1.0)])
        r = tv.h2_norm_sq_bound(a)
        assert r.contains(16.0) and r.width() < 1e-12

    def test_zero(self):
        assert tv.h2_norm_sq_bound(TailVector.zeros(tv.SINE, 2)) == iv.ZERO

    def test_tail_formula(self):
        a = TailVector.sine([iv.ZERO] * 8, Interval(1.0), 4.0)
        r = tv.h2_norm_sq_bound(a)
        assert r.lo == 0.0 and abs(r.hi - 8.0 ** -3 / 3.0) < 1e-14

    def test_dominates_partial_sums(self):
        rng = np.random.default_rng(4)
        a = TailVector.sine([Interval(-0.2, 0.2)] * 4, Interval(-1, 1), 3.0)
        r = tv.h2_norm_sq_bound(a)
        for _ in range(20):
            c = sample_member(a, rng, 100_000)
            ks = np.arange(1, 100_001, dtype=float)
            val = float(np.sum(c ** 2 * ks ** 4))
            assert val <= r.hi + 1e-9

    def test_not_summable(self):
        a = TailVector.sine([iv.ZERO], Interval(1.0), 2.2)
        with pytest.raises(ExponentNotSummable):
            tv.h2_norm_sq_bound(a)


class TestOrder:
    def test_reflexive_not_interior(self):
        a = TailVector.sine([Interval(0, 1)] * 2, u11, 3.0)
        assert tv.vsubset(a, a)
        assert not tv.vsubset_interior(a, a)

    def test_paper_tail_comparison(self):
        # [PAPER: orbit-return tail containment] [-0.1644, 0.326846] vs [-1,1]
        a = TailVector.sine(
            [Interval(-0.1, 0.1)] * 2, Interval(-0.1644, 0.326846), 4.0
        )
        b = TailVector.sine([Interval(-0.2, 0.2)] * 2, u11, 4.0)
        assert tv.vsubset_interior(a, b)

    def test_hull_contains_both(self):
        a = TailVector.sine([Interval(0, 1)], Interval(0.5), 3.0)
        b = TailVector.sine([Interval(2, 3)], Interval(-0.5), 2.0)
        h = tv.vhull(a, b)
        assert tv.vsubset(a, h) and tv.vsubset(b, h)

    def test_partial_order_random(self):
        rng = np.random.default_rng(5)
        for _ in range(50):
            lo = rng.uniform(-1, 0, 3)
            hi = rng.uniform(0, 1, 3)
            a = TailVector.sine(
                [Interval(l, h) for l, h in zip(lo, hi)],
                Interval(-rng.uniform(0, 1), rng.uniform(0, 1)),
                3.0,
            )
            widen = rng.uniform(0, 0.5)
            b = TailVector.sine(
                [Interval(l - widen, h + widen) for l, h in zip(lo, hi)],
                a.tail_C * Interval(1.0 + widen),
                3.0,
            )
            c = TailVector.sine(
                [Interval(l - 2 * widen, h + 2 * widen) for l, h in zip(lo, hi)],
                a.tail_C * Interval(2.0 + widen),
                3.0,
            )
            assert tv.vsubset(a, b) and tv.vsubset(b, c)
            assert tv.vsubset(a, c)  # transitivity

    def test_intersect(self):
        a = TailVector.sine([Interval(0, 2)], Interval(-1, 0.5), 3.0)
        b = TailVector.sine([Interval(1, 3)], Interval(-0.25, 1), 3.0)
        r = tv.vintersect(a, b)
        assert r.coeff(1) == Interval(1, 2)
        assert r.tail_C == Interval(-0.25, 0.5)


class TestWrappers:
    def test_pqset_requires_bounded(self):
        with pytest.raises(UnboundedRepresentation):
            PQSet(TailVector.sine([iv.ZERO], Interval(1.0), 0.5))

    def test_parity_needs_zero_evens(self):
        v = TailVector.sine([Interval(1.0), Interval(1.0)], iv.ZERO, 4.0)
        with pytest.raises(ValueError):
            PQSet(v, parity_odd=True)
        ok = tv.zero_even_modes(v)
        PQSet(ok, parity_odd=True)

    def test_varpair_admissibility(self):
        u = PQSet(TailVector.sine([iv.ZERO] * 2, u11, 4.0))
        VarPair(u, TailVector.sine([iv.ZERO] * 2, u11, 0.0))     # 4+0 > 1
        VarPair(u, TailVector.sine([iv.ZERO] * 2, u11, -2.0))    # 4-2 > 1
        VarPair(u, TailVector.sine([iv.ZERO] * 2, u11, 0.5))     # 4-0.5 > 1
        VarPair(u, TailVector.sine([iv.ZERO] * 2, u11, 3.0))     # s2 > 1
        with pytest.raises(AdmissibilityViolation):
            VarPair(u, TailVector.sine([iv.ZERO] * 2, u11, -3.5))
        u15 = PQSet(TailVector.sine([iv.ZERO] * 2, u11, 1.5))
        with pytest.raises(AdmissibilityViolation):
            VarPair(u15, TailVector.sine([iv.ZERO] * 2, u11, 1.0))


class TestSerialization:
    def test_roundtrip(self):
        a = TailVector.sine(
            [Interval(-1.25, 2.5), Interval(0.1, 0.2)], Interval(-0.5, 0.75), 3.5
        )
        b = TailVector.from_lines(a.to_lines())
        assert tv.vsubset(a, b) and tv.vsubset(b, a)

    def test_line_format(self):
        a = TailVector.sine([Interval(1.0)], Interval(-1, 1), 4.0)
        lines = a.to_lines()
        assert lines[0].startswith("1: [")
        assert lines[-1].startswith("tail: C=[")
