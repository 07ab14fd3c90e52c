import numpy as np
import pytest

from wilsonlat.gabor import gabor_system, is_tight, tighten
from wilsonlat.ring import CanonicalFinite
from wilsonlat.rng import SplitMix64
from wilsonlat.signal import DiscreteWindow
from wilsonlat.zak import (cond_correlation, cond_correlation_discrete,
                           cond_quadrature, correlation_sums_discrete, zak_finite)


def delta(L):
    d = np.zeros(L, dtype=complex)
    d[0] = 1
    return d


class TestZakFinite:
    def test_delta(self):
        Z = zak_finite(delta(8), 1)
        assert np.allclose(Z.values[0], 1)
        assert np.allclose(Z.values[1], 0)

    def test_constant(self):
        Z = zak_finite(np.ones(8), 1)
        expect = np.zeros((2, 4))
        expect[:, 0] = 4
        assert np.allclose(Z.values, expect)

    def test_reconstruction(self):
        rng = SplitMix64(30)
        for L, p in ((8, 1), (12, 3), (16, 2)):
            f = rng.complex_vector(L)
            Z = zak_finite(f, p)
            rec = (2 * p / L) * Z.values.sum(axis=1)
            assert np.max(np.abs(rec - f[:2 * p])) < 1e-12

    def test_unitarity(self):
        rng = SplitMix64(31)
        for L, p in ((8, 1), (12, 2), (24, 3)):
            f = rng.complex_vector(L)
            Z = zak_finite(f, p)
            lhs = (2 * p / L) * np.sum(np.abs(Z.values) ** 2)
            assert lhs == pytest.approx(np.sum(np.abs(f) ** 2), rel=1e-12)

    def test_quasiperiodicity(self):
        rng = SplitMix64(32)
        L, p = 12, 2
        f = rng.complex_vector(L)
        Z = zak_finite(f, p)
        for x in range(2 * p):
            for y in range(L // (2 * p)):
                for shift in (1, 2, -1):
                    expect = np.exp(-2j * np.pi * (2 * p * shift) * y / L) * Z.values[x, y]
                    assert Z.at(x + 2 * p * shift, y) == pytest.approx(expect)

    def test_linear(self):
        rng = SplitMix64(33)
        f, g = rng.complex_vector(8), rng.complex_vector(8)
        Zf, Zg = zak_finite(f, 2).values, zak_finite(g, 2).values
        Zsum = zak_finite(2 * f + 3j * g, 2).values
        assert np.max(np.abs(Zsum - 2 * Zf - 3j * Zg)) < 1e-12

    def test_divisibility_required(self):
        with pytest.raises(ValueError, match="divide"):
            zak_finite(np.ones(8), 3)


class TestQuadratureCondition:
    def test_constant_window(self):
        holds, dev = cond_quadrature(np.ones(8), 1)
        assert holds and dev < 1e-14

    def test_tightened_gaussian(self):
        l = np.arange(16) - 8
        g = np.exp(-np.pi * (l / 3.0) ** 2).astype(complex)
        gt = tighten(g, CanonicalFinite(16, 1, 0))
        holds, dev = cond_quadrature(gt, 1)
        assert holds and dev < 1e-10

    def test_delta_fails(self):
        holds, dev = cond_quadrature(delta(8), 1)
        assert not holds and dev > 0.1

    def test_complex_spectrum_rejected(self):
        rng = SplitMix64(34)
        g = rng.complex_vector(8)
        with pytest.raises(ValueError, match="real-valued"):
            cond_quadrature(g, 1)


class TestCorrelationCondition:
    def test_constant_window(self):
        holds, dev = cond_correlation(np.ones(8), 1)
        assert holds and dev < 1e-14

    def test_agrees_with_quadrature(self):
        rng = SplitMix64(35)
        for _ in range(20):
            g = rng.real_dft_window(8)
            hq, _ = cond_quadrature(g, 1)
            hc, _ = cond_correlation(g, 1)
            assert hq == hc

    def test_delta_fails(self):
        holds, _ = cond_correlation(delta(8), 1)
        assert not holds


class TestEquivalenceWithTightness:
    def test_verdicts_match_is_tight(self):
        rng = SplitMix64(36)
        for L in (8, 12, 16):
            for p in [d for d in range(1, L // 2 + 1) if (L // 2) % d == 0]:
                lat = CanonicalFinite(L, p, 0)
                raw = rng.real_dft_window(L)
                tightened = tighten(raw, lat)
                for g in (raw, tightened):
                    t = is_tight(gabor_system(g, lat), 2.0, 1e-9)
                    hq, _ = cond_quadrature(g, p)
                    hc, _ = cond_correlation(g, p)
                    assert t == hq == hc


class TestCorrelationDiscrete:
    def test_delta_sequence(self):
        g = DiscreteWindow(0, [1.0])
        holds, dev = cond_correlation_discrete(g, 2)
        assert holds and dev < 1e-12

    def test_pair_window_matches_frame_oracle(self):
        # g = (1, 1): the truncated frame operator of the (1, n/2) system is
        # 4 I, not 2 I, so the criterion must fail
        g = DiscreteWindow(0, [1.0, 1.0])
        holds, dev = cond_correlation_discrete(g, 2)
        assert not holds
        assert dev == pytest.approx(2.0, abs=1e-9)
        # oracle: assemble S on a truncation and watch the middle rows
        span = np.arange(-8, 9)
        S = np.zeros((len(span), len(span)), dtype=complex)
        for m in range(-10, 11):
            for n in range(2):
                atom = np.array([(1.0 if l - m in (0, 1) else 0.0) *
                                 np.exp(1j * np.pi * l * n) for l in span])
                S += np.outer(atom, atom.conj())
        mid = slice(4, 13)
        assert np.max(np.abs((S - 4 * np.eye(len(span)))[mid, mid])) < 1e-12

    def test_homogeneity_degree_two(self):
        g = DiscreteWindow(-1, [0.5, 1.0, 0.25])
        _, s1 = correlation_sums_discrete(g, 4, 33)
        _, s2 = correlation_sums_discrete(g.scaled(2.0), 4, 33)
        assert np.max(np.abs(s2 - 4 * s1)) < 1e-12

    def test_sampling_consistent_on_nested_grids(self):
        g = DiscreteWindow(0, [1.0, -0.5, 0.25, 0.125])
        _, coarse = correlation_sums_discrete(g, 2, 64)
        _, fine = correlation_sums_discrete(g, 2, 256)
        # the 64-point grid is a subgrid of the 256-point grid; the sums are
        # trigonometric polynomials so the shared samples agree exactly
        assert np.max(np.abs(coarse - fine[:, ::4])) < 1e-12

    def test_empty_support_rejected(self):
        with pytest.raises(ValueError):
            cond_correlation_discrete(DiscreteWindow(0, [1.0]), 3)


def test_discrete_matches_periodized_finite_criterion():
    # a sequence criterion evaluated on the circle agrees with the finite
    # correlation criterion of the periodization at large L
    rng = SplitMix64(37)
    vals = rng.reals(5)
    g = DiscreteWindow(-2, vals)
    # symmetric real window -> real spectrum in both settings
    sym = DiscreteWindow(-2, 0.5 * (vals + vals[::-1]))
    N = 4
    holds_seq, dev_seq = cond_correlation_discrete(sym, N)
    L = 64 * N
    per = sym.periodize(L)
    holds_fin, dev_fin = cond_correlation(per, L // N)
    assert holds_seq == holds_fin
