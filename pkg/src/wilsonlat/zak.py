"""Zak transforms and pointwise tightness criteria.

For a rectangular lattice (L, p, 0) the frame operator of the 2L-element
Gabor family diagonalizes under the Zak transform taken along the coarse
time lattice {2pk}.  Tightness with bound 2 is then equivalent to either
of two pointwise conditions on the window spectrum ghat = dft(g) (both
require ghat real-valued):

* quadrature:   |Z ghat(x, y)|^2 + |Z ghat(x+p, y)|^2 = 1/p everywhere;
* correlation:  sum_l ghat(y + l p) ghat(y + l p + 2 j p) = (1/p) delta_{j,0}
                for j = 0..L/(2p)-1 and all y.

The sequence-domain analogue checks the correlation condition for the
Fourier series of a finitely supported sequence on a sample grid; both
sides are trigonometric polynomials, so enough samples make it exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .signal import DiscreteWindow, as_window, dft

DEFAULT_TOL = 1e-9
REAL_SPECTRUM_TOL = 1e-10


@dataclass(frozen=True)
class ZakTable:
    """Zak values on the fundamental grid x = 0..2p-1, y = 0..L/(2p)-1."""

    values: np.ndarray = field(repr=False)
    p: int
    L: int

    def at(self, x: int, y: int) -> complex:
        """Quasiperiodic extension: Z(x + 2p, y) = e^{-2 pi i 2p y / L} Z(x, y)."""
        q = self.L // (2 * self.p)
        k, x0 = divmod(x, 2 * self.p)
        phase = np.exp(-2j * np.pi * ((2 * self.p * k * (y % q)) % self.L) / self.L)
        return complex(phase * self.values[x0, y % q])


def zak_finite(f, p: int) -> ZakTable:
    """Zf(x, y) = sum_k f(x + 2pk) e^{2 pi i (2pk/L) y} on the fundamental grid."""
    f = as_window(f)
    L = len(f)
    if 2 * p <= 0 or L % (2 * p):
        raise ValueError("2p must divide L")
    q = L // (2 * p)
    # fold: rows x = 0..2p-1, columns k = 0..q-1
    folded = f.reshape(q, 2 * p).T
    y = np.arange(q)
    k = np.arange(q)
    kernel = np.exp(2j * np.pi * np.outer(k, y) * (2 * p) / L)
    return ZakTable(folded @ kernel, p, L)


def _real_spectrum(g, tol: float = REAL_SPECTRUM_TOL) -> np.ndarray:
    ghat = dft(g)
    if np.max(np.abs(ghat.imag)) > tol * max(1.0, float(np.max(np.abs(ghat)))):
        raise ValueError("window spectrum must be real-valued")
    return ghat


def cond_quadrature(g, p: int, tol: float = DEFAULT_TOL) -> tuple[bool, float]:
    """Check |Z ghat(x,y)|^2 + |Z ghat(x+p,y)|^2 = 1/p over the full grid."""
    ghat = _real_spectrum(g)
    L = len(ghat)
    Z = np.abs(zak_finite(ghat, p).values) ** 2
    # |.|^2 kills the quasiperiodic phase, so x+p can be folded mod 2p
    shifted = np.roll(Z, -p, axis=0)
    dev = float(np.max(np.abs(Z + shifted - 1.0 / p)))
    return dev <= tol, dev


def cond_correlation(g, p: int, tol: float = DEFAULT_TOL) -> tuple[bool, float]:
    """Check sum_l ghat(y+lp) ghat(y+lp+2jp) = (1/p) delta_{j,0} for all j, y."""
    ghat = _real_spectrum(g)
    L = len(ghat)
    q = L // (2 * p)
    ys = np.arange(L)
    dev = 0.0
    for j in range(q):
        total = np.zeros(L, dtype=complex)
        for l in range(L // p):
            total += ghat[(ys + l * p) % L] * ghat[(ys + l * p + 2 * j * p) % L]
        target = 1.0 / p if j == 0 else 0.0
        dev = max(dev, float(np.max(np.abs(total - target))))
    return dev <= tol, dev


def correlation_sums_discrete(g: DiscreteWindow, N: int, t_samples: int | None = None):
    """Sequence-domain correlation sums at sampled t.

    Returns (ts, sums) where sums[j, i] = sum_{l=0}^{N-1}
    ghat(t_i + l/N) ghat(t_i + (l + 2j)/N) for j = 0..N/2-1, with
    ghat(t) = sum_l g(l) e^{-2 pi i l t}.  The sums are (1/N)-periodic in
    t and trigonometric polynomials of degree at most twice the support
    width, so the default sample count is exact.
    """
    if N <= 0 or N % 2:
        raise ValueError("N must be even and positive")
    if len(g.values) == 0:
        raise ValueError("empty support")
    width = len(g.values) - 1
    if t_samples is None:
        # degree of the sums in e^{2 pi i N t} is at most ceil(2*width/N)
        t_samples = max(64, 2 * (2 * width // N + 1) + 1)
    ts = np.arange(t_samples) / (N * t_samples)
    sums = np.zeros((N // 2, t_samples), dtype=complex)
    for j in range(N // 2):
        for l in range(N):
            sums[j] += g.ft_at(ts + l / N) * g.ft_at(ts + (l + 2 * j) / N)
    return ts, sums


def cond_correlation_discrete(g: DiscreteWindow, N: int,
                              t_samples: int | None = None,
                              tol: float = DEFAULT_TOL) -> tuple[bool, float]:
    """Sequence-domain correlation criterion against N delta_{j,0}.

    The shift 2j/N repeats with period N/2 in j, so j runs over
    0..N/2-1 (j and j + N/2 index the same left-hand side).
    """
    _, sums = correlation_sums_discrete(g, N, t_samples)
    dev = 0.0
    for j in range(N // 2):
        target = float(N) if j == 0 else 0.0
        dev = max(dev, float(np.max(np.abs(sums[j] - target))))
    return dev <= tol, dev
