"""Gabor systems on C^L over canonical volume-L/2 lattices.

A canonical lattice (L, p, b) has time step a = L/(2p) and frequency step
p; the associated Gabor family is the 2L time-frequency shifts

    g[m, n](l) = g(l - (m a + n b)) e^{2 pi i l n p / L},
    m = 0..2p-1,  n = 0..L/p-1,

twice as many vectors as the dimension (redundancy 2).  The frame
operator, tightness test and canonical tight window all use the
normalized inner product from :mod:`wilsonlat.signal`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .ring import CanonicalFinite
from .signal import OperatorError, as_window, dft, herm_inv_sqrt

DEFAULT_TOL = 1e-9


class FrameError(ValueError):
    """The window does not generate a usable frame."""


@dataclass(frozen=True)
class GaborSystem:
    window: np.ndarray = field(repr=False)
    lattice: CanonicalFinite
    elements: np.ndarray = field(repr=False)  # shape (2L, L), row order (m, n)

    @property
    def L(self) -> int:
        return self.lattice.L

    def element(self, m: int, n: int) -> np.ndarray:
        N = self.L // self.lattice.p
        return self.elements[(m % (2 * self.lattice.p)) * N + (n % N)]


def gabor_system(g, lat: CanonicalFinite) -> GaborSystem:
    g = as_window(g)
    if len(g) != lat.L:
        raise FrameError(f"window length {len(g)} != lattice L {lat.L}")
    L, p, b = lat.L, lat.p, lat.b
    a = lat.time_step
    N = L // p
    l = np.arange(L)
    # all shifts at once: rows indexed by (m, n) lexicographically
    ms, ns = np.divmod(np.arange(2 * p * N), N)
    xs = (ms * a + ns * b) % L
    ys = (ns * p) % L
    shifted = g[(l[None, :] - xs[:, None]) % L]
    phases = np.exp(2j * np.pi * (l[None, :] * ys[:, None] % L) / L)
    return GaborSystem(g, lat, shifted * phases)


def frame_operator(sys: GaborSystem) -> np.ndarray:
    """S = sum over elements of |e><e| as an L x L matrix."""
    E = sys.elements
    return E.T @ E.conj() / sys.L


def tightness_deviation(sys: GaborSystem, bound: float = 2.0) -> float:
    S = frame_operator(sys)
    return float(np.max(np.abs(S - bound * np.eye(sys.L))))


def is_tight(sys: GaborSystem, bound: float = 2.0, tol: float = DEFAULT_TOL) -> bool:
    if bound <= 0:
        raise ValueError("bound must be positive")
    return tightness_deviation(sys, bound) <= tol


def tighten(g, lat: CanonicalFinite, fourier_twist: bool = False) -> np.ndarray:
    """Canonical tight window sqrt(2) S^{-1/2} g for the lattice.

    The output generates a tight frame with bound exactly 2 over the same
    lattice.  With ``fourier_twist`` the unitary DFT is applied afterwards
    (makes the spectrum of a real even window real; note the twist moves
    tightness to the transposed lattice unless p = L/(2p)).
    """
    g = as_window(g)
    S = frame_operator(gabor_system(g, lat))
    try:
        R = herm_inv_sqrt(S)
    except OperatorError as exc:
        raise FrameError("window does not generate a frame") from exc
    gt = np.sqrt(2.0) * (R @ g)
    if fourier_twist:
        gt = np.sqrt(len(gt)) * dft(gt)
    return gt


def symmetrize(g) -> np.ndarray:
    """Project onto windows with real-valued DFT: average g(l) with conj(g(-l))."""
    g = as_window(g)
    L = len(g)
    return 0.5 * (g + np.conj(g[(-np.arange(L)) % L]))
