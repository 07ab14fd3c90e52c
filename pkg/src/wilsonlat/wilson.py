"""Wilson systems: +/- recombinations of Gabor atoms that turn a tight
redundancy-2 frame into an orthonormal basis.

Finite setting.  For a canonical lattice (L, p, b) the index set is

    I = {0..p-1} x {0, L/(2p)}  union  {0..2p-1} x {1..L/(2p)-1},

exactly L indices.  Middle rows combine the atoms at phi(m, n) and
phi(m, -n) with coefficients 1/sqrt2 (m+n even) or i/sqrt2 (m+n odd),
where phi is the unimodular index map derived from the symplectic
parameters (the identity when b = 0).  The two boundary rows n = 0 and
n = L/(2p) keep the single atoms of even m+n with coefficient 1: at
those rows the +/- pair is self-paired, the odd combination vanishes
identically, and only the even-parity atoms survive.  (For n = L/(2p)
odd this staggers the row by one time step relative to n = 0; with
L/(2p) even it reduces to taking every other atom starting at m = 0.)

Sequence setting.  Same combination rules for a lattice (N/2, b, 1/N) in
Z x T, with m unbounded; elements are finitely supported sequences.

The Gram matrix of a Wilson system equals the identity exactly when the
underlying window generates a tight frame with bound 2 and the spectrum
hypothesis holds; ``equivalence_report`` evaluates the four equivalent
formulations side by side.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .gabor import DEFAULT_TOL, FrameError, gabor_system, tighten, tightness_deviation
from .metaplectic import (SigmaParams, _centered_dft, apply_continuous_U,
                          metaplectic_matrix, sigma_params)
from .ring import CanonicalFinite, LatticeError, ext_gcd
from .signal import DiscreteWindow, as_window, dft, tf_shift


@dataclass(frozen=True)
class PhiParams:
    """Unimodular index map (m, n) -> (m m0 - k1 n, m n0 + k2 n).

    For b = 0 the map is the identity.  The determinant m0 k2 + n0 k1
    always equals 1, so the map is a bijection of Z^2.
    """

    setting: str  # "finite" | "discrete"
    b: int
    m0: int = 0
    n0: int = 0
    k1: int = 0  # (alpha b + beta p) / c   resp. b / c
    k2: int = 0  # alpha (L/2p) / c         resp. (N/2) / c

    def __post_init__(self):
        if self.b != 0 and self.m0 * self.k2 + self.n0 * self.k1 != 1:
            raise LatticeError("inconsistent PhiParams")


def phi_params_finite(sp: SigmaParams) -> PhiParams:
    if sp.b == 0:
        return PhiParams("finite", 0)
    u_signed = sp.alpha * (sp.L // (2 * sp.p))
    v = sp.alpha * sp.b + sp.beta * sp.p
    if v % sp.gcd_c or u_signed % sp.gcd_c:
        raise LatticeError("inconsistent PhiParams")
    return PhiParams("finite", sp.b, sp.m0, sp.n0, v // sp.gcd_c, u_signed // sp.gcd_c)


def phi_params_discrete(N: int, b: int) -> PhiParams:
    if N <= 0 or N % 2:
        raise LatticeError("N must be even and positive")
    if not 0 <= b < N // 2:
        raise LatticeError("b out of range [0, N/2)")
    if b == 0:
        return PhiParams("discrete", 0)
    half = N // 2
    # Bezout pair with (N/2) m0 + b n0 = c = gcd(N/2, b)
    c, m0, n0 = ext_gcd(half, b)
    return PhiParams("discrete", b, m0, n0, b // c, half // c)


def phi_map(m: int, n: int, pp: PhiParams) -> tuple[int, int]:
    if pp.b == 0:
        return (m, n)
    return (m * pp.m0 - pp.k1 * n, m * pp.n0 + pp.k2 * n)


def phi_inverse(k: int, l: int, pp: PhiParams) -> tuple[int, int]:
    if pp.b == 0:
        return (k, l)
    # inverse of the determinant-1 matrix [[m0, -k1], [n0, k2]]
    return (pp.k2 * k + pp.k1 * l, -pp.n0 * k + pp.m0 * l)


def wilson_index_set(L: int, p: int) -> list[tuple[int, int]]:
    """Index pairs (m, n) in lexicographic (n, m) order; always L of them."""
    top = L // (2 * p)
    idx = [(m, 0) for m in range(p)]
    for n in range(1, top):
        idx.extend((m, n) for m in range(2 * p))
    idx.extend((m, top) for m in range(p))
    return idx


@dataclass(frozen=True)
class WilsonSystem:
    basis: np.ndarray = field(repr=False)  # rows = elements, (n, m)-lex order
    index_set: tuple
    window: np.ndarray = field(repr=False)
    lattice: CanonicalFinite
    setting: str = "finite"

    @property
    def L(self) -> int:
        return self.lattice.L

    def element(self, m: int, n: int) -> np.ndarray:
        return self.basis[self.index_set.index((m, n))]


def wilson_finite(g, lat: CanonicalFinite, sp: SigmaParams | None = None) -> WilsonSystem:
    """Wilson system of a window over a canonical finite lattice.

    ``sp`` overrides the symplectic parameters used for the index map
    (ignored for b = 0, where the map is the identity); by default they
    are searched once per lattice.
    """
    g = as_window(g)
    if len(g) != lat.L:
        raise FrameError(f"window length {len(g)} != lattice L {lat.L}")
    L, p, b = lat.L, lat.p, lat.b
    a = lat.time_step
    if b == 0:
        pp = PhiParams("finite", 0)
    else:
        pp = phi_params_finite(sp if sp is not None else sigma_params(lat))

    def atom(mm: int, nn: int) -> np.ndarray:
        return tf_shift(g, mm * a + nn * b, nn * p)

    top = a  # = L/(2p)
    rows = []
    idx = wilson_index_set(L, p)
    sqrt2 = np.sqrt(2.0)
    for m, n in idx:
        if n == 0 or n == top:
            mm = 2 * m + (n % 2)  # boundary rows keep m + n even
            rows.append(atom(*phi_map(mm, n, pp)))
        elif (m + n) % 2 == 0:
            rows.append((atom(*phi_map(m, n, pp)) + atom(*phi_map(m, -n, pp))) / sqrt2)
        else:
            rows.append(1j * (atom(*phi_map(m, n, pp)) - atom(*phi_map(m, -n, pp))) / sqrt2)
    return WilsonSystem(np.array(rows), tuple(idx), g, lat, "finite")


def gram(sys_or_basis) -> np.ndarray:
    """Gram matrix under the normalized C^L inner product."""
    B = sys_or_basis.basis if isinstance(sys_or_basis, WilsonSystem) else np.asarray(sys_or_basis)
    return B @ B.conj().T / B.shape[1]


def gram_deviation(sys_or_basis) -> float:
    G = gram(sys_or_basis)
    return float(np.max(np.abs(G - np.eye(len(G)))))


# -- sequence setting ---------------------------------------------------------

class WilsonSequenceFamily:
    """Lazy Wilson system over a lattice (N/2, b, 1/N) in Z x T.

    ``element(m, n)`` is defined for any integer m and 0 <= n <= N/2 and
    returns a finitely supported sequence; the modulation n/N is realized
    as e^{2 pi i l n / N}.
    """

    def __init__(self, g: DiscreteWindow, N: int, b: int):
        if N <= 0 or N % 2:
            raise LatticeError("N must be even and positive")
        if not 0 <= b < N // 2:
            raise LatticeError("b out of range [0, N/2)")
        self.g = g
        self.N = N
        self.b = b
        self.pp = phi_params_discrete(N, b)

    def _atom(self, mm: int, nn: int) -> DiscreteWindow:
        shift = mm * (self.N // 2) + nn * self.b
        l = np.arange(self.g.start + shift, self.g.stop + shift)
        vals = self.g.values * np.exp(2j * np.pi * l * nn / self.N)
        return DiscreteWindow(self.g.start + shift, vals)

    def element(self, m: int, n: int) -> DiscreteWindow:
        if not 0 <= n <= self.N // 2:
            raise ValueError("n out of range [0, N/2]")
        half = self.N // 2
        if n == 0 or n == half:
            return self._atom(*phi_map(2 * m + (n % 2), n, self.pp))
        e1 = self._atom(*phi_map(m, n, self.pp))
        e2 = self._atom(*phi_map(m, -n, self.pp))
        lo = min(e1.start, e2.start)
        hi = max(e1.stop, e2.stop)
        v1, v2 = e1.sample(lo, hi), e2.sample(lo, hi)
        if (m + n) % 2 == 0:
            return DiscreteWindow(lo, (v1 + v2) / np.sqrt(2.0))
        return DiscreteWindow(lo, 1j * (v1 - v2) / np.sqrt(2.0))

    def elements(self, m_range) -> list[tuple[tuple[int, int], DiscreteWindow]]:
        """All elements with m in m_range, (n, m)-lex order."""
        out = []
        for n in range(self.N // 2 + 1):
            for m in m_range:
                out.append(((m, n), self.element(m, n)))
        return out


def wilson_discrete(g: DiscreteWindow, N: int, b: int) -> WilsonSequenceFamily:
    return WilsonSequenceFamily(g, N, b)


def gram_discrete(elements) -> np.ndarray:
    """Gram under the counting inner product sum_l f(l) conj(g(l))."""
    wins = [w for _, w in elements] if elements and isinstance(elements[0], tuple) else list(elements)
    lo = min(w.start for w in wins)
    hi = max(w.stop for w in wins)
    M = np.array([w.sample(lo, hi) for w in wins])
    return M @ M.conj().T


# -- four-way equivalence -----------------------------------------------------

@dataclass(frozen=True)
class EquivalenceReport:
    """Verdicts and deviations for the four equivalent formulations.

    sheared_tight    : the Gabor system over (L, p, b) is tight with bound 2
    rectangular_tight: the transported window is tight over (L, q, 0)
    rectangular_onb  : the rectangular Wilson system is an orthonormal basis
    sheared_onb      : the Wilson system over (L, p, b) is an orthonormal basis
    """

    sheared_tight: bool
    rectangular_tight: bool
    rectangular_onb: bool
    sheared_onb: bool
    deviations: dict
    params: SigmaParams
    tol: float

    def verdicts(self) -> tuple[bool, bool, bool, bool]:
        return (self.sheared_tight, self.rectangular_tight,
                self.rectangular_onb, self.sheared_onb)

    def to_json(self) -> dict:
        return {"verdicts": {"sheared_tight": self.sheared_tight,
                             "rectangular_tight": self.rectangular_tight,
                             "rectangular_onb": self.rectangular_onb,
                             "sheared_onb": self.sheared_onb},
                "deviations": {k: float(v) for k, v in self.deviations.items()},
                "q": self.params.q, "tol": self.tol}


REAL_SPECTRUM_TOL = 1e-10


def equivalence_report(g, lat: CanonicalFinite, tol: float = DEFAULT_TOL,
                       sp: SigmaParams | None = None) -> EquivalenceReport:
    """Evaluate all four equivalent basis/frame conditions for a window.

    Requires the transported window U^{-1} g to have a real-valued
    spectrum (the hypothesis under which the four conditions are
    equivalent); raises otherwise.
    """
    g = as_window(g)
    if sp is None:
        sp = sigma_params(lat)
    U = metaplectic_matrix(sp)
    h = U.conj().T @ g
    hhat = dft(h)
    if np.max(np.abs(hhat.imag)) > REAL_SPECTRUM_TOL * max(1.0, float(np.max(np.abs(hhat)))):
        raise FrameError("transported window spectrum is not real-valued")
    rect = CanonicalFinite(lat.L, sp.q, 0)
    dev_i = tightness_deviation(gabor_system(g, lat), 2.0)
    dev_ii = tightness_deviation(gabor_system(h, rect), 2.0)
    dev_iii = gram_deviation(wilson_finite(h, rect))
    dev_iv = gram_deviation(wilson_finite(g, lat, sp))
    devs = {"sheared_tight": dev_i, "rectangular_tight": dev_ii,
            "rectangular_onb": dev_iii, "sheared_onb": dev_iv}
    return EquivalenceReport(dev_i <= tol, dev_ii <= tol, dev_iii <= tol,
                             dev_iv <= tol, devs, sp, tol)


# -- continuous demonstration -------------------------------------------------

HEX_A = 3.0 ** (-0.25)          # canonical hexagonal lattice scaled to volume 1/2
HEX_B = HEX_A / 2.0
HEX_D = 3.0 ** 0.25 / 2.0


@dataclass(frozen=True)
class ContinuousDemoReport:
    L: int
    nu: float
    window: np.ndarray = field(repr=False)
    hex_gram_deviation: float = 0.0
    rect_gram_deviation: float = 0.0
    time_spread: float = 0.0
    freq_spread: float = 0.0

    def to_json(self) -> dict:
        return {"L": self.L, "nu": self.nu,
                "hex_gram_deviation": self.hex_gram_deviation,
                "rect_gram_deviation": self.rect_gram_deviation,
                "time_spread": self.time_spread,
                "freq_spread": self.freq_spread}


def _grid(L: int) -> tuple[int, np.ndarray]:
    root = int(round(np.sqrt(L)))
    if root * root != L or root % 2:
        raise ValueError("demo requires L to be the square of an even integer")
    return root, (np.arange(L) - L / 2) / root


def _frac_shift(f: np.ndarray, x_grid: float) -> np.ndarray:
    L = len(f)
    F = _centered_dft(f)
    j = np.arange(L) - L / 2
    return _centered_dft(F * np.exp(-2j * np.pi * j * x_grid / L), inverse=True)


def continuous_wilson_gram(g: np.ndarray, a: float, b: float, d: float,
                           m_max: int = 2, n_max: int = 2) -> float:
    """Max deviation from identity of the sampled continuous Wilson Gram.

    Assembles the volume-1/2 continuous-setting Wilson elements for the
    lattice [[a, b], [0, d]] on the sqrt(L) grid over a fixed index window
    and measures ||Gram - I||_max under the normalized inner product.
    """
    L = len(g)
    root, t = _grid(L)

    def atom(x: float, y: float) -> np.ndarray:
        return _frac_shift(g, x * root) * np.exp(2j * np.pi * y * t)

    rows = [atom(2 * m * a, 0.0) for m in range(-m_max, m_max + 1)]
    for n in range(1, n_max + 1):
        phase = np.exp(-1j * np.pi * b * d * n * n)
        for m in range(-m_max, m_max + 1):
            plus = atom(m * a + n * b, n * d)
            minus = atom(m * a - n * b, -n * d)
            if (m + n) % 2 == 0:
                rows.append(phase * (plus + minus) / np.sqrt(2.0))
            else:
                rows.append(1j * phase * (plus - minus) / np.sqrt(2.0))
    B = np.array(rows)
    G = B @ B.conj().T / L
    return float(np.max(np.abs(G - np.eye(len(rows)))))


def wilson_continuous_demo(nu: float, L: int, m_max: int = 2, n_max: int = 2,
                           fourier_twist: bool = False) -> ContinuousDemoReport:
    """Hexagonal-lattice demonstration of the continuous construction.

    Samples the Gaussian (2 nu)^{1/4} e^{-nu pi t^2} on the sqrt(L) grid,
    tightens it for the rectangular lattice {(m/2, n)} (finite analogue:
    (L, sqrt(L), 0)), transports with the inverse continuous metaplectic
    operator of the volume-1/2 hexagonal lattice, and reports the sampled
    Wilson Gram deviations for both lattices plus the time-frequency
    spreads of the hexagonal window.
    """
    if nu <= 0:
        raise ValueError("nu must be positive")
    if L < 64:
        raise ValueError("demo requires L >= 64")
    root, t = _grid(L)
    h = (2 * nu) ** 0.25 * np.exp(-nu * np.pi * t * t) + 0j
    rect = CanonicalFinite(L, root, 0)
    w = tighten(h, rect, fourier_twist=fourier_twist)
    g = apply_continuous_U(w, (HEX_A, HEX_B, HEX_D), inverse=True)

    hex_dev = continuous_wilson_gram(g, HEX_A, HEX_B, HEX_D, m_max, n_max)
    rect_dev = continuous_wilson_gram(w, 0.5, 0.0, 1.0, m_max, n_max)

    mass = np.sum(np.abs(g) ** 2)
    mean_t = np.sum(t * np.abs(g) ** 2) / mass
    time_spread = float(np.sqrt(np.sum((t - mean_t) ** 2 * np.abs(g) ** 2) / mass))
    G = _centered_dft(g)
    f = (np.arange(L) - L / 2) / root
    massf = np.sum(np.abs(G) ** 2)
    mean_f = np.sum(f * np.abs(G) ** 2) / massf
    freq_spread = float(np.sqrt(np.sum((f - mean_f) ** 2 * np.abs(G) ** 2) / massf))
    return ContinuousDemoReport(L, nu, g, hex_dev, rect_dev, time_spread, freq_spread)


def periodized_gram(family: WilsonSequenceFamily, m_range, L: int) -> np.ndarray:
    """Counting-measure Gram of the L-periodized sequence elements.

    Oracle for sequence/finite consistency: when every element is
    supported well inside one period, this equals the sequence Gram
    entrywise.
    """
    elems = family.elements(m_range)
    M = np.array([w.periodize(L) for _, w in elems])
    return M @ M.conj().T
