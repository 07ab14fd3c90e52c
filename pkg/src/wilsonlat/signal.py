"""Vectors in C^L and finitely supported sequences on Z.

Conventions used throughout the package:

* inner product on C^L is normalized, <f, g> = (1/L) sum_l f(l) conj(g(l));
* the DFT is ghat(y) = (1/L) sum_x g(x) e^{-2 pi i x y / L}, so Plancherel
  reads sum_y |ghat(y)|^2 = (1/L) sum_x |g(x)|^2 and the inversion formula
  carries no prefactor.

Every frame bound and Zak constant downstream depends on this pairing of
measures (averaging in time, counting in frequency).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

HERMITIAN_TOL = 1e-12
COND_FLOOR = 1e-10


class OperatorError(ValueError):
    """Operator input violates a precondition (not Hermitian, singular...)."""


def as_window(values) -> np.ndarray:
    w = np.asarray(values, dtype=complex)
    if w.ndim != 1 or len(w) < 1:
        raise ValueError("window must be a nonempty 1-d vector")
    return w


def dft(f) -> np.ndarray:
    f = as_window(f)
    return np.fft.fft(f) / len(f)


def idft(F) -> np.ndarray:
    F = as_window(F)
    return np.fft.ifft(F) * len(F)


def unitary_dft(f) -> np.ndarray:
    """DFT rescaled to be unitary for the normalized inner product."""
    f = as_window(f)
    return np.sqrt(len(f)) * dft(f)


def tf_shift(g, x: int, y: int) -> np.ndarray:
    """Time-frequency shift: result(l) = g(l - x) e^{2 pi i l y / L}."""
    g = as_window(g)
    L = len(g)
    l = np.arange(L)
    return np.roll(g, x % L) * np.exp(2j * np.pi * l * (y % L) / L)


def inner(f, g) -> complex:
    f, g = as_window(f), as_window(g)
    if len(f) != len(g):
        raise ValueError("length mismatch")
    return complex(np.vdot(g, f) / len(f))


def norm(f) -> float:
    return float(np.sqrt(abs(inner(f, f))))


def is_hermitian(M: np.ndarray, tol: float = HERMITIAN_TOL) -> bool:
    return bool(np.max(np.abs(M - M.conj().T)) <= tol * max(1.0, np.max(np.abs(M))))


def jacobi_eigh(M: np.ndarray, tol: float = 1e-13, max_sweeps: int = 60):
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Sweeps unitary 2x2 rotations over the strict upper triangle until the
    off-diagonal Frobenius norm drops below tol * ||M||_F.  Returns
    (eigenvalues, eigenvectors) like ``np.linalg.eigh``; self-contained
    alternative used to cross-check the LAPACK path at desk scale.
    """
    A = np.array(M, dtype=complex)
    n = A.shape[0]
    V = np.eye(n, dtype=complex)
    scale = max(np.linalg.norm(A), 1e-300)
    for _ in range(max_sweeps):
        off = np.linalg.norm(A - np.diag(np.diag(A)))
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if abs(apq) <= tol * scale / n:
                    continue
                app = A[p, p].real
                aqq = A[q, q].real
                # unitary rotation diagonalizing [[app, apq], [conj(apq), aqq]]
                phase = apq / abs(apq)
                theta = 0.5 * np.arctan2(2.0 * abs(apq), app - aqq)
                c = np.cos(theta)
                s = np.sin(theta) * phase
                rot_p = c * A[:, p] + np.conj(s) * A[:, q]
                rot_q = -s * A[:, p] + c * A[:, q]
                A[:, p], A[:, q] = rot_p, rot_q
                rot_p = c * A[p, :] + s * A[q, :]
                rot_q = -np.conj(s) * A[p, :] + c * A[q, :]
                A[p, :], A[q, :] = rot_p, rot_q
                rot_p = c * V[:, p] + np.conj(s) * V[:, q]
                rot_q = -s * V[:, p] + c * V[:, q]
                V[:, p], V[:, q] = rot_p, rot_q
    w = np.diag(A).real
    order = np.argsort(w)
    return w[order], V[:, order]


def herm_inv_sqrt(S: np.ndarray, method: str = "eigh") -> np.ndarray:
    """Inverse square root of a Hermitian positive definite matrix.

    The result R is Hermitian and satisfies R S R = I.  ``method`` selects
    the eigensolver: "eigh" (LAPACK) or "jacobi" (the cyclic solver above,
    bit-for-bit portable but slower).
    """
    S = np.asarray(S, dtype=complex)
    if S.ndim != 2 or S.shape[0] != S.shape[1]:
        raise OperatorError("matrix must be square")
    if not is_hermitian(S):
        raise OperatorError("matrix is not Hermitian")
    if method == "eigh":
        w, V = np.linalg.eigh(S)
    elif method == "jacobi":
        w, V = jacobi_eigh(S)
    else:
        raise ValueError(f"unknown method {method!r}")
    if w[0] <= COND_FLOOR * w[-1] or w[-1] <= 0:
        raise OperatorError("frame lower bound ≈ 0")
    R = (V * (1.0 / np.sqrt(w))) @ V.conj().T
    return 0.5 * (R + R.conj().T)


@dataclass(frozen=True)
class DiscreteWindow:
    """Finitely supported sequence on Z: values[i] sits at start + i."""

    start: int
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        if v.ndim != 1 or len(v) == 0:
            raise ValueError("empty support")
        object.__setattr__(self, "values", v)

    @property
    def stop(self) -> int:
        """One past the last support index."""
        return self.start + len(self.values)

    def __call__(self, l: int) -> complex:
        if self.start <= l < self.stop:
            return complex(self.values[l - self.start])
        return 0j

    def sample(self, lo: int, hi: int) -> np.ndarray:
        """Values on the integer range [lo, hi)."""
        out = np.zeros(hi - lo, dtype=complex)
        a = max(lo, self.start)
        b = min(hi, self.stop)
        if a < b:
            out[a - lo:b - lo] = self.values[a - self.start:b - self.start]
        return out

    def norm2(self) -> float:
        return float(np.sum(np.abs(self.values) ** 2))

    def scaled(self, c: complex) -> "DiscreteWindow":
        return DiscreteWindow(self.start, c * self.values)

    def ft_at(self, t) -> np.ndarray:
        """Fourier series sum_l g(l) e^{-2 pi i l t} at real arguments t."""
        t = np.atleast_1d(np.asarray(t, dtype=float))
        l = np.arange(self.start, self.stop)
        return (self.values[None, :] * np.exp(-2j * np.pi * np.outer(t, l))).sum(axis=1)

    def periodize(self, L: int) -> np.ndarray:
        """Wrap onto Z_L: out[l] = sum_k g(l + k L)."""
        out = np.zeros(L, dtype=complex)
        for i, v in enumerate(self.values):
            out[(self.start + i) % L] += v
        return out


def write_window_csv(path, w) -> None:
    w = as_window(w)
    with open(path, "w") as fh:
        fh.write("index,re,im\n")
        for i, v in enumerate(w):
            fh.write(f"{i},{v.real:.17g},{v.imag:.17g}\n")


def read_window_csv(path) -> np.ndarray:
    rows = {}
    with open(path) as fh:
        header = fh.readline().strip()
        if header.replace(" ", "") != "index,re,im":
            raise ValueError(f"bad window CSV header {header!r}")
        for line in fh:
            line = line.strip()
            if not line:
                continue
            i, re, im = line.split(",")
            rows[int(i)] = complex(float(re), float(im))
    if not rows or set(rows) != set(range(len(rows))):
        raise ValueError("window CSV must cover indices 0..L-1")
    return np.array([rows[i] for i in range(len(rows))])
