"""Exact canonicalization of 2x2 time-frequency lattice generator matrices.

A lattice is given by an integer or rational 2x2 generator matrix A, and
the same lattice has many generators: A and AU generate identical point
sets for any unimodular integer U.  Everything downstream (Gabor systems,
Wilson bases, symplectic reindexing) consumes one distinguished generator
per lattice, the upper-triangular canonical form, computed here in three
ambient settings:

* ``real``      -- lattices in R^2 with rational entries; canonical form
                   [[a, b], [0, d]] with a, d > 0 and 0 <= b < a.
* ``discrete``  -- lattices in Z x T with integer top row, rational bottom
                   row and determinant 1/2; canonical form
                   [[N/2, b], [0, 1/N]] with 0 <= b < N/2.
* ``finite``    -- lattices in Z_L x Z_L with integer entries and
                   determinant L/2; canonical form [[L/(2p), b], [0, p]]
                   with p | L/2 and 0 <= b < L/(2p).

All arithmetic in this module is exact (integers and ``Fraction``);
canonical forms are discontinuous in the entries, so floating point is
deliberately never used here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

# Canonicalization is exact but inputs are bounded so results stay desk
# sized; out-of-range inputs fail loudly instead of silently churning.
MAX_ENTRY = 10**6
MAX_L = 2**20

Rational = Fraction


class LatticeError(ValueError):
    """Invalid lattice data (bad determinant, domain mismatch, ...)."""


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise LatticeError(f"entry {x!r} is not an exact rational")


def _check_entry_bound(x: Fraction) -> None:
    if abs(x.numerator) > MAX_ENTRY or x.denominator > MAX_ENTRY:
        raise LatticeError(f"entry {x} exceeds the supported bound {MAX_ENTRY}")


@dataclass(frozen=True)
class GeneratorMatrix:
    """2x2 generator [[a, b], [c, d]] with a domain tag.

    ``domain`` is one of ``"real"``, ``"discrete"``, ``"finite"``; the
    finite domain carries the ambient size ``L`` (even).  Entries are
    Fractions (integers are accepted and coerced).
    """

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction
    domain: str = "real"
    L: int | None = None

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, _as_fraction(getattr(self, name)))
            _check_entry_bound(getattr(self, name))
        if self.domain not in ("real", "discrete", "finite"):
            raise LatticeError(f"unknown domain {self.domain!r}")
        det = self.det()
        if det == 0:
            raise LatticeError("zero determinant")
        if self.domain == "discrete":
            if self.a.denominator != 1 or self.b.denominator != 1:
                raise LatticeError("discrete domain requires integer a, b")
            if det != Fraction(1, 2):
                raise LatticeError("volume must be 1/2")
        if self.domain == "finite":
            if self.L is None or self.L <= 0 or self.L % 2:
                raise LatticeError("finite domain requires an even positive L")
            if self.L > MAX_L:
                raise LatticeError(f"L exceeds the supported bound {MAX_L}")
            if any(getattr(self, n).denominator != 1 for n in "abcd"):
                raise LatticeError("finite domain requires integer entries")
            if det != Fraction(self.L, 2):
                raise LatticeError("determinant must equal L/2")

    def det(self) -> Fraction:
        return self.a * self.d - self.b * self.c

    def int_entries(self) -> tuple[int, int, int, int]:
        return (int(self.a), int(self.b), int(self.c), int(self.d))

    def to_json(self) -> dict:
        def enc(x: Fraction):
            return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

        out = {"domain": self.domain,
               "matrix": [[enc(self.a), enc(self.b)], [enc(self.c), enc(self.d)]]}
        if self.domain == "finite":
            out["L"] = self.L
        return out

    @classmethod
    def from_json(cls, data: dict) -> "GeneratorMatrix":
        (a, b), (c, d) = data["matrix"]
        return cls(_as_fraction(a), _as_fraction(b), _as_fraction(c), _as_fraction(d),
                   domain=data["domain"], L=data.get("L"))


@dataclass(frozen=True)
class CanonicalReal:
    """Upper-triangular canonical generator [[a, b], [0, d]] over R^2."""

    a: Fraction
    b: Fraction
    d: Fraction

    def __post_init__(self):
        if not (self.a > 0 and self.d > 0 and 0 <= self.b < self.a):
            raise LatticeError("not a canonical real form")

    def volume(self) -> Fraction:
        return self.a * self.d

    def to_json(self) -> dict:
        def enc(x):
            return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
        return {"a": enc(self.a), "b": enc(self.b), "d": enc(self.d)}


@dataclass(frozen=True)
class CanonicalDiscrete:
    """Canonical generator [[N/2, b], [0, 1/N]] for a volume-1/2 lattice in Z x T."""

    N: int
    b: int

    def __post_init__(self):
        if self.N <= 0 or self.N % 2:
            raise LatticeError("N must be even and positive")
        if not 0 <= self.b < self.N // 2:
            raise LatticeError("b out of range [0, N/2)")

    def to_json(self) -> dict:
        return {"N": self.N, "b": self.b}


@dataclass(frozen=True)
class CanonicalFinite:
    """Canonical generator [[L/(2p), b], [0, p]] of a subgroup of Z_L x Z_L."""

    L: int
    p: int
    b: int

    def __post_init__(self):
        if self.L <= 0 or self.L % 2:
            raise LatticeError("L must be even and positive")
        if self.p <= 0 or (self.L // 2) % self.p:
            raise LatticeError("p must divide L/2")
        if not 0 <= self.b < self.L // (2 * self.p):
            raise LatticeError("b out of range [0, L/(2p))")

    @property
    def time_step(self) -> int:
        return self.L // (2 * self.p)

    def to_json(self) -> dict:
        return {"L": self.L, "p": self.p, "b": self.b}

    def to_generator(self) -> GeneratorMatrix:
        return GeneratorMatrix(self.time_step, self.b, 0, self.p,
                               domain="finite", L=self.L)


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended Euclid: returns (g, m, n) with g = gcd(|a|, |b|) = a*m + b*n.

    Raises on (0, 0), where the gcd is undefined.
    """
    if a == 0 and b == 0:
        raise LatticeError("gcd undefined")
    old_r, r = a, b
    old_m, m = 1, 0
    old_n, n = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_m, m = m, old_m - q * m
        old_n, n = n, old_n - q * n
    if old_r < 0:
        old_r, old_m, old_n = -old_r, -old_m, -old_n
    return old_r, old_m, old_n


def hnf_real(A: GeneratorMatrix) -> CanonicalReal:
    """Hermite normal form of a rational 2x2 generator.

    Column operations only (they preserve the lattice): first produce a
    point on the x-axis, then a point with minimal positive second
    coordinate, and reduce the upper-right entry modulo the first.
    """
    if A.domain != "real":
        raise LatticeError("hnf_real expects a real-domain matrix")
    a, b, c, d = A.a, A.b, A.c, A.d
    det = A.det()
    if c == 0 and d == 0:
        raise LatticeError("zero determinant")
    # Clear denominators in the bottom row: (c, d) = (C, D)/Q with integers.
    Q = (c.denominator * d.denominator) // gcd(c.denominator, d.denominator)
    C = int(c * Q)
    D = int(d * Q)
    p = gcd(abs(C), abs(D))
    # A @ (D/p, -C/p) = (det * Q / p, 0): the x-axis generator.
    new_a = abs(det) * Q / p
    g, m, n = ext_gcd(C // p, D // p)
    assert g == 1
    new_d = Fraction(p, Q)
    x = a * m + b * n  # first coordinate of a point with second coordinate p/Q
    new_b = x - (x / new_a).__floor__() * new_a
    return CanonicalReal(new_a, new_b, new_d)


def canonical_discrete(A: GeneratorMatrix) -> CanonicalDiscrete:
    """Canonical form [[N/2, b'], [0, 1/N]] of an integer-top-row lattice in Z x T.

    Writing the bottom row over the common denominator as (r, s)/N with
    gcd(r, s) = 1, the lattice contains (N*det, 0) = (N/2, 0) and, via a
    Bezout pair r*m + s*n = 1, the point (a*m + b*n, 1/N); reducing the
    first coordinate modulo N/2 gives the unique representative.
    """
    if A.domain != "discrete":
        raise LatticeError("canonical_discrete expects a discrete-domain matrix")
    a, b = int(A.a), int(A.b)
    c, d = A.c, A.d
    if c == 0:
        # already lower-left zero: d = 1/(2a); normalize signs
        N = 2 * abs(a)
        sgn = 1 if d > 0 else -1
        bp = (b * sgn) % (N // 2)
        return CanonicalDiscrete(N, bp)
    ct = c.numerator * d.denominator
    dt = d.numerator * c.denominator
    Nprime = c.denominator * d.denominator
    z = gcd(abs(ct), abs(dt))
    # det = 1/2 forces N' even and z | N'/2, so N is an even integer
    N = Nprime // z
    r, s = ct // z, dt // z
    if N < 0:
        N, r, s = -N, -r, -s
    g, m, n = ext_gcd(r, s)
    assert g == 1  # r, s are coprime by construction
    bp = (a * m + b * n) % (N // 2)
    return CanonicalDiscrete(N, bp)


def canonical_finite(A: GeneratorMatrix) -> CanonicalFinite:
    """Canonical form (L, p, b') of an integer lattice in Z_L x Z_L.

    p is gcd(c, d) (or |d| when c = 0); the lattice contains (L/(2p), 0)
    and a point (z, p) found from a Bezout pair, and b' = z mod L/(2p).
    """
    if A.domain != "finite":
        raise LatticeError("canonical_finite expects a finite-domain matrix")
    L = A.L
    a, b, c, d = A.int_entries()
    if c == 0:
        p = abs(d)
        sgn = 1 if d > 0 else -1
        bp = (b * sgn) % (L // (2 * p))
        return CanonicalFinite(L, p, bp)
    p = gcd(abs(c), abs(d))
    q, r = c // p, d // p
    g, m, n = ext_gcd(q, r)
    assert g == 1  # q, r are coprime by construction
    z = a * m + b * n
    bp = z % (L // (2 * p))
    return CanonicalFinite(L, p, bp)


def lattice_points_finite(A: GeneratorMatrix | CanonicalFinite) -> frozenset[tuple[int, int]]:
    """All points {A (m, n) mod L : m, n in Z_L} as a set of pairs.

    Brute-force oracle used by every canonicalization test; a volume-L/2
    lattice always has exactly 2L points.
    """
    if isinstance(A, CanonicalFinite):
        A = A.to_generator()
    if A.domain != "finite":
        raise LatticeError("lattice_points_finite expects a finite-domain matrix")
    L = A.L
    a, b, c, d = A.int_entries()
    pts = set()
    for m in range(L):
        am, cm = a * m, c * m
        for n in range(L):
            pts.add(((am + b * n) % L, (cm + d * n) % L))
    return frozenset(pts)
