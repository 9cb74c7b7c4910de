"""Atomic symmetric measures on the circle R/2piZ.

Measures here are finite lists of weighted point masses, invariant under
negation of angles. Convolution and Fourier coefficients are exact in the
atoms; the closed-form coefficient families (the kernels G_A, uniform arcs,
Cantor approximants) are evaluated directly.

Angles live on the de-symmetrized circle: the empirical measure of the
lattice points on radius sqrt(n) is folded by its eight symmetries and the
angle substitution theta -> theta/4, so that coefficient m here corresponds
to coefficient 4m of the unfolded measure.
"""

from __future__ import annotations

import math

import numpy as np

from . import arithmetic

# atoms closer than this (radians) are the same point mass
_MERGE_TOL = 1e-9
_WEIGHT_TOL = 1e-12


def _fold_angle(angle: float) -> float:
    """Map to (-pi, pi]; the band within the merge tolerance of the seam
    collapses to pi so that mirroring cannot split it."""
    a = math.remainder(angle, math.tau)
    if a <= _MERGE_TOL - math.pi or a >= math.pi - _MERGE_TOL:
        return math.pi
    return a


def _canonical(atoms) -> tuple[tuple[float, float], ...]:
    folded = []
    for angle, weight in atoms:
        if not weight > 0:
            raise ValueError(f"atom weights must be positive, got {weight!r}")
        folded.append((_fold_angle(angle), float(weight)))
    folded.sort()
    merged: list[list[float]] = []
    for a, w in folded:
        if merged and a - merged[-1][0] <= _MERGE_TOL:
            merged[-1][1] += w
        else:
            merged.append([a, w])
    return tuple((a, w) for a, w in merged)


class AtomicMeasure:
    """A finite list of (angle, weight) atoms with total weight 1.

    Angles are canonicalized to (-pi, pi] and atoms within 1e-9 radians are
    merged. The atom multiset must be invariant under angle negation.
    """

    __slots__ = ("atoms",)

    def __init__(self, atoms):
        canon = _canonical(atoms)
        total = math.fsum(w for _, w in canon)
        if abs(total - 1.0) > _WEIGHT_TOL:
            raise ValueError(f"weights must sum to 1, got {total!r}")
        mirrored = _canonical([(-a, w) for a, w in canon])
        symmetric = len(mirrored) == len(canon) and all(
            abs(a1 - a2) <= 2 * _MERGE_TOL and abs(w1 - w2) <= 1e-9
            for (a1, w1), (a2, w2) in zip(canon, mirrored)
        )
        if not symmetric:
            raise ValueError("atoms are not symmetric under angle negation")
        self.atoms = canon

    def __repr__(self):
        inner = ", ".join(f"({a:.6g}, {w:.6g})" for a, w in self.atoms)
        return f"AtomicMeasure([{inner}])"

    def __eq__(self, other):
        if not isinstance(other, AtomicMeasure):
            return NotImplemented
        return self.atoms == other.atoms

    def __hash__(self):
        return hash(self.atoms)

    def close_to(self, other: "AtomicMeasure", tol: float = 1e-10) -> bool:
        """Atom-by-atom comparison within tol, in canonical order."""
        if len(self.atoms) != len(other.atoms):
            return False
        return all(
            abs(a1 - a2) <= tol and abs(w1 - w2) <= tol
            for (a1, w1), (a2, w2) in zip(self.atoms, other.atoms)
        )


def nu_from_lattice(n: int) -> AtomicMeasure:
    """Empirical angular measure of the circle a^2 + b^2 = n, folded to the
    de-symmetrized circle: atoms at 4*atan2(b, a) with equal weights."""
    pts = arithmetic.lattice_points(n)
    if not pts:
        raise ValueError(f"{n} is not a sum of two squares")
    w = 1.0 / len(pts)
    return AtomicMeasure([(4.0 * math.atan2(b, a), w) for a, b in pts])


def fourier(measure: AtomicMeasure, k: int) -> tuple[float, ...]:
    """Coefficients (sum_w cos(m*angle)) for m = 1..k."""
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")
    return tuple(
        math.fsum(w * math.cos(m * a) for a, w in measure.atoms)
        for m in range(1, k + 1)
    )


def convolve(m1: AtomicMeasure, m2: AtomicMeasure) -> AtomicMeasure:
    """All pairwise angle sums with product weights; Fourier coefficients
    multiply entrywise."""
    return AtomicMeasure(
        [(a1 + a2, w1 * w2) for a1, w1 in m1.atoms for a2, w2 in m2.atoms]
    )


def upsilon(theta: float, M: int) -> AtomicMeasure:
    """The M-fold atomic family: M+1 atoms at (M-2j)*theta, j = 0..M, each
    of weight 1/(M+1). Its m-th Fourier coefficient is G_{M+1}(m*theta)."""
    if not isinstance(M, int) or M < 1:
        raise ValueError(f"M must be a positive integer, got {M!r}")
    w = 1.0 / (M + 1)
    return AtomicMeasure([((M - 2 * j) * theta, w) for j in range(M + 1)])


def G(A: int, theta: float) -> float:
    """sin(A*t) / (A*sin(t)), extended by continuity at t in pi*Z.

    Both sines vanish at multiples of pi, so the quotient is computed from
    the offset u = t - m*pi (which flips the sign by the parity of
    m*(A-1)), with a series step for |u| below 1e-8 where the direct ratio
    loses all precision.
    """
    if not isinstance(A, int) or A < 2:
        raise ValueError(f"A must be an integer >= 2, got {A!r}")
    m = round(theta / math.pi)
    u = theta - m * math.pi
    sign = -1.0 if (m * (A - 1)) % 2 else 1.0
    if abs(u) < 1e-8:
        return sign * (1.0 - (A * A - 1.0) * u * u / 6.0)
    return sign * math.sin(A * u) / (A * math.sin(u))


def _G_array(A, theta):
    """Vector form of G; A and theta may be scalars or numpy arrays."""
    A = np.asarray(A, dtype=np.int64)
    theta = np.asarray(theta, dtype=np.float64)
    m = np.round(theta / math.pi)
    u = theta - m * math.pi
    sign = np.where((m.astype(np.int64) * (A - 1)) % 2 == 0, 1.0, -1.0)
    small = np.abs(u) < 1e-8
    safe = np.where(small, 1.0, u)
    out = np.where(
        small,
        1.0 - (A * A - 1.0) * u * u / 6.0,
        np.sin(A * safe) / (A * np.sin(safe)),
    )
    return sign * out


def gamma_curve(A: int, theta: float) -> tuple[float, float]:
    """The plane point (G_A(theta), G_A(2*theta))."""
    return (G(A, theta), G(A, 2.0 * theta))


def _sinc(x: float) -> float:
    if abs(x) < 1e-8:
        return 1.0 - x * x / 6.0
    return math.sin(x) / x


def arc_measure_fourier(theta: float, k: int) -> tuple[float, ...]:
    """Coefficients of the uniform measure on [-Theta, Theta]; the argument
    is the half-width Theta in (0, pi]. Entry m is sin(m*Theta)/(m*Theta)."""
    if not 0.0 < theta <= math.pi:
        raise ValueError(f"half-width must lie in (0, pi], got {theta!r}")
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")
    return tuple(_sinc(m * theta) for m in range(1, k + 1))


def cantor_measure_fourier(theta: float, level: int, k: int) -> tuple[float, ...]:
    """Coefficients of the uniform measure on the level-th middle-thirds
    approximant of [-theta, theta].

    Splitting off one dyadic shift per level gives the closed form
    entry m = sinc(m*theta/3^L) * prod_{j=1..L} cos(2*m*theta/3^j);
    level 0 is exactly the arc formula. Atom lists are never built (their
    size doubles per level), only the coefficients.
    """
    if not 0.0 < theta <= math.pi:
        raise ValueError(f"theta must lie in (0, pi], got {theta!r}")
    if not isinstance(level, int) or level < 0:
        raise ValueError(f"level must be a nonnegative integer, got {level!r}")
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")
    out = []
    for m in range(1, k + 1):
        v = _sinc(m * theta / 3.0**level)
        for j in range(1, level + 1):
            v *= math.cos(2.0 * m * theta / 3.0**j)
        out.append(v)
    return tuple(out)
