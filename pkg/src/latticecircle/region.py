"""The plane region swept by the first two coefficients (x, y).

Boundary pieces: the max curve max(x^4, (2|x|-1)^2) governing |x| >= 1/3,
and for each odd reciprocal x_k = 1/(2k+1) a thin spike between the
parabola f1 and the divisor-indexed envelope f2, meeting at (x_k, 1).
Membership oracles take an explicit tolerance; boundary points count as
inside, since the region is closed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from . import arithmetic
from .measures import G

_BISECT_WIDTH = 1e-13
_BISECT_MAX_ITER = 200


@dataclass(frozen=True)
class RegionVerdict:
    """Outcome of a membership query.

    certificate is one of "below-max-curve", "spike", "boundary-y1-point",
    "outside". For "spike", k/divisor/t_root name the witnessing curve; for
    "outside", violated names the failed bound.
    """

    attainable: bool
    certificate: str
    tolerance: float
    k: int | None = None
    divisor: int | None = None
    t_root: float | None = None
    violated: str | None = None


def max_curve(x: float) -> float:
    """max(x^4, (2|x|-1)^2); the pieces cross at |x| = sqrt(2) - 1."""
    ax = abs(x)
    return max(ax**4, (2.0 * ax - 1.0) ** 2)


def in_P2(x: float, y: float) -> bool:
    """The two-coefficient constraint satisfied by every measure:
    2x^2 - 1 <= y <= 1, within 1e-12."""
    return 2.0 * x * x - 1.0 - 1e-12 <= y <= 1.0 + 1e-12


def f1(k: int, x: float) -> float:
    """Lower spike boundary 2(2k+1)^2 x^2 - 1 on [0, x_k]; the parabola
    y = 2x^2 - 1 scaled into the corner (x_k, 1), slope 4(2k+1) there."""
    _check_spike_args(k, x)
    m = 2 * k + 1
    return 2.0 * (m * x) ** 2 - 1.0


def _check_spike_args(k: int, x: float) -> None:
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")
    if not -1e-12 <= x <= 1.0 / (2 * k + 1) + 1e-12:
        raise ValueError(f"x={x!r} outside [0, 1/{2 * k + 1}]")


def solve_G_on_corner(A: int, target: float) -> float:
    """The unique t in [pi/2 - pi/(2A), pi/2] with |G_A(t)| = target.

    |G_A| rises from 0 to 1/A across this interval, so plain bisection
    converges; stops at width 1e-13 or 200 halvings.
    """
    if not isinstance(A, int) or A < 3 or A % 2 == 0:
        raise ValueError(f"A must be an odd integer >= 3, got {A!r}")
    if not -1e-12 <= target <= 1.0 / A + 1e-12:
        raise ValueError(f"target={target!r} outside [0, 1/{A}]")
    target = min(max(target, 0.0), 1.0 / A)
    lo = math.pi / 2 - math.pi / (2 * A)
    hi = math.pi / 2
    for _ in range(_BISECT_MAX_ITER):
        mid = 0.5 * (lo + hi)
        if abs(G(A, mid)) < target:
            lo = mid
        else:
            hi = mid
        if hi - lo < _BISECT_WIDTH:
            break
    return 0.5 * (lo + hi)


@lru_cache(maxsize=None)
def _odd_divisors_above_one(m: int) -> tuple[int, ...]:
    divisors = [1]
    for p, e in arithmetic.factorize(m).factors:
        divisors = [d * p**i for d in divisors for i in range(e + 1)]
    return tuple(sorted(d for d in divisors if d > 1))


def g_spike(k: int, A: int, x: float) -> float:
    """Height of the divisor-A candidate curve over the spike at x: chase
    |G_A(t)| = x(2k+1)/A back to its root t and return G_A(2t).

    The curve starts at (0, 0) when t sits at the left corner endpoint, so
    g_spike(k, A, 0) is 0 by convention.
    """
    _check_spike_args(k, x)
    m = 2 * k + 1
    if not isinstance(A, int) or A <= 1 or A % 2 == 0 or m % A != 0:
        raise ValueError(f"A={A!r} is not an odd divisor > 1 of {m}")
    if x <= 0.0:
        return 0.0
    t = solve_G_on_corner(A, min(x * m / A, 1.0 / A))
    return G(A, 2.0 * t)


def _f2_witness(k: int, x: float) -> tuple[float, int, float]:
    """(f2(k, x), witnessing divisor, its root t)."""
    m = 2 * k + 1
    best = (-math.inf, 0, 0.0)
    for A in _odd_divisors_above_one(m):
        if x <= 0.0:
            val, t = 0.0, math.pi / 2 - math.pi / (2 * A)
        else:
            t = solve_G_on_corner(A, min(x * m / A, 1.0 / A))
            val = G(A, 2.0 * t)
        if val > best[0]:
            best = (val, A, t)
    return best


def f2(k: int, x: float) -> float:
    """Upper spike boundary: max of g_spike over the odd divisors A > 1 of
    2k+1. Equals 1 exactly at x_k; slope (4/3)(2k+1) at the corner."""
    _check_spike_args(k, x)
    return _f2_witness(k, x)[0]


def is_attainable(x: float, y: float, tol: float = 1e-9) -> RegionVerdict:
    """Membership oracle for the closed region of limit points (x, y).

    A point is inside iff it sits between 2x^2-1 and the max curve, or
    inside some spike k at |x| <= x_k, or on the x = 0 segment. Only
    finitely many k are feasible at a given x, since the spike k lives on
    [0, 1/(2k+1)].
    """
    if abs(x) > 1.0 or abs(y) > 1.0:
        raise ValueError(f"({x!r}, {y!r}) outside [-1, 1]^2")
    ax = abs(x)
    if y < 2.0 * ax * ax - 1.0 - tol:
        return RegionVerdict(False, "outside", tol, violated="y < 2x^2 - 1")
    if ax <= tol:
        cert = "boundary-y1-point" if y >= 1.0 - tol else "below-max-curve"
        return RegionVerdict(True, cert, tol)
    if y <= max_curve(ax) + tol:
        if y >= 1.0 - tol and ax >= 1.0 - tol:
            return RegionVerdict(True, "boundary-y1-point", tol)
        return RegionVerdict(True, "below-max-curve", tol)
    # Above the curve only the spikes remain, and spike k lives on
    # [0, x_k]. Every divisor curve of spike k stays below (2k+1)*x (write
    # 2t = pi - s on the corner interval: y = G_A(s/2) * (2k+1)x), so k is
    # feasible only when (2k+1)*ax + tol >= y; that cuts the search to a
    # handful of k regardless of how small ax is.
    m = 3
    while True:
        k = (m - 1) // 2
        x_k = 1.0 / m
        if x_k < ax:
            # corners at and beyond m sit left of ax; only a corner within
            # tol can still claim the point, and only at height 1
            if ax <= x_k + tol and y >= 1.0 - tol:
                val, A, t = _f2_witness(k, x_k)
                return RegionVerdict(True, "spike", tol, k=k, divisor=A, t_root=t)
            break
        v = m * ax
        if y > v + tol:
            lo = math.ceil((y - tol) / ax)
            m = max(m + 2, lo + 1 if lo % 2 == 0 else lo)
            continue
        if f1(k, ax) > y + tol:
            break  # f1 grows with k at fixed ax; no later spike reaches down
        val, A, t = _f2_witness(k, ax)
        if y <= val + tol:
            return RegionVerdict(True, "spike", tol, k=k, divisor=A, t_root=t)
        m += 2
    return RegionVerdict(
        False, "outside", tol, violated="y > max curve and above every spike"
    )


def is_squarefree_attainable(x: float, y: float, tol: float = 1e-9) -> RegionVerdict:
    """Membership oracle for limits along square-free n: the spikes drop
    out and the region is exactly 2x^2-1 <= y <= max_curve(|x|)."""
    if abs(x) > 1.0 or abs(y) > 1.0:
        raise ValueError(f"({x!r}, {y!r}) outside [-1, 1]^2")
    ax = abs(x)
    if y < 2.0 * ax * ax - 1.0 - tol:
        return RegionVerdict(False, "outside", tol, violated="y < 2x^2 - 1")
    if y > max_curve(ax) + tol:
        return RegionVerdict(False, "outside", tol, violated="y > max curve")
    return RegionVerdict(True, "below-max-curve", tol)


def classify_eta(a: float) -> bool:
    """Whether the two-point family a*(mass at 0) + (1-a)*(mass at pi/4,
    folded) is a limit point: true exactly for a in {0, 1/2, 1} and
    a = 1/2 +- 1/(2(2k+1)).

    The coefficient pair of the family is (2a-1, 1), so this reduces to
    the y = 1 slice of is_attainable plus exact detection of the odd
    reciprocals at double precision.
    """
    if not 0.0 <= a <= 1.0:
        raise ValueError(f"a must lie in [0, 1], got {a!r}")
    c = 2.0 * a - 1.0
    ac = abs(c)
    if ac <= 1e-12 or abs(ac - 1.0) <= 1e-12:
        return True
    q = round(1.0 / ac)
    if q >= 3 and q % 2 == 1 and abs(ac - 1.0 / q) <= 1e-12:
        return True
    return is_attainable(c, 1.0).attainable


def spike_sample(k: int, s: float, t: float) -> tuple[float, float]:
    """A point of spike k: the componentwise product of the boundary point
    (s, f2(k, s)) with the parabola point (t, 2t^2 - 1)."""
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")
    if not 0.0 < s <= 1.0 / (2 * k + 1) + 1e-12:
        raise ValueError(f"s={s!r} outside (0, 1/{2 * k + 1}]")
    if not 0.0 < t <= 1.0 + 1e-12:
        raise ValueError(f"t={t!r} outside (0, 1]")
    s = min(s, 1.0 / (2 * k + 1))
    t = min(t, 1.0)
    return (s * t, f2(k, s) * (2.0 * t * t - 1.0))
