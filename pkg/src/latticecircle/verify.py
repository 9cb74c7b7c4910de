"""Grid and sampling checks for the inequalities behind the region oracle.

Every check returns a CheckReport and encodes one analytic fact as a
numerical sweep: strict inequalities get a small slack, monotonicity is
tested sample to sample with a bounded allowance for flat runs (doubles
round genuinely flat stretches near critical points).  A pass is strong
evidence, not a proof.  Failing reports carry the worst offending sample
in ``notes``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
import numpy as np

from .measures import G, _G_array

__all__ = [
    "CheckReport",
    "check_sinc_decreasing",
    "check_h_decreasing",
    "check_q_nonpositive",
    "check_one_third_lemma",
    "check_prime_curve_below_x4",
    "check_B2_product",
    "check_eta_convexity",
    "check_corner_lower_bound",
    "check_convexity_identity",
    "check_mixed_sign_region",
    "q",
    "run_all",
    "run_check",
    "suite_names",
]

# flat runs longer than this fraction of the grid fail a monotonicity check
_FLAT_RUN_FRACTION = 0.01


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one numeric check.

    ``passed`` is always ``max_violation <= tolerance``; ``seed`` is set
    only for randomized checks.
    """

    name: str
    grid_points: int
    max_violation: float
    passed: bool
    tolerance: float
    seed: int | None = None
    notes: str = ""


def _report(name, grid_points, max_violation, tolerance, seed=None, notes=""):
    v = float(max_violation)
    return CheckReport(
        name=name,
        grid_points=int(grid_points),
        max_violation=v,
        passed=v <= tolerance,
        tolerance=float(tolerance),
        seed=seed,
        notes=notes,
    )


def _require_grid(grid):
    if not isinstance(grid, int) or grid < 10:
        raise ValueError("grid must be an integer of at least 10")


def _require_samples(samples):
    if not isinstance(samples, int) or samples < 100:
        raise ValueError("samples must be an integer of at least 100")


def _longest_flat_run(diffs):
    nz = np.flatnonzero(diffs != 0.0)
    if nz.size == 0:
        return diffs.size
    gaps = np.diff(np.concatenate(([-1], nz, [diffs.size]))) - 1
    return int(gaps.max())


def _monotone_violation(values, grid):
    """Excess over 'strictly decreasing, short flat runs allowed'."""
    d = np.diff(values)
    rise = float(d.max())
    viol = max(0.0, rise)
    note = ""
    if viol > 0.0:
        i = int(d.argmax())
        note = f"rise of {rise:.3e} between samples {i} and {i + 1}"
    allowed = max(1, int(grid * _FLAT_RUN_FRACTION))
    run = _longest_flat_run(d)
    if run > allowed:
        viol = max(viol, (run - allowed) / grid)
        note = (note + "; " if note else "") + f"flat run of {run} samples"
    return viol, note


def check_sinc_decreasing(grid: int) -> CheckReport:
    """sin(t)/t falls strictly from 1 to 0 across [0, pi]."""
    _require_grid(grid)
    t = np.linspace(0.0, math.pi, grid)
    v = np.ones(grid)
    v[1:] = np.sin(t[1:]) / t[1:]
    viol, note = _monotone_violation(v, grid)
    edges = max(abs(v[0] - 1.0), abs(v[-1]), float(-v.min()))
    viol = max(viol, edges - 1e-12)
    return _report("sinc-decreasing", grid, viol, 0.0, notes=note)


# below this the quotient form of h rounds non-monotonically (the true
# decrement drops under one ulp), so a short series takes over
_H_SERIES_CUT = 1e-2


def _h_values(t):
    out = np.empty_like(t)
    small = t < _H_SERIES_CUT
    ts = t[small]
    t2 = ts * ts
    t4 = t2 * t2
    out[small] = 1.0 - t4 / 15.0 - 4.0 * t4 * t2 / 189.0
    tb = t[~small]
    out[~small] = tb**3 * np.cos(tb) / np.sin(tb) ** 3
    return out


def check_h_decreasing(grid: int) -> CheckReport:
    """t^3 cos(t)/sin^3(t) falls strictly from 1 to 0 on [0, pi/2].

    The value at 0 is the continuity limit 1; the first few samples round
    flat at double precision, which the flat-run allowance absorbs.
    """
    _require_grid(grid)
    t = np.linspace(0.0, math.pi / 2.0, grid)
    v = _h_values(t)
    viol, note = _monotone_violation(v, grid)
    edges = max(abs(v[0] - 1.0), abs(v[-1]))
    viol = max(viol, edges - 1e-12)
    return _report("h-decreasing", grid, viol, 0.0, notes=note)


def _q_terms(s, cos, sin):
    c = cos(s)
    n = sin(s)
    return (
        2 * c**3 * n * s * s
        - c**3 * n
        + c * n * s * s
        - 4 * c * c * n * n * s
        - s**3
        + n * c
        + s * n * n
    )


def q(s):
    """Trig combination whose sign settles the slope bound; vanishes to
    ninth order at 0."""
    return _q_terms(np.asarray(s, dtype=float), np.cos, np.sin)


def check_q_nonpositive(grid: int) -> CheckReport:
    """q(s) <= 0 on [0, pi/2], plus a high-precision fit of the leading
    Taylor coefficient -16/135.

    The fit runs at 50 digits: near s = 0.01 the value is ~1e-19 while
    double evaluation carries ~1e-18 of cancellation noise.
    """
    _require_grid(grid)
    s = np.linspace(0.0, math.pi / 2.0, grid)
    vals = q(s)
    viol = max(0.0, float(vals.max()))
    note = ""
    if viol > 1e-12:
        i = int(vals.argmax())
        note = f"q({s[i]:.6f}) = {vals[i]:.3e}"
    with mpmath.workdps(50):
        s0 = mpmath.mpf(1) / 100
        lead = _q_terms(s0, mpmath.cos, mpmath.sin) / s0**9
        ratio = float(lead / (mpmath.mpf(-16) / 135))
    viol = max(viol, abs(ratio - 1.0) - 0.01)
    notes = f"leading coefficient ratio {ratio:.6f}"
    if note:
        notes += "; " + note
    return _report("q-nonpositive", grid, viol, 1e-12, notes=notes)


def check_one_third_lemma(A_max: int, grid: int) -> CheckReport:
    """|G_A(t)| < 1/3 for t in (pi/A, pi/2], A up to A_max.

    A = 3 is the lone boundary case: |G_3(pi/2)| equals 1/3 exactly, which
    the tolerance admits.
    """
    if not isinstance(A_max, int) or A_max < 4:
        raise ValueError("A_max must be an integer of at least 4")
    _require_grid(grid)
    worst = -math.inf
    worst_at = (0, 0.0)
    for A in range(3, A_max + 1):
        t = np.linspace(math.pi / A, math.pi / 2.0, grid)
        g = np.abs(_G_array(A, t))
        i = int(g.argmax())
        if g[i] - 1.0 / 3.0 > worst:
            worst = g[i] - 1.0 / 3.0
            worst_at = (A, float(t[i]))
    viol = max(0.0, worst)
    notes = ""
    if viol > 1e-12:
        notes = f"A={worst_at[0]}, t={worst_at[1]:.6f}, |G| = {worst + 1/3:.12f}"
    return _report("one-third", (A_max - 2) * grid, viol, 1e-12, notes=notes)


def check_prime_curve_below_x4(A_max: int, grid: int) -> CheckReport:
    """Wherever a curve (G_A(t), G_A(2t)) has x > 1/3, it sits below x^4."""
    if not isinstance(A_max, int) or A_max < 2:
        raise ValueError("A_max must be an integer of at least 2")
    _require_grid(grid)
    worst = -math.inf
    worst_at = (0, 0.0)
    theta = np.linspace(0.0, math.pi, grid)
    for A in range(2, A_max + 1):
        x = _G_array(A, theta)
        y = _G_array(A, 2.0 * theta)
        mask = x > 1.0 / 3.0
        d = y[mask] - x[mask] ** 4
        i = int(d.argmax())
        if d[i] > worst:
            worst = float(d[i])
            worst_at = (A, float(theta[mask][i]))
    viol = max(0.0, worst)
    notes = ""
    if viol > 1e-12:
        notes = f"A={worst_at[0]}, t={worst_at[1]:.6f}"
    return _report("prime-curve-x4", (A_max - 1) * grid, viol, 1e-12, notes=notes)


def check_B2_product(samples: int, seed: int = 0) -> CheckReport:
    """Products of pairs from the lower lens land in the upper wedge.

    Lower lens: |x| <= 1/sqrt(2), 2x^2 - 1 <= y <= 0.  Upper wedge:
    |x| <= 1/2, 0 <= y <= (2|x| - 1)^2.
    """
    _require_samples(samples)
    rng = np.random.default_rng(seed)
    x = rng.uniform(-1.0 / math.sqrt(2.0), 1.0 / math.sqrt(2.0), size=(2, samples))
    y = rng.uniform(2.0 * x * x - 1.0, 0.0)
    px = x[0] * x[1]
    py = y[0] * y[1]
    viol = max(
        0.0,
        float((np.abs(px) - 0.5).max()),
        float((-py).max()),
        float((py - (2.0 * np.abs(px) - 1.0) ** 2).max()),
    )
    notes = ""
    if viol > 1e-12:
        i = int((py - (2.0 * np.abs(px) - 1.0) ** 2).argmax())
        notes = f"product ({px[i]:.6f}, {py[i]:.6f})"
    return _report("b2-product", samples, viol, 1e-12, seed=seed, notes=notes)


# deepest log coordinate the convexity sweep visits; past this the curve
# hugs its straight asymptote to within double rounding and divided
# differences carry no signal
_Z_FLOOR = -8.0


def check_eta_convexity(A_max: int, grid: int) -> CheckReport:
    """Each odd corner arc, read in log-log coordinates, is convex and
    increasing with slope capped by 4/3, the cap attained at the corner.

    Samples are uniform in the log abscissa z on [-8, 0]; the matching t
    values come from a vectorized bisection on |G_A|.
    """
    if not isinstance(A_max, int) or A_max < 3 or A_max % 2 == 0:
        raise ValueError("A_max must be an odd integer of at least 3")
    _require_grid(grid)
    half_pi = math.pi / 2.0
    z_targets = np.linspace(_Z_FLOOR, 0.0, grid)
    worst = 0.0
    notes = ""
    for A in range(3, A_max + 1, 2):
        target = np.exp(z_targets) / A
        lo = np.full(grid, half_pi - math.pi / (2.0 * A))
        hi = np.full(grid, half_pi)
        for _ in range(64):
            mid = 0.5 * (lo + hi)
            below = np.abs(_G_array(A, mid)) < target
            lo = np.where(below, mid, lo)
            hi = np.where(below, hi, mid)
        t = 0.5 * (lo + hi)
        z = np.log(A * np.abs(_G_array(A, t)))
        w = np.log(_G_array(A, 2.0 * t))
        slope = np.diff(w) / np.diff(z)
        sdd = np.diff(slope) / (z[2:] - z[:-2])
        v = max(
            max(0.0, float(-slope.min())),
            max(0.0, float(slope.max()) - (4.0 / 3.0 + 1e-6)),
            max(0.0, float(-sdd.min()) - 1e-8),
            max(0.0, abs(float(slope[-1]) - 4.0 / 3.0) - 1e-3),
            max(0.0, abs(float(w[-1])) - 1e-12),
        )
        if v > worst:
            worst = v
            notes = f"A={A}"
    count = ((A_max - 1) // 2) * grid
    return _report("eta-convexity", count, worst, 0.0, notes=notes if worst > 0.0 else "")


def check_corner_lower_bound(samples: int, seed: int = 0) -> CheckReport:
    """Products of corner-arc points obey y >= (A|x|)^(4/3)."""
    _require_samples(samples)
    rng = np.random.default_rng(seed)
    worst = -math.inf
    notes = ""
    for _ in range(samples):
        nfac = int(rng.integers(1, 4))
        factors = []
        product = 1
        for _ in range(nfac):
            A = 2 * int(rng.integers(1, 11)) + 1
            if product * A > 100_000:
                break
            factors.append(A)
            product *= A
        u = 1.0
        y = 1.0
        for A in factors:
            t = rng.uniform(math.pi / 2.0 - math.pi / (2.0 * A), math.pi / 2.0)
            u *= A * abs(G(A, t))
            y *= G(A, 2.0 * t)
        d = u ** (4.0 / 3.0) - y
        if d > worst:
            worst = d
            if d > 1e-9:
                notes = f"factors {factors}, deficit {d:.3e}"
    return _report(
        "corner-lower-bound", samples, max(0.0, worst), 1e-9, seed=seed, notes=notes
    )


def check_convexity_identity(samples: int, seed: int = 0) -> CheckReport:
    """(2a^2-1)(2b^2-1) - (2(ab)^2-1) equals 2(a^2-1)(b^2-1), hence >= 0."""
    _require_samples(samples)
    rng = np.random.default_rng(seed)
    x1 = rng.uniform(0.0, 1.0, samples)
    x2 = rng.uniform(0.0, 1.0, samples)
    lhs = (2.0 * x1 * x1 - 1.0) * (2.0 * x2 * x2 - 1.0)
    rhs = 2.0 * (x1 * x2) ** 2 - 1.0
    resid = lhs - rhs - 2.0 * (x1 * x1 - 1.0) * (x2 * x2 - 1.0)
    viol = max(0.0, float(np.abs(resid).max()), float((rhs - lhs).max()))
    return _report("convexity-identity", samples, viol, 1e-12, seed=seed)


def check_mixed_sign_region(samples: int, seed: int = 0) -> CheckReport:
    """Products with a mixed-sign factor stay under the wedge (2|x|-1)^2.

    A factor triggers when its parameter has left the corner interval:
    odd A with t in [pi/(2A), pi/2 - pi/(2A)], or even A with
    t >= pi/(2A).  Single triggered factors also satisfy the dichotomy
    y <= 0, or y <= (2|x|-1)^2 with |x| < 1/3.
    """
    _require_samples(samples)
    rng = np.random.default_rng(seed)
    worst = -math.inf
    notes = ""
    for _ in range(samples):
        nfac = int(rng.integers(1, 5))
        x = 1.0
        y = 1.0
        spec = []
        for j in range(nfac):
            if j == 0:
                if rng.integers(0, 2):
                    A = 2 * int(rng.integers(1, 13)) + 1
                    t = rng.uniform(
                        math.pi / (2.0 * A), math.pi / 2.0 - math.pi / (2.0 * A)
                    )
                else:
                    A = 2 * int(rng.integers(1, 13))
                    t = rng.uniform(math.pi / (2.0 * A), math.pi / 2.0)
            else:
                A = int(rng.integers(2, 26))
                t = rng.uniform(0.0, math.pi / 2.0)
            spec.append(A)
            x *= G(A, t)
            y *= G(A, 2.0 * t)
        v = y - (2.0 * abs(x) - 1.0) ** 2
        if nfac == 1:
            # either branch of the dichotomy may hold; charge the best one
            v = max(v, min(y, max(v, abs(x) - 1.0 / 3.0)))
        if v > worst:
            worst = v
            if v > 1e-9:
                notes = f"factors {spec}, point ({x:.6f}, {y:.6f})"
    # the wedge bound is the squared form; the variant 2|x|^2 - 1 is already
    # false for a single triggered factor (A=3, t=pi/6 gives y=0 > -1/9)
    form = "bound tested as (2|x|-1)^2"
    notes = form + ("; " + notes if notes else "")
    return _report(
        "mixed-sign", samples, max(0.0, worst), 1e-9, seed=seed, notes=notes
    )


_SUITE = {
    "sinc-decreasing": lambda seed: check_sinc_decreasing(10_000),
    "h-decreasing": lambda seed: check_h_decreasing(100_000),
    "q-nonpositive": lambda seed: check_q_nonpositive(10_000),
    "one-third": lambda seed: check_one_third_lemma(100, 10_000),
    "prime-curve-x4": lambda seed: check_prime_curve_below_x4(50, 10_000),
    "b2-product": lambda seed: check_B2_product(100_000, seed=seed),
    "eta-convexity": lambda seed: check_eta_convexity(21, 10_000),
    "corner-lower-bound": lambda seed: check_corner_lower_bound(10_000, seed=seed),
    "convexity-identity": lambda seed: check_convexity_identity(100_000, seed=seed),
    "mixed-sign": lambda seed: check_mixed_sign_region(10_000, seed=seed),
}


def suite_names() -> tuple:
    return tuple(_SUITE)


def run_check(name: str, seed: int = 0) -> CheckReport:
    if name not in _SUITE:
        raise KeyError(f"unknown check {name!r}; choices: {', '.join(_SUITE)}")
    return _SUITE[name](seed)


def run_all(seed: int = 0) -> list:
    """Run the default suite; order is fixed and independent of seed."""
    return [fn(seed) for fn in _SUITE.values()]
