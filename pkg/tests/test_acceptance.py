"""End-to-end guarantees: pinned values, region bounds, runtime budgets.

Every numeric target here was frozen from an independent computation
(exact rational arithmetic, brute-force lattice enumeration, or a
high-precision reference run) before the library produced it.
"""

import math
import random
import time
from fractions import Fraction

import numpy as np
import pytest

from latticecircle import arithmetic, cli, measures, region, verify


@pytest.fixture(scope="module")
def scan_million(tmp_path_factory):
    path = tmp_path_factory.mktemp("scan") / "million.csv"
    t0 = time.perf_counter()
    rc = cli.main(["scan", "--max-n", "1000000", "--jobs", "4", "--output", str(path)])
    elapsed = time.perf_counter() - t0
    assert rc == 0
    assert elapsed < 300.0
    return np.genfromtxt(path, delimiter=",", names=True)


def test_small_fourier_projections_match_exact_rationals():
    # cos(4m * atan2(b, a)) = Re((a+ib)^(4m)) / n^(2m), so the mean over
    # the lattice points is a rational number we can pin exactly.
    def real_power(a, b, e):
        re, im = 1, 0
        for _ in range(e):
            re, im = re * a - im * b, re * b + im * a
        return re

    def exact(n, m):
        pts = arithmetic.lattice_points(n)
        total = sum(real_power(a, b, 4 * m) for a, b in pts)
        return Fraction(total, len(pts) * n ** (2 * m))

    assert exact(5, 1) == Fraction(-7, 25)
    assert exact(5, 2) == Fraction(-527, 625)
    assert exact(25, 1) == Fraction(-143, 625)

    nu5 = measures.nu_from_lattice(5)
    got = measures.fourier(nu5, 2)
    assert got[0] == pytest.approx(-7 / 25, abs=1e-14)
    assert got[1] == pytest.approx(-527 / 625, abs=1e-14)
    assert measures.fourier(measures.nu_from_lattice(25), 2)[0] == pytest.approx(
        -143 / 625, abs=1e-14
    )

    measures.fourier(nu5, 2)
    t0 = time.perf_counter()
    for _ in range(100):
        measures.fourier(nu5, 2)
    assert (time.perf_counter() - t0) / 100 < 1e-3


def test_representation_counts_match_brute_enumeration():
    t0 = time.perf_counter()
    limit = 100_000
    side = np.arange(-316, 317, dtype=np.int64)
    sums = np.add.outer(side * side, side * side).ravel()
    sums = sums[(sums >= 1) & (sums <= limit)]
    brute = np.bincount(sums, minlength=limit + 1)
    ours = np.fromiter(
        (arithmetic.r2(n) for n in range(1, limit + 1)), dtype=np.int64, count=limit
    )
    assert np.array_equal(brute[1:], ours)
    assert time.perf_counter() - t0 < 30.0


def test_million_scan_sits_above_the_parabola(scan_million):
    rows = scan_million
    assert rows.shape[0] > 0
    assert np.all(rows["y"] >= 2.0 * rows["x"] ** 2 - 1.0 - 1e-9)


def test_million_scan_obeys_the_max_curve_outside_one_third(scan_million):
    x = np.abs(scan_million["x"])
    y = scan_million["y"]
    outer = x > 1.0 / 3.0
    cap = np.maximum(x**4, (2.0 * x - 1.0) ** 2)
    assert np.all(y[outer] <= cap[outer] + 1e-9)


def test_squarefree_scan_never_leaves_the_thin_region(tmp_path):
    path = tmp_path / "sf.csv"
    rc = cli.main(
        [
            "scan", "--max-n", "100000", "--squarefree-only",
            "--jobs", "2", "--output", str(path),
        ]
    )
    assert rc == 0
    rows = np.genfromtxt(path, delimiter=",", names=True)
    x = np.abs(rows["x"])
    y = rows["y"]
    assert np.all(y >= 2.0 * x**2 - 1.0 - 1e-9)
    assert np.all(y <= np.maximum(x**4, (2.0 * x - 1.0) ** 2) + 1e-9)


def test_prime_power_rows_split_cleanly_by_parity(tmp_path):
    path = tmp_path / "pp.csv"
    rc = cli.main(
        ["prime-powers", "--max-exp", "19", "--max-prime", "10000", "--output", str(path)]
    )
    assert rc == 0
    rows = np.genfromtxt(path, delimiter=",", names=True)
    x = rows["x"]
    y = rows["y"]
    even = rows["M"].astype(np.int64) % 2 == 0
    cap = np.maximum(x**4, (2.0 * np.abs(x) - 1.0) ** 2)

    inner_even = even & (np.abs(x) <= 1.0 / 3.0)
    assert np.max(y[inner_even] - cap[inner_even]) > 0.05

    outer_odd = ~even & (np.abs(x) > 1.0 / 3.0)
    assert np.all(y[outer_odd] <= x[outer_odd] ** 4 + 1e-9)


def test_spike_corner_heights_and_one_sided_slopes():
    t0 = time.perf_counter()
    for k in range(1, 6):
        m = 2 * k + 1
        xk = 1.0 / m
        assert region.f1(k, xk) == pytest.approx(1.0, abs=1e-10)
        assert region.f2(k, xk) == pytest.approx(1.0, abs=1e-10)

        h = 1e-7
        s1 = (region.f1(k, xk) - region.f1(k, xk - h)) / h
        assert s1 == pytest.approx(4.0 * m, rel=1e-3)

        h = 1e-6
        s2 = (region.f2(k, xk) - region.f2(k, xk - h)) / h
        assert s2 == pytest.approx(4.0 * m / 3.0, rel=1e-2)
    assert time.perf_counter() - t0 < 1.0


def test_free_corner_assignments_never_beat_the_upper_face():
    rng = random.Random(77)
    cases = ((3, [(3,)]), (9, [(9,), (3, 3)]), (25, [(25,), (5, 5)]))
    for m, splits in cases:
        k = (m - 1) // 2
        for _ in range(100):
            x = rng.uniform(1e-6, 1.0 / m)
            cap = region.f2(k, x) + 1e-9
            for _ in range(100):
                fac = splits[rng.randrange(len(splits))]
                y = 1.0
                rest = x
                budget = m
                for i, A in enumerate(fac):
                    budget //= A
                    if i == len(fac) - 1:
                        u = rest
                    else:
                        lo, hi = rest * budget, 1.0 / A
                        u = lo * (hi / lo) ** rng.random()
                    t = region.solve_G_on_corner(A, min(u, 1.0 / A))
                    y *= measures.G(A, 2.0 * t)
                    rest /= u
                assert y <= cap, (m, x, fac)


def test_check_command_verdicts_along_the_top_edge():
    for k in range(1, 11):
        assert cli.main(["check", repr(1.0 / (2 * k + 1)), "1.0"]) == 0
    for x in ("0.0", "1.0", "-1.0"):
        assert cli.main(["check", x, "1.0"]) == 0

    rng = random.Random(88)
    recips = [1.0 / m for m in range(3, 20000, 2)]
    picked = 0
    while picked < 50:
        x = rng.uniform(0.0, 1.0 / 3.0)
        if x <= 0.0 or min(abs(x - r) for r in recips) < 1e-4:
            continue
        picked += 1
        assert cli.main(["check", repr(x), "1.0"]) == 1, x


def test_eta_grid_classification_matches_the_membership_oracle():
    hits = {0, 400, 480, 496, 500, 504, 520, 600, 1000}
    for j in range(1001):
        a = j / 1000.0
        got = region.classify_eta(a)
        assert got == (j in hits), j
        assert got == region.is_attainable(2.0 * a - 1.0, 1.0).attainable, j


def test_lemma_suite_is_green():
    t0 = time.perf_counter()
    reports = verify.run_all(seed=0)
    assert time.perf_counter() - t0 < 120.0
    assert [r.name for r in reports] == list(verify.suite_names())
    assert len(reports) == 10
    for r in reports:
        assert r.passed, (r.name, r.max_violation)
        assert r.max_violation <= r.tolerance
    q = next(r for r in reports if r.name == "q-nonpositive")
    assert "ratio" in q.notes
    assert cli.main(["verify", "all"]) == 0


def test_convolution_acts_entrywise_on_coefficients():
    rng = random.Random(11)
    ns = [n for n in range(2, 400) if arithmetic.is_in_S(n)]

    def draw():
        if rng.random() < 0.5:
            return measures.nu_from_lattice(rng.choice(ns))
        return measures.upsilon(rng.uniform(0.05, math.pi - 0.05), rng.randint(1, 6))

    for _ in range(1000):
        m1, m2 = draw(), draw()
        a = measures.fourier(m1, 10)
        b = measures.fourier(m2, 10)
        c = measures.fourier(measures.convolve(m1, m2), 10)
        for i in range(10):
            assert abs(c[i] - a[i] * b[i]) <= 1e-12


def test_cantor_iterates_converge_and_start_at_the_arc():
    for theta in (math.pi, 2.2, 1.0, 0.4):
        c40 = measures.cantor_measure_fourier(theta, 40, 16)
        c50 = measures.cantor_measure_fourier(theta, 50, 16)
        assert max(abs(p - q) for p, q in zip(c40, c50)) < 1e-9
        level0 = measures.cantor_measure_fourier(theta, 0, 16)
        assert level0 == measures.arc_measure_fourier(theta, 16)
