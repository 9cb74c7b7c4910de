"""Command-line front end.

Subcommands: ``scan`` (Fourier points of every n in S up to a bound),
``prime-powers`` (curve points for split prime powers), ``check`` (region
membership for one point), ``spike`` (profile of one spike), ``verify``
(the lemma check suite), ``cantor`` (Fourier coefficients of Cantor
iterates).  All tabular output is UTF-8 CSV with LF endings and floats
printed to 17 significant digits so runs diff cleanly.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import measures, region, verify
from .arithmetic import primes_up_to, split_prime_angle

__all__ = [
    "cmd_scan",
    "cmd_prime_powers",
    "cmd_check",
    "cmd_spike",
    "cmd_verify",
    "cmd_cantor",
    "main",
    "entry",
]

_CHUNK = 1 << 17
_MAX_SCAN = 10**9

# split-prime angles are reused across every chunk a worker handles
_ANGLE_CACHE: dict = {}


def _angle(p: int) -> float:
    a = _ANGLE_CACHE.get(p)
    if a is None:
        a = split_prime_angle(p).desym_angle
        _ANGLE_CACHE[p] = a
    return a


def _scan_chunk(task):
    """Rows for n in [lo, hi): factor by sieving, fold in one Fourier
    factor per prime power, keep n in S."""
    lo, hi, squarefree_only = task
    n = np.arange(lo, hi, dtype=np.int64)
    rem = n.copy()
    in_s = np.ones(n.size, dtype=bool)
    sqfree = np.ones(n.size, dtype=bool)
    r2m = np.ones(n.size, dtype=np.int64)
    x = np.ones(n.size)
    y = np.ones(n.size)
    for p in primes_up_to(math.isqrt(hi - 1)):
        mask = rem % p == 0
        if not mask.any():
            continue
        e = np.zeros(n.size, dtype=np.int64)
        while mask.any():
            rem[mask] //= p
            e[mask] += 1
            mask = rem % p == 0
        sqfree &= e <= 1
        if p == 2:
            x = np.where((e & 1) == 1, -x, x)
        elif p % 4 == 3:
            in_s &= (e & 1) == 0
        else:
            has = e > 0
            theta = _angle(p)
            A = (e[has] + 1).astype(np.float64)
            r2m[has] *= e[has] + 1
            x[has] *= np.sin(A * theta) / (A * math.sin(theta))
            y[has] *= np.sin(A * (2.0 * theta)) / (A * math.sin(2.0 * theta))
    # leftover factor is 1 or a single prime above sqrt(hi), exponent 1
    left = np.flatnonzero(rem > 1)
    for i in left:
        q = int(rem[i])
        if q % 4 == 3:
            in_s[i] = False
        else:
            r2m[i] *= 2
            xf = math.cos(_angle(q))
            x[i] *= xf
            # double-angle identity: direct sin(2*theta) loses digits when
            # the angle hugs pi/2
            y[i] *= 2.0 * xf * xf - 1.0
    keep = in_s & sqfree if squarefree_only else in_s
    rows = []
    for i in np.flatnonzero(keep):
        rows.append(f"{n[i]},{4 * r2m[i]},{x[i]:.17g},{y[i]:.17g}")
    return rows


def _open_output(path):
    if path is None:
        return sys.stdout, False
    return open(path, "w", encoding="utf-8", newline="\n"), True


def cmd_scan(max_n: int, squarefree_only: bool = False, output_path=None, jobs: int = 1) -> int:
    if max_n < 1 or max_n > _MAX_SCAN:
        print(f"scan: max-n must be in [1, {_MAX_SCAN}], got {max_n}", file=sys.stderr)
        return 2
    tasks = [
        (lo, min(lo + _CHUNK, max_n + 1), squarefree_only)
        for lo in range(1, max_n + 1, _CHUNK)
    ]
    out, close = _open_output(output_path)
    try:
        out.write("n,r2,x,y\n")
        if jobs > 1 and len(tasks) > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                for rows in pool.map(_scan_chunk, tasks):
                    if rows:
                        out.write("\n".join(rows))
                        out.write("\n")
        else:
            for task in tasks:
                rows = _scan_chunk(task)
                if rows:
                    out.write("\n".join(rows))
                    out.write("\n")
    finally:
        if close:
            out.close()
    return 0


def cmd_prime_powers(
    max_exp: int, max_prime: int, parity: str = "all", output_path=None
) -> int:
    if max_exp < 1:
        print("prime-powers: max-exp must be at least 1", file=sys.stderr)
        return 2
    if parity not in ("even", "odd", "all"):
        print(f"prime-powers: bad parity {parity!r}", file=sys.stderr)
        return 2
    out, close = _open_output(output_path)
    try:
        out.write("p,M,x,y\n")
        for p in primes_up_to(max_prime):
            if p % 4 != 1:
                continue
            theta = _angle(p)
            for M in range(1, max_exp + 1):
                if parity == "even" and M % 2 == 1:
                    continue
                if parity == "odd" and M % 2 == 0:
                    continue
                gx = measures.G(M + 1, theta)
                gy = measures.G(M + 1, 2.0 * theta)
                out.write(f"{p},{M},{gx:.17g},{gy:.17g}\n")
    finally:
        if close:
            out.close()
    return 0


def cmd_check(x: float, y: float, squarefree: bool = False, tol: float = 1e-9) -> int:
    try:
        if squarefree:
            verdict = region.is_squarefree_attainable(x, y, tol)
        else:
            verdict = region.is_attainable(x, y, tol)
    except ValueError as exc:
        print(f"check: {exc}", file=sys.stderr)
        return 2
    if verdict.attainable:
        detail = verdict.certificate
        if verdict.k is not None:
            detail += f" k={verdict.k}"
            if verdict.divisor is not None:
                detail += f" divisor={verdict.divisor} t={verdict.t_root:.17g}"
        print(f"attainable: {detail}")
        return 0
    print(f"not attainable: {verdict.violated}")
    return 1


def cmd_spike(k: int, samples: int, output_path=None, seed: int = 0) -> int:
    if k < 1 or samples < 1:
        print("spike: k and samples must be at least 1", file=sys.stderr)
        return 2
    rng = np.random.default_rng(seed)
    x_k = 1.0 / (2 * k + 1)
    out, close = _open_output(output_path)
    try:
        out.write("x,f1,f2,sample_x,sample_y\n")
        for i in range(1, samples + 1):
            xv = x_k * i / samples
            t = 1.0 - rng.random()  # in (0, 1]
            sx, sy = region.spike_sample(k, xv, t)
            out.write(
                f"{xv:.17g},{region.f1(k, xv):.17g},{region.f2(k, xv):.17g},"
                f"{sx:.17g},{sy:.17g}\n"
            )
    finally:
        if close:
            out.close()
    return 0


def cmd_verify(suite: str = "all", seed: int = 0, output_path=None, jobs: int = 1) -> int:
    names = verify.suite_names()
    if suite != "all" and suite not in names:
        print(
            f"verify: unknown suite {suite!r}; choices: all, {', '.join(names)}",
            file=sys.stderr,
        )
        return 2
    todo = list(names) if suite == "all" else [suite]
    if jobs > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(verify.run_check, todo, [seed] * len(todo)))
    else:
        reports = [verify.run_check(name, seed) for name in todo]
    out, close = _open_output(output_path)
    try:
        for r in reports:
            line = (
                f"{r.name}: {'PASS' if r.passed else 'FAIL'}"
                f"  max_violation={r.max_violation:.6e}"
                f"  tolerance={r.tolerance:.1e}"
                f"  points={r.grid_points}"
            )
            if r.seed is not None:
                line += f"  seed={r.seed}"
            if r.notes:
                line += f"  [{r.notes}]"
            out.write(line + "\n")
    finally:
        if close:
            out.close()
    return 0 if all(r.passed for r in reports) else 1


def cmd_cantor(theta: float, level: int, k: int, output_path=None) -> int:
    if not 0.0 < theta <= math.pi:
        print("cantor: theta must be in (0, pi]", file=sys.stderr)
        return 2
    if not 0 <= level <= 60:
        print("cantor: level must be in [0, 60]", file=sys.stderr)
        return 2
    if not 1 <= k <= 64:
        print("cantor: k must be in [1, 64]", file=sys.stderr)
        return 2
    coeffs = measures.cantor_measure_fourier(theta, level, k)
    out, close = _open_output(output_path)
    try:
        out.write("m,coefficient\n")
        for m, c in enumerate(coeffs, start=1):
            out.write(f"{m},{c:.17g}\n")
    finally:
        if close:
            out.close()
    return 0


def _build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", metavar="PATH", default=None, help="write to PATH instead of stdout")
    common.add_argument("--tol", type=float, default=1e-9, help="membership tolerance (default 1e-9)")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled output (default 0)")
    common.add_argument(
        "--jobs", type=int, default=os.cpu_count() or 1,
        help="worker processes (default: all cores)",
    )
    parser = argparse.ArgumentParser(
        prog="latticecircle",
        description="Angular measures of lattice points on circles, their Fourier "
        "projections, and the attainable-region oracle.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("scan", parents=[common], help="CSV of (n, r2, x, y) for n in S")
    p.add_argument("--max-n", type=int, required=True, help="scan n = 1..max-n")
    p.add_argument("--squarefree-only", action="store_true", help="keep square-free n only")

    p = sub.add_parser("prime-powers", parents=[common], help="CSV of split prime-power curve points")
    p.add_argument("--max-exp", type=int, required=True, help="largest exponent M")
    p.add_argument("--max-prime", type=int, required=True, help="largest prime")
    p.add_argument("--parity", choices=("even", "odd", "all"), default="all")

    p = sub.add_parser("check", parents=[common], help="is (x, y) attainable?")
    p.add_argument("x", type=float)
    p.add_argument("y", type=float)
    p.add_argument("--squarefree", action="store_true", help="square-free region instead")

    p = sub.add_parser("spike", parents=[common], help="profile of spike k")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--samples", type=int, required=True)

    p = sub.add_parser("verify", parents=[common], help="run lemma checks")
    p.add_argument("suite", nargs="?", default="all")

    p = sub.add_parser("cantor", parents=[common], help="Cantor iterate Fourier coefficients")
    p.add_argument("--theta", type=float, required=True, help="half-width of the base arc")
    p.add_argument("--level", type=int, default=0)
    p.add_argument("--k", type=int, default=16, help="number of coefficients")

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "scan":
            return cmd_scan(args.max_n, args.squarefree_only, args.output, args.jobs)
        if args.command == "prime-powers":
            return cmd_prime_powers(args.max_exp, args.max_prime, args.parity, args.output)
        if args.command == "check":
            return cmd_check(args.x, args.y, args.squarefree, args.tol)
        if args.command == "spike":
            return cmd_spike(args.k, args.samples, args.output, args.seed)
        if args.command == "verify":
            return cmd_verify(args.suite, args.seed, args.output, args.jobs)
        if args.command == "cantor":
            return cmd_cantor(args.theta, args.level, args.k, args.output)
    except OSError as exc:
        target = getattr(exc, "filename", None) or args.output
        print(f"{args.command}: cannot write {target}: {exc.strerror}", file=sys.stderr)
        return 2
    raise AssertionError(f"unhandled command {args.command}")


def entry():
    raise SystemExit(main())


if __name__ == "__main__":
    raise SystemExit(main())
