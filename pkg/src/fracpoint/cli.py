"""Command-line front end.

Four subcommands::

    solve          print the negative eigenvalues and normalized coefficients
    eigenfunction  sample the normalized eigenfunction on a uniform grid
    sweep-alpha    tabulate the eigenvalue as a function of alpha
    validate       run the cross-validation suite (closed forms vs quadrature)

All data output is CSV on stdout or ``--out``: ``#``-prefixed metadata
lines, one column-name row, then rows with 17 significant digits.  Exit
codes: 0 success, 1 failure, 2 valid-but-empty spectrum.
"""

from __future__ import annotations

import argparse
import math
import sys
import time
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .closed_integrals import MomentQuery, j_closed, m_closed, power_kernel
from .eigenfunction import normalization_grid, psi, sample_grid
from .errors import FracpointError
from .foxh import falpha, falpha1
from .quadrature import integrate_fourier_cos, integrate_halfline
from .spectrum import (SpectralProblem, closed_n0, closed_n1, coupling_matrix,
                       find_eigenvalues, residual)

__all__ = ["main", "RunConfig"]

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_EMPTY = 2


@dataclass
class RunConfig:
    """Parsed and validated run parameters for one CLI invocation."""

    command: str
    alpha: float = None
    n: int = 0
    v0: float = None
    x_min: float = -10.0
    x_max: float = 10.0
    points: int = 2001
    alpha_min: float = None
    alpha_max: float = None
    steps: int = 2
    out: str = None
    tol: float = 1e-10
    method: str = "quadrature"
    perturb_energy: float = 0.0
    extra: dict = field(default_factory=dict)


def _fmt(v: float) -> str:
    return f"{v:.17g}"


def _emit(cfg: RunConfig, meta: list[str], columns: list[str], rows):
    lines = [f"# {m}" for m in meta]
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    text = "\n".join(lines) + "\n"
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_solve(cfg: RunConfig) -> int:
    prob = SpectralProblem(cfg.alpha, cfg.n, cfg.v0)
    sols = find_eigenvalues(prob, tol=cfg.tol)
    meta = [
        f"fracpoint {__version__} solve",
        f"alpha={_fmt(cfg.alpha)} n={cfg.n} v0={_fmt(cfg.v0)} tol={_fmt(cfg.tol)}",
    ]
    columns = ["E_hat", "residual"]
    for h in range(cfg.n + 1):
        columns += [f"K_{h}_re", f"K_{h}_im"]
    rows = []
    for s in sols:
        row = [s.energy, s.residual_norm]
        for h in range(cfg.n + 1):
            row += [s.coefficients[h].real, s.coefficients[h].imag]
        rows.append(row)
    _emit(cfg, meta, columns, rows)
    if not sols:
        print("no bound state in the search bracket", file=sys.stderr)
        return EXIT_EMPTY
    return EXIT_OK


def cmd_eigenfunction(cfg: RunConfig) -> int:
    prob = SpectralProblem(cfg.alpha, cfg.n, cfg.v0)
    sols = find_eigenvalues(prob, tol=cfg.tol)
    if not sols:
        print("no bound state: nothing to sample", file=sys.stderr)
        return EXIT_EMPTY
    sol = sols[0]
    grid = sample_grid(sol, cfg.x_min, cfg.x_max, cfg.points, cfg.method)
    meta = [
        f"fracpoint {__version__} eigenfunction",
        f"alpha={_fmt(cfg.alpha)} n={cfg.n} v0={_fmt(cfg.v0)} "
        f"E_hat={_fmt(sol.energy)} method={cfg.method}",
    ]
    _emit(cfg, meta, ["x", "psi"], zip(grid.xs, grid.values))
    return EXIT_OK


def cmd_sweep_alpha(cfg: RunConfig) -> int:
    if not cfg.alpha_min > 2 * cfg.n + 1:
        raise FracpointError(
            f"--alpha-min must exceed 2n+1 = {2 * cfg.n + 1}"
        )
    alphas = np.linspace(cfg.alpha_min, cfg.alpha_max, cfg.steps)
    rows = []
    for a in alphas:
        sols = find_eigenvalues(SpectralProblem(float(a), cfg.n, cfg.v0),
                                tol=cfg.tol)
        if not sols:
            print(f"alpha={a:g}: no bound state, row omitted", file=sys.stderr)
            continue
        rows.append([float(a), sols[0].energy])
    meta = [
        f"fracpoint {__version__} sweep-alpha",
        f"n={cfg.n} v0={_fmt(cfg.v0)} alpha in [{_fmt(cfg.alpha_min)}, "
        f"{_fmt(cfg.alpha_max)}] steps={cfg.steps}",
    ]
    _emit(cfg, meta, ["alpha", "E_hat"], rows)
    return EXIT_OK


def _validation_checks(cfg: RunConfig):
    """(name, callable) pairs; each callable returns (ok, detail)."""
    gate = max(cfg.tol, 1e-10)

    def closed_vs_quadrature():
        worst = 0.0
        for m in (0, 2):
            for alpha in (1.5, 2.5, 4.0):
                if alpha <= m + 1:
                    continue
                for e in (0.25, 1.0, 4.0):
                    q = MomentQuery(m, alpha, e)
                    ref = 2.0 * integrate_halfline(
                        power_kernel(m, alpha, e), alpha - m,
                        max(gate / 10, 1e-12)).value
                    worst = max(worst, abs(j_closed(q) - ref) / abs(ref))
                    ref2 = 2.0 * integrate_halfline(
                        power_kernel(m, alpha, e, power=2), 2 * alpha - m,
                        max(gate / 10, 1e-12)).value
                    worst = max(worst, abs(m_closed(q) - ref2) / abs(ref2))
        return worst < max(1e-8, gate), f"max rel dev {worst:.2e}"

    def kernels_vs_quadrature():
        worst = 0.0
        for alpha in (1.5, 2.0, 4.0):
            for e in (0.25, 1.0):
                for x in (0.5, 2.0):
                    a = falpha(alpha, e, x, "foxh")
                    b = falpha(alpha, e, x, "quadrature")
                    worst = max(worst, abs(a - b) / (1 + abs(b)))
        for alpha, e, x in ((4.0, 1.0, 0.5), (5.5, 0.25, 2.0)):
            a = falpha1(alpha, e, x, "foxh")
            b = falpha1(alpha, e, x, "quadrature")
            worst = max(worst, abs(a - b) / (1 + abs(b)))
        return worst < max(1e-6, gate), f"max path dev {worst:.2e}"

    def roots_n0():
        worst = 0.0
        for alpha in (1.5, 2.0, 2.5):
            sols = find_eigenvalues(SpectralProblem(alpha, 0, -1.0))
            ref = closed_n0(alpha, -1.0)
            worst = max(worst, abs(sols[0].energy - ref) / abs(ref))
        empty = find_eigenvalues(SpectralProblem(2.0, 0, 1.0))
        return worst < max(1e-10, gate) and not empty, f"max rel dev {worst:.2e}"

    def roots_n1():
        worst = 0.0
        for alpha in (3.5, 4.0, 5.5):
            plus = find_eigenvalues(SpectralProblem(alpha, 1, 1.0))[0].energy
            minus = find_eigenvalues(SpectralProblem(alpha, 1, -1.0))[0].energy
            ref = closed_n1(alpha, 1.0)
            worst = max(worst, abs(plus - ref) / abs(ref), abs(plus - minus))
        return worst < max(1e-10, gate), f"max rel dev {worst:.2e}"

    def classical_chain():
        sol = find_eigenvalues(SpectralProblem(2.0, 0, -1.0))[0]
        worst = abs(sol.energy + 0.25)
        for x in (0.0, 0.7, 2.5, -4.0):
            worst = max(worst, abs(psi(sol, x) -
                                   math.sqrt(0.5) * math.exp(-abs(x) / 2)))
        return worst < max(1e-6, gate), f"max dev {worst:.2e}"

    def residual_check():
        worst = 0.0
        for alpha, n, v0 in ((2.0, 0, -1.0), (4.0, 1, 1.0)):
            sol = find_eigenvalues(SpectralProblem(alpha, n, v0))[0]
            if cfg.perturb_energy:
                from .spectrum import EigenSolution
                sol = EigenSolution(energy=sol.energy * (1 + cfg.perturb_energy),
                                    coefficients=sol.coefficients,
                                    residual_norm=sol.residual_norm,
                                    problem=sol.problem)
            worst = max(worst, residual(sol.problem, sol))
        return worst < max(1e-6, gate), f"max residual {worst:.2e}"

    def normalization_check():
        worst = 0.0
        for alpha, n, v0 in ((2.5, 0, -1.0), (4.0, 1, 1.0)):
            sol = find_eigenvalues(SpectralProblem(alpha, n, v0))[0]
            grid = normalization_grid(sol)
            worst = max(worst, abs(grid.trapezoid_norm() - 1.0))
        return worst < max(1e-4, gate), f"max |norm-1| {worst:.2e}"

    def parity_check():
        rng = np.random.default_rng(7)
        for n in range(4):
            for _ in range(3):
                alpha = 2 * n + 1 + 0.3 + 4 * rng.random()
                e = 10.0 ** rng.uniform(-2, 2)
                v0 = rng.uniform(-2, 2) or 1.0
                A = coupling_matrix(SpectralProblem(alpha, n, v0), e).entries
                for h in range(n + 1):
                    for kk in range(n + 1):
                        if (n + kk - h) % 2 and A[h, kk] != 0.0:
                            return False, f"nonzero odd entry at n={n}"
        return True, "zero pattern exact"

    return [
        ("closed-forms vs quadrature (J, M)", closed_vs_quadrature),
        ("kernel paths foxh vs quadrature", kernels_vs_quadrature),
        ("n=0 roots vs closed form", roots_n0),
        ("n=1 roots vs closed form + symmetry", roots_n1),
        ("classical alpha=2 chain", classical_chain),
        ("eigen-equation residual", residual_check),
        ("normalization (momentum and position)", normalization_check),
        ("coupling-matrix parity pattern", parity_check),
    ]


def cmd_validate(cfg: RunConfig) -> int:
    checks = _validation_checks(cfg)
    all_ok = True
    width = max(len(name) for name, _ in checks)
    for name, fn in checks:
        t0 = time.perf_counter()
        try:
            ok, detail = fn()
        except FracpointError as exc:
            ok, detail = False, f"error: {exc}"
        all_ok &= ok
        status = "PASS" if ok else "FAIL"
        print(f"{status}  {name:<{width}}  {detail}  "
              f"[{time.perf_counter() - t0:.2f}s]")
    print("validation " + ("passed" if all_ok else "FAILED"))
    return EXIT_OK if all_ok else EXIT_FAIL


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fracpoint",
        description="Bound states of the 1-D fractional Laplacian with a "
                    "delta-derivative point interaction.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_problem_flags(p):
        p.add_argument("--alpha", type=float, required=True,
                       help="fractional order (must exceed 2n+1)")
        p.add_argument("--n", type=int, default=0,
                       help="order of the delta derivative (default 0)")
        p.add_argument("--v0", type=float, required=True,
                       help="coupling strength (nonzero)")

    def add_common(p):
        p.add_argument("--out", type=str, default=None,
                       help="output CSV path (default: stdout)")
        p.add_argument("--tol", type=float, default=1e-10,
                       help="solver tolerance (default 1e-10)")

    p = sub.add_parser("solve", help="compute the negative eigenvalues")
    add_problem_flags(p)
    add_common(p)

    p = sub.add_parser("eigenfunction", help="sample psi(x) on a grid")
    add_problem_flags(p)
    add_common(p)
    p.add_argument("--xmin", type=float, required=True)
    p.add_argument("--xmax", type=float, required=True)
    p.add_argument("--points", type=int, required=True)
    p.add_argument("--method", choices=("quadrature", "foxh"),
                   default="quadrature")

    p = sub.add_parser("sweep-alpha", help="eigenvalue as a function of alpha")
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--v0", type=float, required=True)
    p.add_argument("--alpha-min", type=float, required=True)
    p.add_argument("--alpha-max", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    add_common(p)

    p = sub.add_parser("validate", help="run the cross-validation suite")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--perturb-energy", type=float, default=0.0,
                   help="debug: inject a relative energy perturbation into "
                        "the residual check (forces a failure)")
    return parser


def _config_from_args(args) -> RunConfig:
    cfg = RunConfig(command=args.command)
    for name in ("alpha", "n", "v0", "out", "tol", "method", "steps",
                 "points", "perturb_energy"):
        if hasattr(args, name):
            setattr(cfg, name, getattr(args, name))
    if hasattr(args, "xmin"):
        cfg.x_min, cfg.x_max = args.xmin, args.xmax
    if hasattr(args, "alpha_min"):
        cfg.alpha_min, cfg.alpha_max = args.alpha_min, args.alpha_max

    # validate up front with clear messages (argparse's own exit code 2 is
    # reserved for the empty-spectrum outcome, so do not rely on it here)
    if cfg.command in ("solve", "eigenfunction"):
        if not cfg.alpha > 2 * cfg.n + 1:
            raise FracpointError(
                f"--alpha must exceed 2n+1 = {2 * cfg.n + 1} (got {cfg.alpha})"
            )
        if cfg.v0 == 0.0:
            raise FracpointError("--v0 must be nonzero")
    if cfg.command == "eigenfunction":
        if cfg.points < 2:
            raise FracpointError("--points must be >= 2")
        if not cfg.x_min < cfg.x_max:
            raise FracpointError("need --xmin < --xmax")
    if cfg.command == "sweep-alpha":
        if cfg.steps < 2:
            raise FracpointError("--steps must be >= 2")
        if not cfg.alpha_min < cfg.alpha_max:
            raise FracpointError("need --alpha-min < --alpha-max")
    if not cfg.tol > 0:
        raise FracpointError("--tol must be positive")
    return cfg


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = _config_from_args(args)
        handler = {
            "solve": cmd_solve,
            "eigenfunction": cmd_eigenfunction,
            "sweep-alpha": cmd_sweep_alpha,
            "validate": cmd_validate,
        }[cfg.command]
        return handler(cfg)
    except FracpointError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
