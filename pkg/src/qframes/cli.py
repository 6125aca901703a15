"""``qframe`` command line.

Exit codes: 0 success, 1 usage or input error, 2 not a frame, 3 l1 solver did
not converge (the report is still printed).
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import coefficients as co
from . import frames as fr
from . import io
from . import qlinalg as ql
from .errors import InvalidNoiseSpec, NotAFrame, QFrameError
from .simulation import NoiseSpec, simulate

EXIT_OK, EXIT_USAGE, EXIT_NOT_FRAME, EXIT_NO_CONVERGENCE = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fmt_q(q) -> str:
    w, x, y, z = (float(v) for v in q)
    return f"[{w!r}, {x!r}, {y!r}, {z!r}]"


def _print_vectors(label: str, rows) -> None:
    print(f"{label}:")
    for k, q in enumerate(rows):
        print(f"  {k}: {_fmt_q(q)}")


def _emit_json(doc: dict) -> None:
    print(json.dumps(doc, allow_nan=False))


def _check_signal(frame_n: int, f: np.ndarray, path) -> None:
    if len(f) != frame_n:
        raise QFrameError(f"{path}: signal has dimension {len(f)}, frame has {frame_n}")


def cmd_analyze(args) -> int:
    frame = io.load_frame(args.frame)
    spanning = fr.is_frame(frame)
    tight = fr.is_tight(frame) if spanning else None
    spectrum = [float(v) for v in frame.spectrum]
    doc = {
        "m": frame.m,
        "n": frame.n,
        "redundancy": frame.redundancy,
        "is_frame": spanning,
        "lower_bound": spectrum[0] if spanning else None,
        "upper_bound": spectrum[-1] if spanning else None,
        "schwartz_upper_bound": fr.schwartz_bound(frame),
        "tight": tight is not None,
        "tight_constant": tight,
        "spectrum": spectrum,
    }
    if args.json:
        _emit_json(doc)
    else:
        print(f"vectors m = {frame.m}, dimension n = {frame.n}, redundancy m/n = {frame.redundancy!r}")
        if spanning:
            print("frame: yes")
            print(f"optimal lower bound A = {spectrum[0]!r}")
            print(f"optimal upper bound B = {spectrum[-1]!r}")
        else:
            print("not a frame: vectors do not left-span H^n")
        print(f"Schwartz upper bound sum ||f_k||^2 = {doc['schwartz_upper_bound']!r}")
        print(f"tight: {'yes, A = B = ' + repr(tight) if tight is not None else 'no'}")
        print("spectrum of S: " + ", ".join(repr(v) for v in spectrum))
    return EXIT_OK if spanning else EXIT_NOT_FRAME


def cmd_dual(args) -> int:
    frame = io.load_frame(args.frame)
    dual = fr.canonical_dual(frame)
    io.save_frame(args.output, dual.vectors)
    return EXIT_OK


def cmd_reconstruct(args) -> int:
    frame = io.load_frame(args.frame)
    f = io.load_signal(args.signal)
    _check_signal(frame.n, f, args.signal)
    coeffs, recon = fr.frame_decomposition(frame, f)
    err = ql.vnorm(recon - f)
    if args.json:
        _emit_json({"coefficients": io.to_nested(coeffs),
                    "reconstruction": io.to_nested(recon), "error": err})
    else:
        _print_vectors("frame coefficients <f|S^-1 f_k>", coeffs)
        _print_vectors("reconstruction", recon)
        print(f"error ||recon - f|| = {err!r}")
    return EXIT_OK


def cmd_project(args) -> int:
    vs = io.read_vectors(args.vectors)
    f = io.load_signal(args.signal)
    if len(f) != vs.shape[1]:
        raise QFrameError(f"{args.signal}: signal has dimension {len(f)}, vectors have {vs.shape[1]}")
    pf = fr.project_onto_span(vs, f)
    rank = ql.rank(vs)
    resid = ql.vnorm(f - pf)
    if args.json:
        _emit_json({"projection": io.to_nested(pf), "residual": resid, "rank": rank})
    else:
        _print_vectors("projection Pf", pf)
        print(f"residual ||f - Pf|| = {resid!r}")
        print(f"rank of span = {rank}")
    return EXIT_OK


def cmd_minl1(args) -> int:
    frame = io.load_frame(args.frame)
    f = io.load_signal(args.signal)
    _check_signal(frame.n, f, args.signal)
    params = co.SolverParams(rho=args.rho, max_iter=args.max_iter, tol=args.tol)
    rep = co.min_l1_coefficients(frame, f, params)
    doc = {
        "coefficients": io.to_nested(rep.coefficients),
        "objective": rep.objective,
        "canonical_objective": rep.canonical_objective,
        "iterations": rep.iterations,
        "primal_residual": rep.primal_residual,
        "dual_residual": rep.dual_residual,
        "converged": rep.converged,
    }
    if args.json:
        _emit_json(doc)
    else:
        _print_vectors("l1-minimal coefficients", rep.coefficients)
        print(f"objective sum |d_k| = {rep.objective!r}")
        print(f"canonical (l2-minimal) objective = {rep.canonical_objective!r}")
        print(f"iterations = {rep.iterations}, primal residual = {rep.primal_residual!r}, "
              f"dual residual = {rep.dual_residual!r}")
        print(f"converged: {'yes' if rep.converged else 'no'}")
    return EXIT_OK if rep.converged else EXIT_NO_CONVERGENCE


def _parse_erasures(text: str | None) -> tuple[int, ...]:
    if not text:
        return ()
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError as exc:
        raise InvalidNoiseSpec(f"bad erasure list {text!r}") from exc


def cmd_simulate(args) -> int:
    frame = io.load_frame(args.frame)
    f = io.load_signal(args.signal)
    _check_signal(frame.n, f, args.signal)
    spec = NoiseSpec(sigma=args.sigma, seed=args.seed, trials=args.trials,
                     erasures=_parse_erasures(args.erase))
    rep = simulate(frame, f, spec, workers=args.workers)
    if args.json:
        _emit_json(rep.to_dict())
        return EXIT_OK
    print(f"frame m = {rep.m}, n = {rep.n}; sigma = {rep.sigma!r}, seed = {rep.seed}, "
          f"erasures = {list(rep.erasures)}")
    print("trial  frame_error  noise_l1  noise_l2sq  onb_error  onb_noise_l2sq")
    for t in rep.trials:
        print(f"{t.trial:5d}  {t.error!r}  {t.noise_l1!r}  {t.noise_l2sq!r}  "
              f"{t.baseline_error!r}  {t.baseline_noise_l2sq!r}")
    print(f"frame: mean error = {rep.mean_error!r}, max error = {rep.max_error!r}")
    print(f"onb baseline: mean error = {rep.baseline_mean_error!r}, "
          f"max error = {rep.baseline_max_error!r}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qframe", description="Frames on finite-dimensional left quaternion Hilbert spaces.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", help="frame check, optimal bounds, tightness, spectrum")
    a.add_argument("frame")
    a.add_argument("--json", action="store_true")
    a.set_defaults(func=cmd_analyze)

    d = sub.add_parser("dual", help="write the canonical dual frame")
    d.add_argument("frame")
    d.add_argument("-o", "--output", required=True)
    d.set_defaults(func=cmd_dual)

    r = sub.add_parser("reconstruct", help="frame coefficients and reconstruction of a signal")
    r.add_argument("frame")
    r.add_argument("signal")
    r.add_argument("--json", action="store_true")
    r.set_defaults(func=cmd_reconstruct)

    pr = sub.add_parser("project", help="orthogonal projection onto the left span of vectors")
    pr.add_argument("vectors")
    pr.add_argument("signal")
    pr.add_argument("--json", action="store_true")
    pr.set_defaults(func=cmd_project)

    l1 = sub.add_parser("minl1", help="coefficients of minimal l1 norm (ADMM)")
    l1.add_argument("frame")
    l1.add_argument("signal")
    l1.add_argument("--rho", type=float, default=1.0, help="ADMM penalty (default 1.0)")
    l1.add_argument("--max-iter", type=int, default=5000)
    l1.add_argument("--tol", type=float, default=1e-8, help="residual tolerance (default 1e-8)")
    l1.add_argument("--json", action="store_true")
    l1.set_defaults(func=cmd_minl1)

    s = sub.add_parser(
        "simulate",
        help="noisy coefficient transmission vs an orthonormal basis",
        description="Noise model (a modelling choice, not fixed by theory): i.i.d. Gaussian "
                    "with std-dev SIGMA on each of the 4 real components of every transmitted "
                    "coefficient; erased coefficients are received as zero.",
    )
    s.add_argument("frame")
    s.add_argument("signal")
    s.add_argument("--sigma", type=float, required=True,
                   help="Gaussian std-dev per real component of each coefficient")
    s.add_argument("--erase", default=None, help="comma-separated 0-based coefficient indices to drop")
    s.add_argument("--seed", type=int, required=True, help="unsigned 64-bit seed")
    s.add_argument("--trials", type=int, required=True)
    s.add_argument("--workers", type=int, default=1, help="threads for the trial loop")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_simulate)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NotAFrame as exc:
        print(f"qframe: not a frame: {exc}", file=sys.stderr)
        return EXIT_NOT_FRAME
    except (QFrameError, OSError, ValueError) as exc:
        print(f"qframe: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
