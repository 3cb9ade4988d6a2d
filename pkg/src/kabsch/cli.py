"""Command-line frontend: ``kabsch align``, ``kabsch gen`` and ``kabsch eval``.

Exit status is 0 on success, 1 on usage errors, 2 on unreadable or
malformed input and 3 when the SVD fails to converge.
"""

import argparse
import json
import sys
from dataclasses import dataclass

import numpy as np

from .linalg import SVDConvergenceError
from .oracle import sample_rigid_motion_arrays
from .pointio import (
    PointFileError,
    format_number,
    parse_motion,
    parse_pointset,
    write_motion,
    write_pointset,
)
from .procrustes import check_pair, kabsch_umeyama
from .rigid import RigidMotion, apply_rigid_motion, fit_rigid_motion, rigid_objective

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_NUMERIC = 3


class UsageError(Exception):
    pass


@dataclass
class AlignReport:
    mode: str
    dim: int
    count: int
    rotation: np.ndarray
    translation: np.ndarray | None
    rmsd: float
    residual: float
    trace_value: float
    sigma: np.ndarray
    det_branch: str

    def to_dict(self):
        out = {
            "mode": self.mode,
            "dim": self.dim,
            "count": self.count,
            "rotation": [list(row) for row in self.rotation],
        }
        if self.translation is not None:
            out["translation"] = list(self.translation)
        out.update(
            rmsd=self.rmsd,
            residual=self.residual,
            trace_value=self.trace_value,
            sigma=list(self.sigma),
            det_branch=self.det_branch,
        )
        return out


@dataclass
class EvalReport:
    dim: int
    count: int
    delta: float
    rmsd: float

    def to_dict(self):
        return {"dim": self.dim, "count": self.count, "delta": self.delta, "rmsd": self.rmsd}


def dumps(obj):
    """JSON with fixed key order and every float written to 17 significant digits."""
    if isinstance(obj, dict):
        items = ", ".join(f"{json.dumps(k)}: {dumps(v)}" for k, v in obj.items())
        return "{" + items + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(dumps(v) for v in obj) + "]"
    if isinstance(obj, (bool, str)) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    return format_number(obj)


def _text(d):
    lines = []
    for key, value in d.items():
        if key == "rotation":
            lines.append("rotation")
            lines.extend("  " + " ".join(format_number(x) for x in row) for row in value)
        elif isinstance(value, list):
            lines.append(f"{key:<12}" + " ".join(format_number(x) for x in value))
        elif isinstance(value, float):
            lines.append(f"{key:<12}{format_number(value)}")
        else:
            lines.append(f"{key:<12}{value}")
    return "\n".join(lines)


def _load_pair(p_path, q_path):
    P = parse_pointset(p_path)
    Q = parse_pointset(q_path)
    try:
        return check_pair(P, Q)
    except ValueError as exc:
        raise PointFileError(str(exc)) from None


def cmd_align(p_path, q_path, mode="rotation", out_motion=None):
    """Fit `q_path` onto `p_path` and return an :class:`AlignReport`."""
    P, Q = _load_pair(p_path, q_path)
    n, d = P.shape
    if mode == "rotation":
        fit = kabsch_umeyama(P, Q)
        motion = RigidMotion(fit.rotation, np.zeros(d))
        residual = fit.residual
        translation = None
    elif mode == "rigid":
        rfit = fit_rigid_motion(P, Q)
        fit = rfit.rotation_fit
        motion = rfit.motion
        residual = rfit.delta
        translation = motion.translation
    else:
        raise UsageError(f"unknown mode {mode!r}")
    if out_motion is not None:
        write_motion(out_motion, motion)
    return AlignReport(
        mode=mode,
        dim=d,
        count=n,
        rotation=motion.rotation,
        translation=translation,
        rmsd=float(np.sqrt(residual / n)),
        residual=residual,
        trace_value=fit.trace_value,
        sigma=fit.sigma,
        det_branch=fit.det_branch,
    )


def cmd_gen(d, n, noise_sigma, seed, out_q, out_p, out_truth):
    """Write a synthetic instance ``P = motion(Q) + noise``; returns the truth motion.

    Draws, in order from one generator seeded with `seed`: ``Q`` uniform in
    ``[-1, 1]^d``, a rotation, a translation uniform in ``[-1, 1]^d``, and
    isotropic Gaussian noise of standard deviation `noise_sigma`.
    """
    if d < 1 or n < 1 or noise_sigma < 0:
        raise UsageError("need d >= 1, n >= 1 and noise >= 0")
    rng = np.random.default_rng(seed)
    Q = rng.uniform(-1.0, 1.0, size=(n, d))
    rotations, translations = sample_rigid_motion_arrays(d, 1, 1.0, rng)
    truth = RigidMotion(rotations[0], translations[0])
    P = apply_rigid_motion(truth, Q) + noise_sigma * rng.standard_normal((n, d))
    write_pointset(out_q, Q)
    write_pointset(out_p, P)
    write_motion(out_truth, truth)
    return truth


def cmd_eval(p_path, q_path, motion_path):
    """Objective and RMSD of a stored motion on a point pair."""
    P, Q = _load_pair(p_path, q_path)
    motion = parse_motion(motion_path)
    if motion.dim != P.shape[1]:
        raise PointFileError(f"{motion_path}: motion has d={motion.dim}, points have d={P.shape[1]}")
    delta = rigid_objective(motion, P, Q)
    n = P.shape[0]
    return EvalReport(dim=P.shape[1], count=n, delta=delta, rmsd=float(np.sqrt(delta / n)))


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser():
    parser = _Parser(prog="kabsch", description="Least-squares rotation and rigid-motion alignment.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("align", help="fit Q onto P")
    p.add_argument("--p", required=True, help="target point file")
    p.add_argument("--q", required=True, help="source point file")
    p.add_argument("--mode", choices=["rotation", "rigid"], default="rotation")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out-motion", help="also write the fitted motion to this file")

    p = sub.add_parser("gen", help="write a synthetic instance")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--noise", type=float, default=0.0)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out-q", required=True)
    p.add_argument("--out-p", required=True)
    p.add_argument("--out-truth", required=True)

    p = sub.add_parser("eval", help="score a motion on a point pair")
    p.add_argument("--p", required=True)
    p.add_argument("--q", required=True)
    p.add_argument("--motion", required=True)
    p.add_argument("--json", action="store_true")
    return parser


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code
    try:
        if args.command == "align":
            report = cmd_align(args.p, args.q, args.mode, args.out_motion)
        elif args.command == "eval":
            report = cmd_eval(args.p, args.q, args.motion)
        else:
            if not 0 <= args.seed < 2**64:
                raise UsageError("seed must be an unsigned 64-bit integer")
            cmd_gen(args.d, args.n, args.noise, args.seed, args.out_q, args.out_p, args.out_truth)
            return EXIT_OK
    except UsageError as exc:
        print(f"kabsch: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (PointFileError, OSError) as exc:
        print(f"kabsch: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SVDConvergenceError as exc:
        print(f"kabsch: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC

    d = report.to_dict()
    print(dumps(d) if args.json else _text(d))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
