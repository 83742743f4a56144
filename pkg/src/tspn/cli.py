"""Command-line surface: run the four algorithms, certify results, and
check the curve bounds.

Exit codes: 0 success, 2 success with a degenerate-instance warning,
1 error (malformed input, failed certificate, mismatched files).
"""

from __future__ import annotations

import argparse
import math
import sys
import time
import warnings

from . import __version__
from .curves import perimeter_bound, three_side_bound
from .errors import DegenerateInstance, TspnError
from .fileio import (
    InstanceFormatError,
    load_curve,
    load_instance,
    load_result,
    result_to_dict,
    save_result,
    atomic_write_text,
    sha256_file,
)
from .geometry import OrientedRect, Point, Polyline
from .lines import EPS_PATH_LINES, EPS_TOUR, SweepConfig, TourResult, path_lines, tour_lines
from .oracles import certify, verify_output
from .rays import EPS_PATH_RAYS, path_rays, tour_rays
from .svg import emit_svg

_RUNNERS = {
    "tour-lines": ("lines", "tour", EPS_TOUR, tour_lines),
    "path-lines": ("lines", "path", EPS_PATH_LINES, path_lines),
    "tour-rays": ("rays", "tour", EPS_TOUR, tour_rays),
    "path-rays": ("rays", "path", EPS_PATH_RAYS, path_rays),
}


def _add_common(sub):
    sub.add_argument("--input", required=True, help="instance JSON file")
    sub.add_argument("--out", required=True, help="result JSON file to write")
    sub.add_argument("--svg", default=None, help="optional SVG rendering to write")
    sub.add_argument("--epsilon", type=float, default=None,
                     help="sweep resolution (default: mode-specific)")
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--randomize-eps", action="store_true",
                     help="draw epsilon uniformly from [1/300, 1/200] (tours)")
    sub.add_argument("--threads", type=int, default=None,
                     help="per-angle solve parallelism (default: TSPN_THREADS or 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tspn",
        description="Approximate shortest tours/paths visiting every line or ray "
                    "in the plane, with certified approximation ratios.",
    )
    parser.add_argument("--version", action="version", version=f"tspn {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    for name in _RUNNERS:
        sub = subs.add_parser(name, help=f"run the {name} algorithm")
        _add_common(sub)

    cert = subs.add_parser("certify", help="re-verify a result and certify its ratio")
    cert.add_argument("--input", required=True)
    cert.add_argument("--result", required=True)
    cert.add_argument("--sweep-k", type=int, default=100_000,
                      help="dense sweep resolution for the lower bound")
    cert.add_argument("--tolerance", type=float, default=1e-9)

    bounds = subs.add_parser("bounds", help="check the enclosing-rectangle bounds of a curve")
    bounds.add_argument("--curve", required=True, help="curve JSON file")
    bounds.add_argument("--check", choices=("lemma3", "lemma5", "both"), default="both")
    return parser


def _run_algorithm(name: str, args) -> int:
    kind_wanted, mode, default_eps, runner = _RUNNERS[name]
    kind, regions, digest = load_instance(args.input)
    if kind != kind_wanted:
        raise InstanceFormatError(f"{name} needs a '{kind_wanted}' instance, got '{kind}'")

    if mode == "tour":
        cfg = SweepConfig.for_tour(args.epsilon, seed=args.seed,
                                   randomize_eps=args.randomize_eps)
    elif kind_wanted == "rays":
        # the ray-path sweep optimizes the quarter-turn-symmetric
        # perimeter, so it uses the tour direction count
        cfg = SweepConfig.for_tour(args.epsilon if args.epsilon else default_eps,
                                   seed=args.seed)
    else:
        cfg = SweepConfig.for_path(args.epsilon if args.epsilon else default_eps,
                                   seed=args.seed)

    t0 = time.perf_counter()
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", DegenerateInstance)
        result: TourResult = runner(regions, cfg, threads=args.threads)
    elapsed = time.perf_counter() - t0
    degenerate = any(isinstance(w.message, DegenerateInstance) for w in caught)

    doc = result_to_dict(result, kind=kind, epsilon=cfg.epsilon, seed=cfg.seed,
                         m=cfg.m, instance_sha256=digest, timing_seconds=elapsed)
    save_result(args.out, doc)
    if args.svg:
        atomic_write_text(args.svg, emit_svg(regions, result))

    print(f"{name}: objective {result.objective_value!r} over {cfg.m} orientations "
          f"(epsilon {cfg.epsilon!r}, seed {cfg.seed}) in {elapsed:.3f}s")
    if degenerate:
        print("warning: degenerate instance, all regions concurrent (optimum 0)")
        return 2
    return 0


def _result_from_doc(doc: dict) -> TourResult:
    r = doc["rectangle"]
    rect = OrientedRect(r["frame_angle"], r["x1"], r["x2"], r["y1"], r["y2"])
    path = doc.get("path")
    poly = Polyline(tuple(Point(x, y) for x, y in path)) if path else None
    return TourResult(
        rect=rect,
        objective_value=float(doc["objective_value"]),
        mode=doc["mode"],
        winning_angle_index=int(doc["winning_angle"]["index"]),
        path=poly,
        degenerate=bool(doc.get("degenerate", False)),
    )


def _ratio_threshold(mode: str, kind: str, epsilon: float) -> float:
    if mode == "tour":
        return (4.0 / math.pi) * (1.0 + epsilon) + 1e-3
    if kind == "lines":
        return math.sqrt(2.0) * (1.0 + epsilon) + 1e-3
    # ray paths: the reference is the dense minimum rectangle itself
    return (1.0 + epsilon) + 1e-3


def _run_certify(args) -> int:
    kind, regions, digest = load_instance(args.input)
    doc = load_result(args.result)
    if doc.get("instance_sha256") != digest:
        print("FAIL: result was produced from a different instance "
              f"(hash {doc.get('instance_sha256')} != {digest})")
        return 1
    result = _result_from_doc(doc)
    tol = args.tolerance

    ok, violation = verify_output(result, regions, tol=tol)
    print(f"intersections: {'OK' if ok else 'FAIL'} (max signed violation {violation:.3e})")
    if not ok:
        return 1

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DegenerateInstance)
        cert = certify(result, regions, sweep_k=args.sweep_k, tol=tol)
    print(f"lower bound ({cert.method}, K={args.sweep_k}): {cert.lower_bound!r}")
    print(f"output objective: {cert.output_value!r}")
    if cert.ratio is None:
        if cert.output_value <= tol:
            print("degenerate: OPT = 0 and output is 0: PASS")
            return 0
        print(f"FAIL: lower bound is 0 but output is {cert.output_value!r}")
        return 1
    bound = _ratio_threshold(result.mode, kind, float(doc["epsilon"]))
    verdict = cert.ratio <= bound
    print(f"ratio: {cert.ratio:.6f} <= {bound:.6f}: {'PASS' if verdict else 'FAIL'}")
    return 0 if verdict else 1


def _run_bounds(args) -> int:
    curve = load_curve(args.curve)
    length = curve.length
    checks = []
    if args.check in ("lemma3", "both"):
        checks.append(("three-side bound (sqrt2 * L)", three_side_bound(curve)))
    if args.check in ("lemma5", "both"):
        checks.append(("perimeter bound (sqrt5 * L)", perimeter_bound(curve)))
    ok = True
    for label, chk in checks:
        good = chk.slack >= -1e-9 * length
        ok &= good
        print(f"{label}: value={chk.value!r} bound={chk.bound!r} "
              f"slack={chk.slack:.3e} {'OK' if good else 'VIOLATED'}")
    return 0 if ok else 1


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command in _RUNNERS:
            return _run_algorithm(args.command, args)
        if args.command == "certify":
            return _run_certify(args)
        return _run_bounds(args)
    except (InstanceFormatError, TspnError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
