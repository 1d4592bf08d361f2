"""Command-line driver.

Verdict failures (an extension failing excision, a mismatch outside the
stable range) are successful computations reported with exit status 0; only
infrastructure faults - bad flags, parse errors, size limits, uncertified
ranges - exit nonzero.
"""

from __future__ import annotations

import argparse
import sys
import time

from .cyclic import connes_check, hc_homology, hh_homology, lambda_complex
from .dsl import parse_algebra_file
from .errors import ChainlabError, ParseError
from .excision import (
    ExtensionData,
    filtration_F,
    filtration_Q,
    graded_piece_check,
    h_unitality_check,
    q_kernel_complex,
    relative_hc,
    relative_hh,
    wodzicki_verify,
)
from .lie import ce_homology, gl, h2_vs_hc1, lie_from_assoc, lqt_verify, trace_chain_check
from .presets import algebra_preset, extension_preset
from .reports import Report, betti_payload, render_table
from .tangent import ArtinianBase, chern1, k1_rel_probe, tangent_table


def _base_parser(sub, name, help_text, needs_algebra=True, needs_ext=False):
    p = sub.add_parser(name, help=help_text)
    if needs_algebra:
        group = p.add_mutually_exclusive_group()
        group.add_argument("--preset", help="algebra preset name[:params]")
        group.add_argument("--file", help="algebra DSL file")
    if needs_ext:
        p.add_argument("--ext", required=True, help="extension preset name[:params]")
    p.add_argument("-D", "--degree-bound", type=int, default=5, dest="degree_bound")
    p.add_argument("-r", "--rank", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--size-limit", type=int, default=None, dest="size_limit")
    p.add_argument("--format", choices=["table", "json"], default="table")
    p.add_argument("--reps", action="store_true", help="emit homology representatives")
    p.add_argument("--jobs", type=int, default=1, help="worker threads for per-degree ranks")
    p.add_argument("--timings", action="store_true", help="record wall-clock timings")
    return p


def build_parser():
    ap = argparse.ArgumentParser(prog="chainlab",
                                 description="Exact chain-level homology workbench for finite-dimensional rational algebras")
    sub = ap.add_subparsers(dest="command", required=True)
    _base_parser(sub, "hh", "Hochschild homology (two-column totalization)")
    _base_parser(sub, "hc", "cyclic homology (first-quadrant totalization)")
    _base_parser(sub, "connes", "exactness of the degree-lowering long exact sequence")
    _base_parser(sub, "hunital", "bounded H-unitality certificate")
    p = _base_parser(sub, "filtration", "filtration stages of an extension",
                     needs_algebra=False, needs_ext=True)
    p.add_argument("--level", type=int, default=0, help="stage index n")
    p.add_argument("--kind", choices=["F", "Q"], default="F")
    p.add_argument("--flavor", choices=["bar", "hoch"], default="bar")
    _base_parser(sub, "wodzicki", "excision verifier for an extension",
                 needs_algebra=False, needs_ext=True)
    p = _base_parser(sub, "ce", "Chevalley-Eilenberg homology")
    p.add_argument("--gl", type=int, default=None,
                   help="use gl_r of the algebra instead of its underlying Lie algebra")
    _base_parser(sub, "trace", "chain-map identity of the generalized trace")
    _base_parser(sub, "lqt", "stable-range comparison with the symmetric model")
    _base_parser(sub, "h2hc1", "central extension shadow: H_2 vs HC_1")
    _base_parser(sub, "chern1", "degree-one log-trace probe of a nilpotent extension",
                 needs_algebra=False, needs_ext=True)
    p = _base_parser(sub, "tangent", "tangent table over Artinian bases")
    p.add_argument("--bases", default="dual_numbers",
                   help="comma-separated augmented presets")
    _base_parser(sub, "lambda", "rotation-coinvariants model of the cyclic complex")
    return ap


def _load_algebra(args):
    if getattr(args, "file", None):
        return parse_algebra_file(args.file)
    return algebra_preset(args.preset or "rationals")


def _config_echo(args):
    # jobs and timings are scheduling details: they must not influence the
    # report bytes, so they are not echoed
    keys = ("command", "preset", "file", "ext", "degree_bound", "rank", "seed",
            "samples", "size_limit", "format", "reps", "level", "kind",
            "flavor", "gl", "bases")
    return {k: getattr(args, k) for k in keys if getattr(args, k, None) is not None}


def _validate(args):
    if getattr(args, "degree_bound", 2) < 2:
        raise ChainlabError("degree bound must be >= 2")
    if getattr(args, "rank", 1) < 1:
        raise ChainlabError("rank must be >= 1")
    if args.size_limit is not None and args.size_limit <= 0:
        raise ChainlabError("size limit must be positive")
    if getattr(args, "jobs", 1) < 1:
        raise ChainlabError("jobs must be >= 1")


def run(args) -> Report:
    _validate(args)
    report = Report(config=_config_echo(args))
    t0 = time.monotonic()
    D = args.degree_bound
    cmd = args.command

    if cmd in ("hh", "hc"):
        A = _load_algebra(args)
        fn = hh_homology if cmd == "hh" else hc_homology
        rep = fn(A, D, args.size_limit, jobs=args.jobs, reps=args.reps)
        report.add(cmd, {"algebra": A.name, "D": D}, **betti_payload(rep))
    elif cmd == "lambda":
        A = _load_algebra(args)
        lam = lambda_complex(A, D, args.size_limit)
        rep = lam.homology(jobs=args.jobs, reps=args.reps)
        payload = betti_payload(rep)
        payload["dims"] = {str(p): lam.complex.dim(p) for p in range(0, D + 1)}
        report.add(cmd, {"algebra": A.name, "D": D}, **payload)
    elif cmd == "connes":
        if D < 3:
            raise ChainlabError("connes needs a degree bound >= 3")
        A = _load_algebra(args)
        res = connes_check(A, D, args.size_limit)
        report.add(cmd, {"algebra": A.name, "D": D}, verdict=res.exact, **res.to_jsonable())
    elif cmd == "hunital":
        A = _load_algebra(args)
        res = h_unitality_check(A, D, args.size_limit, jobs=args.jobs)
        report.add(cmd, {"algebra": A.name, "D": D}, verdict=res.passed, **res.to_jsonable())
    elif cmd == "filtration":
        ext = ExtensionData(extension_preset(args.ext))
        if args.kind == "F":
            stage = filtration_F(ext, None, args.level, D, args.flavor, args.size_limit)
            piece = graded_piece_check(ext, None, args.level, D, args.size_limit)
            payload = {
                "dims": {str(p): stage.complex.dim(p) for p in range(0, D + 1)},
                "verdict": piece.passed,
                "graded_piece": piece.to_jsonable(),
            }
        else:
            stage = filtration_Q(ext, args.level, D, args.flavor, args.size_limit)
            kern = q_kernel_complex(ext, args.level, D, args.flavor, args.size_limit)
            payload = {
                "dims": {str(p): stage.complex.dim(p) for p in range(0, D + 1)},
                "kernel_dims": {str(p): kern.dim(p) for p in range(0, D + 1)},
            }
        report.add(cmd, {"ext": args.ext, "level": args.level, "kind": args.kind,
                         "flavor": args.flavor, "D": D}, **payload)
    elif cmd == "wodzicki":
        ext = ExtensionData(extension_preset(args.ext))
        res = wodzicki_verify(ext, D, args.size_limit, jobs=args.jobs)
        payload = {"verdict": res.passed}
        payload.update(res.to_jsonable())
        payload["relative_hh"] = betti_payload(relative_hh(ext, D, args.size_limit, jobs=args.jobs))
        payload["relative_hc"] = betti_payload(relative_hc(ext, D, args.size_limit, jobs=args.jobs))
        report.add(cmd, {"ext": args.ext, "D": D}, **payload)
    elif cmd == "ce":
        A = _load_algebra(args)
        g = gl(A, args.gl) if args.gl else lie_from_assoc(A)
        rep = ce_homology(g, D, args.size_limit, jobs=args.jobs, reps=args.reps)
        report.add(cmd, {"lie": g.name, "D": D}, **betti_payload(rep))
    elif cmd == "trace":
        A = _load_algebra(args)
        res, _, _, _ = trace_chain_check(A, args.rank, D, args.size_limit)
        report.add(cmd, {"algebra": A.name, "r": args.rank, "D": D},
                   verdict=res.chain_map_ok, **res.to_jsonable())
    elif cmd == "lqt":
        A = _load_algebra(args)
        res = lqt_verify(A, args.rank, D, args.size_limit, jobs=args.jobs)
        report.add(cmd, {"algebra": A.name, "r": args.rank, "D": D},
                   verdict=res.all_match, **res.to_jsonable())
    elif cmd == "h2hc1":
        A = _load_algebra(args)
        res = h2_vs_hc1(A, args.rank, args.size_limit, jobs=args.jobs)
        report.add(cmd, {"algebra": A.name, "r": args.rank},
                   verdict=res.equal, **res.to_jsonable())
    elif cmd == "chern1":
        ext = ExtensionData(extension_preset(args.ext))
        res = chern1(ext, args.rank, args.seed, args.samples, args.size_limit)
        k1 = k1_rel_probe(ext, args.rank, args.seed, max(1, args.samples // 2), args.size_limit)
        report.add(cmd, {"ext": args.ext, "r": args.rank}, verdict=res.passed,
                   **res.to_jsonable(), k1_probe=k1.to_jsonable())
    elif cmd == "tangent":
        C = _load_algebra(args)
        bases = [ArtinianBase.from_algebra(algebra_preset(spec.strip()))
                 for spec in args.bases.split(",") if spec.strip()]
        rows = tangent_table(C, bases, D, args.size_limit, jobs=args.jobs)
        report.add(cmd, {"algebra": C.name, "bases": args.bases, "D": D},
                   rows=[row.to_jsonable() for row in rows])
    else:  # pragma: no cover
        raise ChainlabError(f"unknown command {cmd}")

    if args.timings:
        report.results[-1]["timings_ms"] = int((time.monotonic() - t0) * 1000)
    return report


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        report = run(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except ChainlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.format == "json":
        sys.stdout.write(report.to_json())
    else:
        sys.stdout.write(render_table(report))
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
