"""Command-line interface: check, excluded-radii, propagate, plot, construct.

Exit codes: 0 nothing found, 2 violation or contradiction, 1 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import spheres as sph
from .engine import (
    FiniteConfig,
    PrefixTooLarge,
    excluded_radii_squared,
    propagate,
    scan,
)
from .geometry import Sphere
from .properties import parse_admissible, property_from_spec, witness_template
from .report import RunConfig, _maybe_json, check_report, dumps, parse_check_report
from .scalar import EXACT, FLOAT, exact_sqrt, format_scalar, parse_scalar
from .svg import UnsupportedDimension, plot_coloring, propagation_frames

OK, USAGE, FOUND = 0, 1, 2


class UsageError(Exception):
    pass


def _common(p: argparse.ArgumentParser):
    p.add_argument("--n", type=int, help="ambient dimension")
    p.add_argument("--mode", choices=(EXACT, FLOAT), help="scalar mode")
    p.add_argument("--seed", type=int)
    p.add_argument("--config", help="JSON run configuration; flags override its values")
    p.add_argument("--out", help="also write the main output to this file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hyperforce", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="search for a violation of a forcing condition")
    _common(p)
    p.add_argument("--coloring", help='e.g. strip, grid:1/3, constant:1 or a JSON object')
    p.add_argument("--property", help='e.g. regular:2, isosceles:2, "edge_lengths:3:{3,4,5}"')
    p.add_argument("--radii", help='admissible radii, e.g. "(0,1)" or "(0,1)\\{1/2}"')
    p.add_argument("--centers", help='"all" or JSON {"balls": [...]} / {"points": [...]}')
    p.add_argument("--epsilon")
    p.add_argument("--budget-spheres", type=int)
    p.add_argument("--budget-witnesses", type=int)
    p.add_argument("--workers", type=int)

    p = sub.add_parser("excluded-radii", help="circumradii of simplices with all edges in S")
    _common(p)
    p.add_argument("--S", required=True, help="comma-separated lengths, at most 8")

    p = sub.add_parser("propagate", help="run forcing rounds on a finite configuration")
    _common(p)
    p.add_argument("points", help="JSON list of {coords: [...], color?: int}")
    p.add_argument("--X", type=int, help="number of colors")
    p.add_argument("--Y", type=int, default=3, help="points of one color that force the center")
    p.add_argument("--radii", default="(0,inf)")
    p.add_argument("--svg-dir", help="write one SVG frame per round here")

    p = sub.add_parser("plot", help="draw a planar coloring as SVG")
    _common(p)
    p.add_argument("--coloring", required=True)
    p.add_argument("--view", default="0,4,0,4", help="xmin,xmax,ymin,ymax")
    p.add_argument("--report", help="overlay the certificate (or all spheres) of a check report")
    p.add_argument("--width", type=int, default=400)

    p = sub.add_parser("construct", help="run one witness construction on a sphere")
    _common(p)
    p.add_argument("what", choices=("template", "chain", "volume"))
    p.add_argument("--radius", default="1")
    p.add_argument("--property", help="for template")
    p.add_argument("--S", help="admissible lengths for chain, e.g. geom:1,1/2")
    p.add_argument("--m", type=int, default=2, help="simplex dimension for volume")
    p.add_argument("--v", type=float, help="target volume")
    p.add_argument("--delta", type=float, default=1.0, help="cap radius is delta*r*sqrt(2)")
    return parser


def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _run_config(args) -> RunConfig:
    file_values = _load_json(args.config) if getattr(args, "config", None) else None
    flags = {k: v for k, v in vars(args).items() if k not in ("command", "config")}
    try:
        return RunConfig.merge(args.command, file_values, flags)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _emit(text: str, out: str | None):
    sys.stdout.write(text)
    if out:
        Path(out).write_text(text)


def cmd_check(args) -> int:
    cfg = _run_config(args)
    try:
        f = cfg.coloring_obj()
        q = cfg.condition()
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(str(exc)) from exc
    verdicts, cert = [], None
    for v in scan(f, q, cfg.budget_spheres, cfg.budget_witnesses, cfg.seed, workers=cfg.workers):
        verdicts.append(v)
        if v.violated:
            cert = v
            break
    _emit(dumps(check_report(cfg, q, f, verdicts, cert)), cfg.out)
    return FOUND if cert is not None else OK


def cmd_excluded_radii(args) -> int:
    cfg = _run_config(args)
    mode = args.mode or EXACT
    try:
        values = [parse_scalar(x.strip(), mode) for x in args.S.split(",") if x.strip()]
        r2s = excluded_radii_squared(values, cfg.n)
    except (PrefixTooLarge, ValueError) as exc:
        raise UsageError(f"{type(exc).__name__}: {exc}") from exc
    rows = []
    for r2 in r2s:
        row = {"radius": math.sqrt(float(r2)), "radius_sq": format_scalar(r2)}
        root = exact_sqrt(r2) if mode == EXACT else None
        row["exact"] = format_scalar(root) if root is not None else None
        rows.append(row)
    _emit(dumps({"S": [format_scalar(v) for v in values], "n": cfg.n, "radii": rows}), cfg.out)
    return OK


def cmd_propagate(args) -> int:
    mode = args.mode or EXACT
    try:
        cfg = FiniteConfig.from_json(_load_json(args.points), mode)
        radii = parse_admissible(args.radii, mode)
        result = propagate(cfg, args.X, args.Y, radii)
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(str(exc)) from exc
    _emit(dumps(result.to_json()), args.out)
    if args.svg_dir:
        out_dir = Path(args.svg_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        try:
            frames = propagation_frames(result)
        except UnsupportedDimension as exc:
            raise UsageError(str(exc)) from exc
        for i, frame in enumerate(frames):
            (out_dir / f"frame_{i:03d}.svg").write_text(frame)
    return FOUND if result.contradiction is not None else OK


def cmd_plot(args) -> int:
    cfg = _run_config(args)
    try:
        view = tuple(float(v) for v in args.view.split(","))
        if len(view) != 4:
            raise ValueError("--view takes xmin,xmax,ymin,ymax")
        f = cfg.coloring_obj()
        verdicts = []
        if args.report:
            rep = parse_check_report(_load_json(args.report))
            verdicts = [rep.certificate] if rep.certificate is not None else rep.verdicts
        svg = plot_coloring(f, view, verdicts, args.width)
    except (UnsupportedDimension, ValueError) as exc:
        raise UsageError(f"{type(exc).__name__}: {exc}") from exc
    _emit(svg, cfg.out)
    return OK


def cmd_construct(args) -> int:
    cfg = _run_config(args)
    rng = np.random.default_rng(cfg.seed)
    try:
        sphere = Sphere(tuple([0.0] * cfg.n), float(parse_scalar(args.radius, FLOAT)))
        out = {"n": cfg.n, "radius": sphere.radius, "seed": cfg.seed, "construction": args.what}
        if args.what == "template":
            if not args.property:
                raise ValueError("template needs --property")
            prop = property_from_spec(_maybe_json(args.property), cfg.mode)
            pts = witness_template(prop, sphere, rng)
            out["property"] = prop.to_json()
        else:
            pole = sph.sample_uniform(sphere, 1, rng)[0]
            cap = sph.Cap.from_delta(sphere, pole, args.delta)
            if args.what == "chain":
                S = parse_admissible(args.S or "geom:1,1/2", cfg.mode)
                pts = sph.chain_construction(sphere, cap, S, rng).vertices
                out["S"] = S.to_json()
            else:
                if args.v is None:
                    raise ValueError("volume needs --v")
                pts = sph.volume_witness(sphere, cap, args.m, args.v, rng).vertices
                out["m"], out["v"] = args.m, args.v
            out["pole"] = [float(x) for x in pole]
    except (ValueError, sph.NoSmallLength, sph.TargetTooLarge, sph.OutOfRange) as exc:
        raise UsageError(f"{type(exc).__name__}: {exc}") from exc
    out["points"] = None if pts is None else [[float(x) for x in p] for p in pts]
    _emit(dumps(out), cfg.out)
    return OK


COMMANDS = {
    "check": cmd_check,
    "excluded-radii": cmd_excluded_radii,
    "propagate": cmd_propagate,
    "plot": cmd_plot,
    "construct": cmd_construct,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return OK if exc.code == 0 else USAGE
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
