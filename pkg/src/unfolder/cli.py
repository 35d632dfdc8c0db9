"""Command-line front end.

Subcommands:
    classify   classify a point (or auto-locate the SH pitchfork), emit JSON
    diagram    trace a bifurcation diagram, emit CSV / SVG / JSON
    catalogue  sweep the unfolding-parameter quadrants of a family

Exit codes: 0 success, 1 usage or fatal error, 2 degenerate or
not-on-solution-set classification.  The UNFOLDER_TOL environment
variable overrides the classification tolerance.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .catalogue import (
    FAMILIES,
    LDGC_WINDOW,
    SH_WINDOW,
    catalogue_to_json,
    distinct_signatures,
    enumerate_catalogue,
    signature_of,
)
from .continuation import Window, branches_to_csv, full_diagram
from .errors import NotOnSolutionSet, UnfolderError
from .models import (
    ldgc_germ_B,
    ldgc_germ_C,
    ldgc_params_from,
    load_params_file,
    parse_number,
    sh_germ,
    sh_params_from,
)
from .recognition import DEFAULT_TOL, classify_point, locate_pitchfork
from .svg import render_diagram

MODELS = ("sh", "ldgc_b", "ldgc_c")

SH_KEYS = {"a", "b", "p", "d_a", "c", "alpha"}
LDGC_KEYS = {"d_tilde", "d_tilde_m", "mu", "gamma", "alpha_prime"}


def _collect_overrides(args) -> dict[str, float]:
    overrides: dict[str, float] = {}
    if getattr(args, "config", None):
        overrides.update(load_params_file(args.config))
    for item in args.set or []:
        key, sep, val = item.partition("=")
        if not sep:
            raise ValueError(f"--set expects key=value, got {item!r}")
        overrides[key.strip()] = parse_number(val.strip())
    return overrides


def _build_model(model: str, overrides: dict[str, float]):
    """Returns (germ, params) for a model name plus key=value overrides."""
    if model == "sh":
        keys = SH_KEYS
    elif model in ("ldgc_b", "ldgc_c"):
        keys = LDGC_KEYS
    else:
        raise ValueError(f"unknown model {model!r}")
    bad = set(overrides) - keys
    if bad:
        # a config file may carry both models' keys; only reject --set typos
        overrides = {k: v for k, v in overrides.items() if k in keys}
        unknown = bad - (SH_KEYS | LDGC_KEYS)
        if unknown:
            raise ValueError(f"unknown parameter keys: {sorted(unknown)}")
    if model == "sh":
        params = sh_params_from(overrides)
        return sh_germ(params), params
    params = ldgc_params_from(overrides)
    germ = ldgc_germ_B(params) if model == "ldgc_b" else ldgc_germ_C(params)
    return germ, params


def _default_window(model: str) -> Window:
    return SH_WINDOW if model == "sh" else LDGC_WINDOW


def _parse_window(text: str) -> Window:
    try:
        x_min, x_max, lam_min, lam_max = (float(v) for v in text.split(","))
    except ValueError as exc:
        raise ValueError(f"--window expects xmin,xmax,lmin,lmax, got {text!r}") from exc
    return Window(lam_min=lam_min, lam_max=lam_max, x_min=x_min, x_max=x_max)


def _classification_tol() -> float:
    env = os.environ.get("UNFOLDER_TOL")
    return float(env) if env else DEFAULT_TOL


def cmd_classify(args) -> int:
    overrides = _collect_overrides(args)
    germ, params = _build_model(args.model, overrides)
    tol = _classification_tol()
    extra_param = None

    if args.auto_pitchfork:
        if args.model != "sh":
            raise ValueError("--auto-pitchfork applies to the sh model only")
        u0, q0, d_a0, _resid = locate_pitchfork(params)
        from dataclasses import replace

        germ = sh_germ(replace(params, d_a=d_a0))
        point = (u0, q0)
        extra_param = ("d_a", d_a0)
    elif args.point:
        point = tuple(float(v) for v in args.point.split(","))
        if len(point) != 2:
            raise ValueError("--point expects x,lambda")
    else:
        raise ValueError("classify needs --point or --auto-pitchfork")

    try:
        report = classify_point(germ, point[0], point[1], tol=tol)
    except NotOnSolutionSet as exc:
        payload = {"error": "NotOnSolutionSet", "message": str(exc), "location": list(point)}
        print(json.dumps(payload, indent=2))
        return 2
    if extra_param is not None:
        from dataclasses import replace as dc_replace

        report = dc_replace(report, extra_param=extra_param)
    text = report.to_json()
    print(text)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "classify.json").write_text(text + "\n")
    return 2 if report.classification == "Degenerate" else 0


def cmd_diagram(args) -> int:
    overrides = _collect_overrides(args)
    germ, _params = _build_model(args.model, overrides)
    window = _parse_window(args.window) if args.window else _default_window(args.model)
    formats = args.format or ["csv", "svg"]
    out = Path(args.out or ".")
    out.mkdir(parents=True, exist_ok=True)

    status = 0
    try:
        branches = full_diagram(germ, window, n_seeds=args.seeds)
    except UnfolderError as exc:
        print(f"warning: trace failed: {exc}", file=sys.stderr)
        branches = []
        status = 1

    if "csv" in formats:
        (out / "diagram.csv").write_text(branches_to_csv(branches))
    if "svg" in formats:
        (out / "diagram.svg").write_text(
            render_diagram(branches, window, germ.state_name, germ.control_name)
        )
    if "json" in formats:
        (out / "signature.json").write_text(
            json.dumps(signature_of(branches).to_dict(), indent=2) + "\n"
        )
    return status


def cmd_catalogue(args) -> int:
    family = FAMILIES.get(args.family)
    if family is None:
        raise ValueError(f"unknown family {args.family!r}; choose from {sorted(FAMILIES)}")
    formats = args.format or ["csv"]
    out = Path(args.out or ".")
    out.mkdir(parents=True, exist_ok=True)

    entries = enumerate_catalogue(family)
    csv_paths: list[str] = []
    for i, entry in enumerate(entries):
        name = f"diagram_{i:02d}.csv"
        (out / name).write_text(branches_to_csv(entry.diagram))
        csv_paths.append(name)
        if "svg" in formats:
            (out / f"diagram_{i:02d}.svg").write_text(
                render_diagram(entry.diagram, family.window)
            )
    (out / "catalogue.json").write_text(catalogue_to_json(entries, csv_paths) + "\n")

    n_distinct = len(distinct_signatures(entries))
    print(f"distinct signatures: {n_distinct}")
    if any(e.error for e in entries):
        for e in entries:
            if e.error:
                print(f"warning: setting {e.setting} failed: {e.error}", file=sys.stderr)
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="unfolder",
        description="Singularity classification, bifurcation diagrams, and catalogues "
        "for scalar bifurcation problems.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--set", action="append", metavar="KEY=VALUE", help="parameter override")
        p.add_argument("--config", metavar="FILE", help="key=value parameter file")
        p.add_argument("--out", metavar="DIR", help="output directory")

    p_cls = sub.add_parser("classify", help="classify a singular point")
    p_cls.add_argument("--model", choices=MODELS, required=True)
    p_cls.add_argument("--point", metavar="X,LAMBDA", help="location to classify")
    p_cls.add_argument(
        "--auto-pitchfork", action="store_true", help="solve for the SH pitchfork and critical d_a"
    )
    add_common(p_cls)
    p_cls.set_defaults(func=cmd_classify)

    p_dia = sub.add_parser("diagram", help="trace a bifurcation diagram")
    p_dia.add_argument("--model", choices=MODELS, required=True)
    p_dia.add_argument("--window", metavar="XMIN,XMAX,LMIN,LMAX")
    p_dia.add_argument("--format", action="append", choices=["csv", "json", "svg"])
    p_dia.add_argument("--seeds", type=int, default=9)
    add_common(p_dia)
    p_dia.set_defaults(func=cmd_diagram)

    p_cat = sub.add_parser("catalogue", help="sweep unfolding-parameter quadrants")
    p_cat.add_argument("--family", required=True, choices=sorted(FAMILIES))
    p_cat.add_argument("--format", action="append", choices=["csv", "json", "svg"])
    add_common(p_cat)
    p_cat.set_defaults(func=cmd_catalogue)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (UnfolderError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
