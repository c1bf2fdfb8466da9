"""Command line entry point: ``twistfock check`` and ``twistfock preset``."""

from __future__ import annotations

import argparse
import json
import sys

from .report import ConfigError, emit_json, emit_text, parse_config, run_diagnostics
from .zoo import PRESETS

EXIT_OK, EXIT_FAILED, EXIT_CONFIG = 0, 1, 2


def cmd_check(args):
    try:
        cfg = parse_config(sys.stdin if args.config == "-" else args.config)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    fmt = args.format or cfg.format
    report = run_diagnostics(cfg)
    text = emit_json(report) if fmt == "json" else emit_text(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if report.well_defined else EXIT_FAILED


def cmd_preset(args):
    cfg = {"dim": args.dim, "preset": args.name}
    try:
        if args.name == "qflip":
            if args.q is None:
                raise ConfigError("q", "qflip preset needs --q")
            cfg["q"] = _scalar(args.q)
        if args.name == "epsilon":
            cfg["epsilon"] = {
                "sigma": json.loads(args.sigma) if args.sigma else [[1 if i == j else 0 for j in range(args.dim)] for i in range(args.dim)],
                "omega": json.loads(args.omega) if args.omega else [[0] * args.dim for _ in range(args.dim)],
                "q": _scalar(args.q) if args.q is not None else [1.0, 0.0],
            }
        cfg["n_max"] = args.n_max
        cfg["quotient"] = args.quotient
        parse_config(dict(cfg))
    except (ConfigError, json.JSONDecodeError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    sys.stdout.write(json.dumps(cfg, indent=2) + "\n")
    return EXIT_OK


def _scalar(text):
    z = complex(text.replace("i", "j"))
    return [z.real, z.imag]


def build_parser():
    parser = argparse.ArgumentParser(
        prog="twistfock",
        description="Diagnose deformed Fock spaces built from a twist operator.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="run the diagnostic pipeline on a JSON config")
    check.add_argument("config", help="path to the config file, or - for stdin")
    check.add_argument("--format", choices=["text", "json"], default=None)
    check.add_argument("--out", help="write the report here instead of stdout")
    check.set_defaults(func=cmd_check)

    preset = sub.add_parser("preset", help="print a ready-to-run config for a preset")
    preset.add_argument("name", choices=PRESETS)
    preset.add_argument("--dim", type=int, required=True)
    preset.add_argument("--q", help="deformation parameter, e.g. 0.5 or 1i")
    preset.add_argument("--sigma", help="epsilon preset: JSON integer matrix")
    preset.add_argument("--omega", help="epsilon preset: JSON integer matrix")
    preset.add_argument("--n-max", type=int, default=4)
    preset.add_argument("--quotient", choices=["none", "full-kernel"], default="none")
    preset.set_defaults(func=cmd_preset)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
