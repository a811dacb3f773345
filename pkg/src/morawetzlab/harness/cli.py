"""Command-line surface.

Exit codes: 0 success, 2 configuration error, 3 audit failure, 4 I/O error.
"""

from __future__ import annotations

import argparse
import os
import sys

from ..errors import AuditFailure, ConfigError, IoError, MorawetzLabError
from .audits import AUDITS, run_audits
from .config import load_config
from .runner import output_root, run_scenario

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_AUDIT = 3
EXIT_IO = 4


def _add_run_parser(sub, name: str, help_text: str):
    p = sub.add_parser(name, help=help_text)
    p.add_argument("--config", required=True, metavar="PATH",
                   help="YAML scenario description")
    p.add_argument("--out", metavar="DIR", default=None,
                   help="output directory (default: $MORAWETZLAB_OUT or cwd)")
    p.add_argument("--seed", type=int, default=None,
                   help="override the seed recorded in the config")
    p.add_argument("--jobs", type=int, default=1,
                   help="concurrent trajectory jobs (geodesic batches)")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="morawetzlab",
        description="Numerical audits of generator energies, trapping and "
                    "multiplier estimates on black-hole exteriors.")
    sub = parser.add_subparsers(dest="command", required=True)
    _add_run_parser(sub, "geodesic", "integrate a batch of null geodesics")
    _add_run_parser(sub, "wave", "evolve a 1+1 mode and its ledgers")
    _add_run_parser(sub, "trapped", "locate the trapped (orbiting) null root")
    _add_run_parser(sub, "scan-tchi", "timelikeness scan of the blended Kerr generator")

    audit = sub.add_parser("audit", help="run the built-in acceptance presets")
    audit.add_argument("--criteria", nargs="*", default=None, metavar="NAME",
                       help=f"subset to run; known: {', '.join(AUDITS)}")
    audit.add_argument("--out", metavar="DIR", default=None,
                       help="optional directory for the audit summary")
    return parser


def _run_scenario_command(args) -> int:
    config = load_config(args.config)
    if args.seed is not None:
        config.params["seed"] = int(args.seed)
    out = output_root(args.out)
    manifest = run_scenario(config, out, jobs=args.jobs, raise_on_audit=False)
    for key, audit in sorted(manifest.audits.items()):
        verdict = "PASS" if audit.get("passed", True) else "FAIL"
        print(f"[{verdict}] {key}")
    print(f"manifest: {os.path.join(out, 'manifest.json')}")
    if not manifest.all_passed:
        raise AuditFailure("one or more built-in audits failed")
    return EXIT_OK


def _audit_command(args) -> int:
    try:
        results = run_audits(args.criteria)
    except KeyError as exc:
        raise ConfigError(str(exc)) from exc
    for res in results:
        print(res.summary_line())
    n_fail = sum(not r.passed for r in results)
    print(f"{len(results) - n_fail}/{len(results)} audits passed")
    if args.out:
        import json
        try:
            os.makedirs(args.out, exist_ok=True)
            path = os.path.join(args.out, "audit_summary.json")
            payload = [{"criterion": r.criterion, "passed": r.passed,
                        "measured": r.measured, "detail": r.detail}
                       for r in results]
            tmp = path + ".tmp"
            with open(tmp, "w") as fh:
                json.dump(payload, fh, indent=2, sort_keys=True)
                fh.write("\n")
            os.replace(tmp, path)
        except OSError as exc:
            raise IoError(f"cannot write audit summary: {exc}") from exc
    if n_fail:
        raise AuditFailure(f"{n_fail} acceptance audit(s) failed")
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "audit":
            return _audit_command(args)
        return _run_scenario_command(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except AuditFailure as exc:
        print(f"audit failure: {exc}", file=sys.stderr)
        return EXIT_AUDIT
    except IoError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except MorawetzLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
