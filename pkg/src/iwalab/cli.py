"""Command-line entry point.

    iwalab <command> --input <file> [--precision N] [--max-precision N]
                     [--budget K] [--out <file>]

Commands: prepare | char | euler | akashi | find-twist | selftest.
Exit codes: 0 = all tasks decided, 2 = some task undecided at the precision
or budget cap, 1 = error.  A human-readable table goes to stdout; the full
machine-readable report goes to the sidecar file (default: <input>.report.json).
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import IwalabError
from .problems import parse_problem
from .workbench import PRECISION_CAP, digest_text, run

COMMANDS = ("prepare", "char", "euler", "akashi", "find-twist", "selftest")


def _build_parser():
    ap = argparse.ArgumentParser(prog="iwalab", description=__doc__.strip().splitlines()[0])
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--input", help="problem file (JSON stanza)")
    ap.add_argument("--precision", type=int, help="override the working precision exponent N")
    ap.add_argument(
        "--max-precision",
        type=int,
        default=PRECISION_CAP,
        help="escalation cap for N (default %(default)s)",
    )
    ap.add_argument("--budget", type=int, help="candidate cap for find-twist")
    ap.add_argument("--out", help="sidecar report path (default: <input>.report.json)")
    return ap


def _print_table(report):
    cmd = report["command"]
    tasks = report["tasks"]
    print(f"# iwalab {report['version']}  {cmd}  input {report['input_digest']}")
    if cmd == "selftest":
        for c in tasks:
            mark = "PASS" if c["pass"] else "FAIL"
            extra = f"  [{c['detail']}]" if c["detail"] else ""
            print(f"{mark}  {c['name']}{extra}")
        return
    if cmd in ("prepare", "char"):
        for t in tasks:
            print(f"lambda = {t['lambda']}  mu = {t['mu']}")
            key = "distinguished" if cmd == "prepare" else "coefficients"
            print(f"{key}: {t[key]}")
        return
    if cmd == "akashi":
        for t in tasks:
            print(f"level ({t['level'][0]},{t['level'][1]})  degree {t['degree']}")
            print(f"  coefficients: {t['coefficients']}")
        return
    if cmd == "euler":
        hdr = f"{'u':>10} {'level':>8} {'status':>28} {'chi':>6} {'cross':>6} {'agree':>6} {'N':>5}"
        print(hdr)
        for t in tasks:
            lv = t["level"]
            lv = f"({lv[0]},{lv[1]})" if isinstance(lv, list) else lv
            cross = t.get("analytic_exponent", t.get("akashi_exponent"))
            print(
                f"{t['u']:>10} {lv:>8} {t['status']:>28} "
                f"{str(t['chi_exponent']):>6} {str(cross):>6} "
                f"{str(t['routes_agree']):>6} {t['precision']:>5}"
            )
        return
    if cmd == "find-twist":
        for t in tasks:
            print(f"accepted u = {t['accepted_u']}  (budget {t['budget']})")
            for c in t["candidates"]:
                stat = "ACCEPTED" if c["accepted"] else "rejected"
                outs = ", ".join(
                    (
                        f"({o['level'][0]},{o['level'][1]})"
                        if isinstance(o["level"], list)
                        else str(o["level"])
                    )
                    + f":{o['status']}"
                    + (f"/chi={o['chi_exponent']}" if o["chi_exponent"] is not None else "")
                    for o in c["outcomes"]
                )
                print(f"  u = {c['u']:>8}  {stat}  {outs}")
            if "reverified_at" in t:
                print(f"  certificate re-verified at N = {t['reverified_at']}: {t['reverified_ok']}")
        return


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        problem = None
        digest = digest_text("")
        if args.input:
            with open(args.input, "r", encoding="utf-8") as fh:
                text = fh.read()
            digest = digest_text(text)
            problem = parse_problem(text)
            if args.precision:
                data = dict(problem.source)
                data["precision"] = args.precision
                problem = parse_problem(json.dumps(data))
        elif args.command != "selftest":
            print("error: --input is required for this command", file=sys.stderr)
            return 1
        report, code = run(
            problem,
            args.command,
            max_precision=args.max_precision,
            input_digest=digest,
            budget=args.budget,
        )
    except IwalabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    _print_table(report)
    out_path = args.out
    if out_path is None and args.input:
        out_path = args.input + ".report.json"
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            json.dump(report, fh, sort_keys=True, indent=2)
            fh.write("\n")
        print(f"report written to {out_path}")
    return code


if __name__ == "__main__":
    sys.exit(main())
