"""Command-line front end: morava2 {expand, verify, theta, conjsearch, fgl, cache}."""

import argparse
import hashlib
import json
import os
import sys
import time

from . import __version__
from .errors import Morava2Error
from .order import format_digits, s_digits

REPORT_SCHEMA = 1


def _load_config(path):
    if path is None:
        return {}
    with open(path, "rb") as fh:
        raw = fh.read()
    if path.endswith(".toml"):
        try:
            import tomllib
        except ImportError:
            raise SystemExit("error: TOML configs need Python 3.11+; use a JSON config") from None
        return tomllib.loads(raw.decode())
    return json.loads(raw)


def _config_hash(cfg):
    return hashlib.sha256(json.dumps(cfg, sort_keys=True).encode()).hexdigest()[:16]


def cmd_expand(args):
    from .expr import eval_expr

    count = args.s_digits
    N = count + count % 2
    g = eval_expr(args.expr, N)
    print(format_digits(s_digits(g, count), count))
    return 0


def _params(args, cfg):
    keys = ("level", "coeff_bits", "s_precision", "seed", "trials")
    out = {k: cfg.get(k) for k in keys}
    for k in keys:
        v = getattr(args, k, None)
        if v is not None:
            out[k] = v
    for k, v in out.items():
        if v is not None and (not isinstance(v, int) or v < 0):
            raise SystemExit(f"error: {k} must be a non-negative integer, got {v!r}")
    if out.get("coeff_bits") is not None and not 1 <= out["coeff_bits"] <= 31:
        raise SystemExit("error: coeff_bits must be between 1 and 31")
    if out.get("level") is not None and out["level"] < 3:
        raise SystemExit("error: level must be at least 3")
    return out


def cmd_verify(args):
    from .suites import checks_for, run_check

    cfg = _load_config(args.config)
    params = _params(args, cfg)
    suite = args.suite
    try:
        names = checks_for(suite)
    except ValueError as exc:
        raise SystemExit(f"error: {exc}") from None
    chash = _config_hash({"suite": suite, **params})
    records = []
    for name in names:
        t0 = time.perf_counter()
        try:
            status, details, used = run_check(name, params)
        except Morava2Error as exc:
            status, details, used = "fail", {"error": type(exc).__name__, "message": str(exc)}, params
        rec = {
            "schema": REPORT_SCHEMA,
            "check": name,
            "params": {k: used.get(k) for k in ("level", "coeff_bits", "s_precision", "seed", "trials")},
            "status": status,
            "details": details,
            "tool_version": __version__,
            "config_hash": chash,
        }
        if args.timings:
            rec["elapsed_ms"] = round(1000 * (time.perf_counter() - t0))
        records.append(rec)
    counts = {s: sum(r["status"] == s for r in records) for s in ("pass", "fail", "inconclusive", "skipped")}
    summary = {
        "schema": REPORT_SCHEMA,
        "summary": True,
        "suite": suite,
        "counts": counts,
        "status": "fail" if counts["fail"] else "pass",
        "tool_version": __version__,
        "config_hash": chash,
    }
    lines = [json.dumps(r, sort_keys=True, default=str) for r in records + [summary]]
    text = "\n".join(lines) + "\n"
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.report or args.quiet:
        for r in records:
            print(f"{r['status']:>12}  {r['check']}", file=sys.stderr)
    return 1 if counts["fail"] else 0


def cmd_theta(args):
    from .resolution import DualityComplex

    cx = DualityComplex(args.level, args.coeff_bits)
    data = cx.export_theta()
    text = json.dumps(data, indent=1)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def cmd_conjsearch(args):
    from .quotients import conjugacy_search, quotient_group, subgroup_generators

    out = {"level": args.level}
    for group in ("S21", "S2"):
        q = quotient_group(group, args.level)
        A = q.generated(subgroup_generators(q, "G24"))
        B = q.generated(subgroup_generators(q, "G24'"))
        x = conjugacy_search(A, B, q)
        out[group] = None if x is None else "".join("01wW"[c] for c in q.digit_codes(x))
    print(json.dumps(out, sort_keys=True))
    return 0


def cmd_fgl(args):
    from .honda import fgl_table

    table = fgl_table(args.degree)
    print(json.dumps({"degree": args.degree, "terms": [[i, j] for i, js in table.items() for j in js]}))
    return 0


def cmd_cache(args):
    from .quotients import QuotientGroup, save_enumeration

    d = args.cache_dir or os.environ.get("MORAVA2_CACHE_DIR")
    if not d:
        raise SystemExit("error: set MORAVA2_CACHE_DIR or pass --cache-dir")
    os.makedirs(d, exist_ok=True)
    if args.clear:
        removed = 0
        for f in sorted(os.listdir(d)):
            if f.startswith("quotient_") and f.endswith(".json"):
                os.remove(os.path.join(d, f))
                removed += 1
        print(f"removed {removed} cache files from {d}")
        return 0
    q = QuotientGroup(args.group, args.level, use_cache=False)
    path = os.path.join(d, f"quotient_{args.group}_{args.level}.json")
    save_enumeration(path, q)
    print(f"wrote {path} ({q.order} elements)")
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="morava2", description="Finite-precision computations in the stabilizer group S2.")
    p.add_argument("--version", action="version", version=f"morava2 {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("expand", help="print the S-adic digits of an expression")
    e.add_argument("expr")
    e.add_argument("--s-digits", type=int, default=8)
    e.set_defaults(func=cmd_expand)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite")
    v.add_argument("--level", type=int)
    v.add_argument("--coeff-bits", type=int)
    v.add_argument("--s-precision", type=int)
    v.add_argument("--seed", type=int)
    v.add_argument("--trials", type=int)
    v.add_argument("--config", help="JSON (or TOML on Python 3.11+) file of parameters")
    v.add_argument("--report", help="write the JSON-lines report here instead of stdout")
    v.add_argument("--timings", action="store_true", help="add elapsed_ms (reports stop being byte-stable)")
    v.add_argument("--quiet", action="store_true", help="print a one-line status per check on stderr")
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("theta", help="construct Theta and export it as JSON")
    t.add_argument("--level", type=int, default=8)
    t.add_argument("--coeff-bits", type=int, default=3)
    t.add_argument("--out")
    t.set_defaults(func=cmd_theta)

    c = sub.add_parser("conjsearch", help="look for an element conjugating G24 to G24'")
    c.add_argument("--level", type=int, default=4)
    c.set_defaults(func=cmd_conjsearch)

    f = sub.add_parser("fgl", help="dump the reduced Honda law coefficients")
    f.add_argument("--degree", type=int, default=64)
    f.set_defaults(func=cmd_fgl)

    k = sub.add_parser("cache", help="precompute or clear quotient enumerations")
    k.add_argument("--group", default="S21")
    k.add_argument("--level", type=int, default=6)
    k.add_argument("--cache-dir")
    k.add_argument("--clear", action="store_true")
    k.set_defaults(func=cmd_cache)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except Morava2Error as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
