"""Command line entry point ``tnkit``.

Exit codes: 0 when every selected check passes, 1 when a check fails,
2 for configuration errors (the offending location goes to stderr).
"""

import argparse
import json
import sys
import time

from .catalog import ConfigError, default_config, load_catalog


def _read_config(path):
    if path is None:
        return default_config()
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as e:
        raise ConfigError("/", f"cannot read {path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise ConfigError("/", f"invalid JSON at line {e.lineno} column {e.colno}: {e.msg}") from None


def emit(report, fmt, out):
    if fmt == "json":
        out.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
        return
    for r in report["checks"]:
        line = f"{r['status'].upper():4} {r['id']}  [{r['ref']}]"
        if "time" in r:
            line += f"  {r['time']:.3f}s"
        out.write(line + "\n")
        if r["witness"] is not None:
            out.write(f"     witness: {json.dumps(r['witness'], sort_keys=True)}\n")
    s = report["summary"]
    out.write(f"{s['pass']} passed, {s['fail']} failed, {s['skip']} skipped\n")


def cmd_check(args):
    from .checks import Context, run_suite
    cfg = _read_config(args.config)
    cat = load_catalog(cfg)
    pattern = args.filter if args.filter is not None else cfg.get("suite", {}).get("filter")
    timed = args.format == "text" or args.timings
    report = run_suite(Context(cat), pattern, time.perf_counter if timed else None)
    if args.out:
        with open(args.out, "w") as fh:
            emit(report, args.format, fh)
    else:
        emit(report, args.format, sys.stdout)
    return 1 if report["summary"]["fail"] else 0


def _resolve_module(cat, name):
    """A catalog module, or ``mid:<group>:<N>`` / ``rig:<group>:<N>``."""
    if name in cat.modules:
        return cat.modules[name]
    parts = name.split(":")
    if len(parts) == 3 and parts[0] in ("mid", "rig") and parts[1] in cat.groups:
        from .cmpmod import LocalLevel
        try:
            N = int(parts[2])
        except ValueError:
            raise ConfigError("--module", f"bad level in {name!r}") from None
        lev = LocalLevel(cat.groups[parts[1]], N)
        return lev.M_mid if parts[0] == "mid" else lev.M_rig
    raise ConfigError("--module", f"unknown module {name!r}")


def cmd_cohomology(args):
    from .gmod import tate_cohomology
    cat = load_catalog(_read_config(args.config))
    M = _resolve_module(cat, args.module)
    G = M.group
    H = None
    if args.subgroup:
        try:
            gens = [G.index_of(x) for x in args.subgroup]
        except KeyError as e:
            raise ConfigError("--subgroup", f"unknown element {e}") from None
        H = G.generated(gens)
    degrees = [args.degree] if args.degree is not None else [-1, 0, 1, 2]
    rows = []
    for d in degrees:
        h = tate_cohomology(M, H, d)
        rows.append({"degree": d, "invariants": list(h.invariants), "order": h.order})
    if args.format == "json":
        print(json.dumps({"module": args.module, "subgroup": [G.label(x) for x in (H or G.elements)],
                          "groups": rows}, sort_keys=True, indent=2))
    else:
        for r in rows:
            inv = " x ".join(f"Z/{a}" if a else "Z" for a in r["invariants"]) or "0"
            print(f"H^{r['degree']:>2}: {inv}")
    return 0


def cmd_dotv(args):
    from .sites import enumerate_covers, search_lifts
    cat = load_catalog(_read_config(args.config))
    if args.group not in cat.groups:
        raise ConfigError("--group", f"unknown group {args.group!r}")
    G = cat.groups[args.group]
    try:
        with open(args.classes) as fh:
            spec = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError("--classes", str(e)) from None
    classes = []
    for k, labels in enumerate(spec):
        try:
            H = tuple(sorted(G.index_of(x) for x in labels))
        except KeyError as e:
            raise ConfigError(f"--classes/{k}", f"unknown element {e}") from None
        if not G.is_subgroup(H):
            raise ConfigError(f"--classes/{k}", "not a subgroup")
        classes.append(G.subgroup_class(H))
    found = search_lifts(G, classes)
    every = enumerate_covers(G, classes)
    agree = (found is None) == (not every)
    if found is None:
        print("UNSAT" + ("" if agree else "  (enumeration disagrees)"))
    else:
        for k, H in enumerate(found):
            print(f"place {k}: {{{', '.join(G.label(x) for x in H)}}}")
    print(f"cross-check with enumeration: {'ok' if agree else 'MISMATCH'} ({len(every)} covers)")
    return 0 if agree else 1


def cmd_fixtures(args):
    print(json.dumps(default_config(), indent=2, sort_keys=True))
    return 0


def build_parser():
    ap = argparse.ArgumentParser(prog="tnkit", description="Exact checks for Tate-Nakayama lattice data.")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="run the verification suite")
    c.add_argument("--config", help="JSON config (default: built-in catalog)")
    c.add_argument("--filter", help="regular expression selecting check ids")
    c.add_argument("--format", choices=["text", "json"], default="text")
    c.add_argument("--out", help="write the report here instead of stdout")
    c.add_argument("--timings", action="store_true", help="include timings in JSON output")
    c.set_defaults(func=cmd_check)

    h = sub.add_parser("cohomology", help="Tate cohomology of a module")
    h.add_argument("--config")
    h.add_argument("--module", required=True, help="catalog module, or mid:<group>:<N>, rig:<group>:<N>")
    h.add_argument("--subgroup", nargs="*", help="generators of the subgroup (element labels)")
    h.add_argument("--degree", type=int)
    h.add_argument("--format", choices=["text", "json"], default="text")
    h.set_defaults(func=cmd_cohomology)

    d = sub.add_parser("dotv", help="choose lifts whose decomposition groups cover the group")
    d.add_argument("--config")
    d.add_argument("--group", required=True)
    d.add_argument("--classes", required=True, help="JSON file: one representative subgroup per place")
    d.set_defaults(func=cmd_dotv)

    f = sub.add_parser("fixtures", help="print the built-in catalog as JSON")
    f.set_defaults(func=cmd_fixtures)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as e:
        print(f"config error at {e.location}: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
