"""Command-line orchestration: norm, map, split, check, suite.

Exit codes: 0 all checks passed, 2 a check failed, 3 refused parameter
range, 4 config error. All reports are reproducible from config + seed;
timestamps live only in the separate meta output so record files are
byte-identical across reruns. BESOVLAB_THREADS caps the suite pool.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .grid import DEFAULT_COUNT, DEFAULT_WINDOW, SpaceParams, sample
from .maps import (
    LineMap,
    M_functional,
    U_functional,
    lipschitz_constant,
    max_preimage_count,
    named_map,
    preimage_intervals,
)
from .norms import (
    DyadicHGrid,
    besov_norm_diff,
    littlewood_paley_norm,
    sobolev_norm_diff,
    sobolev_norm_fourier,
)
from .splitting import IntervalFamily, intersection_degree, split_partition
from .theorems import CheckReport, RangeGateError, classify

EXIT_OK = 0
EXIT_CHECK_FAILED = 2
EXIT_REFUSED_RANGE = 3
EXIT_CONFIG = 4


class ConfigError(ValueError):
    pass


def _parse_kv(text: str) -> dict:
    out = {}
    if not text:
        return out
    for item in text.split(","):
        k, sep, v = item.partition("=")
        if not sep:
            raise ConfigError(f"expected key=value, got {item!r}")
        out[k.strip()] = v.strip()
    return out


def _parse_float(v: str) -> float:
    if v.lower() in ("inf", "infinity"):
        return math.inf
    return float(v)


def parse_space(text: str) -> SpaceParams:
    kv = _parse_kv(text)
    try:
        return SpaceParams(
            s=_parse_float(kv["s"]),
            p=_parse_float(kv["p"]),
            q=_parse_float(kv.get("q", "2")),
            m=int(kv.get("m", "2")),
        )
    except KeyError as exc:
        raise ConfigError(f"space spec missing field {exc}") from exc
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def parse_fn(text: str, window, count):
    name, _, rest = text.partition(":")
    params = {}
    for k, v in _parse_kv(rest).items():
        try:
            params[k] = json.loads(v)
        except json.JSONDecodeError:
            params[k] = _parse_float(v)
    try:
        return sample(name, window, count, **params)
    except (ValueError, TypeError) as exc:
        raise ConfigError(str(exc)) from exc


def _np_default(obj):
    if isinstance(obj, (np.floating, np.integer, np.bool_)):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"not JSON serializable: {type(obj)}")


def _dump_records(records: list, path=None):
    text = json.dumps(records, indent=2, sort_keys=True, default=_np_default)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


METHODS = ("diff", "lp", "sobolev_fourier", "sobolev_diff")


def cmd_norm(args) -> int:
    window = tuple(float(v) for v in args.window.split(","))
    sp = parse_space(args.space)
    f = parse_fn(args.fn, window, args.count)
    hg = DyadicHGrid(levels=args.levels)
    records = []
    for method in args.method.split(","):
        method = method.strip()
        if method == "diff":
            value = besov_norm_diff(f, sp, hg)
        elif method == "lp":
            value = littlewood_paley_norm(f, sp)
        elif method == "sobolev_fourier":
            value = sobolev_norm_fourier(f, sp.s, sp.p)
        elif method == "sobolev_diff":
            value = sobolev_norm_diff(f, sp.s, sp.p, sp.m, hg)
        else:
            raise ConfigError(f"unknown method {method!r} (choose from {METHODS})")
        records.append(
            {
                "function": args.fn,
                "space": sp.as_dict(),
                "method": method,
                "value": value,
                "grid": {"count": args.count, "window": list(window), "K": args.levels},
            }
        )
    _dump_records(records, args.json)
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write("function,method,s,p,q,m,value,count\n")
            for r in records:
                s = r["space"]
                fh.write(
                    f"{r['function']},{r['method']},{s['s']},{s['p']},{s['q']},{s['m']},"
                    f"{r['value']},{args.count}\n"
                )
    return EXIT_OK


def cmd_map(args) -> int:
    phi = named_map(args.map)
    mest = M_functional(phi)
    record = {
        "map": phi.name,
        "U": U_functional(phi),
        "M": None if mest.infinite else mest.value,
        "M_infinite": mest.infinite,
        "M_ladder": [list(p) for p in zip(mest.widths, mest.sups)],
        "lip": lipschitz_constant(phi),
        "max_preimage": max_preimage_count(phi),
    }
    if args.target:
        lo, hi = (float(v) for v in args.target.split(","))
        record["target"] = [lo, hi]
        record["preimage"] = preimage_intervals(phi, (lo, hi)).to_json()
    _dump_records([record], args.json)
    return EXIT_OK


def cmd_split(args) -> int:
    with open(args.family) as fh:
        pairs = json.load(fh)
    fam = IntervalFamily(np.asarray(pairs, dtype=float))
    degree = intersection_degree(fam)
    part = split_partition(fam)
    record = {
        "n": len(fam),
        "degree": degree,
        "classes": part.to_json()["classes"],
        "labels": part.to_json()["labels"],
        "bound_ok": part.count <= degree + 1,
    }
    _dump_records([record], args.json)
    return EXIT_OK if record["bound_ok"] else EXIT_CHECK_FAILED


def _report_for(map_spec: str, sp: SpaceParams, kind: str, homeo: bool, count: int, seed: int) -> CheckReport:
    phi = named_map(map_spec)
    return classify(phi, sp, kind=kind, homeomorphism=homeo, count=count, seed=seed)


def cmd_check(args) -> int:
    sp = parse_space(args.space)
    report = _report_for(args.map, sp, args.kind, args.homeo, args.count, args.seed)
    _dump_records([report.to_json()], args.json)
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(CheckReport.CSV_HEADER + "\n")
            fh.write(report.to_csv_row() + "\n")
    failed = any(not fr.passed for fr in report.fragments)
    return EXIT_CHECK_FAILED if failed else EXIT_OK


DEFAULT_SUITE = {
    "seed": 1234,
    "count": DEFAULT_COUNT,
    "space": {"s": 2.1, "p": 2.0, "q": 2.0, "m": 3},
    "kind": "besov",
    "maps": [
        "identity",
        "shift:c=1",
        "scale:k=2",
        "scale:k=0.5",
        "scale:k=3",
        "affine:a=0.5,b=2",
        "sin_drift:amp=0.5",
        "sin_drift:amp=0.25",
    ],
}


def cmd_suite(args) -> int:
    if args.config:
        with open(args.config) as fh:
            cfg = json.load(fh)
    else:
        cfg = DEFAULT_SUITE
    try:
        sp = SpaceParams(**cfg["space"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"bad suite space: {exc}") from exc
    seed = int(cfg.get("seed", 1234))
    count = int(cfg.get("count", DEFAULT_COUNT))
    kind = cfg.get("kind", "besov")
    maps = cfg.get("maps", [])
    if not maps:
        raise ConfigError("suite config lists no maps")
    os.makedirs(args.out, exist_ok=True)
    started = time.time()

    max_workers = int(os.environ.get("BESOVLAB_THREADS", "0")) or None

    def run_one(spec):
        return spec, _report_for(spec, sp, kind, bool(cfg.get("homeo", False)), count, seed)

    results = {}
    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        for spec, report in pool.map(run_one, maps):
            results[spec] = report
    ordered = [results[spec] for spec in sorted(results)]

    records_path = os.path.join(args.out, "records.json")
    _dump_records([r.to_json() for r in ordered], records_path)
    csv_path = os.path.join(args.out, "summary.csv")
    with open(csv_path, "w") as fh:
        fh.write(CheckReport.CSV_HEADER + "\n")
        for r in ordered:
            fh.write(r.to_csv_row() + "\n")
    meta = {
        "started": started,
        "finished": time.time(),
        "runtime_s": {r.map_name: r.runtime_s for r in ordered},
        "config": cfg,
    }
    with open(os.path.join(args.out, "meta.json"), "w") as fh:
        json.dump(meta, fh, indent=2)
    n_failed = sum(1 for r in ordered for fr in r.fragments if not fr.passed)
    verdicts = {r.map_name: r.verdict for r in ordered}
    print(json.dumps({"rows": len(ordered), "failed_fragments": n_failed, "verdicts": verdicts}, indent=2, sort_keys=True))
    return EXIT_CHECK_FAILED if n_failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="besovlab")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("norm", help="compute norms of a catalog function")
    p.add_argument("--fn", required=True, help="descriptor, e.g. gaussian or bump:center=1")
    p.add_argument("--space", required=True, help="e.g. s=1.5,p=2,q=2,m=2 (inf allowed)")
    p.add_argument("--method", default="diff", help=f"comma list from {METHODS}")
    p.add_argument("--count", type=int, default=DEFAULT_COUNT)
    p.add_argument("--window", default=f"{DEFAULT_WINDOW[0]},{DEFAULT_WINDOW[1]}")
    p.add_argument("--levels", type=int, default=10)
    p.add_argument("--json", default=None)
    p.add_argument("--csv", default=None)
    p.set_defaults(func=cmd_norm)

    p = sub.add_parser("map", help="geometric functionals of a line map")
    p.add_argument("--map", required=True, help="e.g. identity, scale:k=2, or file.json")
    p.add_argument("--target", default=None, help="a,b for a preimage decomposition")
    p.add_argument("--json", default=None)
    p.set_defaults(func=cmd_map)

    p = sub.add_parser("split", help="greedy disjoint partition of an interval family")
    p.add_argument("--family", required=True, help="JSON file: [[l, r], ...]")
    p.add_argument("--json", default=None)
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("check", help="classify one (map, space) pair")
    p.add_argument("--map", required=True)
    p.add_argument("--space", required=True)
    p.add_argument("--kind", choices=("besov", "sobolev"), default="besov")
    p.add_argument("--homeo", action="store_true")
    p.add_argument("--count", type=int, default=DEFAULT_COUNT)
    p.add_argument("--seed", type=int, default=1234)
    p.add_argument("--json", default=None)
    p.add_argument("--csv", default=None)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("suite", help="run a regression suite of checks")
    p.add_argument("--config", default=None, help="JSON config; omit for the default suite")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_suite)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except RangeGateError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED_RANGE
    except (ValueError, OSError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
