"""Command-line interface: ``nhw enumerate``, ``nhw dump`` and ``nhw verify``.

Exit codes are stable:

* 0: the command succeeded and every requested check passed
* 1: internal or contract error (bad operator request, cap exceeded,
  vanishing denominator, unwritable output path)
* 2: usage error (unknown flag, non-positive bound)
* 3: a mathematical violation was found

Every report is JSON with ``"schema": 1`` and echoes the run configuration.
Keys are sorted, so a fixed configuration produces byte-identical output;
wall-clock timings live under a separate ``"timing"`` key that
``--no-timing`` drops.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from typing import List, Optional

from .conventions import HEISENBERG_CHOICES, SHB_CHOICES, TAU_CHOICES, Convention, frozen
from .daha import SHContext, build_generators, derive_higher_generators
from .errors import CapExceeded, ContractViolation, DenominatorVanishes, ZeroWeight
from .hecke import full_operator, g0_direct
from .localization import euler_class, tangent_character
from .partitions import enumerate_multipartitions, macmahon_series
from .resolution import run_grid, single_flip_evidence
from .suites import SUITES, worker_count

EXIT_OK, EXIT_INTERNAL, EXIT_USAGE, EXIT_VIOLATION = 0, 1, 2, 3
SCHEMA = 1
EXTRA_SUITES = ("resolution", "single-flip")


@dataclass
class RunConfig:
    """Everything that determines a run; echoed verbatim into each report."""

    command: str
    rank: Optional[int] = None
    size: Optional[int] = None
    n_max: Optional[int] = None
    l_max: Optional[int] = None
    cap: Optional[int] = None
    order: Optional[int] = None
    nested: bool = False
    suite: Optional[str] = None
    kind: Optional[str] = None
    gen: Optional[str] = None
    method: str = "exact"
    convention: dict = field(default_factory=dict)
    output: Optional[str] = None
    format: str = "json"

    def to_json(self) -> dict:
        return asdict(self)


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------

def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _nonnegative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return value


def _add_common(p: argparse.ArgumentParser, convention_flags: bool = True) -> None:
    p.add_argument("--output", "-o", help="write the result here instead of stdout")
    p.add_argument("--format", choices=("json", "csv", "pretty"), default="json")
    if not convention_flags:
        return
    g = p.add_argument_group("convention overrides (defaults: the frozen configuration)")
    g.add_argument("--arm-leg-offset", type=int, choices=(0, -1))
    g.add_argument("--tau", choices=TAU_CHOICES)
    g.add_argument("--shb-variant", choices=SHB_CHOICES)
    g.add_argument("--lowering-sign-shift", type=int, choices=(0, 1))
    g.add_argument("--varphi-sign", type=int, choices=(1, -1))
    g.add_argument("--content-sign", type=int, choices=(1, -1))
    g.add_argument("--heisenberg", choices=HEISENBERG_CHOICES)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nhw", description="Nested fixed points, Hecke operators and the degenerate DAHA action.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="list r-partitions of a given size")
    p.add_argument("--rank", type=_positive, required=True)
    p.add_argument("--size", type=_nonnegative, required=True)
    p.add_argument("--nested", action="store_true", help="only nested r-partitions")
    _add_common(p, convention_flags=False)

    p = sub.add_parser("dump", help="write a character table, operator or series")
    p.add_argument("kind", choices=("tangent", "operator", "macmahon"))
    p.add_argument("--rank", type=_positive, required=True)
    p.add_argument("--size", type=_nonnegative, help="box count (tangent)")
    p.add_argument("--nested", action="store_true", help="tangent: nested r-partitions only")
    p.add_argument("--gen", help="operator: D,k,l | f,i,l | g,i,l")
    p.add_argument("--cap", type=_positive, help="operator: top level")
    p.add_argument("--order", type=_nonnegative, help="macmahon: last coefficient")
    _add_common(p)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--suite", default="all",
                   choices=("all",) + tuple(SUITES) + EXTRA_SUITES)
    p.add_argument("--rank", type=_positive, help="run only this rank")
    p.add_argument("--nmax", type=_nonnegative, help="size bound (character: series order)")
    p.add_argument("--lmax", type=_nonnegative, help="generator index bound")
    p.add_argument("--cap", type=_positive, help="truncation level")
    p.add_argument("--method", choices=("exact", "evaluation"), default="exact",
                   help="rank computation for the vacuum suite")
    p.add_argument("--workers", type=_positive, help="worker processes (default: NHW_WORKERS or cores)")
    p.add_argument("--no-timing", action="store_true", help="omit wall-clock timings")
    _add_common(p)
    return parser


def _convention(args) -> Convention:
    overrides = {name: getattr(args, name, None) for name in
                 ("arm_leg_offset", "tau", "shb_variant", "lowering_sign_shift",
                  "varphi_sign", "content_sign", "heisenberg")}
    return frozen().with_overrides(**overrides)


# ---------------------------------------------------------------------------
# Output
# ---------------------------------------------------------------------------

def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _csv(header: List[str], rows: List[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _emit(text: str, path: Optional[str]) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise ContractViolation(f"cannot write {path}: {exc.strerror or exc}") from exc


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_enumerate(args, cfg: RunConfig) -> int:
    items = enumerate_multipartitions(args.rank, args.size, nested_only=args.nested)
    if args.format == "json":
        lines = [json.dumps({"count": len(items)})]
        lines += [json.dumps(mu.to_json()) for mu in items]
        text = "\n".join(lines) + "\n"
    elif args.format == "csv":
        text = _csv(["index", "parts"], [[k, json.dumps([list(p) for p in mu])]
                                         for k, mu in enumerate(items)])
        text = f"# count {len(items)}\n" + text
    else:
        text = f"count {len(items)}\n" + "".join(
            " | ".join(",".join(map(str, p)) or "-" for p in mu) + "\n" for mu in items)
    _emit(text, args.output)
    return EXIT_OK


def _parse_gen(spec: str):
    parts = [s.strip() for s in (spec or "").split(",")]
    if len(parts) != 3 or parts[0] not in ("D", "f", "g"):
        raise UsageError("--gen must look like D,k,l or f,i,l or g,i,l")
    try:
        return parts[0], int(parts[1]), int(parts[2])
    except ValueError:
        raise UsageError("--gen indices must be integers") from None


def _operator(args, conv: Convention):
    if args.cap is None:
        raise UsageError("dump operator needs --cap")
    family, a, b = _parse_gen(args.gen)
    if family == "f":
        return full_operator(a, b, args.cap, args.rank, conv)
    if family == "g":
        if a not in (-1, 0, 1):
            raise ContractViolation("operator index must be -1, 0 or 1")
        return g0_direct(a, b, args.cap, args.rank, conv)
    ctx = SHContext(args.rank, args.cap, conv)
    if a in (-1, 0, 1):
        if a == 0 and b == 0:
            raise ContractViolation("D_{0,0} is not defined")
        return build_generators(ctx, b)[(a, b)]
    if b != 0:
        raise ContractViolation("only D_{k,0} is available for |k| > 1")
    higher = derive_higher_generators(build_generators(ctx, 1), abs(a))
    return higher[(a, 0)]


def cmd_dump(args, cfg: RunConfig) -> int:
    conv = _convention(args)
    if args.kind == "macmahon":
        if args.order is None:
            raise UsageError("dump macmahon needs --order")
        series = macmahon_series(args.rank, args.order)
        payload = {"schema": SCHEMA, "kind": "macmahon", "config": cfg.to_json(), "series": series}
        rows = [[n, c] for n, c in enumerate(series)]
        header = ["n", "coefficient"]
    elif args.kind == "tangent":
        if args.size is None:
            raise UsageError("dump tangent needs --size")
        rows, table = [], []
        for mu in enumerate_multipartitions(args.rank, args.size, nested_only=args.nested):
            char = tangent_character(mu, conv)
            euler = euler_class(char)
            table.append({"mu": mu.to_json(), "character": char.char.to_json(),
                          "text": str(char.char), "euler": euler.to_json()})
            rows.append([json.dumps([list(p) for p in mu]), str(char.char), str(euler)])
        payload = {"schema": SCHEMA, "kind": "tangent", "config": cfg.to_json(), "rows": table}
        header = ["mu", "character", "euler"]
    else:
        op = _operator(args, conv)
        payload = {"schema": SCHEMA, "kind": "operator", "config": cfg.to_json(),
                   "operator": op.to_json()}
        header = ["level", "row", "col", "value"]
        rows = [[n, row, col, str(v)] for n in op.levels for row, col, v in op.nonzero_entries(n)]
    if args.format == "json":
        text = _dumps(payload)
    elif args.format == "csv":
        text = _csv(header, rows)
    else:
        text = "".join("  ".join(str(c) for c in row) + "\n" for row in rows)
    _emit(text, args.output)
    return EXIT_OK


def _suite_kwargs(name: str, args, conv: Convention, workers: int) -> dict:
    kw = {"convention": conv, "workers": workers}
    if args.rank is not None:
        kw.update(r_min=args.rank, r_max=args.rank)
        if name == "daha":
            kw["shc_r_max"] = max(args.rank, 2)
    if args.nmax is not None:
        key = {"character": "N"}.get(name, "n_max")
        kw[key] = args.nmax
        if name == "dimensions":
            kw["pair_n_max"] = args.nmax
    if args.cap is not None:
        kw["cap"] = args.cap
    if args.lmax is not None:
        kw[{"daha": "sha_max", "vacuum": "l_vac"}.get(name, "l_max")] = args.lmax
    if name == "vacuum":
        kw["method"] = args.method
    return kw


def _run_suite(name: str, args, conv: Convention, workers: int) -> dict:
    if name == "resolution":
        start = time.perf_counter()
        rep = run_grid(workers=workers)
        ok = len(rep["passing"]) == 1 and rep["passing"][0] == rep["frozen"]
        rep.update(suite=name, checked=len(rep["rows"]),
                   violations=[] if ok else [{"detail": f"passing triples {rep['passing']}, "
                                                        f"frozen {rep['frozen']}"}],
                   seconds=round(time.perf_counter() - start, 3))
        return rep
    if name == "single-flip":
        start = time.perf_counter()
        rep = single_flip_evidence(workers=workers)
        rep.update(suite=name, checked=len(rep["rows"]), violations=[],
                   seconds=round(time.perf_counter() - start, 3))
        return rep
    return SUITES[name](**_suite_kwargs(name, args, conv, workers))


def cmd_verify(args, cfg: RunConfig) -> int:
    conv = _convention(args)
    workers = worker_count(args.workers)
    names = list(SUITES) if args.suite == "all" else [args.suite]
    reports, timing = [], {}
    for name in names:
        rep = _run_suite(name, args, conv, workers)
        timing[name] = rep.pop("seconds", None)
        reports.append(rep)
    internal = sum(1 for rep in reports for v in rep["violations"] if v.get("source") == "internal")
    total = sum(len(rep["violations"]) for rep in reports)
    status = "internal-error" if internal else ("violation" if total else "pass")
    payload = {"schema": SCHEMA, "config": cfg.to_json(), "suites": reports,
               "summary": {rep["suite"]: {"checked": rep["checked"],
                                          "violations": len(rep["violations"])} for rep in reports},
               "total_violations": total, "status": status}
    if not args.no_timing:
        payload["timing"] = timing
    if args.format == "json":
        text = _dumps(payload)
    elif args.format == "csv":
        text = _csv(["suite", "checked", "violations"] + ([] if args.no_timing else ["seconds"]),
                    [[rep["suite"], rep["checked"], len(rep["violations"])]
                     + ([] if args.no_timing else [timing[rep["suite"]]]) for rep in reports])
    else:
        lines = []
        for rep in reports:
            tag = "ok" if not rep["violations"] else f"{len(rep['violations'])} violation(s)"
            extra = "" if args.no_timing else f"  ({timing[rep['suite']]} s)"
            lines.append(f"{rep['suite']:<16} checked {rep['checked']:<8} {tag}{extra}")
            for part in rep.get("parts", []):
                if "enumeration" in part:
                    lines.append(f"  r={part['r']} enumeration {part['enumeration']}")
                    lines.append(f"  r={part['r']} product     {part['product']}")
        lines.append(f"status: {status}")
        text = "\n".join(lines) + "\n"
    _emit(text, args.output)
    if internal:
        for rep in reports:
            for v in rep["violations"]:
                if v.get("source") == "internal":
                    print(f"nhw: internal error in {rep['suite']}: {v.get('detail')}", file=sys.stderr)
        return EXIT_INTERNAL
    return EXIT_VIOLATION if total else EXIT_OK


COMMANDS = {"enumerate": cmd_enumerate, "dump": cmd_dump, "verify": cmd_verify}


def _config(args) -> RunConfig:
    conv = _convention(args) if args.command != "enumerate" else None
    return RunConfig(
        command=args.command if args.command != "dump" else f"dump {args.kind}",
        rank=getattr(args, "rank", None), size=getattr(args, "size", None),
        n_max=getattr(args, "nmax", None), l_max=getattr(args, "lmax", None),
        cap=getattr(args, "cap", None), order=getattr(args, "order", None),
        nested=getattr(args, "nested", False), suite=getattr(args, "suite", None),
        kind=getattr(args, "kind", None),
        gen=getattr(args, "gen", None), method=getattr(args, "method", "exact"),
        convention=conv.to_json() if conv else {}, output=args.output, format=args.format)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits with status 2 on usage errors
    try:
        cfg = _config(args)
        return COMMANDS[args.command](args, cfg)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"nhw: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ContractViolation, CapExceeded, DenominatorVanishes, ZeroWeight) as exc:
        print(f"nhw: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception as exc:  # anything unexpected is an internal error, never a violation
        print(f"nhw: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
