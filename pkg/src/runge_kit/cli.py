"""Command-line front end: ``runge-kit <command> ...``.

Every result is one JSON line ``{kind, source, version, payload}`` with all
integers written as decimal strings (tuples ``T`` stay integer arrays).
Exit codes: 0 ok, 2 invalid request, 3 a checked identity or claim failed,
4 I/O or checkpoint problems.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from collections import Counter
from fractions import Fraction
from typing import Any, Iterable, TextIO

from . import __version__

log = logging.getLogger("runge_kit")

EXIT_OK, EXIT_USAGE, EXIT_CONTRACT, EXIT_IO = 0, 2, 3, 4


class ContractFailure(Exception):
    """A verification that should hold did not."""


# -- JSONL --------------------------------------------------------------------


def encode(obj: Any, key: str | None = None) -> Any:
    """JSON-ready copy of ``obj``: ints and Fractions as strings, Polys as coefficient lists."""
    from .exact import IntInterval, Poly

    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, int):
        return obj if key == "T" else str(obj)
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, float):
        return obj
    if isinstance(obj, Poly):
        return [str(c) for c in obj.coeffs]
    if isinstance(obj, IntInterval):
        return encode(obj.as_list())
    if isinstance(obj, dict):
        return {k: encode(v, k) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode(v, key) for v in obj]
    if hasattr(obj, "to_dict"):
        return encode(obj.to_dict(), key)
    return str(obj)


def make_record(kind: str, source: str, payload: Any, timestamps: bool = False) -> dict:
    rec = {"kind": kind, "source": source, "version": __version__, "payload": encode(payload)}
    if timestamps:
        rec["timestamp"] = time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())
    return rec


def write_jsonl(sink: TextIO, record: dict) -> None:
    sink.write(json.dumps(record, sort_keys=True, separators=(",", ":")) + "\n")
    sink.flush()


def read_jsonl(path: str) -> tuple[list[dict], str | None]:
    """Records of ``path`` and a warning if a trailing partial line was dropped.

    A bad line anywhere else is a hard error naming the line number.
    """
    with open(path) as fh:
        text = fh.read()
    lines = text.split("\n")
    complete = text.endswith("\n") or not text
    out, warning = [], None
    for i, line in enumerate(lines, 1):
        if not line.strip():
            continue
        try:
            out.append(json.loads(line))
        except json.JSONDecodeError as exc:
            if i == len(lines) and not complete:
                warning = f"{path}: ignored partial final line {i}"
                log.warning(warning)
                break
            raise ValueError(f"{path}:{i}: unparseable record ({exc.msg})") from exc
    return out, warning


class Output:
    """The single writer for one command's records."""

    def __init__(self, path: str | None, timestamps: bool = False, append: bool = False):
        self.path = path
        self.timestamps = timestamps
        self.count = 0
        self._fh = open(path, "a" if append else "w") if path else sys.stdout

    def emit(self, kind: str, source: str, payload: Any) -> None:
        write_jsonl(self._fh, make_record(kind, source, payload, self.timestamps))
        self.count += 1

    def close(self) -> None:
        if self._fh is not sys.stdout:
            self._fh.close()


# -- argument helpers ---------------------------------------------------------


def int_list(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def _source(op: str, **params) -> str:
    inner = ",".join(f"{k}={v}" for k, v in params.items() if v is not None)
    return f"{op}({inner})"


def _require(report, what: str) -> None:
    if not report.ok:
        raise ContractFailure(f"{what}: {len(report.failures)} failing check(s)")


# -- commands -----------------------------------------------------------------


def cmd_solve(args, out: Output) -> None:
    from .exact import Poly
    from .family import g_poly, validate_tuple
    from .runge import runge_solve

    if args.poly is not None:
        f, origin = Poly(args.poly), None
    else:
        if args.n is None or args.tuple is None:
            raise ValueError("give --n and --tuple, or --poly")
        T = validate_tuple(args.n, args.tuple)
        f, origin = g_poly(args.n, T), (args.n, T)
    rep = runge_solve(args.m, f, origin, reduce=args.reduce, k1=args.k1, k2=args.k2)
    src = _source("runge.runge_solve", m=args.m, n=args.n, T=args.tuple and list(args.tuple), poly=args.poly, reduce=args.reduce)
    out.emit("report", src, rep.to_dict(timing=args.timing))
    for s in rep.solutions:
        out.emit("solution", src, s.to_dict())


def cmd_batch(args, out: Output) -> None:
    from .runge import batch_solve

    for rep in batch_solve(args.m, args.n, jobs=args.jobs, reduce=args.reduce):
        n, T = rep.instance.origin
        src = _source("runge.batch_solve", m=args.m, n=n, T=list(T))
        out.emit("report", src, rep.to_dict(timing=args.timing))
        for s in rep.solutions:
            out.emit("solution", src, s.to_dict())


def cmd_family(args, out: Output) -> None:
    from . import family as F

    if args.action == "conjecture1":
        rep = F.conjecture1_report(args.max_n)
        for h in rep.hits:
            out.emit("family", _source("family.multiple_root_scan", n=h.n, T=list(h.T)), h.to_dict())
        out.emit("verification", _source("family.conjecture1_report", n_max=args.max_n), {
            "status": rep.status,
            "hits": len(rep.hits),
            "unexpected": [[h.n, list(h.T)] for h in rep.unexpected],
            "missing": [[n, list(T)] for n, T in rep.missing],
        })
        if not rep.verified:
            raise ContractFailure(rep.status)
    elif args.action == "lemma3":
        rep = F.lemma3_verify(args.n)
        out.emit("verification", _source("family.lemma3_verify", n=args.n), rep.to_dict())
        _require(rep, "lemma3")
    elif args.action == "genus":
        T = F.validate_tuple(args.n, args.tuple)
        g, degenerate = F.hyperelliptic_genus(F.g_poly(args.n, T))
        out.emit("report", _source("family.hyperelliptic_genus", n=args.n, T=list(T)), {"n": args.n, "T": list(T), "genus": g, "degenerate": degenerate})
    else:  # build
        T = F.validate_tuple(args.n, args.tuple)
        g = F.g_poly(args.n, T)
        payload = {"n": args.n, "T": list(T), "g": g}
        if T[0] >= 1:
            p, h, Tp = F.cofactor_h(args.n, T)
            payload.update(h=h, T_prime=list(Tp))
        out.emit("family", _source("family.g_poly", n=args.n, T=list(T)), payload)


def cmd_pell(args, out: Output) -> None:
    from . import pell as P

    if args.action == "stream":
        st = P.PellStream(args.A, args.B, tuple(args.particular), tuple(args.fundamental))
        for i, (X, Z) in enumerate(st.take(args.count, include_seed=True)):
            out.emit("family", _source("pell.pell_next", A=args.A, B=args.B, index=i), {"index": i, "X": X, "Z": Z})
    elif args.action == "cubic-sum":
        for n in range(args.n_max + 1):
            fam = P.cubic_sum_solution(n)
            bad = fam.check()
            out.emit("family", _source("pell.cubic_sum_solution", n=n), {"n": n, "x": fam.x, "y": fam.y, "z": fam.z, "failed": bad})
            if bad:
                raise ContractFailure(f"cubic-sum invariants fail at n={n}: {bad}")
    elif args.action == "congruences":
        rep = P.verify_congruences(args.n_max)
        out.emit("verification", _source("pell.verify_congruences", n_max=args.n_max), rep.to_dict())
        _require(rep, "congruences")
    elif args.action == "fibonacci":
        for n in range(1, args.count + 1):
            x, z = P.fibonacci_family(n)
            out.emit("family", _source("pell.fibonacci_family", n=n), {"n": n, "x": x, "z": z})
    elif args.action == "odd-m":
        x, y, z = P.odd_m_family(args.m, args.t)
        out.emit("family", _source("pell.odd_m_family", m=args.m, t=args.t), {"m": args.m, "t": args.t, "x": x, "y": y, "z": z})
    elif args.action == "neighbors":
        for x, z in P.p3_neighbor_solutions(args.count):
            out.emit("family", _source("pell.p3_neighbor_solutions", count=args.count), {"x": x, "z": z})
    else:  # conic
        for x, z in P.p3_conic_family(args.a, args.b, args.count):
            out.emit("family", _source("pell.p3_conic_family", a=args.a, b=args.b), {"a": args.a, "b": args.b, "x": x, "z": z})


def _search_task(args):
    from .search import SearchTask

    if args.action in ("additive", "count"):
        a1, a2 = args.arities
        params = {"a1": a1, "a2": a2, "m": args.m, "bound": args.bound}
        if args.action == "additive":
            if args.exclude_trivial:
                params["exclude_trivial"] = True
            if args.strict:
                params["strict"] = True
        return SearchTask("additive", params)
    if args.action == "negative-x":
        return SearchTask("negative-x", {"x_min": args.x_min, "n_max": args.n_max, "m_max": args.m_max})
    if args.action == "positive-x":
        return SearchTask("positive-x", {"x_max": args.x_max, "n_max": args.n_max, "m_max": args.m_max})
    return SearchTask("bounded-equation", {"m": args.m, "n": args.n, "x_lo": args.x_lo, "x_hi": args.x_hi})


def cmd_search(args, out: Output) -> None:
    from .search import run_with_checkpoint

    if args.action in ("additive", "count") and len(args.arities) != 2:
        raise ValueError("--arities takes exactly two values")
    task = _search_task(args)
    rep = run_with_checkpoint(task, checkpoint=args.checkpoint, resume=args.resume, jobs=args.jobs)
    src = f"search.run_with_checkpoint({task.task_id})"
    if args.action == "count":
        out.emit("report", src, {"count": len(rep.results), "bound": args.bound})
        return
    for row in rep.results:
        if task.kind == "additive":
            row = {"x": row[0], "y": row[1], "z": row[2]}
        out.emit("solution", src, row)
    out.emit("report", src, {"results": len(rep.results), "units": rep.units_total})


def cmd_curves(args, out: Output) -> None:
    from . import curves as C

    if args.action == "disc-search":
        pts = C.rational_point_search(args.i, args.height, jobs=args.jobs)
        for p in pts:
            out.emit("point-check", _source("curves.rational_point_search", i=args.i, H=args.height), {"i": args.i, "a": p.a, "b": p.b})
    elif args.action == "g1":
        rep = C.g1_check()
        out.emit("verification", "curves.g1_check()", rep.to_dict())
        _require(rep, "g1")
    elif args.action == "identities":
        rep = C.identity_suite(args.k_max)
        out.emit("verification", _source("curves.identity_suite", k_max=args.k_max), rep.to_dict())
        _require(rep, "identities")
    else:  # verify-tables
        fixtures = C.load_fixtures()
        rep = C.point_table_verify(fixtures)
        failed = {json.dumps(f, sort_keys=True) for f in rep.failures}
        for fx in fixtures:
            ok = json.dumps(fx, sort_keys=True) not in failed
            out.emit("point-check", "curves.point_table_verify()", dict(fx, ok=ok))
        out.emit("verification", "curves.point_table_verify()", rep.to_dict())
        _require(rep, "point tables")


def cmd_report(args, out: Output) -> None:
    records, warning = read_jsonl(args.input)
    kinds = Counter(r.get("kind", "?") for r in records)
    w = max([len(k) for k in kinds] + [5])
    print(f"{'kind':<{w}}  count")
    for k in sorted(kinds):
        print(f"{k:<{w}}  {kinds[k]}")
    print(f"{'total':<{w}}  {sum(kinds.values())}")
    if warning:
        print(f"warning: {warning}")


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="JSONL output file (default: standard output)")
    common.add_argument("--append", action="store_true", help="append to --out instead of replacing it")
    common.add_argument("--jobs", type=int, default=None, help="worker processes (default: $RUNGE_KIT_JOBS or CPU count)")
    common.add_argument("--timestamps", action="store_true", help="add a timestamp to every record")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="runge-kit", description="Exact solver and search toolkit for y^m = g_T(x) and related equations.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", parents=[common], help="solve one equation y^m = f(x)")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--n", type=int)
    s.add_argument("--tuple", type=int_list)
    s.add_argument("--poly", type=int_list, help="coefficients of f, constant first")
    s.add_argument("--reduce", dest="reduce", action="store_true", default=True)
    s.add_argument("--no-reduce", dest="reduce", action="store_false")
    s.add_argument("--k1", type=positive_int)
    s.add_argument("--k2", type=positive_int)
    s.add_argument("--timing", action="store_true", help="include wall time (breaks byte-identity)")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("batch", parents=[common], help="solve y^m = g_T(x) for every T in A_n")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--no-reduce", dest="reduce", action="store_false", default=True)
    s.add_argument("--timing", action="store_true")
    s.set_defaults(func=cmd_batch)

    s = sub.add_parser("family", parents=[common], help="g_T construction and structural scans")
    fs = s.add_subparsers(dest="action", required=True)
    a = fs.add_parser("conjecture1", parents=[common])
    a.add_argument("--max-n", type=int, required=True)
    a = fs.add_parser("lemma3", parents=[common])
    a.add_argument("--n", type=int, required=True)
    for name in ("genus", "build"):
        a = fs.add_parser(name, parents=[common])
        a.add_argument("--n", type=int, required=True)
        a.add_argument("--tuple", type=int_list, required=True)
    s.set_defaults(func=cmd_family)

    s = sub.add_parser("pell", parents=[common], help="Pell streams and polynomial families")
    ps = s.add_subparsers(dest="action", required=True)
    a = ps.add_parser("stream", parents=[common])
    a.add_argument("--A", type=int, required=True)
    a.add_argument("--B", type=int, required=True)
    a.add_argument("--particular", type=int_list, required=True)
    a.add_argument("--fundamental", type=int_list, required=True)
    a.add_argument("--count", type=positive_int, default=5)
    a = ps.add_parser("cubic-sum", parents=[common])
    a.add_argument("--n-max", type=int, default=2)
    a = ps.add_parser("congruences", parents=[common])
    a.add_argument("--n-max", type=positive_int, default=8)
    a = ps.add_parser("fibonacci", parents=[common])
    a.add_argument("--count", type=positive_int, default=10)
    a = ps.add_parser("odd-m", parents=[common])
    a.add_argument("--m", type=int, required=True)
    a.add_argument("--t", type=int, required=True)
    a = ps.add_parser("neighbors", parents=[common])
    a.add_argument("--count", type=positive_int, default=6)
    a = ps.add_parser("conic", parents=[common])
    a.add_argument("--a", type=int, required=True)
    a.add_argument("--b", type=int, required=True)
    a.add_argument("--count", type=positive_int, default=4)
    s.set_defaults(func=cmd_pell)

    s = sub.add_parser("search", parents=[common], help="exhaustive bounded searches")
    ss = s.add_subparsers(dest="action", required=True)
    ck = argparse.ArgumentParser(add_help=False)
    ck.add_argument("--checkpoint")
    ck.add_argument("--resume", action="store_true")
    for name in ("additive", "count"):
        a = ss.add_parser(name, parents=[common, ck])
        a.add_argument("--arities", type=int_list, required=True)
        a.add_argument("--m", type=int, required=True)
        a.add_argument("--bound", type=positive_int, required=True)
        if name == "additive":
            a.add_argument("--exclude-trivial", action="store_true")
            a.add_argument("--strict", action="store_true", help="require x < y")
    a = ss.add_parser("negative-x", parents=[common, ck])
    a.add_argument("--x-min", type=int, required=True)
    a.add_argument("--n-max", type=int, default=8)
    a.add_argument("--m-max", type=int, default=8)
    a = ss.add_parser("positive-x", parents=[common, ck])
    a.add_argument("--x-max", type=positive_int, required=True)
    a.add_argument("--n-max", type=int, default=14)
    a.add_argument("--m-max", type=int)
    a = ss.add_parser("bounded", parents=[common, ck])
    a.add_argument("--m", type=int, required=True)
    a.add_argument("--n", type=int, required=True)
    a.add_argument("--x-lo", type=int, required=True)
    a.add_argument("--x-hi", type=int, required=True)
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("curves", parents=[common], help="discriminant curves, identities and point tables")
    cs = s.add_subparsers(dest="action", required=True)
    a = cs.add_parser("disc-search", parents=[common])
    a.add_argument("--i", type=int, choices=(3, 4), required=True)
    a.add_argument("--height", type=positive_int, default=10)
    cs.add_parser("g1", parents=[common])
    a = cs.add_parser("identities", parents=[common])
    a.add_argument("--k-max", type=positive_int, default=25)
    cs.add_parser("verify-tables", parents=[common])
    s.set_defaults(func=cmd_curves)

    s = sub.add_parser("report", help="summarize a JSONL result file")
    s.add_argument("--in", dest="input", required=True)
    s.set_defaults(func=cmd_report, out=None, append=False, jobs=None, timestamps=False, verbose=False)
    return p


def parse(argv: Iterable[str] | None = None) -> argparse.Namespace:
    from .parallel import resolve_jobs

    args = build_parser().parse_args(None if argv is None else list(argv))
    try:
        args.jobs = resolve_jobs(args.jobs)
    except ValueError as exc:
        build_parser().error(str(exc))
    return args


def execute(args: argparse.Namespace) -> int:
    from .exact import InexactDivision
    from .pell import PellError
    from .runge import RungeInapplicable
    from .search import CheckpointError

    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    out = None
    try:
        out = Output(args.out, args.timestamps, args.append) if args.command != "report" else None
        args.func(args, out)
        return EXIT_OK
    except RungeInapplicable as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    except (ContractFailure, PellError, InexactDivision) as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return EXIT_CONTRACT
    except (OSError, CheckpointError) as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"invalid request: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        if out is not None:
            out.close()


def main(argv: Iterable[str] | None = None) -> int:
    return execute(parse(argv))


if __name__ == "__main__":
    sys.exit(main())
