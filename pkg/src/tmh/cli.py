"""Command line: ``tmh compute | sweep | verify | identities``.

Exit codes: 0 success, 2 bad input, 3 domain error (NotSpin with
``--alpha-only``), 4 I/O error. Big integers are written as decimal strings.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
import time
from typing import Dict, List, Optional, Sequence, Tuple

from . import checks
from .invariants import (
    InvariantReport,
    MalformedSpec,
    NotSpin,
    TwistSpec,
    a_hat_difference,
    alpha,
    report,
    spin_check,
)

EXIT_OK, EXIT_INPUT, EXIT_DOMAIN, EXIT_IO = 0, 2, 3, 4

CSV_FIELDS = [
    "n1", "n2", "twist", "d1", "d2", "dim_real", "spin", "k1", "k2", "sigma1", "sigma2",
    "a_hat", "alpha_n_mod_8", "alpha_group", "alpha_value", "psc", "no_circle_action",
    "simply_connected_assumed", "dim_ge_5",
]


class InputError(Exception):
    pass


# records ---------------------------------------------------------------------


def to_record(rep: InvariantReport) -> Dict:
    """JSON-ready dict in the fixed schema field order."""
    s = rep.spec
    al = None
    if rep.alpha is not None:
        al = {
            "n_mod_8": rep.alpha.n_mod_8,
            "group": rep.alpha.group,
            "value": None if rep.alpha.value is None else str(rep.alpha.value),
        }
    return {
        "n1": s.n1,
        "n2": s.n2,
        "twist": list(s.twist),
        "d1": s.d1,
        "d2": s.d2,
        "dim_real": rep.dim_real,
        "spin": rep.spin.is_spin,
        "k1": rep.spin.k1,
        "k2": rep.spin.k2,
        "sigma1": rep.sigma1,
        "sigma2": rep.sigma2,
        "a_hat": str(rep.a_hat),
        "alpha": al,
        "psc": rep.psc,
        "no_circle_action": rep.no_circle_action,
        "assumptions": dict(rep.assumptions),
    }


def spec_from_record(rec: Dict) -> TwistSpec:
    twist = rec["twist"]
    if isinstance(twist, str):
        twist = parse_twist(twist)
    return TwistSpec(int(rec["n1"]), int(rec["n2"]), tuple(twist), int(rec["d1"]), int(rec["d2"]))


def _cell(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    return str(x)


def flatten_record(rec: Dict) -> Dict[str, str]:
    al = rec["alpha"] or {}
    flat = {
        "n1": rec["n1"], "n2": rec["n2"],
        "twist": ",".join(str(i) for i in rec["twist"]),
        "d1": rec["d1"], "d2": rec["d2"], "dim_real": rec["dim_real"],
        "spin": rec["spin"], "k1": rec["k1"], "k2": rec["k2"],
        "sigma1": rec["sigma1"], "sigma2": rec["sigma2"], "a_hat": rec["a_hat"],
        "alpha_n_mod_8": al.get("n_mod_8"), "alpha_group": al.get("group"),
        "alpha_value": al.get("value"),
        "psc": rec["psc"], "no_circle_action": rec["no_circle_action"],
        "simply_connected_assumed": rec["assumptions"]["simply_connected_assumed"],
        "dim_ge_5": rec["assumptions"]["dim_ge_5"],
    }
    for extra in rec.keys() - {"alpha", "assumptions"} - flat.keys():
        flat[extra] = rec[extra]
    return {k: _cell(v) for k, v in flat.items()}


def dump_json(rec: Dict) -> str:
    return json.dumps(rec, separators=(",", ":"))


# parsing ---------------------------------------------------------------------


def parse_twist(text: str) -> Tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise InputError(f"twist must be comma-separated integers, got {text!r}") from None


def parse_range(text: str) -> range:
    """``"3"`` or ``"a..b"`` (inclusive) as a range."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo_i, hi_i = int(lo), int(hi)
        else:
            lo_i = hi_i = int(text)
    except ValueError:
        raise InputError(f"expected an integer or an inclusive range a..b, got {text!r}") from None
    if lo_i > hi_i:
        raise InputError(f"empty range {text!r}")
    return range(lo_i, hi_i + 1)


def _spec_from_args(args) -> TwistSpec:
    twist = parse_twist(args.twist)
    if len(twist) != args.n2:
        raise InputError(f"--twist must have n2 = {args.n2} entries, got {len(twist)}")
    try:
        return TwistSpec(args.n1, args.n2, twist, args.d1, args.d2)
    except MalformedSpec as e:
        raise InputError(str(e)) from None


# commands --------------------------------------------------------------------


def format_table(rep: InvariantReport, verbose: bool = False) -> str:
    s = rep.spec
    rows = [
        ("spec", f"H^{list(s.twist)}_{{{s.n1},{s.n2}}}({s.d1},{s.d2})"),
        ("real dimension", rep.dim_real),
        ("spin", "yes" if rep.spin.is_spin else "no"),
    ]
    if rep.spin.is_spin:
        rows.append(("(k1, k2)", (rep.spin.k1, rep.spin.k2)))
    rows += [
        ("sigma1, sigma2", (rep.sigma1, rep.sigma2)),
        ("A-hat", rep.a_hat),
        ("alpha", "inapplicable" if rep.alpha is None
         else f"{rep.alpha.value if rep.alpha.value is not None else 0} in KO_{rep.alpha.n_mod_8} ({rep.alpha.group})"),
        ("psc", rep.psc),
        ("no circle action", "yes" if rep.no_circle_action else "no"),
        ("simply connected", "assumed"),
    ]
    if verbose:
        rows.append(("F(d) - F(-d)", a_hat_difference(s)))
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)


def cmd_compute(args) -> int:
    spec = _spec_from_args(args)
    if args.alpha_only:
        try:
            al = alpha(spec)
        except NotSpin as e:
            print(f"error: {e}", file=sys.stderr)
            return EXIT_DOMAIN
        value = None if al.value is None else str(al.value)
        rec = {"n_mod_8": al.n_mod_8, "group": al.group, "value": value}
        print(dump_json(rec) if args.format == "json" else f"{al.group}: {value}")
        return EXIT_OK
    rep = report(spec)
    if args.format == "json":
        print(dump_json(to_record(rep)))
    else:
        print(format_table(rep, args.verbose))
    return EXIT_OK


def sweep_specs(
    n1s: Sequence[int],
    n2s: Sequence[int],
    d1s: Sequence[int],
    d2s: Sequence[int],
    twists: Optional[List[Tuple[int, ...]]] = None,
    max_nonzero: int = 1,
    twist_bound: int = 0,
    spin_only: bool = False,
) -> List[TwistSpec]:
    """Lexicographic list of specs in the sweep box."""
    out = []
    for n1 in n1s:
        for n2 in n2s:
            if twists is not None:
                tws = sorted(t for t in set(twists) if len(t) == n2)
            else:
                tws = checks.twist_vectors(n2, max_nonzero, twist_bound)
            for tw in tws:
                for d1 in d1s:
                    for d2 in d2s:
                        spec = TwistSpec(n1, n2, tw, d1, d2)
                        if spin_only and not spin_check(spec).is_spin:
                            continue
                        out.append(spec)
    return out


def _record_for(spec: TwistSpec) -> Dict:
    return to_record(report(spec))


def _timed_record_for(spec: TwistSpec) -> Dict:
    t0 = time.perf_counter()
    rec = to_record(report(spec))
    rec["elapsed_ms"] = f"{(time.perf_counter() - t0) * 1000:.3f}"
    return rec


def compute_records(specs: Sequence[TwistSpec], jobs: int = 1, timing: bool = False) -> List[Dict]:
    """Records in input order, whatever the number of worker processes."""
    fn = _timed_record_for if timing else _record_for
    if jobs <= 1 or len(specs) < 2:
        return [fn(s) for s in specs]
    from concurrent.futures import ProcessPoolExecutor

    chunk = max(1, len(specs) // (jobs * 8))
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, specs, chunksize=chunk))


def render_records(records: Sequence[Dict], fmt: str, timing: bool = False) -> str:
    if fmt == "jsonl":
        return "".join(dump_json(r) + "\n" for r in records)
    buf = io.StringIO()
    fields = CSV_FIELDS + (["elapsed_ms"] if timing else [])
    w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    w.writeheader()
    for r in records:
        w.writerow(flatten_record(r))
    return buf.getvalue()


def write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".tmh-", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def default_jobs() -> int:
    env = os.environ.get("TMH_JOBS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise InputError(f"TMH_JOBS must be an integer, got {env!r}") from None
    return 1


def cmd_sweep(args) -> int:
    twists = None
    if args.twist:
        twists = [parse_twist(t) for t in args.twist]
    specs = sweep_specs(
        parse_range(args.n1), parse_range(args.n2), parse_range(args.d1), parse_range(args.d2),
        twists=twists, max_nonzero=args.max_nonzero, twist_bound=args.twist_bound,
        spin_only=args.spin_only,
    )
    fmt = args.format or ("jsonl" if args.out.endswith((".jsonl", ".json")) else "csv")
    jobs = args.jobs if args.jobs is not None else default_jobs()
    records = compute_records(specs, jobs=jobs, timing=args.timing)
    try:
        write_atomic(args.out, render_records(records, fmt, timing=args.timing))
    except OSError as e:
        print(f"error: cannot write {args.out}: {e}", file=sys.stderr)
        return EXIT_IO
    print(f"wrote {len(records)} records to {args.out}")
    return EXIT_OK


def cmd_verify(args) -> int:
    specs = checks.oracle_grid(args.max_n1, args.max_n2, args.max_twist, args.max_k,
                               nonspin=args.nonspin, seed=args.seed)
    jobs = args.jobs if args.jobs is not None else default_jobs()
    t0 = time.perf_counter()
    res = checks.check_oracle_parallel(specs, jobs)
    print(f"checked: {res.checked}")
    print(f"failures: {res.failures}")
    if res.first_counterexample is not None:
        spec, a, b = res.first_counterexample
        print(f"first counterexample: {spec} closed={a} pairing={b}")
    print(f"elapsed: {time.perf_counter() - t0:.2f}s")
    return EXIT_OK if res.failures == 0 else 1


def cmd_identities(args) -> int:
    results = checks.counting_identities(args.depth) + checks.parity_identities(
        args.mod2_bound, args.lucas_bound
    )
    for name, ok in results:
        print(f"{'PASS' if ok else 'FAIL'}  {name}")
    failed = sum(1 for _, ok in results if not ok)
    print(f"{len(results) - failed}/{len(results)} identities hold")
    return EXIT_OK if failed == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tmh", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="invariants of one hypersurface")
    c.add_argument("--n1", type=int, required=True)
    c.add_argument("--n2", type=int, required=True)
    c.add_argument("--twist", required=True, help="comma-separated, length n2")
    c.add_argument("--d1", type=int, required=True)
    c.add_argument("--d2", type=int, required=True)
    c.add_argument("--format", choices=["json", "table"], default="json")
    c.add_argument("--alpha-only", action="store_true")
    c.add_argument("--verbose", action="store_true", help="table: also print F(d) - F(-d)")
    c.set_defaults(func=cmd_compute)

    s = sub.add_parser("sweep", help="invariants over a grid of specs")
    s.add_argument("--n1", default="1..3", help="integer or inclusive range a..b")
    s.add_argument("--n2", default="1..3")
    s.add_argument("--d1", default="-3..3")
    s.add_argument("--d2", default="-3..3")
    s.add_argument("--twist", action="append", help="explicit twist vector; repeatable")
    s.add_argument("--max-nonzero", type=int, default=1)
    s.add_argument("--twist-bound", type=int, default=0)
    s.add_argument("--spin-only", action="store_true")
    s.add_argument("--out", required=True)
    s.add_argument("--format", choices=["csv", "jsonl"])
    s.add_argument("--jobs", type=int, help="worker processes (default $TMH_JOBS or 1)")
    s.add_argument("--timing", action="store_true", help="add elapsed_ms; output no longer reproducible")
    s.set_defaults(func=cmd_sweep)

    v = sub.add_parser("verify", help="closed form vs. series pairing over a grid")
    v.add_argument("--max-n1", type=int, default=3)
    v.add_argument("--max-n2", type=int, default=4)
    v.add_argument("--max-twist", type=int, default=2)
    v.add_argument("--max-k", type=int, default=3)
    v.add_argument("--nonspin", type=int, default=200)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--jobs", type=int)
    v.set_defaults(func=cmd_verify)

    i = sub.add_parser("identities", help="identities for A(n,l), Stirling, Bernoulli and mod-2 binomials")
    i.add_argument("--depth", type=int, default=14)
    i.add_argument("--mod2-bound", type=int, default=200)
    i.add_argument("--lucas-bound", type=int, default=512)
    i.set_defaults(func=cmd_identities)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
