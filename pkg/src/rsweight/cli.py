"""Command-line front end.

Three subcommands:

* ``weights``: weight sequences over an n-range, any combination of context
  (cyclic ``rs`` / finite-field ``trace``) and method (``oracle`` | ``sft``
  | ``formula`` | ``recurrence``), written as CSV plus a JSON mirror.
* ``verify``: the claim-by-claim verification suites with a JSON report,
  exit status 0 only if every claim passes.
* ``report``: renders artifacts from a previous run (zeta denominators,
  factored spectra, scaled-root tables, curve reports) as aligned text.

A job may equivalently be described by a JSON file passed as ``--job``;
flag parsing and job files funnel into the same plain dict, so the two
invocation styles produce byte-identical outputs. All outputs are
deterministic: keys sorted, no timestamps, no randomness anywhere.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 cap
exceeded. The irreducible-modulus cache lives under --cache-dir (or
$RSWEIGHT_CACHE), one ``degree:hexbits`` line per field.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import families
from .errors import CapExceeded, InsufficientData, RsWeightError
from .families import (TupleCollection, WeightSequence, rs_weight_oracle,
                       trace_weight_oracle)
from .gf2 import format_modulus_cache, parse_modulus_cache
from .intpoly import IntPoly, berlekamp_massey, extend_by_recurrence
from .quadratic import monomial_root_multiset, monomial_weight_formula, \
    recurrence_matrix_char_values
from .sft import sft_weights, transfer_system_for
from .verify import SUITES, run_suites, weil_inventory
from .weil import curve_degree, recover_weil_poly

CACHE_FILE = "irreducible_gf2.txt"


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def parse_n_range(text: str) -> list[int]:
    """'1..16' or a single 'n'."""
    if ".." in text:
        lo, hi = text.split("..", 1)
        lo, hi = int(lo), int(hi)
        if lo < 1 or hi < lo:
            raise ValueError(f"bad n range {text!r}")
        return list(range(lo, hi + 1))
    n = int(text)
    if n < 1:
        raise ValueError("n must be positive")
    return [n]


# ---------------------------------------------------------------------------
# cache handling
# ---------------------------------------------------------------------------

def cache_dir_from(job: dict) -> Path | None:
    raw = job.get("cache_dir") or os.environ.get("RSWEIGHT_CACHE")
    return Path(raw) if raw else None


def load_cache(cache_dir: Path | None) -> None:
    if cache_dir is None:
        return
    path = cache_dir / CACHE_FILE
    if path.is_file():
        families.seed_field_cache(parse_modulus_cache(path.read_text()))


def store_cache(cache_dir: Path | None) -> None:
    if cache_dir is None:
        return
    cache_dir.mkdir(parents=True, exist_ok=True)
    (cache_dir / CACHE_FILE).write_text(format_modulus_cache(families.snapshot_moduli()))


# ---------------------------------------------------------------------------
# weights command
# ---------------------------------------------------------------------------

def _weights_rs(coll: TupleCollection, ns, method: str, cap: int | None) -> WeightSequence:
    seq = WeightSequence(coll, "rs")
    if method == "oracle":
        for n in ns:
            seq.set(n, rs_weight_oracle(coll, n, cap=cap), "oracle")
    elif method == "sft":
        system = transfer_system_for(coll)
        ws = sft_weights(system, max(ns))
        for n in ns:
            seq.set(n, ws[n - 1], "sft")
    elif method == "formula":
        offs = coll.quadratic_offsets
        if coll.is_quadratic and len(offs) == 1:
            for n in ns:
                seq.set(n, monomial_weight_formula(offs[0], n), "formula")
        else:
            values = transfer_system_for(coll).char_values()
            sums = values.power_sums(max(ns))
            for n in ns:
                num = (1 << (n + 1)) - sums[n - 1]
                seq.set(n, num // 2, "formula")
    elif method == "recurrence":
        poly, seed = _certified_recurrence_rs(coll, cap)
        top = max(ns)
        values = extend_by_recurrence(poly, seed, max(0, top - len(seed)))
        for n in ns:
            seq.set(n, values[n - 1], "recurrence")
    else:
        raise ValueError(f"unknown method {method!r}")
    return seq


def _certified_recurrence_rs(coll: TupleCollection, cap: int | None):
    """Minimal recurrence synthesized from short oracle windows and checked
    against independent periodic-count weights before use."""
    from .intpoly import recurrence_annihilates

    system = transfer_system_for(coll)
    weights: list[int] = []
    for window in (12, 16, 20, 24, 26, 28):
        if cap is not None and window > cap:
            break
        while len(weights) < window:
            weights.append(rs_weight_oracle(coll, len(weights) + 1, cap=cap))
        poly = berlekamp_massey(weights)
        if not isinstance(poly, IntPoly) or 2 * poly.degree > window:
            continue
        horizon = window + max(2 * poly.degree, 24)
        independent = sft_weights(system, horizon)
        if recurrence_annihilates(poly, independent):
            return poly, weights
    raise InsufficientData("no certified recurrence within the oracle cap")


def _trace_formula_weights(coll: TupleCollection, top: int, cap: int | None) -> list[int]:
    """Weights 1..top from the recovered curve polynomial's power sums."""
    e = curve_degree(coll)
    base = {n: trace_weight_oracle(coll, n, cap=cap) for n in range(1, e)}
    report = recover_weil_poly(coll, base)
    deg = report.recovered.degree
    es = [(-1) ** k * report.recovered.coeffs[deg - k] for k in range(deg + 1)]
    sums = [2 * base[n] - (1 << n) for n in range(1, e)]
    for n in range(e, top + 1):
        acc = 0
        for i in range(1, deg + 1):
            acc += (-1) ** (i - 1) * es[i] * sums[n - 1 - i]
        sums.append(acc)
    out = []
    for n in range(1, top + 1):
        num = (1 << n) + sums[n - 1]
        if num % 2:
            raise AssertionError("parity failure in trace-side prediction")
        out.append(num // 2)
    return out


def _weights_trace(coll: TupleCollection, ns, method: str, cap: int | None) -> WeightSequence:
    seq = WeightSequence(coll, "trace")
    if method == "oracle":
        for n in ns:
            seq.set(n, trace_weight_oracle(coll, n, cap=cap), "oracle")
        return seq
    if method == "sft":
        raise ValueError("the transfer-matrix method applies to the rs context only")
    top = max(ns)
    if method == "formula":
        values = _trace_formula_weights(coll, top, cap)
        for n in ns:
            seq.set(n, values[n - 1], "formula")
        return seq
    # recurrence: minimal recurrence from an oracle window, then stepping,
    # cross-checked against the curve-polynomial route before use
    from .intpoly import recurrence_annihilates

    e = curve_degree(coll)
    window = min(2 * e + 4, cap if cap is not None else 24)
    seed = [trace_weight_oracle(coll, n, cap=cap) for n in range(1, window + 1)]
    poly = berlekamp_massey(seed)
    if not isinstance(poly, IntPoly) or 2 * poly.degree > window:
        raise InsufficientData("trace oracle window too short for a certified recurrence")
    check = _trace_formula_weights(coll, window + 24, cap)
    if not recurrence_annihilates(poly, check):
        raise InsufficientData("trace recurrence fails the curve-route cross-check")
    values = extend_by_recurrence(poly, seed, max(0, top - len(seed)))
    for n in ns:
        seq.set(n, values[n - 1], "recurrence")
    return seq


def cmd_weights(job: dict) -> int:
    try:
        coll = TupleCollection.parse(job["tuples"])
    except (ValueError, KeyError) as exc:
        print(f"invalid tuple collection: {exc}", file=sys.stderr)
        return 2
    try:
        ns = parse_n_range(job.get("n", "1..16"))
    except ValueError as exc:
        print(f"invalid n range: {exc}", file=sys.stderr)
        return 2
    context = job.get("context", "rs")
    method = job.get("method", "oracle")
    cap = job.get("cap_n")
    outdir = Path(job.get("out", "."))
    contexts = ["rs", "trace"] if context == "both" else [context]
    if context not in ("rs", "trace", "both"):
        print(f"invalid context {context!r}", file=sys.stderr)
        return 2
    try:
        sequences = []
        for ctx in contexts:
            fn = _weights_rs if ctx == "rs" else _weights_trace
            sequences.append(fn(coll, ns, method, cap))
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return 3
    except (ValueError, InsufficientData) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    outdir.mkdir(parents=True, exist_ok=True)
    for seq in sequences:
        stem = f"weights_{coll.label()}_{seq.context}"
        (outdir / f"{stem}.csv").write_text(seq.to_csv())
        (outdir / f"{stem}.json").write_text(seq.to_json())
    if job.get("json"):
        merged = {seq.context: json.loads(seq.to_json()) for seq in sequences}
        sys.stdout.write(dumps(merged))
    else:
        for seq in sequences:
            sys.stdout.write(seq.to_csv())
    return 0


# ---------------------------------------------------------------------------
# verify command
# ---------------------------------------------------------------------------

def cmd_verify(job: dict) -> int:
    suite = job.get("suite", "all")
    names = list(SUITES) if suite == "all" else [suite]
    overrides = {}
    if "t_max" in job and job["t_max"] is not None:
        overrides["quadratic"] = {"t_max": job["t_max"],
                                  "formula_t_max": min(job["t_max"], 5)}
    if "e_max" in job and job["e_max"] is not None:
        overrides["weil"] = {"e_max": job["e_max"]}
    try:
        report = run_suites(names, **overrides)
    except KeyError:
        print(f"unknown suite {suite!r}", file=sys.stderr)
        return 2
    outdir = Path(job.get("out", "."))
    outdir.mkdir(parents=True, exist_ok=True)
    (outdir / f"verify_{suite}.json").write_text(dumps(report))
    _write_structures(outdir, job)
    total = sum(len(v) for v in report.values() if isinstance(v, list))
    failed = [c for v in report.values() if isinstance(v, list)
              for c in v if not c["pass"]]
    if job.get("json"):
        sys.stdout.write(dumps(report))
    print(f"{total - len(failed)}/{total} claims pass")
    for c in failed:
        print(f"FAIL {c['claim']} {c['params']}")
    return 0 if report["all_pass"] else 1


def _write_structures(outdir: Path, job: dict) -> None:
    """Companion artifact for the report command: rendered structures."""
    t_max = job.get("t_max") or 4
    e_max = job.get("e_max") or 9
    structures: dict = {"zeta": [], "matrix_spectra": [], "root_tables": [],
                        "curves": []}
    for text in ("0,1", "0,2", "0,3", "0,1;0,2"):
        coll = TupleCollection.parse(text)
        system = transfer_system_for(coll)
        structures["zeta"].append({
            "collection": text,
            "vertices": system.vertex_count,
            "denominator": system.zeta_denominator().to_json(),
            "char_values": system.char_values().to_json(),
        })
    for t in range(1, t_max + 1):
        structures["matrix_spectra"].append({
            "t": t,
            "factored": recurrence_matrix_char_values(t).to_json(),
        })
        ms = monomial_root_multiset(t)
        structures["root_tables"].append({
            "t": t,
            "groups": ms.to_json(),
            "size": ms.size,
        })
    for coll in weil_inventory(e_max):
        weights = {n: trace_weight_oracle(coll, n)
                   for n in range(1, 2 * curve_degree(coll) + 1)}
        structures["curves"].append(
            {"collection": coll.format(),
             **recover_weil_poly(coll, weights).to_json()})
    (outdir / "structures.json").write_text(dumps(structures))


# ---------------------------------------------------------------------------
# report command
# ---------------------------------------------------------------------------

def _table(rows: list[list[str]], header: list[str]) -> str:
    widths = [max(len(str(r[i])) for r in [header] + rows)
              for i in range(len(header))]
    def fmt(row):
        return "  ".join(str(v).ljust(w) for v, w in zip(row, widths)).rstrip()
    lines = [fmt(header), fmt(["-" * w for w in widths])]
    lines.extend(fmt(r) for r in rows)
    return "\n".join(lines)


def cmd_report(job: dict) -> int:
    outdir = Path(job.get("out", "."))
    path = outdir / "structures.json"
    if not path.is_file():
        print(f"no artifacts at {path}; run `verify` with --out first",
              file=sys.stderr)
        return 2
    data = json.loads(path.read_text())
    out = []
    rows = [[z["collection"], z["vertices"],
             "1/(" + IntPoly.from_json(z["denominator"]).format("s", ascending=True) + ")"]
            for z in data["zeta"]]
    out.append("zeta functions")
    out.append(_table(rows, ["collection", "vertices", "zeta"]))
    rows = []
    for s in data["matrix_spectra"]:
        facts = "".join(
            f"({IntPoly.from_json(f['poly']).format()})" +
            (f"^{f['mult']}" if f["mult"] > 1 else "")
            for f in s["factored"])
        rows.append([s["t"], facts])
    out.append("")
    out.append("recurrence-matrix spectra")
    out.append(_table(rows, ["t", "characteristic polynomial"]))
    rows = []
    for s in data["root_tables"]:
        groups = ", ".join(f"sqrt2*mu_{g['order']} x{g['multiplicity']}"
                           for g in s["groups"])
        rows.append([s["t"], s["size"], groups])
    out.append("")
    out.append("scaled root-of-unity tables")
    out.append(_table(rows, ["t", "count", "groups"]))
    rows = [[c["collection"], c["e"], c["g"],
             IntPoly.from_json(c["coefficients"]).format(),
             c["delta_count"], c["moduli_ok"], c["case"]]
            for c in data["curves"]]
    out.append("")
    out.append("curve reports")
    out.append(_table(rows, ["collection", "e", "g", "recovered",
                             "delta", "moduli ok", "case"]))
    print("\n".join(out))
    return 0


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rsweight",
        description="Exact weights of cyclic and finite-field function families")
    parser.add_argument("--job", help="JSON job file equivalent to the flags")
    sub = parser.add_subparsers(dest="command")

    w = sub.add_parser("weights", help="compute weight sequences")
    w.add_argument("--tuples", help="e.g. '0,1;0,2,3' (leading 0 mandatory)")
    w.add_argument("--n", default="1..16", help="range '1..16' or single value")
    w.add_argument("--context", default="rs", choices=["rs", "trace", "both"])
    w.add_argument("--method", default="oracle",
                   choices=["oracle", "sft", "formula", "recurrence"])
    w.add_argument("--cap-n", type=int, default=None, dest="cap_n")
    w.add_argument("--out", default=".")
    w.add_argument("--cache-dir", dest="cache_dir")
    w.add_argument("--json", action="store_true")

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("--suite", default="all",
                   choices=["sft", "quadratic", "weil", "perf", "all"])
    v.add_argument("--t-max", type=int, default=None, dest="t_max")
    v.add_argument("--e-max", type=int, default=None, dest="e_max")
    v.add_argument("--out", default=".")
    v.add_argument("--cache-dir", dest="cache_dir")
    v.add_argument("--json", action="store_true")

    r = sub.add_parser("report", help="render artifacts from a prior run")
    r.add_argument("--out", default=".")
    r.add_argument("--json", action="store_true")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.job:
        # a job file fully describes the job; flags are not merged in, which
        # keeps the two invocation styles byte-identical for equal parameters
        try:
            job = json.loads(Path(args.job).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            print(f"cannot read job file: {exc}", file=sys.stderr)
            return 2
    else:
        job = {k: v for k, v in vars(args).items()
               if v is not None and k != "job"}
    command = job.get("command")
    if command not in ("weights", "verify", "report"):
        parser.print_usage(sys.stderr)
        return 2
    cache_dir = cache_dir_from(job)
    try:
        load_cache(cache_dir)
    except ValueError as exc:
        print(f"bad cache: {exc}", file=sys.stderr)
        return 2
    handler = {"weights": cmd_weights, "verify": cmd_verify,
               "report": cmd_report}[command]
    try:
        code = handler(job)
    except RsWeightError as exc:
        if isinstance(exc, CapExceeded):
            print(f"cap exceeded: {exc}", file=sys.stderr)
            return 3
        print(f"error: {exc}", file=sys.stderr)
        return 1
    store_cache(cache_dir)
    return code


if __name__ == "__main__":
    sys.exit(main())
