"""Command-line front end: exact computations, JSON/CSV output, caching.

Subcommands mirror the library: `complex dump`, `trace`, `cycles enumerate`,
`det`, `zeta series`, `count`, `verify all`.  Output is deterministic
(canonical polynomial strings, sorted JSON keys) so results can be diffed and
cached byte-for-byte.  Exit codes: 0 success, 1 verification mismatch,
2 usage error.
"""

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from . import __version__
from . import cycles as cycles_mod
from . import determinant, transfer, zeta
from .polyseries import (
    QPoly,
    qpoly_eval,
    rational_expand,
    series_mul,
    series_power_substitute,
    specialize_q,
)
from .quotient import Region, edge_source, edge_target, edges_in_region


def _fmt(value) -> str:
    """Canonical string for a QPoly or exact rational."""
    return str(value)


def _parse_q(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc
    if value < 2:
        raise argparse.ArgumentTypeError(
            f"q must be >= 2 (only prime powers are geometrically meaningful), got {text}"
        )
    return value


def _maybe_int(q: Fraction):
    return int(q) if q.denominator == 1 else q


# --- command payloads -------------------------------------------------------


def _cmd_complex_dump(args):
    records = []
    for e in edges_in_region(args.type, Region(args.max_level, args.max_offset)):
        src, tgt = edge_source(e), edge_target(e)
        records.append({
            "type": e.edge_type,
            "level": e.level,
            "offset": e.offset,
            "leg": e.leg,
            "source": [src.m, src.n],
            "target": [tgt.m, tgt.n],
        })
    return records, 0


def _cmd_trace(args):
    q = _maybe_int(args.q) if args.q is not None else None
    traces, region = transfer.trace_powers_with_region(args.type, args.m, q)
    payload = {
        "m": args.m,
        "trace": _fmt(traces[args.m - 1]),
        "region": [region.max_level, region.max_offset],
    }
    return payload, 0


def _cmd_cycles_enumerate(args):
    q = _maybe_int(args.q) if args.q is not None else None
    records = []
    for cyc in cycles_mod.enumerate_cycles(args.type, args.n):
        weight = cyc.weight if q is None else qpoly_eval(cyc.weight, q)
        records.append({
            "edges": [[e.level, e.offset, e.leg] for e in cyc.edges],
            "weight": _fmt(weight),
            "primitive_length": cyc.primitive_length,
        })
    return records, 0


def _det_series(args):
    if args.method == "alpha":
        series = determinant.det_via_alpha(args.order)
        if args.q is not None:
            series = specialize_q(series, _maybe_int(args.q))
        return series
    if args.method == "traces":
        series = determinant.det_via_traces(1, args.order)
        if args.q is not None:
            series = specialize_q(series, _maybe_int(args.q))
        return series
    spec = determinant.build_blocks(args.k)
    return determinant.det_direct(spec, args.blocks, args.order, _maybe_int(args.q))


def _cmd_det(args):
    series = _det_series(args)
    return {"method": args.method, "series": [_fmt(c) for c in series.coeffs]}, 0


def _cmd_zeta_series(args):
    fn = {"1": zeta.zeta_type1, "2": zeta.zeta_type2, "full": zeta.zeta_full}[args.which]
    series = fn().series(args.order)
    if args.q is not None:
        series = specialize_q(series, _maybe_int(args.q))
    payload = {
        "which": args.which,
        "order": args.order,
        "series": [_fmt(c) for c in series.coeffs],
    }
    return payload, 0


def _cmd_count(args):
    q = _maybe_int(args.q) if args.q is not None else None
    from_zeta = zeta.counts_from_zeta(args.max_m).entries
    rows = []
    all_agree = True
    for m in range(1, args.max_m + 1):
        closed = zeta.counts_closed_form(m)
        z = from_zeta[m]
        if q is not None:
            closed, z = qpoly_eval(closed, q), qpoly_eval(z, q)
        values = [closed, z]
        row = {"m": m, "closed_form": _fmt(closed), "from_zeta": _fmt(z)}
        if args.verify:
            tr = transfer.trace_power(1, m, q)
            cy = cycles_mod.weighted_count(1, m, q)
            row["trace"] = _fmt(tr)
            row["cycles"] = _fmt(cy)
            values += [tr, cy]
        agree = all(v == values[0] for v in values)
        row["agree"] = agree
        all_agree = all_agree and agree
        rows.append(row)
    return rows, 0 if all_agree else 1


def _cmd_verify_all(args):
    report = verify_all(args.max_m, args.order, tuple(_maybe_int(q) for q in args.q))
    return report, 0 if report["all_pass"] else 1


# --- the verification matrix ------------------------------------------------


def verify_all(max_m: int = 9, order: int = 12, q_values=(2, 3)) -> dict:
    """Run the full identity matrix and report one pass/fail entry per check."""
    if max_m > order:
        raise ValueError(f"max_m {max_m} must not exceed order {order}")
    criteria = []

    def record(cid, name, ok, detail=""):
        criteria.append({"id": cid, "name": name, "pass": bool(ok), "detail": detail})

    # 1: trace = cycle enumeration = closed form, at every (m, q).
    ok, detail = True, ""
    for m in range(1, max_m + 1):
        closed = zeta.counts_closed_form(m)
        for q in q_values:
            want = qpoly_eval(closed, q)
            tr = transfer.trace_power(1, m, q)
            cy = cycles_mod.weighted_count(1, m, q)
            if not (tr == cy == want):
                ok = False
                detail = (f"first mismatch at m={m}, q={q}: "
                          f"trace={tr}, cycles={cy}, closed_form={want}")
                break
        if not ok:
            break
    record(1, "three-way closed-cycle counts", ok, detail)

    # 2: symbolic trace of the cube.
    if max_m >= 3:
        want = zeta.counts_closed_form(3)
        got = transfer.trace_power(1, 3)
        record(2, "symbolic trace at m=3", got == want,
               "" if got == want else f"got {got}, want {want}")
    else:
        record(2, "symbolic trace at m=3", True, "skipped: max_m < 3")

    # 3: three determinant routes agree symbolically.
    z1 = zeta.zeta_type1()
    reference = rational_expand(z1.denominator, z1.numerator, order)
    via_alpha = determinant.det_via_alpha(order)
    via_traces = determinant.det_via_traces(1, order)
    ok = via_alpha == via_traces == reference
    detail = "" if ok else _first_series_mismatch(
        {"alpha": via_alpha, "traces": via_traces, "rational": reference})
    record(3, "determinant identity", ok, detail)

    # 4: direct elimination at q=2 against the symbolic series.
    direct_order = min(order, 6)
    direct = determinant.det_direct(determinant.build_blocks(8), 8, direct_order, 2)
    want = specialize_q(determinant.det_via_traces(1, direct_order), 2)
    record(4, "direct elimination cross-check", direct == want,
           "" if direct == want else _first_series_mismatch({"direct": direct, "traces": want}))

    # 5: the Schur iteration reaches its closed-form fixed point.
    schur_order = min(order, 9)
    table = determinant.schur_iterate(6, schur_order + 8, schur_order)
    denom = [QPoly((1,))] + [QPoly()] * (3 * 6)
    for i in range(1, 7):
        denom[3 * i] = QPoly((1, -1)) * QPoly.q_power(3 * i)  # -(q-1)q^(3i)
    want = rational_expand([QPoly(), QPoly((1, 0, -1))], denom, schur_order)
    got = table.values[(1, 1)]
    ok = table.converged and got == want
    record(5, "Schur fixed point", ok,
           "" if ok else f"converged={table.converged}")

    # 6: the type-2 determinant is the type-1 determinant in u^2.
    type2 = determinant.det_via_traces(2, order)
    type1_sub = series_power_substitute(determinant.det_via_traces(1, order // 2), 2, order)
    record(6, "type-2 symmetry", type2 == type1_sub,
           "" if type2 == type1_sub else _first_series_mismatch({"type2": type2, "sub": type1_sub}))

    # 7: the full zeta function is the product of its two parts.
    product = series_mul(zeta.zeta_type1().series(order), zeta.zeta_type2().series(order))
    assembled = zeta.zeta_full().series(order)
    record(7, "full zeta assembly", assembled == product,
           "" if assembled == product else _first_series_mismatch(
               {"assembled": assembled, "product": product}))

    # 8: full-complex row sums are exactly q^2.
    q2 = QPoly((0, 0, 1))
    ok, detail = True, ""
    for edge_type in (1, 2):
        for e in edges_in_region(edge_type, Region(12, 12)):
            if transfer.row_sum(e) != q2:
                ok, detail = False, f"row sum off at {e}"
                break
        if not ok:
            break
    record(8, "row-sum law", ok, detail)

    # 9: counts and traces vanish off multiples of 3.
    ok, detail = True, ""
    table9 = zeta.counts_from_zeta(order).entries
    traces9 = transfer.trace_powers(1, order)
    for m in range(1, order + 1):
        if m % 3 == 0:
            continue
        if table9[m] or traces9[m - 1]:
            ok, detail = False, f"nonzero at m={m}"
            break
    record(9, "vanishing off multiples of 3", ok, detail)

    # 10: traces do not depend on the window once it is big enough.
    ok, detail = True, ""
    for m in range(1, min(max_m, 9) + 1):
        base = transfer.trace_power_in_region(1, m, Region(m + 2, m + 3), 2)
        wide = transfer.trace_power_in_region(
            1, m, Region(max(2 * m, m + 3), max(2 * m, m + 4)), 2)
        if base != wide:
            ok, detail = False, f"window-dependent trace at m={m}: {base} vs {wide}"
            break
    record(10, "window stabilization", ok, detail)

    return {"criteria": criteria, "all_pass": all(c["pass"] for c in criteria)}


def _first_series_mismatch(named) -> str:
    items = list(named.items())
    base_name, base = items[0]
    for name, other in items[1:]:
        for i in range(min(base.order, other.order) + 1):
            if base.coeffs[i] != other.coeffs[i]:
                return (f"coefficient of u^{i}: {base_name}={base.coeffs[i]}, "
                        f"{name}={other.coeffs[i]}")
    return "series orders differ"


# --- rendering and caching --------------------------------------------------


def _render_json(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


_CSV_COLUMNS = {
    "complex": ["type", "level", "offset", "leg", "source", "target"],
    "cycles": ["edges", "weight", "primitive_length"],
    "count": ["m", "closed_form", "from_zeta", "trace", "cycles", "agree"],
    "verify": ["id", "name", "pass", "detail"],
}


def _render_csv(command, payload) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    if command in ("det", "zeta"):
        writer.writerow(["power", "coefficient"])
        for i, c in enumerate(payload["series"]):
            writer.writerow([i, c])
    elif command == "trace":
        writer.writerow(["m", "trace", "region_level", "region_offset"])
        writer.writerow([payload["m"], payload["trace"], *payload["region"]])
    elif command == "verify":
        writer.writerow(_CSV_COLUMNS["verify"])
        for c in payload["criteria"]:
            writer.writerow([c["id"], c["name"], _csv_cell(c["pass"]), c["detail"]])
    else:
        columns = [c for c in _CSV_COLUMNS[command]
                   if any(c in row for row in payload)] or _CSV_COLUMNS[command]
        writer.writerow(columns)
        for row in payload:
            writer.writerow([_csv_cell(row[c]) if c in row else "" for c in columns])
    return out.getvalue()


def _csv_cell(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, list):
        return ";".join(",".join(str(x) for x in item) if isinstance(item, list)
                        else str(item) for item in value)
    return value


def _cache_key(command, args) -> str:
    skip = {"format", "out", "cache", "func", "command"}
    params = {k: str(v) for k, v in sorted(vars(args).items()) if k not in skip}
    return json.dumps([__version__, command, params], sort_keys=True)


def _load_cache(path) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, ValueError):
        return {}
    if not isinstance(data, dict) or data.get("version") != __version__:
        return {}
    entries = data.get("entries")
    return entries if isinstance(entries, dict) else {}


def _save_cache(path, entries) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump({"version": __version__, "entries": entries}, fh, indent=2, sort_keys=True)
        fh.write("\n")


# --- argument parsing --------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zetalab",
        description="Exact edge zeta functions and weighted closed-cycle counts "
                    "for the modular quotient of the PGL(3) building.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=["json", "csv"], default="json")
        p.add_argument("--out", metavar="PATH", default=None)
        p.add_argument("--cache", metavar="FILE", default=None,
                       help="cache file (also via ZETALAB_CACHE)")

    p = sub.add_parser("complex", help="inspect the quotient complex")
    psub = p.add_subparsers(dest="action", required=True)
    p_dump = psub.add_parser("dump", help="emit labelled edges with endpoints")
    p_dump.add_argument("--type", type=int, choices=[1, 2], required=True)
    p_dump.add_argument("--max-level", type=int, required=True)
    p_dump.add_argument("--max-offset", type=int, required=True)
    common(p_dump)
    p_dump.set_defaults(func=_cmd_complex_dump)

    p = sub.add_parser("trace", help="trace of a transfer-operator power")
    p.add_argument("--type", type=int, choices=[1, 2], required=True)
    p.add_argument("--m", type=int, required=True)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--q", type=_parse_q, default=None)
    group.add_argument("--symbolic", action="store_true")
    common(p)
    p.set_defaults(func=_cmd_trace)

    p = sub.add_parser("cycles", help="closed-path enumeration")
    psub = p.add_subparsers(dest="action", required=True)
    p_enum = psub.add_parser("enumerate", help="rotation classes of closed n-paths")
    p_enum.add_argument("--type", type=int, choices=[1, 2], required=True)
    p_enum.add_argument("--n", type=int, required=True)
    p_enum.add_argument("--q", type=_parse_q, default=None)
    common(p_enum)
    p_enum.set_defaults(func=_cmd_cycles_enumerate)

    p = sub.add_parser("det", help="determinant of I - uT by one of three methods")
    p.add_argument("--method", choices=["alpha", "traces", "direct"], required=True)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--q", type=_parse_q, default=None)
    p.add_argument("--k", type=int, default=None, help="truncation level (direct)")
    p.add_argument("--blocks", type=int, default=None, help="offset blocks (direct)")
    common(p)
    p.set_defaults(func=_cmd_det)

    p = sub.add_parser("zeta", help="zeta function series")
    psub = p.add_subparsers(dest="action", required=True)
    p_series = psub.add_parser("series", help="series expansion in u")
    p_series.add_argument("--which", choices=["1", "2", "full"], required=True)
    p_series.add_argument("--order", type=int, required=True)
    p_series.add_argument("--q", type=_parse_q, default=None)
    common(p_series)
    p_series.set_defaults(func=_cmd_zeta_series)

    p = sub.add_parser("count", help="weighted closed-cycle counts N_m")
    p.add_argument("--max-m", type=int, required=True)
    p.add_argument("--q", type=_parse_q, default=None)
    p.add_argument("--verify", action="store_true",
                   help="also run the trace and cycle oracles per m")
    common(p)
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser("verify", help="run the verification matrix")
    psub = p.add_subparsers(dest="action", required=True)
    p_all = psub.add_parser("all", help="every identity check, one line each")
    p_all.add_argument("--max-m", type=int, default=9)
    p_all.add_argument("--order", type=int, default=12)
    p_all.add_argument("--q", type=_parse_q, action="append", default=None)
    common(p_all)
    p_all.set_defaults(func=_cmd_verify_all)

    return parser


def run(argv) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2

    if args.command == "det":
        if args.method == "direct" and (args.q is None or args.k is None or args.blocks is None):
            parser.error("--method direct requires --q, --k and --blocks")
        if args.method == "direct" and args.k < 2:
            parser.error("--k must be >= 2")
    if args.command == "verify":
        if args.q is None:
            args.q = [Fraction(2), Fraction(3)]
        if args.max_m > args.order:
            parser.error("--max-m must not exceed --order")
    if args.command == "count" and args.max_m < 1:
        parser.error("--max-m must be >= 1")

    try:
        cache_path = args.cache or os.environ.get("ZETALAB_CACHE")
        key = _cache_key(args.command, args)
        payload = None
        entries = {}
        if cache_path:
            entries = _load_cache(cache_path)
            payload = entries.get(key)
        if payload is None:
            payload, code = args.func(args)
            if cache_path:
                entries[key] = payload
                _save_cache(cache_path, entries)
        else:
            code = _exit_code_for(args.command, payload)
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    text = _render_json(payload) if args.format == "json" else _render_csv(args.command, payload)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def _exit_code_for(command, payload) -> int:
    if command == "count":
        return 0 if all(row["agree"] for row in payload) else 1
    if command == "verify":
        return 0 if payload["all_pass"] else 1
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
