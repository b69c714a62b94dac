"""Command-line interface: ``friezes <subcommand> ...``.

Every subcommand prints a human-readable summary, or with ``--json`` a single
JSON report whose fields are deterministic apart from ``wall_time``.
Exit status: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import sys
import time
from pathlib import Path

from . import band as band_mod
from . import polygon
from .band import FriezeBand, InvalidSeed, band_from_json, check_band, render_band, saturated, validate_seed
from .cluster import enumerate_clusters, unitary_bounds, unitary_friezes
from .counting import count_table, frieze_count, gf_identity_check, series_t_table, t_count
from .dynkin import DynkinType, OrientedDiagram, automorphism, default_orientation, symmetric_orientation
from .folding import count_invariant, fold, folded_count

log = logging.getLogger("friezes")


class UsageError(Exception):
    pass


def _type(args) -> DynkinType:
    try:
        return DynkinType.parse(args.type, getattr(args, "rank", None))
    except ValueError as e:
        raise UsageError(f"--type: {e}") from None


def _ints(text: str, flag: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise UsageError(f"{flag}: expected comma-separated integers, got {text!r}") from None


def _diagram(t: DynkinType, orientation: str | None) -> OrientedDiagram:
    if not orientation:
        return default_orientation(t)
    if orientation == "symmetric":
        return symmetric_orientation(t)
    pairs = []
    for part in orientation.split(","):
        try:
            i, j = part.split(">")
            pairs.append((int(i), int(j)))
        except ValueError:
            raise UsageError(f"--orientation: bad edge {part!r}, expected e.g. 1>3") from None
    try:
        return OrientedDiagram.from_edge_list(t, pairs)
    except ValueError as e:
        raise UsageError(f"--orientation: {e}") from None


def _bound(args, d: OrientedDiagram) -> tuple[tuple[int, ...], str]:
    if args.bound is None:
        return unitary_bounds(d), "unitary"
    b = _ints(args.bound, "--bound")
    if len(b) == 1:
        b = b * d.n
    if len(b) != d.n or any(x < 1 for x in b):
        raise UsageError(f"--bound: need 1 or {d.n} positive integers")
    return tuple(b), "explicit"


# -- listings -----------------------------------------------------------------


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def listing_lines(bands: list[FriezeBand]) -> list[str]:
    """Sorted NDJSON records followed by a manifest with count and SHA-256."""
    records = [_dumps(b.to_json()) for b in sorted(bands, key=lambda b: b.seed)]
    digest = hashlib.sha256("\n".join(records).encode()).hexdigest()
    t = str(bands[0].diagram.dynkin_type) if bands else ""
    manifest = {"manifest": True, "type": t, "count": len(records), "sha256": digest}
    return records + [_dumps(manifest)]


def export_listing(t: DynkinType, path, bound=None, threads=1, orientation: OrientedDiagram | None = None) -> int:
    d = orientation or default_orientation(t)
    bands = band_mod.enumerate_friezes(d, bound, threads=threads)
    Path(path).write_text("\n".join(listing_lines(bands)) + "\n")
    return len(bands)


def verify_band_record(data: dict) -> list[str]:
    try:
        b = band_from_json(data)
    except (KeyError, ValueError) as e:
        return [f"malformed record: {e}"]
    problems = check_band(b)
    try:
        ref = validate_seed(b.diagram, b.seed)
    except InvalidSeed as e:
        return problems + [f"seed {list(b.seed)} is not a frieze: {e}"]
    if ref.columns != b.columns:
        problems.append("columns do not match propagation of the seed")
    if list(b.seed) != list(data.get("seed", b.seed)) or data.get("period", b.period) != b.period:
        problems.append("seed/period fields inconsistent with columns")
    return problems


def verify_text(text: str) -> list[str]:
    """Problems found in a band JSON, a geometric frieze JSON or an NDJSON listing."""
    text = text.strip()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError:
        obj = None
    if isinstance(obj, dict):
        if "weights" in obj:
            n, w = polygon.frieze_from_json(obj)
            _, bad = polygon.check_weights(n, w)
            return bad
        return verify_band_record(obj)
    lines = [ln for ln in text.splitlines() if ln.strip()]
    problems = []
    records = []
    manifest = None
    for k, ln in enumerate(lines):
        rec = json.loads(ln)
        if rec.get("manifest"):
            manifest = rec
            continue
        records.append(ln)
        problems += [f"record {k}: {p}" for p in verify_band_record(rec)]
    if manifest is not None:
        if manifest["count"] != len(records):
            problems.append(f"manifest count {manifest['count']} != {len(records)} records")
        digest = hashlib.sha256("\n".join(records).encode()).hexdigest()
        if manifest.get("sha256") != digest:
            problems.append("manifest checksum mismatch")
    return problems


# -- subcommands --------------------------------------------------------------


def cmd_count(args):
    t = _type(args)
    fc = frieze_count(t)
    return {"type": str(t), "count": fc.count, "status": fc.status}, str(fc)


def cmd_count_table(args):
    rows = count_table(args.family.upper(), args.max_rank)
    if not rows:
        raise UsageError(f"--family: no valid ranks for {args.family!r} up to {args.max_rank}")
    result = {"rows": [dict(zip(("family", "rank", "count", "status"), r)) for r in rows]}
    if args.format == "csv":
        text = "family,rank,count,status\n" + "\n".join(",".join(map(str, r)) for r in rows)
    else:
        text = "\n".join(f"{f}{n}\t{c}\t{s}" for f, n, c, s in rows)
    return result, text


def cmd_enumerate(args):
    t = _type(args)
    d = _diagram(t, args.orientation)
    bound, source = _bound(args, d)
    bands = band_mod.enumerate_friezes(
        d, None if source == "unitary" else bound, threads=args.threads, checkpoint=args.checkpoint
    )
    exempt = {b.seed for b in unitary_friezes(d)} if source == "unitary" else set()
    hits = saturated(bands, bound, exclude=exempt)
    if args.listing:
        Path(args.listing).write_text("\n".join(listing_lines(bands)) + "\n")
    fc = frieze_count(t)
    result = {
        "type": str(t),
        "orientation": d.edge_list(),
        "bound": list(bound),
        "bound_source": source,
        "count": len(bands),
        "expected": fc.count,
        "status": fc.status,
        "saturation_warnings": len(hits),
        "records": [b.to_json() for b in bands],
    }
    lines = [f"{t}: {len(bands)} friezes (closed form {fc})", f"bound ({source}): {list(bound)}"]
    if hits:
        lines.append(f"warning: {len(hits)} non-unitary friezes reach the bound")
    if args.listing:
        lines.append(f"listing written to {args.listing}")
    return result, "\n".join(lines)


def cmd_verify(args):
    text = sys.stdin.read() if args.file == "-" else Path(args.file).read_text()
    problems = verify_text(text)
    result = {"file": args.file, "valid": not problems, "problems": problems}
    msg = "valid frieze" if not problems else "INVALID\n" + "\n".join(problems)
    return result, msg, (0 if not problems else 1)


def cmd_render(args):
    t = _type(args)
    d = _diagram(t, args.orientation)
    seed = _ints(args.seed, "--seed")
    if len(seed) != d.n:
        raise UsageError(f"--seed: need {d.n} entries for {t}")
    try:
        b = validate_seed(d, seed)
    except InvalidSeed as e:
        return {"type": str(t), "seed": seed, "valid": False, "reason": e.reason}, f"not a frieze: {e}", 1
    text = render_band(b, args.columns)
    return {"type": str(t), "band": b.to_json(), "render": text.splitlines()}, text


def cmd_triangulations(args):
    n = args.rank
    if n < 3:
        raise UsageError("--rank: the punctured polygon needs n >= 3")
    if args.spokes is not None:
        if not 1 <= args.spokes <= n:
            raise UsageError(f"--spokes: must lie in 1..{n}")
        got = len(polygon.triangulations_with_spokes(n, args.spokes))
        want = t_count(n, args.spokes)
        return {"rank": n, "spokes": args.spokes, "count": got, "closed_form": want}, f"{got} (closed form {want})"
    total = len(polygon.enumerate_triangulations(n))
    by_m = {m: len(polygon.triangulations_with_spokes(n, m)) for m in range(1, n + 1)}
    text = f"{total} tagged triangulations\n" + "\n".join(f"m={m}: {c}" for m, c in by_m.items())
    return {"rank": n, "count": total, "by_spokes": by_m}, text


def cmd_clusters(args):
    t = _type(args)
    cs = enumerate_clusters(default_orientation(t))
    result = {"type": str(t), "clusters": cs.count}
    if not args.count_only:
        result["unitary_friezes"] = len(unitary_friezes(default_orientation(t)))
    return result, str(cs.count)


def cmd_fold_count(args):
    try:
        t = DynkinType.parse(args.source)
    except ValueError as e:
        raise UsageError(f"--source: {e}") from None
    try:
        g = automorphism(t, args.auto)
    except ValueError as e:
        raise UsageError(f"--auto: {e}") from None
    d = symmetric_orientation(t)
    f = fold(d, g)
    got = count_invariant(d, g, threads=args.threads)
    fc = folded_count(f)
    result = {
        "source": str(t),
        "auto": args.auto,
        "target": str(f.target.dynkin_type),
        "invariant": got,
        "closed_form": fc.count,
        "status": fc.status,
        "match": got == fc.count,
    }
    return result, f"{got} invariant {t} friezes; {f.target.dynkin_type} closed form {fc}", (0 if got == fc.count else 1)


def cmd_series(args):
    table = series_t_table(args.order)
    ok = gf_identity_check(args.order)
    agree = all(table[n][m] == t_count(n, m) for n in range(1, args.order + 1) for m in range(1, n + 1))
    result = {"order": args.order, "table": table, "identity": ok, "matches_t_count": agree}
    text = "\n".join(" ".join(str(x) for x in row[: n + 1]) for n, row in enumerate(table))
    text += f"\nidentity 1 + x c'/c = 1/(2 - c): {ok}\ntable equals T(n,m): {agree}"
    return result, text, (0 if ok and agree else 1)


def cmd_bounds(args):
    t = _type(args)
    d = _diagram(t, args.orientation)
    b = unitary_bounds(d)
    return {"type": str(t), "orientation": d.edge_list(), "bounds": list(b)}, " ".join(map(str, b))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="friezes", description="Count, enumerate and verify friezes of Dynkin type.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help):
        sp = sub.add_parser(name, help=help)
        sp.set_defaults(fn=fn)
        sp.add_argument("--json", action="store_true", help="print a JSON report")
        return sp

    def typed(sp):
        sp.add_argument("--type", required=True, help='Dynkin type such as "D5", or a family letter with --rank')
        sp.add_argument("--rank", type=int)

    sp = add("count", cmd_count, "closed-form number of friezes")
    typed(sp)

    sp = add("count-table", cmd_count_table, "closed-form counts for a family")
    sp.add_argument("--family", required=True)
    sp.add_argument("--max-rank", type=int, required=True)
    sp.add_argument("--format", choices=("csv", "table"), default="table")

    threads_default = os.cpu_count() or 1

    sp = add("enumerate", cmd_enumerate, "brute-force all friezes in a bound box")
    typed(sp)
    sp.add_argument("--bound", help="K or K1,...,Kn; default: unitary bounds")
    sp.add_argument("--orientation", help='"symmetric" or edges like 1>3,2>3,4>3')
    sp.add_argument("--threads", type=int, default=threads_default)
    sp.add_argument("--listing", help="write an NDJSON listing to this path")
    sp.add_argument("--checkpoint", help="resume file for long searches")

    sp = add("verify", cmd_verify, "check a band, geometric frieze or listing file")
    sp.add_argument("file", help="path, or - for stdin")

    sp = add("render", cmd_render, "print the band generated by a seed")
    typed(sp)
    sp.add_argument("--seed", required=True)
    sp.add_argument("--columns", type=int)
    sp.add_argument("--orientation")

    sp = add("triangulations", cmd_triangulations, "count tagged triangulations of the punctured n-gon")
    sp.add_argument("--rank", type=int, required=True)
    sp.add_argument("--spokes", type=int)

    sp = add("clusters", cmd_clusters, "count clusters by numeric mutation")
    typed(sp)
    sp.add_argument("--count-only", action="store_true")

    sp = add("fold-count", cmd_fold_count, "count automorphism-invariant friezes")
    sp.add_argument("--source", required=True)
    sp.add_argument("--auto", required=True, choices=("arm-swap", "rotation", "mirror"))
    sp.add_argument("--threads", type=int, default=threads_default)

    sp = add("series", cmd_series, "expand the T(n,m) generating function")
    sp.add_argument("--order", type=int, default=10)

    sp = add("bounds", cmd_bounds, "per-node maxima over unitary friezes")
    typed(sp)
    sp.add_argument("--orientation")
    return p


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    start = time.perf_counter()
    try:
        out = args.fn(args)
    except UsageError as e:
        parser.error(str(e))
    result, text, code = out if len(out) == 3 else (*out, 0)
    if args.json:
        report = {
            "command": args.command,
            "inputs": {k: v for k, v in sorted(vars(args).items()) if k not in ("fn", "json", "verbose")},
            "result": result,
            "workers": getattr(args, "threads", 1),
            "wall_time": round(time.perf_counter() - start, 6),
        }
        print(json.dumps(report, sort_keys=True), file=stdout)
    else:
        print(text, file=stdout)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
