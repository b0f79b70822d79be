"""Command-line frontend: invariant queries, census runs, table output.

Exit codes: 0 success, 1 usage or parse error, 2 truncated computation.
Census results are cached as one JSON file per crossing number under the
cache directory (default ``./census_cache``).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import census as cz
from . import invariants, moves, words
from .words import Nanoword, NanowordError, parse_nanoword

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_TRUNCATED = 2

CACHE_VERSION = 1
DEFAULT_CACHE = "census_cache"


def _record_to_json(rec: cz.StringRecord) -> dict:
    sym = None
    if rec.symmetry is not None:
        sym = {
            "mirror": rec.symmetry.mirror_id,
            "inverse": rec.symmetry.inverse_id,
            "mirror_inverse": rec.symmetry.mirror_inverse_id,
            "type": rec.symmetry.sym_type,
        }
    return {
        "id": rec.id,
        "nanoword": str(rec.nanoword),
        "u": [[k, c] for k, c in rec.u.coefficients],
        "rho": rec.rho,
        "phi": list(rec.phi),
        "phi_display": list(rec.phi_display),
        "coverings": {str(r): v for r, v in sorted(rec.coverings.items())},
        "symmetry": sym,
    }


def _record_from_json(d: dict) -> cz.StringRecord:
    sym = None
    if d.get("symmetry"):
        s = d["symmetry"]
        sym = cz.Symmetry(s["mirror"], s["inverse"], s["mirror_inverse"], s["type"])
    return cz.StringRecord(
        id=d["id"],
        nanoword=parse_nanoword(d["nanoword"]),
        u=invariants.UPolynomial(tuple((k, c) for k, c in d["u"])),
        rho=d["rho"],
        phi=tuple(d["phi"]),
        phi_display=tuple(d["phi_display"]),
        coverings={int(r): v for r, v in d.get("coverings", {}).items()},
        symmetry=sym,
    )


def census_to_json(census: cz.CensusTable, n: int) -> dict:
    return {
        "version": CACHE_VERSION,
        "crossings": n,
        "records": [
            _record_to_json(r) for r in census.records if r.crossings == n
        ],
        "unresolved": [
            {
                "members": [str(m) for m in g.members],
                "rho": g.rho,
                "phi": list(g.phi),
                "phi_display": list(g.phi_display),
            }
            for g in census.unresolved
            if max(m.crossings for m in g.members) == n
        ],
        "meta": {"limits": census.limits, "timestamp": time.strftime("%Y-%m-%dT%H:%M:%S")},
    }


def _cache_file(cache_dir: Path, n: int) -> Path:
    return cache_dir / f"census_n{n}.json"


def save_census(census: cz.CensusTable, cache_dir: Path) -> None:
    cache_dir.mkdir(parents=True, exist_ok=True)
    for n in range(census.max_crossings + 1):
        payload = census_to_json(census, n)
        _cache_file(cache_dir, n).write_text(
            json.dumps(payload, indent=1, sort_keys=True) + "\n"
        )


def load_census(cache_dir: Path, max_n: int) -> cz.CensusTable | None:
    census = cz.CensusTable(max_crossings=max_n)
    for n in range(max_n + 1):
        path = _cache_file(cache_dir, n)
        if not path.exists():
            return None
        data = json.loads(path.read_text())
        if data.get("version") != CACHE_VERSION or data.get("crossings") != n:
            return None
        census.records.extend(_record_from_json(d) for d in data["records"])
        for g in data.get("unresolved", []):
            census.unresolved.append(
                cz.UnresolvedGroup(
                    members=tuple(parse_nanoword(t) for t in g["members"]),
                    rho=g["rho"],
                    phi=tuple(g["phi"]),
                    phi_display=tuple(g["phi_display"]),
                )
            )
        census.limits = data.get("meta", {}).get("limits", census.limits)
    return census


def obtain_census(args, max_n: int) -> cz.CensusTable:
    cache_dir = Path(args.cache)
    cached = load_census(cache_dir, max_n)
    if cached is not None:
        return cached
    if not getattr(args, "compute", True):
        raise SystemExit(
            f"census up to {max_n} crossings not cached in {cache_dir}; "
            "run 'nanowords enumerate' or pass --compute"
        )
    census = cz.build_census(
        max_n,
        max_members=args.max_members,
        max_steps=args.max_steps,
        jobs=args.jobs,
        warn=lambda m: print(f"warning: {m}", file=sys.stderr),
    )
    save_census(census, cache_dir)
    return census


# ---------------------------------------------------------------------------
# Rendering helpers.
# ---------------------------------------------------------------------------


def _emit_rows(rows: list[dict], columns: list[str], fmt: str, out) -> None:
    if fmt == "json":
        json.dump(rows, out, indent=1)
        out.write("\n")
        return
    if fmt == "csv":
        import csv

        writer = csv.DictWriter(out, fieldnames=columns)
        writer.writeheader()
        for row in rows:
            writer.writerow({c: row[c] for c in columns})
        return
    widths = {c: max([len(c)] + [len(str(r[c])) for r in rows]) for c in columns}
    out.write("  ".join(c.ljust(widths[c]) for c in columns).rstrip() + "\n")
    for row in rows:
        out.write("  ".join(str(row[c]).ljust(widths[c]) for c in columns).rstrip() + "\n")


# ---------------------------------------------------------------------------
# Subcommands.
# ---------------------------------------------------------------------------


def cmd_invariants(args) -> int:
    try:
        nw = parse_nanoword(args.nanoword)
    except NanowordError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    stats = invariants.n_values(nw)
    u = invariants.u_polynomial(nw)
    bm = invariants.based_matrix(nw)
    cf = invariants.canonical_form(bm)
    radii = cz._covering_radii(stats)
    covers = {}
    for r in radii:
        raw = invariants.covering_raw(nw, r)
        covers[r] = str(raw)
    if args.json:
        json.dump(
            {
                "nanoword": str(nw),
                "n_values": {x: stats.n[x] for x in nw.letters},
                "u": [[k, c] for k, c in u.coefficients],
                "u_text": str(u),
                "rho": cf.rho,
                "phi": list(cf.phi),
                "phi_display": list(invariants.display_theta(bm)),
                "coverings": {str(r): c for r, c in covers.items()},
            },
            sys.stdout,
            indent=1,
        )
        print()
        return EXIT_OK
    print(f"nanoword: {nw}")
    if nw.letters:
        print("n-values:", ", ".join(f"n({x})={stats.n[x]}" for x in nw.letters))
    print(f"u-polynomial: {u}")
    print(f"rho: {cf.rho}")
    print(f"phi: {invariants.phi_string(cf.phi)}")
    for r, c in covers.items():
        print(f"covering r={r}: {c}")
    return EXIT_OK


def cmd_enumerate(args) -> int:
    try:
        census = obtain_census(args, args.crossings)
    except moves.TruncationError as e:
        print(f"error: truncated: {e}", file=sys.stderr)
        return EXIT_TRUNCATED
    rows = [
        r for r in cz.table1(census) if r["id"] == "0" or r["id"].startswith(f"{args.crossings}.")
    ]
    if args.crossings > 0:
        rows = [r for r in rows if r["id"] != "0"]
    _emit_rows(rows, ["id", "nanoword", "u", "rho", "phi"], args.format, sys.stdout)
    return EXIT_OK


def cmd_tables(args) -> int:
    max_n = {1: 4, 2: 4, 3: 4, 4: 5, 5: 5}[args.table]
    if args.crossings is not None:
        max_n = args.crossings
    try:
        census = obtain_census(args, max_n)
    except moves.TruncationError as e:
        print(f"error: truncated: {e}", file=sys.stderr)
        return EXIT_TRUNCATED
    tables = cz.build_tables(census)
    if args.table == 1:
        _emit_rows(tables["table1"], ["id", "nanoword", "u", "rho", "phi"], args.format, sys.stdout)
    elif args.table == 2:
        counts = tables["table2"]
        if args.format == "json":
            print(json.dumps(counts))
        else:
            print(", ".join(f"{n}:{c}" for n, c in counts.items()))
    elif args.table == 3:
        _emit_rows(
            tables["table3"],
            ["id", "mirror", "inverse", "mirror_inverse", "type"],
            args.format,
            sys.stdout,
        )
    elif args.table == 4:
        rows = [r for grp in tables["table4"] for r in grp]
        _emit_rows(rows, ["id", "nanoword", "phi", "cover2"], args.format, sys.stdout)
    else:
        rows = [
            {"members": " | ".join(g["members"]), "rho": g["rho"], "phi": g["phi"]}
            for g in tables["table5"]
        ]
        _emit_rows(rows, ["members", "rho", "phi"], args.format, sys.stdout)
    return EXIT_OK


def cmd_identify(args) -> int:
    try:
        nw = parse_nanoword(args.nanoword)
    except NanowordError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    try:
        census = obtain_census(args, args.crossings)
        name = cz.identify(
            nw, census, args.max_members, args.max_steps, args.insert_budget
        )
    except moves.TruncationError as e:
        print(f"error: truncated: {e}", file=sys.stderr)
        return EXIT_TRUNCATED
    print(name)
    return EXIT_OK


def cmd_symmetry(args) -> int:
    try:
        nw = parse_nanoword(args.nanoword)
    except NanowordError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    try:
        census = obtain_census(args, args.crossings)
        name = cz.identify(
            nw, census, args.max_members, args.max_steps, args.insert_budget
        )
        if name == "unknown" or name.startswith("ambiguous"):
            print(name)
            return EXIT_OK
        rec = census.by_id(name)
        if rec.symmetry is None:
            rec = cz.symmetry_classify(rec, census, args.max_members, args.max_steps)
        if rec.symmetry is None:
            print(f"{name}: symmetry not determined")
            return EXIT_OK
        s = rec.symmetry
        print(
            f"{name}: type {s.sym_type}, mirror {s.mirror_id}, "
            f"inverse {s.inverse_id}, mirror-inverse {s.mirror_inverse_id}"
        )
    except moves.TruncationError as e:
        print(f"error: truncated: {e}", file=sys.stderr)
        return EXIT_TRUNCATED
    return EXIT_OK


def cmd_cover(args) -> int:
    try:
        nw = parse_nanoword(args.nanoword)
    except NanowordError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    raw = invariants.covering_raw(nw, args.r)
    try:
        census = obtain_census(args, args.crossings)
        name = cz.identify(
            raw, census, args.max_members, args.max_steps, args.insert_budget
        )
    except moves.TruncationError as e:
        print(f"error: truncated: {e}", file=sys.stderr)
        return EXIT_TRUNCATED
    print(f"{raw}, identified {name}")
    return EXIT_OK


def _add_census_options(p, default_crossings=4):
    p.add_argument("--crossings", type=int, default=default_crossings,
                   help="census depth (default %(default)s)")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--cache", default=DEFAULT_CACHE, help="census cache directory")
    p.add_argument("--max-members", type=int, default=moves.DEFAULT_MAX_MEMBERS)
    p.add_argument("--max-steps", type=int, default=moves.DEFAULT_MAX_STEPS)
    p.add_argument("--insert-budget", type=int, default=0,
                   help="extra letters the identification search may insert")
    p.add_argument("--compute", action="store_true",
                   help="build the census if not cached")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nanowords",
        description="Virtual strings as nanowords: invariants and census tables.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", help="n-values, u-polynomial, rho, phi, coverings")
    p.add_argument("nanoword")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_invariants)

    p = sub.add_parser("enumerate", help="enumerate the census at a crossing number")
    _add_census_options(p)
    p.add_argument("--format", choices=["text", "csv", "json"], default="text")
    p.set_defaults(fn=cmd_enumerate, compute=True)

    p = sub.add_parser("tables", help="print census tables 1-5")
    p.add_argument("table", type=int, choices=[1, 2, 3, 4, 5])
    _add_census_options(p)
    p.set_defaults(crossings=None)
    p.add_argument("--format", choices=["text", "csv", "json"], default="text")
    p.set_defaults(fn=cmd_tables)

    p = sub.add_parser("identify", help="identify a nanoword against the census")
    p.add_argument("nanoword")
    _add_census_options(p)
    p.set_defaults(fn=cmd_identify)

    p = sub.add_parser("symmetry", help="mirror/inverse classification of a nanoword")
    p.add_argument("nanoword")
    _add_census_options(p)
    p.set_defaults(fn=cmd_symmetry)

    p = sub.add_parser("cover", help="r-covering of a nanoword plus identification")
    p.add_argument("nanoword")
    p.add_argument("--r", type=int, required=True)
    _add_census_options(p)
    p.set_defaults(fn=cmd_cover)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else EXIT_OK
    try:
        return args.fn(args)
    except SystemExit as e:
        print(e, file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
