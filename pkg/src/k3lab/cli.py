"""Command line front end.

Machine-readable JSON goes to stdout, a one-line human summary to
stderr.  Exit codes are a stable contract:

    0   success / certificate PASS
    1   malformed input (bad JSON, unknown lattice, bad field, ...)
    2   certificate FAIL or replay mismatch (argparse usage errors
        also exit 2)
    3   seeded search exhausted its retry budget

The --seed argument fully determines the output bytes of a construct
run for a fixed package version and configuration; reports are emitted
in canonical JSON so they can be diffed and replayed byte for byte.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys

from . import SCHEMA, __version__
from .config import Config, DEFAULT
from .constructions import (build_genus4, build_genus6, build_genus8_nine,
                            build_genus8_secant, canonical_json,
                            search_genus8_configuration, verify_report)
from .errors import (HypothesisViolated, K3labError, RetryExhausted,
                     SeedMismatch)
from .exactlin import FiniteField
from .k3lattice import (builtin, BUILTIN_NAMES, certify_ample,
                        certify_bn_general, dump_gram, enumerate_slice,
                        lm_invariants, load_gram, max_admissible_size,
                        moduli_dimensions, pencil_census,
                        verify_fiber_chain_genus8)

_GENUS_OF_BUILTIN = {"U3": 4, "M6": 6}


def _emit(payload: dict, summary: str) -> None:
    sys.stdout.write(canonical_json(payload) + "\n")
    print(summary, file=sys.stderr)


def _fail(code: int, where: str, detail: str) -> int:
    _emit({"schema": SCHEMA, "error": {"where": where, "detail": detail}},
          f"error ({where}): {detail}")
    return code


def _load_lattice(args):
    if getattr(args, "gram", None):
        return load_gram(args.gram), args.gram
    return builtin(args.builtin), args.builtin.upper()


def _genus_for(args, name: str, parser) -> int:
    if getattr(args, "genus", None):
        return int(args.genus)
    if name in _GENUS_OF_BUILTIN:
        return _GENUS_OF_BUILTIN[name]
    if name.startswith("N"):
        return 8
    parser.error("--genus is required with --gram")


def cmd_lattice(args, cfg: Config, parser) -> int:
    sub = args.lattice_cmd
    if sub == "lm":
        data = lm_invariants(args.genus, args.degree, args.index)
        data["schema"] = SCHEMA
        _emit(data, f"lm invariants g={args.genus} d={args.degree}: "
                    f"chi={data['chi']}, {data['verdict']}")
        return 0
    if sub == "rank-bound":
        bound = max_admissible_size(args.genus, args.degree, args.mutual)
        _emit({"schema": SCHEMA, "genus": args.genus, "degree": args.degree,
               "mutual": args.mutual, "max_size": bound},
              f"max admissible configuration size: {bound}")
        return 0

    pl, name = _load_lattice(args)
    if sub == "signature":
        sig = pl.lattice.signature()
        _emit({"schema": SCHEMA, "lattice": name, "rank": pl.rank,
               "signature": list(sig), "even": pl.lattice.is_even(),
               "hyperbolic": pl.lattice.is_hyperbolic(),
               "gram": [list(row) for row in pl.gram]},
              f"{name}: signature {tuple(sig)}")
        return 0
    if sub == "census":
        if args.nef:
            census = pencil_census(pl, args.degree)
            payload = census.to_json()
            payload["lattice"] = name
            _emit(payload, f"{name}: {census.count} nef-certified classes "
                           f"of degree {args.degree}")
            return 0
        census = enumerate_slice(pl, args.degree, args.square, args.orient)
        payload = census.to_json()
        payload["lattice"] = name
        _emit(payload, f"{name}: {census.count} classes with "
                       f"D.L={args.degree}, D^2={args.square}")
        return 0
    if sub == "certify":
        ample = certify_ample(pl)
        if ample.passed:
            bn = certify_bn_general(pl)
            bn_json = bn.to_json()
            ok = bn.passed
        else:
            bn_json = {"schema": SCHEMA, "claim": "bn-general",
                       "status": "SKIPPED",
                       "reason": "polarization not certified ample"}
            ok = False
        status = "PASS" if ok else "FAIL"
        _emit({"schema": SCHEMA, "lattice": name, "status": status,
               "ample": ample.to_json(), "bn_general": bn_json},
              f"{name}: certify {status} (ample "
              f"{ample.status}, bn {bn_json['status']})")
        return 0 if ok else 2
    if sub == "dims":
        g = _genus_for(args, name, parser)
        dim_f, dim_p = moduli_dimensions(pl.lattice, g)
        _emit({"schema": SCHEMA, "lattice": name, "genus": g,
               "dim_F": dim_f, "dim_P": dim_p},
              f"{name}: dim_F={dim_f}, dim_P={dim_p}")
        return 0
    if sub == "fiber-chain":
        e = [0] * pl.rank
        if not 1 <= args.generator <= pl.rank - 1:
            parser.error(f"--generator must be in 1..{pl.rank - 1}")
        e[args.generator] = 1
        chain = verify_fiber_chain_genus8(pl, e)
        chain["lattice"] = name
        _emit(chain, f"{name}: fiber chain {chain['status']} "
                     f"({len(chain['steps'])} steps)")
        return 0 if chain["status"] == "PASS" else 2
    parser.error(f"unknown lattice subcommand {sub!r}")


_PENCILS_FOR_GENUS = {4: (2,), 6: (5,), 8: (1, 2, 3, 4, 5, 6, 9)}


def cmd_construct(args, cfg: Config, parser) -> int:
    genus = args.genus
    if args.experimental_pencils is not None:
        if genus != 8:
            parser.error("--experimental-pencils requires --genus 8")
        if not 1 <= args.experimental_pencils <= 8:
            parser.error("--experimental-pencils must be in 1..8")
    else:
        pencils = args.pencils
        if pencils is None:
            if genus == 8:
                parser.error("--genus 8 needs --pencils (1..6 or 9) or "
                             "--experimental-pencils")
            pencils = _PENCILS_FOR_GENUS[genus][0]
        if pencils not in _PENCILS_FOR_GENUS[genus]:
            allowed = ", ".join(str(x) for x in _PENCILS_FOR_GENUS[genus])
            parser.error(f"--genus {genus} supports --pencils {allowed}; "
                         f"got {pencils}")

    p = args.field if args.field is not None else cfg.default_field[0]
    seed = args.seed if args.seed is not None else cfg.seed
    field = FiniteField(p)

    if args.experimental_pencils is not None:
        report = search_genus8_configuration(args.experimental_pencils,
                                             field, seed, cfg)
    elif genus == 4:
        report = build_genus4(field, seed, cfg)
    elif genus == 6:
        report = build_genus6(field, seed, cfg)
    elif pencils == 9:
        report = build_genus8_nine(field, seed, cfg)
    else:
        report = build_genus8_secant(pencils, field, seed, cfg)

    payload = report.to_dict()
    out_path = args.out or cfg.output_path
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(canonical_json(payload) + "\n")
    _emit(payload,
          f"{payload['kind']} {payload['status']} over F_{field.q} "
          f"seed={seed}: {payload['pencil_count']} pencils, "
          f"{len(payload['checks'])} checks"
          + (f" -> {out_path}" if out_path else ""))
    return 0 if report.passed else 2


def cmd_verify(args, cfg: Config, parser) -> int:
    try:
        with open(args.report, "r", encoding="utf-8") as fh:
            stored = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        return _fail(1, "verify", f"cannot read report: {exc}")
    try:
        ok = verify_report(stored, cfg=cfg)
    except (SeedMismatch, RetryExhausted) as exc:
        _emit({"schema": SCHEMA, "verified": False,
               "kind": stored.get("kind"), "detail": str(exc)},
              f"verify: replay diverged ({exc})")
        return 2
    except K3labError as exc:
        return _fail(1, "verify", str(exc))
    _emit({"schema": SCHEMA, "verified": ok, "kind": stored.get("kind"),
           "seed": stored.get("seed"), "field": stored.get("field")},
          "verify: reproduced byte for byte" if ok
          else "verify: MISMATCH against replay")
    return 0 if ok else 2


def cmd_report(args, cfg: Config, parser) -> int:
    try:
        with open(args.report, "r", encoding="utf-8") as fh:
            stored = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        return _fail(1, "report", f"cannot read report: {exc}")
    if not isinstance(stored, dict):
        return _fail(1, "report", "report payload is not a JSON object")
    status = stored.get("status", "UNKNOWN")
    checks = stored.get("checks", [])
    if isinstance(checks, list):
        failing = [c.get("name") for c in checks
                   if isinstance(c, dict) and c.get("status") == "FAIL"]
    else:
        failing = []
    summary = {
        "schema": SCHEMA,
        "kind": stored.get("kind", stored.get("claim", "unknown")),
        "status": status,
        "field": stored.get("field"),
        "seed": stored.get("seed"),
        "pencil_count": stored.get("pencil_count"),
        "checks_total": len(checks) if isinstance(checks, list) else None,
        "checks_failing": failing,
        "notes": stored.get("notes", {}),
    }
    _emit(summary, f"{summary['kind']}: {status}, "
                   f"{summary['checks_total']} checks, "
                   f"{len(failing)} failing")
    return 0 if status == "PASS" else 2


def cmd_dump(args, cfg: Config, parser) -> int:
    pl, name = _load_lattice(args)
    _emit(dump_gram(pl), f"{name}: rank {pl.rank} gram matrix")
    return 0


def _add_lattice_source(sub, required: bool = True):
    group = sub.add_mutually_exclusive_group(required=required)
    group.add_argument("--builtin", metavar="NAME",
                       help="builtin lattice: " + ", ".join(BUILTIN_NAMES))
    group.add_argument("--gram", metavar="FILE",
                       help="JSON file with a gram matrix dump")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="k3lab",
        description="Lattice certificates and finite-field constructions "
                    "for K3 surfaces with many low-degree elliptic "
                    "pencils.")
    parser.add_argument("--version", action="version",
                        version=f"k3lab {__version__}")
    parser.add_argument("--config", metavar="FILE",
                        help="JSON config overriding defaults")
    parser.add_argument("--threads", type=int, metavar="N",
                        help="worker threads (default: K3LAB_THREADS or "
                             "cpu count); never changes results")
    commands = parser.add_subparsers(dest="command", required=True)

    lat = commands.add_parser("lattice", help="lattice arithmetic, "
                                              "censuses and certificates")
    lat_sub = lat.add_subparsers(dest="lattice_cmd", required=True)

    sig = lat_sub.add_parser("signature", help="signature of the gram "
                                               "matrix")
    _add_lattice_source(sig)

    cen = lat_sub.add_parser("census", help="enumerate classes on a "
                                            "degree/square slice")
    _add_lattice_source(cen)
    cen.add_argument("--degree", type=int, required=True)
    cen.add_argument("--square", type=int, default=0)
    cen.add_argument("--orient", choices=("nonneg", "positive", "all"),
                     default="nonneg")
    cen.add_argument("--nef", action="store_true",
                     help="report the nef-certified pencil census instead "
                          "of the raw slice")

    cert = lat_sub.add_parser("certify", help="ampleness and "
                                              "Brill-Noether certificates")
    _add_lattice_source(cert)

    dims = lat_sub.add_parser("dims", help="moduli dimensions (dim_F, "
                                           "dim_P)")
    _add_lattice_source(dims)
    dims.add_argument("--genus", type=int,
                      help="polarization genus (inferred for builtins)")

    chain = lat_sub.add_parser("fiber-chain",
                               help="degree-5 pencil fiber chain "
                                    "identities (genus 8)")
    _add_lattice_source(chain)
    chain.add_argument("--generator", type=int, default=1,
                       help="which pencil generator to use as E "
                            "(default 1)")

    lm = lat_sub.add_parser("lm", help="rank-2 bundle invariants for a "
                                       "degree-d pencil")
    lm.add_argument("--genus", type=int, required=True)
    lm.add_argument("--degree", type=int, required=True)
    lm.add_argument("--index", type=int, default=1)

    rb = lat_sub.add_parser("rank-bound",
                            help="largest admissible pencil configuration")
    rb.add_argument("--genus", type=int, required=True)
    rb.add_argument("--degree", type=int, required=True)
    rb.add_argument("--mutual", type=int, default=2)

    dump = lat_sub.add_parser("dump", help="dump a builtin gram matrix "
                                           "as JSON")
    _add_lattice_source(dump)
    dump.set_defaults(lattice_cmd="dump")

    lat.set_defaults(func=cmd_lattice)
    dump.set_defaults(func=cmd_dump)

    con = commands.add_parser("construct",
                              help="run a seeded construction pipeline")
    con.add_argument("--genus", type=int, choices=(4, 6, 8), required=True)
    con.add_argument("--pencils", type=int,
                     help="pencil count: genus 4 -> 2, genus 6 -> 5, "
                          "genus 8 -> 1..6 or 9")
    con.add_argument("--experimental-pencils", type=int, metavar="N",
                     help="genus 8 only: seeded search for an N-pencil "
                          "secant configuration (N in 1..8); expected to "
                          "exhaust for N >= 7")
    con.add_argument("--field", type=int, metavar="P",
                     help="prime field size (default from config)")
    con.add_argument("--seed", type=int,
                     help="64-bit seed (default from config)")
    con.add_argument("--out", metavar="FILE",
                     help="also write the report JSON to FILE")
    con.set_defaults(func=cmd_construct)

    ver = commands.add_parser("verify",
                              help="replay a report from its stored seed")
    ver.add_argument("report", help="path to a construction report JSON")
    ver.set_defaults(func=cmd_verify)

    rep = commands.add_parser("report",
                              help="summarize a stored report file")
    rep.add_argument("report", help="path to a report JSON")
    rep.set_defaults(func=cmd_report)

    return parser


def _load_config(args) -> Config:
    cfg = Config.from_file(args.config) if args.config else DEFAULT
    if args.threads is not None:
        if args.threads < 1:
            raise ValueError("--threads must be >= 1")
        cfg = dataclasses.replace(cfg, threads=args.threads)
    return cfg


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _load_config(args)
    except (OSError, json.JSONDecodeError, ValueError, KeyError) as exc:
        return _fail(1, "config", str(exc))
    try:
        return args.func(args, cfg, parser)
    except RetryExhausted as exc:
        _emit({"schema": SCHEMA, "error": {"where": args.command,
                                           "detail": str(exc)},
               "exhausted": True},
              f"search exhausted: {exc}")
        return 3
    except SeedMismatch as exc:
        return _fail(2, args.command, str(exc))
    except (KeyError, FileNotFoundError) as exc:
        return _fail(1, args.command, str(exc))
    except HypothesisViolated as exc:
        return _fail(1, args.command, str(exc))
    except K3labError as exc:
        return _fail(1, args.command, str(exc))


if __name__ == "__main__":
    sys.exit(main())
