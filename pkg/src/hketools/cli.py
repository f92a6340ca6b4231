"""Command-line entry point.

    hketools hke check FILE [--method brute|pairs|partition|all]
    hketools hke atoms FILE
    hketools hke gen --members M [--hke] --seed S
    hketools graph ke FILE
    hketools graph omega FILE
    hketools graph verify FILE [--search-cap K]

Exit status: 0 when the verdict passes, 1 when it fails, 2 on usage or
input errors.
"""

from __future__ import annotations

import argparse
import sys
import time
import warnings
from pathlib import Path

from . import formats
from .errors import HkeError, TheoremViolation
from .graph import (
    DEFAULT_SEARCH_CAP,
    independence,
    matching_number,
    omega_is_hke,
    verify_characterization,
)
from .hke import ORACLES, equivalence_audit, generate_hke
from .report import Report, digest
from .sets import atom_profile

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _load(path: str, parser):
    data = _read(path)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        obj = parser(data.decode())
    return obj, data, [str(w.message) for w in caught]


def _family_summary(F) -> dict:
    return {
        "ground": list(F.ground.labels),
        "members": [list(s.labels) for s in F.members],
    }


def cmd_hke_check(args) -> Report:
    F, data, warns = _load(args.file, formats.parse_setsystem)
    t0 = time.perf_counter()
    if args.method == "all":
        audit = equivalence_audit(F)
        result = {"family": _family_summary(F), **audit.to_dict(F, timing=False)}
        return Report("hke check --method all", digest(data), audit.holds, result, warns, audit.timings)
    verdict = ORACLES[args.method](F)
    result = {"family": _family_summary(F), **verdict.to_dict(F)}
    timing = {args.method: time.perf_counter() - t0}
    return Report(f"hke check --method {args.method}", digest(data), verdict.holds, result, warns, timing)


def cmd_hke_atoms(args) -> Report:
    F, data, warns = _load(args.file, formats.parse_setsystem)
    t0 = time.perf_counter()
    prof = atom_profile(F)
    cells = [{"signature": sig, "elements": list(cell.labels)} for sig, cell in prof.items()]
    result = {"family": _family_summary(F), "cells": cells}
    return Report("hke atoms", digest(data), True, result, warns, {"atoms": time.perf_counter() - t0})


def cmd_hke_gen(args) -> str:
    if args.hke:
        F = generate_hke(args.members, args.cell_bound, args.seed)
    else:
        F = formats.random_setsystem(args.members, args.ground_size, args.density, args.seed)
    return formats.render_setsystem(F)


def cmd_graph_ke(args) -> Report:
    G, data, warns = _load(args.file, formats.parse_graph)
    t0 = time.perf_counter()
    alpha = independence(G).alpha
    mu, M = matching_number(G)
    ke = alpha + mu == G.n
    result = {
        "n": G.n,
        "alpha": alpha,
        "mu": mu,
        "is_ke": ke,
        "matching": [list(e) for e in M.labels()],
    }
    return Report("graph ke", digest(data), ke, result, warns, {"ke": time.perf_counter() - t0})


def cmd_graph_omega(args) -> Report:
    G, data, warns = _load(args.file, formats.parse_graph)
    t0 = time.perf_counter()
    omega = independence(G)
    verdict = omega_is_hke(G, omega)
    result = {
        "alpha": omega.alpha,
        "omega": [list(s.labels) for s in omega.family.members],
        "hke": verdict.to_dict(omega.family),
    }
    return Report("graph omega", digest(data), verdict.holds, result, warns, {"omega": time.perf_counter() - t0})


def cmd_graph_verify(args) -> Report:
    G, data, warns = _load(args.file, formats.parse_graph)
    t0 = time.perf_counter()
    rep = verify_characterization(G, search_cap=args.search_cap)
    return Report(
        "graph verify", digest(data), rep.is_ke, rep.to_dict(), warns, {"verify": time.perf_counter() - t0}
    )


def build_parser() -> argparse.ArgumentParser:
    out = argparse.ArgumentParser(add_help=False)
    out.add_argument("--json", action="store_true", help="emit the structured report as JSON")
    out.add_argument("--no-timing", action="store_true", help="omit timing from the report")

    p = argparse.ArgumentParser(prog="hketools", description=__doc__.split("\n\n")[0])
    top = p.add_subparsers(dest="group", required=True)

    hke = top.add_parser("hke", help="set-system checks").add_subparsers(dest="cmd", required=True)
    c = hke.add_parser("check", parents=[out])
    c.add_argument("file")
    c.add_argument("--method", choices=[*ORACLES, "all"], default="all")
    c.set_defaults(func=cmd_hke_check)
    a = hke.add_parser("atoms", parents=[out])
    a.add_argument("file")
    a.set_defaults(func=cmd_hke_atoms)
    g = hke.add_parser("gen")
    g.add_argument("--members", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--hke", action="store_true", help="generate an HKE family")
    g.add_argument("--cell-bound", type=int, default=2)
    g.add_argument("--ground-size", type=int, default=8)
    g.add_argument("--density", type=float, default=0.5)
    g.set_defaults(func=cmd_hke_gen)

    graph = top.add_parser("graph", help="graph checks").add_subparsers(dest="cmd", required=True)
    for name, func in [("ke", cmd_graph_ke), ("omega", cmd_graph_omega), ("verify", cmd_graph_verify)]:
        s = graph.add_parser(name, parents=[out])
        s.add_argument("file")
        s.set_defaults(func=func)
        if name == "verify":
            s.add_argument("--search-cap", type=int, default=DEFAULT_SEARCH_CAP)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_PASS
    try:
        out = args.func(args)
    except TheoremViolation:
        raise
    except (UsageError, HkeError, ValueError, KeyError) as e:
        print(f"hketools: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    if isinstance(out, str):
        sys.stdout.write(out)
        return EXIT_PASS
    for w in out.warnings:
        print(f"hketools: warning: {w}", file=sys.stderr)
    timing = not args.no_timing
    sys.stdout.write(out.to_json(timing) if args.json else out.to_text(timing))
    return EXIT_PASS if out.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
