"""Command-line front end.

Conventions: JSON on stdout, human-readable notes on stderr; exit code 0 on
success, 1 when a verification run fails, 2 on invalid input.  All commands
are deterministic: identical inputs produce byte-identical stdout.
"""
from __future__ import annotations

import argparse
import itertools
import json
import math
import os
import random
import re
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from slimlat import extract, grid, groups, lattice, perm
from slimlat.perm import Permutation

ENUMERATION_CAP = 9
# per-check scale caps keeping `verify` desk-speed at large --n
PAIRWISE_CAP = 4
DIAGRAMS_CAP = 4
GROUPS_CAP = 4
RANDOM_SIZE_CAP = 10

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_permutation(text: str, n: int | None = None) -> Permutation:
    """Accepts one-line notation ("2,3,1") or cycles ("(1 2 3)(5 6 7)").

    Cycle input needs --n to mention trailing fixed points; otherwise the
    largest moved point sets the size.
    """
    text = text.strip()
    if "(" in text:
        if not re.fullmatch(r"(\s*\([^()]*\)\s*)+", text):
            raise ValueError(f"malformed cycle notation: {text!r}")
        cycles = []
        for body in _CYCLE_RE.findall(text):
            elems = [int(tok) for tok in re.split(r"[,\s]+", body.strip()) if tok]
            if elems:
                cycles.append(elems)
        flat = [x for c in cycles for x in c]
        if len(set(flat)) != len(flat):
            raise perm.DuplicateValue(f"cycles reuse a point: {text!r}")
        size = n if n is not None else max(flat, default=0)
        if any(not 1 <= x <= size for x in flat):
            raise perm.OutOfRange(f"cycle point outside 1..{size}")
        images = list(range(1, size + 1))
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                images[a - 1] = b
        return perm.validate(images)
    images = [int(tok) for tok in re.split(r"[,\s]+", text) if tok]
    if n is not None and n != len(images):
        raise ValueError(f"--n {n} does not match a permutation of size {len(images)}")
    return perm.validate(images)


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


def _note(msg: str) -> None:
    print(msg, file=sys.stderr)


def _segments_json(pi: Permutation) -> list[list[int]]:
    return [list(seg) for seg in perm.segments(pi).segments]


# -- commands --------------------------------------------------------------------

def cmd_build(args) -> int:
    pi = parse_permutation(args.perm, args.n)
    diagram = grid.phi0(pi)
    if args.format == "dot":
        print(lattice.to_dot(diagram.lattice), end="")
        return 0
    obj = lattice.diagram_to_json(diagram)
    obj["perm"] = list(pi.images)
    layout = grid.heuristic_layout(pi)
    obj["layout"] = [list(layout[x]) for x in range(diagram.lattice.size)]
    _emit(obj)
    _note(f"built a lattice with {diagram.lattice.size} elements, length {diagram.n}")
    return 0


def cmd_extract(args) -> int:
    with open(args.diagram, encoding="utf-8") as handle:
        obj = json.load(handle)
    diagram = lattice.diagram_from_json(obj)
    pi = extract.extract_permutation(diagram, verify=True)
    _emit({
        "permutation": list(pi.images),
        "cycles": pi.cycle_string(),
        "segments": _segments_json(pi),
        "rho_class_size": len(perm.rho_class(pi)),
    })
    _note(f"extracted {pi.cycle_string()} from {args.diagram}")
    return 0


def cmd_count(args) -> int:
    n = args.n
    if not 0 <= n <= ENUMERATION_CAP:
        raise ValueError(f"--n must be within 0..{ENUMERATION_CAP} (got {n})")
    rows = []
    for k in range(1, n + 1):
        if args.jobs > 1 and k >= 6:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                classes = sum(pool.map(_count_chunk, [(k, first) for first in range(1, k + 1)]))
        else:
            classes = perm.count_classes(k)
        rows.append({"n": k, "classes": classes, "factorial": math.factorial(k)})
    _emit({"counts": rows})
    for row in rows:
        _note(f"n={row['n']:>2}  classes={row['classes']:>8}  n!={row['factorial']}")
    return 0


def _count_chunk(task: tuple[int, int]) -> int:
    n, first = task
    return perm._count_canonical_with_first(n, first)


def cmd_group_realize(args) -> int:
    pi = parse_permutation(args.perm, args.n)
    primes = (tuple(int(tok) for tok in re.split(r"[,\s]+", args.primes.strip()) if tok)
              if args.primes else groups.first_primes(pi.n))
    inst = groups.csl_build(primes, pi)
    diagram = groups.csl_dual_diagram(inst)
    extracted = extract.extract_permutation(diagram, verify=True)
    if args.format == "dot":
        labels = {k: str(d) for k, d in enumerate(inst.elements)}
        print(lattice.to_dot(groups.csl_lattice(inst), labels, name="csl"), end="")
        print(lattice.to_dot(diagram.lattice, labels, name="csl_dual"), end="")
        return 0
    _emit({
        "primes": list(inst.primes),
        "perm": list(pi.images),
        "h_orders": list(inst.h_orders),
        "k_orders": list(inst.k_orders),
        "elements": list(inst.elements),
        "extracted": list(extracted.images),
        "jordan_holder": list(groups.jordan_holder_permutation(inst).images),
    })
    _note(f"realized {pi.cycle_string()} over the cyclic group of order {inst.group_order}")
    return 0


def cmd_render_grid(args) -> int:
    pi = parse_permutation(args.perm, args.n)
    if args.format == "dot":
        print(grid.grid_dot(pi), end="")
    elif args.format == "json":
        _emit({"n": pi.n, "cells": [[i, pi(i)] for i in range(1, pi.n + 1)]})
    else:
        print(grid.render_ascii(pi))
    return 0


def cmd_export_dot(args) -> int:
    with open(args.diagram, encoding="utf-8") as handle:
        obj = json.load(handle)
    print(lattice.to_dot(lattice.lattice_from_json(obj)), end="")
    return 0


# -- the verification suite --------------------------------------------------------

BUNDLE_CHECKS = ("round_trip", "formula_oracle", "source_cells_regenerate",
                 "structural", "narrows_segments")


def _check_bundle(task: tuple[int, tuple[int, ...]]) -> list[str]:
    """Per-permutation invariant bundle; returns the names of failed checks."""
    n, images = task
    pi = Permutation(images)
    g = grid.Grid(n)
    failures = []
    diagram = grid.phi0(pi)
    lat = diagram.lattice

    try:
        ok = extract.extract_permutation(diagram, verify=True) == pi
    except Exception:
        ok = False
    if not ok:
        failures.append("round_trip")

    kappa = grid.beta_from_perm(g, pi, check=False)
    if kappa != grid.beta_from_formula(g, pi):
        failures.append("formula_oracle")

    expected = frozenset(grid.GridCell(i, pi(i)) for i in range(1, n + 1))
    if grid.source_cells(kappa) != expected or grid.regenerate(kappa) != kappa:
        failures.append("source_cells_regenerate")

    boundary = diagram.boundary()
    structural = (
        lattice.is_slim(lat)
        and lattice.is_semimodular(lat)
        and lat.length == n
        and len(lattice.meet_irreducibles(lat)) == n
        and all(len(lat.upper_covers(x)) <= 2 for x in range(lat.size))
        and all(x in boundary for x in lattice.join_irreducibles(lat))
    )
    if not structural:
        failures.append("structural")

    heights = {lat.height[x] for x in lattice.narrows(lat)}
    if heights != {0} | set(perm.segments(pi).maxima()):
        failures.append("narrows_segments")
    return failures


def cmd_verify(args) -> int:
    started = time.perf_counter()
    n_max = args.n
    if n_max < 0:
        raise ValueError("--n must be nonnegative")
    checks: list[dict] = []

    tasks = [(k, images) for k in range(1, min(n_max, 7) + 1)
             for images in itertools.permutations(range(1, k + 1))]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            chunk = max(1, len(tasks) // (args.jobs * 8))
            failure_lists = list(pool.map(_check_bundle, tasks, chunksize=chunk))
    else:
        failure_lists = [_check_bundle(task) for task in tasks]
    for name in BUNDLE_CHECKS:
        bad = [task for task, fails in zip(tasks, failure_lists) if name in fails]
        checks.append({
            "name": name,
            "scale": min(n_max, 7),
            "passed": not bad,
            "details": (f"{len(tasks)} permutations checked" if not bad
                        else f"{len(bad)} failures, first at {bad[0]}"),
        })

    checks.append(_check_pairwise_iso(min(n_max, PAIRWISE_CAP)))
    checks.append(_check_diagram_counts(min(n_max, DIAGRAMS_CAP)))
    checks.append(_check_group_realization(min(n_max, GROUPS_CAP)))
    checks.append(_check_class_counts(min(n_max, ENUMERATION_CAP)))
    checks.append(_check_random_round_trip(n_max, args.seed))

    injected = os.environ.get("SLIMLAT_INJECT_FAULT")
    if injected:
        for check in checks:
            if check["name"] == injected:
                check["passed"] = False
                check["details"] = "injected fault (test mode)"

    passed = all(check["passed"] for check in checks)
    report = {
        "command": "verify",
        "inputs": {"n": n_max, "seed": args.seed, "jobs": args.jobs},
        "checks": checks,
        "passed": passed,
        "wall_time_s": round(time.perf_counter() - started, 3),
    }
    _emit(report)
    for check in checks:
        _note(f"{'PASS' if check['passed'] else 'FAIL'}  {check['name']}"
              f" (scale {check['scale']}): {check['details']}")
    return 0 if passed else 1


def _check_pairwise_iso(scale: int) -> dict:
    bad = total = 0
    for k in range(1, scale + 1):
        perms = list(perm.all_permutations(k))
        lattices = {p: grid.phi0(p).lattice for p in perms}
        for p, q in itertools.combinations_with_replacement(perms, 2):
            total += 1
            same = lattice.is_isomorphic(lattices[p], lattices[q])
            if same != perm.rho_equivalent(p, q):
                bad += 1
    return {"name": "pairwise_iso", "scale": scale, "passed": bad == 0,
            "details": f"{total} pairs compared" if bad == 0 else f"{bad} mismatches"}


def _check_diagram_counts(scale: int) -> dict:
    bad = total = 0
    for k in range(1, scale + 1):
        for p in perm.all_permutations(k):
            total += 1
            if extract.diagram_count(grid.phi0(p).lattice) != len(perm.rho_class(p)):
                bad += 1
    return {"name": "diagram_count", "scale": scale, "passed": bad == 0,
            "details": f"{total} lattices counted" if bad == 0 else f"{bad} mismatches"}


def _check_group_realization(scale: int) -> dict:
    bad = total = 0
    for k in range(1, scale + 1):
        primes = groups.first_primes(k)
        for p in perm.all_permutations(k):
            total += 1
            inst = groups.csl_build(primes, p)
            diagram = groups.csl_dual_diagram(inst)
            ok = (extract.extract_permutation(diagram, verify=True) == p
                  and groups.jordan_holder_permutation(inst) == p
                  and lattice.is_isomorphic(diagram.lattice, grid.phi0(p).lattice))
            if not ok:
                bad += 1
    return {"name": "group_realization", "scale": scale, "passed": bad == 0,
            "details": f"{total} instances realized" if bad == 0 else f"{bad} failures"}


def _check_class_counts(scale: int) -> dict:
    ok = True
    details = []
    for k in range(scale + 1):
        c = perm.count_classes(k)
        details.append(c)
        if c > math.factorial(k):
            ok = False
        if k <= 3:
            # independent route: group S_k by pairwise equivalence
            reps: list[Permutation] = []
            for p in perm.all_permutations(k):
                if not any(perm.rho_equivalent(p, r) for r in reps):
                    reps.append(p)
            if len(reps) != c:
                ok = False
    return {"name": "class_counts", "scale": scale, "passed": ok,
            "details": f"counts {details}"}


def _check_random_round_trip(n_max: int, seed: int) -> dict:
    rng = random.Random(seed)
    sizes = [k for k in (n_max + 1, n_max + 2) if k <= RANDOM_SIZE_CAP]
    bad = total = 0
    for k in sizes:
        for _ in range(5):
            images = list(range(1, k + 1))
            rng.shuffle(images)
            p = Permutation(tuple(images))
            total += 1
            if extract.extract_permutation(grid.phi0(p), verify=True) != p:
                bad += 1
    return {"name": "random_round_trip", "scale": max(sizes, default=n_max),
            "passed": bad == 0,
            "details": f"{total} random permutations (seed {seed})" if bad == 0
                       else f"{bad} failures"}


# -- entry point --------------------------------------------------------------------

def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="slimlat",
        description="Slim semimodular lattices and permutations: build grid "
                    "quotients, extract permutations from bordered diagrams, "
                    "count equivalence classes, and realize permutations over "
                    "cyclic groups.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="quotient lattice of a permutation")
    p.add_argument("--perm", required=True, help='one-line "2,3,1" or cycles "(1 2 3)"')
    p.add_argument("--n", type=int, default=None, help="domain size for cycle input")
    p.add_argument("--format", choices=["json", "dot"], default="json")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("extract", help="permutation of a bordered diagram")
    p.add_argument("--diagram", required=True, help="path to a diagram JSON file")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("count", help="equivalence classes of S_1..S_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("verify", help="run the invariant suite up to size n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0, help="seed for the randomized checks")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("group-realize",
                       help="composition series of a cyclic group realizing a permutation")
    p.add_argument("--perm", required=True)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--primes", default=None, help='e.g. "2,3,5" (default: first n primes)')
    p.add_argument("--format", choices=["json", "dot"], default="json")
    p.set_defaults(func=cmd_group_realize)

    p = sub.add_parser("render-grid", help="cell matrix of a permutation")
    p.add_argument("--perm", required=True)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--format", choices=["ascii", "json", "dot"], default="ascii")
    p.set_defaults(func=cmd_render_grid)

    p = sub.add_parser("export-dot", help="Graphviz source of a diagram JSON file")
    p.add_argument("--diagram", required=True)
    p.set_defaults(func=cmd_export_dot)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except RuntimeError as exc:
        print(f"verification failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
