"""Command-line front end.

Reports go to standard output as JSON (``--human`` for plain text).  Exit
status is 0 on success, 1 when a verification or computation fails and 2 on
usage errors (bad arguments, unreadable or malformed input).

Wherever a file is expected, the id of an embedded dataset (``a22_4_pos``,
``a22_4_neg``, ``a26_4``, ``a23_4``) is accepted as well.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from collections import Counter
from pathlib import Path
from typing import Any, Sequence

from . import search as search_mod
from .arrangement import Arrangement, census, dual, find_nk
from .datasets import DATASETS, load_dataset
from .matroid import Rank3Matroid, automorphism_group, canonical_label, is_isomorphic, matroid_of, permutation_order
from .projective import LINE
from .realization import (
    REALIZED,
    Budget,
    discriminant_squarefree_part,
    first_violation,
    galois_classify,
    realize,
    verify_realization,
)
from .render import RenderError, RenderSpec, render_svg
from .serialize import (
    arrangement_from_json,
    arrangement_to_json,
    census_to_json,
    configuration_to_json,
    field_from_json,
    field_to_json,
    profile_key,
    triple_from_json,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- input


def _read_json(arg: str) -> Any:
    path = Path(arg)
    if not path.exists():
        raise UsageError(f"{arg}: no such file or dataset")
    try:
        return json.loads(path.read_text())
    except json.JSONDecodeError as e:
        raise UsageError(f"{arg}: invalid JSON ({e})") from None


def _arrangement_obj(obj: Any) -> dict | None:
    # realization reports carry their lines under "coordinates"
    if not isinstance(obj, dict) or "field" not in obj:
        return None
    if "lines" in obj:
        return obj
    if "coordinates" in obj:
        return {"field": obj["field"], "lines": obj["coordinates"]}
    return None


def load_arrangement(arg: str) -> Arrangement:
    """A dataset id, an arrangement file or a realization report."""
    if arg in DATASETS and not Path(arg).exists():
        return load_dataset(arg)
    obj = _arrangement_obj(_read_json(arg))
    if obj is None:
        raise UsageError(f"{arg}: expected an arrangement with 'field' and 'lines'")
    try:
        return arrangement_from_json(obj)
    except (ValueError, KeyError, TypeError) as e:
        raise UsageError(f"{arg}: {e}") from None


def load_matroid(arg: str) -> Rank3Matroid:
    """A matroid file, a search result, an arrangement, a realization or a dataset id."""
    if arg in DATASETS and not Path(arg).exists():
        return matroid_of(load_dataset(arg))
    obj = _read_json(arg)
    if isinstance(obj, dict) and "matroid" in obj:
        obj = obj["matroid"]
    try:
        if isinstance(obj, dict) and "flats" in obj:
            return Rank3Matroid.from_json(obj)
        if _arrangement_obj(obj) is not None:
            return matroid_of(arrangement_from_json(_arrangement_obj(obj)))
    except (ValueError, KeyError, TypeError) as e:
        raise UsageError(f"{arg}: {e}") from None
    raise UsageError(f"{arg}: expected a matroid {{'n', 'flats'}} or an arrangement")


def load_coordinates(arg: str) -> list:
    """Coordinate triples from a realization report or an arrangement file."""
    obj = _read_json(arg)
    if not isinstance(obj, dict) or "field" not in obj:
        raise UsageError(f"{arg}: expected a field descriptor")
    items = obj.get("coordinates", obj.get("lines"))
    if items is None:
        raise UsageError(f"{arg}: expected 'coordinates' or 'lines'")
    try:
        F = field_from_json(obj["field"])
        return [triple_from_json(F, t, LINE).coords for t in items]
    except (ValueError, KeyError, TypeError) as e:
        raise UsageError(f"{arg}: {e}") from None


# ---------------------------------------------------------------- reports


def _profiles(A: Arrangement, cen=None) -> dict:
    cen = cen or census(A)
    return dict(Counter(profile_key(p) for p in cen.profiles()))


def export_dataset(dataset_id: str) -> dict:
    d = DATASETS[dataset_id]
    A = d.arrangement()
    out = {"id": d.id, "description": d.description}
    out.update(arrangement_to_json(A))
    out["expected"] = {k: ({str(a): b for a, b in v.items()} if isinstance(v, dict) else v) for k, v in d.expected.items()}
    return out


def verify_dataset(A: Arrangement, expected: dict) -> dict:
    """Fresh census of A checked against the recorded metadata."""
    cen = census(A)
    mult = cen.multiplicity_counts()
    profiles = _profiles(A, cen)
    checks: dict[str, bool] = {"double_counting": cen.satisfies_double_counting()}
    if "lines" in expected:
        checks["lines"] = len(A) == int(expected["lines"])
    if "multiplicities" in expected:
        want = {int(k): int(v) for k, v in expected["multiplicities"].items()}
        checks["multiplicities"] = mult == want
    if "line_profiles" in expected:
        checks["line_profiles"] = profiles == {str(k): int(v) for k, v in expected["line_profiles"].items()}
    if "quadruple_points" in expected:
        checks["quadruple_points"] = cen.count(4) == int(expected["quadruple_points"])
    report: dict = {
        "lines": len(A),
        "multiplicities": {str(m): c for m, c in mult.items()},
        "quadruple_points": cen.count(4),
        "line_profiles": profiles,
    }
    if "nk" in expected:
        k = int(expected["nk"])
        found = find_nk(A, k, cen=cen)
        checks["nk_configuration"] = bool(found) and found[0].is_valid() and found[0].n == len(A)
        report["nk"] = {"k": k, "found": bool(found)}
    report["checks"] = checks
    report["ok"] = all(checks.values())
    return report


def _human(obj: Any, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not _flat_list(v):
                lines.append(f"{pad}{k}:")
                lines.append(_human(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar_text(v)}")
        return "\n".join(lines)
    if isinstance(obj, list):
        return "\n".join(
            (_human(v, indent + 1) if isinstance(v, dict) else f"{pad}- {_scalar_text(v)}") for v in obj
        )
    return pad + _scalar_text(obj)


def _flat_list(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v) and len(v) <= 12


def _scalar_text(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, list):
        return ", ".join(map(str, v)) if v else "(none)"
    if isinstance(v, dict):
        return "(none)"
    return str(v)


# ---------------------------------------------------------------- commands


def cmd_verify_dataset(args) -> tuple[int, Any]:
    if args.dataset in DATASETS and not Path(args.dataset).exists():
        A = load_dataset(args.dataset)
        expected = {k: v for k, v in DATASETS[args.dataset].expected.items()}
        name = args.dataset
    else:
        obj = _read_json(args.dataset)
        if not isinstance(obj, dict) or "expected" not in obj:
            raise UsageError(f"{args.dataset}: not an exported dataset (missing 'expected')")
        try:
            A = arrangement_from_json(obj)
        except ValueError as e:
            return EXIT_FAIL, {"dataset": obj.get("id", args.dataset), "ok": False, "error": str(e)}
        expected = obj["expected"]
        name = obj.get("id", args.dataset)
    report = {"dataset": name}
    report.update(verify_dataset(A, expected))
    return (EXIT_OK if report["ok"] else EXIT_FAIL), report


def cmd_export_dataset(args) -> tuple[int, Any]:
    if args.dataset not in DATASETS:
        raise UsageError(f"unknown dataset {args.dataset!r}; known: {', '.join(DATASETS)}")
    out = export_dataset(args.dataset)
    if args.output:
        Path(args.output).write_text(json.dumps(out, indent=2) + "\n")
        return EXIT_OK, {"dataset": args.dataset, "written": args.output}
    return EXIT_OK, out


def cmd_census(args) -> tuple[int, Any]:
    return EXIT_OK, census_to_json(census(load_arrangement(args.file)))


def cmd_profile(args) -> tuple[int, Any]:
    A = load_arrangement(args.file)
    cen = census(A)
    per_line = [profile_key(p) for p in cen.profiles()]
    return EXIT_OK, {"lines": len(A), "profiles": dict(Counter(per_line)), "per_line": per_line}


def cmd_find_nk(args) -> tuple[int, Any]:
    A = load_arrangement(args.file)
    found = find_nk(A, args.k, all_solutions=args.all)
    report = {"k": args.k, "count": len(found), "configurations": [configuration_to_json(C) for C in found]}
    return (EXIT_OK if found else EXIT_FAIL), report


def cmd_dual(args) -> tuple[int, Any]:
    A = load_arrangement(args.file)
    found = find_nk(A, args.k)
    if not found:
        return EXIT_FAIL, {"error": f"no ({len(A)}_{args.k}) configuration to dualize"}
    D = dual(found[0])
    return EXIT_OK, {"k": args.k, "profiles": _profiles(D), "arrangement": arrangement_to_json(D)}


def cmd_matroid(args) -> tuple[int, Any]:
    M = load_matroid(args.file)
    out = M.to_json()
    out["canonical_key"] = canonical_label(M).hex
    return EXIT_OK, out


def cmd_isomorphic(args) -> tuple[int, Any]:
    M1, M2 = load_matroid(args.m1), load_matroid(args.m2)
    iso = is_isomorphic(M1, M2)
    return (EXIT_OK if iso else EXIT_FAIL), {"isomorphic": iso}


def cmd_automorphisms(args) -> tuple[int, Any]:
    G = automorphism_group(load_matroid(args.m))
    out: dict = {"order": G.order, "generators": [list(g) for g in G.generators]}
    if G.order <= 5040:
        out["element_orders"] = dict(sorted(Counter(permutation_order(g) for g in G.elements()).items()))
        out["element_orders"] = {str(k): v for k, v in out["element_orders"].items()}
    return EXIT_OK, out


def cmd_search(args) -> tuple[int, Any]:
    if args.nk:
        m, k = args.nk
        prop = search_mod.PropertyP.nk_candidate(m, k)
    else:
        prop = search_mod.PropertyP.min_quadruple_points(args.min_quad)
    if args.forced_quads:
        strategy = search_mod.SeedStrategy(search_mod.FORCED_QUADS, args.forced_quads)
    else:
        strategy = search_mod.SeedStrategy()
    try:
        spec = search_mod.SearchSpec(
            q=args.q,
            n=args.order,
            seed_size=args.seed_size,
            prop=prop,
            strategy=strategy,
            target_lines=args.target_lines,
            mode=args.mode,
            max_seeds=args.limit_seeds,
            max_subgroups=args.max_subgroups,
            time_budget=args.time_budget,
            rng_seed=args.rng_seed,
        )
        outcome = search_mod.run(spec, workers=args.workers)
    except ValueError as e:
        raise UsageError(str(e)) from None
    text = outcome.jsonl()
    if args.output:
        Path(args.output).write_text(text)
    summary = {"spec": spec.to_json(), "truncated": outcome.truncated, "stats": outcome.stats}
    if args.output or args.human:
        return EXIT_OK, summary
    # JSON-lines on stdout, one result per line; the summary goes to stderr
    sys.stdout.write(text)
    print(json.dumps(summary), file=sys.stderr)
    return EXIT_OK, None


def cmd_realize(args) -> tuple[int, Any]:
    M = load_matroid(args.m)
    res = realize(M, Budget(seconds=args.time_budget))
    out = res.to_json()
    if res.status == REALIZED:
        out["discriminant_squarefree_part"] = discriminant_squarefree_part(res.field)
        out["embeddings"] = galois_classify(res)
        if not verify_realization(M, res.coordinates):
            return EXIT_FAIL, out
    if args.output:
        Path(args.output).write_text(json.dumps(out, indent=2) + "\n")
    return EXIT_OK, out


def cmd_verify(args) -> tuple[int, Any]:
    M = load_matroid(args.matroid)
    coords = load_coordinates(args.coords)
    if len(coords) != M.n:
        return EXIT_FAIL, {"realizes": False, "error": f"{len(coords)} triples for {M.n} elements"}
    ok = verify_realization(M, coords)
    out: dict = {"realizes": ok}
    if not ok:
        out["violation"] = first_violation(M, coords)
    return (EXIT_OK if ok else EXIT_FAIL), out


def cmd_render(args) -> tuple[int, Any]:
    A = load_arrangement(args.file)
    spec = RenderSpec(width=args.size, height=args.size, chart=args.chart)
    try:
        drawing = render_svg(A, spec)
    except RenderError as e:
        return EXIT_FAIL, {"error": str(e)}
    drawing.write(args.output)
    return EXIT_OK, {
        "written": args.output,
        "segments": len(drawing.segments),
        "circles": len(drawing.circles),
        "chart": list(drawing.chart),
        "max_incidence_error": drawing.max_incidence_error,
    }


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--human", action="store_true", help="plain-text output instead of JSON")
    common.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")

    p = argparse.ArgumentParser(prog="arrangements", description="Line arrangements, configurations and matroids.")
    sub = p.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    def add(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_, description=help_)
        sp.set_defaults(func=func)
        return sp

    sp = add("verify-dataset", cmd_verify_dataset, "recompute and check an embedded or exported dataset")
    sp.add_argument("dataset", help="dataset id or exported dataset file")
    sp = add("export-dataset", cmd_export_dataset, "write an embedded dataset as JSON")
    sp.add_argument("dataset")
    sp.add_argument("-o", "--output")
    sp = add("census", cmd_census, "intersection points with multiplicities")
    sp.add_argument("file")
    sp = add("profile", cmd_profile, "per-line multiplicity profiles")
    sp.add_argument("file")
    sp = add("find-nk", cmd_find_nk, "find (n_k) configurations among census points")
    sp.add_argument("file")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--all", action="store_true", help="list every configuration, not just the first")
    sp = add("dual", cmd_dual, "dual arrangement of the (n_k) configuration")
    sp.add_argument("file")
    sp.add_argument("--k", type=int, default=4)
    sp = add("matroid", cmd_matroid, "rank-3 matroid and canonical key")
    sp.add_argument("file")
    sp = add("isomorphic", cmd_isomorphic, "test two matroids for isomorphism")
    sp.add_argument("m1")
    sp.add_argument("m2")
    sp = add("automorphisms", cmd_automorphisms, "automorphism group of a matroid")
    sp.add_argument("m")

    sp = add("search", cmd_search, "orbit search over PGL_3(F_q) subgroups")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--order", type=int, required=True, help="subgroup order")
    sp.add_argument("--seed-size", type=int, required=True)
    sp.add_argument("--target-lines", type=int)
    prop = sp.add_mutually_exclusive_group()
    prop.add_argument("--min-quad", type=int, default=1, help="at least this many quadruple points")
    prop.add_argument("--nk", type=int, nargs=2, metavar=("M", "K"), help="(M_K) candidate arrangements")
    sp.add_argument("--forced-quads", type=int, default=0, help="random seeds with this many forced quadruple points")
    sp.add_argument("--limit-seeds", type=int, default=100)
    sp.add_argument("--max-subgroups", type=int, default=1000)
    sp.add_argument("--time-budget", type=float, default=60.0)
    sp.add_argument("--rng-seed", type=int, default=0)
    sp.add_argument("--mode", choices=["exhaustive", "generated-pairs"], default="exhaustive")
    sp.add_argument("--workers", type=int, help="worker processes (default from ARRANGE_THREADS)")
    sp.add_argument("-o", "--output", help="write results as JSON lines to this file")

    sp = add("realize", cmd_realize, "coordinates realizing a matroid, or a proof that none exist")
    sp.add_argument("m")
    sp.add_argument("--time-budget", type=float, default=120.0)
    sp.add_argument("-o", "--output")
    sp = add("verify", cmd_verify, "check coordinates against a matroid")
    sp.add_argument("--matroid", required=True)
    sp.add_argument("--coords", required=True)
    sp = add("render", cmd_render, "draw a real arrangement as SVG")
    sp.add_argument("file")
    sp.add_argument("-o", "--output", required=True)
    sp.add_argument("--size", type=int, default=600)
    sp.add_argument("--chart", type=int, choices=[0, 1, 2], default=2)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        code, report = args.func(args)
    except UsageError as e:
        print(f"{parser.prog} {args.command}: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    if report is not None:
        print(_human(report) if args.human else json.dumps(report, indent=2))
    return code


if __name__ == "__main__":
    sys.exit(main())
