"""Command-line front door: load system and element files, run checks,
decompositions, equivalence decisions, cardinality reports, and brute-force
verification.  Output is deterministic JSON (stable key order) or a plain
text rendering of the same structure.

Exit codes: 0 success / true / equivalent, 1 false / inequivalent (with a
certificate in the report), 2 input or schema error.
"""

from __future__ import annotations

import argparse
import json
import sys
from random import Random

from .coherent import (
    Planted,
    check_coherence,
    check_eq_recurrences,
    default_horizon,
    restriction_stability,
)
from .decomp import decompose, equiv_decide, quotient_card_report
from .oracle import truncate, universe_for
from .sampling import random_planted
from .system import SchemaError, System


def load_system(path: str) -> System:
    with open(path, "r", encoding="utf-8") as handle:
        try:
            obj = json.load(handle)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"{path}: invalid JSON: {exc}") from exc
    try:
        return System.from_json(obj)
    except SchemaError as exc:
        raise SchemaError(f"{path}: {exc}") from exc


def load_element(path: str, system: System) -> Planted:
    with open(path, "r", encoding="utf-8") as handle:
        try:
            obj = json.load(handle)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"{path}: invalid JSON: {exc}") from exc
    try:
        return Planted.from_json(obj, system)
    except ValueError as exc:
        raise SchemaError(f"{path}: {exc}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="invsys",
        description="exact computations in inverse systems of free Z/m-modules over a tree",
    )
    parser.add_argument("--system", required=True, help="path to a system file")
    parser.add_argument(
        "--element", action="append", default=[], help="path to an element file (repeatable)"
    )
    parser.add_argument(
        "--cmd", required=True,
        choices=["check", "decompose", "equiv", "card", "oracle-verify"],
    )
    parser.add_argument("--horizon", type=int, default=None, help="check horizon (>= 3)")
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized suites")
    parser.add_argument("--format", choices=["json", "text"], default="json")
    return parser


def _run_check(system: System, elements, paths, horizon):
    reports = []
    ok = True
    for path, elem in zip(paths, elements):
        h = horizon if horizon is not None else default_horizon(elem)
        coherent = check_coherence(elem, h)
        eq = check_eq_recurrences(elem, h)
        stable = all(
            restriction_stability(elem, i, j, k)
            for i in range(h) for j in range(i + 1, h) for k in range(j + 1, h)
        )
        entry_ok = coherent and eq.ok and stable
        ok = ok and entry_ok
        reports.append({
            "element": path,
            "horizon": h,
            "coherent": coherent,
            "eq_recurrences": eq.to_json(),
            "restriction_stable": stable,
            "ok": entry_ok,
        })
    return {"command": "check", "elements": reports, "ok": ok}, 0 if ok else 1


def _run_decompose(system: System, elements, paths, horizon):
    if len(elements) != 1:
        raise SchemaError("decompose needs exactly one --element")
    dec = decompose(elements[0])
    report = {"command": "decompose", "element": paths[0]}
    report.update(dec.to_json())
    return report, 0


def _run_equiv(system: System, elements, paths, horizon):
    if len(elements) != 2:
        raise SchemaError("equiv needs exactly two --element files")
    equivalent, certificate = equiv_decide(elements[0], elements[1])
    kind = "witness" if equivalent else "decomposition"
    report = {
        "command": "equiv",
        "elements": list(paths),
        "equivalent": equivalent,
        "certificate": {"kind": kind, **certificate.to_json()},
    }
    return report, 0 if equivalent else 1


def _run_card(system: System, elements, paths, horizon):
    report = {"command": "card"}
    report.update(quotient_card_report(system))
    return report, 0


def _run_oracle_verify(system: System, elements, paths, horizon, seed):
    height = horizon if horizon is not None else 6
    labels = list(paths)
    if not elements:
        rng = Random(seed)
        elements = [
            random_planted(system, rng, level_cap=min(3, height - 2), index_cap=height - 1)
            for _ in range(20)
        ]
        labels = [f"random-{n}" for n in range(len(elements))]
    failures = []
    for label, elem in zip(labels, elements):
        try:
            trunc = truncate(system, height, universe_for(system, [elem], height))
        except ValueError as exc:
            failures.append({"element": label, "kind": "truncation", "detail": str(exc)})
            continue
        if not trunc.agreement(elem):
            failures.append({"element": label, "kind": "agreement", "detail": "tables differ"})
        table = trunc.primary_table(elem)
        if not trunc.table_coherent(table):
            failures.append({"element": label, "kind": "coherence", "detail": "table incoherent"})
            continue
        try:
            trunc.solve_coboundary(table)
        except (ValueError, AssertionError) as exc:
            failures.append({"element": label, "kind": "solve", "detail": str(exc)})
    report = {
        "command": "oracle-verify",
        "height": height,
        "seed": seed,
        "checked": len(elements),
        "failures": failures,
    }
    return report, 0 if not failures else 1


def _render_text(report, indent: int = 0) -> list[str]:
    lines = []
    pad = "  " * indent
    if isinstance(report, dict):
        for key in sorted(report):
            value = report[key]
            if isinstance(value, (dict, list)):
                lines.append(f"{pad}{key}:")
                lines.extend(_render_text(value, indent + 1))
            else:
                lines.append(f"{pad}{key}: {value}")
    elif isinstance(report, list):
        if not report:
            lines.append(f"{pad}(none)")
        for item in report:
            if isinstance(item, (dict, list)):
                lines.append(f"{pad}-")
                lines.extend(_render_text(item, indent + 1))
            else:
                lines.append(f"{pad}- {item}")
    return lines


def _emit(report, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(report, sort_keys=True, indent=2))
    else:
        print("\n".join(_render_text(report)))


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.horizon is not None and args.horizon < 3:
        _emit({"error": "horizon must be at least 3"}, args.format)
        return 2
    try:
        system = load_system(args.system)
        elements = [load_element(path, system) for path in args.element]
        if args.cmd == "check":
            if not elements:
                raise SchemaError("check needs at least one --element")
            report, code = _run_check(system, elements, args.element, args.horizon)
        elif args.cmd == "decompose":
            report, code = _run_decompose(system, elements, args.element, args.horizon)
        elif args.cmd == "equiv":
            report, code = _run_equiv(system, elements, args.element, args.horizon)
        elif args.cmd == "card":
            report, code = _run_card(system, elements, args.element, args.horizon)
        else:
            report, code = _run_oracle_verify(
                system, elements, args.element, args.horizon, args.seed
            )
    except (SchemaError, OSError) as exc:
        _emit({"error": str(exc)}, args.format)
        return 2
    except ValueError as exc:
        _emit({"error": str(exc)}, args.format)
        return 2
    _emit(report, args.format)
    return code


if __name__ == "__main__":
    sys.exit(main())
