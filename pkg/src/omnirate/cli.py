"""Command-line interface.

Commands: validate, minrate, core, allocate, polyhedron. Reports are JSON
(default) or CSV, printed to stdout; every rational appears as an exact
lowest-terms string plus a float convenience value.

Exit codes:
  0  success
  1  I/O, parse, or usage error (bad file, bad flag values, bad rationals)
  2  model fails the entropy-function validation
  3  core is empty at the requested sum-rate
  4  inapplicable mode (integer enumeration on a fractional game, size guard)
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import time
from fractions import Fraction
from typing import Sequence

from . import __version__
from .allocation import (
    Allocation,
    CoreEmptyError,
    IntegralityError,
    enumerate_integer_core,
    fairness_compare,
    greedy_vertex,
    greedy_vertices,
    jain_index,
    shapley,
)
from .combinatorics import Partition, subsets
from .dilworth import convex_characteristic, dilworth_truncate
from .game import Game, RateVector, dual_membership, in_core
from .models import (
    InvalidModelError,
    ModelFormatError,
    SourceModel,
    load_model,
    model_digest,
    validate_polymatroid,
)
from .rationals import format_rational, parse_rational
from .sumrate import (
    core_nonempty,
    min_sum_rate_asymptotic,
    min_sum_rate_non_asymptotic,
    mmi,
)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INVALID_MODEL = 2
EXIT_CORE_EMPTY = 3
EXIT_INAPPLICABLE = 4

DEFAULT_MAX_USERS = 12


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _q(x: Fraction) -> dict:
    return {"rational": format_rational(x), "decimal": float(x)}


def _qv(rates) -> dict:
    rates = list(rates)
    return {
        "rational": [format_rational(r) for r in rates],
        "decimal": [float(r) for r in rates],
    }


def _partition_json(model: SourceModel, part: Partition) -> list[list[str]]:
    return [list(model.ids_from_mask(b)) for b in part.blocks]


def _subset_json(model: SourceModel, mask: int) -> list[str]:
    return list(model.ids_from_mask(mask))


def _allocation_json(model: SourceModel, alloc: Allocation) -> dict:
    return {
        "method": alloc.method,
        "order": [model.users[i] for i in alloc.order] if alloc.order is not None else None,
        "rates": _qv(alloc.rates),
        "jain": _q(alloc.jain) if alloc.jain is not None else None,
    }


def _load(args) -> SourceModel:
    try:
        model = load_model(args.model, validate=True)
    except InvalidModelError as exc:
        raise CliError(EXIT_INVALID_MODEL, str(exc)) from exc
    except ModelFormatError as exc:
        raise CliError(EXIT_INPUT, str(exc)) from exc
    guard = int(os.environ.get("OMNI_MAX_USERS", DEFAULT_MAX_USERS))
    if model.n > guard:
        raise CliError(
            EXIT_INAPPLICABLE,
            f"model has {model.n} users, above the OMNI_MAX_USERS guard ({guard}); "
            "the algorithms here are exponential by design",
        )
    return model


def _parse_alpha(text: str) -> Fraction:
    try:
        alpha = parse_rational(text)
    except ValueError as exc:
        raise CliError(EXIT_INPUT, f"bad --alpha: {exc}") from exc
    if alpha < 0:
        raise CliError(EXIT_INPUT, f"--alpha must be nonnegative, got {text}")
    return alpha


def _parse_rates(model: SourceModel, text: str) -> RateVector:
    parts = text.split(",")
    if len(parts) != model.n:
        raise CliError(
            EXIT_INPUT, f"--rates has {len(parts)} entries for {model.n} users"
        )
    try:
        return RateVector(tuple(parse_rational(p) for p in parts))
    except ValueError as exc:
        raise CliError(EXIT_INPUT, f"bad --rates: {exc}") from exc


def _parse_order(model: SourceModel, text: str) -> tuple[int, ...]:
    ids = [p.strip() for p in text.split(",")]
    if sorted(ids) != sorted(model.users):
        raise CliError(
            EXIT_INPUT,
            f"--order must be a permutation of the users {','.join(model.users)}",
        )
    return tuple(model.index_of(u) for u in ids)


def _report(command: str, model: SourceModel, inputs: dict) -> dict:
    # timing_ms is filled in by each command just before returning
    return {
        "command": command,
        "model_digest": model_digest(model),
        "inputs": inputs,
        "results": {},
        "certificates": {},
        "timing_ms": None,
    }


def _echo_inputs(args, **extra) -> dict:
    base = {"model": args.model, "format": args.format}
    if getattr(args, "seed", None) is not None:
        base["seed"] = args.seed
    if getattr(args, "parallel", None) not in (None, 1):
        base["parallel"] = args.parallel
    base.update(extra)
    return base


def cmd_validate(args) -> tuple[dict, int]:
    started = time.perf_counter()
    try:
        model = load_model(args.model, validate=False)
    except ModelFormatError as exc:
        raise CliError(EXIT_INPUT, str(exc)) from exc
    guard = int(os.environ.get("OMNI_MAX_USERS", DEFAULT_MAX_USERS))
    if model.n > guard:
        raise CliError(
            EXIT_INAPPLICABLE,
            f"model has {model.n} users, above the OMNI_MAX_USERS guard ({guard})",
        )
    report = validate_polymatroid(model)
    out = _report("validate", model, _echo_inputs(args))
    out["results"] = {
        "valid": report.ok,
        "model_type": model.kind,
        "users": list(model.users),
        "unit": model.unit,
        "violations": [
            {
                "kind": v.kind,
                "sets": [_subset_json(model, m) for m in v.sets],
                "detail": v.detail,
            }
            for v in report.violations
        ],
    }
    out["timing_ms"] = round((time.perf_counter() - started) * 1000.0, 3)
    return out, EXIT_OK if report.ok else EXIT_INVALID_MODEL


def cmd_minrate(args) -> tuple[dict, int]:
    started = time.perf_counter()
    model = _load(args)
    if args.mode == "asymptotic":
        rep = min_sum_rate_asymptotic(model)
        identity = rep.h_total - rep.mmi
    else:
        rep = min_sum_rate_non_asymptotic(model)
        identity = rep.h_total - math.floor(rep.mmi)
    mmi_res = mmi(model)
    out = _report("minrate", model, _echo_inputs(args, mode=args.mode))
    out["results"] = {
        "mode": args.mode,
        "r_co": _q(rep.r_co),
        "mmi": _q(rep.mmi),
        "h_total": _q(rep.h_total),
        "h_total_minus_mmi": _q(identity),
        "identity_holds": identity == rep.r_co,
        "flags": list(rep.flags),
    }
    out["certificates"] = {
        "argmax_partition": _partition_json(model, rep.argmax_partition),
        "mmi_partition": _partition_json(model, mmi_res.partition),
    }
    out["timing_ms"] = round((time.perf_counter() - started) * 1000.0, 3)
    return out, EXIT_OK


def cmd_core(args) -> tuple[dict, int]:
    started = time.perf_counter()
    model = _load(args)
    alpha = _parse_alpha(args.alpha)
    game = Game(model, alpha)
    inputs = _echo_inputs(args, alpha=args.alpha, rates=args.rates, integer=args.integer)
    out = _report("core", model, inputs)
    if args.rates is None:
        status = core_nonempty(game)
        out["results"] = {
            "alpha": _q(alpha),
            "nonempty": status.nonempty,
            "partition_min": _q(status.partition_min),
        }
        out["certificates"] = {
            "min_partition": _partition_json(model, status.certificate),
        }
        code = EXIT_OK if status.nonempty else EXIT_CORE_EMPTY
    else:
        r = _parse_rates(model, args.rates)
        decision = in_core(game, r, integer_mode=args.integer)
        dual = dual_membership(game, r) if r.total() == alpha else None
        out["results"] = {
            "alpha": _q(alpha),
            "rates": _qv(r),
            "member": decision.holds,
            "integer_mode": args.integer,
            "dual_form_member": dual.holds if dual is not None else None,
        }
        if not decision.holds:
            out["certificates"]["witness"] = {
                "kind": decision.kind,
                "subset": _subset_json(model, decision.witness)
                if decision.kind in ("coalition", "sum", "upper")
                else model.users[decision.witness],
                "detail": decision.detail,
            }
        code = EXIT_OK
    out["timing_ms"] = round((time.perf_counter() - started) * 1000.0, 3)
    return out, code


def cmd_allocate(args) -> tuple[dict, int]:
    started = time.perf_counter()
    model = _load(args)
    alpha = _parse_alpha(args.alpha)
    game = Game(model, alpha)
    inputs = _echo_inputs(args, alpha=args.alpha, method=args.method, order=args.order)
    out = _report("allocate", model, inputs)
    out["results"]["alpha"] = _q(alpha)
    out["results"]["method"] = args.method

    def core_empty_payload() -> int:
        r_co = min_sum_rate_asymptotic(model).r_co
        out["results"]["core_empty"] = True
        out["results"]["r_co"] = _q(r_co)
        out["results"]["detail"] = (
            f"core is empty at alpha={format_rational(alpha)}; "
            f"minimum sum-rate is {format_rational(r_co)}"
        )
        return EXIT_CORE_EMPTY

    code = EXIT_OK
    if args.method in ("shapley", "greedy"):
        trunc = dilworth_truncate(game)
        try:
            if args.method == "shapley":
                allocs = [shapley(trunc)]
                partial = False
            elif args.order is not None:
                allocs = [greedy_vertex(trunc, _parse_order(model, args.order))]
                partial = False
            else:
                # fixed default seed keeps sampled-vertex reports reproducible
                allocs, partial = greedy_vertices(
                    trunc, seed=0 if args.seed is None else args.seed
                )
                allocs = fairness_compare(allocs)
        except CoreEmptyError:
            code = core_empty_payload()
        else:
            out["results"]["allocations"] = [_allocation_json(model, a) for a in allocs]
            out["results"]["partial"] = partial
            out["results"]["in_core"] = [bool(in_core(game, a.rates)) for a in allocs]
    else:  # enumerate
        try:
            vectors = enumerate_integer_core(game)
        except IntegralityError as exc:
            raise CliError(EXIT_INAPPLICABLE, str(exc)) from exc
        out["results"]["allocations"] = [
            _allocation_json(
                model,
                Allocation(
                    r,
                    "enumerated",
                    None,
                    jain_index(r) if any(x != 0 for x in r) else None,
                ),
            )
            for r in vectors
        ]
        out["results"]["count"] = len(vectors)
        if not vectors:
            code = core_empty_payload()
    out["timing_ms"] = round((time.perf_counter() - started) * 1000.0, 3)
    return out, code


def cmd_polyhedron(args) -> tuple[dict, int]:
    started = time.perf_counter()
    model = _load(args)
    if model.n > 8:
        raise CliError(
            EXIT_INAPPLICABLE,
            f"polyhedron emission is limited to 8 users, model has {model.n}",
        )
    alpha = _parse_alpha(args.alpha)
    game = Game(model, alpha)
    trunc = dilworth_truncate(game)
    out = _report("polyhedron", model, _echo_inputs(args, alpha=args.alpha))
    constraints = [
        {"set": _subset_json(model, x), "upper_bound": _q(game.dual_value(x))}
        for x in subsets(model.full_mask, nonempty=True)
    ]
    truncated = [
        {"set": _subset_json(model, x), "value": _q(trunc.values[x])}
        for x in subsets(model.full_mask)
    ]
    convex = convex_characteristic(trunc)
    convex_rows = [
        {"set": _subset_json(model, x), "value": _q(convex.values[x])}
        for x in subsets(model.full_mask)
    ]
    if trunc.core_nonempty:
        allocs, partial = greedy_vertices(trunc, seed=0 if args.seed is None else args.seed)
        vertices = [_qv(a.rates) for a in allocs]
    else:
        vertices, partial = [], False
    out["results"] = {
        "alpha": _q(alpha),
        "users": list(model.users),
        "core_empty": not trunc.core_nonempty,
        "constraints": constraints,
        "sum_constraint": {"set": list(model.users), "equals": _q(alpha)},
        "truncated_dual": truncated,
        "convex_characteristic": convex_rows,
        "vertices": vertices,
        "partial_vertices": partial,
    }
    out["timing_ms"] = round((time.perf_counter() - started) * 1000.0, 3)
    return out, EXIT_OK


def _emit_csv(report: dict, out: io.TextIOBase) -> None:
    command = report["command"]
    writer = csv.writer(out, lineterminator="\n")
    results = report["results"]
    if command == "allocate" and "allocations" in results:
        writer.writerow(["method", "order", "jain", "rates"])
        for alloc in results["allocations"]:
            writer.writerow(
                [
                    alloc["method"],
                    ",".join(alloc["order"]) if alloc["order"] else "",
                    alloc["jain"]["rational"] if alloc["jain"] else "",
                    ",".join(alloc["rates"]["rational"]),
                ]
            )
        return
    if command == "polyhedron":
        writer.writerow(["kind", "set", "value"])
        for c in results["constraints"]:
            writer.writerow(["constraint<=", ",".join(c["set"]), c["upper_bound"]["rational"]])
        for t in results["truncated_dual"]:
            writer.writerow(["truncated", ",".join(t["set"]), t["value"]["rational"]])
        for v in results["vertices"]:
            writer.writerow(["vertex", "", ",".join(v["rational"])])
        return
    # generic fallback: flat key/value rows
    writer.writerow(["key", "value"])
    for key, value in results.items():
        if isinstance(value, dict) and "rational" in value:
            value = value["rational"]
        writer.writerow([key, json.dumps(value) if isinstance(value, (list, dict)) else value])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="omnirate",
        description="Coalitional-game rate allocation for communication for omniscience.",
    )
    parser.add_argument("--version", action="version", version=f"omnirate {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("model", help="path to a model JSON file")
    common.add_argument(
        "--format", choices=("json", "csv"), default="json", help="report format"
    )
    common.add_argument(
        "--parallel",
        type=int,
        default=1,
        metavar="N",
        help="worker hint, reserved; computations run single-process at desk scale",
    )
    common.add_argument(
        "--seed", type=int, default=None, help="seed for sampled join orders (large models)"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser(
        "validate", parents=[common], help="check the model file and entropy axioms"
    )

    p = sub.add_parser("minrate", parents=[common], help="minimum sum-rate for omniscience")
    p.add_argument(
        "--mode",
        choices=("asymptotic", "integer"),
        default="asymptotic",
        help="divisible rates or integer rates",
    )

    p = sub.add_parser(
        "core", parents=[common], help="core nonemptiness or rate-vector membership"
    )
    p.add_argument("--alpha", required=True, help="sum-rate, e.g. 4 or 7/2 or 3.5")
    p.add_argument("--rates", default=None, help="comma-separated rates to test")
    p.add_argument(
        "--integer", action="store_true", help="also require integer rates for membership"
    )

    p = sub.add_parser("allocate", parents=[common], help="compute rate allocations")
    p.add_argument("--alpha", required=True, help="sum-rate, e.g. 4 or 7/2")
    p.add_argument(
        "--method", choices=("shapley", "greedy", "enumerate"), required=True
    )
    p.add_argument(
        "--order",
        default=None,
        help="user join order for greedy, e.g. 1,2,3 (default: all vertices)",
    )

    p = sub.add_parser(
        "polyhedron", parents=[common], help="emit plot-ready constraint and vertex data"
    )
    p.add_argument("--alpha", required=True, help="sum-rate, e.g. 4 or 7/2")

    return parser


COMMANDS = {
    "validate": cmd_validate,
    "minrate": cmd_minrate,
    "core": cmd_core,
    "allocate": cmd_allocate,
    "polyhedron": cmd_polyhedron,
}


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses 2 for usage errors, which collides with our
        # invalid-model code; remap to the input-error code.
        return EXIT_OK if exc.code in (0, None) else EXIT_INPUT
    if args.parallel < 1:
        print("error: --parallel must be >= 1", file=err)
        return EXIT_INPUT
    try:
        report, code = COMMANDS[args.command](args)
    except CliError as exc:
        print(f"error: {exc}", file=err)
        return exc.code
    if args.format == "csv":
        _emit_csv(report, out)
    else:
        print(json.dumps(report, indent=2), file=out)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
