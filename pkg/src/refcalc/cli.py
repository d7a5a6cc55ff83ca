"""``refcalc`` command-line entry point.

Exit codes: 0 all properties pass, 1 a property failed, 2 usage or parse
error, 3 a guard stopped a required check (reported as skipped).
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__
from .bialgebra import guard_max
from .dsl import DSLSyntaxError
from .fields import DomainError
from .index_language import IndexTypeError
from .model import ModelError, parse_model_file
from .report import FAIL, Report, jsonable
from .suites import SUITES, SuiteContext, UnknownSuite, run


def build_parser():
    p = argparse.ArgumentParser(prog="refcalc", description="Run exact property suites.")
    p.add_argument("--suite", help=f"one of: {', '.join(SUITES)}")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cases", type=int, default=None, help="random cases (suite default if omitted)")
    p.add_argument("--model", action="append", default=[], metavar="PATH", help="model file (repeatable)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--replay", metavar="WITNESS_FILE", help="rerun one witness (or the first in a report)")
    p.add_argument("--property", action="append", default=[], metavar="NAME", help="run only this property (repeatable)")
    p.add_argument("--workers", type=int, default=1, help="parallel worker processes")
    p.add_argument("--timing", action="store_true", help="append wall-clock timing to the report")
    p.add_argument("--output", metavar="FILE", help="write the report here instead of stdout")
    p.add_argument("--list", action="store_true", help="list suites and exit")
    p.add_argument("--version", action="version", version=f"refcalc {__version__}")
    return p


def _load_witness(path):
    with open(path) as fh:
        data = json.load(fh)
    if "schema" in data:
        for prop in data.get("properties", []):
            if prop.get("status") == FAIL and "witness" in prop:
                return prop["witness"]
        raise ValueError(f"{path}: report has no failing property")
    for key in ("suite", "property", "seed", "case"):
        if key not in data:
            raise ValueError(f"{path}: witness lacks {key!r}")
    return data


def run_suite(suite, seed=0, cases=None, model_paths=(), workers=1, only=None, timing=False, properties=()):
    """Run a suite and return a :class:`Report` (raises on unknown suite or bad models)."""
    if suite not in SUITES:
        raise UnknownSuite(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    models = tuple(parse_model_file(p) for p in model_paths)
    ctx = SuiteContext(
        suite, seed=seed, cases=cases, models=models, workers=workers, only=only, properties=tuple(properties)
    )
    t0 = time.perf_counter()
    outcomes = run(ctx)
    elapsed = time.perf_counter() - t0
    config = {"seed": seed, "cases": ctx.n, "models": list(model_paths), "guard_max": guard_max()}
    if properties:
        config["properties"] = list(properties)
    if only is not None:
        config["replay"] = {"property": only[0], "case": only[1]}
    return Report(
        suite=suite,
        config=config,
        outcomes=outcomes,
        version=__version__,
        timing={"total": elapsed} if timing else None,
    )


def replay(witness: dict, timing=False) -> Report:
    rep = run_suite(
        witness["suite"],
        seed=witness["seed"],
        cases=None,
        model_paths=witness.get("models", []),
        only=(witness["property"], witness["case"]),
        timing=timing,
    )
    found = next((o for o in rep.outcomes if o.name == witness["property"]), None)
    now = found.witness["detail"] if found is not None and found.witness else None
    rep.replay = {
        "property": witness["property"],
        "case": witness["case"],
        "reproduced": now is not None and jsonable(now) == jsonable(witness.get("detail")),
        "still_failing": now is not None,
    }
    return rep


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.list:
        print("\n".join(SUITES))
        return 0
    if args.workers < 1:
        parser.print_usage(sys.stderr)
        print("refcalc: error: --workers must be >= 1", file=sys.stderr)
        return 2
    try:
        if args.replay:
            rep = replay(_load_witness(args.replay), timing=args.timing)
        else:
            if not args.suite:
                parser.print_usage(sys.stderr)
                print("refcalc: error: --suite or --replay is required", file=sys.stderr)
                return 2
            rep = run_suite(
                args.suite,
                args.seed,
                args.cases,
                args.model,
                args.workers,
                timing=args.timing,
                properties=args.property,
            )
    except UnknownSuite as e:
        print(f"refcalc: error: {e}", file=sys.stderr)
        return 2
    except (ModelError, DSLSyntaxError, IndexTypeError, DomainError, ValueError, OSError) as e:
        print(f"refcalc: error: {e}", file=sys.stderr)
        return 2
    text = rep.to_json() if args.format == "json" else rep.to_text()
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return rep.exit_code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
