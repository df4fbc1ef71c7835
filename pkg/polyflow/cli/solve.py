import csv
import functools
import io
import logging
from typing import Any

import numpy as np
from pydantic import ValidationError

from ..core.exceptions import EXIT_FAILURE, EXIT_OK, InputError, OutOfScopeError, PolyflowError
from ..schemas.cubic import CubicInvariants
from ..schemas.evolution import EvolutionMode, EvolutionOptions
from ..schemas.jobs import JobOptions, JobSpec, OutputFormat, SolveMethod
from ..schemas.reduction import SolveOptions
from ..services.cubic_special import solve_cubic_trig
from ..services.oracle import durand_kerner, real_roots_or_none
from ..services.poly_core import depress, to_monic
from ..services.reducer import closed_form_discrepancy, solve
from ..worker import map_ordered
from .io import as_polynomial, dump_json, read_items, write_output

logger = logging.getLogger(__name__)


def evolution_options(options: JobOptions) -> EvolutionOptions:
    overrides: dict[str, Any] = {"mode": options.mode}
    if options.tol is not None:
        overrides["event_tol"] = options.tol
    if options.steps is not None:
        key = "partitions" if options.mode == EvolutionMode.cauchy_lipschitz else "max_steps"
        overrides[key] = options.steps
    return EvolutionOptions(**overrides)


def solve_item(item: Any, options: JobOptions) -> dict[str, Any]:
    poly = as_polynomial(item)
    monic = to_monic(poly)
    if options.method == SolveMethod.reduce:
        roots, trace = solve(
            poly,
            SolveOptions(evolution=evolution_options(options), root_bound=options.root_bound),
        )
        values = list(roots.roots)
        trace_doc = {"method": "reduce", **trace.model_dump(mode="json")}
        trace_doc["closed_form_discrepancy"] = closed_form_discrepancy(trace)
    elif options.method == SolveMethod.trig:
        if poly.degree != 3:
            raise InputError(f"the trig method needs a cubic, got degree {poly.degree}")
        inv = depress(poly)
        y = solve_cubic_trig(CubicInvariants.from_invariant_set(inv))
        values = sorted(poly.p1 + v for v in y)
        trace_doc = {"method": "trig", "p1": poly.p1, "invariants": inv.model_dump(mode="json")}
    else:
        kwargs = {} if options.tol is None else {"tol": options.tol}
        real = real_roots_or_none(durand_kerner(monic, **kwargs))
        if real is None:
            raise OutOfScopeError("complex roots out of scope")
        values = real
        trace_doc = {"method": "oracle"}
    residuals = [abs(float(np.polyval(monic, q))) for q in values]
    return {"roots": values, "residuals": residuals, "trace": trace_doc}


def _solve_safe(item: Any, options: JobOptions) -> tuple[int, dict[str, Any]]:
    try:
        return EXIT_OK, solve_item(item, options)
    except PolyflowError as e:
        logger.error("Failed to solve item: %s", e.message)
        return e.exit_code, {"error": e.message, "exit_code": e.exit_code}
    except ValidationError as e:
        message = e.errors()[0]["msg"]
        logger.error("Invalid item: %s", message)
        return EXIT_FAILURE, {"error": message, "exit_code": EXIT_FAILURE}


def _roots_csv(results: list[dict[str, Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["index", "roots"])
    for index, result in enumerate(results):
        writer.writerow([index, *(repr(q) for q in result.get("roots", []))])
    return buffer.getvalue()


def run_solve(job: JobSpec) -> int:
    items, batch = read_items(job)
    options = job.options
    if not batch:
        results = [solve_item(items[0], options)]
        code = EXIT_OK
    else:
        outcomes = map_ordered(
            functools.partial(_solve_safe, options=options), items, options.workers
        )
        code = max((c for c, _ in outcomes), default=EXIT_OK)
        results = [r for _, r in outcomes]

    if options.format == OutputFormat.csv:
        text = _roots_csv(results)
    else:
        text = dump_json(results if batch else results[0])
    write_output(text, job.output)
    return code
