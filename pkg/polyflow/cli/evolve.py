import logging

from ..core.exceptions import EXIT_OK, InputError
from ..schemas.jobs import JobSpec, OutputFormat
from ..services.evolution import evolve_to_psq_zero, trace_to_csv, verify_against_closed_form
from .io import as_polynomial, dump_json, read_items, write_output
from .solve import evolution_options

logger = logging.getLogger(__name__)


def run_evolve(job: JobSpec) -> int:
    items, batch = read_items(job)
    if batch and len(items) != 1:
        raise InputError("evolve takes a single polynomial")
    poly = as_polynomial(items[0])
    state, trace = evolve_to_psq_zero(poly, evolution_options(job.options))

    if job.options.format == OutputFormat.csv:
        text = trace_to_csv(trace)
    else:
        text = dump_json(
            {
                "final": state.model_dump(mode="json"),
                "closed_form_residual": verify_against_closed_form(trace),
                "trace": trace.model_dump(mode="json"),
            }
        )
    write_output(text, job.output)
    logger.info("Evolution shift %.12g, max drift %.3e", state.shift_accumulated, trace.max_drift)
    return EXIT_OK
