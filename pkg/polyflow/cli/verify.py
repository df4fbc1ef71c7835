import logging

from ..core.exceptions import EXIT_FAILURE, EXIT_OK
from ..schemas.jobs import JobSpec
from ..schemas.verification import VerifyOptions
from ..services.verification import run_suite
from .io import dump_json, write_output

logger = logging.getLogger(__name__)


def run_verify(job: JobSpec) -> int:
    options = job.options
    report = run_suite(
        options.suite or "",
        VerifyOptions(
            seed=options.seed,
            count=options.count,
            tol=options.tol,
            drift_tol=options.drift_tol,
            steps=options.steps,
            degree=options.degree,
        ),
    )
    document = report.model_dump(mode="json")
    document["max_residual"] = report.max_residual
    write_output(dump_json(document), job.output)
    logger.info("Suite %s %s", report.suite.value, "passed" if report.passed else "failed")
    return EXIT_OK if report.passed else EXIT_FAILURE
