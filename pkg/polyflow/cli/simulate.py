import logging
from pathlib import Path

from ..core.exceptions import EXIT_OK
from ..schemas.dynamics import DynamicsState, FieldSpec, Trajectory
from ..schemas.jobs import JobSpec, OutputFormat, SimulationJob
from ..services.dynamics import simulate_generalized, simulate_quadratic, trajectory_to_csv
from ..services.poly_core import from_roots
from .io import dump_json, read_json, write_output

logger = logging.getLogger(__name__)


def _tau_span(sim: SimulationJob, steps: int | None) -> tuple[float, float]:
    if steps is None:
        return sim.tau_span
    start = sim.tau_span[0]
    return start, start + steps * sim.options.step


def simulate(sim: SimulationJob, steps: int | None = None) -> Trajectory:
    tau_span = _tau_span(sim, steps)
    if sim.model == "quadratic":
        fields = sim.fields or FieldSpec()
        return simulate_quadratic(fields, sim.quadratic_init, tau_span, sim.options)
    init = sim.init or DynamicsState.from_polynomial(from_roots(sim.roots), sim.r, sim.direction)
    n = sim.degree or init.degree
    return simulate_generalized(n, sim.potential, init, tau_span, sim.options)


def run_simulate(job: JobSpec) -> int:
    sim = SimulationJob.model_validate(read_json(job))
    trajectory = simulate(sim, job.options.steps)
    report = {
        "drifts": trajectory.report.drifts,
        "max_drift": trajectory.report.max_drift,
        "samples": len(trajectory.rows),
    }

    if job.options.format == OutputFormat.csv:
        write_output(trajectory_to_csv(trajectory), job.output)
    else:
        write_output(dump_json(trajectory.model_dump(mode="json")), job.output)
    if job.report is not None:
        Path(job.report).write_text(dump_json(report))
        logger.info("Wrote conservation report %s", job.report)
    else:
        logger.info(
            "Max conservation drift %.3e over %d samples", report["max_drift"], report["samples"]
        )
    return EXIT_OK
