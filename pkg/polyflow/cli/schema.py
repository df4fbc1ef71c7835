import json

from ..core.exceptions import EXIT_OK
from ..schemas.jobs import JobSpec, SimulationJob
from .io import write_output


def run_schema(which: str, output: str | None = None) -> int:
    model = SimulationJob if which == "simulation" else JobSpec
    write_output(json.dumps(model.model_json_schema(), indent=2) + "\n", output)
    return EXIT_OK
