from ..core.exceptions import EXIT_OK
from ..schemas.jobs import JobSpec
from ..services.oracle import durand_kerner
from ..services.poly_core import to_monic
from .io import as_polynomial, dump_json, read_items, write_output


def run_oracle_solve(job: JobSpec) -> int:
    """All complex roots by simultaneous iteration, as [re, im] pairs."""
    items, batch = read_items(job)
    kwargs = {} if job.options.tol is None else {"tol": job.options.tol}
    results = []
    for item in items:
        roots = durand_kerner(to_monic(as_polynomial(item)), **kwargs)
        ordered = sorted(roots, key=lambda z: (z.real, z.imag))
        results.append({"roots": [[float(z.real), float(z.imag)] for z in ordered]})
    write_output(dump_json(results if batch else results[0]), job.output)
    return EXIT_OK
