"""
Reading job inputs and writing artifacts. Data goes to stdout or the output file only.
"""

import json
import logging
import math
import sys
from pathlib import Path
from typing import Any

from ..core.exceptions import InputError
from ..schemas.jobs import JobSpec
from ..schemas.polynomials import NormalizedPolynomial, PolynomialPayload
from ..services.poly_core import from_csv_record, from_monic, from_roots

logger = logging.getLogger(__name__)


def read_text(job: JobSpec) -> str:
    if job.input is None:
        return json.dumps(job.payload)
    if job.input == "-":
        return sys.stdin.read()
    try:
        return Path(job.input).read_text()
    except OSError as e:
        raise InputError(f"cannot read {job.input}: {e.strerror}") from e


def read_json(job: JobSpec) -> Any:
    if job.input is None:
        return job.payload
    text = read_text(job)
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"malformed JSON at line {e.lineno} column {e.colno}: {e.msg}") from e


def parse_polynomial(item: Any) -> NormalizedPolynomial:
    """A bare list is monic coefficients; an object carries 'monic', 'normalized' or 'roots'."""
    if isinstance(item, list):
        return from_monic(item)
    if not isinstance(item, dict):
        raise InputError(f"cannot read a polynomial from {type(item).__name__}")
    payload = PolynomialPayload.model_validate(item)
    if payload.monic is not None:
        return from_monic(payload.monic)
    if payload.normalized is not None:
        return payload.normalized
    return from_roots(payload.roots or [])


def read_items(job: JobSpec) -> tuple[list[Any], bool]:
    """Raw polynomial items and whether the input was a batch."""
    if job.input is not None and job.input.endswith(".csv"):
        lines = [line for line in read_text(job).splitlines() if line.strip()]
        return [from_csv_record(line) for line in lines], True
    data = read_json(job)
    if isinstance(data, list) and (not data or isinstance(data[0], (list, dict))):
        return data, True
    return [data], False


def as_polynomial(item: Any) -> NormalizedPolynomial:
    return item if isinstance(item, NormalizedPolynomial) else parse_polynomial(item)


def finite(obj: Any) -> Any:
    """Replace non-finite floats by None so the document stays strict JSON."""
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else None
    if isinstance(obj, dict):
        return {k: finite(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [finite(v) for v in obj]
    return obj


def dump_json(obj: Any) -> str:
    return json.dumps(finite(obj), indent=2) + "\n"


def write_output(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    Path(path).write_text(text)
    logger.info("Wrote %s", path)
