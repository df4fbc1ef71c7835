"""
JSON object and one-line CSV encodings of NormalizedPolynomial.

Floats are written with their shortest round-trip representation, so both formats
reproduce finite doubles bit for bit.
"""

import csv
import io

from pydantic import ValidationError

from ...core.exceptions import InputError
from ...schemas.polynomials import NormalizedPolynomial


def to_json(poly: NormalizedPolynomial) -> str:
    return poly.model_dump_json()


def from_json(payload: str | bytes) -> NormalizedPolynomial:
    try:
        return NormalizedPolynomial.model_validate_json(payload)
    except ValidationError as e:
        raise InputError(f"invalid polynomial JSON: {e.errors()[0]['msg']}") from e


def to_csv_record(poly: NormalizedPolynomial) -> str:
    """degree,P_1,...,P_{n-1},P^2"""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="")
    writer.writerow([poly.degree, *(repr(x) for x in poly.p), repr(poly.psq)])
    return buffer.getvalue()


def from_csv_record(line: str) -> NormalizedPolynomial:
    fields = next(csv.reader([line.strip()]), [])
    try:
        degree = int(fields[0])
        values = [float(x) for x in fields[1:]]
        return NormalizedPolynomial(degree=degree, p=tuple(values[:-1]), psq=values[-1])
    except (IndexError, ValueError) as e:
        raise InputError(f"invalid polynomial CSV record: {line!r}") from e
