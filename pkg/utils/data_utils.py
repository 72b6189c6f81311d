import csv
import json
import logging
import math
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional, TextIO

from exceptions import AtPoleError
from models.coefficients import CoefficientTable
from models.evaluation import EvalResult
from models.output import OutputRecord, RecordKind
from models.space import PoleEntry, SpaceSpec

logger = logging.getLogger(__name__)

UNSUPPORTED_STATUS = "unsupported: no closed form in source"
# error_bound of a result with no tail certificate, identical in JSON and CSV
UNBOUNDED = "inf"


def rational_payload(value: Fraction) -> Dict[str, str]:
    """Lossless JSON form of a rational: decimal-string numerator and denominator"""
    value = Fraction(value)
    return {"num": str(value.numerator), "den": str(value.denominator)}


def rational_from_payload(payload: Dict[str, str]) -> Fraction:
    return Fraction(int(payload["num"]), int(payload["den"]))


def _is_rational(value: Any) -> bool:
    return isinstance(value, dict) and set(value) == {"num", "den"}


def _space_fields(spec: SpaceSpec) -> Dict[str, Any]:
    return {"space": spec.space.value, "k": spec.k}


def coeff_record(table: CoefficientTable, methods_agree: Optional[bool] = None) -> OutputRecord:
    """One coefficient row; methods_agree is set when every method was cross-checked"""
    payload = {
        "k": table.k,
        "method": table.method.value,
        "coeffs": [rational_payload(value) for value in table.coeffs],
    }
    if methods_agree is not None:
        payload["methods_agree"] = methods_agree
    return OutputRecord(kind=RecordKind.COEFF, payload=payload)


def eval_record(spec: SpaceSpec, s: complex, result: EvalResult) -> OutputRecord:
    payload = {
        **_space_fields(spec),
        "s": {"re": s.real, "im": s.imag},
        "status": "ok",
        "value": {"re": result.value.re, "im": result.value.im},
        "error_bound": result.error_bound if math.isfinite(result.error_bound) else UNBOUNDED,
        "terms_used": result.terms_used,
        "flags": sorted(flag.value for flag in result.flags),
    }
    if result.exact is not None:
        payload["exact"] = rational_payload(Fraction(result.exact))
    return OutputRecord(kind=RecordKind.EVAL, payload=payload)


def at_pole_record(spec: SpaceSpec, s: complex, error: AtPoleError) -> OutputRecord:
    """An eval record for a point at a pole: the residue replaces the value"""
    return OutputRecord(kind=RecordKind.EVAL, payload={
        **_space_fields(spec),
        "s": {"re": s.real, "im": s.imag},
        "status": "at-pole",
        "pole": rational_payload(error.location),
        "residue": rational_payload(error.residue),
    })


def failed_eval_record(spec: SpaceSpec, s: complex, error: Exception) -> OutputRecord:
    return OutputRecord(kind=RecordKind.EVAL, payload={
        **_space_fields(spec),
        "s": {"re": s.real, "im": s.imag},
        "status": "error",
        "message": str(error),
    })


def residue_record(spec: SpaceSpec, entry: PoleEntry) -> OutputRecord:
    return OutputRecord(kind=RecordKind.RESIDUE, payload={
        **_space_fields(spec),
        "n": entry.point.n,
        "pole": rational_payload(entry.point.location),
        "residue": rational_payload(entry.residue),
        "regular": entry.regular,
    })


def special_record(spec: SpaceSpec, n: int, value: Optional[Fraction]) -> OutputRecord:
    """The value at s = -n, or the unsupported status when value is None"""
    payload = {**_space_fields(spec), "n": n, "s": str(-n)}
    if value is None:
        payload["status"] = UNSUPPORTED_STATUS
    else:
        payload["status"] = "ok"
        payload["value"] = rational_payload(value)
    return OutputRecord(kind=RecordKind.SPECIAL, payload=payload)


def verify_record(name: str, passed: bool, detail: str = "") -> OutputRecord:
    return OutputRecord(kind=RecordKind.VERIFY_ITEM, payload={"check": name, "passed": passed, "detail": detail})


def to_json_line(record: OutputRecord) -> str:
    """
    Serialize a record as one canonical JSON line (sorted keys, no spaces),
    so parsing and re-serializing reproduces the same bytes.
    """
    return json.dumps(record.model_dump(mode="json"), sort_keys=True, separators=(",", ":"))


def from_json_line(line: str) -> OutputRecord:
    return OutputRecord.model_validate(json.loads(line))


def _flatten(payload: Dict[str, Any], prefix: str = "") -> Dict[str, Any]:
    """Flatten nested payload fields into CSV cells; rationals become 'num/den'"""
    row = {}
    for key, value in payload.items():
        name = f"{prefix}{key}"
        if _is_rational(value):
            row[name] = f"{value['num']}/{value['den']}"
        elif isinstance(value, dict):
            row.update(_flatten(value, prefix=f"{name}_"))
        elif isinstance(value, list):
            row[name] = ";".join(str(item) for item in value)
        else:
            row[name] = value
    return row


def csv_rows(record: OutputRecord) -> List[Dict[str, Any]]:
    """
    CSV rows for one record. Coefficient rows expand to one line per
    (index, value); every other kind is a single flattened line.
    """
    if record.kind is RecordKind.COEFF:
        base = {key: value for key, value in record.payload.items() if key != "coeffs"}
        return [
            {**_flatten(base), "index": j, "value": f"{value['num']}/{value['den']}"}
            for j, value in enumerate(record.payload["coeffs"])
        ]
    return [_flatten(record.payload)]


def write_records(records: Iterable[OutputRecord], fmt: str, stream: TextIO) -> None:
    """
    Write records as JSON lines or CSV.

    Args:
        records: Records in output order
        fmt: "json" or "csv"
        stream: Destination text stream
    """
    records = list(records)
    if fmt == "json":
        for record in records:
            stream.write(to_json_line(record) + "\n")
        return
    if fmt != "csv":
        raise ValueError(f"Unknown output format '{fmt}'")
    rows = []
    for record in records:
        rows.extend({"kind": record.kind.value, **row} for row in csv_rows(record))
    fieldnames: List[str] = []
    for row in rows:
        fieldnames.extend(name for name in row if name not in fieldnames)
    writer = csv.DictWriter(stream, fieldnames=fieldnames, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    logger.debug(f"Wrote {len(rows)} CSV rows")
