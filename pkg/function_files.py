"""Function files: JSON documents describing an (n,m)-function.

    {"n": 3, "m": 1, "repr": "tt", "data": "e8", "field": {...}}

repr "tt": Boolean data is a hex string with bit i = f(point i); vectorial
data is a list of 2^n hex outputs. repr "anf": one hex string per
coordinate (a bare string is accepted for m = 1). repr "uni": 2^n hex field
elements delta_0 .. delta_(2^n - 1). "field" is optional and pins the field
used for the univariate form.
"""
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Union

import numpy as np

from errors import AnalysisError, FunctionFileError, UnsupportedDegreeError
from field import MAX_DEGREE, FieldSpec, make_field
from funcrep import BooleanFunction, VectorialFunction, int_to_bits

logger = logging.getLogger(__name__)

REPRESENTATIONS = ("tt", "anf", "uni")


def _parse_hex(value: Any, field_name: str) -> int:
    if not isinstance(value, str):
        raise FunctionFileError(f"expected a hex string, got {type(value).__name__}", field=field_name)
    try:
        return int(value, 16)
    except ValueError:
        raise FunctionFileError(f"'{value}' is not a hex string", field=field_name) from None


def _hex_list(data: Any, length: int, field_name: str) -> List[int]:
    if not isinstance(data, list):
        raise FunctionFileError("expected a list of hex strings", field=field_name)
    if len(data) != length:
        raise FunctionFileError(f"expected {length} entries, got {len(data)}", field=field_name)
    return [_parse_hex(item, f"{field_name}[{i}]") for i, item in enumerate(data)]


def _require_int(document: Dict[str, Any], key: str) -> int:
    value = document.get(key)
    if not isinstance(value, int) or isinstance(value, bool):
        raise FunctionFileError("missing or not an integer", field=key)
    return value


def function_from_document(document: Dict[str, Any]) -> VectorialFunction:
    if not isinstance(document, dict):
        raise FunctionFileError("top level must be a JSON object")
    n = _require_int(document, "n")
    m = document.get("m", 1)
    if not isinstance(m, int) or m < 1:
        raise FunctionFileError("must be a positive integer", field="m")
    if not 1 <= n <= MAX_DEGREE:
        raise UnsupportedDegreeError(f"n={n} is outside the supported range 1..{MAX_DEGREE}")
    representation = document.get("repr", "tt")
    if representation not in REPRESENTATIONS:
        raise FunctionFileError(f"must be one of {REPRESENTATIONS}", field="repr")
    spec = make_field(n)
    if document.get("field") is not None:
        try:
            spec = FieldSpec.from_dict(document["field"])
        except AnalysisError as e:
            raise FunctionFileError(str(e), field="field") from e
        if spec.n != n:
            raise FunctionFileError(f"field degree {spec.n} does not match n={n}", field="field")
    size = 1 << n
    data = document.get("data")
    try:
        if representation == "tt":
            if m == 1 and isinstance(data, str):
                value = _parse_hex(data, "data")
                if value >> size:
                    raise FunctionFileError(f"truth table wider than {size} bits", field="data")
                return BooleanFunction.from_int(n, value).to_vectorial(spec)
            return VectorialFunction(n, m, np.array(_hex_list(data, size, "data"), dtype=np.int64), spec)
        if representation == "anf":
            if isinstance(data, str):
                data = [data]
            anfs = _hex_list(data, m, "data")
            coordinates = [BooleanFunction.from_anf(int_to_bits(a, size)) for a in anfs]
            return VectorialFunction.from_coordinates(coordinates, spec)
        coeffs = _hex_list(data, size, "data")
        if any(c >= spec.order for c in coeffs):
            raise FunctionFileError(f"coefficient outside GF(2^{n})", field="data")
        return VectorialFunction.from_univariate(spec, coeffs, m)
    except FunctionFileError:
        raise
    except AnalysisError as e:
        raise FunctionFileError(str(e), field="data") from e


def load_function(path: Union[str, Path]) -> VectorialFunction:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise FunctionFileError(f"cannot read {path}: {e.strerror}") from e
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise FunctionFileError(e.msg, line=e.lineno) from e
    function = function_from_document(document)
    logger.debug(f"Loaded {function!r} from {path}")
    return function


def function_to_document(F: VectorialFunction, representation: str = "tt") -> Dict[str, Any]:
    document: Dict[str, Any] = {"n": F.n, "m": F.m, "repr": representation}
    if representation == "tt":
        if F.m == 1:
            document["data"] = F.coordinate(0).to_hex()
        else:
            width = (F.m + 3) // 4
            document["data"] = [format(int(y), f"0{width}x") for y in F.table]
    elif representation == "anf":
        document["data"] = [f.anf_hex() for f in F.coordinates()]
    elif representation == "uni":
        width = (F.n + 3) // 4
        document["data"] = [format(int(c), f"0{width}x") for c in F.univariate]
    else:
        raise ValueError(f"Unknown representation '{representation}'")
    document["field"] = F.spec.to_dict()
    return document


def save_function(F: VectorialFunction, path: Union[str, Path], representation: str = "tt") -> Path:
    path = Path(path)
    path.write_text(json.dumps(function_to_document(F, representation), indent=2) + "\n", encoding="utf-8")
    return path


def dumps_function(F: VectorialFunction, representation: str = "tt") -> str:
    return json.dumps(function_to_document(F, representation), indent=2)


def read_bits(text: str) -> List[int]:
    """0/1 characters, whitespace ignored"""
    bits = [c for c in text if not c.isspace()]
    if any(c not in "01" for c in bits):
        raise FunctionFileError("bit streams may only contain 0 and 1")
    return [int(c) for c in bits]
