"""JSON wire formats and a deterministic emitter.

Numbers are printed with 17 significant digits so every IEEE double
round-trips exactly and two runs with the same seed produce identical
bytes.  An infinite series radius is emitted as JSON null.

Wire formats:

- quaternion: ``[w, x, y, z]``; imaginary unit: ``[x1, x2, x3]``
- matrix: ``{"rows": n, "cols": m, "entries": [[w,x,y,z], ...]}`` row-major
- chi block: ``{"rows": 2n, "cols": 2n, "entries": [[re, im], ...]}`` row-major
- scalar series: ``{"radius": r, "coeffs": [[w,x,y,z], ...]}`` (+ "center")
- matrix series: ``{"radius": r, "coeffs": [<matrix>, ...]}`` (+ "center")
- slice series: ``{"J": [...], "K": [...], "alpha": [[re,im],...],
  "beta": [[re,im],...], "radius": r}`` (+ "center")
"""

from __future__ import annotations

import math

import numpy as np

from .errors import FormatError
from .matrix import ChiBlock, QuatMatrix
from .quaternion import ImaginaryUnit, Quaternion
from .series import MatrixSeries, ScalarSeries, SplitPair


def _format_float(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        raise FormatError(f"cannot serialize non-finite number {x}")
    return f"{x:.17g}"


def dumps(value) -> str:
    """Deterministic JSON: insertion-ordered keys, 17-digit floats."""
    out: list[str] = []
    _emit(value, out)
    return "".join(out)


def _emit(value, out: list):
    if value is None:
        out.append("null")
    elif value is True:
        out.append("true")
    elif value is False:
        out.append("false")
    elif isinstance(value, str):
        out.append('"' + value.replace("\\", "\\\\").replace('"', '\\"') + '"')
    elif isinstance(value, (int, np.integer)):
        out.append(str(int(value)))
    elif isinstance(value, (float, np.floating)):
        out.append(_format_float(float(value)))
    elif isinstance(value, dict):
        out.append("{")
        for i, (k, v) in enumerate(value.items()):
            if i:
                out.append(",")
            _emit(str(k), out)
            out.append(":")
            _emit(v, out)
        out.append("}")
    elif isinstance(value, (list, tuple)):
        out.append("[")
        for i, v in enumerate(value):
            if i:
                out.append(",")
            _emit(v, out)
        out.append("]")
    else:
        raise FormatError(f"cannot serialize {type(value).__name__}")


# ----------------------------------------------------------------------
# parsers (JSON structures -> domain objects)


def _expect(cond: bool, message: str):
    if not cond:
        raise FormatError(message)


def parse_quaternion(obj) -> Quaternion:
    _expect(isinstance(obj, (list, tuple)) and len(obj) == 4
            and all(isinstance(v, (int, float)) for v in obj),
            f"a quaternion is [w, x, y, z], got {obj!r}")
    return Quaternion(*obj)


def parse_unit(obj) -> ImaginaryUnit:
    _expect(isinstance(obj, (list, tuple)) and len(obj) == 3
            and all(isinstance(v, (int, float)) for v in obj),
            f"an imaginary unit is [x1, x2, x3], got {obj!r}")
    return ImaginaryUnit.from_vector(*obj)


def quaternion_to_json(q: Quaternion) -> list:
    return q.to_list()


def parse_matrix(obj) -> QuatMatrix:
    _expect(isinstance(obj, dict) and {"rows", "cols", "entries"} <= set(obj),
            'a matrix is {"rows", "cols", "entries"}')
    rows, cols = obj["rows"], obj["cols"]
    _expect(isinstance(rows, int) and isinstance(cols, int) and rows > 0 and cols > 0,
            "rows and cols must be positive integers")
    entries = obj["entries"]
    _expect(isinstance(entries, list) and len(entries) == rows * cols,
            f"expected {rows * cols} entries, got {len(entries)}")
    return QuatMatrix.from_entries(rows, cols, [parse_quaternion(e) for e in entries])


def matrix_to_json(m: QuatMatrix) -> dict:
    return {
        "rows": m.rows,
        "cols": m.cols,
        "entries": [m.entry(i, j).to_list()
                    for i in range(m.rows) for j in range(m.cols)],
    }


def parse_chi_block(obj) -> np.ndarray:
    _expect(isinstance(obj, dict) and {"rows", "cols", "entries"} <= set(obj),
            'a chi block is {"rows", "cols", "entries"} with [re, im] entries')
    rows, cols = obj["rows"], obj["cols"]
    _expect(rows == cols and rows > 0 and rows % 2 == 0,
            "a chi block is square with even size")
    entries = obj["entries"]
    _expect(len(entries) == rows * cols, f"expected {rows * cols} entries")
    flat = []
    for e in entries:
        _expect(isinstance(e, (list, tuple)) and len(e) == 2,
                "chi entries are [re, im] pairs")
        flat.append(complex(e[0], e[1]))
    return np.array(flat, dtype=complex).reshape(rows, cols)


def chi_block_to_json(block: ChiBlock) -> dict:
    m = block.assembled()
    return {
        "rows": m.shape[0],
        "cols": m.shape[1],
        "entries": [[m[i, j].real, m[i, j].imag]
                    for i in range(m.shape[0]) for j in range(m.shape[1])],
    }


def _radius_from(obj) -> float:
    r = obj.get("radius", None)
    if r is None:
        return math.inf
    _expect(isinstance(r, (int, float)) and r > 0, "radius must be positive")
    return float(r)


def parse_scalar_series(obj) -> ScalarSeries:
    _expect(isinstance(obj, dict) and "coeffs" in obj,
            'a scalar series is {"radius", "coeffs"}')
    coeffs = [parse_quaternion(c) for c in obj["coeffs"]]
    return ScalarSeries(coeffs, _radius_from(obj), float(obj.get("center", 0.0)))


def scalar_series_to_json(s: ScalarSeries) -> dict:
    out = {"radius": None if math.isinf(s.radius) else s.radius,
           "coeffs": [c.to_list() for c in s.coeffs]}
    if s.center != 0.0:
        out["center"] = s.center
    return out


def parse_matrix_series(obj) -> MatrixSeries:
    _expect(isinstance(obj, dict) and "coeffs" in obj,
            'a matrix series is {"radius", "coeffs"}')
    coeffs = [parse_matrix(c) for c in obj["coeffs"]]
    return MatrixSeries(coeffs, _radius_from(obj), float(obj.get("center", 0.0)))


def matrix_series_to_json(s: MatrixSeries) -> dict:
    out = {"radius": None if math.isinf(s.radius) else s.radius,
           "coeffs": [matrix_to_json(c) for c in s.coeffs]}
    if s.center != 0.0:
        out["center"] = s.center
    return out


def parse_series(obj):
    """Scalar or matrix series, told apart by the coefficient shape."""
    _expect(isinstance(obj, dict) and "coeffs" in obj and obj["coeffs"],
            "a series needs a nonempty coeffs list")
    first = obj["coeffs"][0]
    if isinstance(first, dict):
        return parse_matrix_series(obj)
    return parse_scalar_series(obj)


def _parse_complex_list(obj, what: str) -> list:
    out = []
    for e in obj:
        _expect(isinstance(e, (list, tuple)) and len(e) == 2,
                f"{what} entries are [re, im] pairs")
        out.append(complex(e[0], e[1]))
    return out


def parse_slice_series(obj) -> SplitPair:
    _expect(isinstance(obj, dict) and {"J", "K", "alpha", "beta"} <= set(obj),
            'a slice series is {"J", "K", "alpha", "beta", "radius"}')
    return SplitPair(
        parse_unit(obj["J"]),
        parse_unit(obj["K"]),
        _parse_complex_list(obj["alpha"], "alpha"),
        _parse_complex_list(obj["beta"], "beta"),
        _radius_from(obj),
        float(obj.get("center", 0.0)),
    )


def split_pair_to_json(pair: SplitPair) -> dict:
    out = {
        "J": pair.slice_unit.to_list(),
        "K": pair.split_unit.to_list(),
        "alpha": [[c.real, c.imag] for c in pair.f_coeffs],
        "beta": [[c.real, c.imag] for c in pair.g_coeffs],
        "radius": None if math.isinf(pair.radius) else pair.radius,
    }
    if pair.center != 0.0:
        out["center"] = pair.center
    return out


def parse_point(obj) -> Quaternion:
    if isinstance(obj, (int, float)):
        return Quaternion(float(obj))
    return parse_quaternion(obj)
