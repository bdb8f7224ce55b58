"""JSON operator specifications: schema, validation and construction."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import jsonschema
import numpy as np

from .dirac import CliffordData, dirac_symbol
from .errors import SchemaError
from .matrix_kernel import CutPair
from .quadrature import Torus
from .symbols import SymbolExpansion, from_terms

TWO_PI = 2.0 * math.pi

_COMPLEX = {
    "oneOf": [
        {"type": "number"},
        {
            "type": "object",
            "properties": {"re": {"type": "number"}, "im": {"type": "number"}},
            "required": ["re", "im"],
            "additionalProperties": False,
        },
    ]
}
_MATRIX = {"type": "array", "minItems": 1, "items": {"type": "array", "minItems": 1, "items": _COMPLEX}}
_INTS = {"type": "array", "items": {"type": "integer"}}
_ANGLE = {"type": "number", "minimum": 0.0, "exclusiveMaximum": 4.0 * math.pi}

OPERATOR_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "specasym operator spec",
    "type": "object",
    "required": ["name", "kind"],
    "additionalProperties": False,
    "properties": {
        "name": {"type": "string", "minLength": 1},
        "kind": {"enum": ["symbolic", "dirac", "matrix"]},
        "n": {"type": "integer", "minimum": 1, "maximum": 4},
        "fiberDim": {"type": "integer", "minimum": 1},
        "volume": {"type": "number", "exclusiveMinimum": 0},
        "order": {"type": "integer"},
        "components": {
            "type": "array",
            "items": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["matrix"],
                    "additionalProperties": False,
                    "properties": {
                        "freq": _INTS,
                        "xiPower": {"type": "array", "items": {"type": "integer", "minimum": 0}},
                        "normPower": {"type": "number"},
                        "matrix": {"oneOf": [_MATRIX, _COMPLEX]},
                    },
                },
            },
        },
        "dirac": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "twistRank": {"type": "integer", "minimum": 1},
                "connection": {
                    "type": "array",
                    "items": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "required": ["freq", "matrix"],
                            "additionalProperties": False,
                            "properties": {"freq": _INTS, "matrix": {"oneOf": [_MATRIX, _COMPLEX]}},
                        },
                    },
                },
            },
        },
        "matrix": {
            "type": "object",
            "required": ["entries"],
            "additionalProperties": False,
            "properties": {
                "entries": _MATRIX,
                "powers": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "required": ["s", "theta"],
                        "additionalProperties": False,
                        "properties": {"s": _COMPLEX, "theta": _ANGLE},
                    },
                },
            },
        },
        "cuts": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["theta", "thetaPrime"],
                "additionalProperties": False,
                "properties": {"theta": _ANGLE, "thetaPrime": _ANGLE},
            },
        },
        "k": {"type": "array", "maxItems": 64, "items": {"type": "integer"}},
        "eta": {"type": "boolean"},
        "depth": {"type": "integer", "minimum": 0},
        "nodes": {"type": "integer", "minimum": 8},
        "resolution": {"type": "integer", "minimum": 1},
        "tolerances": {
            "type": "object",
            "additionalProperties": {"type": "number", "exclusiveMinimum": 0},
        },
        "seed": {"type": "integer", "minimum": 0},
        "assertions": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["quantity"],
                "additionalProperties": False,
                "properties": {
                    "quantity": {
                        "enum": ["gap", "resPk", "etaResidue", "projectionResidue", "projection", "properties"]
                    },
                    "cut": {"type": "integer", "minimum": 0},
                    "k": {"type": "integer"},
                    "expected": {"oneOf": [_COMPLEX, _MATRIX]},
                    "tol": {"type": "number", "exclusiveMinimum": 0},
                    "relative": {"type": "boolean"},
                },
            },
        },
    },
    "allOf": [
        {"if": {"properties": {"kind": {"const": "symbolic"}}},
         "then": {"required": ["n", "fiberDim", "order", "components", "cuts"]}},
        {"if": {"properties": {"kind": {"const": "dirac"}}}, "then": {"required": ["n", "dirac"]}},
        {"if": {"properties": {"kind": {"const": "matrix"}}}, "then": {"required": ["matrix"]}},
    ],
}

DEFAULT_TOLERANCES = {
    "gap": 1e-7,
    "idempotence": 1e-6,
    "projectionResidue": 1e-7,
    "eta": 1e-7,
    "matrix": 1e-10,
}


def parse_complex(v) -> complex:
    if isinstance(v, dict):
        return complex(v["re"], v["im"])
    return complex(v)


def parse_matrix(v, size: int | None = None) -> np.ndarray:
    if not isinstance(v, list):
        if size is None:
            raise SchemaError("a scalar matrix coefficient needs a known fiber dimension")
        return parse_complex(v) * np.eye(size, dtype=complex)
    rows = [[parse_complex(z) for z in row] for row in v]
    if len({len(r) for r in rows}) != 1:
        raise SchemaError("matrix rows have different lengths")
    out = np.array(rows, dtype=complex)
    if size is not None and out.shape != (size, size):
        raise SchemaError(f"expected a {size}x{size} matrix, got {out.shape[0]}x{out.shape[1]}")
    return out


def normalize_cut(theta: float, theta_prime: float) -> CutPair:
    """Reduce ``theta`` mod 2 pi and keep the aperture ``theta' - theta``.

    Raises :class:`SchemaError` unless ``0 < theta' - theta <= 2 pi``.
    """
    aperture = theta_prime - theta
    if not 0.0 < aperture <= TWO_PI:
        raise SchemaError(f"cut pair ({theta}, {theta_prime}) needs 0 < thetaPrime - theta <= 2 pi")
    t = theta % TWO_PI
    return CutPair(t, t + aperture)


@dataclass
class OperatorSpec:
    name: str
    kind: str
    raw: dict
    n: int | None = None
    fiber_dim: int | None = None
    volume: float | None = None
    symbol: SymbolExpansion | None = None
    clifford: CliffordData | None = None
    matrix: np.ndarray | None = None
    powers: list = field(default_factory=list)
    cuts: list = field(default_factory=list)
    ks: list = field(default_factory=list)
    eta: bool = False
    depth: int | None = None
    nodes: int | None = None
    resolution: int | None = None
    tolerances: dict = field(default_factory=dict)
    seed: int = 0
    assertions: list = field(default_factory=list)

    @property
    def torus(self) -> Torus | None:
        if self.n is None:
            return None
        return Torus.standard(self.n) if self.volume is None else Torus.with_volume(self.n, self.volume)


def _mode(v, n: int, what: str) -> tuple:
    v = tuple(int(a) for a in (v if v is not None else [0] * n))
    if len(v) != n:
        raise SchemaError(f"{what} has length {len(v)}, expected {n}")
    return v


def _build_symbol(spec: dict, torus: Torus) -> SymbolExpansion:
    n, r, m = spec["n"], spec["fiberDim"], spec["order"]
    comps = []
    for j, terms in enumerate(spec["components"]):
        out = []
        for t in terms:
            beta = _mode(t.get("xiPower"), n, "xiPower")
            s = float(t.get("normPower", 0.0))
            if abs(sum(beta) + s - (m - j)) > 1e-12:
                raise SchemaError(f"component {j}: term degree {sum(beta) + s} differs from {m - j}")
            out.append((_mode(t.get("freq"), n, "freq"), beta, s, parse_matrix(t["matrix"], r)))
        comps.append(out)
    return from_terms(torus, (r, r), m, comps, label=spec["name"])


def _build_dirac(spec: dict, torus: Torus) -> CliffordData:
    d = spec["dirac"]
    rank = d.get("twistRank", 1)
    n = spec["n"]
    raw = d.get("connection", [])
    if raw and len(raw) != n:
        raise SchemaError(f"connection has {len(raw)} directions, expected {n}")
    conn = []
    for terms in raw or [[] for _ in range(n)]:
        conn.append({_mode(t["freq"], n, "freq"): parse_matrix(t["matrix"], rank) for t in terms})
    try:
        return CliffordData(torus, rank, conn)
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc


def load_spec(source) -> OperatorSpec:
    """Parse and validate a spec from a path, a JSON string or a dict."""
    if isinstance(source, dict):
        data = source
    else:
        text = Path(source).read_text() if not str(source).lstrip().startswith("{") else str(source)
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON: {exc}") from exc
    try:
        jsonschema.validate(data, OPERATOR_SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise SchemaError(f"{where}: {exc.message}") from exc
    spec = OperatorSpec(data["name"], data["kind"], data)
    spec.n = data.get("n")
    spec.fiber_dim = data.get("fiberDim")
    spec.volume = data.get("volume")
    spec.cuts = [normalize_cut(c["theta"], c["thetaPrime"]) for c in data.get("cuts", [])]
    spec.ks = list(data.get("k", []))
    spec.eta = bool(data.get("eta", False))
    spec.depth = data.get("depth")
    spec.nodes = data.get("nodes")
    spec.resolution = data.get("resolution")
    spec.tolerances = {**DEFAULT_TOLERANCES, **data.get("tolerances", {})}
    spec.seed = int(data.get("seed", 0))
    spec.assertions = list(data.get("assertions", []))
    if spec.kind == "symbolic":
        spec.symbol = _build_symbol(data, spec.torus)
    elif spec.kind == "dirac":
        if spec.n not in (2, 4):
            raise SchemaError(f"dirac specs need n in (2, 4), got {spec.n}")
        spec.clifford = _build_dirac(data, spec.torus)
        spec.symbol = dirac_symbol(spec.clifford, spec.name)
        if not spec.cuts:
            spec.cuts = [CutPair.up_down()]
    else:
        spec.matrix = parse_matrix(data["matrix"]["entries"])
        if spec.matrix.shape[0] != spec.matrix.shape[1]:
            raise SchemaError("matrix entries must form a square matrix")
        if spec.fiber_dim is not None and spec.fiber_dim != spec.matrix.shape[0]:
            raise SchemaError("fiberDim does not match the matrix size")
        spec.powers = [(parse_complex(p["s"]), float(p["theta"])) for p in data["matrix"].get("powers", [])]
    for a in spec.assertions:
        if "cut" in a and a["cut"] >= max(len(spec.cuts), 1):
            raise SchemaError(f"assertion refers to cut {a['cut']}, only {len(spec.cuts)} given")
    return spec
