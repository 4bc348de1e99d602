"""JSON descriptors for polytopes, omnioriented manifolds and quadric systems.

Rationals are written as ``"p/q"`` strings (integers as ``"p"``) so that no
value passes through a float.  Every ``*_to_json`` has a matching
``*_from_json`` and the pair round-trips exactly.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from . import linalg
from .errors import ParseError, QtoricError
from .moment_angle import QuadraticSystem
from .polytope import CombPolytope, HalfSpace, HPolytope, vertices_from_halfspaces
from .quasitoric import OmniQT, full_char


def _rat(x: Any) -> Fraction:
    try:
        return linalg.parse_rational(x)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not an exact rational: {x!r}") from exc


def _int(x: Any) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise ParseError(f"expected an integer, got {x!r}")
    return x


def _field(obj: Any, key: str) -> Any:
    if not isinstance(obj, dict) or key not in obj:
        raise ParseError(f"missing field {key!r}")
    return obj[key]


def rat_str(q) -> str:
    return linalg.format_rational(q)


# polytopes ----------------------------------------------------------------


def hpolytope_to_json(P: HPolytope) -> dict:
    return {
        "dim": P.dim,
        "halfspaces": [
            {"normal": [rat_str(a) for a in h.normal], "offset": rat_str(h.offset)} for h in P.halfspaces
        ],
    }


def hpolytope_from_json(obj: Any) -> HPolytope:
    dim = _int(_field(obj, "dim"))
    raw = _field(obj, "halfspaces")
    if not isinstance(raw, list):
        raise ParseError("halfspaces must be a list")
    hs = []
    for h in raw:
        normal = _field(h, "normal")
        if not isinstance(normal, list) or len(normal) != dim:
            raise ParseError(f"normal must be a list of {dim} rationals")
        try:
            hs.append(HalfSpace(tuple(_rat(a) for a in normal), _rat(_field(h, "offset"))))
        except QtoricError as exc:
            raise ParseError(str(exc)) from exc
    return vertices_from_halfspaces(hs, dim)


def comb_to_json(P: CombPolytope) -> dict:
    return {"dim": P.dim, "num_facets": P.m, "vertices": [list(v) for v in P.vertex_sets]}


def comb_from_json(obj: Any) -> CombPolytope:
    dim = _int(_field(obj, "dim"))
    m = _int(_field(obj, "num_facets"))
    raw = _field(obj, "vertices")
    if not isinstance(raw, list):
        raise ParseError("vertices must be a list")
    vsets = []
    for v in raw:
        if not isinstance(v, list):
            raise ParseError("each vertex must be a list of facet labels")
        vsets.append(tuple(sorted(_int(i) for i in v)))
    try:
        return CombPolytope(dim, m, tuple(vsets))
    except QtoricError as exc:
        raise ParseError(str(exc)) from exc


def polytope_from_json(obj: Any):
    """Either descriptor: half-spaces if present, otherwise vertex sets."""
    if isinstance(obj, dict) and "halfspaces" in obj:
        return hpolytope_from_json(obj)
    return comb_from_json(obj)


def polytope_to_json(P) -> dict:
    return hpolytope_to_json(P) if isinstance(P, HPolytope) else comb_to_json(P)


# omnioriented manifolds ------------------------------------------------------


def vertex_key(w) -> str:
    return json.dumps(list(w))


def omni_to_json(M: OmniQT) -> dict:
    out = {
        "polytope": comb_to_json(M.polytope),
        "lambda_star": [list(row) for row in M.lambda_star],
        "signs": {vertex_key(w): s for w, s in zip(M.vertex_sets, M.signs)},
    }
    if M.geometry is not None:
        out["geometry"] = hpolytope_to_json(M.geometry)
    return out


def omni_from_json(obj: Any) -> OmniQT:
    """Parse without checking the dicharacteristic; ``verify`` reports on that."""
    P = comb_from_json(_field(obj, "polytope"))
    lam = _field(obj, "lambda_star")
    if not isinstance(lam, list) or len(lam) != P.dim:
        raise ParseError(f"lambda_star must have {P.dim} rows")
    rows = []
    for row in lam:
        if not isinstance(row, list) or len(row) != P.m - P.dim:
            raise ParseError(f"lambda_star rows must have {P.m - P.dim} entries")
        rows.append([_int(x) for x in row])
    raw_signs = _field(obj, "signs")
    if not isinstance(raw_signs, dict):
        raise ParseError("signs must be an object keyed by vertex")
    signs = {}
    for key, s in raw_signs.items():
        try:
            w = tuple(sorted(json.loads(key)))
        except (json.JSONDecodeError, TypeError) as exc:
            raise ParseError(f"bad vertex key {key!r}") from exc
        if s not in (1, -1) or isinstance(s, bool):
            raise ParseError(f"sign at {key} must be 1 or -1")
        signs[w] = s
    if set(signs) != set(P.vertex_sets):
        raise ParseError("signs must be given at exactly the vertices of the polytope")
    geometry = hpolytope_from_json(obj["geometry"]) if obj.get("geometry") is not None else None
    try:
        return OmniQT(P, full_char(rows), tuple(signs[w] for w in P.vertex_sets), geometry)
    except QtoricError as exc:
        raise ParseError(str(exc)) from exc


# quadrics and shifts --------------------------------------------------------------


def system_to_json(system: QuadraticSystem) -> dict:
    return {
        "m": system.m,
        "equations": [
            {"coeffs": [rat_str(c) for c in row], "constant": rat_str(const)}
            for row, const in zip(system.coeffs, system.constants)
        ],
    }


def system_from_json(obj: Any) -> QuadraticSystem:
    m = _int(_field(obj, "m"))
    eqs = _field(obj, "equations")
    if not isinstance(eqs, list):
        raise ParseError("equations must be a list")
    coeffs, consts = [], []
    for e in eqs:
        row = _field(e, "coeffs")
        if not isinstance(row, list) or len(row) != m:
            raise ParseError(f"coeffs must have {m} entries")
        coeffs.append(tuple(_rat(c) for c in row))
        consts.append(_rat(_field(e, "constant")))
    return QuadraticSystem(m, tuple(coeffs), tuple(consts))


def shift_from_json(obj: Any) -> list:
    """A shift vector: a bare list of rationals or ``{"shift": [...]}``."""
    if isinstance(obj, dict):
        obj = _field(obj, "shift")
    if not isinstance(obj, list):
        raise ParseError("shift must be a list of rationals")
    return [_rat(x) for x in obj]


def matrix_to_json(rows) -> list:
    return [[rat_str(x) for x in row] for row in rows]


# files ---------------------------------------------------------------------------


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2) + "\n"


def read_json(path: str | Path) -> Any:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc


def write_json(path: str | Path, obj: Any) -> None:
    Path(path).write_text(dumps(obj))


def digest(path: str | Path) -> str:
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    return "sha256:" + hashlib.sha256(data).hexdigest()
