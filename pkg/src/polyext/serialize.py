"""JSON formats.  Every rational is a string ``"p/q"`` (or ``"p"``).

Parsers raise :class:`FormatError` carrying a path such as
``$.space.vertices[1][0]`` to the offending field.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Dict, List, Optional

from .errors import PolyextError
from .extension import Condition3Report, SearchResult
from .partiso import IsometrySystem, PartialIsometry
from .polytope import SymHRep, SymVRep, canonicalize
from .rational import QMat, QVec, format_rat, parse_rat
from .shiftspace import FinSupportSeq
from .space import PolySpace, Subspace


class FormatError(PolyextError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


# --------------------------------------------------------------------------
# writers


def rat_json(x: Fraction) -> str:
    return format_rat(x)


def vec_json(v) -> List[str]:
    return [format_rat(x) for x in v]


def vecs_json(vs) -> List[List[str]]:
    return [vec_json(v) for v in vs]


def map_json(m: QMat) -> Dict[str, Any]:
    return {"rows": m.rows, "cols": m.cols, "entries": vecs_json(m.data)}


def subspace_json(s: Subspace) -> Dict[str, Any]:
    return {"ambient_dim": s.ambient_dim, "basis": vecs_json(s.basis)}


def space_json(s: PolySpace) -> Dict[str, Any]:
    return {"kind": "space", "dim": s.dim,
            "vertices": vecs_json(s.ball_v.generators),
            "facets": vecs_json(s.ball_h.functionals)}


def partiso_json(o: PartialIsometry) -> Dict[str, Any]:
    return {"kind": "partiso", "space": space_json(o.space),
            "domain_basis": vecs_json(o.dom.basis),
            "range_basis": vecs_json(o.ran.basis),
            "map": vecs_json(o.map.data)}


def system_json(sys: IsometrySystem) -> Dict[str, Any]:
    out = {"kind": "isometry_system", "space": space_json(sys.space),
           "auto": map_json(sys.auto), "embed": map_json(sys.embed), "order": sys.order}
    if sys.source is not None:
        out["source"] = partiso_json(sys.source)
    return out


def report_json(r: Condition3Report, o: PartialIsometry, with_source: bool = True) -> Dict[str, Any]:
    out: Dict[str, Any] = {"kind": "condition3", "n": r.n, "holds": r.holds}
    if with_source:
        out["partiso"] = partiso_json(o)
    if r.holds:
        sys = r.system
        out["system"] = {"space": space_json(sys.space), "auto": map_json(sys.auto),
                         "embed": map_json(sys.embed), "order": sys.order}
    else:
        out["witness"] = vecs_json(r.witness)
        out["lhs"] = format_rat(r.lhs)
        out["rhs"] = format_rat(r.rhs)
    return out


def search_json(res: SearchResult, o: PartialIsometry, n_max: int) -> Dict[str, Any]:
    return {"kind": "search", "n_max": n_max, "n": res.n, "partiso": partiso_json(o),
            "reports": [report_json(r, o, with_source=False) for r in res.reports]}


def seq_json(a: FinSupportSeq) -> Dict[str, Any]:
    return {"kind": "sequence", "space": space_json(a.space),
            "entries": {str(k): vec_json(v) for k, v in a.entries}}


def _render(x, indent: int) -> str:
    pad = "  " * (indent + 1)
    if isinstance(x, dict) and x:
        items = [f"{pad}{json.dumps(k)}: {_render(v, indent + 1)}" for k, v in x.items()]
        return "{\n" + ",\n".join(items) + "\n" + "  " * indent + "}"
    if isinstance(x, list) and any(isinstance(v, (dict, list)) for v in x):
        items = [pad + _render(v, indent + 1) for v in x]
        return "[\n" + ",\n".join(items) + "\n" + "  " * indent + "]"
    return json.dumps(x, ensure_ascii=False)


def dumps(obj: Dict[str, Any]) -> str:
    """Indented JSON with flat lists kept on one line; newline-terminated."""
    return _render(obj, 0) + "\n"


# --------------------------------------------------------------------------
# readers


def _get(obj, key, path):
    if not isinstance(obj, dict):
        raise FormatError(path, "expected an object")
    if key not in obj:
        raise FormatError(path, f"missing field '{key}'")
    return obj[key]


def _int(x, path, minimum=0) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise FormatError(path, f"expected an integer, got {json.dumps(x)}")
    if x < minimum:
        raise FormatError(path, f"expected an integer >= {minimum}, got {x}")
    return x


def parse_rational(x, path="$") -> Fraction:
    if isinstance(x, bool):
        raise FormatError(path, "expected a rational string, got a boolean")
    if isinstance(x, int):
        return Fraction(x)
    if not isinstance(x, str):
        raise FormatError(path, f"expected a rational string, got {json.dumps(x)}")
    try:
        return parse_rat(x)
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(path, str(exc)) from None


def parse_vec(x, dim: Optional[int], path) -> QVec:
    if not isinstance(x, list):
        raise FormatError(path, "expected a list of rationals")
    if dim is not None and len(x) != dim:
        raise FormatError(path, f"expected {dim} entries, got {len(x)}")
    return tuple(parse_rational(v, f"{path}[{i}]") for i, v in enumerate(x))


def parse_vecs(x, dim: Optional[int], path) -> List[QVec]:
    if not isinstance(x, list):
        raise FormatError(path, "expected a list of vectors")
    return [parse_vec(v, dim, f"{path}[{i}]") for i, v in enumerate(x)]


def parse_map(obj, path="$") -> QMat:
    rows = _int(_get(obj, "rows", path), f"{path}.rows")
    cols = _int(_get(obj, "cols", path), f"{path}.cols")
    data = _get(obj, "entries", path)
    entries = parse_vecs(data, cols, f"{path}.entries")
    if len(entries) != rows:
        raise FormatError(f"{path}.entries", f"expected {rows} rows, got {len(entries)}")
    return QMat(rows, cols, tuple(entries))


def parse_subspace(obj, path="$", ambient_dim: Optional[int] = None) -> Subspace:
    d = _int(_get(obj, "ambient_dim", path), f"{path}.ambient_dim")
    if ambient_dim is not None and d != ambient_dim:
        raise FormatError(f"{path}.ambient_dim", f"expected {ambient_dim}, got {d}")
    basis = parse_vecs(_get(obj, "basis", path), d, f"{path}.basis")
    try:
        return Subspace(d, tuple(basis))
    except PolyextError as exc:
        raise FormatError(f"{path}.basis", str(exc)) from None


def parse_polytope(obj, path="$"):
    """A :class:`SymVRep` or :class:`SymHRep` (vertices win when both appear)."""
    d = _int(_get(obj, "dim", path), f"{path}.dim")
    if "vertices" in obj:
        return SymVRep(d, tuple(parse_vecs(obj["vertices"], d, f"{path}.vertices")))
    if "facets" in obj:
        return SymHRep(d, tuple(parse_vecs(obj["facets"], d, f"{path}.facets")))
    raise FormatError(path, "expected 'vertices' or 'facets'")


def parse_space(obj, path="$") -> PolySpace:
    d = _int(_get(obj, "dim", path), f"{path}.dim")
    kind = obj.get("kind", "space")
    if kind != "space":
        raise FormatError(f"{path}.kind", f"expected 'space', got {json.dumps(kind)}")
    v = h = None
    try:
        if "vertices" in obj:
            v = canonicalize(SymVRep(d, tuple(parse_vecs(obj["vertices"], d, f"{path}.vertices"))))
        if "facets" in obj:
            h = canonicalize(SymHRep(d, tuple(parse_vecs(obj["facets"], d, f"{path}.facets"))))
    except FormatError:
        raise
    except PolyextError as exc:
        raise FormatError(path, str(exc)) from None
    if v is None and h is None:
        raise FormatError(path, "expected 'vertices' or 'facets'")
    if v is not None and h is not None and PolySpace(d, ball_h=h, canonical=True).ball_v != v:
        raise FormatError(path, "'vertices' and 'facets' describe different balls")
    return PolySpace(d, ball_v=v, ball_h=h, canonical=True)


def parse_partiso(obj, path="$") -> PartialIsometry:
    space = parse_space(_get(obj, "space", path), f"{path}.space")
    d = space.dim
    dom = parse_vecs(_get(obj, "domain_basis", path), d, f"{path}.domain_basis")
    ran = parse_vecs(_get(obj, "range_basis", path), d, f"{path}.range_basis")
    k = len(dom)
    m = parse_vecs(_get(obj, "map", path), k, f"{path}.map")
    if len(m) != k:
        raise FormatError(f"{path}.map", f"expected {k} rows, got {len(m)}")
    if len(ran) != k:
        raise FormatError(f"{path}.range_basis", f"expected {k} vectors, got {len(ran)}")
    try:
        return PartialIsometry(space, Subspace(d, tuple(dom)), Subspace(d, tuple(ran)),
                               QMat(k, k, tuple(m)))
    except PolyextError as exc:
        raise FormatError(path, str(exc)) from None


def _parse_system_fields(obj, path, source) -> IsometrySystem:
    space = parse_space(_get(obj, "space", path), f"{path}.space")
    auto = parse_map(_get(obj, "auto", path), f"{path}.auto")
    embed = parse_map(_get(obj, "embed", path), f"{path}.embed")
    order = _int(_get(obj, "order", path), f"{path}.order", minimum=1)
    if auto.shape != (space.dim, space.dim):
        raise FormatError(f"{path}.auto", f"expected a {space.dim}x{space.dim} map")
    return IsometrySystem(space, auto, embed, order, source=source)


def parse_system(obj, path="$") -> IsometrySystem:
    source = parse_partiso(obj["source"], f"{path}.source") if "source" in obj else None
    return _parse_system_fields(obj, path, source)


def parse_report(obj, path="$", o: Optional[PartialIsometry] = None):
    """Returns ``(report, partiso)``."""
    if o is None:
        o = parse_partiso(_get(obj, "partiso", path), f"{path}.partiso")
    n = _int(_get(obj, "n", path), f"{path}.n", minimum=1)
    holds = _get(obj, "holds", path)
    if not isinstance(holds, bool):
        raise FormatError(f"{path}.holds", "expected true or false")
    if holds:
        sys = _parse_system_fields(_get(obj, "system", path), f"{path}.system", o)
        return Condition3Report(n, True, system=sys), o
    witness = parse_vecs(_get(obj, "witness", path), o.dom.dim, f"{path}.witness")
    lhs = parse_rational(_get(obj, "lhs", path), f"{path}.lhs")
    rhs = parse_rational(_get(obj, "rhs", path), f"{path}.rhs")
    return Condition3Report(n, False, witness=tuple(witness), lhs=lhs, rhs=rhs), o


def parse_search(obj, path="$"):
    """Returns ``(n, n_max, reports, partiso)``."""
    o = parse_partiso(_get(obj, "partiso", path), f"{path}.partiso")
    n_max = _int(_get(obj, "n_max", path), f"{path}.n_max", minimum=1)
    n = _get(obj, "n", path)
    if n is not None:
        n = _int(n, f"{path}.n", minimum=1)
    raw = _get(obj, "reports", path)
    if not isinstance(raw, list):
        raise FormatError(f"{path}.reports", "expected a list")
    reports = [parse_report(r, f"{path}.reports[{i}]", o)[0] for i, r in enumerate(raw)]
    return n, n_max, reports, o


def parse_seq(obj, path="$") -> FinSupportSeq:
    space = parse_space(_get(obj, "space", path), f"{path}.space")
    raw = _get(obj, "entries", path)
    if not isinstance(raw, dict):
        raise FormatError(f"{path}.entries", "expected an object keyed by integer index")
    entries = {}
    for key, v in raw.items():
        try:
            k = int(key)
        except ValueError:
            raise FormatError(f"{path}.entries", f"index {json.dumps(key)} is not an integer") from None
        entries[k] = parse_vec(v, space.dim, f"{path}.entries.{key}")
    return FinSupportSeq.of(space, entries)


def load_json(text: str, source: str = "<input>"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{source}:{exc.lineno}:{exc.colno}", exc.msg) from None


def kind_of(obj) -> str:
    """The ``kind`` tag, inferred from the fields when absent."""
    if not isinstance(obj, dict):
        raise FormatError("$", "expected a JSON object")
    if "kind" in obj:
        return obj["kind"]
    if "domain_basis" in obj:
        return "partiso"
    if "ambient_dim" in obj:
        return "subspace"
    if "rows" in obj and "entries" in obj:
        return "map"
    if "dim" in obj:
        return "space"
    raise FormatError("$", "cannot tell what kind of object this is")
