"""JSON instance documents and machine-readable reports.

Coordinates travel as strings so nothing passes through binary floating
point. Parsing accepts ``"p/q"``, finite decimal strings and JSON numbers
(decimal literals are read exactly); serialization always writes the
canonical ``str(Fraction)`` form, so ``serialize(parse(text)) == text`` for
canonical text.

Document shapes::

    {"kind": "family", "dim": d, "boxes": [[["lo", "hi"], ...], ...], "meta": {...}}
    {"kind": "color-system", "dim": d, "classes": [[box, ...], ...], "meta": {...}}
    {"kind": "cluster-instance", "dim": d, "points": [["x", ...], ...],
     "extents": ["e", ...], "n": n, "epsilon": "e", "delta": "d", "meta": {...}}

A cluster instance may also carry ``"gamma"``.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Union

from . import __version__
from .clustering import BaseBox, ClusterInstance
from .core import AxisBox, Interval, rational
from .errors import BoxHellyError
from .piercing import ColorSystem, Family

KINDS = ("family", "color-system", "cluster-instance")

Payload = Union[Family, ColorSystem, ClusterInstance]


class DocumentError(BoxHellyError, ValueError):
    """Malformed document; ``where`` is ``line L, column C`` or a JSON path."""

    def __init__(self, message: str, where: str = ""):
        super().__init__(f"{where}: {message}" if where else message)
        self.where = where


@dataclass(frozen=True)
class InstanceDocument:
    kind: str
    dim: int
    payload: Payload
    meta: dict = field(default_factory=dict, compare=True)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DocumentError(f"unknown kind {self.kind!r}")


def _num(value: Any, where: str) -> Fraction:
    if isinstance(value, bool) or value is None:
        raise DocumentError(f"expected a rational, got {value!r}", where)
    try:
        return rational(value)
    except (TypeError, ValueError) as exc:
        raise DocumentError(str(exc), where) from None


def _int(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise DocumentError(f"expected an integer, got {value!r}", where)
    return value


def _list(value: Any, where: str) -> list:
    if not isinstance(value, list):
        raise DocumentError(f"expected a list, got {type(value).__name__}", where)
    return value


def _box(raw: Any, dim: int, where: str) -> AxisBox:
    sides = _list(raw, where)
    if len(sides) != dim:
        raise DocumentError(f"box has {len(sides)} sides, dim is {dim}", where)
    out = []
    for j, side in enumerate(sides):
        w = f"{where}[{j}]"
        pair = _list(side, w)
        if len(pair) != 2:
            raise DocumentError("a side is [lo, hi]", w)
        lo, hi = _num(pair[0], w + "[0]"), _num(pair[1], w + "[1]")
        if lo > hi:
            raise DocumentError(f"lo {lo} > hi {hi}", w)
        out.append(Interval(lo, hi))
    return AxisBox(tuple(out))


def _family(raw: Any, dim: int, where: str, allow_empty: bool = True) -> Family:
    boxes = _list(raw, where)
    if not boxes and not allow_empty:
        raise DocumentError("empty class", where)
    return Family(tuple(_box(b, dim, f"{where}[{i}]") for i, b in enumerate(boxes)))


def from_obj(obj: Any) -> InstanceDocument:
    if not isinstance(obj, dict):
        raise DocumentError("document must be a JSON object", "$")
    kind = obj.get("kind")
    if kind not in KINDS:
        raise DocumentError(f"kind must be one of {KINDS}, got {kind!r}", "$.kind")
    dim = _int(obj.get("dim"), "$.dim")
    if dim < 1:
        raise DocumentError("dim must be positive", "$.dim")
    meta = obj.get("meta", {})
    if not isinstance(meta, dict):
        raise DocumentError("meta must be an object", "$.meta")
    if kind == "family":
        fam = _family(obj.get("boxes"), dim, "$.boxes")
        labels = obj.get("labels")
        if labels is not None:
            labels = _list(labels, "$.labels")
            if len(labels) != len(fam):
                raise DocumentError("labels must match boxes", "$.labels")
            fam = Family(fam.boxes, tuple(str(x) for x in labels))
        payload: Payload = fam
    elif kind == "color-system":
        classes = _list(obj.get("classes"), "$.classes")
        if not classes:
            raise DocumentError("a color system needs at least one class", "$.classes")
        payload = ColorSystem(
            tuple(_family(c, dim, f"$.classes[{k}]", allow_empty=False) for k, c in enumerate(classes))
        )
    else:
        points = []
        for i, p in enumerate(_list(obj.get("points"), "$.points")):
            coords = _list(p, f"$.points[{i}]")
            if len(coords) != dim:
                raise DocumentError(f"point has {len(coords)} coordinates, dim is {dim}", f"$.points[{i}]")
            points.append(tuple(_num(x, f"$.points[{i}][{j}]") for j, x in enumerate(coords)))
        extents = [_num(e, f"$.extents[{j}]") for j, e in enumerate(_list(obj.get("extents"), "$.extents"))]
        if len(extents) != dim:
            raise DocumentError("extents must have dim entries", "$.extents")
        try:
            base = BaseBox(tuple(extents))
            inst = ClusterInstance(
                tuple(points),
                base,
                _int(obj.get("n"), "$.n"),
                epsilon=_num(obj.get("epsilon", "1/10"), "$.epsilon"),
                delta=_num(obj.get("delta", "1/10"), "$.delta"),
                gamma=None if obj.get("gamma") is None else _num(obj["gamma"], "$.gamma"),
            )
        except ValueError as exc:
            raise DocumentError(str(exc), "$") from None
        payload = inst
    return InstanceDocument(kind, dim, payload, dict(meta))


def parse(text: str) -> InstanceDocument:
    try:
        obj = json.loads(text, parse_float=Fraction)
    except json.JSONDecodeError as exc:
        raise DocumentError(exc.msg, f"line {exc.lineno}, column {exc.colno}") from None
    return from_obj(obj)


def _q(x: Fraction) -> str:
    return str(x)


def _box_obj(b: AxisBox) -> list:
    return [[_q(s.lo), _q(s.hi)] for s in b.sides]


def to_obj(doc: InstanceDocument) -> dict:
    out: dict[str, Any] = {"kind": doc.kind, "dim": doc.dim, "meta": doc.meta}
    p = doc.payload
    if doc.kind == "family":
        out["boxes"] = [_box_obj(b) for b in p]
        if p.labels is not None:
            out["labels"] = list(p.labels)
    elif doc.kind == "color-system":
        out["classes"] = [[_box_obj(b) for b in cls] for cls in p.classes]
    else:
        out["points"] = [[_q(x) for x in pt] for pt in p.points]
        out["extents"] = [_q(e) for e in p.base.extents]
        out["n"] = p.n
        out["epsilon"] = _q(p.epsilon)
        out["delta"] = _q(p.delta)
        if p.gamma is not None:
            out["gamma"] = _q(p.gamma)
    return out


def dumps(obj: Any) -> str:
    return json.dumps(jsonable(obj), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def serialize(doc: InstanceDocument) -> str:
    return dumps(to_obj(doc))


def document(payload: Payload, meta: dict | None = None) -> InstanceDocument:
    """Wrap a payload in a document, inferring kind and dimension."""
    if isinstance(payload, Family):
        kind, dim = "family", payload.dim
    elif isinstance(payload, ColorSystem):
        kind, dim = "color-system", payload.dim
    elif isinstance(payload, ClusterInstance):
        kind, dim = "cluster-instance", payload.dim
    else:
        raise TypeError(f"cannot wrap {type(payload).__name__}")
    return InstanceDocument(kind, dim, payload, dict(meta or {}))


def jsonable(obj: Any) -> Any:
    """Plain JSON structure for reports: rationals become strings."""
    if isinstance(obj, Fraction):
        return _q(obj)
    if isinstance(obj, (str, int, float, bool)) or obj is None:
        return obj
    if isinstance(obj, AxisBox):
        return _box_obj(obj)
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        out = {f.name: jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
        for extra in ("verdict", "estimate"):
            if hasattr(type(obj), extra) and isinstance(getattr(type(obj), extra), property):
                out[extra] = jsonable(getattr(obj, extra))
        return out
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(x) for x in obj]
    raise TypeError(f"not serializable: {type(obj).__name__}")


def report(command: str, params: dict, result: Any) -> dict:
    return {
        "tool": {"name": "boxhelly", "version": __version__},
        "command": command,
        "params": params,
        "result": result,
    }
