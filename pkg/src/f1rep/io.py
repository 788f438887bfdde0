"""JSON instance documents: one base quiver, named windings, optional gradings and obstructions.

Layout::

    {
      "base": {"vertices": ["*"], "arrows": [{"id": "blue", "source": "*", "target": "*"}]},
      "windings": [
        {"name": "V",
         "vertices": [{"id": "1", "color": "*"}],
         "arrows": [{"id": "a", "source": "1", "target": "1", "color": "blue"}]}
      ],
      "gradings": {"V": [{"1": 0}]},
      "obstructions": [{"winding": "V", "E": [["a", 1]], "D": [["a", 1]], "s": 1}]
    }

Letters are ``[arrow id, +1 | -1]`` in traversal order. The canonical form
is ``json.dumps(..., sort_keys=True, indent=2)`` plus a trailing newline;
list order is meaningful and kept.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import jsonschema

from .errors import InstanceFormatError, StringError, StructuralError
from .nice import Obstruction, SignedLetter, StringWord
from .winding import Quiver, Winding

_ID = {"type": "string", "minLength": 1}
_EDGE = {
    "type": "object",
    "required": ["id", "source", "target"],
    "properties": {"id": _ID, "source": _ID, "target": _ID},
    "additionalProperties": False,
}
_LETTERS = {
    "type": "array",
    "minItems": 1,
    "items": {
        "type": "array",
        "prefixItems": [_ID, {"enum": [1, -1]}],
        "minItems": 2,
        "maxItems": 2,
    },
}

SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["base", "windings"],
    "additionalProperties": False,
    "properties": {
        "base": {
            "type": "object",
            "required": ["vertices", "arrows"],
            "additionalProperties": False,
            "properties": {
                "vertices": {"type": "array", "items": _ID},
                "arrows": {"type": "array", "items": _EDGE},
            },
        },
        "windings": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "vertices", "arrows"],
                "additionalProperties": False,
                "properties": {
                    "name": _ID,
                    "vertices": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "required": ["id", "color"],
                            "properties": {"id": _ID, "color": _ID},
                            "additionalProperties": False,
                        },
                    },
                    "arrows": {
                        "type": "array",
                        "items": {
                            **_EDGE,
                            "required": ["id", "source", "target", "color"],
                            "properties": {**_EDGE["properties"], "color": _ID},
                        },
                    },
                },
            },
        },
        "gradings": {
            "type": "object",
            "additionalProperties": {
                "type": "array",
                "items": {"type": "object", "additionalProperties": {"type": "integer"}},
            },
        },
        "obstructions": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["winding", "E", "D", "s"],
                "additionalProperties": False,
                "properties": {
                    "winding": _ID,
                    "E": _LETTERS,
                    "D": _LETTERS,
                    "s": {"type": "integer", "minimum": 1},
                },
            },
        },
    },
}

_VALIDATOR = jsonschema.Draft202012Validator(SCHEMA)


@dataclass
class ObstructionRecord:
    winding: str
    obstruction: Obstruction


@dataclass
class InstanceFile:
    base: Quiver
    windings: dict[str, Winding]
    gradings: dict[str, list[dict[str, int]]] = field(default_factory=dict)
    obstructions: list[ObstructionRecord] = field(default_factory=list)

    def winding(self, name: str | None = None) -> Winding:
        """The named winding, or the first one."""
        if name is None:
            return next(iter(self.windings.values()))
        try:
            return self.windings[name]
        except KeyError:
            raise InstanceFormatError(f"no winding named {name!r}; have {sorted(self.windings)}") from None


def _letters(w: Winding, raw) -> StringWord:
    return StringWord.of(w, [SignedLetter(a, sign == -1) for a, sign in raw])


def from_dict(doc) -> InstanceFile:
    errors = sorted(_VALIDATOR.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        e = errors[0]
        raise InstanceFormatError(f"{e.json_path}: {e.message}")
    if not doc["windings"]:
        raise InstanceFormatError("$.windings: no winding")
    b = doc["base"]
    try:
        base = Quiver(tuple(b["vertices"]), tuple((a["id"], a["source"], a["target"]) for a in b["arrows"]))
    except StructuralError as exc:
        raise StructuralError(f"$.base: {exc}") from exc
    windings: dict[str, Winding] = {}
    for k, wd in enumerate(doc["windings"]):
        name = wd["name"]
        if name in windings:
            raise InstanceFormatError(f"$.windings[{k}].name: duplicate winding name {name!r}")
        try:
            windings[name] = Winding.build(
                base,
                [(v["id"], v["color"]) for v in wd["vertices"]],
                [(a["id"], a["source"], a["target"], a["color"]) for a in wd["arrows"]],
            )
        except StructuralError as exc:
            raise StructuralError(f"$.windings[{k}]: {exc}") from exc
    gradings = {}
    for name, seq in doc.get("gradings", {}).items():
        if name not in windings:
            raise InstanceFormatError(f"$.gradings.{name}: unknown winding")
        gradings[name] = [dict(g) for g in seq]
    obstructions = []
    for k, o in enumerate(doc.get("obstructions", [])):
        name = o["winding"]
        if name not in windings:
            raise InstanceFormatError(f"$.obstructions[{k}].winding: unknown winding {name!r}")
        w = windings[name]
        try:
            obs = Obstruction(_letters(w, o["E"]), _letters(w, o["D"]), o["s"])
        except StringError as exc:
            raise StringError(f"$.obstructions[{k}]: {exc}") from exc
        obstructions.append(ObstructionRecord(name, obs))
    return InstanceFile(base, windings, gradings, obstructions)


def loads(text: str) -> InstanceFile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return from_dict(doc)


def load(path) -> InstanceFile:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InstanceFormatError(f"{path}: {exc.strerror or exc}") from exc
    try:
        return loads(text)
    except InstanceFormatError as exc:
        raise InstanceFormatError(f"{path}: {exc}") from exc


def quiver_dict(q: Quiver) -> dict:
    return {
        "vertices": list(q.vertices),
        "arrows": [{"id": a.id, "source": a.source, "target": a.target} for a in q.arrows],
    }


def winding_dict(name: str, w: Winding) -> dict:
    return {
        "name": name,
        "vertices": [{"id": v, "color": w.vertex_color[v]} for v in w.total.vertices],
        "arrows": [
            {"id": a.id, "source": a.source, "target": a.target, "color": w.arrow_color[a.id]}
            for a in w.total.arrows
        ],
    }


def _letters_list(sw: StringWord) -> list:
    return [[x.arrow, -1 if x.inverse else 1] for x in sw.letters]


def obstruction_dict(name: str, o: Obstruction) -> dict:
    return {"winding": name, "E": _letters_list(o.E), "D": _letters_list(o.D), "s": o.s}


def to_dict(inst: InstanceFile) -> dict:
    doc = {
        "base": quiver_dict(inst.base),
        "windings": [winding_dict(n, w) for n, w in inst.windings.items()],
    }
    if inst.gradings:
        doc["gradings"] = {n: [dict(g) for g in seq] for n, seq in inst.gradings.items()}
    if inst.obstructions:
        doc["obstructions"] = [obstruction_dict(r.winding, r.obstruction) for r in inst.obstructions]
    return doc


def canonical(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def dumps(inst: InstanceFile) -> str:
    return canonical(to_dict(inst))


def dump(inst: InstanceFile, path) -> None:
    Path(path).write_text(dumps(inst))


def single(name: str, w: Winding, **extra) -> InstanceFile:
    """Wrap one winding in an instance document."""
    return InstanceFile(w.base, {name: w}, **extra)
