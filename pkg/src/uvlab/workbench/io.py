"""JSON documents for posets, spaces, algebras, maps and partitions.

Element names are always explicit strings.  Relations may list covers only or
the full order; ``emit_*`` always writes covers in id order, so parsing and
re-emitting is idempotent.
"""
from __future__ import annotations

import json
from pathlib import Path

import jsonschema

from ..balg import FiniteBA, ba_from_tables, default_atom_labels, powerset_ba
from ..errors import SchemaError, UnknownElement
from ..order import Poset, validate_poset
from ..uvspace import FiniteSpace, SpaceMap, space_from_generators

_NAME = {"type": "string", "minLength": 1}
_NAMES = {"type": "array", "items": _NAME}

POSET_SCHEMA = {
    "type": "object",
    "properties": {
        "name": {"type": "string"},
        "elements": {**_NAMES, "uniqueItems": True},
        "leq": {"type": "array",
                "items": {"type": "array", "items": _NAME, "minItems": 2, "maxItems": 2}},
        "opens": {"type": "array", "items": _NAMES},
    },
    "required": ["elements"],
    "anyOf": [{"required": ["leq"]}, {"required": ["opens"]}],
}

_TABLE = {"type": "array", "items": {"type": "array", "items": {"type": "integer", "minimum": 0}}}

BA_SCHEMA = {
    "type": "object",
    "oneOf": [
        {"properties": {"atoms": {"type": "integer", "minimum": 0},
                        "labels": {**_NAMES, "uniqueItems": True},
                        "name": {"type": "string"}},
         "required": ["atoms"]},
        {"properties": {"carrier": {"type": "integer", "minimum": 1},
                        "meet": _TABLE, "join": _TABLE,
                        "neg": {"type": "array", "items": {"type": "integer", "minimum": 0}},
                        "zero": {"type": "integer", "minimum": 0},
                        "one": {"type": "integer", "minimum": 0},
                        "name": {"type": "string"}},
         "required": ["carrier", "meet", "join", "neg", "zero", "one"]},
    ],
}

_SPACE_REF = {"oneOf": [{"type": "string"}, {"type": "object"}]}

MAP_SCHEMA = {
    "type": "object",
    "properties": {"dom": _SPACE_REF, "cod": _SPACE_REF,
                   "map": {"type": "object", "additionalProperties": _NAME}},
    "required": ["dom", "cod", "map"],
}

PARTITION_SCHEMA = {
    "type": "object",
    "properties": {"space": _SPACE_REF, "blocks": {"type": "array", "items": _NAMES}},
    "required": ["space", "blocks"],
}


def _location(path) -> str:
    return "/" + "/".join(str(p) for p in path)


def validate(doc, schema):
    errors = sorted(jsonschema.Draft202012Validator(schema).iter_errors(doc),
                    key=lambda e: (len(e.absolute_path), list(map(str, e.absolute_path))))
    if errors:
        err = jsonschema.exceptions.best_match(errors)
        raise SchemaError(err.message, _location(err.absolute_path))


def load_json(path) -> dict:
    path = Path(path)
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path.name}: {exc.msg}", f"line {exc.lineno}, column {exc.colno}") from None
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc.strerror}") from None


def dumps(doc) -> str:
    return json.dumps(doc, ensure_ascii=False, indent=2) + "\n"


def _resolve(ref, base: Path | None) -> dict:
    if isinstance(ref, str):
        p = Path(ref)
        if base is not None and not p.is_absolute():
            p = base / p
        return load_json(p)
    return ref


def _known(elements, names, where):
    known = set(elements)
    for t, name in enumerate(names):
        if name not in known:
            raise SchemaError(f"unknown element {name!r}", f"{where}/{t}")


def parse_poset(doc) -> Poset:
    validate(doc, POSET_SCHEMA)
    elements = doc["elements"]
    if "leq" not in doc:
        return parse_space(doc).order
    for t, pair in enumerate(doc["leq"]):
        _known(elements, pair, f"/leq/{t}")
    try:
        return validate_poset(doc["leq"], elements)
    except UnknownElement as exc:  # pragma: no cover - caught above
        raise SchemaError(str(exc), "/leq") from None


def parse_space(doc) -> FiniteSpace:
    validate(doc, POSET_SCHEMA)
    name = doc.get("name")
    if "opens" in doc:
        elements = doc["elements"]
        gens = []
        for t, U in enumerate(doc["opens"]):
            _known(elements, U, f"/opens/{t}")
            gens.append(sum(1 << elements.index(x) for x in set(U)))
        try:
            X = space_from_generators(elements, gens, name=name)
        except ValueError as exc:
            raise SchemaError(str(exc), "/opens") from None
        if "leq" in doc and parse_poset({"elements": elements, "leq": doc["leq"]}) != X.order:
            raise SchemaError("leq disagrees with the order generated by opens", "/leq")
        return X
    return FiniteSpace(parse_poset(doc), name=name)


def emit_poset(P) -> dict:
    if isinstance(P, FiniteSpace):
        P = P.order
    return {"elements": list(P.labels),
            "leq": [[P.labels[a], P.labels[b]] for a, b in sorted(P.covers)]}


emit_space = emit_poset


def parse_ba(doc) -> FiniteBA:
    validate(doc, BA_SCHEMA)
    if "atoms" in doc:
        k = doc["atoms"]
        labels = doc.get("labels")
        if labels is not None and len(labels) != k:
            raise SchemaError(f"expected {k} labels, got {len(labels)}", "/labels")
        if labels is None:
            return powerset_ba(k)
        return FiniteBA(k, labels=labels, name=doc.get("name"))
    n = doc["carrier"]
    for key in ("meet", "join"):
        table = doc[key]
        if len(table) != n:
            raise SchemaError(f"{key} table needs {n} rows", f"/{key}")
        for r, row in enumerate(table):
            if len(row) != n:
                raise SchemaError(f"row needs {n} entries", f"/{key}/{r}")
            for c, v in enumerate(row):
                if v >= n:
                    raise SchemaError(f"{v} is outside the carrier", f"/{key}/{r}/{c}")
    if len(doc["neg"]) != n:
        raise SchemaError(f"neg needs {n} entries", "/neg")
    for key in ("zero", "one"):
        if doc[key] >= n:
            raise SchemaError(f"{doc[key]} is outside the carrier", f"/{key}")
    for c, v in enumerate(doc["neg"]):
        if v >= n:
            raise SchemaError(f"{v} is outside the carrier", f"/neg/{c}")
    A, _ = ba_from_tables(n, doc["meet"], doc["join"], doc["neg"], doc["zero"], doc["one"])
    return A


def emit_ba(A: FiniteBA) -> dict:
    doc = {"atoms": A.k}
    if tuple(A.labels) != tuple(default_atom_labels(A.k)):
        doc["labels"] = list(A.labels)
    return doc


def parse_map(doc, base=None) -> SpaceMap:
    validate(doc, MAP_SCHEMA)
    base = Path(base) if base is not None else None
    dom = parse_space(_resolve(doc["dom"], base))
    cod = parse_space(_resolve(doc["cod"], base))
    mapping = doc["map"]
    missing = [x for x in dom.labels if x not in mapping]
    if missing:
        raise SchemaError(f"no image for {missing[0]!r}", "/map")
    for x, y in mapping.items():
        if x not in dom.labels:
            raise SchemaError(f"unknown element {x!r}", f"/map/{x}")
        if y not in cod.labels:
            raise SchemaError(f"unknown element {y!r}", f"/map/{x}")
    return SpaceMap.from_names(dom, cod, mapping)


def emit_map(f: SpaceMap) -> dict:
    return {"dom": emit_space(f.dom), "cod": emit_space(f.cod), "map": f.as_names()}


def parse_partition(doc, base=None):
    validate(doc, PARTITION_SCHEMA)
    base = Path(base) if base is not None else None
    X = parse_space(_resolve(doc["space"], base))
    blocks = []
    for t, names in enumerate(doc["blocks"]):
        _known(X.labels, names, f"/blocks/{t}")
        blocks.append(X.mask(names))
    return X, blocks


def emit_partition(X: FiniteSpace, blocks) -> dict:
    return {"space": emit_space(X), "blocks": [X.names(U) for U in blocks]}


def load_poset(path) -> Poset:
    return parse_poset(load_json(path))


def load_space(path) -> FiniteSpace:
    return parse_space(load_json(path))


def load_ba(path) -> FiniteBA:
    return parse_ba(load_json(path))


def load_map(path) -> SpaceMap:
    return parse_map(load_json(path), Path(path).parent)


def load_partition(path):
    return parse_partition(load_json(path), Path(path).parent)
