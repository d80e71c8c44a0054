"""Reading and writing machine instance files.

An instance is a JSON document:

    {
      "dimension": 1,
      "states": ["p", "q"],
      "alphabet": ["s"],
      "transitions": [
        {"from": "p", "effect": [0], "op": {"push": "s"}, "to": "q"},
        {"from": "q", "effect": [1], "op": "internal", "to": "q"}
      ],
      "bidirected": true
    }

`op` is the string "internal" or a one-key object {"push": sym} / {"pop": sym}.
The optional "bidirected" flag asks the parser to complete the reverse
transitions.  Unknown fields are rejected with the JSON path of the offender.
The serializer emits a canonical form: sorted states, alphabet and
transitions, stable key order, explicit transition list, trailing newline.
"""

from __future__ import annotations

import json
from typing import Any

from .model import INTERNAL, Machine, StackOp, Transition, bidirected_closure


class InstanceFormatError(ValueError):
    """Raised on malformed instance files; `path` points at the bad element."""

    def __init__(self, message: str, path: str = "$"):
        super().__init__(f"{path}: {message}")
        self.path = path


def _expect(cond: bool, message: str, path: str) -> None:
    if not cond:
        raise InstanceFormatError(message, path)


def _check_fields(obj: dict, allowed: set[str], required: set[str], path: str) -> None:
    for key in obj:
        _expect(key in allowed, f"unknown field {key!r}", path)
    for key in required:
        _expect(key in obj, f"missing field {key!r}", path)


def _parse_op(raw: Any, path: str) -> StackOp:
    if raw == "internal":
        return INTERNAL
    _expect(isinstance(raw, dict), 'op must be "internal" or {"push"/"pop": symbol}', path)
    _expect(len(raw) == 1, "op object must have exactly one key", path)
    kind, symbol = next(iter(raw.items()))
    _expect(kind in ("push", "pop"), f"unknown op kind {kind!r}", path)
    _expect(isinstance(symbol, str) and symbol != "", "op symbol must be a non-empty string", path)
    return StackOp(kind, symbol)


def _parse_transition(raw: Any, dimension: int, path: str) -> Transition:
    _expect(isinstance(raw, dict), "transition must be an object", path)
    _check_fields(raw, {"from", "effect", "op", "to"}, {"from", "effect", "op", "to"}, path)
    _expect(isinstance(raw["from"], str), "'from' must be a string", path + ".from")
    _expect(isinstance(raw["to"], str), "'to' must be a string", path + ".to")
    effect = raw["effect"]
    _expect(
        isinstance(effect, list) and all(isinstance(x, int) and not isinstance(x, bool) for x in effect),
        "'effect' must be a list of integers",
        path + ".effect",
    )
    _expect(len(effect) == dimension, f"'effect' must have {dimension} entries", path + ".effect")
    op = _parse_op(raw["op"], path + ".op")
    return Transition(raw["from"], tuple(effect), op, raw["to"])


def parse_instance(text: str) -> Machine:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"not valid JSON: {exc.msg}", f"line {exc.lineno} column {exc.colno}")
    _expect(isinstance(doc, dict), "top level must be an object", "$")
    _check_fields(
        doc,
        {"dimension", "states", "alphabet", "transitions", "bidirected"},
        {"dimension", "states", "alphabet", "transitions"},
        "$",
    )
    dim = doc["dimension"]
    _expect(isinstance(dim, int) and not isinstance(dim, bool) and dim >= 0, "dimension must be a non-negative integer", "$.dimension")
    for key in ("states", "alphabet"):
        _expect(
            isinstance(doc[key], list) and all(isinstance(s, str) and s for s in doc[key]),
            f"{key} must be a list of non-empty strings",
            f"$.{key}",
        )
    _expect(isinstance(doc["transitions"], list), "transitions must be a list", "$.transitions")
    transitions = [
        _parse_transition(raw, dim, f"$.transitions[{i}]") for i, raw in enumerate(doc["transitions"])
    ]
    bidirected = doc.get("bidirected", False)
    _expect(isinstance(bidirected, bool), "bidirected must be a boolean", "$.bidirected")
    try:
        machine = Machine.make(dim, doc["states"], doc["alphabet"], transitions)
    except ValueError as exc:
        raise InstanceFormatError(str(exc), "$")
    if bidirected:
        machine = bidirected_closure(machine)
    return machine


def _op_json(op: StackOp) -> Any:
    if op.kind == "internal":
        return "internal"
    return {op.kind: op.symbol}


def serialize_instance(m: Machine) -> str:
    doc = {
        "dimension": m.dimension,
        "states": list(m.states),
        "alphabet": list(m.alphabet),
        "transitions": [
            {"from": t.source, "effect": list(t.effect), "op": _op_json(t.op), "to": t.target}
            for t in m.transitions
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def load_instance(path: str) -> Machine:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_instance(fh.read())


def save_instance(m: Machine, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_instance(m))
