"""JSON encoding of ring elements.

An element is ``{"ring": <descriptor>, "n": <dim>, "entries": ...}``.
Rational entries are strings such as ``"3"`` or ``"-1/2"``; residues are
plain integers.  ``Z/m`` elements use ``[[r]]``; product-ring entries are
the list of per-factor entries.
"""

from __future__ import annotations

import json
from dataclasses import fields, is_dataclass
from fractions import Fraction

from .errors import InvalidRingSpec, ParseError
from .rings import Element, MatrixRing, ModularIntRing, ProductRing, Rationals, Ring, make_ring


def scalar_to_json(x):
    if isinstance(x, Fraction):
        return str(x)
    return int(x)


def scalar_from_json(x, K):
    if isinstance(x, bool) or isinstance(x, float):
        raise ParseError(f"entries must be integers or 'a/b' strings, got {x!r}")
    if isinstance(x, str):
        try:
            x = Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad rational entry {x!r}") from None
    elif not isinstance(x, int):
        raise ParseError(f"bad entry {x!r}")
    try:
        return K.coerce(x)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"entry {x!r} has no value in {K.name}") from None


def rows_to_json(rows) -> list:
    return [[scalar_to_json(x) for x in row] for row in rows]


def _payload_to_json(ring: Ring, payload):
    if isinstance(ring, MatrixRing):
        return rows_to_json(payload)
    if isinstance(ring, ModularIntRing):
        return [[int(payload)]]
    if isinstance(ring, ProductRing):
        return [_payload_to_json(f, x) for f, x in zip(ring.factors, payload)]
    raise TypeError(f"cannot encode elements of {ring}")


def _payload_from_json(ring: Ring, entries):
    if isinstance(ring, ProductRing):
        if not isinstance(entries, list) or len(entries) != len(ring.factors):
            raise ParseError(f"expected {len(ring.factors)} component entries")
        return tuple(_payload_from_json(f, e) for f, e in zip(ring.factors, entries))
    if isinstance(ring, ModularIntRing):
        if isinstance(entries, int) and not isinstance(entries, bool):
            entries = [[entries]]
        if not (isinstance(entries, list) and len(entries) == 1 and isinstance(entries[0], list)
                and len(entries[0]) == 1):
            raise ParseError("Z/m entries must be [[r]]")
        return scalar_from_json(entries[0][0], ring.scalars)
    n = ring.n
    if not (isinstance(entries, list) and len(entries) == n
            and all(isinstance(r, list) and len(r) == n for r in entries)):
        raise ParseError(f"expected a {n}x{n} array of entries")
    K = ring.scalars
    return tuple(tuple(scalar_from_json(x, K) for x in row) for row in entries)


def element_to_json(a: Element) -> dict:
    d = dict(a.ring.descriptor())
    d["entries"] = _payload_to_json(a.ring, a.payload)
    return d


def element_from_json(obj, ring: Ring | None = None) -> Element:
    """Decode an element; ``ring`` overrides or checks the embedded descriptor."""
    if not isinstance(obj, dict) or "entries" not in obj:
        raise ParseError("an element needs an 'entries' field")
    if ring is None:
        if "ring" not in obj:
            raise ParseError("an element needs a 'ring' field")
        try:
            ring = make_ring({"ring": obj["ring"], "n": obj.get("n", 1)})
        except InvalidRingSpec as exc:
            raise ParseError(str(exc)) from None
    return Element(ring, _payload_from_json(ring, obj["entries"]))


def loads_element(text: str, ring: Ring | None = None) -> Element:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    return element_from_json(obj, ring)


def dumps(obj) -> str:
    """Canonical JSON: sorted keys, two-space indent, rows kept on one line."""
    return _pretty(json.loads(json.dumps(obj, sort_keys=True, default=_default)), 0)


def _pretty(x, depth: int) -> str:
    pad, inner = "  " * depth, "  " * (depth + 1)
    if isinstance(x, dict):
        if not x:
            return "{}"
        items = [f"{inner}{json.dumps(k)}: {_pretty(v, depth + 1)}" for k, v in x.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(x, list):
        if all(not isinstance(v, (dict, list)) for v in x):
            return json.dumps(x)
        if all(isinstance(v, list) and all(not isinstance(w, (dict, list)) for w in v) for v in x):
            return "[" + ", ".join(json.dumps(v) for v in x) + "]"
        return "[\n" + ",\n".join(inner + _pretty(v, depth + 1) for v in x) + "\n" + pad + "]"
    return json.dumps(x)


def _default(x):
    if isinstance(x, Element):
        return element_to_json(x)
    if isinstance(x, Fraction):
        return str(x)
    if is_dataclass(x):
        return {f.name: getattr(x, f.name) for f in fields(x)}
    raise TypeError(f"cannot serialize {type(x).__name__}")


def sort_key(a: Element):
    """Deterministic ordering for elements of one ring."""
    return json.dumps(_payload_to_json(a.ring, a.payload))


def format_scalar(x) -> str:
    return str(x)


def format_element(a: Element) -> str:
    """Aligned text rendering of a matrix; components stacked for products."""
    ring = a.ring
    if isinstance(ring, ProductRing):
        return "\n".join(f"[{i}] " + format_element(ring.component(a, i)).replace("\n", "\n    ")
                         for i in range(len(ring.factors)))
    if isinstance(ring, ModularIntRing):
        return str(a.payload)
    cells = [[format_scalar(x) for x in row] for row in a.rows]
    width = max((len(c) for row in cells for c in row), default=1)
    return "\n".join("[ " + "  ".join(c.rjust(width) for c in row) + " ]" for row in cells)


def is_rational_ring(ring: Ring) -> bool:
    return isinstance(ring, MatrixRing) and isinstance(ring.scalars, Rationals)
