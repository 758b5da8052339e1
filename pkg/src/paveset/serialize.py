"""JSON instance documents and report encoding.

Scalars are always strings (``"3"``, ``"1/3"``, ``"inf"``); JSON integers are
accepted on input as a convenience but never emitted.  Subsets are sorted
index arrays.  :func:`emit_instance` writes the canonical form, which
:func:`parse_instance` reads back to an identical document.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping

from .capacity import (
    Capacity,
    NatFilterCapacity,
    NatFilterKind,
    PartialCapacity,
    SetFunction,
)
from .core import (
    Constant,
    HarmonicAbove,
    HarmonicBelow,
    LinearGrowth,
    NatFn,
    PointFn,
    Staircase,
    TwoPoint,
    canonical_key,
    check_ground,
    mask_of,
    members,
)
from .errors import PavesetError
from .extrat import ExtRat, ext, fmt
from .paving import NatPavingKind, NatSet, Paving

SCHEMA_VERSION = 1

SECTIONS = (
    "pavings",
    "capacities",
    "partial_capacities",
    "functions",
    "set_functions",
    "staircases",
    "filter_capacities",
)


class ParseError(PavesetError):
    invariant = "ParseError"


class ValidationError(PavesetError):
    """A document that parses but violates an invariant; ``invariant`` names it."""

    invariant = "ValidationError"

    def __init__(self, message: str, invariant: str | None = None, **details: object) -> None:
        if invariant:
            self.invariant = invariant
        super().__init__(message, **details)


@dataclass
class InstanceDocument:
    n: int | None  # None for the ℕ model
    labels: tuple[str, ...] | None = None
    pavings: dict[str, Paving | NatPavingKind] = field(default_factory=dict)
    capacities: dict[str, Capacity] = field(default_factory=dict)
    partial_capacities: dict[str, tuple[str, PartialCapacity]] = field(default_factory=dict)
    functions: dict[str, PointFn | NatFn] = field(default_factory=dict)
    set_functions: dict[str, SetFunction] = field(default_factory=dict)
    staircases: dict[str, tuple[str | None, Staircase]] = field(default_factory=dict)
    filter_capacities: dict[str, NatFilterCapacity] = field(default_factory=dict)

    @property
    def is_nat(self) -> bool:
        return self.n is None

    def get(self, section: str, name: str) -> Any:
        table = getattr(self, section)
        if name not in table:
            raise ValidationError(f"no {section[:-1].replace('_', ' ')} named {name!r}", "UnknownName")
        return table[name]


# -- scalar and subset encoding -----------------------------------------------


def encode_value(v: ExtRat) -> str:
    return fmt(v)


def decode_value(raw: object, where: str) -> ExtRat:
    if isinstance(raw, bool) or not isinstance(raw, (str, int)):
        raise ValidationError(f"{where}: values must be strings like \"1/3\" or \"inf\"", "BadValue")
    try:
        return ext(raw)
    except (ValueError, ZeroDivisionError, TypeError):
        raise ValidationError(f"{where}: cannot read {raw!r} as a rational", "BadValue") from None


def encode_subset(mask: int) -> list[int]:
    return members(mask)


def decode_subset(raw: object, n: int, where: str) -> int:
    if not isinstance(raw, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in raw):
        raise ValidationError(f"{where}: subsets are arrays of element indices", "BadSubset")
    if any(x < 0 or x >= n for x in raw):
        raise ValidationError(f"{where}: element outside 0..{n - 1}", "BadSubset")
    return mask_of(raw)


def encode_natset(S: NatSet) -> dict[str, object]:
    return {"cofinite": S.cofinite, "elements": list(S.elements)}


# -- tails --------------------------------------------------------------------

_TAIL_FIELDS = {
    "constant": (Constant, ("c",)),
    "harmonic_above": (HarmonicAbove, ("L", "c")),
    "harmonic_below": (HarmonicBelow, ("L", "c")),
    "linear_growth": (LinearGrowth, ("c",)),
    "two_point": (TwoPoint, ("lo", "hi")),
}
_TAIL_NAMES = {cls: name for name, (cls, _) in _TAIL_FIELDS.items()}


def encode_tail(t: object) -> dict[str, str]:
    name = _TAIL_NAMES[type(t)]
    out = {"kind": name}
    for attr in _TAIL_FIELDS[name][1]:
        out[attr] = encode_value(getattr(t, attr))
    return out


def decode_tail(raw: object, where: str) -> object:
    if not isinstance(raw, dict) or raw.get("kind") not in _TAIL_FIELDS:
        raise ValidationError(f"{where}: tail kind must be one of {sorted(_TAIL_FIELDS)}", "BadTail")
    cls, attrs = _TAIL_FIELDS[raw["kind"]]
    try:
        return cls(*(decode_value(raw[a], f"{where}.{a}") for a in attrs))
    except KeyError as exc:
        raise ValidationError(f"{where}: missing tail field {exc.args[0]}", "BadTail") from None
    except ValueError as exc:
        raise ValidationError(f"{where}: {exc}", "BadTail") from None


# -- parsing ------------------------------------------------------------------


def _wrap(where: str, fn, *args):
    try:
        return fn(*args)
    except ValidationError:
        raise
    except PavesetError as exc:
        raise ValidationError(f"{where}: {exc.args[0]}", exc.invariant, **exc.details) from None
    except (ValueError, TypeError) as exc:
        raise ValidationError(f"{where}: {exc}", "Invalid") from None


def _pairs(raw: object, n: int, where: str) -> dict[int, ExtRat]:
    if not isinstance(raw, list):
        raise ValidationError(f"{where}: expected a list of [subset, value] pairs", "BadTable")
    out: dict[int, ExtRat] = {}
    for i, item in enumerate(raw):
        if not isinstance(item, list) or len(item) != 2:
            raise ValidationError(f"{where}[{i}]: expected [subset, value]", "BadTable")
        mask = decode_subset(item[0], n, f"{where}[{i}]")
        if mask in out:
            raise ValidationError(f"{where}[{i}]: subset listed twice", "BadTable")
        out[mask] = decode_value(item[1], f"{where}[{i}]")
    return out


def _full_table(raw: object, n: int, where: str) -> tuple[ExtRat, ...]:
    pairs = _pairs(raw, n, where)
    missing = [m for m in range(1 << n) if m not in pairs]
    if missing:
        raise ValidationError(f"{where}: no value for subset {members(missing[0])}", "IncompleteTable")
    return tuple(pairs[m] for m in range(1 << n))


def _parse_ground(raw: object) -> tuple[int | None, tuple[str, ...] | None]:
    if raw == "nat":
        return None, None
    if isinstance(raw, int) and not isinstance(raw, bool):
        n, labels = raw, None
    elif isinstance(raw, dict) and isinstance(raw.get("size"), int):
        n = raw["size"]
        labels = raw.get("labels")
        if labels is not None:
            if not isinstance(labels, list) or len(labels) != n or not all(isinstance(x, str) for x in labels):
                raise ValidationError("ground.labels: need one string per element", "BadGround")
            labels = tuple(labels)
    else:
        raise ValidationError("ground: expected a size, {size, labels} or \"nat\"", "BadGround")
    _wrap("ground", check_ground, n)
    return n, labels


def document_from_json(data: object) -> InstanceDocument:
    if not isinstance(data, dict):
        raise ValidationError("document must be a JSON object", "BadDocument")
    unknown = set(data) - {"ground", "schema_version", *SECTIONS}
    if unknown:
        raise ValidationError(f"unknown top-level keys {sorted(unknown)}", "BadDocument")
    if "ground" not in data:
        raise ValidationError("missing ground", "BadDocument")
    n, labels = _parse_ground(data["ground"])
    doc = InstanceDocument(n, labels)
    for section in SECTIONS:
        if not isinstance(data.get(section, {}), dict):
            raise ValidationError(f"{section}: expected an object of named entries", "BadDocument")

    for name, raw in data.get("pavings", {}).items():
        where = f"pavings.{name}"
        if isinstance(raw, str):
            try:
                doc.pavings[name] = NatPavingKind(raw)
            except ValueError:
                raise ValidationError(f"{where}: unknown ℕ paving kind {raw!r}", "BadPaving") from None
            if not doc.is_nat:
                raise ValidationError(f"{where}: ℕ pavings need ground \"nat\"", "GroundMismatch")
            continue
        if doc.is_nat or not isinstance(raw, list):
            raise ValidationError(f"{where}: expected a list of subsets on a finite ground", "BadPaving")
        sets = [decode_subset(s, n, f"{where}[{i}]") for i, s in enumerate(raw)]
        if len(set(sets)) != len(sets):
            raise ValidationError(f"{where}: duplicate subset", "BadPaving")
        doc.pavings[name] = _wrap(where, Paving, n, tuple(sets))

    for name, raw in data.get("capacities", {}).items():
        where = f"capacities.{name}"
        _require_finite(doc, where)
        doc.capacities[name] = _wrap(where, Capacity, n, _full_table(raw, n, where))

    for name, raw in data.get("partial_capacities", {}).items():
        where = f"partial_capacities.{name}"
        _require_finite(doc, where)
        if not isinstance(raw, dict) or "paving" not in raw or "values" not in raw:
            raise ValidationError(f"{where}: expected {{paving, values}}", "BadTable")
        E = _finite_paving(doc, raw["paving"], where)
        doc.partial_capacities[name] = (raw["paving"], _wrap(where, PartialCapacity, E, _pairs(raw["values"], n, where)))

    for name, raw in data.get("functions", {}).items():
        where = f"functions.{name}"
        doc.functions[name] = _parse_function(doc, raw, where)

    for name, raw in data.get("set_functions", {}).items():
        where = f"set_functions.{name}"
        _require_finite(doc, where)
        doc.set_functions[name] = _wrap(where, SetFunction, n, _full_table(raw, n, where))

    for name, raw in data.get("staircases", {}).items():
        where = f"staircases.{name}"
        _require_finite(doc, where)
        if not isinstance(raw, dict) or not isinstance(raw.get("terms"), list):
            raise ValidationError(f"{where}: expected {{terms, paving?}}", "InvalidStaircase")
        paving_name = raw.get("paving")
        E = _finite_paving(doc, paving_name, where) if paving_name is not None else None
        terms = []
        for i, term in enumerate(raw["terms"]):
            if not isinstance(term, list) or len(term) != 2:
                raise ValidationError(f"{where}.terms[{i}]: expected [value, subset]", "InvalidStaircase")
            terms.append((decode_value(term[0], f"{where}.terms[{i}]"), decode_subset(term[1], n, f"{where}.terms[{i}]")))
        doc.staircases[name] = (paving_name, _wrap(where, Staircase, n, tuple(terms), E))

    for name, raw in data.get("filter_capacities", {}).items():
        where = f"filter_capacities.{name}"
        if not doc.is_nat:
            raise ValidationError(f"{where}: filter capacities need ground \"nat\"", "GroundMismatch")
        if not isinstance(raw, dict):
            raise ValidationError(f"{where}: expected {{kind, point?}}", "BadFilter")
        try:
            kind = NatFilterKind(raw.get("kind"))
        except ValueError:
            raise ValidationError(f"{where}: unknown filter kind {raw.get('kind')!r}", "BadFilter") from None
        point = raw.get("point")
        doc.filter_capacities[name] = _wrap(where, NatFilterCapacity, kind, point)
    return doc


def _require_finite(doc: InstanceDocument, where: str) -> None:
    if doc.is_nat:
        raise ValidationError(f"{where}: needs a finite ground", "GroundMismatch")


def _finite_paving(doc: InstanceDocument, name: object, where: str) -> Paving:
    if not isinstance(name, str) or name not in doc.pavings:
        raise ValidationError(f"{where}: unknown paving {name!r}", "UnknownName")
    E = doc.pavings[name]
    if not isinstance(E, Paving):
        raise ValidationError(f"{where}: paving {name!r} is not finite", "GroundMismatch")
    return E


def _parse_function(doc: InstanceDocument, raw: object, where: str) -> PointFn | NatFn:
    if doc.is_nat:
        if not isinstance(raw, dict) or "tail" not in raw:
            raise ValidationError(f"{where}: ℕ functions are {{prefix, tail}}", "BadFunction")
        prefix = raw.get("prefix", [])
        if not isinstance(prefix, list):
            raise ValidationError(f"{where}.prefix: expected an array", "BadFunction")
        values = tuple(decode_value(v, f"{where}.prefix[{i}]") for i, v in enumerate(prefix))
        tail = decode_tail(raw["tail"], f"{where}.tail")
        signed = bool(raw.get("signed", False))
        return _wrap(where, NatFn, values, tail, signed)
    if not isinstance(raw, list) or len(raw) != doc.n:
        raise ValidationError(f"{where}: expected an array of {doc.n} values", "GroundMismatch")
    values = tuple(decode_value(v, f"{where}[{i}]") for i, v in enumerate(raw))
    signed = any(v < 0 for v in values)
    return _wrap(where, PointFn, values, signed)


def parse_instance_text(text: str) -> InstanceDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}", line=exc.lineno, column=exc.colno) from None
    return document_from_json(data)


def parse_instance(path: str | Path) -> InstanceDocument:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError(f"{path}: not UTF-8 ({exc.reason})") from None
    return parse_instance_text(text)


# -- emitting -----------------------------------------------------------------


def _table_pairs(n: int, lookup, masks) -> list[list[object]]:
    return [[encode_subset(m), encode_value(lookup(m))] for m in sorted(masks, key=canonical_key)]


def encode_function(f: PointFn | NatFn) -> object:
    if isinstance(f, NatFn):
        out: dict[str, object] = {"prefix": [encode_value(v) for v in f.prefix], "tail": encode_tail(f.tail)}
        if f.signed:
            out["signed"] = True
        return out
    return [encode_value(v) for v in f.values]


def document_to_json(doc: InstanceDocument) -> dict[str, object]:
    out: dict[str, object] = {"schema_version": SCHEMA_VERSION}
    if doc.is_nat:
        out["ground"] = "nat"
    elif doc.labels is not None:
        out["ground"] = {"size": doc.n, "labels": list(doc.labels)}
    else:
        out["ground"] = doc.n
    if doc.pavings:
        out["pavings"] = {
            k: (E.value if isinstance(E, NatPavingKind) else E.as_lists()) for k, E in doc.pavings.items()
        }
    if doc.capacities:
        out["capacities"] = {
            k: _table_pairs(a.n, a.__getitem__, range(1 << a.n)) for k, a in doc.capacities.items()
        }
    if doc.partial_capacities:
        out["partial_capacities"] = {
            k: {"paving": p, "values": _table_pairs(d.n, d.__getitem__, d.domain.sets)}
            for k, (p, d) in doc.partial_capacities.items()
        }
    if doc.functions:
        out["functions"] = {k: encode_function(f) for k, f in doc.functions.items()}
    if doc.set_functions:
        out["set_functions"] = {
            k: _table_pairs(mu.n, mu.__getitem__, range(1 << mu.n)) for k, mu in doc.set_functions.items()
        }
    if doc.staircases:
        stairs = {}
        for k, (p, s) in doc.staircases.items():
            entry: dict[str, object] = {"terms": [[encode_value(a), encode_subset(h)] for a, h in s.terms]}
            if p is not None:
                entry["paving"] = p
            stairs[k] = entry
        out["staircases"] = stairs
    if doc.filter_capacities:
        filters = {}
        for k, c in doc.filter_capacities.items():
            entry = {"kind": c.kind.value}
            if c.point is not None:
                entry["point"] = c.point
            filters[k] = entry
        out["filter_capacities"] = filters
    return out


def dumps(data: Mapping[str, object]) -> str:
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def emit_instance(doc: InstanceDocument) -> str:
    return dumps(document_to_json(doc))


def subset_from_labels(tokens: list[str], n: int, labels: tuple[str, ...] | None) -> int:
    """Read a subset given as indices or labels (``[]`` for the empty set)."""
    out = 0
    for tok in tokens:
        if labels is not None and tok in labels:
            out |= 1 << labels.index(tok)
            continue
        try:
            x = int(tok)
        except ValueError:
            raise ValidationError(f"unknown element {tok!r}", "BadSubset") from None
        if not 0 <= x < n:
            raise ValidationError(f"element {x} outside 0..{n - 1}", "BadSubset")
        out |= 1 << x
    return out

