"""Instance files and report serialization.

An instance file is a list of ``key = value`` lines; ``#`` starts a
comment.  Required keys::

    u = 0
    v = 0
    beta.prefix = [1]
    beta.tail = (0, 0, 0)
    b1 = 1
    b2 = 0

``y1`` and ``y2`` may be added to name a dual point.  Every number is a
rational literal ``p`` or ``p/q``.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence

from .errors import ParseError
from .gale import CostSpec, DualPoint, Rhs
from .numeric import format_ratio, parse_ratio
from .seqcore import TailSeq

__all__ = ["Instance", "parse_instance", "load_instance", "format_instance", "emit"]

_REQUIRED = ("u", "v", "beta.prefix", "beta.tail", "b1", "b2")
_OPTIONAL = ("y1", "y2")


@dataclass(frozen=True)
class Instance:
    cost: CostSpec
    rhs: Rhs
    point: Optional[DualPoint] = None


def _parse_list(text, open_, close, where):
    text = text.strip()
    if not (text.startswith(open_) and text.endswith(close)):
        raise ParseError(f"expected {open_}...{close}, got {text!r}", where)
    body = text[1:-1].strip()
    return [parse_ratio(tok, where) for tok in body.split(",")] if body else []


def parse_instance(text: str, source: str = "<string>") -> Instance:
    fields: Dict[str, object] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        where = f"{source}:{lineno}"
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep:
            raise ParseError(f"expected 'key = value', got {raw.strip()!r}", where)
        if key not in _REQUIRED + _OPTIONAL:
            raise ParseError(f"unknown key {key!r}", where)
        if key in fields:
            raise ParseError(f"duplicate key {key!r}", where)
        if key == "beta.prefix":
            fields[key] = _parse_list(value, "[", "]", where)
        elif key == "beta.tail":
            tail = _parse_list(value, "(", ")", where)
            if len(tail) != 3:
                raise ParseError(f"beta.tail needs 3 entries, got {len(tail)}", where)
            fields[key] = tail
        else:
            fields[key] = parse_ratio(value, where)

    missing = [k for k in _REQUIRED if k not in fields]
    if missing:
        raise ParseError(f"missing keys: {', '.join(missing)}", source)
    if ("y1" in fields) != ("y2" in fields):
        raise ParseError("y1 and y2 must be given together", source)

    beta = TailSeq.from_parts(fields["beta.prefix"], fields["beta.tail"])
    cost = CostSpec(fields["u"], fields["v"], beta)
    point = DualPoint(fields["y1"], fields["y2"]) if "y1" in fields else None
    return Instance(cost, Rhs(fields["b1"], fields["b2"]), point)


def load_instance(path) -> Instance:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read instance: {exc.strerror}", str(path)) from exc
    return parse_instance(text, str(path))


def format_instance(inst: Instance) -> str:
    c, b = inst.cost, inst.rhs
    lines = [
        f"u = {format_ratio(c.u)}",
        f"v = {format_ratio(c.v)}",
        "beta.prefix = [" + ", ".join(format_ratio(p) for p in c.beta.prefix) + "]",
        "beta.tail = (" + ", ".join(format_ratio(t) for t in c.beta.tail) + ")",
        f"b1 = {format_ratio(b.b1)}",
        f"b2 = {format_ratio(b.b2)}",
    ]
    if inst.point is not None:
        lines += [f"y1 = {format_ratio(inst.point.y1)}", f"y2 = {format_ratio(inst.point.y2)}"]
    return "\n".join(lines) + "\n"


def emit(records: Sequence[Mapping[str, str]], fmt: str) -> str:
    """Render string-valued records as json, csv or aligned text.

    Key order is taken from the first record and kept as is.
    """
    records = [dict(r) for r in records]
    if fmt == "json":
        payload = records[0] if len(records) == 1 else records
        return json.dumps(payload, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        header: List[str] = list(records[0]) if records else []
        writer = csv.DictWriter(buf, fieldnames=header, lineterminator="\n")
        writer.writeheader()
        writer.writerows(records)
        return buf.getvalue()
    if fmt == "pretty":
        blocks = []
        for r in records:
            width = max((len(k) for k in r), default=0)
            blocks.append("\n".join(f"{k.ljust(width)}  {v}" for k, v in r.items()))
        return "\n\n".join(blocks) + "\n"
    raise ValueError(f"unknown format {fmt!r}")
