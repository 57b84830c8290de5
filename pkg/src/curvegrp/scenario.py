"""Scenario files: braid monodromy data in a small line-oriented format.

::

    [monodromy]
    strands = 2
    meridians = m1 m2
    [fiber]
    label = alpha
    meridian = a
    braid = s1^2
"""
from __future__ import annotations

from .freegroup import BraidWord
from .zvk import Fiber, MonodromyInput

__all__ = ["parse_monodromy", "format_monodromy"]


def parse_monodromy(text: str) -> MonodromyInput:
    sections: list[tuple[str, dict, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            sections.append((line[1:-1].strip(), {}, lineno))
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ValueError(f"line {lineno}: expected 'key = value'")
        if not sections:
            raise ValueError(f"line {lineno}: entry outside of a section")
        body = sections[-1][1]
        key = key.strip()
        if key in body:
            raise ValueError(f"line {lineno}: duplicate key {key!r}")
        body[key] = value.strip()

    heads = [s for s in sections if s[0] == "monodromy"]
    if len(heads) != 1:
        raise ValueError("scenario needs exactly one [monodromy] section")
    head = heads[0][1]
    unknown = set(head) - {"strands", "meridians"}
    if unknown:
        raise ValueError(f"[monodromy]: unknown keys {sorted(unknown)}")
    try:
        strands = int(head["strands"])
    except (KeyError, ValueError):
        raise ValueError("[monodromy]: 'strands' must be a positive integer") from None
    meridians = tuple(head.get("meridians", "").split())

    fibers = []
    for name, body, lineno in sections:
        if name == "monodromy":
            continue
        if name != "fiber":
            raise ValueError(f"line {lineno}: unknown section [{name}]")
        unknown = set(body) - {"label", "meridian", "braid"}
        if unknown:
            raise ValueError(f"line {lineno}: unknown fiber keys {sorted(unknown)}")
        if "braid" not in body:
            raise ValueError(f"line {lineno}: fiber without 'braid'")
        fibers.append(Fiber(BraidWord.parse(strands, body["braid"]),
                            body.get("meridian") or None,
                            body.get("label", f"fiber{len(fibers) + 1}")))
    return MonodromyInput(strands, tuple(fibers), meridians)


def format_monodromy(data: MonodromyInput) -> str:
    lines = ["[monodromy]", f"strands = {data.strands}", "meridians = " + " ".join(data.meridians)]
    for f in data.fibers:
        lines.append("[fiber]")
        if f.label:
            lines.append(f"label = {f.label}")
        if f.meridian:
            lines.append(f"meridian = {f.meridian}")
        lines.append(f"braid = {f.braid}")
    return "\n".join(lines) + "\n"
