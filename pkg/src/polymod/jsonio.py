"""Canonical serialization and input-token parsing.

JSON documents are rendered with sorted keys, compact separators, and every
float at 17 significant digits, so equal data always produces identical
bytes.  Angle tokens accept raw radians, expressions in ``pi`` such as
``2pi/5`` or ``2/5*2pi``, and a repetition prefix ``5x2pi/5``; the unicode
spellings ``×`` and ``π`` are accepted as synonyms.
"""

from __future__ import annotations

import json
import math
import re
from typing import Sequence

import numpy as np

from .errors import OutOfRange

_ANGLE_CHARS = re.compile(r"^[0-9eE@+\-*/().]*$")
_REPEAT = re.compile(r"^(\d+)x(.+)$")


def format_float(x: float) -> str:
    """A float at 17 significant digits (shortest '%.17g' form)."""
    if isinstance(x, (np.floating, np.integer)):
        x = x.item()
    if not math.isfinite(x):
        raise OutOfRange(f"cannot serialize non-finite float {x!r}")
    return format(float(x), ".17g")


def dumps_canonical(obj) -> str:
    """Deterministic JSON: sorted keys, compact, floats via format_float."""
    if obj is None:
        return "null"
    if obj is True:
        return "true"
    if obj is False:
        return "false"
    if isinstance(obj, (np.integer,)):
        return str(int(obj))
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, (float, np.floating)):
        return format_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=True)
    if isinstance(obj, (list, tuple, np.ndarray)):
        items = list(obj)
        return "[" + ",".join(dumps_canonical(v) for v in items) + "]"
    if isinstance(obj, dict):
        for key in obj:
            if not isinstance(key, str):
                raise OutOfRange(f"JSON object keys must be strings, got {key!r}")
        parts = (
            json.dumps(k, ensure_ascii=True) + ":" + dumps_canonical(obj[k])
            for k in sorted(obj)
        )
        return "{" + ",".join(parts) + "}"
    raise OutOfRange(f"cannot serialize object of type {type(obj).__name__}")


def _eval_angle(expr: str) -> float:
    """Evaluate one angle expression over digits, pi, and + - * / ( )."""
    e = expr.strip().lower().replace(" ", "")
    if not e:
        raise OutOfRange("empty angle token")
    e = e.replace("pi", "@")
    if not _ANGLE_CHARS.match(e):
        raise OutOfRange(f"angle token {expr!r} contains unsupported characters")
    # implicit multiplication around pi: 2pi -> 2*pi, pi2 -> pi*2, )pi, pi( ...
    e = re.sub(r"(?<=[0-9.)])@", "*@", e)
    e = re.sub(r"@(?=[0-9.(])", "@*", e)
    try:
        value = eval(  # noqa: S307 - character set restricted above
            e.replace("@", "pi"), {"__builtins__": {}}, {"pi": math.pi}
        )
    except Exception as exc:
        raise OutOfRange(f"cannot parse angle token {expr!r}: {exc}") from exc
    return float(value)


def parse_theta(spec: str) -> list[float]:
    """Parse a comma-separated angle list with optional ``Nx`` repetitions."""
    text = spec.strip().replace("×", "x").replace("π", "pi")
    out: list[float] = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            raise OutOfRange(f"empty angle token in {spec!r}")
        rep = _REPEAT.match(token)
        if rep:
            count = int(rep.group(1))
            if count < 1:
                raise OutOfRange(f"repetition count must be positive in {token!r}")
            out.extend([_eval_angle(rep.group(2))] * count)
        else:
            out.append(_eval_angle(token))
    return out


def parse_label(spec: str) -> tuple[int, ...]:
    """Parse a label word: '21435' or '2,1,4,3,5'."""
    text = spec.strip()
    if "," in text:
        parts = [p.strip() for p in text.split(",")]
    else:
        parts = list(text)
    try:
        return tuple(int(p) for p in parts)
    except ValueError as exc:
        raise OutOfRange(f"cannot parse label {spec!r}") from exc


def parse_shape(spec: str, n: int) -> tuple[float, ...]:
    """Parse 'P,Q' (n=5) or 'P,Q,R' (n=6)."""
    parts = [p.strip() for p in spec.strip().split(",")]
    want = 2 if n == 5 else 3
    if len(parts) != want:
        raise OutOfRange(
            f"shape for n={n} needs {want} comma-separated values, got {len(parts)}"
        )
    try:
        return tuple(float(p) for p in parts)
    except ValueError as exc:
        raise OutOfRange(f"cannot parse shape {spec!r}") from exc


def csv_row(values: Sequence) -> str:
    """One CSV row: comma separation, floats at 17 significant digits."""
    cells = []
    for v in values:
        if isinstance(v, (float, np.floating)):
            cells.append(format_float(v))
        else:
            cells.append(str(v))
    return ",".join(cells)
