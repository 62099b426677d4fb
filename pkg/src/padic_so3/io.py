"""Text formats for numbers, points, vectors, matrices and forms.

Lists of literals may be separated by commas, semicolons or whitespace. Commas
inside a literal's digit list are recognised, so ``3^0 * 1,2 (O(3^2)), 5`` is
two items.
"""

from __future__ import annotations

import json
import re

from .errors import ParseError
from .linalg import identity
from .padic import PadicContext, PadicNumber, parse_literal
from .so2 import ProjectivePoint

_ITEM = re.compile(
    r"""
    \d+\^-?\d+\s*\*\s*\d+(?:\s*,\s*\d+)*\s*\(\s*O\(\s*\d+\^-?\d+\s*\)\s*\)   # full literal
    | O\(\s*\d+\^-?\d+\s*\)                                                  # approximate zero
    | inf
    | [+-]?\d+(?:\s*/\s*\d+)?                                                # integer or fraction
    """,
    re.VERBOSE,
)
_SEP = re.compile(r"[\s,;]*")


def split_items(text: str) -> list[str]:
    items = []
    pos = _SEP.match(text, 0).end()
    while pos < len(text):
        m = _ITEM.match(text, pos)
        if not m:
            raise ParseError("expected a p-adic literal", text, pos)
        items.append(m.group(0))
        pos = m.end()
        sep = _SEP.match(text, pos)
        if sep.end() == pos and pos < len(text):
            raise ParseError("expected a separator", text, pos)
        pos = sep.end()
    return items


def parse_number(ctx: PadicContext, text) -> PadicNumber:
    if isinstance(text, int):
        return ctx(text)
    return parse_literal(ctx, str(text))


def parse_vector(ctx: PadicContext, text: str, n: int = 3) -> tuple:
    items = split_items(text)
    if len(items) != n:
        raise ParseError(f"expected {n} components, got {len(items)}", text, 0)
    return tuple(parse_literal(ctx, s) for s in items)


def parse_point(ctx: PadicContext, text: str) -> ProjectivePoint:
    """``inf``, an affine value ``sigma``, or ``s:t``."""
    text = text.strip()
    if text == "inf":
        return ProjectivePoint.infinity(ctx)
    # the colon never occurs inside a literal
    if ":" in text:
        s, _, t = text.partition(":")
        return ProjectivePoint(parse_literal(ctx, s), parse_literal(ctx, t))
    return ProjectivePoint.affine(ctx, parse_literal(ctx, text))


def format_point(pt: ProjectivePoint) -> str:
    return str(pt)


def parse_matrix(ctx: PadicContext, text: str, n: int = 3) -> tuple:
    """``I``, a JSON array (nested or flat) or ``n*n`` literals in row-major order."""
    stripped = text.strip()
    if stripped == "I":
        return identity(ctx, n)
    if stripped.startswith("["):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", text, exc.pos) from None
        flat = [x for row in data for x in row] if data and isinstance(data[0], list) else data
        if len(flat) != n * n:
            raise ParseError(f"expected {n * n} entries, got {len(flat)}", text, 0)
        vals = [parse_number(ctx, x) for x in flat]
    else:
        items = split_items(text)
        if len(items) != n * n:
            raise ParseError(f"expected {n * n} entries, got {len(items)}", text, 0)
        vals = [parse_literal(ctx, s) for s in items]
    return tuple(tuple(vals[i * n : (i + 1) * n]) for i in range(n))


def format_matrix(rows) -> str:
    return "\n".join("; ".join(str(x) for x in row) for row in rows)


def matrix_to_json(rows) -> list:
    return [[str(x) for x in row] for row in rows]


_FORM = re.compile(r"^\s*qf\s+p\s*=\s*(?P<p>\d+)\s*\[(?P<body>.*)\]\s*$", re.S)


def parse_form(text: str, precision: int = 48, guard: int = 8):
    """``qf p=<p> [a1,a2,...]``; returns the context and coefficient list."""
    m = _FORM.match(text)
    if not m:
        raise ParseError("expected 'qf p=<p> [a1,a2,...]'", text, 0)
    ctx = PadicContext(int(m["p"]), precision, guard)
    coeffs = [parse_literal(ctx, s) for s in split_items(m["body"])]
    return ctx, coeffs
