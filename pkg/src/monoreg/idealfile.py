"""Plain-text ideal files.

::

    vars: x, y, z
    # comment
    x^2*y
    z^3

The first non-blank, non-comment line declares the variables in order;
every further line is one monomial, a ``*``-separated product of ``v`` or
``v^k`` factors with k >= 1.
"""
from __future__ import annotations

import re

from .errors import IdealSyntaxError, UnknownVariable
from .monomial import Monomial, MonomialIdeal, RingContext, minimalize

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_INT = re.compile(r"[0-9]+")


def _strip(line: str) -> str:
    return line.split("#", 1)[0]


def _parse_vars(text: str, lineno: int) -> RingContext:
    body = _strip(text).strip()
    if not body.startswith("vars:"):
        raise IdealSyntaxError("expected 'vars: name, name, ...'", lineno, 1)
    names = [n.strip() for n in body[len("vars:"):].split(",")]
    if not names or any(not _NAME.fullmatch(n) for n in names):
        raise IdealSyntaxError("bad variable list", lineno)
    if len(set(names)) != len(names):
        raise IdealSyntaxError("duplicate variable name", lineno)
    return RingContext(len(names), tuple(names))


def parse_monomial(text: str, ctx: RingContext, lineno: int = 1) -> Monomial:
    index = {name: i for i, name in enumerate(ctx.names)}
    exps = [0] * ctx.num_vars
    raw = _strip(text)
    pos = 0
    end = len(raw.rstrip())
    while pos < end and raw[pos].isspace():
        pos += 1
    if raw[pos:end] == "1":
        raise IdealSyntaxError("the unit monomial 1 would make the ideal the whole ring",
                               lineno, pos + 1)
    while True:
        while pos < end and raw[pos].isspace():
            pos += 1
        m = _NAME.match(raw, pos)
        if m is None or pos >= end:
            raise IdealSyntaxError("expected a variable name", lineno, pos + 1)
        name = m.group()
        if name not in index:
            raise UnknownVariable(f"unknown variable {name!r}", lineno, pos + 1)
        pos = m.end()
        k = 1
        if pos < end and raw[pos] == "^":
            m = _INT.match(raw, pos + 1)
            if m is None or int(m.group()) < 1:
                raise IdealSyntaxError("expected a positive integer exponent", lineno, pos + 2)
            k = int(m.group())
            pos = m.end()
        exps[index[name]] += k
        while pos < end and raw[pos].isspace():
            pos += 1
        if pos >= end:
            break
        if raw[pos] != "*":
            raise IdealSyntaxError(f"unexpected {raw[pos]!r}; factors are joined by '*'",
                                   lineno, pos + 1)
        pos += 1
    return Monomial(exps)


def parse_ideal(text: str) -> MonomialIdeal:
    ctx = None
    gens = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not _strip(line).strip():
            continue
        if ctx is None:
            ctx = _parse_vars(line, lineno)
            continue
        gens.append(parse_monomial(line, ctx, lineno))
    if ctx is None:
        raise IdealSyntaxError("missing 'vars:' line", 1)
    return minimalize(gens, ctx)


def read_ideal(path) -> MonomialIdeal:
    with open(path, encoding="utf-8") as fh:
        return parse_ideal(fh.read())


def format_ideal(I: MonomialIdeal) -> str:
    names = I.context.names
    lines = ["vars: " + ",".join(names)]
    lines.extend(g.format(names) for g in I.min_gens)
    return "\n".join(lines) + "\n"
