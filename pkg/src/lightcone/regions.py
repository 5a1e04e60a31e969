"""Plain-text region expressions for the command line.

Grammar::

    expr    := term ("or" term)*
    term    := factor ("and" factor)*
    factor  := "not" factor | "(" expr ")" | "all" | "none" | primitive
    primitive :=
        ball(cx, cy, cz, r)            periodic distance to centre <= r
      | halfspace(axis, offset)        x_axis >= offset, axis in x|y|z
      | box(x0, y0, z0, x1, y1, z1)    x0 <= x < x1 per axis

Coordinates are centred lattice coordinates in [-L/2, L/2). Numbers may be
written as multiples of the box length with an ``L`` suffix, e.g. ``0.125L``.
Example: ``ball(0, 0, 0, 2.5) and not halfspace(z, 0)``.
"""
from __future__ import annotations

import re

from .errors import ConfigError
from .localization import LatticeRegion, ball, box, empty_region, full_region, half_space

_TOKEN = re.compile(r"\s*(?:(?P<num>[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?L?)|(?P<name>[A-Za-z_]\w*)|(?P<sym>[(),]))")
_AXES = {"x": 0, "y": 1, "z": 2, "1": 0, "2": 1, "3": 2}
_ARITY = {"ball": 4, "halfspace": 2, "box": 6}


def _tokenize(text: str):
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ConfigError(f"region: unexpected character at {pos}: {text[pos:pos + 10]!r}")
        kind = m.lastgroup
        out.append((kind, m.group(kind)))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text, grid):
        self.tokens = _tokenize(text)
        self.i = 0
        self.grid = grid

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self, value=None):
        tok = self.peek()
        if tok[0] is None or (value is not None and tok[1] != value):
            raise ConfigError(f"region: expected {value or 'token'}, got {tok[1]!r}")
        self.i += 1
        return tok

    def parse(self) -> LatticeRegion:
        region = self.expr()
        if self.i != len(self.tokens):
            raise ConfigError(f"region: trailing input at {self.peek()[1]!r}")
        return region

    def expr(self):
        region = self.term()
        while self.peek() == ("name", "or"):
            self.take()
            region = region | self.term()
        return region

    def term(self):
        region = self.factor()
        while self.peek() == ("name", "and"):
            self.take()
            region = region & self.factor()
        return region

    def factor(self):
        kind, value = self.peek()
        if (kind, value) == ("name", "not"):
            self.take()
            return ~self.factor()
        if (kind, value) == ("sym", "("):
            self.take()
            region = self.expr()
            self.take(")")
            return region
        if (kind, value) == ("name", "all"):
            self.take()
            return full_region(self.grid)
        if (kind, value) == ("name", "none"):
            self.take()
            return empty_region(self.grid)
        if kind == "name" and value in _ARITY:
            return self.primitive()
        raise ConfigError(f"region: unexpected {value!r}")

    def number(self, raw: str) -> float:
        if raw.endswith("L"):
            return float(raw[:-1]) * self.grid.box_length
        return float(raw)

    def primitive(self):
        _, name = self.take()
        self.take("(")
        args = []
        while True:
            kind, value = self.take()
            args.append((kind, value))
            if self.peek() == ("sym", ","):
                self.take()
                continue
            self.take(")")
            break
        if len(args) != _ARITY[name]:
            raise ConfigError(f"region: {name} takes {_ARITY[name]} arguments, got {len(args)}")
        if name == "halfspace":
            axis = _AXES.get(args[0][1])
            if axis is None:
                raise ConfigError(f"region: bad axis {args[0][1]!r}")
            return half_space(self.grid, axis, self._num(args[1]))
        nums = [self._num(a) for a in args]
        if name == "ball":
            return ball(self.grid, nums[:3], nums[3])
        return box(self.grid, nums[:3], nums[3:])

    def _num(self, tok):
        if tok[0] != "num":
            raise ConfigError(f"region: expected a number, got {tok[1]!r}")
        return self.number(tok[1])


def parse_region(text: str, grid) -> LatticeRegion:
    return _Parser(text, grid).parse()
