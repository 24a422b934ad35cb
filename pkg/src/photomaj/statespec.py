"""Textual state specifications for the command line.

Grammar::

    spec   := coherent(NUM) | thermal(NUM) | number(INT)
            | squeezed(R=NUM,r=NUM)
            | squeezed_target(mean=NUM,var=NUM[,branch=strong|weak])
            | mix(NUM;spec;spec)

Whitespace between tokens is ignored.  ``str(spec)`` prints the canonical
form, and parsing it again gives an equal spec.
"""

import math
import re
from dataclasses import dataclass

from .dist import (
    DEFAULT_EPS,
    MixtureSpec,
    SqueezedParams,
    coherent_distribution,
    mixture,
    number_state_distribution,
    solve_squeezed_params,
    squeezed_distribution,
    thermal_distribution,
)
from .errors import SpecParseError

__all__ = [
    "Coherent",
    "Thermal",
    "Number",
    "Squeezed",
    "SqueezedTarget",
    "Mix",
    "parse_state_spec",
]


def _fmt(x):
    return repr(float(x))


@dataclass(frozen=True)
class Coherent:
    mean: float

    def __str__(self):
        return f"coherent({_fmt(self.mean)})"

    def build(self, eps=DEFAULT_EPS):
        return coherent_distribution(self.mean, eps).relabel(str(self))


@dataclass(frozen=True)
class Thermal:
    mean: float

    def __str__(self):
        return f"thermal({_fmt(self.mean)})"

    def build(self, eps=DEFAULT_EPS):
        return thermal_distribution(self.mean, eps).relabel(str(self))


@dataclass(frozen=True)
class Number:
    n: int

    def __str__(self):
        return f"number({self.n})"

    def build(self, eps=DEFAULT_EPS):
        return number_state_distribution(self.n).relabel(str(self))


@dataclass(frozen=True)
class Squeezed:
    R: float
    r: float

    def __str__(self):
        return f"squeezed(R={_fmt(self.R)},r={_fmt(self.r)})"

    def params(self):
        return SqueezedParams(self.R, self.r)

    def build(self, eps=DEFAULT_EPS):
        return squeezed_distribution(self.params(), eps).relabel(str(self))


@dataclass(frozen=True)
class SqueezedTarget:
    mean: float
    var: float
    branch: str = "strong"

    def __str__(self):
        tail = "" if self.branch == "strong" else f",branch={self.branch}"
        return f"squeezed_target(mean={_fmt(self.mean)},var={_fmt(self.var)}{tail})"

    def params(self):
        return solve_squeezed_params(self.mean, self.var, self.branch)

    def build(self, eps=DEFAULT_EPS):
        return squeezed_distribution(self.params(), eps).relabel(str(self))


@dataclass(frozen=True)
class Mix:
    xi: float
    first: object
    second: object

    def __str__(self):
        return f"mix({_fmt(self.xi)};{self.first};{self.second})"

    def build(self, eps=DEFAULT_EPS):
        spec = MixtureSpec(self.xi, self.first.build(eps), self.second.build(eps))
        return mixture(spec).relabel(str(self))


_NUMBER = re.compile(r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?")
_NAME = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")

_FAMILIES = {
    "coherent": 1,
    "thermal": 1,
    "number": 1,
    "squeezed": 2,
    "squeezed_target": 2,
    "mix": 3,
}


class _Parser:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    # byte offsets, so non-ASCII input reports positions consistently
    def offset(self, pos=None):
        pos = self.pos if pos is None else pos
        return len(self.text[:pos].encode("utf-8"))

    def fail(self, message, code, pos=None):
        raise SpecParseError(message, code, self.offset(pos))

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch):
        if self.peek() != ch:
            found = self.peek() or "end of input"
            self.fail(f"expected {ch!r}, found {found!r}", "syntax")
        self.pos += 1

    def name(self):
        self.skip()
        m = _NAME.match(self.text, self.pos)
        if not m:
            self.fail("expected a state family name", "syntax")
        self.pos = m.end()
        return m.group(), m.start()

    def number(self):
        self.skip()
        start = self.pos
        m = _NUMBER.match(self.text, self.pos)
        end = m.end() if m else start
        # swallow the rest of a malformed token so the message shows it
        stop = end
        while stop < len(self.text) and self.text[stop] not in ",;) \t\n":
            stop += 1
        if not m or stop != end:
            token = self.text[start:stop] or "nothing"
            self.fail(f"malformed number {token!r}", "number", start)
        value = float(m.group())
        if not math.isfinite(value):
            self.fail(f"number {m.group()!r} is not finite", "number", start)
        self.pos = end
        return value, start

    def keyword(self, key):
        got, at = self.name()
        if got != key:
            self.fail(f"expected keyword {key!r}, found {got!r}", "syntax", at)
        self.expect("=")

    def arity_error(self, family, at):
        self.fail(f"{family} takes {_FAMILIES[family]} argument(s)", "arity", at)

    def close(self, family, at):
        ch = self.peek()
        if ch in (",", ";"):
            self.arity_error(family, self.pos)
        self.expect(")")

    def spec(self):
        family, at = self.name()
        if family not in _FAMILIES:
            self.fail(
                f"unknown state family {family!r}; expected one of {', '.join(_FAMILIES)}",
                "unknown-family",
                at,
            )
        self.expect("(")
        if self.peek() == ")":
            self.arity_error(family, self.pos)
        if family in ("coherent", "thermal"):
            value, _ = self.number()
            self.close(family, at)
            return Coherent(value) if family == "coherent" else Thermal(value)
        if family == "number":
            value, vat = self.number()
            if value != int(value) or value < 0:
                self.fail(f"photon number must be a non-negative integer, got {value!r}", "number", vat)
            self.close(family, at)
            return Number(int(value))
        if family == "squeezed":
            self.keyword("R")
            R, _ = self.number()
            self._separator(",", family)
            self.keyword("r")
            r, _ = self.number()
            self.close(family, at)
            return Squeezed(R, r)
        if family == "squeezed_target":
            self.keyword("mean")
            mean, _ = self.number()
            self._separator(",", family)
            self.keyword("var")
            var, _ = self.number()
            branch = "strong"
            if self.peek() == ",":
                self.pos += 1
                self.keyword("branch")
                branch, bat = self.name()
                if branch not in ("strong", "weak"):
                    self.fail(f"branch must be 'strong' or 'weak', got {branch!r}", "syntax", bat)
            self.close(family, at)
            return SqueezedTarget(mean, var, branch)
        # mix
        xi, xat = self.number()
        if not (0.0 <= xi <= 1.0):
            self.fail(f"mixing weight {xi!r} outside [0, 1]", "mix-weight", xat)
        self._separator(";", family)
        first = self.spec()
        self._separator(";", family)
        second = self.spec()
        self.close(family, at)
        return Mix(xi, first, second)

    def _separator(self, ch, family):
        if self.peek() == ")":
            self.arity_error(family, self.pos)
        self.expect(ch)


def parse_state_spec(text):
    """Parse ``text`` into one of the state dataclasses of this module."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    p = _Parser(text)
    spec = p.spec()
    if p.peek():
        p.fail(f"unexpected trailing input {text[p.pos:]!r}", "syntax")
    return spec
