"""Monomials over a fixed set of variables.

A monomial is stored as its exponent vector.  Every monomial carries the
:class:`VarContext` it lives in; binary operations refuse to mix contexts.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class ContextMismatch(ValueError):
    pass


class ParseError(ValueError):
    """Malformed monomial or ideal text.

    ``position`` is the 0-based character offset inside the parsed string,
    ``line`` the 1-based line number when parsing a file.
    """

    def __init__(self, message: str, position: int | None = None, line: int | None = None):
        self.message = message
        self.position = position
        self.line = line
        super().__init__(str(self))

    def __str__(self) -> str:
        where = []
        if self.line is not None:
            where.append(f"line {self.line}")
        if self.position is not None:
            where.append(f"column {self.position + 1}")
        if where:
            return f"{', '.join(where)}: {self.message}"
        return self.message


@dataclass(frozen=True)
class VarContext:
    names: tuple[str, ...]

    def __post_init__(self):
        if len(self.names) < 1:
            raise ValueError("a ring needs at least one variable")
        for name in self.names:
            if not isinstance(name, str) or not _NAME_RE.match(name):
                raise ValueError(f"invalid variable name {name!r}")
        if len(set(self.names)) != len(self.names):
            raise ValueError("variable names must be pairwise distinct")

    @classmethod
    def default(cls, n: int, prefix: str = "x") -> VarContext:
        if n < 1:
            raise ValueError("a ring needs at least one variable")
        return cls(tuple(f"{prefix}{i}" for i in range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def is_default(self) -> bool:
        return self == VarContext.default(self.n)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def one(self) -> Monomial:
        return Monomial(self, (0,) * self.n)

    def var(self, j: int) -> Monomial:
        exps = [0] * self.n
        exps[j] = 1
        return Monomial(self, tuple(exps))

    def monomial(self, exponents: Iterable[int]) -> Monomial:
        return Monomial(self, tuple(exponents))


@dataclass(frozen=True)
class Monomial:
    ctx: VarContext
    exponents: tuple[int, ...]

    def __post_init__(self):
        if len(self.exponents) != self.ctx.n:
            raise ValueError(
                f"exponent vector has length {len(self.exponents)}, ring has {self.ctx.n} variables"
            )
        for e in self.exponents:
            if not isinstance(e, int) or e < 0:
                raise ValueError(f"exponents must be non-negative integers, got {e!r}")

    def _check(self, other: Monomial) -> None:
        if self.ctx != other.ctx:
            raise ContextMismatch("monomials live in different rings")

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(j for j, e in enumerate(self.exponents) if e)

    def is_one(self) -> bool:
        return not any(self.exponents)

    def is_squarefree(self) -> bool:
        return all(e <= 1 for e in self.exponents)

    def lcm(self, other: Monomial) -> Monomial:
        self._check(other)
        return Monomial(self.ctx, tuple(map(max, self.exponents, other.exponents)))

    def divides(self, other: Monomial) -> bool:
        self._check(other)
        return all(a <= b for a, b in zip(self.exponents, other.exponents))

    def __mul__(self, other: Monomial) -> Monomial:
        self._check(other)
        return Monomial(self.ctx, tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def __truediv__(self, other: Monomial) -> Monomial:
        """Exact quotient; raises ``ArithmeticError`` if ``other`` does not divide ``self``."""
        self._check(other)
        exps = tuple(a - b for a, b in zip(self.exponents, other.exponents))
        if any(e < 0 for e in exps):
            raise ArithmeticError(f"{other} does not divide {self}")
        return Monomial(self.ctx, exps)

    def sort_key(self) -> tuple:
        """Graded lexicographic key; larger key means larger monomial."""
        return (self.degree, self.exponents)

    def __str__(self) -> str:
        return format_monomial(self)

    def __repr__(self) -> str:
        return f"Monomial({format_monomial(self)!r})"


def lcm(a: Monomial, b: Monomial) -> Monomial:
    return a.lcm(b)


def lcm_all(monos: Sequence[Monomial], ctx: VarContext | None = None) -> Monomial:
    if not monos:
        if ctx is None:
            raise ValueError("lcm of nothing needs a context")
        return ctx.one()
    out = monos[0]
    for m in monos[1:]:
        out = out.lcm(m)
    return out


def divides(a: Monomial, b: Monomial) -> bool:
    return a.divides(b)


def total_degree(a: Monomial) -> int:
    return a.degree


def is_squarefree(a: Monomial) -> bool:
    return a.is_squarefree()


def format_monomial(m: Monomial) -> str:
    factors = []
    for name, e in zip(m.ctx.names, m.exponents):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append(f"{name}^{e}")
    return "*".join(factors) if factors else "1"


def parse_monomial(text: str, ctx: VarContext) -> Monomial:
    if text == "1":
        return ctx.one()
    if not text:
        raise ParseError("empty monomial", 0)
    exps = [0] * ctx.n
    pos = 0
    for factor in text.split("*"):
        if not factor:
            raise ParseError("empty factor", pos)
        name, caret, power = factor.partition("^")
        if name not in ctx.names:
            raise ParseError(f"unknown variable {name!r}", pos)
        if caret:
            if not power.isdigit() or not power.isascii():
                raise ParseError(f"malformed exponent {power!r}", pos + len(name) + 1)
            e = int(power)
        else:
            e = 1
        exps[ctx.index(name)] += e
        pos += len(factor) + 1
    return Monomial(ctx, tuple(exps))
