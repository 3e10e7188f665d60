"""Monomial ideals: minimal generators, restriction, twin ideals, compression.

Also reads and writes the line-oriented ideal file format::

    ring 3                  # or: ring x y z
    gen x1^2*x2
    gen x3
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .monomial import ContextMismatch, Monomial, ParseError, VarContext, format_monomial, lcm_all, parse_monomial


def _canonical(gens: Iterable[Monomial]) -> tuple[Monomial, ...]:
    # descending graded-lex: highest degree first, ties broken lexicographically with x1 > x2 > ...
    return tuple(sorted(gens, key=Monomial.sort_key, reverse=True))


@dataclass(frozen=True)
class MonomialIdeal:
    """An ideal given by its minimal monomial generators in canonical order.

    The empty generator tuple is the zero ideal.  It only arises as a
    restriction to a monomial no generator divides.
    """

    ctx: VarContext
    gens: tuple[Monomial, ...]

    def __post_init__(self):
        for g in self.gens:
            if g.ctx != self.ctx:
                raise ContextMismatch("generator lives in a different ring")
        if self.gens != _canonical(self.gens):
            raise ValueError("generators are not in canonical order; use minimalize()")
        for a, b in itertools.permutations(self.gens, 2):
            if a.divides(b):
                raise ValueError(f"{a} divides {b}; generators are not minimal")

    @classmethod
    def zero(cls, ctx: VarContext) -> MonomialIdeal:
        return cls(ctx, ())

    @property
    def q(self) -> int:
        return len(self.gens)

    @property
    def is_zero(self) -> bool:
        return not self.gens

    @property
    def is_unit(self) -> bool:
        return len(self.gens) == 1 and self.gens[0].is_one()

    def is_squarefree(self) -> bool:
        return all(g.is_squarefree() for g in self.gens)

    def top_lcm(self) -> Monomial:
        return lcm_all(self.gens, self.ctx)

    def min_degree(self) -> int:
        return min(g.degree for g in self.gens)

    def __str__(self) -> str:
        return ", ".join(format_monomial(g) for g in self.gens) if self.gens else "0"


@dataclass(frozen=True)
class CompressionMap:
    """Change of variables ``y_k = x_{used_vars[k]} ** alpha[k]``."""

    source: VarContext
    target: VarContext
    used_vars: tuple[int, ...]
    alpha: tuple[int, ...]

    def expand(self, m: Monomial) -> Monomial:
        """Substitute back: a monomial in the y-variables as one in the x-variables."""
        if m.ctx != self.target:
            raise ContextMismatch("monomial is not in the compressed ring")
        exps = [0] * self.source.n
        for k, e in enumerate(m.exponents):
            exps[self.used_vars[k]] = e * self.alpha[k]
        return Monomial(self.source, tuple(exps))


def minimalize(gens: Sequence[Monomial]) -> MonomialIdeal:
    gens = list(gens)
    if not gens:
        raise ValueError("cannot build an ideal from an empty generator list")
    ctx = gens[0].ctx
    for g in gens:
        if g.ctx != ctx:
            raise ContextMismatch("generators live in different rings")
    # ascending degree: a proper divisor always has smaller degree
    unique = sorted(set(gens), key=Monomial.sort_key)
    kept: list[Monomial] = []
    for g in unique:
        if not any(k.divides(g) for k in kept):
            kept.append(g)
    return MonomialIdeal(ctx, _canonical(kept))


def restrict(M: MonomialIdeal, m: Monomial) -> MonomialIdeal:
    if m.ctx != M.ctx:
        raise ContextMismatch("monomial is not in the ideal's ring")
    return MonomialIdeal(M.ctx, tuple(g for g in M.gens if g.divides(m)))


def twin(M: MonomialIdeal) -> MonomialIdeal:
    """Keep in each generator only the exponents that reach the maximum over all generators."""
    if M.is_zero:
        raise ValueError("the zero ideal has no twin")
    top = M.top_lcm().exponents
    gens = [
        Monomial(M.ctx, tuple(a if e == a else 0 for e, a in zip(g.exponents, top)))
        for g in M.gens
    ]
    return minimalize(gens)


def compress(M: MonomialIdeal) -> tuple[MonomialIdeal, CompressionMap]:
    """Rewrite an ideal that equals its own twin as a squarefree ideal.

    Each used variable x_j with top exponent a_j becomes y = x_j**a_j;
    variables that no generator involves are dropped from the new ring.
    """
    if M.is_zero:
        raise ValueError("cannot compress the zero ideal")
    top = M.top_lcm().exponents
    for g in M.gens:
        for j, (e, a) in enumerate(zip(g.exponents, top)):
            if e not in (0, a):
                raise ValueError(
                    f"generator {g} has exponent {e} in {M.ctx.names[j]}, "
                    f"expected 0 or {a}; apply twin() first"
                )
    used = tuple(j for j, a in enumerate(top) if a > 0)
    if not used:
        # the unit ideal; keep one variable so the target ring is non-empty
        used_ctx = VarContext.default(1, "y")
        cmap = CompressionMap(M.ctx, used_ctx, (0,), (1,))
        return MonomialIdeal(used_ctx, (used_ctx.one(),)), cmap
    target = VarContext.default(len(used), "y")
    cmap = CompressionMap(M.ctx, target, used, tuple(top[j] for j in used))
    gens = [Monomial(target, tuple(1 if g.exponents[j] else 0 for j in used)) for g in M.gens]
    return minimalize(gens), cmap


@lru_cache(maxsize=256)
def _pool(n: int, min_deg: int, max_deg: int, max_exp: int) -> tuple[tuple[int, ...], ...]:
    # lexicographic enumeration keeps the pool order (and hence sampling) deterministic
    return tuple(
        e for e in itertools.product(range(max_exp + 1), repeat=n) if min_deg <= sum(e) <= max_deg
    )


def candidate_pool(
    ctx: VarContext, min_deg: int, max_deg: int, squarefree: bool, max_exp: int | None = None
) -> tuple[tuple[int, ...], ...]:
    if min_deg < 1 or min_deg > max_deg:
        raise ValueError(f"infeasible degree window [{min_deg}, {max_deg}]")
    if squarefree:
        if min_deg > ctx.n:
            raise ValueError(f"no squarefree monomial in {ctx.n} variables has degree {min_deg}")
        cap = 1
    else:
        cap = max_deg if max_exp is None else max_exp
        if cap < 1:
            raise ValueError("max_exp must be positive")
    pool = _pool(ctx.n, min_deg, max_deg, cap)
    if not pool:
        raise ValueError("no monomial satisfies the degree and exponent constraints")
    return pool


def random_ideal(
    ctx: VarContext,
    q: int,
    min_deg: int,
    max_deg: int,
    squarefree: bool,
    seed: int,
    max_exp: int | None = None,
) -> MonomialIdeal:
    """Draw ``q`` distinct monomials uniformly from the degree window, then minimalize."""
    pool = candidate_pool(ctx, min_deg, max_deg, squarefree, max_exp)
    if q < 1:
        raise ValueError("q must be at least 1")
    if q > len(pool):
        raise ValueError(f"asked for {q} generators but only {len(pool)} monomials qualify")
    rng = random.Random(seed)
    picks = rng.sample(pool, q)
    return minimalize([Monomial(ctx, e) for e in picks])


def parse_ring(tokens: Sequence[str]) -> VarContext:
    if len(tokens) == 1 and tokens[0].isdigit():
        n = int(tokens[0])
        if n < 1:
            raise ValueError("a ring needs at least one variable")
        return VarContext.default(n)
    return VarContext(tuple(tokens))


def parse_ideal(text: str) -> MonomialIdeal:
    ctx = None
    gens = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        offset = len(raw) - len(raw.lstrip())
        keyword, _, rest = line.partition(" ")
        if ctx is None:
            if keyword != "ring":
                raise ParseError("expected 'ring' header", offset, lineno)
            try:
                ctx = parse_ring(rest.split())
            except ValueError as exc:
                raise ParseError(str(exc), offset + len(keyword) + 1, lineno) from None
            continue
        if keyword != "gen":
            raise ParseError(f"expected 'gen', got {keyword!r}", offset, lineno)
        body = rest.strip()
        col = offset + len(line) - len(body)
        try:
            gens.append(parse_monomial(body, ctx))
        except ParseError as exc:
            raise ParseError(exc.message, col + (exc.position or 0), lineno) from None
    if ctx is None:
        raise ParseError("missing 'ring' header", 0, 1)
    if not gens:
        raise ParseError("ideal file has no generators", 0, lineno if text else 1)
    return minimalize(gens)


def read_ideal(path) -> MonomialIdeal:
    with open(path, encoding="utf-8") as fh:
        return parse_ideal(fh.read())


def format_ideal(M: MonomialIdeal) -> str:
    header = f"ring {M.ctx.n}" if M.ctx.is_default else "ring " + " ".join(M.ctx.names)
    lines = [header] + [f"gen {format_monomial(g)}" for g in M.gens]
    return "\n".join(lines) + "\n"


def ideal_from_strings(gens: Iterable[str], ctx: VarContext) -> MonomialIdeal:
    return minimalize([parse_monomial(g.strip(), ctx) for g in gens])
