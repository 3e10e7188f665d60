"""The Taylor resolution of S/M as an explicit multigraded free complex."""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field as dc_field
from typing import NamedTuple, Sequence

from .fields import QQ, Field
from .ideal import MonomialIdeal
from .monomial import ContextMismatch, Monomial

DEFAULT_CAP = 19


class CapExceeded(ValueError):
    pass


@dataclass(frozen=True)
class TaylorSymbol:
    subset: tuple[int, ...]
    mdeg: Monomial

    @property
    def hdeg(self) -> int:
        return len(self.subset)

    def __str__(self) -> str:
        return "[" + ",".join(str(i) for i in self.subset) + "]"


class Entry(NamedTuple):
    scalar: object
    mono: Monomial


@dataclass
class FreeComplex:
    """F_0 <- F_1 <- ... <- F_p with sparse multigraded differentials.

    ``differentials[s]`` maps a source index in F_s to ``{target index in
    F_{s-1}: Entry}``; ``differentials[0]`` is always empty.
    """

    field: Field
    modules: list[list[TaylorSymbol]]
    differentials: list[dict[int, dict[int, Entry]]] = dc_field(default_factory=list)

    @property
    def length(self) -> int:
        return len(self.modules) - 1

    def ranks(self) -> list[int]:
        return [len(F) for F in self.modules]

    def entries(self, s: int):
        for src, col in self.differentials[s].items():
            for tgt, entry in col.items():
                yield src, tgt, entry

    def invertible_entries(self):
        for s in range(1, len(self.modules)):
            for src, tgt, e in self.entries(s):
                if e.mono.is_one() and not self.field.is_zero(e.scalar):
                    yield s, src, tgt

    def is_minimal(self) -> bool:
        return next(self.invertible_entries(), None) is None


def check_cap(q: int, cap: int | None) -> None:
    limit = DEFAULT_CAP if cap is None else cap
    if q > limit:
        raise CapExceeded(
            f"ideal has {q} generators, above the cap of {limit} "
            f"(2^{q} Taylor symbols); raise it explicitly with --cap {q}"
        )


def taylor(M: MonomialIdeal | Sequence[Monomial], field: Field = QQ, cap: int | None = None) -> FreeComplex:
    """Taylor complex of S/M.

    ``M`` may also be a plain list of generators, minimal or not; the complex
    is then built on exactly that list, in the given order.
    """
    gens_m = M.gens if isinstance(M, MonomialIdeal) else tuple(M)
    if not gens_m:
        raise ValueError("the Taylor complex needs at least one generator")
    ctx = gens_m[0].ctx
    if any(g.ctx != ctx for g in gens_m):
        raise ContextMismatch("generators live in different rings")
    q = len(gens_m)
    check_cap(q, cap)
    gens = [g.exponents for g in gens_m]

    modules: list[list[TaylorSymbol]] = []
    index: list[dict[tuple[int, ...], int]] = []
    lcms: dict[tuple[int, ...], tuple[int, ...]] = {(): (0,) * ctx.n}
    for s in range(q + 1):
        basis = []
        pos = {}
        for subset in itertools.combinations(range(q), s):
            if s:
                e = tuple(map(max, lcms[subset[:-1]], gens[subset[-1]]))
                lcms[subset] = e
            pos[subset] = len(basis)
            basis.append(TaylorSymbol(subset, Monomial(ctx, lcms[subset])))
        modules.append(basis)
        index.append(pos)

    plus, minus = field(1), field(-1)
    diffs: list[dict[int, dict[int, Entry]]] = [{}]
    for s in range(1, q + 1):
        d = {}
        for col, sym in enumerate(modules[s]):
            top = sym.mdeg.exponents
            out = {}
            for j in range(s):
                face = sym.subset[:j] + sym.subset[j + 1:]
                quot = tuple(a - b for a, b in zip(top, lcms[face]))
                # j is 0-based here, so (-1)^(j+1) with 1-based j is (-1)^j
                out[index[s - 1][face]] = Entry(minus if j % 2 else plus, Monomial(ctx, quot))
            d[col] = out
        diffs.append(d)
    return FreeComplex(field, modules, diffs)


def strand_basis(C: FreeComplex, m: Monomial, s: int) -> list[int]:
    if s < 0 or s >= len(C.modules):
        return []
    return [i for i, sym in enumerate(C.modules[s]) if sym.mdeg == m]


def group_by_mdeg(C: FreeComplex) -> dict[Monomial, list[list[int]]]:
    """Multidegree -> per-degree lists of basis indices, in basis order."""
    groups: dict[Monomial, list[list[int]]] = defaultdict(lambda: [[] for _ in C.modules])
    for s, basis in enumerate(C.modules):
        for i, sym in enumerate(basis):
            groups[sym.mdeg][s].append(i)
    return dict(groups)


def lcm_lattice(M: MonomialIdeal, cap: int | None = None) -> set[Monomial]:
    """All lcms of nonempty generator subsets."""
    check_cap(M.q, cap)
    seen: set[tuple[int, ...]] = set()
    for g in M.gens:
        new = {g.exponents}
        for e in seen:
            new.add(tuple(map(max, e, g.exponents)))
        seen |= new
    return {Monomial(M.ctx, e) for e in seen}


def check_complex(C: FreeComplex) -> list[str]:
    """Symbolic check of d∘d = 0 and multigraded homogeneity; returns violations."""
    problems = []
    F = C.field
    for s in range(1, len(C.modules)):
        for src, tgt, e in C.entries(s):
            if F.is_zero(e.scalar):
                problems.append(f"explicit zero entry at s={s} ({src}->{tgt})")
            want = C.modules[s][src].mdeg
            if e.mono * C.modules[s - 1][tgt].mdeg != want:
                problems.append(f"inhomogeneous entry at s={s} ({src}->{tgt})")
    for s in range(2, len(C.modules)):
        for src, col in C.differentials[s].items():
            acc: dict[tuple[int, Monomial], object] = {}
            for mid, e1 in col.items():
                for tgt, e2 in C.differentials[s - 1].get(mid, {}).items():
                    key = (tgt, e1.mono * e2.mono)
                    acc[key] = F.add(acc.get(key, F.zero), F.mul(e1.scalar, e2.scalar))
            for (tgt, mono), val in acc.items():
                if not F.is_zero(val):
                    problems.append(f"d∘d != 0 at s={s}: source {src}, target {tgt}, {mono}")
    return problems
