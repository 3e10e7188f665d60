"""Consecutive cancellation down to a minimal resolution, Betti tables, descent chains.

Cancellation order is fixed: lowest homological degree first, then the
smallest source index, then the smallest target index, rescanning after
every cancellation.  A cancellation at degree s only creates new unit
entries in the same differential, so a lazy min-heap per degree reproduces
that global scan exactly.
"""

from __future__ import annotations

import heapq
from collections import defaultdict
from dataclasses import dataclass, field as dc_field

from .fields import Field
from .monomial import Monomial
from .taylor import Entry, FreeComplex, TaylorSymbol


class InvariantViolation(RuntimeError):
    pass


@dataclass(frozen=True)
class Cancellation:
    s: int
    source: TaylorSymbol
    target: TaylorSymbol

    def to_json(self) -> dict:
        return {"s": self.s, "source": list(self.source.subset), "target": list(self.target.subset)}


@dataclass
class CancellationTrace:
    steps: list[Cancellation] = dc_field(default_factory=list)

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)


def minimize(C: FreeComplex) -> tuple[FreeComplex, CancellationTrace]:
    F = C.field
    p = C.length
    mdeg = [[sym.mdeg.exponents for sym in basis] for basis in C.modules]
    alive = [[True] * len(basis) for basis in C.modules]
    # cols[s][src] = {tgt: scalar}; rows[s][tgt] = set of sources hitting tgt
    cols: list[list[dict]] = [[]]
    rows: list[list[set]] = [[]]
    for s in range(1, p + 1):
        cs = [dict() for _ in C.modules[s]]
        rs = [set() for _ in C.modules[s - 1]]
        for src, col in C.differentials[s].items():
            for tgt, e in col.items():
                if not F.is_zero(e.scalar):
                    cs[src][tgt] = e.scalar
                    rs[tgt].add(src)
        cols.append(cs)
        rows.append(rs)

    trace = CancellationTrace()
    for s in range(1, p + 1):
        cs = cols[s]
        heap = [
            (src, tgt)
            for src, col in enumerate(cs)
            for tgt in col
            if mdeg[s][src] == mdeg[s - 1][tgt]
        ]
        heapq.heapify(heap)
        while heap:
            a, b = heapq.heappop(heap)
            if not alive[s][a] or not alive[s - 1][b] or b not in cs[a]:
                continue
            _cancel(F, s, a, b, cols, rows, mdeg, alive, heap)
            trace.steps.append(Cancellation(s, C.modules[s][a], C.modules[s - 1][b]))
    return _rebuild(C, cols, alive), trace


def _cancel(F: Field, s, a, b, cols, rows, mdeg, alive, heap) -> None:
    cs, rs = cols[s], rows[s]
    col_a = cs[a]
    u_inv = F.inv(col_a[b])
    others = [(t, w) for t, w in col_a.items() if t != b]
    md_s, md_t = mdeg[s], mdeg[s - 1]
    for c in rs[b]:
        if c == a:
            continue
        col_c = cs[c]
        factor = F.mul(col_c[b], u_inv)
        mc = md_s[c]
        for t, w in others:
            mt = md_t[t]
            if any(x > y for x, y in zip(mt, mc)):
                raise InvariantViolation(
                    f"non-exact monomial quotient while cancelling at s={s}: {mt} does not divide {mc}"
                )
            new = F.sub(col_c.get(t, F.zero), F.mul(factor, w))
            if F.is_zero(new):
                if t in col_c:
                    del col_c[t]
                    rs[t].discard(c)
            else:
                if t not in col_c:
                    rs[t].add(c)
                col_c[t] = new
                if mc == mt:
                    heapq.heappush(heap, (c, t))
    # drop a (source at s, target at s+1) and b (target at s, source at s-1)
    for t in col_a:
        rs[t].discard(a)
    cs[a] = {}
    for c in rs[b]:
        if c != a:
            del cs[c][b]
    rs[b] = set()
    if s + 1 < len(cols):
        for c in rows[s + 1][a]:
            del cols[s + 1][c][a]
        rows[s + 1][a] = set()
    if s - 1 >= 1:
        for t in cols[s - 1][b]:
            rows[s - 1][t].discard(b)
        cols[s - 1][b] = {}
    alive[s][a] = False
    alive[s - 1][b] = False


def _rebuild(C: FreeComplex, cols, alive) -> FreeComplex:
    modules = []
    renumber = []
    for s, basis in enumerate(C.modules):
        new_index = {}
        kept = []
        for i, sym in enumerate(basis):
            if alive[s][i]:
                new_index[i] = len(kept)
                kept.append(sym)
        modules.append(kept)
        renumber.append(new_index)
    while len(modules) > 1 and not modules[-1]:
        modules.pop()
    diffs: list[dict[int, dict[int, Entry]]] = [{}]
    for s in range(1, len(modules)):
        d = {}
        for old_src, new_src in renumber[s].items():
            src_mdeg = C.modules[s][old_src].mdeg
            d[new_src] = {
                renumber[s - 1][t]: Entry(val, src_mdeg / C.modules[s - 1][t].mdeg)
                for t, val in sorted(cols[s][old_src].items())
            }
        diffs.append(d)
    return FreeComplex(C.field, modules, diffs)


@dataclass
class BettiTable:
    """Total, graded and multigraded Betti numbers of S/M over one field.

    ``pd`` is -1 for the zero module (the unit ideal).
    """

    field: str
    total: dict[int, int]
    graded: dict[tuple[int, int], int]
    multigraded: dict[tuple[int, Monomial], int]
    pd: int

    @classmethod
    def from_multigraded(cls, field: Field | str, multigraded: dict[tuple[int, Monomial], int]) -> BettiTable:
        mg = {k: v for k, v in multigraded.items() if v}
        total: dict[int, int] = defaultdict(int)
        graded: dict[tuple[int, int], int] = defaultdict(int)
        for (i, m), b in mg.items():
            total[i] += b
            graded[(i, m.degree)] += b
        pd = max(total, default=-1)
        return cls(str(field), dict(sorted(total.items())), dict(sorted(graded.items())), mg, pd)

    def betti(self, i: int) -> int:
        return self.total.get(i, 0)

    def at(self, m: Monomial) -> dict[int, int]:
        """All i -> b_{i,m} for one multidegree."""
        return {i: b for (i, l), b in self.multigraded.items() if l == m}

    def to_json(self) -> dict:
        return {
            "field": self.field,
            "pd": self.pd,
            "total": {str(i): b for i, b in sorted(self.total.items())},
            "graded": [{"i": i, "j": j, "b": b} for (i, j), b in sorted(self.graded.items())],
            "multigraded": [
                {"i": i, "m": m, "b": b}
                for i, m, b in sorted((i, str(m), b) for (i, m), b in self.multigraded.items())
            ],
        }


def betti_from_complex(C: FreeComplex) -> BettiTable:
    if not C.is_minimal():
        raise ValueError("Betti numbers can only be read off a minimal complex")
    counts: dict[tuple[int, Monomial], int] = defaultdict(int)
    for i, basis in enumerate(C.modules):
        for sym in basis:
            counts[(i, sym.mdeg)] += 1
    return BettiTable.from_multigraded(C.field, counts)


def descent_chain(C: FreeComplex, start: int | TaylorSymbol) -> list[TaylorSymbol]:
    """Walk down from a top-degree symbol, always to the lexicographically smallest target.

    Returns [sigma_p, ..., sigma_1].
    """
    if not C.is_minimal():
        raise ValueError("descent chains are defined on minimal complexes")
    p = C.length
    if isinstance(start, TaylorSymbol):
        try:
            idx = C.modules[p].index(start)
        except ValueError:
            raise ValueError(f"{start} is not a symbol of the top module F_{p}") from None
    else:
        idx = start
        if not 0 <= idx < len(C.modules[p]):
            raise IndexError(f"no symbol {idx} in F_{p}")
    chain = [C.modules[p][idx]]
    for s in range(p, 1, -1):
        col = C.differentials[s].get(idx, {})
        nonzero = [t for t, e in col.items() if not C.field.is_zero(e.scalar)]
        if not nonzero:
            raise InvariantViolation(f"{chain[-1]} has zero image in a minimal complex")
        idx = min(nonzero, key=lambda t: C.modules[s - 1][t].subset)
        chain.append(C.modules[s - 1][idx])
    return chain


def resolve(M, field: Field | None = None, cap: int | None = None) -> tuple[FreeComplex, CancellationTrace]:
    """Minimal resolution of S/M obtained from its Taylor complex."""
    from .fields import QQ
    from .taylor import taylor

    return minimize(taylor(M, field or QQ, cap))


def minimal_betti(M, field: Field | None = None, cap: int | None = None) -> BettiTable:
    from .fields import QQ

    if M.is_zero:
        return BettiTable.from_multigraded(field or QQ, {(0, M.ctx.one()): 1})
    C, _ = resolve(M, field, cap)
    return betti_from_complex(C)
