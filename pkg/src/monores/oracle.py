"""Multigraded Betti numbers from strand homology of the full Taylor complex.

For a multidegree m, the strand keeps the Taylor symbols whose lcm is
exactly m and the differential entries between them (those have monomial
part 1).  Its homology in degree i has dimension b_{i,m}.  Nothing here
touches the cancellation code, so it serves as an independent check on it.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Sequence

from .fields import QQ, Field
from .ideal import MonomialIdeal
from .minimize import BettiTable
from .monomial import Monomial
from .taylor import FreeComplex, group_by_mdeg, taylor


def rank(matrix: Sequence[Sequence], field: Field = QQ) -> int:
    """Rank by exact Gaussian elimination.

    Pivots are taken column by column, first nonzero row wins.  Over Q the
    rows are scaled to integers and eliminated fraction-free, dividing out
    the row content after each step.
    """
    rows = []
    for r in matrix:
        row = {}
        for j, x in enumerate(r):
            if not field.contains(x):
                raise ValueError(f"entry {x!r} is not an element of {field}")
            if x != 0:
                row[j] = x
        if row:
            rows.append(row)
    if field.characteristic == 0:
        return _rank_integer(_clear_denominators(rows))
    return _rank_mod_p(rows, field.characteristic)


def _clear_denominators(rows: list[dict]) -> list[dict]:
    out = []
    for row in rows:
        den = 1
        for x in row.values():
            if isinstance(x, Fraction):
                den = den * x.denominator // math.gcd(den, x.denominator)
        out.append({j: int(x * den) for j, x in row.items()})
    return out


def _pivot_columns(rows: list[dict]) -> list[int]:
    return sorted({j for row in rows for j in row})


def _rank_integer(rows: list[dict]) -> int:
    r = 0
    for col in _pivot_columns(rows):
        piv = next((i for i, row in enumerate(rows) if col in row), None)
        if piv is None:
            continue
        prow = rows.pop(piv)
        a = prow[col]
        for i, row in enumerate(rows):
            b = row.get(col)
            if b is None:
                continue
            g = math.gcd(a, b)
            ka, kb = a // g, b // g
            new = {j: ka * x for j, x in row.items()}
            for j, x in prow.items():
                v = new.get(j, 0) - kb * x
                if v:
                    new[j] = v
                else:
                    new.pop(j, None)
            content = math.gcd(*new.values()) if new else 1
            if content > 1:
                new = {j: x // content for j, x in new.items()}
            rows[i] = new
        rows = [row for row in rows if row]
        r += 1
    return r


def _rank_mod_p(rows: list[dict], p: int) -> int:
    r = 0
    for col in _pivot_columns(rows):
        piv = next((i for i, row in enumerate(rows) if col in row), None)
        if piv is None:
            continue
        prow = rows.pop(piv)
        inv = pow(prow[col], -1, p)
        for i, row in enumerate(rows):
            b = row.get(col)
            if b is None:
                continue
            f = b * inv % p
            for j, x in prow.items():
                v = (row.get(j, 0) - f * x) % p
                if v:
                    row[j] = v
                else:
                    row.pop(j, None)
        rows = [row for row in rows if row]
        r += 1
    return r


def _strand_matrix(C: FreeComplex, s: int, sources: list[int], targets: list[int]) -> list[list]:
    F = C.field
    pos = {t: k for k, t in enumerate(targets)}
    mat = [[F.zero] * len(sources) for _ in targets]
    for k, src in enumerate(sources):
        for tgt, e in C.differentials[s].get(src, {}).items():
            if tgt in pos and e.mono.is_one():
                mat[pos[tgt]][k] = e.scalar
    return mat


def strand_betti_of_complex(C: FreeComplex, strand: list[list[int]]) -> dict[int, int]:
    """b_i = dim V_i - rank D_i - rank D_{i+1} for one strand (per-degree basis indices)."""
    top = len(strand)
    ranks = [0] * (top + 1)
    for s in range(1, top):
        if strand[s] and strand[s - 1]:
            ranks[s] = rank(_strand_matrix(C, s, strand[s], strand[s - 1]), C.field)
    out = {}
    for i in range(top):
        b = len(strand[i]) - ranks[i] - ranks[i + 1]
        if b < 0:
            raise ArithmeticError("negative strand homology; D o D != 0 on this strand")
        if b:
            out[i] = b
    return out


def strand_betti(M: MonomialIdeal, m: Monomial, field: Field = QQ, cap: int | None = None) -> dict[int, int]:
    if M.is_zero:
        return {0: 1} if m.is_one() else {}
    C = taylor(M, field, cap)
    strand = [[i for i, sym in enumerate(basis) if sym.mdeg == m] for basis in C.modules]
    return strand_betti_of_complex(C, strand)


def _strand_job(args):
    C, m, strand = args
    return m, strand_betti_of_complex(C, strand)


def full_betti(M: MonomialIdeal, field: Field = QQ, cap: int | None = None, workers: int = 1) -> BettiTable:
    """Betti table of S/M from every strand of the Taylor complex.

    With ``workers > 1`` strands are evaluated in a process pool; the merged
    table does not depend on completion order.
    """
    if M.is_zero:
        return BettiTable.from_multigraded(field, {(0, M.ctx.one()): 1})
    C = taylor(M, field, cap)
    groups = sorted(group_by_mdeg(C).items(), key=lambda kv: kv[0].exponents)
    jobs = [(C, m, strand) for m, strand in groups]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_strand_job, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        results = [_strand_job(j) for j in jobs]
    counts = {}
    for m, betti in results:
        for i, b in betti.items():
            counts[(i, m)] = b
    return BettiTable.from_multigraded(field, counts)
