"""Randomized and directed checks of the projective-dimension bounds and Betti equalities.

Every trial is reproducible from its trial seed, which failure records carry
together with the offending ideal in file format.
"""

from __future__ import annotations

import random
import time
from dataclasses import asdict, dataclass, field as dc_field
from typing import Callable, Iterator

from .fields import QQ, Field
from .ideal import (
    MonomialIdeal,
    candidate_pool,
    compress,
    format_ideal,
    minimalize,
    random_ideal,
    restrict,
    twin,
)
from .minimize import betti_from_complex, descent_chain, minimize
from .monomial import VarContext
from .oracle import full_betti, strand_betti
from .taylor import check_complex, lcm_lattice, taylor

ORACLE_EVERY = 10


@dataclass
class Failure:
    ideal: str
    field: str
    observed: object
    expected: str
    seed: int | None = None
    detail: str = ""


@dataclass
class VerificationReport:
    theorem: str
    attempted: int = 0
    passed: int = 0
    failures: list[Failure] = dc_field(default_factory=list)
    wall_time: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures and self.passed == self.attempted

    def record(self, problems: list[str], M: MonomialIdeal, field: Field, observed, expected: str,
               seed: int | None = None, shrink: Callable[[MonomialIdeal], bool] | None = None) -> None:
        self.attempted += 1
        if not problems:
            self.passed += 1
            return
        witness = shrink_witness(M, shrink) if shrink else M
        detail = "; ".join(problems)
        if witness != M:
            detail += f"; shrunk from {M}"
        self.failures.append(Failure(format_ideal(witness), str(field), observed, expected, seed, detail))

    def merge(self, other: VerificationReport) -> None:
        self.attempted += other.attempted
        self.passed += other.passed
        self.failures.extend(other.failures)
        self.wall_time += other.wall_time

    def to_json(self, timing: bool = False) -> dict:
        out = {
            "theorem": self.theorem,
            "attempted": self.attempted,
            "passed": self.passed,
            "failures": [asdict(f) for f in self.failures],
        }
        if timing:
            out["wall_time"] = round(self.wall_time, 6)
        return out


def trial_seed(seed: int, i: int) -> int:
    return seed * 1_000_003 + i


def shrink_witness(M: MonomialIdeal, fails: Callable[[MonomialIdeal], bool]) -> MonomialIdeal:
    """Greedily drop generators while the failure persists."""
    current = M
    changed = True
    while changed and current.q > 1:
        changed = False
        for g in current.gens:
            smaller = minimalize([h for h in current.gens if h != g])
            if fails(smaller):
                current = smaller
                changed = True
                break
    return current


def _pipeline(M: MonomialIdeal, field: Field, cap: int | None):
    C = taylor(M, field, cap)
    problems = [f"Taylor complex: {p}" for p in check_complex(C)[:5]]
    Cm, _ = minimize(C)
    return Cm, betti_from_complex(Cm), problems


def _oracle_problems(M: MonomialIdeal, table, field: Field, cap: int | None) -> list[str]:
    if table != full_betti(M, field, cap):
        return ["minimization and strand oracle disagree"]
    return []


def chain_problems(Cm, lower: int, upper: int) -> list[str]:
    """Descent chains from every top symbol: strictly increasing degrees within [lower, upper]."""
    problems = []
    p = Cm.length
    if p < 1:
        return problems
    for idx in range(len(Cm.modules[p])):
        chain = descent_chain(Cm, idx)
        degs = [sym.mdeg.degree for sym in reversed(chain)]
        if len(chain) != p:
            problems.append(f"chain from {chain[0]} has length {len(chain)}, pd is {p}")
        if any(a >= b for a, b in zip(degs, degs[1:])):
            problems.append(f"chain degrees {degs} not strictly increasing")
        if degs[0] < lower or degs[-1] > upper:
            problems.append(f"chain degrees {degs} leave [{lower}, {upper}]")
    return problems


def squarefree_trial(n: int, q_max: int, k: int, ts: int) -> MonomialIdeal:
    # a random degree window inside [k+1, n] keeps more generators alive after minimalization
    ctx = VarContext.default(n)
    rng = random.Random(ts)
    lo = rng.randint(k + 1, n)
    hi = rng.randint(lo, n)
    pool = candidate_pool(ctx, lo, hi, True)
    q = rng.randint(1, min(q_max, len(pool)))
    return random_ideal(ctx, q, lo, hi, True, ts)


def verify_squarefree_bound(n: int, q_max: int, k: int, trials: int, seed: int, field: Field = QQ,
                            cap: int | None = None) -> VerificationReport:
    """pd(S/M) <= n - k for squarefree M with every generator of degree > k."""
    if not 0 <= k < n:
        raise ValueError(f"need 0 <= k < n, got k={k}, n={n} (generators of degree {k + 1} do not exist)")
    report = VerificationReport("t31")
    start = time.perf_counter()
    bound = n - k

    def check(M, with_oracle):
        Cm, table, problems = _pipeline(M, field, cap)
        if table.pd > bound:
            problems.append(f"pd {table.pd} > {bound}")
        problems += chain_problems(Cm, k + 1, n)
        if with_oracle:
            problems += _oracle_problems(M, table, field, cap)
        return table.pd, problems

    for i in range(trials):
        ts = trial_seed(seed, i)
        M = squarefree_trial(n, q_max, k, ts)
        pd, problems = check(M, i % ORACLE_EVERY == 0)
        report.record(problems, M, field, pd, f"pd <= {bound}", ts,
                      shrink=lambda X: bool(check(X, False)[1]))
    report.wall_time = time.perf_counter() - start
    return report


def general_trial(n: int, q_max: int, max_deg: int | None, max_exp: int, ts: int) -> MonomialIdeal:
    ctx = VarContext.default(n)
    rng = random.Random(ts)
    top = max_deg if max_deg is not None else n * max_exp
    lo = rng.randint(1, max(1, (top + 1) // 2))
    hi = rng.randint(lo, min(lo + 2, top))
    pool = candidate_pool(ctx, lo, hi, False, max_exp)
    q = rng.randint(1, min(q_max, len(pool)))
    return random_ideal(ctx, q, lo, hi, False, ts, max_exp)


def verify_syzygy_bound(n: int, q_max: int, max_deg: int | None, trials: int, seed: int,
                        field: Field = QQ, max_exp: int = 4, cap: int | None = None) -> VerificationReport:
    """pd(S/M) <= n for arbitrary monomial ideals."""
    report = VerificationReport("t46")
    start = time.perf_counter()

    def check(M, with_oracle):
        _, table, problems = _pipeline(M, field, cap)
        if table.pd > n:
            problems.append(f"pd {table.pd} > {n}")
        if with_oracle:
            problems += _oracle_problems(M, table, field, cap)
        return table.pd, problems

    for i in range(trials):
        ts = trial_seed(seed, i)
        M = general_trial(n, q_max, max_deg, max_exp, ts)
        pd, problems = check(M, i % ORACLE_EVERY == 0)
        report.record(problems, M, field, pd, f"pd <= {n}", ts,
                      shrink=lambda X: bool(check(X, False)[1]))
    report.wall_time = time.perf_counter() - start
    return report


def verify_restriction(M: MonomialIdeal, field: Field = QQ, cap: int | None = None,
                       seed: int | None = None) -> VerificationReport:
    """b_{i,m}(S/M) = b_{i,m}(S/M_m) at every lcm-lattice multidegree m."""
    report = VerificationReport("c42")
    start = time.perf_counter()
    whole = full_betti(M, field, cap)
    _, table, problems = _pipeline(M, field, cap)
    if table != whole:
        problems.append("minimization and strand oracle disagree")
    report.record(problems, M, field, table.pd, "pipeline == oracle, complex sane", seed)
    for m in sorted(lcm_lattice(M, cap), key=lambda x: x.sort_key()):
        lhs = whole.at(m)
        rhs = strand_betti(restrict(M, m), m, field, cap)
        problems = [] if lhs == rhs else [f"at {m}: b(S/M) = {lhs}, b(S/M_m) = {rhs}"]
        report.record(problems, M, field, {"m": str(m), "M": lhs, "M_m": rhs}, "equal", seed)
    report.wall_time = time.perf_counter() - start
    return report


def verify_twin(M: MonomialIdeal, field: Field = QQ, cap: int | None = None,
                seed: int | None = None) -> VerificationReport:
    """b_{i,m}(S/M) = b_{i,m}(S/M') at m = lcm of all generators."""
    report = VerificationReport("t45")
    start = time.perf_counter()
    _, table, problems = _pipeline(M, field, cap)
    problems += _oracle_problems(M, table, field, cap)
    report.record(problems, M, field, table.pd, "pipeline == oracle, complex sane", seed)
    m = M.top_lcm()
    T = twin(M)
    lhs = strand_betti(M, m, field, cap)
    rhs = strand_betti(T, m, field, cap)
    problems = [] if lhs == rhs else [f"at {m}: b(S/M) = {lhs}, b(S/M') = {rhs}"]
    report.record(problems, M, field, {"m": str(m), "M": lhs, "twin": rhs}, "equal", seed)
    report.wall_time = time.perf_counter() - start
    return report


def verify_compression(M: MonomialIdeal, field: Field = QQ, cap: int | None = None,
                       seed: int | None = None) -> VerificationReport:
    """The twin ideal and its squarefree compression have matching Betti tables."""
    report = VerificationReport("compress")
    start = time.perf_counter()
    T = twin(M)
    Mc, cmap = compress(T)
    _, t_table, problems = _pipeline(T, field, cap)
    problems += _oracle_problems(T, t_table, field, cap)
    c_table = full_betti(Mc, field, cap)
    if not Mc.is_squarefree():
        problems.append(f"compressed ideal {Mc} is not squarefree")
    if Mc.q != T.q:
        problems.append(f"compression changed the generator count {T.q} -> {Mc.q}")
    if t_table.pd != c_table.pd:
        problems.append(f"pd(twin) = {t_table.pd} but pd(compressed) = {c_table.pd}")
    if t_table.pd > M.ctx.n:
        problems.append(f"pd {t_table.pd} > n = {M.ctx.n}")
    expanded = {(i, cmap.expand(m)): b for (i, m), b in c_table.multigraded.items()}
    if expanded != t_table.multigraded:
        problems.append("multigraded Betti numbers do not correspond under substitution")
    report.record(problems, M, field, {"twin_pd": t_table.pd, "compressed_pd": c_table.pd},
                  "equal pd, corresponding tables", seed)
    report.wall_time = time.perf_counter() - start
    return report


def random_family(count: int, n_max: int, q_max: int, seed: int, max_exp: int = 3,
                  n_min: int = 2) -> Iterator[tuple[int, MonomialIdeal]]:
    """Seeded arbitrary monomial ideals with n in [n_min, n_max] and at most q_max generators."""
    for i in range(count):
        ts = trial_seed(seed, i)
        n = random.Random(ts).randint(n_min, n_max)
        yield ts, general_trial(n, q_max, None, max_exp, ts)


def run_family(verifier: Callable[..., VerificationReport], count: int, n_max: int, q_max: int,
               seed: int, field: Field = QQ, max_exp: int = 3) -> VerificationReport:
    report = None
    for ts, M in random_family(count, n_max, q_max, seed, max_exp):
        r = verifier(M, field, seed=ts)
        if report is None:
            report = r
        else:
            report.merge(r)
    return report or VerificationReport(verifier.__name__)
