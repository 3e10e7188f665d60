"""Taylor resolutions, minimal free resolutions and Betti numbers of monomial ideals."""

from .fields import QQ, Field, parse_field
from .ideal import (
    CompressionMap,
    MonomialIdeal,
    compress,
    minimalize,
    parse_ideal,
    random_ideal,
    read_ideal,
    restrict,
    twin,
)
from .minimize import BettiTable, CancellationTrace, betti_from_complex, descent_chain, minimal_betti, minimize, resolve
from .monomial import Monomial, VarContext, divides, format_monomial, lcm, parse_monomial, total_degree
from .oracle import full_betti, rank, strand_betti
from .taylor import FreeComplex, TaylorSymbol, check_complex, lcm_lattice, strand_basis, taylor

__all__ = [
    "QQ", "Field", "parse_field",
    "CompressionMap", "MonomialIdeal", "compress", "minimalize", "parse_ideal", "random_ideal",
    "read_ideal", "restrict", "twin",
    "BettiTable", "CancellationTrace", "betti_from_complex", "descent_chain", "minimal_betti",
    "minimize", "resolve",
    "Monomial", "VarContext", "divides", "format_monomial", "lcm", "parse_monomial", "total_degree",
    "full_betti", "rank", "strand_betti",
    "FreeComplex", "TaylorSymbol", "check_complex", "lcm_lattice", "strand_basis", "taylor",
]
