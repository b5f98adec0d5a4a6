from itertools import combinations
from math import isqrt, log10
from typing import Dict, Sequence, Union
import logging

from pydantic import ValidationError

from cfcolour.config import settings
from cfcolour.exceptions import ArgumentError, SizeLimitError
from cfcolour.geometry import interval_hypergraph
from cfcolour.hypergraph import union_hypergraph
from cfcolour.models import Hypergraph, StarHypergraphParams, Verdict, VertexColouring
from cfcolour.solvers import exact_chi, exact_chi_subset_cf

logger = logging.getLogger(__name__)


def star_hypergraph(n: int, t: int) -> Hypergraph:
    """Vertex 0 joined with every (t+1)-subset of the other vertices."""
    try:
        params = StarHypergraphParams(n=n, t=t)
    except ValidationError as exc:
        raise ArgumentError(f"star hypergraph needs t >= 2 and n >= t+2, got n={n}, t={t}") from exc
    edges = [(0,) + rest for rest in combinations(range(1, params.n), params.t + 1)]
    return Hypergraph.from_canonical(params.n, edges)


def complete_hypergraph(n: int) -> Hypergraph:
    """Every nonempty vertex subset is a hyperedge."""
    if n < 1:
        raise ArgumentError(f"n must be at least 1, got {n}")
    edges = [h for size in range(1, n + 1) for h in combinations(range(n), size)]
    return Hypergraph.from_canonical(n, sorted(edges))


def ceil_sqrt(value: int) -> int:
    """Exact integer ceiling of the square root."""
    root = isqrt(value)
    return root if root * root == value else root + 1


def interval_lb_table(max_n: int) -> Dict[int, int]:
    """Exact 2-subset CF chromatic numbers of the interval hypergraphs on 3..max_n points.

    A broken recurrence chi(2m+1) >= 1 + chi(m) is logged as a warning.
    """
    if max_n > settings.interval_table_max_n:
        raise SizeLimitError(f"interval table accepts max_n <= {settings.interval_table_max_n}, got {max_n}")
    table = {n: exact_chi_subset_cf(interval_hypergraph(n), 2)[0] for n in range(3, max_n + 1)}
    for m, value in table.items():
        if 2 * m + 1 in table and table[2 * m + 1] < 1 + value:
            logger.warning(f"recurrence fails: chi({2 * m + 1}) = {table[2 * m + 1]} < 1 + chi({m}) = {1 + value}")
    logger.info(f"interval table up to n={max_n}: {table}")
    return table


def lbunion_hypergraph(n: int) -> Hypergraph:
    """Hyperedges of size at least 3 of the union hypergraph of intervals."""
    unions = union_hypergraph(interval_hypergraph(n))
    return Hypergraph.from_canonical(n, [h for h in unions.hyperedges if len(h) >= 3])


def consecutive_pair_check(colouring: Union[VertexColouring, Sequence[int]]) -> Verdict:
    """Each ordered colour pair labels at most one pair of consecutive vertices."""
    colours = colouring.colours if isinstance(colouring, VertexColouring) else tuple(colouring)
    seen: Dict[tuple, int] = {}
    for i in range(len(colours) - 1):
        pair = (colours[i], colours[i + 1])
        if pair in seen:
            return Verdict(valid=False, counterexample=(seen[pair], seen[pair] + 1, i, i + 1),
                           detail=f"colour pair {pair} on consecutive vertices {seen[pair]} and {i}")
        seen[pair] = i
    return Verdict(valid=True)


def lbunion_check(n: int) -> Verdict:
    """Check that the union lower-bound hypergraph on n points needs ceil(sqrt(n-1)) colours."""
    if n > settings.lbunion_max_n:
        raise SizeLimitError(f"lbunion check accepts n <= {settings.lbunion_max_n}, got {n}")
    if n < 1:
        raise ArgumentError(f"n must be at least 1, got {n}")
    h_prime = lbunion_hypergraph(n)
    if not h_prime.hyperedges:
        chi = 1
    else:
        chi, witness = exact_chi(h_prime, "CF")
        pairs = consecutive_pair_check(witness)
        if not pairs:
            return pairs
    bound = ceil_sqrt(n - 1) if n > 1 else 0
    logger.info(f"lbunion n={n}: chi_CF = {chi}, bound {bound}")
    if chi < bound:
        return Verdict(valid=False, detail=f"chi_CF(H') = {chi} below ceil(sqrt({n - 1})) = {bound}")
    return Verdict(valid=True, detail=f"chi_CF(H') = {chi} >= {bound}")


def tower(t: int, m: int) -> int:
    """twr_1(m) = m, twr_t(m) = 2 ** twr_{t-1}(m)."""
    if t < 1:
        raise ArgumentError(f"tower height must be at least 1, got {t}")
    value = m
    for _ in range(t - 1):
        # 2**value has about value*log10(2) digits
        if value * log10(2) > settings.tower_max_digits:
            raise SizeLimitError(f"tower({t}, {m}) exceeds {settings.tower_max_digits} digits")
        value = 2 ** value
    return value
