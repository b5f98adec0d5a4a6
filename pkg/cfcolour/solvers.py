"""Exact minimal colourings by backtracking, used as test oracles.

Vertices (or t-subsets) are coloured in a fixed order; a hyperedge is checked
as soon as its last member is coloured. For order-free notions a vertex may
only use colours 1..1+max colour used so far (first-use symmetry breaking);
UM notions read colours as an order, so they search all values. The colour
budget grows one at a time until a colouring is found.
"""
from collections import Counter
from itertools import combinations
from typing import List, Optional, Tuple, Union
import logging

from cfcolour.config import settings
from cfcolour.exceptions import SizeLimitError
from cfcolour.hypergraph import hyperedge_satisfies, resolve_notion
from cfcolour.models import Hypergraph, Notion, SubsetColouring, VertexColouring

logger = logging.getLogger(__name__)


def exact_chi(hypergraph: Hypergraph, notion: Union[Notion, str],
              t: Optional[int] = None) -> Tuple[int, VertexColouring]:
    """Minimum number of colours for `notion` on `hypergraph`, with a witness."""
    notion, t = resolve_notion(notion, t)
    n = hypergraph.n
    if n > settings.exact_max_vertices:
        raise SizeLimitError(f"exact_chi accepts at most {settings.exact_max_vertices} vertices, got {n}")
    if n == 0:
        return 0, VertexColouring(colours=())

    closing: List[list] = [[] for _ in range(n)]
    for h in hypergraph.hyperedges:
        closing[h[-1]].append(h)
    colours = [0] * n

    def extend(v: int, used: int, budget: int) -> bool:
        if v == n:
            return True
        limit = budget if notion.ordered else min(budget, used + 1)
        for c in range(1, limit + 1):
            colours[v] = c
            if all(hyperedge_satisfies([colours[u] for u in h], notion, t) for h in closing[v]):
                if extend(v + 1, max(used, c), budget):
                    return True
        colours[v] = 0
        return False

    for budget in range(1, n + 1):
        if extend(0, 0, budget):
            logger.info(f"exact {notion.value} chromatic number {budget} on {n} vertices")
            return budget, VertexColouring(colours=tuple(colours))
    # all-distinct colours satisfy every notion
    raise AssertionError("unreachable: n colours always suffice")


def colex_subsets(n: int, t: int) -> List[Tuple[int, ...]]:
    """t-subsets of range(n) in colexicographic order."""
    return sorted(combinations(range(n), t), key=lambda s: s[::-1])


def exact_chi_subset_cf(hypergraph: Hypergraph, t: int) -> Tuple[int, SubsetColouring]:
    """Minimum number of tokens in a t-subset-CF colouring, with a witness."""
    n = hypergraph.n
    subsets = colex_subsets(n, t)
    if len(subsets) > settings.exact_max_subsets:
        raise SizeLimitError(
            f"exact_chi_subset_cf accepts at most {settings.exact_max_subsets} {t}-subsets, got {len(subsets)}")
    position = {s: i for i, s in enumerate(subsets)}

    # hyperedges grouped by the position of their last t-subset
    closing: List[list] = [[] for _ in subsets]
    for h in hypergraph.hyperedges:
        if len(h) > t:
            members = [position[s] for s in combinations(h, t)]
            closing[max(members)].append(members)

    if not any(closing):
        return 1, SubsetColouring(t=t, n=n, assignment={s: 1 for s in subsets})

    tokens = [0] * len(subsets)

    def extend(i: int, used: int, budget: int) -> bool:
        if i == len(subsets):
            return True
        for c in range(1, min(budget, used + 1) + 1):
            tokens[i] = c
            if all(1 in Counter(tokens[j] for j in members).values() for members in closing[i]):
                if extend(i + 1, max(used, c), budget):
                    return True
        tokens[i] = 0
        return False

    for budget in range(1, len(subsets) + 1):
        if extend(0, 0, budget):
            logger.info(f"exact {t}-subset CF chromatic number {budget} on {n} vertices")
            return budget, SubsetColouring(t=t, n=n, assignment=dict(zip(subsets, tokens)))
    raise AssertionError("unreachable: distinct tokens always suffice")
