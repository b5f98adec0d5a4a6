from collections import Counter
from itertools import combinations
from typing import Dict, Iterable, Optional, Sequence, Tuple, Union
import logging

import numpy as np

from cfcolour.exceptions import ArgumentError
from cfcolour.models import Graph, Hypergraph, Notion, SubsetColouring, VertexColouring, Verdict

logger = logging.getLogger(__name__)


def induced_subhypergraph(hypergraph: Hypergraph, vertices: Iterable[int]) -> Tuple[Hypergraph, Dict[int, int]]:
    """Restrict every hyperedge to `vertices`; returns the re-indexed hypergraph and old->new map."""
    keep = sorted(set(vertices))
    index = {v: i for i, v in enumerate(keep)}
    edges = set()
    for h in hypergraph.hyperedges:
        restricted = tuple(index[v] for v in h if v in index)
        if restricted:
            edges.add(restricted)
    return Hypergraph.from_canonical(len(keep), sorted(edges)), index


def delaunay_graph(hypergraph: Hypergraph) -> Graph:
    """Graph of the hyperedges with exactly two vertices."""
    return Graph(n=hypergraph.n, edges=[h for h in hypergraph.hyperedges if len(h) == 2])


def union_hypergraph(hypergraph: Hypergraph) -> Hypergraph:
    """All unions e | f of two hyperedges, e == f included."""
    edges = hypergraph.hyperedges
    unions = set(edges)
    for i, e in enumerate(edges):
        for f in edges[i + 1:]:
            unions.add(tuple(sorted(set(e).union(f))))
    return Hypergraph.from_canonical(hypergraph.n, sorted(unions))


def sample_union_hypergraph(hypergraph: Hypergraph, size: int, seed: int = 0) -> Hypergraph:
    """Unions of `size` seeded random pairs of hyperedges."""
    edges = hypergraph.hyperedges
    rng = np.random.default_rng(seed)
    picks = rng.integers(0, len(edges), size=(size, 2))
    unions = {tuple(sorted(set(edges[i]).union(edges[j]))) for i, j in picks}
    return Hypergraph.from_canonical(hypergraph.n, sorted(unions))


def count_pairs_in_small_hyperedges(hypergraph: Hypergraph, k: int) -> int:
    """Number of vertex pairs sharing a hyperedge of size at most k."""
    pairs = set()
    for h in hypergraph.hyperedges:
        if len(h) <= k:
            pairs.update(combinations(h, 2))
    return len(pairs)


def hyperedge_satisfies(colours: Sequence[int], notion: Notion, t: int = 1) -> bool:
    """Check the defining condition of `notion` on the colours of one hyperedge."""
    counts = Counter(colours)
    size = len(colours)
    if notion == Notion.PROPER:
        return size < 2 or len(counts) > 1
    if notion == Notion.CF:
        return 1 in counts.values()
    if notion == Notion.UM:
        return counts[max(counts)] == 1
    k = min(size, t)
    if notion == Notion.COLOURFUL:
        return len(counts) >= k
    if notion == Notion.STRONG_CF:
        return sum(1 for c in counts.values() if c == 1) >= k
    # t-UM: the k largest colours each occur exactly once
    top = sorted(counts, reverse=True)[:k]
    return len(top) == k and all(counts[c] == 1 for c in top)


def resolve_notion(notion: Union[Notion, str], t: Optional[int]) -> Tuple[Notion, int]:
    """Parse a notion name and check that parametric notions get a t."""
    notion = Notion(notion)
    if notion.parametric:
        if t is None:
            raise ArgumentError(f"notion {notion.value} needs a parameter t")
        if t < 1:
            raise ArgumentError(f"t must be at least 1, got {t}")
        return notion, t
    return notion, 1


def validate(hypergraph: Hypergraph, colouring: Union[VertexColouring, Sequence[int]],
             notion: Union[Notion, str], t: Optional[int] = None) -> Verdict:
    """Return the first hyperedge (canonical order) violating `notion`, if any."""
    notion, t = resolve_notion(notion, t)
    colours = colouring.colours if isinstance(colouring, VertexColouring) else tuple(colouring)
    if len(colours) < hypergraph.n:
        raise ArgumentError(f"colouring covers {len(colours)} of {hypergraph.n} vertices")
    for h in hypergraph.hyperedges:
        if not hyperedge_satisfies([colours[v] for v in h], notion, t):
            logger.debug(f"{notion.value} violated on {h}")
            return Verdict(valid=False, counterexample=h, detail=f"{notion.value} fails on {list(h)}")
    return Verdict(valid=True)


def has_unique_subset(hyperedge: Sequence[int], colouring: SubsetColouring) -> bool:
    """Whether some t-subset of the hyperedge has a token no other t-subset shares."""
    counts = Counter(colouring.assignment[s] for s in combinations(hyperedge, colouring.t))
    return 1 in counts.values()


def validate_subset_cf(hypergraph: Hypergraph, colouring: SubsetColouring) -> Verdict:
    """Every hyperedge with more than t vertices needs a uniquely coloured t-subset."""
    for h in hypergraph.hyperedges:
        if len(h) > colouring.t and not has_unique_subset(h, colouring):
            logger.debug(f"no uniquely coloured {colouring.t}-subset in {h}")
            return Verdict(valid=False, counterexample=h,
                           detail=f"no uniquely coloured {colouring.t}-subset in {list(h)}")
    return Verdict(valid=True)
