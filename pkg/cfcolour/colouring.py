from collections import Counter
from fractions import Fraction
from math import log2
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union
import logging

import networkx as nx

from cfcolour.exceptions import ArgumentError, ContractViolationError
from cfcolour.geometry import (build_G, build_Gt, location_class, min_bounding_rect, points_in_rect,
                               ratio_graph, rectangle_hypergraph)
from cfcolour.hypergraph import induced_subhypergraph
from cfcolour.models import (Graph, Hypergraph, Location, OrderBit, PeelStep, PointSet, QCode,
                             RectColouringResult, SubsetColouring, Verdict, VertexColouring)

logger = logging.getLogger(__name__)

DUMMY_TOKEN = "⊥"

AuxColouring = Callable[[Hypergraph], Union[VertexColouring, Sequence[int]]]


# --- graph colouring ---

def degeneracy_colouring(graph: Graph) -> VertexColouring:
    """Greedy proper colouring along a smallest-last (degeneracy) order."""
    if graph.n == 0:
        return VertexColouring(colours=())
    colouring = nx.greedy_color(graph.to_networkx(), strategy="smallest_last")
    return VertexColouring(colours=tuple(colouring[v] + 1 for v in range(graph.n)))


def degeneracy(graph: Graph) -> int:
    """Largest k such that the graph has a nonempty k-core."""
    if graph.n == 0:
        return 0
    return max(nx.core_number(graph.to_networkx()).values())


# --- meta-algorithm ---

def peel(vertices: Iterable[int], aux: Callable[[List[int]], Sequence[int]]) -> Tuple[Dict[int, int], List[PeelStep]]:
    """Repeatedly colour the survivors with `aux` and retire its largest colour class.

    Vertices retired in iteration i get colour i. Ties between classes go to
    the smallest aux colour.
    """
    remaining = sorted(vertices)
    colour: Dict[int, int] = {}
    steps: List[PeelStep] = []
    iteration = 1
    while remaining:
        aux_colours = list(aux(remaining))
        if len(aux_colours) != len(remaining):
            raise ContractViolationError(
                f"aux coloured {len(aux_colours)} of {len(remaining)} vertices in iteration {iteration}")
        classes = Counter(aux_colours)
        chosen = min(classes, key=lambda c: (-classes[c], c))
        removed = tuple(v for v, c in zip(remaining, aux_colours) if c == chosen)
        steps.append(PeelStep(iteration=iteration, survivors=tuple(remaining),
                              aux=tuple(aux_colours), removed=removed))
        logger.debug(f"iteration {iteration}: {len(remaining)} survivors, "
                     f"{len(classes)} aux colours, retiring {len(removed)}")
        for v in removed:
            colour[v] = iteration
        remaining = [v for v, c in zip(remaining, aux_colours) if c != chosen]
        iteration += 1
    return colour, steps


def meta_colour_traced(hypergraph: Hypergraph, aux: AuxColouring) -> Tuple[VertexColouring, List[PeelStep]]:
    """Meta-algorithm colouring along with its per-iteration trace."""
    def colour_survivors(survivors: List[int]) -> Sequence[int]:
        sub, _ = induced_subhypergraph(hypergraph, survivors)
        result = aux(sub)
        return result.colours if isinstance(result, VertexColouring) else result

    colour, steps = peel(range(hypergraph.n), colour_survivors)
    return VertexColouring(colours=tuple(colour[v] for v in range(hypergraph.n))), steps


def meta_colour(hypergraph: Hypergraph, aux: AuxColouring) -> VertexColouring:
    """Vertex colouring produced by peeling with `aux`."""
    return meta_colour_traced(hypergraph, aux)[0]


def iteration_bound(n: int, f: Callable[[Fraction], float]) -> int:
    """Smallest T with u_T < 1, where u_0 = n and u_{i+1} = u_i (1 - 1/f(u_i))."""
    u = Fraction(n)
    rounds = 0
    while u >= 1:
        u = u * (1 - 1 / Fraction(f(u)))
        rounds += 1
    return rounds


# --- vertex colourings ---

def greedy_colourful(hypergraph: Hypergraph, t: int) -> VertexColouring:
    """(t+1)-colourful colouring from a proper colouring of the graph of pairs
    sharing a hyperedge of size <= t+1.

    On families where every hyperedge with more than t+1 vertices contains one
    of exactly t+1 vertices (intervals, discs) the graph colouring already
    suffices. Elsewhere, hyperedges still short of min(|h|, t+1) colours get
    fresh colours on their repeated vertices.
    """
    if t < 1:
        raise ArgumentError(f"t must be at least 1, got {t}")
    if hypergraph.n == 0:
        return VertexColouring(colours=())
    colours = list(degeneracy_colouring(build_Gt(hypergraph, t + 1)).colours)
    fresh = max(colours)
    for h in hypergraph.hyperedges:
        if len(h) <= t + 1:
            continue
        counts = Counter(colours[v] for v in h)
        for v in h:
            if len(counts) >= t + 1:
                break
            if counts[colours[v]] > 1:
                counts[colours[v]] -= 1
                fresh += 1
                colours[v] = fresh
                counts[fresh] = 1
    return VertexColouring(colours=tuple(colours))


def t_um_colouring(hypergraph: Hypergraph, t: int) -> VertexColouring:
    """t-UM colouring from the meta-algorithm over greedy colourful colourings."""
    colouring = meta_colour(hypergraph, lambda sub: greedy_colourful(sub, t))
    logger.info(f"{t}-UM colouring of {hypergraph.n} vertices uses {colouring.colours_used} colours")
    return colouring


def interval_um(n: int) -> VertexColouring:
    """Midpoint recursion on 1..2^s-1: position p gets 1 + (trailing zeros of p)."""
    if n < 1:
        raise ArgumentError(f"n must be at least 1, got {n}")
    return VertexColouring(colours=tuple(((p & -p).bit_length()) for p in range(1, n + 1)))


# --- subset colourings ---

def subset_cf_from_t_um(psi: VertexColouring, t: int, n: int) -> SubsetColouring:
    """Token of S is the colour sum over S."""
    return SubsetColouring.from_function(n, t, lambda s: sum(psi[v] for v in s))


def subset_cf_from_t_strong(c: VertexColouring, t: int, n: int) -> SubsetColouring:
    """Token of S is the tuple of colours of S in vertex order."""
    return SubsetColouring.from_function(n, t, lambda s: tuple(c[v] for v in s))


def union_pairs_colouring(hypergraph: Hypergraph, psi: VertexColouring) -> SubsetColouring:
    """Pair colouring of the union hypergraph from a 2-UM colouring: (sum, 0 if equal else 1)."""
    return SubsetColouring.from_function(
        hypergraph.n, 2, lambda s: (psi[s[0]] + psi[s[1]], 0 if psi[s[0]] == psi[s[1]] else 1))


def interval_union_token(psi: VertexColouring, i: int, j: int) -> tuple:
    """Token of the pair {i, j} under the interval union colouring."""
    if j == i + 1:
        return ("adjacent", max(psi[i], psi[j]), 0 if psi[i] < psi[j] else 1)
    return ("apart", psi[i] + psi[j], 0)


def interval_union_pairs(n: int) -> SubsetColouring:
    """Pair colouring of the union hypergraph of n points on a line."""
    if n < 2:
        raise ArgumentError(f"n must be at least 2, got {n}")
    psi = interval_um(n)
    return SubsetColouring.from_function(n, 2, lambda s: interval_union_token(psi, s[0], s[1]))


# --- rectangles ---

def proper_colour_bound(n: int, t: int) -> float:
    """Colour budget 80 t log2(n) + 1 for the ratio graph."""
    return 80 * t * log2(n) + 1 if n > 1 else 1


def q_code(points: PointSet, c: VertexColouring, subset: Sequence[int]) -> QCode:
    """Shape code of a subset: minimum-colour multiplicities, location and order."""
    m = min(c[v] for v in subset)
    holders = [v for v in subset if c[v] == m]
    rect = min_bounding_rect(points, subset)
    in_rect = [v for v in points_in_rect(points, rect) if c[v] == m]
    a, b = len(holders), min(len(in_rect), 3)
    location, order = Location.NOT_APPLICABLE, OrderBit.NOT_APPLICABLE
    if a == 1:
        p = holders[0]
        location = location_class(rect, points.x(p), points.y(p))
        if b == 2:
            other = next(v for v in in_rect if v != p)
            order = OrderBit.LEFT_OF if points.x(p) < points.x(other) else OrderBit.RIGHT_OF
    return QCode(a=a, b=b, c=location, d=order)


def rect_subset_cf_traced(points: PointSet, t: int) -> RectColouringResult:
    """t-subset CF colouring of a point set for rectangles, with every intermediate result."""
    if t < 2:
        raise ArgumentError(f"rectangle t-subset colouring needs t >= 2, got {t}")
    n = points.n
    graph = build_G(points, t)
    proper = degeneracy_colouring(graph)
    if proper.colours_used > proper_colour_bound(n, t):
        logger.warning(f"ratio graph colouring uses {proper.colours_used} colours, "
                       f"above {proper_colour_bound(n, t):.1f}")

    previous = set(graph.edges)

    def aux(survivors: List[int]) -> Sequence[int]:
        nonlocal previous
        if len(survivors) == n:
            return proper.colours
        keep = set(survivors)
        seeded = {(p, q) for p, q in previous if p in keep and q in keep}
        previous = ratio_graph(points, t, survivors, seeded)
        index = {v: i for i, v in enumerate(survivors)}
        sub = Graph(n=len(survivors), edges=[(index[p], index[q]) for p, q in previous])
        return degeneracy_colouring(sub).colours

    colour, steps = peel(range(n), aux)
    c = VertexColouring(colours=tuple(colour[v] for v in range(n)))

    def token(subset: Tuple[int, ...]):
        if max(Counter(c[v] for v in subset).values()) >= 3:
            return DUMMY_TOKEN
        return (sum(c[v] for v in subset), q_code(points, c, subset))

    tokens = SubsetColouring.from_function(n, t, token)
    logger.info(f"rectangle {t}-subset colouring of {n} points: {c.colours_used} vertex colours, "
                f"{tokens.tokens_used} tokens")
    return RectColouringResult(tokens=tokens, vertex_colouring=c, graph=graph,
                               graph_colouring=proper, trace=steps)


def rect_subset_cf(points: PointSet, t: int) -> SubsetColouring:
    """t-subset CF colouring of a point set for rectangles."""
    return rect_subset_cf_traced(points, t).tokens


def claim_colourcount_check(points: PointSet, t: int, trace: Sequence[PeelStep],
                            hyperedges: Optional[Sequence[Tuple[int, ...]]] = None) -> Verdict:
    """Per iteration and rectangle range: aux colour multiplicities stay within the claimed caps.

    A range meeting the survivors in at most t+2 points may repeat a colour at
    most twice; one meeting them in t+k points (k >= 3) at most k times.
    """
    if hyperedges is None:
        hyperedges = rectangle_hypergraph(points).hyperedges
    for step in trace:
        aux_of = dict(zip(step.survivors, step.aux))
        for h in hyperedges:
            present = [aux_of[v] for v in h if v in aux_of]
            if not present:
                continue
            cap = 2 if len(present) <= t + 2 else len(present) - t
            worst = max(Counter(present).values())
            if worst > cap:
                return Verdict(valid=False, counterexample=h,
                               detail=f"iteration {step.iteration}: a colour occurs {worst} times, cap {cap}")
    return Verdict(valid=True)
