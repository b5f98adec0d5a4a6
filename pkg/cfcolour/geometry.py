"""Geometric hypergraph providers and the ratio-class rectangle machinery.

All arithmetic is exact. Points live on the n x n rank grid; rectangles are
closed with rational boundaries. A rectangle of width w covers a run of
integer columns of length L (last minus first) exactly when L <= w < L + 2,
which is how placements of fixed-ratio rectangles are enumerated below.
"""
from bisect import insort
from fractions import Fraction
from itertools import combinations
from math import e, floor
from typing import Iterable, List, Optional, Sequence, Set, Tuple
import logging

import numpy as np

from cfcolour.config import settings
from cfcolour.exceptions import ArgumentError, InputError
from cfcolour.hypergraph import count_pairs_in_small_hyperedges
from cfcolour.models import Disc, Graph, Hypergraph, Location, PointSet, Rect

logger = logging.getLogger(__name__)

Point = Tuple[int, int]


def rank_normalize(raw: Sequence[Tuple[float, float]]) -> PointSet:
    """Replace coordinates by 1-based ranks; ties broken by the other coordinate, then input index."""
    if len(set(map(tuple, raw))) != len(raw):
        raise InputError("point list contains duplicate points")
    n = len(raw)
    by_x = sorted(range(n), key=lambda i: (raw[i][0], raw[i][1], i))
    by_y = sorted(range(n), key=lambda i: (raw[i][1], raw[i][0], i))
    xs, ys = [0] * n, [0] * n
    for rank, i in enumerate(by_x, start=1):
        xs[i] = rank
    for rank, i in enumerate(by_y, start=1):
        ys[i] = rank
    return PointSet(points=tuple(zip(xs, ys)))


def random_point_set(n: int, seed: int) -> PointSet:
    """Seeded random points, rank-normalized."""
    rng = np.random.default_rng(seed)
    return rank_normalize([tuple(p) for p in rng.random((n, 2)).tolist()])


def interval_hypergraph(n: int) -> Hypergraph:
    """Every run of consecutive points is a hyperedge."""
    if n < 1:
        raise ArgumentError(f"interval hypergraph needs n >= 1, got {n}")
    runs = [tuple(range(a, b + 1)) for a in range(n) for b in range(a, n)]
    return Hypergraph.from_canonical(n, sorted(runs))


def rectangle_hypergraph(points: PointSet) -> Hypergraph:
    """All distinct nonempty P ∩ r over axis-parallel rectangles r."""
    n = points.n
    column = {x: v for v, (x, _) in enumerate(points.points)}
    edges = set()
    for left in range(1, n + 1):
        strip: List[Tuple[int, int]] = []
        for right in range(left, n + 1):
            v = column[right]
            insort(strip, (points.y(v), v))
            members = [u for _, u in strip]
            for lo in range(len(members)):
                for hi in range(lo + 1, len(members) + 1):
                    edges.add(tuple(sorted(members[lo:hi])))
    logger.debug(f"rectangle hypergraph on {n} points has {len(edges)} hyperedges")
    return Hypergraph.from_canonical(n, sorted(edges))


# --- discs ---

def _orient(a: Point, b: Point, c: Point) -> int:
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _incircle(a: Point, b: Point, c: Point, d: Point) -> int:
    """Positive iff d is strictly inside the circle through a, b, c (a, b, c counter-clockwise)."""
    adx, ady = a[0] - d[0], a[1] - d[1]
    bdx, bdy = b[0] - d[0], b[1] - d[1]
    cdx, cdy = c[0] - d[0], c[1] - d[1]
    return ((adx * adx + ady * ady) * (bdx * cdy - cdx * bdy)
            - (bdx * bdx + bdy * bdy) * (adx * cdy - cdx * ady)
            + (cdx * cdx + cdy * cdy) * (adx * bdy - bdx * ady))


def _general_position(coords: Sequence[Point]) -> bool:
    for a, b, c in combinations(coords, 3):
        if _orient(a, b, c) == 0:
            return False
    for a, b, c, d in combinations(coords, 4):
        if _orient(a, b, c) < 0:
            b, c = c, b
        if _incircle(a, b, c, d) == 0:
            return False
    return True


def perturbed_coordinates(points: PointSet) -> List[Point]:
    """Scaled integer coordinates with small seeded offsets, in general position.

    The scale dominates every offset term of the orientation and in-circle
    determinants, so predicates that are nonzero on the grid keep their sign.
    """
    offset = 1000
    scale = 1000 * offset * (points.n + 1) ** 3
    if len(points.points) < 3:
        return [(x * scale, y * scale) for x, y in points.points]
    for attempt in range(settings.disc_perturbation_attempts):
        rng = np.random.default_rng(attempt)
        shifts = rng.integers(-offset, offset + 1, size=(points.n, 2)).tolist()
        coords = [(x * scale + dx, y * scale + dy) for (x, y), (dx, dy) in zip(points.points, shifts)]
        if _general_position(coords):
            return coords
        logger.debug(f"perturbation attempt {attempt} left a degenerate configuration")
    raise InputError("could not perturb the point set into general position")


def disc_hypergraph(points: PointSet) -> Hypergraph:
    """All distinct nonempty P ∩ d over discs d, via canonical discs.

    Every disc range is realised by a disc whose boundary passes through two or
    three points of P; each such disc contributes its interior plus any subset
    of its boundary points.
    """
    coords = perturbed_coordinates(points)
    n = points.n
    edges: Set[Tuple[int, ...]] = {(v,) for v in range(n)}

    def add_with_boundary(interior: List[int], boundary: Tuple[int, ...]) -> None:
        for size in range(len(boundary) + 1):
            for chosen in combinations(boundary, size):
                members = tuple(sorted(interior + list(chosen)))
                if members:
                    edges.add(members)

    for p, q in combinations(range(n), 2):
        (px, py), (qx, qy) = coords[p], coords[q]
        interior = [s for s in range(n) if s not in (p, q)
                    and (coords[s][0] - px) * (coords[s][0] - qx) + (coords[s][1] - py) * (coords[s][1] - qy) < 0]
        add_with_boundary(interior, (p, q))
    for p, q, r in combinations(range(n), 3):
        a, b, c = coords[p], coords[q], coords[r]
        if _orient(a, b, c) < 0:
            b, c = c, b
        interior = [s for s in range(n) if s not in (p, q, r) and _incircle(a, b, c, coords[s]) > 0]
        add_with_boundary(interior, (p, q, r))
    logger.debug(f"disc hypergraph on {n} points has {len(edges)} hyperedges")
    return Hypergraph.from_canonical(n, sorted(edges))


def points_in_disc(points: PointSet, disc: Disc) -> Tuple[int, ...]:
    """Vertices inside or on the disc."""
    return tuple(v for v, (x, y) in enumerate(points.points) if disc.contains(x, y))


# --- ratio classes ---

def ratio_classes(n: int) -> List[int]:
    """I = {-ceil(log n), ..., ceil(log n)}."""
    bound = max(n - 1, 0).bit_length()
    return list(range(-bound, bound + 1))


def _check_ratio_class(n: int, i: int) -> None:
    bound = max(n - 1, 0).bit_length()
    if abs(i) > bound:
        raise ArgumentError(f"ratio class {i} outside -{bound}..{bound}")


def prefix_counts(points: PointSet, members: Optional[Iterable[int]] = None) -> np.ndarray:
    """2-D prefix sums of point occupancy: entry [x, y] counts members with x' <= x, y' <= y."""
    n = points.n
    occupied = np.zeros((n + 1, n + 1), dtype=np.int64)
    for v in (range(n) if members is None else members):
        x, y = points.points[v]
        occupied[x, y] = 1
    return occupied.cumsum(axis=0).cumsum(axis=1)


def _windows(extent: Fraction, lo: int, hi: int, n: int) -> np.ndarray:
    """Integer windows [start, end] (clamped to 1..n) covered by a placement of length `extent` containing lo..hi."""
    windows = set()
    for length in (floor(extent) - 1, floor(extent)):
        if length < hi - lo:
            continue
        for start in range(hi - length, lo + 1):
            windows.add((max(start, 1), min(start + length, n)))
    return np.array(sorted(windows), dtype=np.int64)


def _min_ratio_count(prefix: np.ndarray, n: int, a: Point, b: Point, i: int) -> int:
    x_lo, x_hi = sorted((a[0], b[0]))
    y_lo, y_hi = sorted((a[1], b[1]))
    ratio = Fraction(2) ** i
    # smallest ratio-2^i rectangle containing both points; larger ones contain a copy of it
    width = max(Fraction(x_hi - x_lo), ratio * (y_hi - y_lo))
    height = width / ratio
    xw = _windows(width, x_lo, x_hi, n)
    yw = _windows(height, y_lo, y_hi, n)
    x1, x2 = xw[:, 0][:, None] - 1, xw[:, 1][:, None]
    y1, y2 = yw[:, 0][None, :] - 1, yw[:, 1][None, :]
    counts = prefix[x2, y2] - prefix[x1, y2] - prefix[x2, y1] + prefix[x1, y1]
    return int(counts.min())


def min_points_ratio_rect(points: PointSet, p: int, q: int, i: int,
                          members: Optional[Iterable[int]] = None) -> int:
    """min |d ∩ P| over rectangles d of width-to-height ratio 2**i containing p and q."""
    if p == q:
        raise ArgumentError("min_points_ratio_rect needs two distinct vertices")
    _check_ratio_class(points.n, i)
    prefix = prefix_counts(points, members)
    return _min_ratio_count(prefix, points.n, points.points[p], points.points[q], i)


def ratio_graph(points: PointSet, t: int, members: Optional[Iterable[int]] = None,
                known_edges: Iterable[Tuple[int, int]] = ()) -> Set[Tuple[int, int]]:
    """Pairs {p, q} of `members` lying in some ratio-class rectangle with at most t+1 members.

    Pairs in `known_edges` are taken as edges without recomputation; this is
    sound when they were computed on a superset of `members`.
    """
    members = list(range(points.n)) if members is None else sorted(members)
    classes = ratio_classes(points.n)
    prefix = prefix_counts(points, members)
    edges = set(known_edges)
    for p, q in combinations(members, 2):
        if (p, q) in edges:
            continue
        a, b = points.points[p], points.points[q]
        if any(_min_ratio_count(prefix, points.n, a, b, i) <= t + 1 for i in classes):
            edges.add((p, q))
    return edges


def build_G(points: PointSet, t: int) -> Graph:
    """Ratio graph of the whole point set."""
    if t < 1:
        raise ArgumentError(f"t must be at least 1, got {t}")
    graph = Graph(n=points.n, edges=sorted(ratio_graph(points, t)))
    logger.info(f"ratio graph on {points.n} points, t={t}: {graph.edge_count} edges")
    return graph


def build_Gt(hypergraph: Hypergraph, k: int) -> Graph:
    """Pairs sharing a hyperedge of size at most k."""
    if k < 2:
        raise ArgumentError(f"k must be at least 2, got {k}")
    pairs = set()
    for h in hypergraph.hyperedges:
        if len(h) <= k:
            pairs.update(combinations(h, 2))
    return Graph(n=hypergraph.n, edges=sorted(pairs))


# --- bounding rectangles and covers ---

def min_bounding_rect(points: PointSet, subset: Iterable[int]) -> Rect:
    """Smallest axis-parallel rectangle holding the subset."""
    subset = list(subset)
    if not subset:
        raise ArgumentError("bounding rectangle of an empty set")
    xs = [points.x(v) for v in subset]
    ys = [points.y(v) for v in subset]
    return Rect(xlo=min(xs), xhi=max(xs), ylo=min(ys), yhi=max(ys))


def location_class(rect: Rect, x, y) -> Location:
    """Interior, one of four open edges, or one of four corners; degenerate cases lean bottom-left."""
    left, right = x == rect.xlo, x == rect.xhi
    bottom, top = y == rect.ylo, y == rect.yhi
    if (left or right) and (bottom or top):
        if left:
            return Location.BOTTOM_LEFT if bottom else Location.TOP_LEFT
        return Location.BOTTOM_RIGHT if bottom else Location.TOP_RIGHT
    if left:
        return Location.LEFT
    if right:
        return Location.RIGHT
    if bottom:
        return Location.BOTTOM
    if top:
        return Location.TOP
    return Location.INTERIOR


def points_in_rect(points: PointSet, rect: Rect, members: Optional[Iterable[int]] = None) -> List[int]:
    """Vertices inside or on the rectangle."""
    candidates = range(points.n) if members is None else members
    return [v for v in candidates if rect.contains(*points.points[v])]


def _floor_log2(value: Fraction) -> int:
    k = value.numerator.bit_length() - value.denominator.bit_length()
    while Fraction(2) ** k > value:
        k -= 1
    while Fraction(2) ** (k + 1) <= value:
        k += 1
    return k


def cover_by_ratio_pair(rect: Rect) -> Tuple[Rect, Rect]:
    """Two rectangles of one ratio class, both inside `rect`, whose union is `rect`."""
    w, h = rect.width, rect.height
    if w <= 0 or h <= 0:
        raise ArgumentError("cannot cover a degenerate rectangle")
    if w >= h:
        side = Fraction(2) ** _floor_log2(w / h) * h
        return (Rect(xlo=rect.xlo, xhi=rect.xlo + side, ylo=rect.ylo, yhi=rect.yhi),
                Rect(xlo=rect.xhi - side, xhi=rect.xhi, ylo=rect.ylo, yhi=rect.yhi))
    side = Fraction(2) ** _floor_log2(h / w) * w
    return (Rect(xlo=rect.xlo, xhi=rect.xhi, ylo=rect.ylo, yhi=rect.ylo + side),
            Rect(xlo=rect.xlo, xhi=rect.xhi, ylo=rect.yhi - side, yhi=rect.yhi))


_ANCHORS = [(Fraction(0), Fraction(0)), (Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)),
            (Fraction(1), Fraction(1)), (Fraction(1, 3), Fraction(2, 7)), (Fraction(5, 11), Fraction(7, 13)),
            (Fraction(3, 17), Fraction(11, 19)), (Fraction(13, 23), Fraction(5, 29))]


def _entry_scale(offset: Fraction, below: Fraction, above: Fraction) -> Optional[Fraction]:
    if offset == 0:
        return Fraction(0)
    span = below if offset < 0 else above
    return abs(offset) / span if span > 0 else None


def shrink_within(points: PointSet, rect: Rect, k: int,
                  members: Optional[Iterable[int]] = None) -> Optional[Rect]:
    """A scaled copy of `rect` inside it cutting exactly k points, by shrinking towards an anchor."""
    inside = points_in_rect(points, rect, members)
    if k < 1 or k > len(inside):
        return None
    w, h = rect.width, rect.height
    for alpha, beta in _ANCHORS:
        ax, ay = rect.xlo + alpha * w, rect.ylo + beta * h
        entries = []
        for v in inside:
            ex = _entry_scale(points.x(v) - ax, alpha * w, (1 - alpha) * w)
            ey = _entry_scale(points.y(v) - ay, beta * h, (1 - beta) * h)
            if ex is not None and ey is not None:
                entries.append(max(ex, ey))
        entries.sort()
        if len(entries) < k or (k < len(entries) and entries[k - 1] == entries[k]):
            continue
        scale = entries[k - 1]
        if scale == 0:
            scale = entries[k] / 2 if k < len(entries) else Fraction(1)
        return Rect(xlo=ax - scale * alpha * w, xhi=ax + scale * (1 - alpha) * w,
                    ylo=ay - scale * beta * h, yhi=ay + scale * (1 - beta) * h)
    return None


# --- sparsity ---

def hld_parameter(hypergraph: Hypergraph, sample_budget: Optional[int] = None, seed: int = 0) -> Fraction:
    """Empirical lower estimate of the HLD constant: max |E(Del(H[V']))| / |V'| over candidate V'."""
    n = hypergraph.n
    if n == 0:
        return Fraction(0)
    budget = settings.hld_sample_budget if sample_budget is None else sample_budget
    masks = [sum(1 << v for v in h) for h in hypergraph.hyperedges]
    candidates = {(1 << n) - 1}
    for size in range(1, min(settings.hld_exhaustive_size, n) + 1):
        candidates.update(sum(1 << v for v in c) for c in combinations(range(n), size))
    rng = np.random.default_rng(seed)
    for _ in range(budget):
        chosen = rng.random(n) < rng.random()
        mask = sum(1 << v for v in range(n) if chosen[v])
        if mask:
            candidates.add(mask)
    best = Fraction(0)
    for subset in candidates:
        pairs = {h & subset for h in masks if bin(h & subset).count("1") == 2}
        best = max(best, Fraction(len(pairs), bin(subset).count("1")))
    return best


def small_pair_bound(hypergraph: Hypergraph, k: int, c) -> bool:
    """Whether the pairs in hyperedges of size <= k number at most c * n * e * k."""
    return count_pairs_in_small_hyperedges(hypergraph, k) <= c * hypergraph.n * e * k
