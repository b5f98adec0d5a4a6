import csv
from itertools import product
from math import ceil, log2
from pathlib import Path
from statistics import median

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from pydantic import ValidationError

from cfcolour.colouring import (DUMMY_TOKEN, claim_colourcount_check, degeneracy, degeneracy_colouring,
                                greedy_colourful, interval_um, interval_union_pairs, iteration_bound,
                                meta_colour, meta_colour_traced, proper_colour_bound, q_code, rect_subset_cf,
                                rect_subset_cf_traced, subset_cf_from_t_strong, subset_cf_from_t_um,
                                t_um_colouring, union_pairs_colouring)
from cfcolour.exceptions import ArgumentError, ContractViolationError
from cfcolour.geometry import (disc_hypergraph, interval_hypergraph, random_point_set, rectangle_hypergraph)
from cfcolour.hypergraph import union_hypergraph, validate, validate_subset_cf
from cfcolour.models import (Graph, Hypergraph, Location, Notion, OrderBit, PeelStep, PointSet, QCode,
                             VertexColouring)


def parity(sub: Hypergraph):
    return [1 + v % 2 for v in range(sub.n)]


@st.composite
def coloured_hypergraphs(draw, max_n=6, max_colour=5):
    n = draw(st.integers(1, max_n))
    edges = draw(st.lists(st.sets(st.integers(0, n - 1), min_size=1), max_size=6))
    colours = draw(st.lists(st.integers(1, max_colour), min_size=n, max_size=n))
    return Hypergraph(n=n, hyperedges=edges), VertexColouring(colours=tuple(colours))


# --- graph colouring ---

@pytest.mark.property_based
@given(st.integers(1, 12).flatmap(lambda n: st.tuples(
    st.just(n), st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda e: e[0] != e[1])))))
@settings(max_examples=100)
def test_degeneracy_colouring_is_proper(instance):
    n, edges = instance
    graph = Graph(n=n, edges=edges)
    colouring = degeneracy_colouring(graph)
    assert all(colouring[u] != colouring[v] for u, v in graph.edges)
    assert colouring.colours_used <= degeneracy(graph) + 1


def test_degeneracy_of_a_clique():
    clique = Graph(n=5, edges=list(nx.complete_graph(5).edges))
    assert degeneracy(clique) == 4
    assert degeneracy_colouring(clique).colours_used == 5


# --- meta-algorithm ---

def test_meta_colour_without_hyperedges():
    colouring, trace = meta_colour_traced(Hypergraph(n=4), lambda sub: [1] * sub.n)
    assert colouring.colours == (1, 1, 1, 1)
    assert len(trace) == 1


def test_meta_colour_all_distinct_aux_removes_one_vertex_per_iteration():
    colouring, trace = meta_colour_traced(interval_hypergraph(4), lambda sub: list(range(1, sub.n + 1)))
    assert colouring.colours == (1, 2, 3, 4)
    assert [step.removed for step in trace] == [(0,), (1,), (2,), (3,)]


def test_meta_colour_with_proper_aux_is_um(intervals7):
    assert validate(intervals7, meta_colour(intervals7, parity), Notion.UM)


def test_meta_colour_rejects_partial_aux(intervals7):
    with pytest.raises(ContractViolationError):
        meta_colour(intervals7, lambda sub: [1])


@pytest.mark.parametrize("n", [1, 5, 8, 33])
def test_meta_colour_respects_iteration_bound(n):
    colouring = meta_colour(interval_hypergraph(n), parity)
    assert colouring.max_colour <= iteration_bound(n, lambda u: 2)


def test_iteration_bound_halving():
    assert iteration_bound(8, lambda u: 2) == 4
    assert iteration_bound(1, lambda u: 3) == 1


@pytest.mark.property_based
@given(coloured_hypergraphs())
@settings(max_examples=100, deadline=None)
def test_meta_colour_with_proper_aux_is_um_everywhere(instance):
    hypergraph, _ = instance

    def proper(sub):
        pairs = Graph(n=sub.n, edges=[(u, v) for h in sub.hyperedges for u in h for v in h if u < v])
        return degeneracy_colouring(pairs)

    assert validate(hypergraph, meta_colour(hypergraph, proper), Notion.UM)


# --- vertex colourings ---

def test_greedy_colourful_without_pairs():
    assert greedy_colourful(Hypergraph(n=4, hyperedges=[[0], [2]]), 1).colours_used == 1


def test_greedy_colourful_repairs_hyperedges_without_small_subedges(triangle):
    colouring = greedy_colourful(triangle, 1)
    assert colouring.colours_used == 2
    assert validate(triangle, colouring, Notion.COLOURFUL, 2)


def test_greedy_colourful_on_five_intervals():
    colours = greedy_colourful(interval_hypergraph(5), 1).colours
    assert len(set(colours)) == 2
    assert all(colours[v] != colours[v + 1] for v in range(4))


def test_greedy_colourful_nine_intervals():
    hypergraph = interval_hypergraph(9)
    colouring = greedy_colourful(hypergraph, 2)
    assert validate(hypergraph, colouring, Notion.COLOURFUL, 3)
    assert colouring.colours_used <= 17


@pytest.mark.property_based
@given(coloured_hypergraphs(), st.integers(1, 3))
@settings(max_examples=150)
def test_greedy_colourful_is_colourful(instance, t):
    hypergraph, _ = instance
    assert validate(hypergraph, greedy_colourful(hypergraph, t), Notion.COLOURFUL, t + 1)


def test_t_um_on_intervals(intervals7):
    assert validate(intervals7, t_um_colouring(intervals7, 1), Notion.UM)


def test_t_um_on_discs():
    hypergraph = disc_hypergraph(random_point_set(10, 7))
    assert validate(hypergraph, t_um_colouring(hypergraph, 2), Notion.T_UM, 2)


@pytest.mark.parametrize("t", [1, 2, 3])
def test_t_um_on_a_single_full_hyperedge(t):
    hypergraph = Hypergraph(n=4, hyperedges=[[0, 1, 2, 3]])
    assert validate(hypergraph, t_um_colouring(hypergraph, t), Notion.T_UM, t)


@pytest.mark.property_based
@given(coloured_hypergraphs(), st.integers(1, 3))
@settings(max_examples=100, deadline=None)
def test_t_um_colouring_is_t_um(instance, t):
    hypergraph, _ = instance
    colouring = t_um_colouring(hypergraph, t)
    assert validate(hypergraph, colouring, Notion.T_UM, t)
    assert validate(hypergraph, colouring, Notion.STRONG_CF, t)


def test_interval_um():
    assert interval_um(7).colours == (1, 2, 1, 3, 1, 2, 1)
    assert interval_um(1).colours == (1,)
    assert interval_um(3).colours == (1, 2, 1)


@pytest.mark.parametrize("n", [2, 6, 15, 40])
def test_interval_um_is_um(n):
    assert validate(interval_hypergraph(n), interval_um(n), Notion.UM)


# --- subset transformations ---

def test_sum_tokens_on_triangle(triangle):
    sigma = subset_cf_from_t_um(VertexColouring(colours=(1, 2, 3)), 2, 3)
    assert sigma.assignment == {(0, 1): 3, (0, 2): 4, (1, 2): 5}
    assert validate_subset_cf(triangle, sigma)


def test_sum_tokens_on_hyperedge_free_hypergraph():
    sigma = subset_cf_from_t_um(VertexColouring(colours=(2, 2, 2, 2)), 2, 4)
    assert sigma.tokens_used == 1
    assert validate_subset_cf(Hypergraph(n=4), sigma)


def test_sum_tokens_on_fifteen_intervals():
    hypergraph = interval_hypergraph(15)
    psi = t_um_colouring(hypergraph, 2)
    sigma = subset_cf_from_t_um(psi, 2, 15)
    assert validate_subset_cf(hypergraph, sigma)
    assert sigma.tokens_used <= 2 * psi.max_colour


@pytest.mark.property_based
@given(coloured_hypergraphs(), st.integers(1, 3))
@settings(max_examples=1000, deadline=None)
def test_sum_tokens_from_any_t_um_colouring(instance, t):
    hypergraph, psi = instance
    if t > hypergraph.n or not validate(hypergraph, psi, Notion.T_UM, t):
        return
    sigma = subset_cf_from_t_um(psi, t, hypergraph.n)
    assert validate_subset_cf(hypergraph, sigma)
    assert sigma.tokens_used <= t * psi.max_colour


def test_tuple_tokens_on_triangle(triangle):
    c = VertexColouring(colours=(1, 2, 1))
    sigma = subset_cf_from_t_strong(c, 2, 3)
    assert sigma.assignment == {(0, 1): (1, 2), (0, 2): (1, 1), (1, 2): (2, 1)}
    assert not validate(triangle, c, Notion.STRONG_CF, 2)


def test_tuple_tokens_of_distinct_colours_are_distinct():
    sigma = subset_cf_from_t_strong(VertexColouring(colours=(1, 2, 3, 4, 5)), 3, 5)
    assert sigma.tokens_used == 10


def test_tuple_tokens_on_ten_intervals():
    hypergraph = interval_hypergraph(10)
    sigma = subset_cf_from_t_strong(t_um_colouring(hypergraph, 2), 2, 10)
    assert validate_subset_cf(hypergraph, sigma)


@pytest.mark.property_based
@given(coloured_hypergraphs(), st.integers(1, 3))
@settings(max_examples=1000, deadline=None)
def test_tuple_tokens_from_any_t_strong_colouring(instance, t):
    hypergraph, c = instance
    if t > hypergraph.n or not validate(hypergraph, c, Notion.STRONG_CF, t):
        return
    sigma = subset_cf_from_t_strong(c, t, hypergraph.n)
    assert validate_subset_cf(hypergraph, sigma)
    assert sigma.tokens_used <= c.colours_used ** t


# --- union hypergraphs ---

def test_union_pairs_on_three_intervals():
    hypergraph = interval_hypergraph(3)
    sigma = union_pairs_colouring(hypergraph, VertexColouring(colours=(1, 2, 3)))
    assert sigma.assignment == {(0, 1): (3, 1), (0, 2): (4, 1), (1, 2): (5, 1)}
    assert validate_subset_cf(union_hypergraph(hypergraph), sigma)


def test_union_pairs_flag_separates_equal_colours():
    sigma = union_pairs_colouring(Hypergraph(n=3), VertexColouring(colours=(2, 2, 1)))
    assert sigma[(0, 1)] == (4, 0)
    assert sigma[(0, 2)] != sigma[(0, 1)]


@pytest.mark.parametrize("n", [6, 15])
def test_union_pairs_on_intervals(n):
    hypergraph = interval_hypergraph(n)
    sigma = union_pairs_colouring(hypergraph, t_um_colouring(hypergraph, 2))
    assert validate_subset_cf(union_hypergraph(hypergraph), sigma)


def test_interval_union_tokens():
    sigma = interval_union_pairs(7)
    assert sigma[(3, 4)] == ("adjacent", 3, 1)
    assert sigma[(1, 5)] == ("apart", 4, 0)
    assert interval_union_pairs(3).tokens_used <= 8


def test_interval_union_needs_two_points():
    with pytest.raises(ArgumentError):
        interval_union_pairs(1)


@pytest.mark.parametrize("n", range(2, 17))
def test_interval_union_is_valid(n):
    assert validate_subset_cf(union_hypergraph(interval_hypergraph(n)), interval_union_pairs(n))


@pytest.mark.parametrize("n", list(range(3, 65)) + [127, 255])
def test_interval_union_token_bound(n):
    assert interval_union_pairs(n).tokens_used <= 4 * ceil(log2(n + 1))


@pytest.mark.slow
@pytest.mark.parametrize("n", [511, 1023])
def test_interval_union_token_bound_large(n):
    assert interval_union_pairs(n).tokens_used <= 4 * ceil(log2(n + 1))


# --- rectangles ---

def test_q_code_unique_minimum():
    points = PointSet(points=[(1, 1), (2, 3), (3, 2)])
    c = VertexColouring(colours=(1, 2, 1))
    assert q_code(points, c, (0, 1)) == QCode(a=1, b=1, c=Location.BOTTOM_LEFT, d=OrderBit.NOT_APPLICABLE)
    assert q_code(points, c, (1, 2)) == QCode(a=1, b=1, c=Location.BOTTOM_RIGHT, d=OrderBit.NOT_APPLICABLE)


def test_q_code_order_bit(diagonal3):
    c = VertexColouring(colours=(2, 1, 1))
    assert q_code(diagonal3, c, (0, 2)) == QCode(a=1, b=2, c=Location.TOP_RIGHT, d=OrderBit.RIGHT_OF)


def test_q_code_repeated_minimum(diagonal3):
    c = VertexColouring(colours=(1, 1, 1))
    code = q_code(diagonal3, c, (0, 2))
    assert (code.a, code.b, code.c, code.d) == (2, 3, Location.NOT_APPLICABLE, OrderBit.NOT_APPLICABLE)


def test_q_code_rejects_inconsistent_fields():
    with pytest.raises(ValueError):
        QCode(a=2, b=2, c=Location.LEFT, d=OrderBit.NOT_APPLICABLE)


def test_rect_subset_rejects_t_one(seeded_points):
    with pytest.raises(ArgumentError):
        rect_subset_cf(seeded_points, 1)


def test_rect_subset_on_t_plus_one_points():
    points = random_point_set(4, 0)
    assert validate_subset_cf(rectangle_hypergraph(points), rect_subset_cf(points, 3))


def test_rect_subset_on_random_points(seeded_points):
    result = rect_subset_cf_traced(seeded_points, 2)
    assert validate_subset_cf(rectangle_hypergraph(seeded_points), result.tokens)
    assert result.graph_colouring.colours_used <= proper_colour_bound(seeded_points.n, 2)


@pytest.mark.slow
@pytest.mark.parametrize("n,t,seed", [(10, 2, 4), (10, 3, 5), (12, 2, 6), (12, 3, 7)])
def test_rect_subset_on_larger_instances(n, t, seed):
    points = random_point_set(n, seed)
    result = rect_subset_cf_traced(points, t)
    assert validate_subset_cf(rectangle_hypergraph(points), result.tokens)
    assert result.graph.edge_count <= 40 * t * n * log2(n)
    assert result.graph_colouring.colours_used <= proper_colour_bound(n, t)


GROWTH_FIXTURE = Path(__file__).parent / "fixtures" / "rect_growth.csv"


def qcode_space() -> int:
    count = 0
    for a, b, c, d in product((1, 2), (1, 2, 3), Location, OrderBit):
        try:
            QCode(a=a, b=b, c=c, d=d)
        except ValidationError:
            continue
        count += 1
    return count


def test_qcode_space_size():
    assert qcode_space() == 39


@pytest.mark.slow
def test_rect_subset_token_growth_matches_recorded_medians():
    with open(GROWTH_FIXTURE, newline="") as handle:
        recorded = {int(row["n"]): int(row["median_tokens"]) for row in csv.DictReader(handle)}
    medians = {}
    for n in sorted(recorded):
        counts = []
        for seed in range(5):
            result = rect_subset_cf_traced(random_point_set(n, seed), 2)
            # a token is a colour sum over the pair plus a QCode, or the dummy
            assert result.tokens.tokens_used <= (2 * result.vertex_colouring.max_colour - 1) * qcode_space() + 1
            counts.append(result.tokens.tokens_used)
        medians[n] = median(counts)
    assert medians == recorded

    sizes = sorted(medians)
    factors = [medians[big] / medians[small] for small, big in zip(sizes, sizes[1:])]
    assert factors == sorted(factors, reverse=True)
    # small n still fill the sum x QCode product, only the last doubling is in the polylog regime
    assert factors[-1] <= (log2(2 * sizes[-2]) / log2(sizes[-2])) ** 2 + 0.5


def test_rect_subset_dummy_token_marks_triple_colours(seeded_points):
    result = rect_subset_cf_traced(seeded_points, 3)
    c = result.vertex_colouring
    for subset, token in result.tokens.assignment.items():
        repeated = max(sum(1 for v in subset if c[v] == c[u]) for u in subset) >= 3
        assert (token == DUMMY_TOKEN) == repeated


def test_rect_subset_trace_satisfies_colour_count_claim(seeded_points):
    for t in (2, 3):
        result = rect_subset_cf_traced(seeded_points, t)
        assert claim_colourcount_check(seeded_points, t, result.trace)


def test_colour_count_claim_flags_monochromatic_aux(seeded_points):
    n = seeded_points.n
    trace = [PeelStep(iteration=1, survivors=tuple(range(n)), aux=(1,) * n, removed=tuple(range(n)))]
    verdict = claim_colourcount_check(seeded_points, 2, trace)
    assert not verdict
    assert len(verdict.counterexample) >= 3


# --- validity sweep at larger sizes ---

@pytest.mark.slow
@pytest.mark.parametrize("n, t", [(16, 1), (16, 3), (64, 2), (64, 3), (255, 1), (255, 2)])
def test_sweep_intervals_t_um(n, t):
    hypergraph = interval_hypergraph(n)
    assert validate(hypergraph, t_um_colouring(hypergraph, t), Notion.T_UM, t)
    assert validate(hypergraph, interval_um(n), Notion.UM)


@pytest.mark.slow
@pytest.mark.parametrize("n", [16, 32, 64])
def test_sweep_intervals_subset_cf(n):
    hypergraph = interval_hypergraph(n)
    psi = t_um_colouring(hypergraph, 2)
    assert validate_subset_cf(hypergraph, subset_cf_from_t_um(psi, 2, n))


@pytest.mark.slow
@pytest.mark.parametrize("n", [12, 16])
def test_sweep_interval_unions(n):
    assert validate_subset_cf(union_hypergraph(interval_hypergraph(n)), interval_union_pairs(n))


@pytest.mark.slow
@pytest.mark.parametrize("n, t, seed", [(16, 2, 11), (24, 2, 12), (32, 2, 13), (16, 3, 14)])
def test_sweep_rectangles(n, t, seed):
    points = random_point_set(n, seed)
    assert validate_subset_cf(rectangle_hypergraph(points), rect_subset_cf(points, t))


@pytest.mark.slow
@pytest.mark.parametrize("n, seed", [(12, 21), (14, 22), (16, 23)])
def test_sweep_discs(n, seed):
    hypergraph = disc_hypergraph(random_point_set(n, seed))
    psi = t_um_colouring(hypergraph, 2)
    assert validate(hypergraph, psi, Notion.T_UM, 2)
    assert validate_subset_cf(hypergraph, subset_cf_from_t_um(psi, 2, n))
