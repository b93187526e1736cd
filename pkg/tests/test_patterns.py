"""Tests for induced-pattern detection and class membership.

TEST INTEGRITY DIRECTIVE:
NEVER remove, disable, or work around a failing test without explicit user review and approval.
When a test fails: STOP, ANALYZE, DISCUSS with user, and WAIT for approval before modifying tests.
"""

from itertools import combinations, permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chibound.errors import PatternTooLargeError, PreconditionError
from chibound.generators import extremal, grotzsch, hvn
from chibound.graph import (
    Graph,
    complete_graph,
    complete_multipartite_graph,
    cycle_graph,
    disjoint_union,
    induced_subgraph,
    path_graph,
)
from chibound.patterns import (
    C5,
    HVN,
    P2_P4,
    P4,
    PATTERNS,
    Pattern,
    Witness,
    clique_pattern,
    find_induced,
    find_induced_vf2,
    get_pattern,
    is_class_member,
    is_p4_free,
    matching_p4_check,
    verify_witness,
)
from tests.strategies import class_members, graphs


def brute_force_contains(g: Graph, p: Pattern) -> bool:
    """Exhaustive scan over every ordered vertex tuple of the template size."""
    t = p.template
    for subset in combinations(range(g.n), t.n):
        for order in permutations(subset):
            if all(g.has_edge(order[i], order[j]) == t.has_edge(i, j) for i, j in combinations(range(t.n), 2)):
                return True
    return False


class TestCatalogue:
    """Tests for the pattern templates."""

    def test_hvn_shape(self):
        """Test that HVN has 5 vertices, 8 edges and degrees (4,4,3,3,2)."""
        t = HVN.template
        assert t.n == 5
        assert t.edge_count == 8
        assert sorted((t.degree(v) for v in t.vertices), reverse=True) == [4, 4, 3, 3, 2]

    def test_p2_p4_shape(self):
        """Test that P2∪P4 has six vertices and four edges."""
        assert P2_P4.template.n == 6
        assert P2_P4.template.edge_count == 4

    def test_catalogue_names(self):
        """Test that the catalogue holds the named patterns and cliques K1..K6."""
        for name in ("P2∪P4", "HVN", "P4", "P2∪P3", "diamond", "C4", "C5", "2K2", "K1", "K6"):
            assert name in PATTERNS

    def test_unknown_pattern(self):
        """Test that an unknown name raises PreconditionError."""
        with pytest.raises(PreconditionError):
            get_pattern("K7")

    def test_template_limit(self):
        """Test that templates above six vertices are refused."""
        with pytest.raises(PatternTooLargeError):
            find_induced(complete_graph(8), Pattern("K7", complete_graph(7)))


class TestFindInduced:
    """Tests for find_induced()."""

    def test_hvn_found_in_itself(self):
        """Test that K5 minus two edges at one vertex yields all five vertices."""
        witness = find_induced(hvn(), HVN)
        assert witness is not None
        assert sorted(witness.vertices) == [0, 1, 2, 3, 4]
        assert verify_witness(hvn(), HVN, witness)

    def test_p4_in_c5(self):
        """Test that C5 contains an induced P4, the lexicographically least one."""
        witness = find_induced(cycle_graph(5), P4)
        assert witness == Witness("P4", (0, 1, 2, 3))

    def test_grotzsch_has_no_hvn(self):
        """Test that the triangle-free Grötzsch graph contains no HVN."""
        assert find_induced(grotzsch(), HVN) is None

    def test_small_graph_is_free(self):
        """Test that graphs smaller than the template are free immediately."""
        assert find_induced(complete_graph(4), HVN) is None

    def test_clique_pattern(self):
        """Test that K4 is found in K5 and not in C5."""
        assert find_induced(complete_graph(5), clique_pattern(4)) is not None
        assert find_induced(cycle_graph(5), clique_pattern(3)) is None

    def test_p2_p4_in_disjoint_union(self):
        """Test that P2 ∪ P4 is found in itself."""
        g = disjoint_union(path_graph(2), path_graph(4))
        witness = find_induced(g, P2_P4)
        assert witness is not None
        assert verify_witness(g, P2_P4, witness)

    @settings(max_examples=60)
    @given(graphs(max_n=7), st.sampled_from(["P4", "P2∪P4", "HVN", "C5", "diamond", "2K2"]))
    def test_agrees_with_brute_force(self, g, name):
        """Test that detection agrees with an exhaustive scan on n <= 7."""
        p = get_pattern(name)
        witness = find_induced(g, p)
        assert (witness is not None) == brute_force_contains(g, p)
        if witness is not None:
            assert verify_witness(g, p, witness)

    @settings(max_examples=60)
    @given(graphs(max_n=8), st.sampled_from(["P4", "P2∪P4", "HVN", "C4"]))
    def test_agrees_with_vf2(self, g, name):
        """Test that the ordered matcher and networkx VF2 agree on presence."""
        p = get_pattern(name)
        assert (find_induced(g, p) is None) == (find_induced_vf2(g, p) is None)

    @given(graphs(max_n=8))
    def test_witness_is_lexicographically_least(self, g):
        """Test that no embedding of P4 sorts before the returned one."""
        witness = find_induced(g, P4)
        if witness is None:
            return
        for order in permutations(range(g.n), 4):
            if order >= witness.vertices:
                break
            assert not verify_witness(g, P4, Witness("P4", order))


class TestVerifyWitness:
    """Tests for verify_witness()."""

    def test_rejects_repeated_vertices(self):
        """Test that a witness with a repeated vertex fails."""
        assert not verify_witness(path_graph(4), P4, Witness("P4", (0, 1, 1, 2)))

    def test_rejects_wrong_adjacency(self):
        """Test that a non-induced path fails."""
        assert not verify_witness(cycle_graph(4), P4, Witness("P4", (0, 1, 2, 3)))


class TestClassMembership:
    """Tests for is_class_member()."""

    def test_c5_is_member(self):
        """Test that C5 is (P2∪P4, HVN)-free."""
        assert is_class_member(cycle_graph(5)) == (True, None)

    def test_hvn_is_not_member(self):
        """Test that HVN itself is rejected with an HVN witness."""
        member, witness = is_class_member(hvn())
        assert not member
        assert witness.pattern == "HVN"

    def test_p2_p4_is_not_member(self):
        """Test that P2 ∪ P4 is rejected with its own witness."""
        member, witness = is_class_member(disjoint_union(path_graph(2), path_graph(4)))
        assert not member
        assert witness.pattern == "P2∪P4"

    def test_extremal_four_is_member(self):
        """Test that the 32-vertex extremal graph is a class member."""
        assert is_class_member(extremal(4))[0]

    def test_grotzsch_is_member(self):
        """Test that the Grötzsch graph is a class member."""
        assert is_class_member(grotzsch())[0]

    @settings(max_examples=25)
    @given(class_members(max_n=10), st.randoms(use_true_random=False))
    def test_hereditary(self, g, rng):
        """Test that induced subgraphs of members are members."""
        subset = [v for v in g.vertices if rng.random() < 0.6]
        assert is_class_member(induced_subgraph(g, subset))[0]

    @given(graphs(max_n=8))
    def test_triangle_free_implies_hvn_free(self, g):
        """Test that graphs without a triangle never contain HVN."""
        if find_induced(g, clique_pattern(3)) is None:
            assert find_induced(g, HVN) is None


class TestP4Freeness:
    """Tests for is_p4_free()."""

    def test_complete_multipartite_is_p4_free(self):
        """Test that K(2,3,1) has no induced P4."""
        assert is_p4_free(complete_multipartite_graph([2, 3, 1]))

    def test_p4_is_not_p4_free(self):
        """Test that the path on four vertices is not P4-free."""
        assert not is_p4_free(path_graph(4))

    @given(graphs(max_n=8))
    def test_methods_agree_with_brute_force(self, g):
        """Test that template search and cotree recognition agree with a 4-subset scan."""
        expected = not brute_force_contains(g, P4)
        assert is_p4_free(g, method="template") == expected
        assert is_p4_free(g, method="cotree") == expected
        assert is_p4_free(g) == expected


def _clique_pair(x_size: int, y_size: int, matching: list[tuple[int, int]]) -> tuple[Graph, frozenset[int], frozenset[int]]:
    x = list(range(x_size))
    y = list(range(x_size, x_size + y_size))
    edges = list(combinations(x, 2)) + list(combinations(y, 2))
    edges += [(x[i], y[j]) for i, j in matching]
    return Graph.from_edges(x_size + y_size, edges), frozenset(x), frozenset(y)


@st.composite
def clique_pairs(draw):
    """Two cliques joined by a nonempty matching with min size 2 and max size at least 3."""
    x_size = draw(st.integers(min_value=2, max_value=6))
    y_size = draw(st.integers(min_value=3 if x_size == 2 else 2, max_value=6))
    count = draw(st.integers(min_value=1, max_value=min(x_size, y_size)))
    xs = draw(st.permutations(range(x_size)))[:count]
    ys = draw(st.permutations(range(y_size)))[:count]
    return _clique_pair(x_size, y_size, list(zip(xs, ys, strict=True)))


class TestMatchingP4:
    """Tests for matching_p4_check()."""

    def test_single_cross_edge(self):
        """Test that K2 and K3 joined by one edge give (x2, x1, y1, y3)."""
        g, x, y = _clique_pair(2, 3, [(0, 0)])
        witness = matching_p4_check(g, x, y)
        assert witness.vertices == (1, 0, 2, 3)
        assert verify_witness(g, P4, witness)

    def test_perfect_matching_of_triangles(self):
        """Test that two triangles joined by a perfect matching contain a P4."""
        g, x, y = _clique_pair(3, 3, [(0, 0), (1, 1), (2, 2)])
        assert verify_witness(g, P4, matching_p4_check(g, x, y))

    def test_empty_matching(self):
        """Test that a missing cross edge is reported as empty-matching."""
        g, x, y = _clique_pair(2, 3, [])
        with pytest.raises(PreconditionError) as exc_info:
            matching_p4_check(g, x, y)
        assert exc_info.value.kind == "empty-matching"

    def test_not_cliques(self):
        """Test that a side that is not a clique is reported as not-cliques."""
        g = Graph.from_edges(5, [(2, 3), (3, 4), (2, 4), (0, 2)])
        with pytest.raises(PreconditionError) as exc_info:
            matching_p4_check(g, frozenset({0, 1}), frozenset({2, 3, 4}))
        assert exc_info.value.kind == "not-cliques"

    def test_sizes(self):
        """Test that two K2 sides are reported as sizes."""
        g, x, y = _clique_pair(2, 2, [(0, 0)])
        with pytest.raises(PreconditionError) as exc_info:
            matching_p4_check(g, x, y)
        assert exc_info.value.kind == "sizes"

    def test_not_matching(self):
        """Test that a vertex with two cross neighbours is reported as not-matching."""
        g, x, y = _clique_pair(2, 3, [(0, 0), (0, 1)])
        with pytest.raises(PreconditionError) as exc_info:
            matching_p4_check(g, x, y)
        assert exc_info.value.kind == "not-matching"

    @settings(max_examples=500)
    @given(clique_pairs())
    def test_witness_always_verifies(self, case):
        """Test that every valid clique pair yields a verifying P4 witness."""
        g, x, y = case
        witness = matching_p4_check(g, x, y)
        assert verify_witness(g, P4, witness)
        assert set(witness.vertices) <= x | y
