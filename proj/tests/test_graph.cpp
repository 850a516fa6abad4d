#include <doctest.h>

#include <algorithm>

#include "gsent/entanglement.hpp"
#include "gsent/errors.hpp"
#include "gsent/graph.hpp"
#include "gsent/oracle.hpp"
#include "test_util.hpp"

using namespace gsent;

TEST_CASE("graph construction validates input") {
    CHECK_THROWS_AS(Graph(3, std::vector<Edge>{{0, 0}}), InputError);
    CHECK_THROWS_AS(Graph(3, std::vector<Edge>{{0, 3}}), InputError);
    Graph g(3, std::vector<Edge>{{1, 0}, {0, 1}});  // reversed + duplicate collapse
    CHECK(g.edges().size() == 1);
    CHECK(g.has_edge(0, 1));
    CHECK(g.has_edge(1, 0));
    CHECK(g.degree(2) == 0);
}

TEST_CASE("neighbor masks agree with the edge set") {
    testutil::Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(7));
        Graph g = testutil::random_connected_graph(rng, n, 0.3);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                CHECK(g.neighbor_mask(i).get(j) == g.has_edge(i, j));
    }
}

TEST_CASE("partition requires contiguous used part ids") {
    CHECK_THROWS_AS(Partition({0, 2}), InputError);  // part 1 unused
    CHECK_THROWS_AS(Partition({0, -1}), InputError);
    Partition p({0, 1, 1, 0});
    CHECK(p.part_count() == 2);
}

TEST_CASE("boundary of a 4-path cut after the first vertex") {
    Graph g = Graph::path(4);
    Partition part = Partition::bipartition(4, std::vector<int>{0});
    BoundaryDecomposition bd = boundary_of(g, part);

    CHECK(bd.crossing_edges == std::vector<Edge>{{0, 1}});
    CHECK(bd.boundary_qubits == std::vector<int>{0, 1});
    CHECK(bd.boundary_graph.vertex_count() == 2);
    CHECK(bd.boundary_graph.edges() == std::vector<Edge>{{0, 1}});
    CHECK(bd.closed_neighborhood == std::vector<int>{0, 1, 2});
    // Distance <= 2 shell: vertex 2 (adjacent) and vertex 3 (two steps out).
    CHECK(bd.relevant_delta_support == std::vector<int>{2, 3});
}

TEST_CASE("partition with a single part has no boundary") {
    Graph g = Graph::path(4);
    BoundaryDecomposition bd = boundary_of(g, Partition({0, 0, 0, 0}));
    CHECK(bd.crossing_edges.empty());
    CHECK(bd.boundary_qubits.empty());
    CHECK(bd.boundary_graph.vertex_count() == 0);
}

TEST_CASE("three-part boundary collects exactly the crossing endpoints") {
    // Two triangles joined by a bridge, three parts.
    Graph g(6, std::vector<Edge>{{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {4, 5}, {3, 5}});
    Partition part({0, 0, 0, 1, 1, 2});
    BoundaryDecomposition bd = boundary_of(g, part);
    CHECK(bd.crossing_edges == std::vector<Edge>{{2, 3}, {3, 5}, {4, 5}});
    CHECK(bd.boundary_qubits == std::vector<int>{2, 3, 4, 5});
    // Non-crossing edges between boundary qubits (here {3,4}) stay out.
    CHECK(bd.boundary_graph.edges().size() == 3);
    for (auto [i, j] : bd.boundary_graph.edges()) {
        const int gi = bd.boundary_qubits[i];
        const int gj = bd.boundary_qubits[j];
        CHECK(part.part_of(gi) != part.part_of(gj));
    }
}

TEST_CASE("boundary_of rejects mismatched partitions") {
    Graph g = Graph::path(4);
    CHECK_THROWS_AS(boundary_of(g, Partition({0, 1})), InputError);
}

TEST_CASE("recomputing the boundary on the boundary graph is stable") {
    testutil::Rng rng(23);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 3 + static_cast<int>(rng.below(6));
        Graph g = testutil::random_connected_graph(rng, n, 0.3);
        Partition part = testutil::random_bipartition(rng, n);
        BoundaryDecomposition bd = boundary_of(g, part);
        if (bd.boundary_qubits.empty()) continue;

        std::vector<int> induced_labels;
        for (int v : bd.boundary_qubits) induced_labels.push_back(part.part_of(v));
        // Part ids stay 0/1 and both appear: every crossing edge has one
        // endpoint in each part.
        BoundaryDecomposition again = boundary_of(bd.boundary_graph, Partition(induced_labels));
        CHECK(again.crossing_edges == bd.boundary_graph.edges());
    }
}

namespace {

// Independent check of the cut rank: Schmidt rank of the dense graph state
// across the cut, read off the reduced density matrix spectrum.
int schmidt_log2_rank(const Graph& g, const Partition& part) {
    const int n = g.vertex_count();
    const auto psi = oracle::graph_state_vector(g);
    std::uint64_t mask_a = 0;
    for (int v = 0; v < n; ++v)
        if (part.part_of(v) == 0) mask_a |= std::uint64_t{1} << v;

    // rho_A by tracing out side B.
    std::vector<std::uint64_t> a_states, b_states;
    const std::uint64_t dim = std::uint64_t{1} << n;
    for (std::uint64_t b = 0; b < dim; ++b) {
        if ((b & ~mask_a) == 0) a_states.push_back(b);
        if ((b & mask_a) == 0) b_states.push_back(b);
    }
    Dense rho_a = Dense::Zero(a_states.size(), a_states.size());
    for (std::size_t i = 0; i < a_states.size(); ++i)
        for (std::size_t j = 0; j < a_states.size(); ++j)
            for (std::uint64_t bb : b_states)
                rho_a(i, j) += psi(a_states[i] | bb) * std::conj(psi(a_states[j] | bb));
    int rank = 0;
    for (double ev : hermitian_eigenvalues(rho_a))
        if (ev > 1e-9) ++rank;
    int log2r = 0;
    while ((1 << log2r) < rank) ++log2r;
    CHECK((1 << log2r) == rank);  // stabilizer states have power-of-two Schmidt rank
    return log2r;
}

}  // namespace

TEST_CASE("gf2 cut rank on named graphs") {
    for (int n = 2; n <= 7; ++n) {
        Graph path = Graph::path(n);
        CHECK(gf2_cut_rank(path, Partition::bipartition(n, std::vector<int>{0})) == 1);
    }
    // Complete graph on 4 vertices across {0,1}|{2,3}: the biadjacency block
    // is all ones, rank 1 over GF(2); the dense Schmidt oracle agrees.
    Graph k4 = Graph::complete(4);
    Partition half = Partition::bipartition(4, std::vector<int>{0, 1});
    const int r = gf2_cut_rank(k4, half);
    CHECK(r == schmidt_log2_rank(k4, half));
    CHECK(r == 1);

    Graph empty = Graph::edgeless(5);
    CHECK(gf2_cut_rank(empty, Partition::bipartition(5, std::vector<int>{1, 3})) == 0);

    // Four-cycle split between two adjacent pairs has full rank 2.
    Graph c4 = Graph::cycle(4);
    Partition adj = Partition::bipartition(4, std::vector<int>{0, 1});
    CHECK(gf2_cut_rank(c4, adj) == 2);
    CHECK(schmidt_log2_rank(c4, adj) == 2);
}

TEST_CASE("gf2 cut rank requires a bipartition") {
    Graph g = Graph::path(3);
    CHECK_THROWS_AS(gf2_cut_rank(g, Partition({0, 1, 2})), InputError);
}

TEST_CASE("cut rank is bounded by the smaller side and matches the dense oracle") {
    testutil::Rng rng(31);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(6));
        Graph g = testutil::random_connected_graph(rng, n, 0.4);
        Partition part = testutil::random_bipartition(rng, n);
        int size_a = 0;
        for (int v = 0; v < n; ++v)
            if (part.part_of(v) == 0) ++size_a;
        const int r = gf2_cut_rank(g, part);
        CHECK(r <= std::min(size_a, n - size_a));
        CHECK(r == schmidt_log2_rank(g, part));
    }
}
