#pragma once

#include <span>
#include <utility>
#include <vector>

#include "gsent/bitvec.hpp"

namespace gsent {

using Edge = std::pair<int, int>;  // normalized i < j

// Undirected simple graph over vertices 0..n-1. Immutable after construction.
class Graph {
public:
    Graph() = default;  // empty graph
    explicit Graph(int n, std::span<const Edge> edges = {});

    int vertex_count() const { return n_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const BitVec& neighbor_mask(int v) const { return nbr_[v]; }
    bool has_edge(int i, int j) const;
    int degree(int v) const { return nbr_[v].popcount(); }

    static Graph path(int n);      // 0-1-2-...-(n-1), the linear cluster graph
    static Graph cycle(int n);
    static Graph complete(int n);
    static Graph star(int n);      // vertex 0 joined to all others
    static Graph edgeless(int n) { return Graph(n); }

private:
    int n_ = 0;
    std::vector<Edge> edges_;      // sorted, deduplicated
    std::vector<BitVec> nbr_;
};

// Assignment of every vertex to a part id 0..P-1, each id used at least once.
class Partition {
public:
    explicit Partition(std::vector<int> labels);

    int size() const { return static_cast<int>(labels_.size()); }
    int part_of(int v) const { return labels_[v]; }
    int part_count() const { return part_count_; }
    const std::vector<int>& labels() const { return labels_; }

    // Part 0 holds the vertices in side_a, part 1 the rest.
    static Partition bipartition(int n, std::span<const int> side_a);

private:
    std::vector<int> labels_;
    int part_count_ = 0;
};

// Boundary structure of a partitioned graph: the crossing edges, their
// endpoints, the graph they span, and the shell of vertices whose error
// pattern bits can correlate with the boundary.
struct BoundaryDecomposition {
    std::vector<Edge> crossing_edges;          // original vertex ids
    std::vector<int> boundary_qubits;          // sorted; endpoints of crossing edges
    Graph boundary_graph;                      // local indices into boundary_qubits,
                                               // edge set = crossing edges only
    std::vector<int> closed_neighborhood;      // boundary qubits and their neighbors
    std::vector<int> relevant_delta_support;   // distance <= 2 shell minus the boundary
};

BoundaryDecomposition boundary_of(const Graph& graph, const Partition& partition);

// GF(2) rank of the biadjacency matrix across a 2-part partition; equals
// log2 of the Schmidt rank of the pure graph state across that cut.
int gf2_cut_rank(const Graph& graph, const Partition& bipartition);

}  // namespace gsent
