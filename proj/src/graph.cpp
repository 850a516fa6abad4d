#include "gsent/graph.hpp"

#include <algorithm>
#include <set>

#include "gsent/errors.hpp"

namespace gsent {

Graph::Graph(int n, std::span<const Edge> edges) : n_(n) {
    if (n < 0) throw InputError("graph: vertex count must be nonnegative");
    nbr_.assign(n_, BitVec(n_));
    std::set<Edge> unique;
    for (auto [i, j] : edges) {
        if (i == j) throw InputError("graph: self-loop on vertex " + std::to_string(i));
        if (i < 0 || j < 0 || i >= n_ || j >= n_)
            throw InputError("graph: edge endpoint out of range");
        if (i > j) std::swap(i, j);
        unique.insert({i, j});
    }
    edges_.assign(unique.begin(), unique.end());
    for (auto [i, j] : edges_) {
        nbr_[i].set(j);
        nbr_[j].set(i);
    }
}

bool Graph::has_edge(int i, int j) const {
    if (i < 0 || j < 0 || i >= n_ || j >= n_ || i == j) return false;
    return nbr_[i].get(j);
}

Graph Graph::path(int n) {
    std::vector<Edge> e;
    for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
    return Graph(n, e);
}

Graph Graph::cycle(int n) {
    std::vector<Edge> e;
    for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
    if (n > 2) e.push_back({0, n - 1});
    return Graph(n, e);
}

Graph Graph::complete(int n) {
    std::vector<Edge> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.push_back({i, j});
    return Graph(n, e);
}

Graph Graph::star(int n) {
    std::vector<Edge> e;
    for (int i = 1; i < n; ++i) e.push_back({0, i});
    return Graph(n, e);
}

Partition::Partition(std::vector<int> labels) : labels_(std::move(labels)) {
    if (labels_.empty()) throw InputError("partition: no vertices labeled");
    int max_part = -1;
    for (int l : labels_) {
        if (l < 0) throw InputError("partition: negative part id");
        max_part = std::max(max_part, l);
    }
    part_count_ = max_part + 1;
    std::vector<bool> used(part_count_, false);
    for (int l : labels_) used[l] = true;
    for (int p = 0; p < part_count_; ++p)
        if (!used[p])
            throw InputError("partition: part id " + std::to_string(p) + " unused");
}

Partition Partition::bipartition(int n, std::span<const int> side_a) {
    std::vector<int> labels(n, 1);
    for (int v : side_a) {
        if (v < 0 || v >= n) throw InputError("partition: vertex out of range");
        labels[v] = 0;
    }
    return Partition(std::move(labels));
}

BoundaryDecomposition boundary_of(const Graph& graph, const Partition& partition) {
    const int n = graph.vertex_count();
    if (partition.size() != n)
        throw InputError("boundary_of: partition labels " + std::to_string(partition.size()) +
                         " vertices, graph has " + std::to_string(n));

    BoundaryDecomposition d;
    BitVec in_boundary(n);
    for (auto [i, j] : graph.edges()) {
        if (partition.part_of(i) != partition.part_of(j)) {
            d.crossing_edges.push_back({i, j});
            in_boundary.set(i);
            in_boundary.set(j);
        }
    }
    for (int v = 0; v < n; ++v)
        if (in_boundary.get(v)) d.boundary_qubits.push_back(v);

    // Local relabeling: boundary qubit k -> its rank in the sorted id list.
    std::vector<int> local(n, -1);
    for (std::size_t k = 0; k < d.boundary_qubits.size(); ++k)
        local[d.boundary_qubits[k]] = static_cast<int>(k);
    std::vector<Edge> local_edges;
    for (auto [i, j] : d.crossing_edges) local_edges.push_back({local[i], local[j]});
    d.boundary_graph = Graph(static_cast<int>(d.boundary_qubits.size()), local_edges);

    BitVec closed = in_boundary;
    for (int v : d.boundary_qubits) {
        const BitVec& nb = graph.neighbor_mask(v);
        for (int u = 0; u < n; ++u)
            if (nb.get(u)) closed.set(u);
    }
    BitVec shell = closed;
    for (int v = 0; v < n; ++v) {
        if (!closed.get(v)) continue;
        const BitVec& nb = graph.neighbor_mask(v);
        for (int u = 0; u < n; ++u)
            if (nb.get(u)) shell.set(u);
    }
    for (int v = 0; v < n; ++v) {
        if (closed.get(v)) d.closed_neighborhood.push_back(v);
        if (shell.get(v) && !in_boundary.get(v)) d.relevant_delta_support.push_back(v);
    }
    return d;
}

int gf2_cut_rank(const Graph& graph, const Partition& bipartition) {
    if (bipartition.part_count() != 2)
        throw InputError("gf2_cut_rank: partition must have exactly 2 parts");
    if (bipartition.size() != graph.vertex_count())
        throw InputError("gf2_cut_rank: partition size mismatch");

    const int n = graph.vertex_count();
    std::vector<int> side_b;
    for (int v = 0; v < n; ++v)
        if (bipartition.part_of(v) == 1) side_b.push_back(v);

    // Rows: side-A vertices; columns: side-B vertices. Eliminate over GF(2).
    std::vector<BitVec> rows;
    for (int v = 0; v < n; ++v) {
        if (bipartition.part_of(v) != 0) continue;
        BitVec row(static_cast<int>(side_b.size()));
        for (std::size_t c = 0; c < side_b.size(); ++c)
            if (graph.has_edge(v, side_b[c])) row.set(static_cast<int>(c));
        rows.push_back(std::move(row));
    }

    int rank = 0;
    const int cols = static_cast<int>(side_b.size());
    for (int c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
        int pivot = -1;
        for (int r = rank; r < static_cast<int>(rows.size()); ++r)
            if (rows[r].get(c)) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(rows[rank], rows[pivot]);
        for (int r = 0; r < static_cast<int>(rows.size()); ++r)
            if (r != rank && rows[r].get(c)) rows[r] ^= rows[rank];
        ++rank;
    }
    return rank;
}

}  // namespace gsent
