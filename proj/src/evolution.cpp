#include "gsent/evolution.hpp"

#include <algorithm>

#include "gsent/errors.hpp"

namespace gsent {

namespace {

// Side-A mask for the boundary state in local qubit order.
std::uint64_t boundary_side_mask(const BoundaryDecomposition& bd, const Partition& partition,
                                 const QuantifierSpec& q) {
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < bd.boundary_qubits.size(); ++i) {
        const int part = partition.part_of(bd.boundary_qubits[i]);
        if (std::find(q.grouping.begin(), q.grouping.end(), part) != q.grouping.end())
            mask |= std::uint64_t{1} << i;
    }
    return mask;
}

void check_applicability(const BoundaryDecomposition& bd, const QuantifierSpec& q,
                         const EngineLimits& limits) {
    const int m = static_cast<int>(bd.boundary_qubits.size());
    if (q.kind == QuantifierSpec::Kind::EoF2 && m != 2)
        throw UnsupportedQuantifierError(
            "unsupported quantifier for this boundary size: eof2 needs a 2-qubit boundary, "
            "have " + std::to_string(m));
    if (m > limits.dense_limit)
        throw ResourceError("boundary of " + std::to_string(m) +
                            " qubits exceeds the dense limit of " +
                            std::to_string(limits.dense_limit));
}

// Non-boundary qubits whose pattern bit some positive-probability error event
// can flip.
std::vector<int> reachable_delta_support(const Graph& graph, const BoundaryDecomposition& bd,
                                         const PauliMapSpec& map) {
    const int n = graph.vertex_count();
    BitVec boundary(n);
    for (int v : bd.boundary_qubits) boundary.set(v);

    BitVec reachable(n);
    if (map.kind() == PauliMapSpec::Kind::Explicit) {
        for (const auto& [p, s] : map.kraus()) {
            if (p <= 0.0) continue;
            reachable |= z_image(graph, s);
        }
    } else {
        for (int k = 0; k < n; ++k) {
            const auto& ch = map.channels()[k];
            if (ch.p[1] > 0.0 || ch.p[2] > 0.0) {
                const BitVec& nb = graph.neighbor_mask(k);
                for (int v = 0; v < n; ++v)
                    if (nb.get(v)) reachable.set(v);
            }
            if (ch.p[2] > 0.0 || ch.p[3] > 0.0) reachable.set(k);
        }
    }

    std::vector<int> out;
    for (int v = 0; v < n; ++v)
        if (reachable.get(v) && !boundary.get(v)) out.push_back(v);
    return out;
}

std::vector<int> all_non_boundary(const Graph& graph, const BoundaryDecomposition& bd) {
    const int n = graph.vertex_count();
    BitVec boundary(n);
    for (int v : bd.boundary_qubits) boundary.set(v);
    std::vector<int> out;
    for (int v = 0; v < n; ++v)
        if (!boundary.get(v)) out.push_back(v);
    return out;
}

// Flag-conditioned average of the quantifier: for every flag value delta with
// p(delta) above the skip tolerance, condition the joint distribution, build
// the conditional boundary state and average the quantifier. Flag values are
// visited in ascending pattern order.
EvalResult averaged_over_flags(const PatternDistribution& joint,
                               std::span<const int> delta_support, const Graph& boundary_graph,
                               const QuantifierSpec& q, std::uint64_t side_a_mask,
                               const EngineLimits& limits) {
    EvalResult res;
    const PatternDistribution flag_marginal = joint.restricted(delta_support);
    for (const auto& [delta, p_delta] : flag_marginal.entries()) {
        if (p_delta < limits.delta_skip_tol) {
            res.skipped_mass += p_delta;
            continue;
        }
        auto [p, conditional] = joint.conditioned(delta_support, delta);
        if (p <= 0.0) continue;
        const Dense rho = boundary_state(boundary_graph, conditional, limits.dense_limit);
        res.value += p_delta * evaluate_quantifier(q, rho, side_a_mask, boundary_graph.vertex_count());
        ++res.delta_terms;
    }
    if (res.skipped_mass > 1e-10)
        throw std::runtime_error("flag average skipped probability mass " +
                                 std::to_string(res.skipped_mass) +
                                 "; lower the skip tolerance");
    return res;
}

}  // namespace

EvalResult exact_entanglement(const Graph& graph, const Partition& partition,
                              const PauliMapSpec& map, const QuantifierSpec& quantifier,
                              DeltaSupport delta, const EngineLimits& limits) {
    const BoundaryDecomposition bd = boundary_of(graph, partition);
    if (bd.crossing_edges.empty()) return {.value = 0.0, .degenerate = true};
    check_applicability(bd, quantifier, limits);

    std::vector<int> delta_support;
    switch (delta) {
        case DeltaSupport::Reachable:
            delta_support = reachable_delta_support(graph, bd, map);
            break;
        case DeltaSupport::RelevantShell:
            delta_support = bd.relevant_delta_support;
            break;
        case DeltaSupport::AllNonBoundary:
            delta_support = all_non_boundary(graph, bd);
            break;
    }

    std::vector<int> support;
    std::merge(bd.boundary_qubits.begin(), bd.boundary_qubits.end(), delta_support.begin(),
               delta_support.end(), std::back_inserter(support));
    const PatternDistribution joint = induced_pattern_distribution(graph, map, support);
    return averaged_over_flags(joint, delta_support, bd.boundary_graph, quantifier,
                               boundary_side_mask(bd, partition, quantifier), limits);
}

EvalResult lower_bound_entanglement(const Graph& graph, const Partition& partition,
                                    const PauliMapSpec& map, const QuantifierSpec& quantifier,
                                    const EngineLimits& limits) {
    const BoundaryDecomposition bd = boundary_of(graph, partition);
    if (bd.crossing_edges.empty()) return {.value = 0.0, .degenerate = true};
    check_applicability(bd, quantifier, limits);

    // The boundary marginal is computed directly on the boundary support, so
    // its value depends only on the boundary graph and the channels acting on
    // its closed neighborhood: graphs differing farther out produce the same
    // bytes.
    const PatternDistribution marginal =
        induced_pattern_distribution(graph, map, bd.boundary_qubits);
    const Dense rho = boundary_state(bd.boundary_graph, marginal, limits.dense_limit);
    EvalResult res;
    res.value = evaluate_quantifier(quantifier, rho, boundary_side_mask(bd, partition, quantifier),
                                    bd.boundary_graph.vertex_count());
    res.delta_terms = 1;
    return res;
}

GraphDiagonalState twirl_to_graph_diagonal(const Dense& rho, const Graph& graph,
                                           int dense_limit) {
    const int n = graph.vertex_count();
    if (n > dense_limit)
        throw ResourceError("twirl: " + std::to_string(n) + " qubits exceed the dense limit");
    const auto dim = Eigen::Index{1} << n;
    if (rho.rows() != dim || rho.cols() != dim)
        throw InputError("twirl: state dimension does not match the graph");

    std::vector<int> support(n);
    for (int v = 0; v < n; ++v) support[v] = v;
    std::vector<std::pair<PatternKey, double>> entries;
    entries.reserve(dim);
    for (std::uint64_t mu = 0; mu < static_cast<std::uint64_t>(dim); ++mu) {
        BitVec pattern(n);
        for (int k = 0; k < n; ++k)
            if ((mu >> k) & 1u) pattern.set(k);
        const double p = std::max(0.0, oracle::dense_graph_basis_overlap(rho, graph, pattern));
        if (p > 0.0) entries.push_back({mu, p});
    }
    return {graph, PatternDistribution::from_entries(std::move(support), std::move(entries),
                                                     /*renormalize=*/true)};
}

GraphDiagonalState evolve_graph_diagonal(const GraphDiagonalState& state,
                                         const PauliMapSpec& map) {
    if (map.qubit_count() != state.graph.vertex_count())
        throw InputError("evolve_graph_diagonal: map size does not match the graph");
    const PatternDistribution induced =
        induced_pattern_distribution(state.graph, map, state.dist.support());
    return {state.graph, xor_convolve(state.dist, induced)};
}

EvalResult exact_entanglement_graph_diagonal(const GraphDiagonalState& state,
                                             const Partition& partition,
                                             const std::optional<PauliMapSpec>& map,
                                             const QuantifierSpec& quantifier,
                                             const EngineLimits& limits) {
    const BoundaryDecomposition bd = boundary_of(state.graph, partition);
    if (bd.crossing_edges.empty()) return {.value = 0.0, .degenerate = true};
    check_applicability(bd, quantifier, limits);

    const GraphDiagonalState evolved = map ? evolve_graph_diagonal(state, *map) : state;
    const auto& support = evolved.dist.support();
    for (int y : bd.boundary_qubits)
        if (!std::binary_search(support.begin(), support.end(), y))
            throw InputError("exact_entanglement_graph_diagonal: state support must cover the "
                             "boundary qubits");

    std::vector<int> delta_support;
    for (int v : support)
        if (!std::binary_search(bd.boundary_qubits.begin(), bd.boundary_qubits.end(), v))
            delta_support.push_back(v);
    return averaged_over_flags(evolved.dist, delta_support, bd.boundary_graph, quantifier,
                               boundary_side_mask(bd, partition, quantifier), limits);
}

}  // namespace gsent
