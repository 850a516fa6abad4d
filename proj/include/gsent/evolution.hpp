#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "gsent/channels.hpp"
#include "gsent/entanglement.hpp"
#include "gsent/graph.hpp"
#include "gsent/oracle.hpp"
#include "gsent/pattern.hpp"

namespace gsent {

// Mixed state diagonal in the graph basis; dist lives on all n qubits or on a
// declared restricted support with the rest implicitly marginalized.
struct GraphDiagonalState {
    Graph graph;
    PatternDistribution dist;
};

// Which flag bits the conditional average runs over.
//
// Reachable (default): every non-boundary qubit whose pattern bit the map can
// flip; bits that stay 0 carry no information, so this average equals the one
// over all non-boundary qubits exactly.
//
// RelevantShell: only the distance<=2 shell around the boundary. Cheaper, but
// an error event can write one bit inside the shell and another outside it,
// in which case the discarded bits still carry boundary information and the
// average degrades to a strict lower bound (see the engine tests for a
// five-vertex counterexample).
//
// AllNonBoundary: every non-boundary qubit unconditionally.
enum class DeltaSupport { Reachable, RelevantShell, AllNonBoundary };

struct EngineLimits {
    int dense_limit = kDefaultDenseLimit;
    double delta_skip_tol = 1e-14;  // flag outcomes below this are skipped
};

struct EvalResult {
    double value = 0.0;
    double skipped_mass = 0.0;   // total probability of skipped flag outcomes
    std::size_t delta_terms = 0; // flag outcomes actually averaged
    bool degenerate = false;     // no crossing edges: value is trivially 0
};

// Exact entanglement of the noisy graph state in the given partition: the
// flag-conditioned average of the quantifier over boundary states.
EvalResult exact_entanglement(const Graph& graph, const Partition& partition,
                              const PauliMapSpec& map, const QuantifierSpec& quantifier,
                              DeltaSupport delta = DeltaSupport::Reachable,
                              const EngineLimits& limits = {});

// Size-independent lower bound: the quantifier on the boundary state built
// from the boundary marginal alone (flag discarded).
EvalResult lower_bound_entanglement(const Graph& graph, const Partition& partition,
                                    const PauliMapSpec& map, const QuantifierSpec& quantifier,
                                    const EngineLimits& limits = {});

// Diagonal of rho in the graph basis: p(pattern) = <G_pattern|rho|G_pattern>.
// Dense; intended for oracle-scale inputs.
GraphDiagonalState twirl_to_graph_diagonal(const Dense& rho, const Graph& graph,
                                           int dense_limit = kDefaultDenseLimit);

// Pauli maps send graph-diagonal states to graph-diagonal states; the pattern
// distribution convolves with the map's induced distribution.
GraphDiagonalState evolve_graph_diagonal(const GraphDiagonalState& state,
                                         const PauliMapSpec& map);

// Exact entanglement of a graph-diagonal initial state evolved under `map`
// (pass std::nullopt to evaluate the state as is). The flag average runs over
// every non-boundary qubit of the state's support, since an arbitrary initial
// distribution may correlate any of them with the boundary.
EvalResult exact_entanglement_graph_diagonal(const GraphDiagonalState& state,
                                             const Partition& partition,
                                             const std::optional<PauliMapSpec>& map,
                                             const QuantifierSpec& quantifier,
                                             const EngineLimits& limits = {});

// One sweep sample for CSV output.
struct EntanglementCurvePoint {
    double p = 0.0;
    std::optional<double> exact;
    std::optional<double> lower_bound;
    std::string quantifier_id;
    std::string partition_id;
};

}  // namespace gsent
