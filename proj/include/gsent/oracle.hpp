#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "gsent/bitvec.hpp"
#include "gsent/channels.hpp"
#include "gsent/entanglement.hpp"
#include "gsent/graph.hpp"

namespace gsent::oracle {

// Brute-force dense simulator used as ground truth at small n. None of these
// routines touch the pattern-distribution arithmetic; the same physics is
// implemented a second time on raw amplitudes.

using StateVector = Eigen::VectorXcd;

// |G_0>: amplitude of |b> is 2^{-n/2} * (-1)^{#edges with both endpoints set}.
StateVector graph_state_vector(const Graph& graph, int dense_limit = kDefaultDenseLimit);

// Z^pattern |G_0>.
StateVector graph_basis_vector(const Graph& graph, const BitVec& pattern,
                               int dense_limit = kDefaultDenseLimit);

Dense density_from_state(const StateVector& psi);

// Individual maps applied qubit by qubit as 4-term Kraus sums; explicit maps
// as the full Kraus sum over Pauli strings.
Dense apply_pauli_map_dense(const Dense& rho, const PauliMapSpec& map,
                            int dense_limit = kDefaultDenseLimit);

// Negativity of the full 2^n state across a 2-part partition (or across a
// grouping of parts for P > 2).
double dense_negativity(const Dense& rho, const Partition& partition,
                        std::span<const int> grouping_parts);

// <G_pattern| rho |G_pattern>.
double dense_graph_basis_overlap(const Dense& rho, const Graph& graph, const BitVec& pattern);

}  // namespace gsent::oracle
