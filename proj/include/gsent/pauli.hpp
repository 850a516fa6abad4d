#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "gsent/bitvec.hpp"
#include "gsent/graph.hpp"

namespace gsent {

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

// One letter per qubit; global phase is never tracked.
using PauliString = std::vector<Pauli>;

PauliString parse_pauli_string(std::string_view s);
std::string to_string(const PauliString& p);

// Z-pattern of a Pauli string acting on a graph state: each X on qubit k
// becomes Z on the neighbors of k, each Y becomes Z on the neighbors and on
// k itself, each Z stays put. Signs are discarded.
BitVec z_image(const Graph& graph, const PauliString& p);

// Restriction of a single letter's Z-image to an ordered support, packed as
// a support-local bitmask (bit i refers to support[i]).
std::uint64_t z_image_on_support(const Graph& graph, int qubit, Pauli letter,
                                 std::span<const int> support);

}  // namespace gsent
