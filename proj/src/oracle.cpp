#include "gsent/oracle.hpp"

#include <bit>
#include <cmath>

#include "gsent/errors.hpp"

namespace gsent::oracle {

namespace {

void check_dense_limit(int n, int dense_limit) {
    if (n > dense_limit)
        throw ResourceError("oracle: " + std::to_string(n) + " qubits exceed the dense limit of " +
                            std::to_string(dense_limit) + " (memory grows as 4^n)");
}

// One Kraus conjugation rho -> P rho P^dag for a Pauli string given as
// X-flip and Z-sign masks. The i factors of Y cancel between P and P^dag.
Dense conjugate_pauli(const Dense& rho, std::uint64_t x_mask, std::uint64_t z_mask) {
    const std::uint64_t dim = rho.rows();
    Dense out(dim, dim);
    for (std::uint64_t r = 0; r < dim; ++r) {
        const double sr = (std::popcount(r & z_mask) & 1) ? -1.0 : 1.0;
        for (std::uint64_t c = 0; c < dim; ++c) {
            const double sc = (std::popcount(c & z_mask) & 1) ? -1.0 : 1.0;
            out(r ^ x_mask, c ^ x_mask) = sr * sc * rho(r, c);
        }
    }
    return out;
}

void pauli_masks(const PauliString& s, std::uint64_t& x_mask, std::uint64_t& z_mask) {
    x_mask = z_mask = 0;
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (s[k] == Pauli::X || s[k] == Pauli::Y) x_mask |= std::uint64_t{1} << k;
        if (s[k] == Pauli::Z || s[k] == Pauli::Y) z_mask |= std::uint64_t{1} << k;
    }
}

}  // namespace

StateVector graph_state_vector(const Graph& graph, int dense_limit) {
    const int n = graph.vertex_count();
    check_dense_limit(n, dense_limit);
    const std::uint64_t dim = std::uint64_t{1} << n;
    const double amp = std::pow(2.0, -0.5 * n);
    StateVector psi(dim);
    for (std::uint64_t b = 0; b < dim; ++b) {
        int flips = 0;
        for (auto [i, j] : graph.edges())
            if (((b >> i) & 1u) && ((b >> j) & 1u)) ++flips;
        psi(b) = (flips & 1) ? -amp : amp;
    }
    return psi;
}

StateVector graph_basis_vector(const Graph& graph, const BitVec& pattern, int dense_limit) {
    const int n = graph.vertex_count();
    if (pattern.size() != n) throw InputError("graph_basis_vector: pattern length mismatch");
    StateVector psi = graph_state_vector(graph, dense_limit);
    std::uint64_t z_mask = 0;
    for (int k = 0; k < n; ++k)
        if (pattern.get(k)) z_mask |= std::uint64_t{1} << k;
    for (std::uint64_t b = 0; b < static_cast<std::uint64_t>(psi.size()); ++b)
        if (std::popcount(b & z_mask) & 1) psi(b) = -psi(b);
    return psi;
}

Dense density_from_state(const StateVector& psi) { return psi * psi.adjoint(); }

Dense apply_pauli_map_dense(const Dense& rho, const PauliMapSpec& map, int dense_limit) {
    const int n = map.qubit_count();
    check_dense_limit(n, dense_limit);
    const auto dim = Eigen::Index{1} << n;
    if (rho.rows() != dim || rho.cols() != dim)
        throw InputError("apply_pauli_map_dense: dimension mismatch");

    if (map.kind() == PauliMapSpec::Kind::Explicit) {
        Dense out = Dense::Zero(dim, dim);
        for (const auto& [p, s] : map.kraus()) {
            if (p == 0.0) continue;
            std::uint64_t x_mask = 0, z_mask = 0;
            pauli_masks(s, x_mask, z_mask);
            out += p * conjugate_pauli(rho, x_mask, z_mask);
        }
        return out;
    }

    Dense out = rho;
    for (int k = 0; k < n; ++k) {
        const auto& ch = map.channels()[k];
        const std::uint64_t bit = std::uint64_t{1} << k;
        Dense next = Dense::Zero(dim, dim);
        if (ch.p[0] > 0.0) next += ch.p[0] * out;
        if (ch.p[1] > 0.0) next += ch.p[1] * conjugate_pauli(out, bit, 0);
        if (ch.p[2] > 0.0) next += ch.p[2] * conjugate_pauli(out, bit, bit);
        if (ch.p[3] > 0.0) next += ch.p[3] * conjugate_pauli(out, 0, bit);
        out = std::move(next);
    }
    return out;
}

double dense_negativity(const Dense& rho, const Partition& partition,
                        std::span<const int> grouping_parts) {
    const int n = partition.size();
    std::uint64_t mask = 0;
    for (int v = 0; v < n; ++v)
        for (int part : grouping_parts)
            if (partition.part_of(v) == part) mask |= std::uint64_t{1} << v;
    return negativity(rho, mask, n);
}

double dense_graph_basis_overlap(const Dense& rho, const Graph& graph, const BitVec& pattern) {
    const StateVector v = graph_basis_vector(graph, pattern);
    if (rho.rows() != v.size()) throw InputError("dense_graph_basis_overlap: dimension mismatch");
    return (v.adjoint() * rho * v)(0, 0).real();
}

}  // namespace gsent::oracle
