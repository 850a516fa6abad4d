#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "gsent/graph.hpp"
#include "gsent/pattern.hpp"

namespace gsent {

using Dense = Eigen::MatrixXcd;

inline constexpr int kDefaultDenseLimit = 12;
inline constexpr double kHermiticityTol = 1e-10;
inline constexpr double kNegativityFloor = 1e-10;

// Full real spectrum of a Hermitian matrix (ascending). Throws InputError if
// the matrix is not Hermitian within tolerance.
std::vector<double> hermitian_eigenvalues(const Dense& m);

// Partial transpose over the qubits in side_mask (bit k = qubit k, with basis
// index bit k addressing qubit k). Exact index permutation.
Dense partial_transpose(const Dense& rho, std::uint64_t side_mask, int num_qubits);

// (||rho^{T_A}||_1 - 1)/2 = sum of |negative eigenvalues| of the partial
// transpose; 0 when either side of the split is empty.
double negativity(const Dense& rho, std::uint64_t side_a_mask, int num_qubits);

// Wootters concurrence of a two-qubit state and the closed-form entanglement
// of formation it determines.
double concurrence(const Dense& rho);
double eof_from_concurrence(double c);
double binary_entropy(double x);

// sum_gamma p(gamma) |G_gamma><G_gamma| on the boundary graph: dist keys are
// local Z-patterns, the graph's edges are the crossing edges. The entries are
// real; an empty boundary yields the 1x1 matrix [1].
Dense boundary_state(const Graph& boundary_graph, const PatternDistribution& dist,
                     int dense_limit = kDefaultDenseLimit);

// Which convex monotone to evaluate, and across which grouping of parts.
struct QuantifierSpec {
    enum class Kind { Negativity, EoF2 };
    Kind kind = Kind::Negativity;
    std::vector<int> grouping = {0};  // part ids forming side A (negativity only)

    static QuantifierSpec negativity_of_parts(std::vector<int> parts) {
        return {Kind::Negativity, std::move(parts)};
    }
    static QuantifierSpec eof2() { return {Kind::EoF2, {}}; }

    std::string id() const;
};

// Evaluates the quantifier on a 2^nq-dimensional state; side_a_mask selects
// the qubits on side A of the cut. EoF2 requires nq == 2.
double evaluate_quantifier(const QuantifierSpec& q, const Dense& rho,
                           std::uint64_t side_a_mask, int num_qubits);

// Checks trace 1, Hermiticity and eigenvalue floor; throws InputError.
void validate_density_matrix(const Dense& rho, double trace_tol = 1e-10,
                             double eig_floor = -1e-9);

}  // namespace gsent
