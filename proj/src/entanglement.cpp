#include "gsent/entanglement.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "gsent/errors.hpp"

namespace gsent {

namespace {

void check_power_of_two_dim(const Dense& m, int num_qubits, const char* what) {
    const auto dim = Eigen::Index{1} << num_qubits;
    if (m.rows() != dim || m.cols() != dim)
        throw InputError(std::string(what) + ": matrix dimension " + std::to_string(m.rows()) +
                         " does not match 2^" + std::to_string(num_qubits));
}

// The QL iteration can stall on spectra with large exactly-degenerate
// clusters (partial transposes of stabilizer states are full of those) and
// then silently returns inaccurate values. Detect that and retry with a
// graded diagonal shift; the shift moves each eigenvalue by at most the
// perturbation norm, far below the 1e-9 residual contract, and is
// deterministic so repeated runs stay bit-identical.
Eigen::VectorXd selfadjoint_spectrum(const Dense& m) {
    Eigen::SelfAdjointEigenSolver<Dense> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() == Eigen::Success) return solver.eigenvalues();

    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    const auto dim = m.rows();
    for (double eps : {1e-13, 1e-11}) {
        Dense shifted = m;
        for (Eigen::Index i = 0; i < dim; ++i)
            shifted(i, i) += scale * eps * static_cast<double>(i + 1) / static_cast<double>(dim);
        solver.compute(shifted, Eigen::EigenvaluesOnly);
        if (solver.info() == Eigen::Success) return solver.eigenvalues();
    }
    throw std::runtime_error("hermitian eigensolver did not converge");
}

}  // namespace

std::vector<double> hermitian_eigenvalues(const Dense& m) {
    if (m.rows() != m.cols()) throw InputError("hermitian_eigenvalues: matrix not square");
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-8 * scale)
        throw InputError("hermitian_eigenvalues: matrix not Hermitian within tolerance");
    const Eigen::VectorXd ev = selfadjoint_spectrum(m);
    return std::vector<double>(ev.data(), ev.data() + ev.size());
}

Dense partial_transpose(const Dense& rho, std::uint64_t side_mask, int num_qubits) {
    check_power_of_two_dim(rho, num_qubits, "partial_transpose");
    const std::uint64_t dim = std::uint64_t{1} << num_qubits;
    const std::uint64_t mask = side_mask & (dim - 1);
    Dense out(dim, dim);
    for (std::uint64_t r = 0; r < dim; ++r) {
        for (std::uint64_t c = 0; c < dim; ++c) {
            const std::uint64_t rr = (r & ~mask) | (c & mask);
            const std::uint64_t cc = (c & ~mask) | (r & mask);
            out(rr, cc) = rho(r, c);
        }
    }
    return out;
}

double negativity(const Dense& rho, std::uint64_t side_a_mask, int num_qubits) {
    check_power_of_two_dim(rho, num_qubits, "negativity");
    const std::uint64_t full = (num_qubits == 64) ? ~std::uint64_t{0}
                                                  : (std::uint64_t{1} << num_qubits) - 1;
    const std::uint64_t mask = side_a_mask & full;
    if (mask == 0 || mask == full) return 0.0;
    const Dense pt = partial_transpose(rho, mask, num_qubits);
    double neg = 0.0;
    for (double ev : hermitian_eigenvalues(pt))
        if (ev < 0.0) neg -= ev;
    return std::max(0.0, neg);
}

double concurrence(const Dense& rho) {
    if (rho.rows() != 4 || rho.cols() != 4)
        throw InputError("concurrence: requires a 4x4 two-qubit state");

    // Spin-flipped state (Y (x) Y) rho* (Y (x) Y); the i factors cancel.
    Dense yy = Dense::Zero(4, 4);
    yy(0, 3) = -1;
    yy(1, 2) = 1;
    yy(2, 1) = 1;
    yy(3, 0) = -1;
    const Dense rho_tilde = yy * rho.conjugate() * yy;

    // Eigenvalues of rho*rho_tilde via the Hermitian form sqrt(rho)*rho_tilde*sqrt(rho).
    auto decompose = [](const Dense& m) {
        Eigen::SelfAdjointEigenSolver<Dense> solver(m);
        if (solver.info() != Eigen::Success) {
            Dense shifted = m;
            for (Eigen::Index i = 0; i < m.rows(); ++i) shifted(i, i) += 1e-13 * (i + 1.0);
            solver.compute(shifted);
            if (solver.info() != Eigen::Success)
                throw std::runtime_error("hermitian eigensolver did not converge");
        }
        return solver;
    };
    const auto rho_solver = decompose(rho);
    Eigen::VectorXd d = rho_solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    const Dense sqrt_rho =
        rho_solver.eigenvectors() * d.asDiagonal() * rho_solver.eigenvectors().adjoint();
    const auto solver = decompose(sqrt_rho * rho_tilde * sqrt_rho);

    std::vector<double> lambda;
    for (int i = 0; i < 4; ++i) lambda.push_back(std::sqrt(std::max(0.0, solver.eigenvalues()[i])));
    std::sort(lambda.begin(), lambda.end(), std::greater<>());
    return std::max(0.0, lambda[0] - lambda[1] - lambda[2] - lambda[3]);
}

double binary_entropy(double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double eof_from_concurrence(double c) {
    if (!(c >= 0.0 && c <= 1.0 + 1e-12))
        throw InputError("eof_from_concurrence: concurrence outside [0,1]");
    c = std::min(c, 1.0);
    return binary_entropy(0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c))));
}

Dense boundary_state(const Graph& boundary_graph, const PatternDistribution& dist,
                     int dense_limit) {
    const int m = boundary_graph.vertex_count();
    if (static_cast<int>(dist.support().size()) != m)
        throw InputError("boundary_state: distribution support size " +
                         std::to_string(dist.support().size()) +
                         " does not match boundary size " + std::to_string(m));
    if (m > dense_limit)
        throw ResourceError("boundary_state: " + std::to_string(m) +
                            " boundary qubits exceed the dense limit of " +
                            std::to_string(dense_limit));

    const std::uint64_t dim = std::uint64_t{1} << m;

    // CZ-layer sign of each computational basis state.
    std::vector<double> sign(dim, 1.0);
    for (std::uint64_t b = 0; b < dim; ++b) {
        int flips = 0;
        for (auto [i, j] : boundary_graph.edges())
            if (((b >> i) & 1u) && ((b >> j) & 1u)) ++flips;
        if (flips & 1) sign[b] = -1.0;
    }

    // f(c) = sum_gamma p(gamma) (-1)^{gamma.c}; then
    // rho[a][b] = 2^{-m} sign(a) sign(b) f(a^b).
    std::vector<double> f(dim, 0.0);
    for (std::uint64_t c = 0; c < dim; ++c) {
        double s = 0.0;
        for (const auto& [gamma, p] : dist.entries())
            s += (std::popcount(gamma & c) & 1) ? -p : p;
        f[c] = s;
    }

    const double norm = 1.0 / static_cast<double>(dim);
    Dense rho(dim, dim);
    for (std::uint64_t a = 0; a < dim; ++a)
        for (std::uint64_t b = 0; b < dim; ++b)
            rho(a, b) = norm * sign[a] * sign[b] * f[a ^ b];
    return rho;
}

std::string QuantifierSpec::id() const {
    if (kind == Kind::EoF2) return "eof2";
    std::string s = "negativity[parts";
    for (int p : grouping) s += " " + std::to_string(p + 1);
    s += "]";
    return s;
}

double evaluate_quantifier(const QuantifierSpec& q, const Dense& rho,
                           std::uint64_t side_a_mask, int num_qubits) {
    if (q.kind == QuantifierSpec::Kind::EoF2) {
        if (num_qubits != 2)
            throw UnsupportedQuantifierError(
                "unsupported quantifier for this boundary size: eof2 needs exactly 2 "
                "boundary qubits, have " +
                std::to_string(num_qubits));
        return eof_from_concurrence(concurrence(rho));
    }
    return negativity(rho, side_a_mask, num_qubits);
}

void validate_density_matrix(const Dense& rho, double trace_tol, double eig_floor) {
    if (rho.rows() != rho.cols()) throw InputError("density matrix: not square");
    if (std::abs(rho.trace().real() - 1.0) > trace_tol || std::abs(rho.trace().imag()) > trace_tol)
        throw InputError("density matrix: trace differs from 1");
    const double scale = std::max(1.0, rho.cwiseAbs().maxCoeff());
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > kHermiticityTol * scale)
        throw InputError("density matrix: not Hermitian");
    const double min_ev = selfadjoint_spectrum(rho).minCoeff();
    if (min_ev < eig_floor)
        throw InputError("density matrix: negative eigenvalue " + std::to_string(min_ev));
}

}  // namespace gsent
