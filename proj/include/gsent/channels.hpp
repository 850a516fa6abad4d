#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gsent/graph.hpp"
#include "gsent/pattern.hpp"
#include "gsent/pauli.hpp"

namespace gsent {

// Probabilities (p_I, p_X, p_Y, p_Z), nonnegative, summing to 1.
struct SingleQubitPauliChannel {
    double p[4] = {1.0, 0.0, 0.0, 0.0};

    double operator[](Pauli letter) const { return p[static_cast<int>(letter)]; }

    static SingleQubitPauliChannel identity() { return {}; }
    static SingleQubitPauliChannel depolarizing(double p);
    static SingleQubitPauliChannel dephasing(double p);
    static SingleQubitPauliChannel bit_flip(double p);
    static SingleQubitPauliChannel make(double pi, double px, double py, double pz);
};

inline constexpr std::size_t kDefaultMaxKrausTerms = 4096;

// A Pauli map: either independent per-qubit channels or an explicit weighted
// Kraus list of Pauli strings.
class PauliMapSpec {
public:
    enum class Kind { Individual, Explicit };

    static PauliMapSpec individual(std::vector<SingleQubitPauliChannel> channels);
    static PauliMapSpec uniform(int n, const SingleQubitPauliChannel& channel);
    static PauliMapSpec explicit_kraus(std::vector<std::pair<double, PauliString>> terms,
                                       std::size_t max_terms = kDefaultMaxKrausTerms);

    Kind kind() const { return kind_; }
    int qubit_count() const;
    const std::vector<SingleQubitPauliChannel>& channels() const { return channels_; }
    const std::vector<std::pair<double, PauliString>>& kraus() const { return kraus_; }

private:
    PauliMapSpec() = default;
    Kind kind_ = Kind::Individual;
    std::vector<SingleQubitPauliChannel> channels_;
    std::vector<std::pair<double, PauliString>> kraus_;
};

// Distribution of the map's Z-pattern restricted to `support`. For individual
// maps this is the XOR-convolution over qubits of each letter distribution's
// restricted image; for explicit maps each Kraus term is pushed through
// z_image and restricted.
PatternDistribution induced_pattern_distribution(const Graph& graph, const PauliMapSpec& map,
                                                 std::span<const int> support);

// Joint distribution of (boundary pattern, relevant flag bits), i.e. the
// induced distribution on boundary_qubits + relevant_delta_support.
PatternDistribution joint_boundary_distribution(const Graph& graph,
                                                const BoundaryDecomposition& decomposition,
                                                const PauliMapSpec& map);

// Parsed channel configuration. Named families are instantiated per sweep
// point; explicit Kraus lists are fixed.
struct ChannelSpec {
    enum class Family { Depolarizing, Dephasing, BitFlip, Explicit };

    Family family = Family::Depolarizing;
    std::optional<double> p;
    std::optional<std::vector<double>> p_per_qubit;  // per-qubit levels, scaled by sweep p
    std::vector<std::pair<double, std::string>> kraus;

    bool is_swept() const { return family != Family::Explicit; }

    // Builds the map for `n` qubits. For named families, `sweep_p` (if given)
    // overrides `p`; with p_per_qubit present, sweep_p acts as a global scale.
    PauliMapSpec instantiate(int n, std::optional<double> sweep_p = std::nullopt) const;

    static ChannelSpec named(Family family, double p);
};

// Text format: `channel = depolarizing|dephasing|bitflip|explicit`,
// `p = <float>` or `p_per_qubit = [ ... ]`, and for explicit maps
// `kraus = [(prob, "IXZ..."), ...]`. `#` starts a comment.
ChannelSpec parse_channel_config(std::istream& in, const std::string& filename);
ChannelSpec load_channel_config(const std::string& path);

}  // namespace gsent
