#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "gsent/bitvec.hpp"

namespace gsent {

// Z-pattern restricted to an ordered support, packed into a word:
// bit i of the key refers to support[i]. Supports are limited to 64 qubits;
// boundary supports are far smaller in practice.
using PatternKey = std::uint64_t;

inline constexpr int kMaxSupportBits = 64;
inline constexpr double kNormalizationTol = 1e-12;
inline constexpr double kPruneTol = 1e-15;

PatternKey key_from_bitvec(const BitVec& pattern, std::span<const int> support);

// Sparse probability distribution over Z-patterns on a fixed support.
// Immutable after construction; entries sorted by key.
class PatternDistribution {
public:
    PatternDistribution() = default;

    // Point mass at `key`.
    static PatternDistribution point(std::vector<int> support, PatternKey key = 0);

    // Builds from (key, probability) pairs, merging duplicates. Throws unless
    // probabilities are nonnegative and sum to 1 within tolerance; with
    // renormalize=true the sum is rescaled to 1 instead.
    static PatternDistribution from_entries(std::vector<int> support,
                                            std::vector<std::pair<PatternKey, double>> entries,
                                            bool renormalize = false);

    const std::vector<int>& support() const { return support_; }
    const std::vector<std::pair<PatternKey, double>>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }

    double probability_of(PatternKey key) const;
    double total() const;

    // Marginal over `sub` (a subset of the support): probabilities of patterns
    // agreeing on `sub` are summed.
    PatternDistribution restricted(std::span<const int> sub) const;

    // Splits the support into `sub` and its complement, conditions on the
    // pattern over `sub` being `value`. Returns the probability of `value`
    // and the renormalized conditional distribution over the complement
    // (empty distribution when the probability is zero).
    std::pair<double, PatternDistribution> conditioned(std::span<const int> sub,
                                                       PatternKey value) const;

private:
    std::vector<int> support_;  // ascending vertex ids
    std::vector<std::pair<PatternKey, double>> entries_;  // sorted by key
};

// c(z) = sum over x^y=z of a(x)*b(y). Supports may differ; each operand is
// zero-padded to the union. Entries below the prune tolerance are dropped and
// the result renormalized.
PatternDistribution xor_convolve(const PatternDistribution& a, const PatternDistribution& b);

}  // namespace gsent
