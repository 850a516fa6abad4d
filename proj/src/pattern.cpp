#include "gsent/pattern.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "gsent/errors.hpp"

namespace gsent {

namespace {

void check_support(const std::vector<int>& support) {
    if (support.size() > kMaxSupportBits)
        throw ResourceError("pattern support wider than 64 qubits is not supported");
    for (std::size_t i = 0; i + 1 < support.size(); ++i)
        if (support[i] >= support[i + 1])
            throw InputError("pattern support must be strictly ascending");
}

// Positions of `sub` inside `full`; throws if not a subset.
std::vector<int> subset_positions(const std::vector<int>& full, std::span<const int> sub) {
    std::vector<int> pos;
    pos.reserve(sub.size());
    std::size_t j = 0;
    for (int v : sub) {
        while (j < full.size() && full[j] < v) ++j;
        if (j == full.size() || full[j] != v)
            throw InputError("pattern: requested qubits are not a subset of the support");
        pos.push_back(static_cast<int>(j));
        ++j;
    }
    return pos;
}

PatternKey gather_bits(PatternKey key, const std::vector<int>& positions) {
    PatternKey out = 0;
    for (std::size_t i = 0; i < positions.size(); ++i)
        out |= ((key >> positions[i]) & 1u) << i;
    return out;
}

std::vector<std::pair<PatternKey, double>> sorted_entries(
    std::unordered_map<PatternKey, double>&& acc) {
    std::vector<std::pair<PatternKey, double>> out(acc.begin(), acc.end());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

PatternKey key_from_bitvec(const BitVec& pattern, std::span<const int> support) {
    PatternKey key = 0;
    for (std::size_t i = 0; i < support.size(); ++i)
        if (pattern.get(support[i])) key |= PatternKey{1} << i;
    return key;
}

PatternDistribution PatternDistribution::point(std::vector<int> support, PatternKey key) {
    check_support(support);
    PatternDistribution d;
    d.support_ = std::move(support);
    d.entries_ = {{key, 1.0}};
    return d;
}

PatternDistribution PatternDistribution::from_entries(
    std::vector<int> support, std::vector<std::pair<PatternKey, double>> entries,
    bool renormalize) {
    check_support(support);
    std::unordered_map<PatternKey, double> acc;
    for (auto [k, p] : entries) {
        if (p < 0.0) throw InputError("pattern distribution: negative probability");
        acc[k] += p;
    }
    PatternDistribution d;
    d.support_ = std::move(support);
    d.entries_ = sorted_entries(std::move(acc));
    double sum = d.total();
    if (renormalize) {
        if (sum <= 0.0) throw InputError("pattern distribution: zero total probability");
        for (auto& [k, p] : d.entries_) p /= sum;
    } else if (std::abs(sum - 1.0) > kNormalizationTol) {
        throw InputError("pattern distribution: probabilities sum to " + std::to_string(sum));
    }
    return d;
}

double PatternDistribution::probability_of(PatternKey key) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), key,
                               [](const auto& e, PatternKey k) { return e.first < k; });
    return (it != entries_.end() && it->first == key) ? it->second : 0.0;
}

double PatternDistribution::total() const {
    double s = 0.0;
    for (const auto& [k, p] : entries_) s += p;
    return s;
}

PatternDistribution PatternDistribution::restricted(std::span<const int> sub) const {
    const auto pos = subset_positions(support_, sub);
    std::unordered_map<PatternKey, double> acc;
    for (const auto& [k, p] : entries_) acc[gather_bits(k, pos)] += p;
    PatternDistribution d;
    d.support_.assign(sub.begin(), sub.end());
    check_support(d.support_);
    d.entries_ = sorted_entries(std::move(acc));
    return d;
}

std::pair<double, PatternDistribution> PatternDistribution::conditioned(
    std::span<const int> sub, PatternKey value) const {
    const auto pos = subset_positions(support_, sub);
    std::vector<int> rest;
    std::vector<int> rest_pos;
    {
        std::size_t j = 0;
        for (std::size_t i = 0; i < support_.size(); ++i) {
            if (j < pos.size() && static_cast<int>(i) == pos[j]) {
                ++j;
            } else {
                rest.push_back(support_[i]);
                rest_pos.push_back(static_cast<int>(i));
            }
        }
    }

    double p_value = 0.0;
    std::unordered_map<PatternKey, double> acc;
    for (const auto& [k, p] : entries_) {
        if (gather_bits(k, pos) != value) continue;
        p_value += p;
        acc[gather_bits(k, rest_pos)] += p;
    }
    if (p_value <= 0.0) return {0.0, PatternDistribution{}};

    PatternDistribution cond;
    cond.support_ = std::move(rest);
    cond.entries_ = sorted_entries(std::move(acc));
    for (auto& [k, p] : cond.entries_) p /= p_value;
    return {p_value, cond};
}

PatternDistribution xor_convolve(const PatternDistribution& a, const PatternDistribution& b) {
    // Union support, ascending.
    std::vector<int> support;
    std::set_union(a.support().begin(), a.support().end(), b.support().begin(),
                   b.support().end(), std::back_inserter(support));
    if (support.size() > kMaxSupportBits)
        throw ResourceError("xor_convolve: union support wider than 64 qubits");

    // Scatter maps from operand bit positions to union positions.
    auto scatter = [&support](const std::vector<int>& sup) {
        std::vector<int> to;
        to.reserve(sup.size());
        for (int v : sup)
            to.push_back(static_cast<int>(
                std::lower_bound(support.begin(), support.end(), v) - support.begin()));
        return to;
    };
    const auto sa = scatter(a.support());
    const auto sb = scatter(b.support());
    auto spread = [](PatternKey k, const std::vector<int>& to) {
        PatternKey out = 0;
        for (std::size_t i = 0; i < to.size(); ++i) out |= ((k >> i) & 1u) << to[i];
        return out;
    };

    std::unordered_map<PatternKey, double> acc;
    for (const auto& [ka, pa] : a.entries()) {
        const PatternKey xa = spread(ka, sa);
        for (const auto& [kb, pb] : b.entries()) acc[xa ^ spread(kb, sb)] += pa * pb;
    }

    std::vector<std::pair<PatternKey, double>> entries;
    entries.reserve(acc.size());
    for (auto [k, p] : acc)
        if (p >= kPruneTol) entries.push_back({k, p});
    return PatternDistribution::from_entries(std::move(support), std::move(entries),
                                             /*renormalize=*/true);
}

}  // namespace gsent
