#include "gsent/channels.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "gsent/errors.hpp"

namespace gsent {

namespace {

void check_probability(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0))
        throw InputError(std::string(what) + ": probability " + std::to_string(p) +
                         " outside [0,1]");
}

void check_channel(const SingleQubitPauliChannel& c) {
    double sum = 0.0;
    for (double v : c.p) {
        if (v < 0.0) throw InputError("pauli channel: negative letter probability");
        sum += v;
    }
    if (std::abs(sum - 1.0) > kNormalizationTol)
        throw InputError("pauli channel: letter probabilities sum to " + std::to_string(sum));
}

}  // namespace

SingleQubitPauliChannel SingleQubitPauliChannel::depolarizing(double p) {
    check_probability(p, "depolarizing");
    return {1.0 - 3.0 * p / 4.0, p / 4.0, p / 4.0, p / 4.0};
}

SingleQubitPauliChannel SingleQubitPauliChannel::dephasing(double p) {
    check_probability(p, "dephasing");
    return {1.0 - p / 2.0, 0.0, 0.0, p / 2.0};
}

SingleQubitPauliChannel SingleQubitPauliChannel::bit_flip(double p) {
    check_probability(p, "bit_flip");
    return {1.0 - p / 2.0, p / 2.0, 0.0, 0.0};
}

SingleQubitPauliChannel SingleQubitPauliChannel::make(double pi, double px, double py,
                                                      double pz) {
    SingleQubitPauliChannel c{pi, px, py, pz};
    check_channel(c);
    return c;
}

PauliMapSpec PauliMapSpec::individual(std::vector<SingleQubitPauliChannel> channels) {
    if (channels.empty()) throw InputError("pauli map: empty channel list");
    for (const auto& c : channels) check_channel(c);
    PauliMapSpec m;
    m.kind_ = Kind::Individual;
    m.channels_ = std::move(channels);
    return m;
}

PauliMapSpec PauliMapSpec::uniform(int n, const SingleQubitPauliChannel& channel) {
    return individual(std::vector<SingleQubitPauliChannel>(n, channel));
}

PauliMapSpec PauliMapSpec::explicit_kraus(std::vector<std::pair<double, PauliString>> terms,
                                          std::size_t max_terms) {
    if (terms.empty()) throw InputError("pauli map: empty Kraus list");
    if (terms.size() > max_terms)
        throw ResourceError("pauli map: Kraus list length " + std::to_string(terms.size()) +
                            " exceeds limit " + std::to_string(max_terms));
    const std::size_t n = terms.front().second.size();
    double sum = 0.0;
    for (const auto& [p, s] : terms) {
        if (p < 0.0) throw InputError("pauli map: negative Kraus probability");
        if (s.size() != n) throw InputError("pauli map: Kraus strings of unequal length");
        sum += p;
    }
    if (std::abs(sum - 1.0) > kNormalizationTol)
        throw InputError("pauli map: Kraus probabilities sum to " + std::to_string(sum));
    PauliMapSpec m;
    m.kind_ = Kind::Explicit;
    m.kraus_ = std::move(terms);
    return m;
}

int PauliMapSpec::qubit_count() const {
    return kind_ == Kind::Individual ? static_cast<int>(channels_.size())
                                     : static_cast<int>(kraus_.front().second.size());
}

PatternDistribution induced_pattern_distribution(const Graph& graph, const PauliMapSpec& map,
                                                 std::span<const int> support) {
    const int n = graph.vertex_count();
    if (map.qubit_count() != n)
        throw InputError("induced_pattern_distribution: map acts on " +
                         std::to_string(map.qubit_count()) + " qubits, graph has " +
                         std::to_string(n));
    for (int v : support)
        if (v < 0 || v >= n)
            throw InputError("induced_pattern_distribution: support vertex out of range");
    std::vector<int> sup(support.begin(), support.end());

    if (map.kind() == PauliMapSpec::Kind::Explicit) {
        std::vector<std::pair<PatternKey, double>> entries;
        entries.reserve(map.kraus().size());
        for (const auto& [p, s] : map.kraus())
            entries.push_back({key_from_bitvec(z_image(graph, s), sup), p});
        return PatternDistribution::from_entries(std::move(sup), std::move(entries));
    }

    // Individual: convolve per-qubit letter images. Qubits whose letters never
    // touch the support contribute the identity and are skipped, which keeps
    // the result bit-for-bit independent of uninvolved parts of the graph.
    PatternDistribution result = PatternDistribution::point(sup);
    for (int k = 0; k < n; ++k) {
        const auto& ch = map.channels()[k];
        PatternKey keys[4];
        bool touches = false;
        for (int l = 0; l < 4; ++l) {
            keys[l] = z_image_on_support(graph, k, static_cast<Pauli>(l), sup);
            if (keys[l] != 0 && ch.p[l] > 0.0) touches = true;
        }
        if (!touches) continue;
        std::vector<std::pair<PatternKey, double>> entries;
        for (int l = 0; l < 4; ++l)
            if (ch.p[l] > 0.0) entries.push_back({keys[l], ch.p[l]});
        result = xor_convolve(result,
                              PatternDistribution::from_entries(sup, std::move(entries)));
    }
    return result;
}

PatternDistribution joint_boundary_distribution(const Graph& graph,
                                                const BoundaryDecomposition& decomposition,
                                                const PauliMapSpec& map) {
    std::vector<int> support;
    std::merge(decomposition.boundary_qubits.begin(), decomposition.boundary_qubits.end(),
               decomposition.relevant_delta_support.begin(),
               decomposition.relevant_delta_support.end(), std::back_inserter(support));
    return induced_pattern_distribution(graph, map, support);
}

PauliMapSpec ChannelSpec::instantiate(int n, std::optional<double> sweep_p) const {
    if (family == Family::Explicit) {
        std::vector<std::pair<double, PauliString>> terms;
        terms.reserve(kraus.size());
        for (const auto& [prob, letters] : kraus) {
            PauliString s = parse_pauli_string(letters);
            if (static_cast<int>(s.size()) != n)
                throw InputError("channel config: Kraus string length " +
                                 std::to_string(s.size()) + " does not match n=" +
                                 std::to_string(n));
            terms.push_back({prob, std::move(s)});
        }
        return PauliMapSpec::explicit_kraus(std::move(terms));
    }

    auto make = [this](double q) {
        switch (family) {
            case Family::Depolarizing: return SingleQubitPauliChannel::depolarizing(q);
            case Family::Dephasing: return SingleQubitPauliChannel::dephasing(q);
            case Family::BitFlip: return SingleQubitPauliChannel::bit_flip(q);
            default: throw InputError("channel config: bad family");
        }
    };

    if (p_per_qubit) {
        if (static_cast<int>(p_per_qubit->size()) != n)
            throw InputError("channel config: p_per_qubit lists " +
                             std::to_string(p_per_qubit->size()) + " values for n=" +
                             std::to_string(n));
        const double scale = sweep_p.value_or(1.0);
        std::vector<SingleQubitPauliChannel> chans;
        chans.reserve(n);
        for (double q : *p_per_qubit) chans.push_back(make(std::clamp(scale * q, 0.0, 1.0)));
        return PauliMapSpec::individual(std::move(chans));
    }

    const double q = sweep_p ? *sweep_p : p.value_or(0.0);
    return PauliMapSpec::uniform(n, make(q));
}

ChannelSpec ChannelSpec::named(Family family, double p) {
    ChannelSpec s;
    s.family = family;
    s.p = p;
    return s;
}

namespace {

std::string strip(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

[[noreturn]] void parse_fail(const std::string& filename, int line, const std::string& msg) {
    throw InputError(filename + ":" + std::to_string(line) + ": " + msg);
}

std::vector<double> parse_double_list(const std::string& body, const std::string& filename,
                                      int line) {
    std::vector<double> out;
    std::string item;
    std::stringstream ss(body);
    while (std::getline(ss, item, ',')) {
        item = strip(item);
        if (item.empty()) continue;
        try {
            out.push_back(std::stod(item));
        } catch (...) {
            parse_fail(filename, line, "expected a number, got '" + item + "'");
        }
    }
    return out;
}

// Entries of the form (prob, "LETTERS") separated by commas.
std::vector<std::pair<double, std::string>> parse_kraus_list(const std::string& body,
                                                             const std::string& filename,
                                                             int line) {
    std::vector<std::pair<double, std::string>> out;
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < body.size() && (body[i] == ' ' || body[i] == '\t' || body[i] == ','))
            ++i;
    };
    skip_ws();
    while (i < body.size()) {
        if (body[i] != '(') parse_fail(filename, line, "expected '(' in kraus list");
        auto close = body.find(')', i);
        if (close == std::string::npos) parse_fail(filename, line, "unclosed '(' in kraus list");
        std::string inner = body.substr(i + 1, close - i - 1);
        auto comma = inner.find(',');
        if (comma == std::string::npos)
            parse_fail(filename, line, "kraus entry needs (prob, \"letters\")");
        double prob = 0.0;
        try {
            prob = std::stod(strip(inner.substr(0, comma)));
        } catch (...) {
            parse_fail(filename, line, "bad kraus probability");
        }
        std::string letters = strip(inner.substr(comma + 1));
        if (letters.size() >= 2 && letters.front() == '"' && letters.back() == '"')
            letters = letters.substr(1, letters.size() - 2);
        if (letters.empty()) parse_fail(filename, line, "empty kraus string");
        out.push_back({prob, letters});
        i = close + 1;
        skip_ws();
    }
    return out;
}

}  // namespace

ChannelSpec parse_channel_config(std::istream& in, const std::string& filename) {
    ChannelSpec spec;
    bool family_seen = false;
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        std::string line = strip(raw);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) parse_fail(filename, lineno, "expected key = value");
        std::string key = strip(line.substr(0, eq));
        std::string value = strip(line.substr(eq + 1));

        if (key == "channel") {
            family_seen = true;
            if (value == "depolarizing")
                spec.family = ChannelSpec::Family::Depolarizing;
            else if (value == "dephasing")
                spec.family = ChannelSpec::Family::Dephasing;
            else if (value == "bitflip")
                spec.family = ChannelSpec::Family::BitFlip;
            else if (value == "explicit")
                spec.family = ChannelSpec::Family::Explicit;
            else
                parse_fail(filename, lineno, "unknown channel '" + value + "'");
        } else if (key == "p") {
            try {
                spec.p = std::stod(value);
            } catch (...) {
                parse_fail(filename, lineno, "bad value for p");
            }
        } else if (key == "p_per_qubit") {
            if (value.size() < 2 || value.front() != '[' || value.back() != ']')
                parse_fail(filename, lineno, "p_per_qubit expects [ ... ]");
            spec.p_per_qubit = parse_double_list(value.substr(1, value.size() - 2), filename,
                                                 lineno);
        } else if (key == "kraus") {
            if (value.size() < 2 || value.front() != '[' || value.back() != ']')
                parse_fail(filename, lineno, "kraus expects [ ... ]");
            spec.kraus = parse_kraus_list(value.substr(1, value.size() - 2), filename, lineno);
        } else {
            parse_fail(filename, lineno, "unknown key '" + key + "'");
        }
    }
    if (!family_seen) throw InputError(filename + ": missing 'channel =' line");
    if (spec.family == ChannelSpec::Family::Explicit && spec.kraus.empty())
        throw InputError(filename + ": explicit channel without a kraus list");
    return spec;
}

ChannelSpec load_channel_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open channel config '" + path + "'");
    return parse_channel_config(in, path);
}

}  // namespace gsent
