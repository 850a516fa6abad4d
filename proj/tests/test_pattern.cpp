#include <doctest.h>

#include <cmath>

#include "gsent/errors.hpp"
#include "gsent/pattern.hpp"
#include "gsent/pauli.hpp"
#include "test_util.hpp"

using namespace gsent;

namespace {

PatternDistribution dist(std::vector<int> support,
                         std::vector<std::pair<PatternKey, double>> entries) {
    return PatternDistribution::from_entries(std::move(support), std::move(entries));
}

PatternDistribution random_dist(testutil::Rng& rng, std::vector<int> support) {
    const std::uint64_t dim = std::uint64_t{1} << support.size();
    std::vector<std::pair<PatternKey, double>> entries;
    double sum = 0.0;
    for (std::uint64_t k = 0; k < dim; ++k) {
        if (rng.uniform() < 0.4) continue;
        const double w = rng.uniform();
        entries.push_back({k, w});
        sum += w;
    }
    if (entries.empty()) entries.push_back({0, sum = 1.0});
    for (auto& [k, p] : entries) p /= sum;
    return PatternDistribution::from_entries(std::move(support), std::move(entries), true);
}

bool approx_equal(const PatternDistribution& a, const PatternDistribution& b, double tol) {
    if (a.support() != b.support()) return false;
    const std::uint64_t dim = std::uint64_t{1} << a.support().size();
    for (std::uint64_t k = 0; k < dim; ++k)
        if (std::abs(a.probability_of(k) - b.probability_of(k)) > tol) return false;
    return true;
}

}  // namespace

TEST_CASE("distribution construction enforces the invariants") {
    CHECK_THROWS_AS(dist({0}, {{0, 0.5}, {1, 0.6}}), InputError);   // sums to 1.1
    CHECK_THROWS_AS(dist({0}, {{0, 1.5}, {1, -0.5}}), InputError);  // negative
    CHECK_THROWS_AS(dist({1, 0}, {{0, 1.0}}), InputError);          // unsorted support
    auto d = dist({2, 5}, {{0, 0.25}, {1, 0.25}, {1, 0.25}, {3, 0.25}});
    CHECK(d.size() == 3);  // duplicate keys merged
    CHECK(d.probability_of(1) == doctest::Approx(0.5));
}

TEST_CASE("xor_convolve: point mass at zero is the identity") {
    testutil::Rng rng(5);
    auto b = random_dist(rng, {0, 1, 2});
    auto c = xor_convolve(PatternDistribution::point({0, 1, 2}), b);
    CHECK(approx_equal(b, c, 1e-15));
}

TEST_CASE("xor_convolve: equal two-point distributions stay fixed") {
    auto a = dist({1}, {{0, 0.5}, {1, 0.5}});
    auto c = xor_convolve(a, a);
    CHECK(c.probability_of(0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(c.probability_of(1) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("xor_convolve of independent bits, enumerated by hand") {
    // {0:0.9, bit1:0.1} x {0:0.8, bit2:0.2}: four products
    // 0.72, 0.08 (bit1), 0.18 (bit2), 0.02 (both).
    auto a = dist({1}, {{0, 0.9}, {1, 0.1}});
    auto b = dist({2}, {{0, 0.8}, {1, 0.2}});
    auto c = xor_convolve(a, b);
    CHECK(c.support() == std::vector<int>{1, 2});
    CHECK(c.probability_of(0b00) == doctest::Approx(0.72).epsilon(1e-12));
    CHECK(c.probability_of(0b01) == doctest::Approx(0.08).epsilon(1e-12));
    CHECK(c.probability_of(0b10) == doctest::Approx(0.18).epsilon(1e-12));
    CHECK(c.probability_of(0b11) == doctest::Approx(0.02).epsilon(1e-12));
}

TEST_CASE("xor_convolve is commutative and associative") {
    testutil::Rng rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        auto a = random_dist(rng, {0, 2});
        auto b = random_dist(rng, {1, 2});
        auto c = random_dist(rng, {0, 3});
        CHECK(approx_equal(xor_convolve(a, b), xor_convolve(b, a), 1e-12));
        CHECK(approx_equal(xor_convolve(xor_convolve(a, b), c),
                           xor_convolve(a, xor_convolve(b, c)), 1e-12));
    }
}

TEST_CASE("restrict: marginals of the two-bit product") {
    auto c = xor_convolve(dist({1}, {{0, 0.9}, {1, 0.1}}), dist({2}, {{0, 0.8}, {1, 0.2}}));
    auto m = c.restricted(std::vector<int>{1});
    CHECK(m.probability_of(0) == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(m.probability_of(1) == doctest::Approx(0.1).epsilon(1e-12));

    auto full = c.restricted(std::vector<int>{1, 2});
    CHECK(approx_equal(full, c, 1e-15));

    auto nothing = c.restricted(std::vector<int>{});
    CHECK(nothing.support().empty());
    CHECK(nothing.probability_of(0) == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(c.restricted(std::vector<int>{3}), InputError);
}

TEST_CASE("condition: Bayes on the four-entry table") {
    auto c = xor_convolve(dist({1}, {{0, 0.9}, {1, 0.1}}), dist({2}, {{0, 0.8}, {1, 0.2}}));
    auto [p0, cond] = c.conditioned(std::vector<int>{2}, 0);
    CHECK(p0 == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(cond.support() == std::vector<int>{1});
    CHECK(cond.probability_of(0) == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(cond.probability_of(1) == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("condition on the full support leaves a unit point mass") {
    auto d = dist({0, 1}, {{0, 0.25}, {1, 0.75}});
    auto [p, cond] = d.conditioned(std::vector<int>{0, 1}, 1);
    CHECK(p == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(cond.support().empty());
    CHECK(cond.probability_of(0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("condition with zero probability returns an empty distribution") {
    auto d = dist({0, 1}, {{0, 0.5}, {3, 0.5}});
    auto [p, cond] = d.conditioned(std::vector<int>{0}, 1);
    CHECK(p == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(cond.probability_of(1) == doctest::Approx(1.0).epsilon(1e-12));

    auto [pz, condz] = dist({0, 1}, {{0, 1.0}}).conditioned(std::vector<int>{0}, 1);
    CHECK(pz == 0.0);
    CHECK(condz.entries().empty());
}

TEST_CASE("conditioning independent bits reproduces the marginal") {
    auto c = xor_convolve(dist({1}, {{0, 0.9}, {1, 0.1}}), dist({2}, {{0, 0.8}, {1, 0.2}}));
    for (PatternKey v : {PatternKey{0}, PatternKey{1}}) {
        auto [p, cond] = c.conditioned(std::vector<int>{2}, v);
        CHECK(cond.probability_of(0) == doctest::Approx(0.9).epsilon(1e-12));
    }
}

TEST_CASE("law of total probability holds exactly") {
    testutil::Rng rng(29);
    for (int trial = 0; trial < 20; ++trial) {
        auto d = random_dist(rng, {0, 1, 4, 6});
        const std::vector<int> sub = {1, 6};
        const std::vector<int> rest = {0, 4};
        auto marginal = d.restricted(rest);
        // Accumulate sum_value p(value) * conditional.
        std::vector<double> mix(4, 0.0);
        double total = 0.0;
        for (PatternKey v = 0; v < 4; ++v) {
            auto [p, cond] = d.conditioned(sub, v);
            total += p;
            for (PatternKey k = 0; k < 4; ++k) mix[k] += p * cond.probability_of(k);
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
        for (PatternKey k = 0; k < 4; ++k)
            CHECK(mix[k] == doctest::Approx(marginal.probability_of(k)).epsilon(1e-12));
    }
}

TEST_CASE("entry count never exceeds the support size bound") {
    testutil::Rng rng(37);
    auto a = random_dist(rng, {0, 1, 2});
    auto b = random_dist(rng, {1, 2, 3});
    auto c = xor_convolve(a, b);
    CHECK(c.size() <= (std::size_t{1} << c.support().size()));
}

TEST_CASE("z_image follows the rewrite rule") {
    Graph path2 = Graph::path(2);
    CHECK(z_image(path2, parse_pauli_string("XI")).to_string() == "01");
    CHECK(z_image(path2, parse_pauli_string("IZ")).to_string() == "01");
    CHECK(z_image(path2, parse_pauli_string("ZI")).to_string() == "10");

    Graph path3 = Graph::path(3);
    CHECK(z_image(path3, parse_pauli_string("IYI")).to_string() == "111");

    Graph star = Graph::star(4);
    CHECK(z_image(star, parse_pauli_string("XIII")).to_string() == "0111");

    CHECK_THROWS_AS(z_image(path2, parse_pauli_string("XIX")), InputError);
}

TEST_CASE("z_image is GF(2)-linear in the letter group") {
    // Letters form the Klein group under phase-free multiplication; encode
    // I,X,Y,Z as (x,z) bit pairs and compose by xor.
    auto compose = [](Pauli a, Pauli b) {
        auto xz = [](Pauli p) -> std::pair<int, int> {
            switch (p) {
                case Pauli::I: return {0, 0};
                case Pauli::X: return {1, 0};
                case Pauli::Y: return {1, 1};
                default: return {0, 1};
            }
        };
        auto [ax, az] = xz(a);
        auto [bx, bz] = xz(b);
        const int x = ax ^ bx, z = az ^ bz;
        if (x && z) return Pauli::Y;
        if (x) return Pauli::X;
        if (z) return Pauli::Z;
        return Pauli::I;
    };

    testutil::Rng rng(41);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(6));
        Graph g = testutil::random_connected_graph(rng, n, 0.4);
        PauliString p(n), q(n), pq(n);
        for (int k = 0; k < n; ++k) {
            p[k] = static_cast<Pauli>(rng.below(4));
            q[k] = static_cast<Pauli>(rng.below(4));
            pq[k] = compose(p[k], q[k]);
        }
        CHECK(z_image(g, pq) == (z_image(g, p) ^ z_image(g, q)));
    }
}

TEST_CASE("pauli string parsing") {
    CHECK(to_string(parse_pauli_string("IXYZ")) == "IXYZ");
    CHECK(to_string(parse_pauli_string("ixyz")) == "IXYZ");
    CHECK_THROWS_AS(parse_pauli_string("IXQ"), InputError);
}
