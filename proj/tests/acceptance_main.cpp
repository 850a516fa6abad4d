// Acceptance suite: one line per criterion, nonzero exit on any failure.
//
// Random instances are drawn from fixed seeds so reruns are bit-identical.

#include <unistd.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gsent/cli.hpp"
#include "gsent/evolution.hpp"
#include "gsent/graph_io.hpp"
#include "gsent/oracle.hpp"
#include "test_util.hpp"

using namespace gsent;
using testutil::Rng;

namespace {

int g_failures = 0;

void report(int id, const std::string& title, bool pass, const std::string& detail) {
    std::printf("criterion %d: %-58s %s  (%s)\n", id, title.c_str(), pass ? "PASS" : "FAIL",
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

struct Instance {
    Graph graph;
    Partition partition;
    PauliMapSpec map;
};

// Connected graph, proper bipartition, per-qubit letter probabilities on the
// simplex. Half of the draws are biased toward weak noise so the compared
// values are far from zero.
std::vector<Instance> draw_instances(Rng& rng, int count, int n_min, int n_max) {
    std::vector<Instance> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        const int n = n_min + static_cast<int>(rng.below(n_max - n_min + 1));
        Graph g = testutil::random_connected_graph(rng, n, 0.25);
        Partition part = testutil::random_bipartition(rng, n);
        std::vector<SingleQubitPauliChannel> ch;
        const bool weak = (i % 2) == 1;
        for (int k = 0; k < n; ++k) {
            if (weak) {
                ch.push_back(testutil::random_channel(rng, 0.5));
            } else {
                double w[4];
                double sum = 0.0;
                for (double& x : w) {
                    x = -std::log(rng.uniform() + 1e-300);
                    sum += x;
                }
                ch.push_back(
                    SingleQubitPauliChannel::make(w[0] / sum, w[1] / sum, w[2] / sum, w[3] / sum));
            }
        }
        out.push_back({std::move(g), std::move(part), PauliMapSpec::individual(std::move(ch))});
    }
    return out;
}

Dense oracle_evolved(const Instance& inst) {
    Dense rho = oracle::density_from_state(oracle::graph_state_vector(inst.graph));
    return oracle::apply_pauli_map_dense(rho, inst.map);
}

void criterion_1_and_3_and_6(const std::vector<Instance>& instances) {
    const auto q = QuantifierSpec::negativity_of_parts({0});

    double max_dev_oracle = 0.0;    // criterion 1
    double max_excess_bound = 0.0;  // criterion 3 (sandwich part)
    double max_dev_shell = 0.0;     // criterion 6
    int shell_violations = 0;

    for (const auto& inst : instances) {
        const double exact = exact_entanglement(inst.graph, inst.partition, inst.map, q).value;
        const double dense =
            oracle::dense_negativity(oracle_evolved(inst), inst.partition, q.grouping);
        max_dev_oracle = std::max(max_dev_oracle, std::abs(exact - dense));

        const double bound =
            lower_bound_entanglement(inst.graph, inst.partition, inst.map, q).value;
        max_excess_bound = std::max(max_excess_bound, bound - exact);

        const double shell = exact_entanglement(inst.graph, inst.partition, inst.map, q,
                                                DeltaSupport::RelevantShell)
                                 .value;
        const double full = exact_entanglement(inst.graph, inst.partition, inst.map, q,
                                               DeltaSupport::AllNonBoundary)
                                .value;
        const double dev = std::abs(shell - full);
        max_dev_shell = std::max(max_dev_shell, dev);
        if (dev > 1e-10) ++shell_violations;
    }

    report(1, "exact boundary average equals the dense oracle (1e-8)", max_dev_oracle <= 1e-8,
           std::to_string(instances.size()) + " instances, max |delta| = " + fmt(max_dev_oracle));

    // Criterion 3, byte-identity part: bound CSVs for linear clusters of 4, 7
    // and 10 qubits, first versus rest.
    bool byte_identical = true;
    {
        namespace fs = std::filesystem;
        const fs::path dir =
            fs::temp_directory_path() / ("gsent_acceptance_" + std::to_string(::getpid()));
        fs::create_directories(dir);
        std::string csv[3];
        int idx = 0;
        for (int n : {4, 7, 10}) {
            std::ostringstream gtxt;
            gtxt << "n " << n << "\n";
            for (int i = 1; i < n; ++i) gtxt << "e " << i << " " << i + 1 << "\n";
            const fs::path gpath = dir / ("lc" + std::to_string(n) + ".txt");
            std::ofstream(gpath) << gtxt.str();
            cli::RunConfig cfg;
            cfg.graph_path = gpath.string();
            cfg.partition_spec = "1";
            cfg.quantifier = QuantifierSpec::eof2();
            cfg.steps = 101;
            csv[idx++] = cli::render_bound_csv(cfg);
        }
        byte_identical = (csv[0] == csv[1]) && (csv[1] == csv[2]);
        fs::remove_all(dir);
    }
    report(3, "flag-discarded bound: sandwich (1e-9) and size independence",
           max_excess_bound <= 1e-9 && byte_identical,
           "max bound-exact = " + fmt(max_excess_bound) +
               (byte_identical ? ", N=4/7/10 CSVs byte-identical" : ", N=4/7/10 CSVs DIFFER"));

    report(6, "distance-2 flag support reproduces the full average (1e-10)",
           max_dev_shell <= 1e-10,
           std::to_string(shell_violations) + " of " + std::to_string(instances.size()) +
               " instances deviate, max |delta| = " + fmt(max_dev_shell));
}

void criterion_2(Rng rng) {
    double max_diag_dev = 0.0;
    double max_offdiag = 0.0;
    const int count = 50;
    for (int i = 0; i < count; ++i) {
        const int n = 2 + static_cast<int>(rng.below(5));  // up to 6
        Graph g = testutil::random_connected_graph(rng, n, 0.3);
        auto map = testutil::random_individual_map(rng, n);
        Dense rho = oracle::apply_pauli_map_dense(
            oracle::density_from_state(oracle::graph_state_vector(g)), map);

        std::vector<int> all(n);
        for (int v = 0; v < n; ++v) all[v] = v;
        auto induced = induced_pattern_distribution(g, map, all);

        const std::uint64_t dim = std::uint64_t{1} << n;
        std::vector<oracle::StateVector> basis;
        basis.reserve(dim);
        for (std::uint64_t mu = 0; mu < dim; ++mu) {
            BitVec pattern(n);
            for (int k = 0; k < n; ++k)
                if ((mu >> k) & 1u) pattern.set(k);
            basis.push_back(oracle::graph_basis_vector(g, pattern));
        }
        std::vector<oracle::StateVector> rho_basis;
        rho_basis.reserve(dim);
        for (std::uint64_t mu = 0; mu < dim; ++mu) rho_basis.push_back(rho * basis[mu]);

        for (std::uint64_t mu = 0; mu < dim; ++mu) {
            const double diag = (basis[mu].adjoint() * rho_basis[mu])(0, 0).real();
            max_diag_dev = std::max(max_diag_dev, std::abs(diag - induced.probability_of(mu)));
            for (std::uint64_t nu = mu + 1; nu < dim; ++nu)
                max_offdiag =
                    std::max(max_offdiag, std::abs((basis[mu].adjoint() * rho_basis[nu])(0, 0)));
        }
    }
    report(2, "graph-basis rewrite: overlaps (1e-10), off-diagonals (1e-12)",
           max_diag_dev <= 1e-10 && max_offdiag <= 1e-12,
           std::to_string(count) + " instances, max diag dev = " + fmt(max_diag_dev) +
               ", max offdiag = " + fmt(max_offdiag));
}

void criterion_4() {
    cli::RunConfig cfg;
    cfg.steps = 101;
    const std::string csv = cli::render_fig2_csv(cfg);

    std::vector<std::array<double, 5>> rows;
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line[0] == 'p') continue;
        std::array<double, 5> row{};
        std::istringstream ls(line);
        std::string cell;
        for (int c = 0; c < 5; ++c) {
            std::getline(ls, cell, ',');
            row[c] = std::stod(cell);
        }
        rows.push_back(row);
    }

    bool ok = rows.size() == 101;
    std::string why = ok ? "" : "wrong row count";
    for (int c = 1; c <= 3 && ok; ++c) {
        if (std::abs(rows.front()[c] - 1.0) > 1e-9) {
            ok = false;
            why = "EoF(0) != 1";
        }
        if (std::abs(rows.back()[c]) > 1e-9) {
            ok = false;
            why = "EoF(1) != 0";
        }
        for (std::size_t i = 1; i < rows.size() && ok; ++i)
            if (rows[i][c] > rows[i - 1][c] + 1e-9) {
                ok = false;
                why = "curve increases";
            }
    }

    // The two-qubit column must equal the closed-form pipeline on the dense
    // oracle state at every grid point.
    double max_dev = 0.0;
    Graph g2 = Graph::path(2);
    const Dense rho0 = oracle::density_from_state(oracle::graph_state_vector(g2));
    for (std::size_t i = 0; i < rows.size() && ok; ++i) {
        const double p = rows[i][0];
        auto map = PauliMapSpec::uniform(2, SingleQubitPauliChannel::depolarizing(p));
        const double dense =
            eof_from_concurrence(concurrence(oracle::apply_pauli_map_dense(rho0, map)));
        // The CSV clamps below 1e-10 to zero; mirror that before comparing.
        const double clamped = dense < 1e-10 ? 0.0 : dense;
        max_dev = std::max(max_dev, std::abs(rows[i][1] - clamped));
    }
    if (ok && max_dev > 1e-9) {
        ok = false;
        why = "N=2 column deviates from the dense pipeline";
    }
    report(4, "fig2 endpoints, monotonicity, and N=2 closed form (1e-9)", ok,
           ok ? "101 points, N=2 max dev = " + fmt(max_dev) : why);
}

void criterion_5(Rng rng) {
    const int count = 50;
    double max_excess = 0.0;
    double max_norm_dev = 0.0;
    for (int i = 0; i < count; ++i) {
        const int n = 2 + static_cast<int>(rng.below(3));  // up to 4
        Graph g = testutil::random_connected_graph(rng, n, 0.4);
        Dense rho = oracle::density_from_state(testutil::random_pure_state(rng, 1 << n));
        auto s = twirl_to_graph_diagonal(rho, g);
        max_norm_dev = std::max(max_norm_dev, std::abs(s.dist.total() - 1.0));

        Dense twirled = Dense::Zero(1 << n, 1 << n);
        for (const auto& [k, p] : s.dist.entries()) {
            BitVec pattern(n);
            for (int v = 0; v < n; ++v)
                if ((k >> v) & 1u) pattern.set(v);
            twirled += p * oracle::density_from_state(oracle::graph_basis_vector(g, pattern));
        }
        const std::uint64_t full = (std::uint64_t{1} << n) - 1;
        for (std::uint64_t mask = 1; mask < full; ++mask) {
            std::vector<int> labels(n);
            for (int v = 0; v < n; ++v) labels[v] = (mask >> v) & 1 ? 0 : 1;
            Partition part(labels);
            const double before = oracle::dense_negativity(rho, part, std::vector<int>{0});
            const double after = oracle::dense_negativity(twirled, part, std::vector<int>{0});
            max_excess = std::max(max_excess, after - before);
        }
    }
    report(5, "twirling: LOCC monotonicity (1e-9) and normalization (1e-12)",
           max_excess <= 1e-9 && max_norm_dev <= 1e-12,
           std::to_string(count) + " states, max excess = " + fmt(max_excess) +
               ", max norm dev = " + fmt(max_norm_dev));
}

void criterion_7(Rng rng) {
    double max_dev = 0.0;
    long checks = 0;

    auto check_graph = [&](const Graph& g) {
        const int n = g.vertex_count();
        const Dense rho = oracle::density_from_state(oracle::graph_state_vector(g));
        const std::uint64_t full = (std::uint64_t{1} << n) - 1;
        for (std::uint64_t mask = 1; mask < full; ++mask) {
            if ((mask & 1u) == 0) continue;  // cuts are unordered: fix vertex 0 on side A
            std::vector<int> labels(n);
            for (int v = 0; v < n; ++v) labels[v] = (mask >> v) & 1 ? 0 : 1;
            Partition part(labels);
            const int r = gf2_cut_rank(g, part);
            const double neg = oracle::dense_negativity(rho, part, std::vector<int>{0});
            max_dev = std::max(max_dev, std::abs(neg - ((1 << r) - 1) / 2.0));
            ++checks;
        }
    };

    // Every labeled graph up to 5 vertices.
    for (int n = 2; n <= 5; ++n) {
        const int pairs = n * (n - 1) / 2;
        for (std::uint64_t code = 0; code < (std::uint64_t{1} << pairs); ++code) {
            std::vector<Edge> edges;
            int bit = 0;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j, ++bit)
                    if ((code >> bit) & 1u) edges.push_back({i, j});
            check_graph(Graph(n, edges));
        }
    }
    // Named families and random samples at 6 and 7 vertices.
    for (int n : {6, 7}) {
        check_graph(Graph::path(n));
        check_graph(Graph::cycle(n));
        check_graph(Graph::complete(n));
        check_graph(Graph::star(n));
        for (int i = 0; i < 40; ++i) check_graph(testutil::random_connected_graph(rng, n, 0.3));
    }

    report(7, "pure-state negativity equals (2^rank - 1)/2 (1e-9)", max_dev <= 1e-9,
           std::to_string(checks) + " cuts, max |delta| = " + fmt(max_dev));
}

}  // namespace

int main() {
    Rng instance_rng(0xACCE551);
    const auto instances = draw_instances(instance_rng, 200, 3, 8);

    criterion_1_and_3_and_6(instances);
    criterion_2(Rng(0xACCE552));
    criterion_4();
    criterion_5(Rng(0xACCE553));
    criterion_7(Rng(0xACCE557));

    std::printf("%d of 7 criteria failed\n", g_failures);
    return g_failures;
}
