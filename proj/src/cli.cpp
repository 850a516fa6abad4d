#include "gsent/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "gsent/errors.hpp"
#include "gsent/evolution.hpp"
#include "gsent/graph_io.hpp"
#include "gsent/oracle.hpp"
#include "gsent/version.hpp"

namespace gsent::cli {

namespace {

constexpr double kOracleCheckTol = 1e-8;

std::string strip(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

std::vector<double> sweep_grid(const RunConfig& cfg) {
    if (cfg.steps < 1) throw InputError("sweep: steps must be >= 1");
    if (cfg.p_max < cfg.p_min) throw InputError("sweep: p_max below p_min");
    std::vector<double> grid;
    grid.reserve(cfg.steps);
    if (cfg.steps == 1) {
        grid.push_back(cfg.p_min);
    } else {
        for (int i = 0; i < cfg.steps; ++i)
            grid.push_back(cfg.p_min +
                           (cfg.p_max - cfg.p_min) * static_cast<double>(i) / (cfg.steps - 1));
    }
    return grid;
}

std::string fmt_p(double p) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", p);
    return buf;
}

// Values below the floor print as exactly 0 (eigenvalue noise would otherwise
// leak into disentanglement rows).
std::string fmt_value(double v) {
    if (std::abs(v) < kNegativityFloor) v = 0.0;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string fmt_exact_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Graph require_graph(const RunConfig& cfg) {
    if (cfg.graph_path.empty()) throw InputError("no graph file given (--graph or config)");
    return load_graph(cfg.graph_path);
}

Partition resolve_partition(const RunConfig& cfg, const Graph& g) {
    if (cfg.partition_spec.empty())
        throw InputError("no partition given (--partition or config)");
    if (cfg.partition_spec.find('|') != std::string::npos ||
        cfg.partition_spec.find(',') != std::string::npos)
        return parse_inline_partition(cfg.partition_spec, g.vertex_count());
    if (std::ifstream probe(cfg.partition_spec); probe)
        return load_partition(cfg.partition_spec, g.vertex_count());
    return parse_inline_partition(cfg.partition_spec, g.vertex_count());
}

const char* family_name(ChannelSpec::Family f) {
    switch (f) {
        case ChannelSpec::Family::Depolarizing: return "depolarizing";
        case ChannelSpec::Family::Dephasing: return "dephasing";
        case ChannelSpec::Family::BitFlip: return "bitflip";
        case ChannelSpec::Family::Explicit: return "explicit";
    }
    return "?";
}

void check_sweepable(const RunConfig& cfg) {
    if (!cfg.channel.is_swept() && cfg.steps != 1)
        throw InputError("explicit channels define no sweep parameter; set steps = 1");
}

std::string channel_descriptor(const ChannelSpec& ch) {
    std::ostringstream d;
    d << family_name(ch.family);
    if (ch.p) d << ";p=" << fmt_exact_double(*ch.p);
    if (ch.p_per_qubit) {
        d << ";per_qubit=";
        for (double v : *ch.p_per_qubit) d << fmt_exact_double(v) << ",";
    }
    for (const auto& [p, s] : ch.kraus) d << ";k=" << fmt_exact_double(p) << ":" << s;
    return d.str();
}

std::string grid_descriptor(const RunConfig& cfg) {
    std::ostringstream d;
    d << fmt_exact_double(cfg.p_min) << ":" << fmt_exact_double(cfg.p_max) << ":" << cfg.steps;
    return d.str();
}

std::string graph_descriptor(const Graph& g) {
    std::ostringstream d;
    d << "n=" << g.vertex_count();
    for (auto [i, j] : g.edges()) d << ";" << i << "-" << j;
    return d.str();
}

std::uint64_t side_mask_for(const BoundaryDecomposition& bd, const Partition& part,
                            const QuantifierSpec& q) {
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < bd.boundary_qubits.size(); ++i) {
        const int p = part.part_of(bd.boundary_qubits[i]);
        if (std::find(q.grouping.begin(), q.grouping.end(), p) != q.grouping.end())
            mask |= std::uint64_t{1} << i;
    }
    return mask;
}

// Canonical description of the boundary-marginal computation. Two graphs with
// the same boundary graph and the same channels on its closed neighborhood
// produce the same descriptor, so their bound CSVs hash and render alike no
// matter how many far-away qubits they carry.
std::string bound_descriptor(const Graph& g, const BoundaryDecomposition& bd,
                             const RunConfig& cfg, std::uint64_t side_mask) {
    std::ostringstream d;
    d << "bound;q=" << cfg.quantifier.id() << ";side=" << side_mask
      << ";grid=" << grid_descriptor(cfg) << ";family=" << family_name(cfg.channel.family);
    d << ";boundary=" << graph_descriptor(bd.boundary_graph);
    const auto& y = bd.boundary_qubits;
    if (cfg.channel.family == ChannelSpec::Family::Explicit) {
        for (const auto& [p, s] : cfg.channel.kraus) {
            PauliString str = parse_pauli_string(s);
            d << ";k=" << fmt_exact_double(p) << ":"
              << key_from_bitvec(z_image(g, str), y);
        }
        return d.str();
    }
    for (int k = 0; k < g.vertex_count(); ++k) {
        const auto kx = z_image_on_support(g, k, Pauli::X, y);
        const auto ky = z_image_on_support(g, k, Pauli::Y, y);
        const auto kz = z_image_on_support(g, k, Pauli::Z, y);
        if (!kx && !ky && !kz) continue;
        const double scale = cfg.channel.p_per_qubit ? (*cfg.channel.p_per_qubit)[k] : 1.0;
        d << ";f=" << kx << "," << ky << "," << kz << "@" << fmt_exact_double(scale);
    }
    return d.str();
}

std::string header(const std::string& command, std::uint64_t config_hash,
                   const std::string& extra = {}) {
    std::ostringstream h;
    char hash_hex[24];
    std::snprintf(hash_hex, sizeof hash_hex, "%016llx",
                  static_cast<unsigned long long>(config_hash));
    h << "# gsent " << kVersion << " " << command << "\n";
    h << "# config-hash " << hash_hex << "\n";
    if (!extra.empty()) h << "# " << extra << "\n";
    h << "# tolerances prune=1e-15 flag_skip=1e-14 output_floor=1e-10\n";
    return h.str();
}

void write_output(const RunConfig& cfg, const std::string& text) {
    if (cfg.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(cfg.out_path, std::ios::binary);
    if (!out) throw InputError("cannot open output file '" + cfg.out_path + "'");
    out << text;
}

void maybe_write_gnuplot(const RunConfig& cfg, const std::string& ylabel,
                         std::span<const std::pair<int, std::string>> columns) {
    if (!cfg.gnuplot || cfg.out_path.empty()) return;
    std::ofstream out(cfg.out_path + ".gp");
    if (!out) throw InputError("cannot open gnuplot script '" + cfg.out_path + ".gp'");
    out << "set datafile separator ','\n";
    out << "set xlabel 'p'\n";
    out << "set ylabel '" << ylabel << "'\n";
    out << "set key top right\n";
    out << "plot ";
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) out << ", \\\n     ";
        out << "'" << cfg.out_path << "' using 1:" << columns[i].first << " with lines title '"
            << columns[i].second << "'";
    }
    out << "\n";
}

struct SweepSetup {
    Graph graph;
    Partition partition;
    BoundaryDecomposition boundary;
    std::uint64_t side_mask;
    std::vector<double> grid;
};

SweepSetup prepare_sweep(const RunConfig& cfg) {
    Graph g = require_graph(cfg);
    Partition part = resolve_partition(cfg, g);
    BoundaryDecomposition bd = boundary_of(g, part);
    const std::uint64_t mask = side_mask_for(bd, part, cfg.quantifier);
    check_sweepable(cfg);
    return {std::move(g), std::move(part), std::move(bd), mask, sweep_grid(cfg)};
}

}  // namespace

std::uint64_t fnv1a(std::string_view data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open config file '" + path + "'");
    RunConfig cfg;
    std::string raw;
    int lineno = 0;
    auto fail = [&](const std::string& msg) {
        throw InputError(path + ":" + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, raw)) {
        ++lineno;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        std::string line = strip(raw);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) fail("expected key = value");
        const std::string key = strip(line.substr(0, eq));
        const std::string value = strip(line.substr(eq + 1));
        try {
            if (key == "graph")
                cfg.graph_path = value;
            else if (key == "partition")
                cfg.partition_spec = value;
            else if (key == "channel")
                apply_channel_string(cfg, value);
            else if (key == "channel_file")
                cfg.channel = load_channel_config(value);
            else if (key == "p")
                cfg.channel.p = std::stod(value);
            else if (key == "p_per_qubit") {
                std::istringstream ss(value.substr(1, value.size() - 2));
                std::vector<double> vals;
                std::string item;
                while (std::getline(ss, item, ',')) vals.push_back(std::stod(strip(item)));
                cfg.channel.p_per_qubit = std::move(vals);
            } else if (key == "kraus") {
                std::stringstream cfg_text;
                cfg_text << "channel = explicit\nkraus = " << value << "\n";
                ChannelSpec spec = parse_channel_config(cfg_text, path);
                cfg.channel.family = ChannelSpec::Family::Explicit;
                cfg.channel.kraus = std::move(spec.kraus);
            } else if (key == "quantifier")
                apply_quantifier_string(cfg, value);
            else if (key == "grouping")
                apply_grouping_string(cfg, value);
            else if (key == "p_min")
                cfg.p_min = std::stod(value);
            else if (key == "p_max")
                cfg.p_max = std::stod(value);
            else if (key == "steps")
                cfg.steps = std::stoi(value);
            else if (key == "out")
                cfg.out_path = value;
            else if (key == "dense_limit")
                cfg.dense_limit = std::stoi(value);
            else if (key == "state")
                cfg.state_path = value;
            else
                fail("unknown key '" + key + "'");
        } catch (const InputError&) {
            throw;
        } catch (...) {
            fail("bad value for '" + key + "'");
        }
    }
    return cfg;
}

void apply_quantifier_string(RunConfig& cfg, const std::string& name) {
    if (name == "negativity")
        cfg.quantifier.kind = QuantifierSpec::Kind::Negativity;
    else if (name == "eof2")
        cfg.quantifier.kind = QuantifierSpec::Kind::EoF2;
    else
        throw InputError("unknown quantifier '" + name + "' (expected negativity or eof2)");
}

void apply_grouping_string(RunConfig& cfg, const std::string& parts) {
    std::vector<int> grouping;
    std::istringstream ss(parts);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = strip(item);
        if (item.empty()) continue;
        int part = 0;
        try {
            part = std::stoi(item);
        } catch (...) {
            throw InputError("grouping: expected 1-indexed part ids, got '" + item + "'");
        }
        if (part < 1) throw InputError("grouping: parts are 1-indexed");
        grouping.push_back(part - 1);
    }
    if (grouping.empty()) throw InputError("grouping: empty part list");
    cfg.quantifier.grouping = std::move(grouping);
}

void apply_channel_string(RunConfig& cfg, const std::string& value) {
    if (value == "depolarizing")
        cfg.channel.family = ChannelSpec::Family::Depolarizing;
    else if (value == "dephasing")
        cfg.channel.family = ChannelSpec::Family::Dephasing;
    else if (value == "bitflip")
        cfg.channel.family = ChannelSpec::Family::BitFlip;
    else if (value == "explicit")
        cfg.channel.family = ChannelSpec::Family::Explicit;
    else if (std::ifstream probe(value); probe)
        cfg.channel = load_channel_config(value);
    else
        throw InputError("unknown channel '" + value +
                         "' (expected a family name or a channel config path)");
}

std::string render_exact_csv(const RunConfig& cfg) {
    SweepSetup s = prepare_sweep(cfg);
    if (s.boundary.crossing_edges.empty())
        std::cerr << "warning: partition has no crossing edges; entanglement is identically 0\n";

    const std::string desc = "exact;graph=" + graph_descriptor(s.graph) + ";channel=" +
                             channel_descriptor(cfg.channel) + ";q=" + cfg.quantifier.id() +
                             ";grid=" + grid_descriptor(cfg);
    std::ostringstream csv;
    csv << header("exact", fnv1a(desc),
                  "quantifier " + cfg.quantifier.id() + " partition " + cfg.partition_spec);
    csv << "p,exact\n";
    EngineLimits limits{.dense_limit = cfg.dense_limit};
    for (double p : s.grid) {
        EntanglementCurvePoint point{p, std::nullopt, std::nullopt, cfg.quantifier.id(),
                                     cfg.partition_spec};
        try {
            const PauliMapSpec map = cfg.channel.instantiate(
                s.graph.vertex_count(), cfg.channel.is_swept() ? std::optional(p) : std::nullopt);
            point.exact = exact_entanglement(s.graph, s.partition, map, cfg.quantifier,
                                             DeltaSupport::Reachable, limits)
                              .value;
        } catch (const std::exception& e) {
            throw InputError("row p=" + fmt_p(p) + ": " + e.what());
        }
        csv << fmt_p(point.p) << "," << fmt_value(*point.exact) << "\n";
    }
    return csv.str();
}

std::string render_bound_csv(const RunConfig& cfg) {
    SweepSetup s = prepare_sweep(cfg);
    if (s.boundary.crossing_edges.empty())
        std::cerr << "warning: partition has no crossing edges; entanglement is identically 0\n";

    std::ostringstream csv;
    csv << header("bound", fnv1a(bound_descriptor(s.graph, s.boundary, cfg, s.side_mask)),
                  "quantifier " + cfg.quantifier.id());
    csv << "p,bound\n";
    EngineLimits limits{.dense_limit = cfg.dense_limit};
    for (double p : s.grid) {
        EntanglementCurvePoint point{p, std::nullopt, std::nullopt, cfg.quantifier.id(),
                                     cfg.partition_spec};
        try {
            const PauliMapSpec map = cfg.channel.instantiate(
                s.graph.vertex_count(), cfg.channel.is_swept() ? std::optional(p) : std::nullopt);
            point.lower_bound =
                lower_bound_entanglement(s.graph, s.partition, map, cfg.quantifier, limits).value;
        } catch (const std::exception& e) {
            throw InputError("row p=" + fmt_p(p) + ": " + e.what());
        }
        csv << fmt_p(point.p) << "," << fmt_value(*point.lower_bound) << "\n";
    }
    return csv.str();
}

std::string render_oracle_check_report(const RunConfig& cfg, bool& pass) {
    SweepSetup s = prepare_sweep(cfg);
    const int n = s.graph.vertex_count();
    if (cfg.quantifier.kind != QuantifierSpec::Kind::Negativity)
        throw InputError("oracle-check compares negativity only");
    if (n > cfg.dense_limit)
        throw ResourceError(
            "oracle-check needs the dense simulator: " + std::to_string(n) +
            " qubits exceed the dense limit of " + std::to_string(cfg.dense_limit) +
            " (a 2^n x 2^n complex matrix; raise --dense-limit if you have the memory)");

    std::ostringstream rep;
    rep << header("oracle-check", fnv1a("oracle;" + graph_descriptor(s.graph) + ";" +
                                        channel_descriptor(cfg.channel)));
    rep << "p,engine,oracle,abs_delta\n";
    const Dense rho0 = oracle::density_from_state(oracle::graph_state_vector(s.graph, cfg.dense_limit));
    EngineLimits limits{.dense_limit = cfg.dense_limit};
    double max_dev = 0.0;
    for (double p : s.grid) {
        const PauliMapSpec map = cfg.channel.instantiate(
            n, cfg.channel.is_swept() ? std::optional(p) : std::nullopt);
        const double engine =
            exact_entanglement(s.graph, s.partition, map, cfg.quantifier,
                               DeltaSupport::Reachable, limits)
                .value +
            cfg.inject_error;
        const Dense rho = oracle::apply_pauli_map_dense(rho0, map, cfg.dense_limit);
        const double dense = oracle::dense_negativity(rho, s.partition, cfg.quantifier.grouping);
        const double dev = std::abs(engine - dense);
        max_dev = std::max(max_dev, dev);
        rep << fmt_p(p) << "," << fmt_value(engine) << "," << fmt_value(dense) << ","
            << fmt_exact_double(dev) << "\n";
    }
    pass = max_dev <= kOracleCheckTol;
    rep << "max_abs_deviation " << fmt_exact_double(max_dev) << "\n";
    rep << (pass ? "PASS" : "FAIL") << " (tolerance " << fmt_exact_double(kOracleCheckTol)
        << ")\n";
    return rep.str();
}

std::string render_fig2_csv(const RunConfig& cfg) {
    RunConfig local = cfg;
    local.p_min = 0.0;
    local.p_max = 1.0;
    if (cfg.steps < 2) local.steps = 101;
    else local.steps = cfg.steps;
    const std::vector<double> grid = sweep_grid(local);

    const QuantifierSpec q = QuantifierSpec::eof2();
    EngineLimits limits{.dense_limit = cfg.dense_limit};
    const std::vector<int> first = {0};

    std::vector<std::vector<double>> curves;  // N = 2, 4, 7
    for (int n : {2, 4, 7}) {
        const Graph g = Graph::path(n);
        const Partition part = Partition::bipartition(n, first);
        std::vector<double> curve;
        curve.reserve(grid.size());
        for (double p : grid) {
            const PauliMapSpec map =
                PauliMapSpec::uniform(n, SingleQubitPauliChannel::depolarizing(p));
            curve.push_back(
                exact_entanglement(g, part, map, q, DeltaSupport::Reachable, limits).value);
        }
        curves.push_back(std::move(curve));
    }

    // The flag-discarded bound for the linear-cluster family: identical for
    // every N >= 3, computed here from N = 4.
    std::vector<double> bound;
    {
        const Graph g = Graph::path(4);
        const Partition part = Partition::bipartition(4, first);
        for (double p : grid) {
            const PauliMapSpec map =
                PauliMapSpec::uniform(4, SingleQubitPauliChannel::depolarizing(p));
            bound.push_back(lower_bound_entanglement(g, part, map, q, limits).value);
        }
    }

    std::ostringstream csv;
    csv << header("fig2", fnv1a("fig2;grid=" + grid_descriptor(local)),
                  "linear clusters, cut first|rest, individual depolarizing, eof2");
    csv << "p,eof_n2,eof_n4,eof_n7,bound\n";
    for (std::size_t i = 0; i < grid.size(); ++i)
        csv << fmt_p(grid[i]) << "," << fmt_value(curves[0][i]) << "," << fmt_value(curves[1][i])
            << "," << fmt_value(curves[2][i]) << "," << fmt_value(bound[i]) << "\n";
    return csv.str();
}

std::string render_twirl_csv(const RunConfig& cfg) {
    Graph g = require_graph(cfg);
    const int n = g.vertex_count();
    if (cfg.state_path.empty()) throw InputError("twirl needs --state with amplitudes");
    if (n > cfg.dense_limit)
        throw ResourceError("twirl: " + std::to_string(n) + " qubits exceed the dense limit of " +
                            std::to_string(cfg.dense_limit));

    std::ifstream in(cfg.state_path);
    if (!in) throw InputError("cannot open state file '" + cfg.state_path + "'");
    const std::uint64_t dim = std::uint64_t{1} << n;
    oracle::StateVector psi(dim);
    std::string raw;
    std::uint64_t count = 0;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        const std::string line = strip(raw);
        if (line.empty()) continue;
        if (count >= dim)
            throw InputError(cfg.state_path + ":" + std::to_string(lineno) +
                             ": more than 2^n amplitudes");
        std::istringstream ss(line);
        double re = 0.0, im = 0.0;
        if (!(ss >> re >> im))
            throw InputError(cfg.state_path + ":" + std::to_string(lineno) +
                             ": expected 're im'");
        psi(count++) = std::complex<double>(re, im);
    }
    if (count != dim)
        throw InputError(cfg.state_path + ": got " + std::to_string(count) +
                         " amplitudes, expected 2^" + std::to_string(n) + " = " +
                         std::to_string(dim));
    const double norm = psi.norm();
    if (norm < 1e-12) throw InputError("twirl: state has zero norm");
    psi /= norm;

    const GraphDiagonalState twirled =
        twirl_to_graph_diagonal(oracle::density_from_state(psi), g, cfg.dense_limit);

    std::ostringstream csv;
    csv << header("twirl", fnv1a("twirl;" + graph_descriptor(g) + ";state=" + cfg.state_path));
    csv << "pattern,probability\n";
    for (const auto& [key, prob] : twirled.dist.entries()) {
        std::string bits(n, '0');
        for (int i = 0; i < n; ++i)
            if ((key >> i) & 1u) bits[i] = '1';
        csv << bits << "," << fmt_exact_double(prob) << "\n";
    }
    return csv.str();
}

int cmd_exact(const RunConfig& cfg) {
    const std::string csv = render_exact_csv(cfg);
    write_output(cfg, csv);
    maybe_write_gnuplot(cfg, "exact entanglement",
                        std::vector<std::pair<int, std::string>>{{2, "exact"}});
    return 0;
}

int cmd_bound(const RunConfig& cfg) {
    const std::string csv = render_bound_csv(cfg);
    write_output(cfg, csv);
    maybe_write_gnuplot(cfg, "lower bound",
                        std::vector<std::pair<int, std::string>>{{2, "bound"}});
    return 0;
}

int cmd_oracle_check(const RunConfig& cfg) {
    bool pass = false;
    const std::string report = render_oracle_check_report(cfg, pass);
    write_output(cfg, report);
    return pass ? 0 : 1;
}

int cmd_fig2(const RunConfig& cfg) {
    const std::string csv = render_fig2_csv(cfg);
    write_output(cfg, csv);
    maybe_write_gnuplot(cfg, "entanglement of formation",
                        std::vector<std::pair<int, std::string>>{{2, "N=2"},
                                                                 {3, "N=4"},
                                                                 {4, "N=7"},
                                                                 {5, "size-independent bound"}});
    return 0;
}

int cmd_twirl(const RunConfig& cfg) {
    write_output(cfg, render_twirl_csv(cfg));
    return 0;
}

}  // namespace gsent::cli
