#include <CLI11.hpp>
#include <iostream>

#include "gsent/cli.hpp"
#include "gsent/version.hpp"

using gsent::cli::RunConfig;

namespace {

// Shared flag wiring. Values given on the command line override the config
// file; the config file is read first.
struct Flags {
    std::string config_path;
    std::string graph;
    std::string partition;
    std::string channel;
    std::string quantifier;
    std::string grouping;
    std::string out;
    std::string state;
    double p_min = -1.0;
    double p_max = -1.0;
    int steps = -1;
    int dense_limit = -1;
    double inject_error = 0.0;
    bool gnuplot = false;
};

void add_common(CLI::App* cmd, Flags& f, bool sweep) {
    cmd->add_option("--config", f.config_path, "run config file (key = value lines)");
    cmd->add_option("--graph", f.graph, "graph file (n/e lines, 1-indexed)");
    cmd->add_option("--partition", f.partition,
                    "partition file or inline spec like '1|2,3,4' (1-indexed)");
    cmd->add_option("--channel", f.channel,
                    "depolarizing|dephasing|bitflip or a channel config file");
    cmd->add_option("--quantifier", f.quantifier, "negativity or eof2");
    cmd->add_option("--grouping", f.grouping, "1-indexed parts forming side A, e.g. '1,3'");
    cmd->add_option("--out", f.out, "output file (default stdout)");
    cmd->add_option("--dense-limit", f.dense_limit, "max qubits for dense matrices");
    cmd->add_flag("--gnuplot", f.gnuplot, "also write <out>.gp plot script");
    if (sweep) {
        cmd->add_option("--p-min", f.p_min, "sweep start (default 0)");
        cmd->add_option("--p-max", f.p_max, "sweep end (default 1)");
        cmd->add_option("--steps", f.steps, "sweep points incl. endpoints (default 101)");
    }
}

RunConfig build_config(const Flags& f) {
    RunConfig cfg;
    if (!f.config_path.empty()) cfg = gsent::cli::load_run_config(f.config_path);
    if (!f.graph.empty()) cfg.graph_path = f.graph;
    if (!f.partition.empty()) cfg.partition_spec = f.partition;
    if (!f.channel.empty()) gsent::cli::apply_channel_string(cfg, f.channel);
    if (!f.quantifier.empty()) gsent::cli::apply_quantifier_string(cfg, f.quantifier);
    if (!f.grouping.empty()) gsent::cli::apply_grouping_string(cfg, f.grouping);
    if (!f.out.empty()) cfg.out_path = f.out;
    if (!f.state.empty()) cfg.state_path = f.state;
    if (f.p_min >= 0.0) cfg.p_min = f.p_min;
    if (f.p_max >= 0.0) cfg.p_max = f.p_max;
    if (f.steps >= 1) cfg.steps = f.steps;
    if (f.dense_limit >= 1) cfg.dense_limit = f.dense_limit;
    cfg.gnuplot = cfg.gnuplot || f.gnuplot;
    cfg.inject_error = f.inject_error;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact entanglement evolution of graph states under Pauli noise"};
    app.set_version_flag("--version", std::string("gsent ") + gsent::kVersion);
    app.require_subcommand(1);

    Flags f_exact, f_bound, f_oracle, f_fig2, f_twirl;

    auto* exact = app.add_subcommand(
        "exact", "flag-conditioned exact entanglement over a sweep grid (CSV)");
    add_common(exact, f_exact, true);

    auto* bound = app.add_subcommand(
        "bound", "size-independent lower bound over a sweep grid (CSV)");
    add_common(bound, f_bound, true);

    auto* oracle = app.add_subcommand(
        "oracle-check", "compare the engine against the dense simulator (report)");
    add_common(oracle, f_oracle, true);
    oracle
        ->add_option("--inject-error", f_oracle.inject_error,
                     "perturb the engine value; negative control for the checker")
        ->group("");  // hidden

    auto* fig2 = app.add_subcommand(
        "fig2", "EoF of 2/4/7-qubit linear clusters + bound under depolarizing (CSV)");
    add_common(fig2, f_fig2, true);

    auto* twirl = app.add_subcommand(
        "twirl", "project a dense state onto the graph-basis diagonal (CSV)");
    add_common(twirl, f_twirl, false);
    twirl->add_option("--state", f_twirl.state, "amplitudes, one 're im' pair per line");

    CLI11_PARSE(app, argc, argv);

    try {
        if (exact->parsed()) return gsent::cli::cmd_exact(build_config(f_exact));
        if (bound->parsed()) return gsent::cli::cmd_bound(build_config(f_bound));
        if (oracle->parsed()) return gsent::cli::cmd_oracle_check(build_config(f_oracle));
        if (fig2->parsed()) return gsent::cli::cmd_fig2(build_config(f_fig2));
        if (twirl->parsed()) return gsent::cli::cmd_twirl(build_config(f_twirl));
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
