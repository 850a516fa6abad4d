#pragma once

#include <iosfwd>
#include <string>

#include "gsent/channels.hpp"
#include "gsent/entanglement.hpp"

namespace gsent::cli {

// Everything a command needs, assembled from an optional config file plus
// flag overrides.
struct RunConfig {
    std::string graph_path;
    std::string partition_spec;  // file path, or inline like "1|2,3,4"
    ChannelSpec channel = ChannelSpec::named(ChannelSpec::Family::Depolarizing, 0.0);
    QuantifierSpec quantifier = QuantifierSpec::negativity_of_parts({0});
    double p_min = 0.0;
    double p_max = 1.0;
    int steps = 101;
    std::string out_path;   // empty writes to stdout
    int dense_limit = kDefaultDenseLimit;
    bool gnuplot = false;
    std::string state_path;     // twirl input amplitudes
    double inject_error = 0.0;  // oracle-check negative-control hook
};

// Key = value file with the same keys as the flags; see README.
RunConfig load_run_config(const std::string& path);

void apply_quantifier_string(RunConfig& cfg, const std::string& name);
void apply_grouping_string(RunConfig& cfg, const std::string& parts);
void apply_channel_string(RunConfig& cfg, const std::string& value);

// Renderers produce the full output text (CSV or report); cmd_* wrappers
// write it to the configured destination and return the process exit code.
std::string render_exact_csv(const RunConfig& cfg);
std::string render_bound_csv(const RunConfig& cfg);
std::string render_fig2_csv(const RunConfig& cfg);
std::string render_twirl_csv(const RunConfig& cfg);
std::string render_oracle_check_report(const RunConfig& cfg, bool& pass);

int cmd_exact(const RunConfig& cfg);
int cmd_bound(const RunConfig& cfg);
int cmd_oracle_check(const RunConfig& cfg);
int cmd_fig2(const RunConfig& cfg);
int cmd_twirl(const RunConfig& cfg);

std::uint64_t fnv1a(std::string_view data);

}  // namespace gsent::cli
