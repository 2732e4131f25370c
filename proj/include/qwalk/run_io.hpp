#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "qwalk/evolution.hpp"
#include "qwalk/state.hpp"

namespace qwalk {

enum class InteractionKind { None, Phase, Hermitian, Unitary };
enum class OutputFormat { Csv, Ndjson };

struct RunConfig {
    int steps = 100;
    double theta_plus = 0.0;
    double theta_minus = 0.0;
    InteractionKind interaction_kind = InteractionKind::Phase;
    CoinVector coin1 = coin_plus();
    CoinVector coin2 = coin_plus();
    int x1 = 0;
    int x2 = 0;
    int record_every = 1;
    std::filesystem::path output_dir;
    OutputFormat output_format = OutputFormat::Csv;
    Eigen::Matrix4d h_matrix = Eigen::Matrix4d::Zero();          // Hermitian kind
    Eigen::Matrix4cd unitary_matrix = Eigen::Matrix4cd::Identity();  // Unitary kind
};

struct SweepConfig {
    std::vector<double> theta_grid;  // swept as theta_plus of the phase family
    RunConfig base;
    int parallelism = 1;
};

// 64 evenly spaced angles over [0, 2 pi).
std::vector<double> default_theta_grid();

// Angles are accepted as plain radians ("1.5707") or multiples of pi with a
// "pi" suffix ("0.5pi", "-pi", "2pi").
double parse_angle(const std::string& text);

InteractionSpec make_interaction(const RunConfig& config);

// throws std::invalid_argument on bad fields
void validate(const RunConfig& config);

// Writes joint, marginal, zones and entropy tables into config.output_dir;
// zones/entropy are time series at the recording cadence, joint/marginal are
// final-step. Returns the paths written.
std::vector<std::filesystem::path> cmd_run(const RunConfig& config);

// One row per grid angle (sorted ascending) with final-step observables;
// points run concurrently up to config.parallelism.
std::vector<std::filesystem::path> cmd_sweep(const SweepConfig& config);

// Dense-oracle self check: prints one line per case plus a summary to `out`,
// returns 0 iff every deviation is within 1e-12. corrupt_engine swaps in a
// deliberately broken step (negative control for the check itself).
int cmd_oracle_check(unsigned seed, std::ostream& out, bool corrupt_engine = false);

// Full command-line entry point (subcommands: run, sweep, oracle-check).
// Exit codes: 0 success, 1 failed check or I/O error, 2 usage error.
int run_cli(int argc, const char* const* argv);

}  // namespace qwalk
