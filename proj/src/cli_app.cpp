#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "qwalk/errors.hpp"
#include "qwalk/oracle.hpp"
#include "qwalk/run_io.hpp"

namespace qwalk {

namespace {

// Flags shared by run and sweep; angle-valued options stay strings until
// parse_angle resolves the optional "pi" suffix.
struct CommonCliOptions {
    std::string theta_plus = "0";
    std::string theta_minus = "0";
    std::string interaction = "phase";
    std::string format = "csv";
    std::string output_dir;
    std::vector<double> h_entries;      // 16 reals, row-major
    std::vector<double> u_entries;      // 32 reals, re/im interleaved row-major
    std::vector<double> coin1_entries;  // up_re up_im down_re down_im
    std::vector<double> coin2_entries;
    std::string config_path;
};

// Config files are plain "key = value" lines (keys match the long flags
// without the leading dashes); '#' starts a comment.
using ConfigAppliers = std::map<std::string, std::function<void(const std::string&)>>;

std::string trimmed(const std::string& text) {
    const auto begin = text.find_first_not_of(" \t");
    if (begin == std::string::npos) return "";
    const auto end = text.find_last_not_of(" \t");
    return text.substr(begin, end - begin + 1);
}

int to_int(const std::string& text) {
    std::size_t consumed = 0;
    const int value = std::stoi(text, &consumed);
    if (consumed != text.size()) throw std::invalid_argument("bad integer: '" + text + "'");
    return value;
}

std::vector<double> to_doubles(const std::string& text, std::size_t expected) {
    std::istringstream in(text);
    std::vector<double> values;
    double v = 0.0;
    while (in >> v) values.push_back(v);
    if (!in.eof() || values.size() != expected) {
        throw std::invalid_argument("expected " + std::to_string(expected) + " numbers, got '" +
                                    text + "'");
    }
    return values;
}

void apply_config_file(const std::string& path, const CLI::App* cmd, const ConfigAppliers& appliers) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read config file: " + path);
    std::string line;
    while (std::getline(in, line)) {
        const std::string stripped = trimmed(line);
        if (stripped.empty() || stripped.front() == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config line is not 'key = value': " + line);
        }
        const std::string key = trimmed(stripped.substr(0, eq));
        const std::string value = trimmed(stripped.substr(eq + 1));
        const auto applier = appliers.find(key);
        if (applier == appliers.end()) {
            throw std::invalid_argument("unknown config key: " + key);
        }
        const CLI::Option* flag = cmd->get_option_no_throw("--" + key);
        if (flag != nullptr && flag->count() > 0) continue;  // flags override the file
        try {
            applier->second(value);
        } catch (const std::exception& e) {
            throw std::invalid_argument("config key '" + key + "': " + e.what());
        }
    }
}

void add_common_options(CLI::App* cmd, RunConfig& config, CommonCliOptions& raw,
                        ConfigAppliers& appliers) {
    cmd->add_option("--config", raw.config_path,
                    "key = value file with the options below; flags take precedence");
    cmd->add_option("--steps", config.steps, "number of time steps")->capture_default_str();
    cmd->add_option("--theta-plus", raw.theta_plus,
                    "equal-coin contact phase, radians or multiples of pi (e.g. 0.5pi)")
        ->capture_default_str();
    cmd->add_option("--theta-minus", raw.theta_minus, "opposite-coin contact phase")
        ->capture_default_str();
    cmd->add_option("--interaction", raw.interaction, "interaction kind")
        ->check(CLI::IsMember({"none", "phase", "hermitian", "unitary"}))
        ->capture_default_str();
    cmd->add_option("--h-matrix", raw.h_entries,
                    "16 reals h_ij for the hermitian generator, row-major")
        ->expected(16);
    cmd->add_option("--u-matrix", raw.u_entries,
                    "explicit 4x4 coin unitary, 32 reals re/im interleaved row-major")
        ->expected(32);
    cmd->add_option("--coin1", raw.coin1_entries, "walker 1 coin: up_re up_im down_re down_im")
        ->expected(4);
    cmd->add_option("--coin2", raw.coin2_entries, "walker 2 coin: up_re up_im down_re down_im")
        ->expected(4);
    cmd->add_option("--x1", config.x1, "walker 1 start site")->capture_default_str();
    cmd->add_option("--x2", config.x2, "walker 2 start site")->capture_default_str();
    cmd->add_option("--record-every", config.record_every, "recording cadence for time series")
        ->capture_default_str();
    cmd->add_option("--out", raw.output_dir, "output directory (required)");
    cmd->add_option("--format", raw.format, "output file format")
        ->check(CLI::IsMember({"csv", "ndjson"}))
        ->capture_default_str();

    const std::vector<std::string> kinds = {"none", "phase", "hermitian", "unitary"};
    appliers["steps"] = [&config](const std::string& v) { config.steps = to_int(v); };
    appliers["theta-plus"] = [&raw](const std::string& v) { raw.theta_plus = v; };
    appliers["theta-minus"] = [&raw](const std::string& v) { raw.theta_minus = v; };
    appliers["interaction"] = [&raw, kinds](const std::string& v) {
        if (std::find(kinds.begin(), kinds.end(), v) == kinds.end()) {
            throw std::invalid_argument("unknown interaction kind '" + v + "'");
        }
        raw.interaction = v;
    };
    appliers["h-matrix"] = [&raw](const std::string& v) { raw.h_entries = to_doubles(v, 16); };
    appliers["u-matrix"] = [&raw](const std::string& v) { raw.u_entries = to_doubles(v, 32); };
    appliers["coin1"] = [&raw](const std::string& v) { raw.coin1_entries = to_doubles(v, 4); };
    appliers["coin2"] = [&raw](const std::string& v) { raw.coin2_entries = to_doubles(v, 4); };
    appliers["x1"] = [&config](const std::string& v) { config.x1 = to_int(v); };
    appliers["x2"] = [&config](const std::string& v) { config.x2 = to_int(v); };
    appliers["record-every"] = [&config](const std::string& v) { config.record_every = to_int(v); };
    appliers["out"] = [&raw](const std::string& v) { raw.output_dir = v; };
    appliers["format"] = [&raw](const std::string& v) {
        if (v != "csv" && v != "ndjson") throw std::invalid_argument("unknown format '" + v + "'");
        raw.format = v;
    };
}

void resolve_common_options(const CommonCliOptions& raw, RunConfig& config) {
    config.theta_plus = parse_angle(raw.theta_plus);
    config.theta_minus = parse_angle(raw.theta_minus);
    if (raw.interaction == "none") config.interaction_kind = InteractionKind::None;
    else if (raw.interaction == "phase") config.interaction_kind = InteractionKind::Phase;
    else if (raw.interaction == "hermitian") config.interaction_kind = InteractionKind::Hermitian;
    else config.interaction_kind = InteractionKind::Unitary;
    config.output_dir = raw.output_dir;
    config.output_format = raw.format == "csv" ? OutputFormat::Csv : OutputFormat::Ndjson;
    if (!raw.h_entries.empty()) {
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) config.h_matrix(i, j) = raw.h_entries[i * 4 + j];
        }
    } else if (config.interaction_kind == InteractionKind::Hermitian) {
        throw std::invalid_argument("--interaction hermitian requires --h-matrix");
    }
    if (!raw.u_entries.empty()) {
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                const std::size_t k = 2 * (i * 4 + j);
                config.unitary_matrix(i, j) = Complex{raw.u_entries[k], raw.u_entries[k + 1]};
            }
        }
    } else if (config.interaction_kind == InteractionKind::Unitary) {
        throw std::invalid_argument("--interaction unitary requires --u-matrix");
    }
    auto to_coin = [](const std::vector<double>& v) {
        return CoinVector{{v[0], v[1]}, {v[2], v[3]}};
    };
    if (!raw.coin1_entries.empty()) config.coin1 = to_coin(raw.coin1_entries);
    if (!raw.coin2_entries.empty()) config.coin2 = to_coin(raw.coin2_entries);
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"two-walker discrete-time quantum walk with on-contact coin interactions"};
    app.require_subcommand(1);

    RunConfig run_config;
    CommonCliOptions run_raw;
    ConfigAppliers run_appliers;
    CLI::App* run_cmd = app.add_subcommand("run", "simulate one setting and export observables");
    add_common_options(run_cmd, run_config, run_raw, run_appliers);

    SweepConfig sweep_config;
    sweep_config.parallelism = std::max(1u, std::thread::hardware_concurrency());
    CommonCliOptions sweep_raw;
    ConfigAppliers sweep_appliers;
    int grid_points = 64;
    std::vector<std::string> theta_list;
    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "run a grid of interaction angles, one output row per angle");
    add_common_options(sweep_cmd, sweep_config.base, sweep_raw, sweep_appliers);
    sweep_cmd->add_option("--grid", grid_points, "number of evenly spaced angles over [0, 2pi)")
        ->capture_default_str();
    sweep_cmd->add_option("--thetas", theta_list, "explicit grid angles (overrides --grid)");
    sweep_cmd->add_option("--parallelism", sweep_config.parallelism, "concurrent sweep points")
        ->capture_default_str();
    sweep_appliers["grid"] = [&grid_points](const std::string& v) { grid_points = to_int(v); };
    sweep_appliers["thetas"] = [&theta_list](const std::string& v) {
        theta_list.clear();
        std::istringstream in(v);
        std::string item;
        while (in >> item) theta_list.push_back(item);
    };
    sweep_appliers["parallelism"] = [&sweep_config](const std::string& v) {
        sweep_config.parallelism = to_int(v);
    };

    unsigned seed = oracle::kDefaultSuiteSeed;
    bool corrupt = false;
    CLI::App* oracle_cmd =
        app.add_subcommand("oracle-check", "cross-check the engine against dense step matrices");
    oracle_cmd->add_option("--seed", seed, "seed for the randomized cases")
        ->envname("QWALK_SEED")
        ->capture_default_str();
    oracle_cmd->add_flag("--corrupt", corrupt)->group("");  // hidden negative-control knob

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (run_cmd->parsed()) {
            if (!run_raw.config_path.empty()) {
                apply_config_file(run_raw.config_path, run_cmd, run_appliers);
            }
            resolve_common_options(run_raw, run_config);
            cmd_run(run_config);
            return 0;
        }
        if (sweep_cmd->parsed()) {
            if (!sweep_raw.config_path.empty()) {
                apply_config_file(sweep_raw.config_path, sweep_cmd, sweep_appliers);
            }
            resolve_common_options(sweep_raw, sweep_config.base);
            if (!theta_list.empty()) {
                sweep_config.theta_grid.clear();
                for (const std::string& text : theta_list) {
                    sweep_config.theta_grid.push_back(parse_angle(text));
                }
            } else {
                if (grid_points < 1) throw std::invalid_argument("--grid must be at least 1");
                sweep_config.theta_grid.resize(grid_points);
                for (int i = 0; i < grid_points; ++i) {
                    sweep_config.theta_grid[i] =
                        2.0 * std::numbers::pi * static_cast<double>(i) / grid_points;
                }
            }
            cmd_sweep(sweep_config);
            return 0;
        }
        return cmd_oracle_check(seed, std::cout, corrupt);
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const capacity_error& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace qwalk
