#include "qwalk/run_io.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "qwalk/observables.hpp"
#include "qwalk/oracle.hpp"

namespace qwalk {

namespace {

// 17 significant digits round-trip a double exactly.
std::string format_double(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

struct OutputTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;  // cells pre-formatted
};

std::filesystem::path write_table(const std::filesystem::path& dir, const std::string& name,
                                  OutputFormat format, const OutputTable& table) {
    const char* extension = format == OutputFormat::Csv ? ".csv" : ".ndjson";
    const std::filesystem::path path = dir / (name + extension);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open output file: " + path.string());
    }
    if (format == OutputFormat::Csv) {
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            out << (c ? "," : "") << table.columns[c];
        }
        out << '\n';
        for (const auto& row : table.rows) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                out << (c ? "," : "") << row[c];
            }
            out << '\n';
        }
    } else {
        for (const auto& row : table.rows) {
            out << '{';
            for (std::size_t c = 0; c < row.size(); ++c) {
                out << (c ? "," : "") << '"' << table.columns[c] << "\":" << row[c];
            }
            out << "}\n";
        }
    }
    if (!out.flush()) {
        throw std::runtime_error("write failed: " + path.string());
    }
    return path;
}

struct FinalObservables {
    ZoneProbabilities zones;
    double entropy = 0.0;
};

// Steps a fresh run to its final state, feeding recorded steps to `record`.
FinalObservables run_simulation(const RunConfig& config,
                                const std::function<void(int, const ZoneProbabilities&, double)>& record) {
    const Lattice lattice = make_lattice(config.steps);
    const TwoWalkerState initial =
        product_initial_state(lattice, config.coin1, config.coin2, config.x1, config.x2);
    const InteractionSpec spec = make_interaction(config);
    const CoinOperator coin = CoinOperator::hadamard();

    FinalObservables final;
    evolve_observed(initial, coin, spec, config.steps, [&](const TwoWalkerState& state) {
        const int t = state.time;
        const bool recorded = t == 0 || t == config.steps || t % config.record_every == 0;
        if (!recorded) return;
        const JointDistribution joint = joint_distribution(state);
        const ZoneProbabilities zones = zone_probabilities(joint, t);
        const double entropy = entanglement_entropy(state);
        if (record) record(t, zones, entropy);
        if (t == config.steps) final = {zones, entropy};
    });
    return final;
}

}  // namespace

std::vector<double> default_theta_grid() {
    std::vector<double> grid(64);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        grid[i] = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(grid.size());
    }
    return grid;
}

double parse_angle(const std::string& text) {
    std::string body = text;
    while (!body.empty() && (body.front() == ' ' || body.front() == '\t')) body.erase(body.begin());
    while (!body.empty() && (body.back() == ' ' || body.back() == '\t')) body.pop_back();
    if (body.empty()) {
        throw std::invalid_argument("empty angle");
    }
    double scale = 1.0;
    if (body.size() >= 2 && body.compare(body.size() - 2, 2, "pi") == 0) {
        scale = std::numbers::pi;
        body.erase(body.size() - 2);
        if (body.empty() || body == "+") return scale;
        if (body == "-") return -scale;
    }
    std::size_t consumed = 0;
    double value = 0.0;
    try {
        value = std::stod(body, &consumed);
    } catch (const std::exception&) {
        throw std::invalid_argument("cannot parse angle: '" + text + "'");
    }
    if (consumed != body.size()) {
        throw std::invalid_argument("cannot parse angle: '" + text + "'");
    }
    return value * scale;
}

InteractionSpec make_interaction(const RunConfig& config) {
    switch (config.interaction_kind) {
        case InteractionKind::None:
            return NoInteraction{};
        case InteractionKind::Phase:
            return PhasePair{config.theta_plus, config.theta_minus};
        case InteractionKind::Hermitian:
            return HermitianGenerator{config.h_matrix};
        case InteractionKind::Unitary:
            return ExplicitCoinUnitary{config.unitary_matrix};
    }
    throw std::invalid_argument("unknown interaction kind");
}

void validate(const RunConfig& config) {
    if (config.steps < 1) throw std::invalid_argument("steps must be at least 1");
    if (config.record_every < 1) throw std::invalid_argument("record-every must be at least 1");
    for (const CoinVector* coin : {&config.coin1, &config.coin2}) {
        if (std::abs(coin->norm_squared() - 1.0) > 1e-9) {
            throw std::invalid_argument("initial coin is not normalized");
        }
    }
    if (config.output_dir.empty()) throw std::invalid_argument("output directory is required");
}

std::vector<std::filesystem::path> cmd_run(const RunConfig& config) {
    validate(config);
    std::filesystem::create_directories(config.output_dir);

    OutputTable zones_table{{"t", "pA", "pB", "pC", "pD"}, {}};
    OutputTable entropy_table{{"t", "entropy"}, {}};

    const Lattice lattice = make_lattice(config.steps);
    const TwoWalkerState initial =
        product_initial_state(lattice, config.coin1, config.coin2, config.x1, config.x2);
    const InteractionSpec spec = make_interaction(config);
    const CoinOperator coin = CoinOperator::hadamard();

    OutputTable joint_table{{"x1", "x2", "p"}, {}};
    OutputTable marginal_table{{"x", "n"}, {}};

    evolve_observed(initial, coin, spec, config.steps, [&](const TwoWalkerState& state) {
        const int t = state.time;
        if (t != 0 && t != config.steps && t % config.record_every != 0) return;
        const JointDistribution joint = joint_distribution(state);
        const ZoneProbabilities zones = zone_probabilities(joint, t);
        zones_table.rows.push_back({std::to_string(t), format_double(zones.p_a),
                                    format_double(zones.p_b), format_double(zones.p_c),
                                    format_double(zones.p_d)});
        entropy_table.rows.push_back({std::to_string(t), format_double(entanglement_entropy(state))});
        if (t == config.steps) {
            const int L = lattice.num_sites;
            joint_table.rows.reserve(static_cast<std::size_t>(L) * L);
            for (int i1 = 0; i1 < L; ++i1) {
                for (int i2 = 0; i2 < L; ++i2) {
                    joint_table.rows.push_back({std::to_string(lattice.coordinate(i1)),
                                                std::to_string(lattice.coordinate(i2)),
                                                format_double(joint.at(i1, i2))});
                }
            }
            const Marginal m = marginal(joint);
            for (int i = 0; i < L; ++i) {
                marginal_table.rows.push_back(
                    {std::to_string(lattice.coordinate(i)), format_double(m.at(i))});
            }
        }
    });

    return {
        write_table(config.output_dir, "joint", config.output_format, joint_table),
        write_table(config.output_dir, "marginal", config.output_format, marginal_table),
        write_table(config.output_dir, "zones", config.output_format, zones_table),
        write_table(config.output_dir, "entropy", config.output_format, entropy_table),
    };
}

std::vector<std::filesystem::path> cmd_sweep(const SweepConfig& config) {
    if (config.theta_grid.empty()) throw std::invalid_argument("sweep: theta grid is empty");
    if (config.parallelism < 1) throw std::invalid_argument("sweep: parallelism must be at least 1");
    RunConfig base = config.base;
    base.interaction_kind = InteractionKind::Phase;
    validate(base);
    std::filesystem::create_directories(base.output_dir);

    std::vector<double> grid = config.theta_grid;
    std::sort(grid.begin(), grid.end());

    struct Row {
        ZoneProbabilities zones;
        double entropy = 0.0;
    };
    std::vector<Row> rows(grid.size());

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= grid.size()) return;
            try {
                RunConfig point = base;
                point.theta_plus = grid[i];
                const FinalObservables observables = run_simulation(point, nullptr);
                rows[i] = {observables.zones, observables.entropy};
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };

    const std::size_t thread_count =
        std::min<std::size_t>(static_cast<std::size_t>(config.parallelism), grid.size());
    if (thread_count <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(thread_count);
        for (std::size_t i = 0; i < thread_count; ++i) pool.emplace_back(worker);
        for (auto& thread : pool) thread.join();
    }
    if (failure) std::rethrow_exception(failure);

    OutputTable zones_table{{"theta", "pA", "pB", "pC", "pD"}, {}};
    OutputTable entropy_table{{"theta", "entropy"}, {}};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        zones_table.rows.push_back({format_double(grid[i]), format_double(rows[i].zones.p_a),
                                    format_double(rows[i].zones.p_b), format_double(rows[i].zones.p_c),
                                    format_double(rows[i].zones.p_d)});
        entropy_table.rows.push_back({format_double(grid[i]), format_double(rows[i].entropy)});
    }
    return {
        write_table(base.output_dir, "zones_vs_theta", base.output_format, zones_table),
        write_table(base.output_dir, "entropy_vs_theta", base.output_format, entropy_table),
    };
}

int cmd_oracle_check(unsigned seed, std::ostream& out, bool corrupt_engine) {
    constexpr double kTolerance = 1e-12;
    oracle::StepFunction step;
    if (corrupt_engine) {
        // negative control: flip the sign of the DownDown plane after each step
        step = [](const TwoWalkerState& state, const CoinOperator& coin, const InteractionSpec& spec) {
            TwoWalkerState next = interacting_step(state, coin, spec);
            const std::size_t plane = next.plane_size();
            for (std::size_t i = 0; i < plane; ++i) {
                next.amplitudes[3 * plane + i] = -next.amplitudes[3 * plane + i];
            }
            return next;
        };
    }
    const oracle::SuiteReport report = oracle::run_suite(seed, step);
    for (const auto& entry : report.entries) {
        out << entry.label << " -> max deviation " << format_double(entry.deviation)
            << (entry.deviation <= kTolerance ? "" : "  [EXCEEDED]") << '\n';
    }
    out << "oracle check: " << report.entries.size() << " cases, seed " << seed
        << ", max deviation " << format_double(report.max_deviation) << " (tolerance 1e-12): "
        << (report.all_within(kTolerance) ? "OK" : "FAILED") << '\n';
    if (!report.all_within(kTolerance)) {
        for (const auto& entry : report.entries) {
            if (entry.deviation > kTolerance) {
                out << "offending spec: " << entry.label << '\n';
            }
        }
        return 1;
    }
    return 0;
}

}  // namespace qwalk
