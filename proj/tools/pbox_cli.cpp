// pbox: observation ingestion, constraint model solving and the inventory
// benchmark.
//
// Exit codes: 0 success, 1 inconsistent model or infeasible run, 2 usage or
// input errors.

#include "pbox/benchmark.hpp"
#include "pbox/json_io.hpp"
#include "pbox/observations.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using pbox::io::json;
namespace fs = std::filesystem;

constexpr int exit_ok = 0;
constexpr int exit_inconsistent = 1;
constexpr int exit_usage = 2;

struct CliConfig {
    std::string input;
    std::string out;
    std::string csv;
    std::uint64_t seed = 42;
    std::string horizons = "7,10,24";
    std::string model = "both";
    double x_min = 1.0;
    double x_max = 100.0;
    bool parallel = false;
    int verbosity = 0;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void emit(const json& j, const std::string& out) {
    if (out.empty()) {
        std::cout << j.dump(2) << '\n';
        return;
    }
    std::ofstream f(out);
    if (!f) {
        throw UsageError("cannot write " + out);
    }
    f << j.dump(2) << '\n';
}

void require_file(const std::string& path) {
    if (path.empty()) {
        throw UsageError("--input is required");
    }
    if (!fs::is_regular_file(path)) {
        throw UsageError("no such file: " + path);
    }
}

std::vector<std::size_t> parse_horizons(const std::string& text) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        long long n = 0;
        try {
            n = std::stoll(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != item.size() || item.empty() || n < 1 || n > 64) {
            throw UsageError("invalid horizon '" + item + "' (expected an integer in 1..64)");
        }
        out.push_back(static_cast<std::size_t>(n));
    }
    if (out.empty()) {
        throw UsageError("no horizons given");
    }
    return out;
}

std::vector<pbox::inventory::Flavor> parse_model(const std::string& model) {
    using pbox::inventory::Flavor;
    if (model == "pbox") {
        return {Flavor::Pbox};
    }
    if (model == "convex") {
        return {Flavor::Convex};
    }
    if (model == "both") {
        return {Flavor::Pbox, Flavor::Convex};
    }
    throw UsageError("--model must be pbox, convex or both");
}

// ============================================================================
// Subcommands
// ============================================================================

int cmd_ingest(const CliConfig& cfg) {
    require_file(cfg.input);
    const auto obs = pbox::read_observation_csv_file(cfg.input);
    const auto iv = pbox::envelope(pbox::empirical_cdf(obs));
    emit(pbox::io::to_json(iv), cfg.out);
    std::cerr << "m=" << obs.population() << " range=[" << iv.lo().q << ", " << iv.hi().q << "] upper_slope="
              << iv.lo().s << " lower_slope=" << iv.hi().s << '\n';
    return exit_ok;
}

int cmd_solve(const CliConfig& cfg) {
    require_file(cfg.input);
    auto model = pbox::io::model_from_json(pbox::io::read_json_file(cfg.input));
    const auto status = model.store.propagate();
    emit(pbox::io::solution_to_json(model), cfg.out);
    if (cfg.verbosity > 0) {
        std::cerr << "status=" << pbox::to_string(status) << " wakes=" << model.store.stats().wakes << '\n';
    }
    return status == pbox::Status::Consistent ? exit_ok : exit_inconsistent;
}

int cmd_bench(const CliConfig& cfg) {
    pbox::inventory::BenchmarkConfig bc;
    bc.horizons = parse_horizons(cfg.horizons);
    bc.seed = cfg.seed;
    bc.flavors = parse_model(cfg.model);
    bc.generator.x_min = cfg.x_min;
    bc.generator.x_max = cfg.x_max;
    bc.parallel = cfg.parallel;

    pbox::inventory::BenchmarkReport report;
    if (!cfg.input.empty()) {
        require_file(cfg.input);
        const auto inst = pbox::io::instance_from_json(pbox::io::read_json_file(cfg.input),
                                                       fs::path(cfg.input).parent_path());
        report = pbox::inventory::run_benchmark(inst, bc);
    } else {
        report = pbox::inventory::run_benchmark(bc);
    }
    emit(pbox::io::to_json(report), cfg.out);
    if (!cfg.csv.empty()) {
        std::ofstream f(cfg.csv);
        if (!f) {
            throw UsageError("cannot write " + cfg.csv);
        }
        pbox::io::write_cycle_csv(f, report);
    }
    bool feasible = true;
    for (const auto& row : report.rows) {
        feasible = feasible && row.result.feasible();
        if (cfg.verbosity > 0) {
            std::cerr << "N=" << row.horizon << " model=" << pbox::inventory::to_string(row.flavor)
                      << " seconds=" << row.result.wall_seconds << " nodes=" << row.result.stats.nodes
                      << " frontier=" << row.result.frontier.size() << '\n';
        }
    }
    return feasible ? exit_ok : exit_inconsistent;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"p-box cdf-interval constraint solver"};
    app.require_subcommand(1);
    app.fallthrough();
    CliConfig cfg;

    auto* ingest = app.add_subcommand("ingest", "Build a domain from an observation CSV");
    ingest->add_option("--input", cfg.input, "CSV with header quantile,count")->required();
    ingest->add_option("--out", cfg.out, "Output JSON (default stdout)");

    auto* solve = app.add_subcommand("solve", "Propagate a constraint model to a fixpoint");
    solve->add_option("--input", cfg.input, "Model JSON")->required();
    solve->add_option("--out", cfg.out, "Output JSON (default stdout)");

    auto* bench = app.add_subcommand("bench", "Run the inventory benchmark");
    bench->add_option("--input", cfg.input, "Instance JSON (default: seeded generator)");
    bench->add_option("--out", cfg.out, "Report JSON (default stdout)");
    bench->add_option("--csv", cfg.csv, "Per-cycle domain CSV of the best schedules");
    bench->add_option("--seed", cfg.seed, "Generator seed")->capture_default_str();
    bench->add_option("--horizons", cfg.horizons, "Comma-separated horizons")->capture_default_str();
    bench->add_option("--model", cfg.model, "pbox, convex or both")->capture_default_str();
    bench->add_option("--x-min", cfg.x_min, "Smallest order in a replenishment cycle")->capture_default_str();
    bench->add_option("--x-max", cfg.x_max, "Per-cycle order cap")->capture_default_str();
    bench->add_flag("--parallel", cfg.parallel, "Explore subtrees with the OpenMP work pool");

    app.add_flag("-v,--verbose", cfg.verbosity, "Print progress to stderr");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (*ingest) {
            return cmd_ingest(cfg);
        }
        if (*solve) {
            return cmd_solve(cfg);
        }
        return cmd_bench(cfg);
    } catch (const pbox::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
    }
    return exit_usage;
}
