#include "crowdsim/cli.hpp"

#include "crowdsim/engine.hpp"
#include "crowdsim/errors.hpp"
#include "crowdsim/nav_field.hpp"
#include "crowdsim/output.hpp"
#include "crowdsim/scenario_io.hpp"
#include "crowdsim/validation.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace crowdsim {

namespace {

namespace fs = std::filesystem;

std::string shortest(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

std::string fmt_time(double t) {
    if (!std::isfinite(t)) return "inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", t);
    return buf;
}

int print_report(const ValidationReport& report) {
    for (const std::string& e : report.errors) std::cout << "error: " << e << "\n";
    for (const std::string& w : report.warnings) std::cout << "warning: " << w << "\n";
    return report.ok() ? 0 : 1;
}

struct ValidateArgs {
    std::string scenario;
    std::string dump_nav;
};

int do_validate(const ValidateArgs& args) {
    const ScenarioSpec spec = parse_scenario_file(args.scenario);
    const ValidationReport report = validate_scenario(spec);
    if (print_report(report) != 0) return 1;
    std::cout << "OK\n";
    if (!args.dump_nav.empty()) {
        std::ofstream out(args.dump_nav, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open for writing: " + args.dump_nav);
        out << dump_dist_matrix(build_nav_field(spec));
    }
    return 0;
}

struct RunArgs {
    std::string scenario;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<double> dt;
    std::optional<double> max_time;
    std::optional<int> output_every;
    int workers = 1;
};

ScenarioSpec resolve_spec(const RunArgs& args) {
    ScenarioSpec spec = parse_scenario_file(args.scenario);
    if (args.seed) spec.sim.seed = *args.seed;
    if (args.dt) spec.sim.dt = *args.dt;
    if (args.max_time) spec.sim.max_time = *args.max_time;
    if (args.output_every) spec.sim.output_every = *args.output_every;
    return spec;
}

void write_run_outputs(const SimRun& run, const fs::path& dir) {
    fs::create_directories(dir);
    write_trajectory(run, (dir / "trajectory.csv").string());
    write_metrics(run, (dir / "metrics.csv").string());
    write_resolved_params(run.scenario, (dir / "resolved-params.txt").string());
}

int do_run(const RunArgs& args) {
    const ScenarioSpec spec = resolve_spec(args);
    if (print_report(validate_scenario(spec)) != 0) return 1;
    const SimRun run_result = run(spec, args.workers);
    write_run_outputs(run_result, args.out_dir);
    const std::size_t population = run_result.frames.front().agents.size();
    std::cout << "exited " << run_result.metrics.rows.back().exited << "/" << population
              << ", evacuation_time " << fmt_time(run_result.metrics.evacuation_time)
              << ", wrote " << args.out_dir << "\n";
    return 0;
}

struct SweepArgs {
    RunArgs base;
    std::string param;
    std::vector<double> values;
    std::vector<std::uint64_t> seeds;
};

bool set_param(ScenarioSpec& spec, const std::string& name, double value) {
    for (const ParamDesc& d : kParamTable) {
        if (name == d.name) {
            spec.params.*(d.member) = value;
            return true;
        }
    }
    if (name == "dt") spec.sim.dt = value;
    else if (name == "max_time") spec.sim.max_time = value;
    else if (name == "cell_size") spec.cell_size = value;
    else return false;
    return true;
}

int do_sweep(const SweepArgs& args) {
    const ScenarioSpec base = resolve_spec(args.base);
    std::vector<std::uint64_t> seeds = args.seeds;
    if (seeds.empty()) seeds.push_back(base.sim.seed);

    {
        ScenarioSpec probe = base;
        if (!set_param(probe, args.param, args.values.empty() ? 0.0 : args.values.front())) {
            std::cerr << "unknown sweep parameter '" << args.param << "'\n";
            return 1;
        }
    }

    std::string summary =
        "param,value,seed,evacuation_time,exited,mean_panic,max_panic,mean_strength_frac,"
        "mean_speed\n";
    for (const double value : args.values) {
        for (const std::uint64_t seed : seeds) {
            ScenarioSpec spec = base;
            set_param(spec, args.param, value);
            spec.sim.seed = seed;
            const ValidationReport report = validate_scenario(spec);
            if (!report.ok()) {
                std::cout << args.param << "=" << shortest(value) << " seed=" << seed << ":\n";
                print_report(report);
                return 1;
            }
            const SimRun run_result = run(spec, args.base.workers);
            const fs::path cell = fs::path(args.base.out_dir) /
                                  (args.param + "=" + shortest(value)) /
                                  ("seed=" + std::to_string(seed));
            write_run_outputs(run_result, cell);
            const MetricsRow& last = run_result.metrics.rows.back();
            char line[256];
            std::snprintf(line, sizeof(line), "%d,%.6f,%.6f,%.6f,%.6f\n", last.exited,
                          last.mean_panic, last.max_panic, last.mean_strength_frac,
                          last.mean_speed);
            summary += args.param + "," + shortest(value) + "," + std::to_string(seed) + "," +
                       fmt_time(run_result.metrics.evacuation_time) + "," + line;
        }
    }
    fs::create_directories(args.base.out_dir);
    const fs::path summary_path = fs::path(args.base.out_dir) / "sweep-summary.csv";
    std::ofstream out(summary_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + summary_path.string());
    out << summary;
    std::cout << "wrote " << summary_path.string() << "\n";
    return 0;
}

} // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"deterministic agent-based crowd evacuation simulator"};
    app.require_subcommand(1);

    ValidateArgs validate_args;
    CLI::App* validate_cmd = app.add_subcommand("validate", "check a scenario file");
    validate_cmd->add_option("--scenario", validate_args.scenario, "scenario file")
        ->check(CLI::ExistingFile)
        ->required();
    validate_cmd->add_option("--dump-nav", validate_args.dump_nav,
                             "write the navigation distance matrix to this path");

    RunArgs run_args;
    CLI::App* run_cmd = app.add_subcommand("run", "simulate one scenario");
    run_cmd->add_option("--scenario", run_args.scenario, "scenario file")
        ->check(CLI::ExistingFile)
        ->required();
    run_cmd->add_option("--out", run_args.out_dir, "output directory")->required();
    run_cmd->add_option("--seed", run_args.seed, "override the scenario seed");
    run_cmd->add_option("--dt", run_args.dt, "override the timestep, s");
    run_cmd->add_option("--max-time", run_args.max_time, "override the horizon, s");
    run_cmd->add_option("--output-every", run_args.output_every,
                        "override the frame sampling stride");
    run_cmd->add_option("--workers", run_args.workers, "worker thread count")
        ->check(CLI::PositiveNumber);

    SweepArgs sweep_args;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "run a parameter sweep");
    sweep_cmd->add_option("--scenario", sweep_args.base.scenario, "scenario file")
        ->check(CLI::ExistingFile)
        ->required();
    sweep_cmd->add_option("--out", sweep_args.base.out_dir, "output directory")->required();
    sweep_cmd->add_option("--param", sweep_args.param, "parameter name to sweep")->required();
    sweep_cmd->add_option("--values", sweep_args.values, "comma-separated values")
        ->required()
        ->delimiter(',');
    sweep_cmd->add_option("--seeds", sweep_args.seeds, "comma-separated seeds")
        ->delimiter(',');
    sweep_cmd->add_option("--workers", sweep_args.base.workers, "worker thread count")
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (validate_cmd->parsed()) return do_validate(validate_args);
        if (run_cmd->parsed()) return do_run(run_args);
        return do_sweep(sweep_args);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const ValidationFailed& e) {
        std::cerr << "validation failed: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace crowdsim
