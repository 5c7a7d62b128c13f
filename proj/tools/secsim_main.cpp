// secsim: sunlight-aware space-edge scheduling simulator.
//
// Subcommands:
//   run       simulate one scenario and export CSV + summary
//   sweep     grid over seasons / power levels / strategies
//   validate  lint a scenario config
//   oracle    compare the heuristic against the brute-force optimum

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "secsim/scheduler.hpp"
#include "secsim/simkit.hpp"

using namespace secsim;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void print_report(const simkit::MetricsReport& r) {
    std::printf("  tasks          %d (completed %d, miss rate %.4f)\n", r.num_tasks,
                r.completed_tasks, r.miss_rate);
    std::printf("  max DoD        %.4f\n", r.global_max_dod);
    std::printf("  PSD            ground %.1f%% / sunlit %.1f%% / shadowed %.1f%%\n",
                r.psd_ground_pct, r.psd_sunlit_pct, r.psd_shadowed_pct);
    std::printf("  lifetime       mean %.2f y, min %.2f y\n", r.mean_lifetime_years,
                r.min_lifetime_years);
    std::printf("  completion     p50 %.1f s, p99 %.1f s, max %.1f s\n", r.completion_p50_s,
                r.completion_p99_s, r.completion_max_s);
    std::printf("  brownouts      %d\n", r.brownout_count);
}

int cmd_run(const std::string& config_path, const std::string& out_dir, const std::uint64_t* seed,
            const std::string& strategy) {
    auto cfg = simkit::ScenarioConfig::load(config_path);
    if (seed) cfg.seed = *seed;
    if (!strategy.empty()) cfg.strategy = baselines::strategy_from_name(strategy);
    auto run = simkit::run_simulation(cfg);
    if (!out_dir.empty()) simkit::export_result(run.result, run.instance, out_dir);
    std::printf("strategy %s, seed %llu\n", baselines::strategy_name(cfg.strategy),
                static_cast<unsigned long long>(cfg.seed));
    print_report(run.result.report);
    if (!out_dir.empty())
        std::printf("wrote %s/{metrics,tasks,dod_trace}.csv, summary.json\n", out_dir.c_str());
    return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& out_dir,
              std::vector<int> seasons, std::vector<int> powers,
              std::vector<std::string> strategies) {
    auto base = simkit::ScenarioConfig::load(config_path);
    if (seasons.empty()) seasons = {base.constellation.epoch_day_of_year};
    if (powers.empty()) powers = {base.power_level_w};
    if (strategies.empty()) strategies = {baselines::strategy_name(base.strategy)};

    std::printf("%-8s %-6s %-20s %10s %10s %10s %10s\n", "epoch", "power", "strategy", "maxDoD",
                "avgDoD", "missRate", "life(y)");
    for (int day : seasons) {
        for (int pw : powers) {
            for (const std::string& name : strategies) {
                simkit::ScenarioConfig cfg = base;
                cfg.constellation.epoch_day_of_year = day;
                cfg.power_level_w = pw;
                cfg.power.p_cp_w = pw;
                cfg.strategy = baselines::strategy_from_name(name);
                cfg.validate();
                auto run = simkit::run_simulation(cfg);
                const auto& r = run.result.report;
                double avg = 0.0;
                for (double d : r.avg_dod) avg += d;
                avg /= r.num_sats;
                std::printf("%-8d %-6d %-20s %10.4f %10.4f %10.4f %10.2f\n", day, pw, name.c_str(),
                            r.global_max_dod, avg, r.miss_rate, r.mean_lifetime_years);
                if (!out_dir.empty()) {
                    std::string sub = out_dir + "/day" + std::to_string(day) + "_" +
                                      std::to_string(pw) + "w_" + name;
                    simkit::export_result(run.result, run.instance, sub);
                }
            }
        }
    }
    return 0;
}

int cmd_validate(const std::string& config_path) {
    try {
        auto cfg = simkit::ScenarioConfig::load(config_path);
        auto tasks = simkit::generate_workload(cfg);
        std::printf("OK: %d satellites, %d orbits, %zu stations, %zu tasks over %d slots\n",
                    cfg.constellation.num_sats(), cfg.constellation.num_planes(),
                    cfg.stations.stations.size(), tasks.size(), cfg.horizon_slots);
        return 0;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    }
}

int cmd_oracle(const std::string& instance_path, const std::string& strategy_name,
               std::uint64_t guard) {
    auto inst = sbeo::SbeoInstance::from_json_string(slurp(instance_path));
    auto strategy = baselines::make_strategy(baselines::strategy_from_name(strategy_name));
    auto result = simkit::run_instance(inst, *strategy);
    double heuristic = sbeo::objective(inst, result.solution);
    auto violations = sbeo::check_feasible(inst, result.solution);

    auto oracle = sbeo::brute_force_solve(inst, ExecMode::Parallel, guard);
    std::printf("heuristic %-20s objective %.6f (%zu violations)\n", strategy_name.c_str(),
                heuristic, violations.size());
    switch (oracle.status) {
        case sbeo::OracleOutcome::Ok:
            std::printf("oracle    %-20s objective %.6f (%llu candidates)\n", "brute-force",
                        oracle.objective, static_cast<unsigned long long>(oracle.candidates));
            std::printf("gap       %.6f\n", heuristic - oracle.objective);
            return 0;
        case sbeo::OracleOutcome::TooLarge:
            std::fprintf(stderr, "oracle: search space exceeds the guard (%llu)\n",
                         static_cast<unsigned long long>(guard));
            return 1;
        case sbeo::OracleOutcome::Infeasible:
            std::fprintf(stderr, "oracle: no feasible solution\n");
            return 1;
    }
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sunlight-aware space-edge scheduling simulator"};
    app.require_subcommand(1);

    std::string config_path, out_dir, strategy, instance_path;
    std::uint64_t seed = 0, guard = 10'000'000;

    auto* run = app.add_subcommand("run", "simulate one scenario");
    run->add_option("--config", config_path, "scenario config (JSON)")->required();
    run->add_option("--out", out_dir, "output directory");
    auto* seed_opt = run->add_option("--seed", seed, "override the config seed");
    run->add_option("--strategy", strategy, "override the config strategy");

    std::vector<int> seasons, powers;
    std::vector<std::string> strategies;
    auto* sweep = app.add_subcommand("sweep", "grid over seasons, power levels, strategies");
    sweep->add_option("--config", config_path, "base scenario config (JSON)")->required();
    sweep->add_option("--out", out_dir, "output directory (one subdir per cell)");
    sweep->add_option("--seasons", seasons, "epoch days of year")->delimiter(',');
    sweep->add_option("--powers", powers, "power levels (W)")->delimiter(',');
    sweep->add_option("--strategies", strategies, "strategy names")->delimiter(',');

    auto* validate = app.add_subcommand("validate", "lint a scenario config");
    validate->add_option("--config", config_path, "scenario config (JSON)")->required();

    auto* oracle = app.add_subcommand("oracle", "tiny-instance brute force vs heuristic");
    oracle->add_option("--instance", instance_path, "problem instance (JSON)")->required();
    oracle->add_option("--strategy", strategy, "heuristic to compare")
        ->default_val("SunlightAware");
    oracle->add_option("--guard", guard, "candidate-space guard");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed())
            return cmd_run(config_path, out_dir, seed_opt->count() ? &seed : nullptr, strategy);
        if (sweep->parsed()) return cmd_sweep(config_path, out_dir, seasons, powers, strategies);
        if (validate->parsed()) return cmd_validate(config_path);
        if (oracle->parsed()) return cmd_oracle(instance_path, strategy, guard);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
