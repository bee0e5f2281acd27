#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "coopcell/experiments.hpp"
#include "coopcell/table.hpp"

using namespace coopcell;

int main(int argc, char** argv) {
    CLI::App app{"uplink user-assisted relaying: experiment runner"};
    app.require_subcommand(1);

    std::string experiment, config_path, out_path, format = "csv";
    long long seed = -1;
    int workers = 1;
    CLI::App* run = app.add_subcommand("run", "run one registered experiment");
    run->add_option("--experiment", experiment, "experiment id (see list_experiments)")
        ->required();
    run->add_option("--config", config_path, "flat key=value config file")->required();
    run->add_option("--out", out_path, "output file path")->required();
    run->add_option("--seed", seed, "override the config seed")
        ->check(CLI::NonNegativeNumber);
    run->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    run->add_option("--workers", workers, "Monte Carlo worker threads")
        ->check(CLI::Range(1, 256));
    CLI::App* list = app.add_subcommand("list_experiments", "print the experiment registry");

    CLI11_PARSE(app, argc, argv);

    if (list->parsed()) {
        for (const auto& e : experiment_registry())
            std::printf("%-12s %s\n", e.id.c_str(), e.description.c_str());
        return 0;
    }

    RunConfig cfg;
    try {
        cfg = load_config(config_path);
        if (seed >= 0) cfg.seed = std::uint64_t(seed);
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    try {
        const auto t0 = std::chrono::steady_clock::now();
        const Table t = run_experiment(experiment, cfg, workers, &std::cout);
        MetaList meta;
        meta.emplace_back("experiment", experiment);
        for (auto& kv : cfg.resolved()) meta.push_back(std::move(kv));
        write_text_file(out_path, format == "json" ? json_string(t, meta) : csv_string(t, meta));
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s: %zu rows, %.2f s, seed %llu -> %s\n", experiment.c_str(), t.rows.size(),
                    secs, static_cast<unsigned long long>(cfg.seed), out_path.c_str());
        return 0;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
