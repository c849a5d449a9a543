// arcmelt command-line driver: check / solve / oracle / sweep.
//
// Exit codes: 0 success, 1 model or solver failure, 2 configuration failure.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "arcmelt/solver.hpp"

namespace {

int guarded(const std::function<int()>& body) {
    try {
        return body();
    } catch (const arcmelt::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const arcmelt::ModelError& e) {
        std::cerr << "model error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"arcmelt: self-similar two-phase melting solver for closure-arc contact "
                 "heating with temperature-dependent coefficients and a Joule source"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    bool force = false;
    double tol = -1;
    int grid = -1;
    double snapshot = -1;
    app.add_option("--config", config_path, "config file path")->required();
    app.add_option("--out", out_dir, "output directory for report/profile files");
    app.add_flag("--force", force, "attempt the solve even when checks fail");
    app.add_option("--tol", tol, "override the root tolerance on Z - M xi^3");
    app.add_option("--grid", grid, "override the per-domain grid size");
    app.add_option("--snapshot-time", snapshot, "time used for the theta column of profiles");

    auto* cmd_check = app.add_subcommand("check", "run hypothesis and window checks only");
    auto* cmd_solve = app.add_subcommand("solve", "full solve: alpha0, windows, xi*, profiles");
    auto* cmd_oracle =
        app.add_subcommand("oracle", "compare the fixed-point solve with the shooting solver");
    auto* cmd_sweep = app.add_subcommand("sweep", "repeat the solve over a parameter range");

    std::string sweep_param;
    double sweep_min = 0, sweep_max = 0;
    int sweep_count = 5;
    cmd_sweep->add_option("--param", sweep_param, "physical parameter name")->required();
    cmd_sweep->add_option("--min", sweep_min, "range start")->required();
    cmd_sweep->add_option("--max", sweep_max, "range end")->required();
    cmd_sweep->add_option("--count", sweep_count, "number of sweep points");

    CLI11_PARSE(app, argc, argv);

    return guarded([&]() -> int {
        auto cfg = arcmelt::config::parse_config_file(config_path);
        if (tol > 0) cfg.solver.root_tol = tol;
        if (grid > 0) cfg.solver.picard.grid_size = grid;
        if (snapshot > 0) cfg.solver.snapshot_time = snapshot;

        if (cmd_check->parsed()) {
            auto rep = arcmelt::solver::run_check(cfg);
            std::cout << arcmelt::solver::render_report(rep);
            if (!out_dir.empty()) arcmelt::solver::export_solution(out_dir, rep, cfg);
            return rep.checks_pass ? 0 : 1;
        }
        if (cmd_solve->parsed()) {
            auto rep = arcmelt::solver::run_solve(cfg, force);
            std::cout << arcmelt::solver::render_report(rep);
            if (!out_dir.empty()) arcmelt::solver::export_solution(out_dir, rep, cfg);
            return rep.solved ? 0 : 1;
        }
        if (cmd_oracle->parsed()) {
            auto rep = arcmelt::solver::run_oracle(cfg);
            std::cout << arcmelt::solver::render_oracle(rep);
            return rep.pass() ? 0 : 1;
        }
        if (cmd_sweep->parsed()) {
            auto sw = arcmelt::solver::run_sweep(cfg, sweep_param, sweep_min, sweep_max,
                                                 sweep_count);
            const std::string text = arcmelt::solver::render_sweep(sw);
            std::cout << text;
            if (!out_dir.empty()) {
                std::filesystem::create_directories(out_dir);
                std::ofstream out(std::filesystem::path(out_dir) / "sweep.csv");
                out << text;
            }
            for (const auto& row : sw.rows)
                if (row.ok) return 0;
            return 1;
        }
        return 2;
    });
}
