#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gqs/config.hpp"
#include "gqs/critical.hpp"
#include "gqs/serialize.hpp"
#include "gqs/solver.hpp"

namespace fs = std::filesystem;
using namespace gqs;

namespace {

// exit codes shared by the subcommands
constexpr int kExitOk = 0;
constexpr int kExitCheckFail = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNoConverge = 3;
constexpr int kExitAssumptions = 4;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                         start)
            .count();
    }
};

std::string out_path(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

int cmd_solve(const RunConfig& cfg, const std::string& out_dir) {
    Timer timer;
    const Model model = build_model(cfg);
    SolveReport report;
    int code = kExitOk;
    try {
        report = minimize_ground_state(model, cfg.solve);
    } catch (const std::invalid_argument& e) {
        std::cerr << "assumption checks failed: " << e.what() << "\n";
        return kExitAssumptions;
    } catch (const NumericError& e) {
        std::cerr << "solve aborted: " << e.what() << "\n";
        return kExitNoConverge;
    }
    if (!report.converged || !report.certificate.pass) code = kExitNoConverge;

    const std::string report_path = out_path(out_dir, "report.json");
    const std::string v_path = out_path(out_dir, "v_star.csv");
    const std::string u_path = out_path(out_dir, "u_star.csv");
    write_text(report_path, to_json(report).dump(2) + "\n");
    write_field_csv(v_path, report.v_star);
    write_field_csv(u_path, report.u_star);
    append_manifest(out_path(out_dir, "manifest.jsonl"), "solve", cfg.echo,
                    grid_fingerprint(cfg.dimension, cfg.solve.radius, cfg.solve.nodes),
                    timer.ms(), {report_path, v_path, u_path}, code == kExitOk);

    std::printf("solve: converged=%d iters=%d c=%.10g threshold=%.10g nehari=%.3e\n",
                report.converged ? 1 : 0, report.iterations, report.level_c,
                report.level_threshold, report.nehari_res);
    if (report.growth_warning)
        std::printf("warning: (f4) growth check failed; theorem hypotheses not met\n");
    return code;
}

PropertyReport fibering_suite(const Model& model, std::uint64_t seed) {
    GridPtr grid = make_grid(model.dimension(), 20.0, 512);
    Rng rng(seed);
    PropertyReport report;
    double worst_sign = 0.0, worst_match = 0.0;
    bool pass_sign = true, pass_match = true;
    for (int k = 0; k < 100; ++k) {
        const double amp = rng.uniform(0.5, 2.0);
        const double center = rng.uniform(0.0, 8.0);
        const double width = rng.uniform(0.5, 3.0);
        Field v = Field::from_function(grid, [&](double r) {
            const double z = (r - center) / width;
            return amp * std::exp(-0.5 * z * z);
        });
        const int changes = fibering_sign_changes(model, v, 1e-6, 1e6, 8);
        if (changes != 1) {
            pass_sign = false;
            worst_sign = std::max(worst_sign, static_cast<double>(changes));
        }
        const auto fib = project_nehari(model, v);
        const auto gold = golden_max([&](double t) { return fibering_map(model, v, t); },
                                     fib.t_star / 16.0, fib.t_star * 16.0, 1e-12);
        const double rel = std::abs(gold.root - fib.t_star) / fib.t_star;
        worst_match = std::max(worst_match, rel);
        if (rel > 1e-6) pass_match = false;
    }
    report.entries.push_back(
        {"fibering: exactly one sign change of M'", "100 random bumps", worst_sign, pass_sign});
    report.entries.push_back(
        {"fibering: projection matches golden-section", "100 random bumps", worst_match,
         pass_match});
    return report;
}

PropertyReport equivalence_suite(const Model& model, const RunConfig& cfg, std::uint64_t seed) {
    GridPtr grid = make_grid(model.dimension(), cfg.solve.radius, cfg.solve.nodes);
    const auto bank = default_test_bank(grid);
    Rng rng(seed);
    PropertyReport report;

    // Eq.(3) <-> Eq.(4) with psi = phi / g(u), family-scale relative agreement
    double scale = 0.0, worst_abs = 0.0;
    for (int k = 0; k < 6; ++k) {
        const double amp = rng.uniform(0.5, 8.0);
        const double center = rng.uniform(0.0, cfg.solve.radius / 4.0);
        const double width = rng.uniform(1.0, cfg.solve.radius / 8.0);
        Field v = Field::from_function(grid, [&](double r) {
            const double z = (r - center) / width;
            return amp * std::exp(-0.5 * z * z);
        });
        Field u = back_transform(model.transform(), v);
        for (const auto& phi : bank) {
            Field psi = phi;
            for (std::size_t j = 0; j < psi.v.size(); ++j)
                psi.v[j] = phi.v[j] / model.transform().g(u.v[j]);
            const double p4 = pair_modified(model, v, phi) / norm_E(model, phi);
            const double p3 = pair_original(model, u, psi) / norm_E(model, phi);
            scale = std::max(scale, std::abs(p4));
            worst_abs = std::max(worst_abs, std::abs(p3 - p4));
        }
    }
    const double rel = worst_abs / std::max(scale, 1e-300);
    report.entries.push_back({"weak-form equivalence Eq(3)<->Eq(4)",
                              "random fields, ||v||_inf <= 10", rel, rel <= 1e-2});

    // gradient vs central difference quotient of the energy
    double worst_fd = 0.0;
    for (int k = 0; k < 20; ++k) {
        const double a1 = rng.uniform(0.5, 2.0), c1 = rng.uniform(0.0, 10.0),
                     w1 = rng.uniform(0.5, 4.0);
        const double a2 = rng.uniform(0.5, 2.0), c2 = rng.uniform(0.0, 10.0),
                     w2 = rng.uniform(0.5, 4.0);
        Field v = Field::from_function(grid, [&](double r) {
            const double z = (r - c1) / w1;
            return a1 * std::exp(-0.5 * z * z);
        });
        Field phi = Field::from_function(grid, [&](double r) {
            const double z = (r - c2) / w2;
            return a2 * std::exp(-0.5 * z * z);
        });
        const double eps = 1e-4;
        Field vp = v, vm = v;
        for (std::size_t j = 0; j < v.v.size(); ++j) {
            vp.v[j] += eps * phi.v[j];
            vm.v[j] -= eps * phi.v[j];
        }
        const double dq = (energy(model, vp).total - energy(model, vm).total) / (2.0 * eps);
        const double pair = pair_modified(model, v, phi);
        worst_fd = std::max(worst_fd, std::abs(pair - dq) / (1.0 + std::abs(dq)));
    }
    report.entries.push_back({"gradient matches difference quotient",
                              "20 random pairs, eps=1e-4", worst_fd, worst_fd <= 1e-4});
    return report;
}

int cmd_verify(const RunConfig& cfg, const std::string& suite, const std::string& out_dir) {
    Timer timer;
    const Model model = build_model(cfg);
    const auto samples = logspace(1e-6, 1e6, 4);

    std::vector<std::pair<std::string, PropertyReport>> reports;
    if (suite == "g" || suite == "all")
        reports.emplace_back("g", check_g_assumptions(model.transform(), samples));
    if (suite == "growth" || suite == "all")
        reports.emplace_back("growth", check_growth_conditions(model, samples, {}));
    if (suite == "fibering" || suite == "all")
        reports.emplace_back("fibering", fibering_suite(model, cfg.seed));
    if (suite == "functional-equivalence" || suite == "all")
        reports.emplace_back("functional-equivalence", equivalence_suite(model, cfg, cfg.seed));
    if (reports.empty()) {
        std::cerr << "unknown suite '" << suite << "'\n";
        return kExitConfig;
    }

    bool all_pass = true;
    nlohmann::json doc = nlohmann::json::object();
    std::vector<std::string> outputs;
    for (const auto& [name, rep] : reports) {
        print_property_table(rep, "suite: " + name);
        doc[name] = to_json(rep);
        all_pass = all_pass && rep.overall();
    }
    const std::string json_path = out_path(out_dir, "verify_" + suite + ".json");
    write_text(json_path, doc.dump(2) + "\n");
    outputs.push_back(json_path);
    append_manifest(out_path(out_dir, "manifest.jsonl"), "verify " + suite, cfg.echo,
                    grid_fingerprint(cfg.dimension, cfg.solve.radius, cfg.solve.nodes),
                    timer.ms(), outputs, all_pass);
    return all_pass ? kExitOk : kExitCheckFail;
}

int cmd_level(const RunConfig& cfg, const std::vector<double>& eps_override,
              const std::string& out_dir) {
    Timer timer;
    const Model model = build_model(cfg);
    const std::vector<double>& eps = eps_override.empty() ? cfg.sweep_eps : eps_override;
    GridPtr grid = make_grid(model.dimension(), 2.0 * model.omega_radius(), 8192);
    const double s_ref = sobolev_constant(model.dimension());
    const auto bounds = level_bound_check(model, eps, grid, s_ref);

    const LevelBound* smallest = nullptr;
    for (const auto& b : bounds)
        if (b.resolved && (!smallest || b.eps < smallest->eps)) smallest = &b;

    const std::string csv_path = out_path(out_dir, "level.csv");
    const std::string json_path = out_path(out_dir, "level.json");
    write_level_csv(csv_path, bounds);
    write_text(json_path, to_json(bounds).dump(2) + "\n");

    int code = kExitOk;
    if (!smallest) {
        std::cerr << "level: no swept eps is resolved on this grid\n";
        code = kExitNoConverge;
    } else {
        std::printf("level: smallest resolved eps=%.3e maxI=%.6f threshold=%.6f margin=%+.6f\n",
                    smallest->eps, smallest->max_value, smallest->threshold, smallest->margin);
        if (!(smallest->margin > 0.0)) code = kExitCheckFail;
    }
    append_manifest(out_path(out_dir, "manifest.jsonl"), "level", cfg.echo,
                    grid_fingerprint(cfg.dimension, 2.0 * model.omega_radius(), 8192),
                    timer.ms(), {csv_path, json_path}, code == kExitOk);
    return code;
}

int cmd_sweep_export(const RunConfig& cfg, const std::vector<double>& eps_override,
                     const std::string& out_dir) {
    Timer timer;
    const Model model = build_model(cfg);
    const std::vector<double>& eps = eps_override.empty() ? cfg.sweep_eps : eps_override;
    GridPtr grid = make_grid(model.dimension(), 2.0 * model.omega_radius(), 8192);
    SweepReport rep;
    try {
        rep = eps_sweep(model, eps, grid);
    } catch (const NumericError& e) {
        std::cerr << "sweep-export: " << e.what() << "\n";
        return kExitNoConverge;
    }
    const std::string csv_path = out_path(out_dir, "sweep.csv");
    const std::string json_path = out_path(out_dir, "sweep.json");
    write_sweep_csv(csv_path, rep);
    write_text(json_path, to_json(rep).dump(2) + "\n");
    append_manifest(out_path(out_dir, "manifest.jsonl"), "sweep-export", cfg.echo,
                    grid_fingerprint(cfg.dimension, 2.0 * model.omega_radius(), 8192),
                    timer.ms(), {csv_path, json_path}, true);
    std::printf("sweep: grad-excess slope=%.4f l2 slope=%.4f K=%.6f\n", rep.grad_excess.slope,
                rep.l2_rate.slope, rep.k_estimate);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ground states of generalized quasilinear Schrodinger equations"};
    app.require_subcommand(1);

    std::string config_path, out_dir = ".", suite = "all";
    std::vector<double> eps_list;
    std::int64_t seed_override = -1;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON configuration file")->required();
        cmd->add_option("--out", out_dir, "output directory");
        cmd->add_option("--seed", seed_override, "override the config seed");
    };
    auto* solve = app.add_subcommand("solve", "compute a ground state");
    add_common(solve);
    auto* verify = app.add_subcommand("verify", "run a property suite");
    add_common(verify);
    verify->add_option("--suite", suite, "g | growth | fibering | functional-equivalence | all");
    auto* level = app.add_subcommand("level", "energy threshold sweep");
    add_common(level);
    level->add_option("--eps", eps_list, "epsilon list")->delimiter(',');
    auto* sweep = app.add_subcommand("sweep-export", "instanton estimate sweep");
    add_common(sweep);
    sweep->add_option("--eps", eps_list, "epsilon list")->delimiter(',');

    CLI11_PARSE(app, argc, argv);

    RunConfig cfg;
    try {
        cfg = load_config(config_path);
        if (seed_override >= 0) cfg.seed = static_cast<std::uint64_t>(seed_override);
        std::error_code ec;
        fs::create_directories(out_dir, ec);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }

    try {
        if (solve->parsed()) return cmd_solve(cfg, out_dir);
        if (verify->parsed()) return cmd_verify(cfg, suite, out_dir);
        if (level->parsed()) return cmd_level(cfg, eps_list, out_dir);
        if (sweep->parsed()) return cmd_sweep_export(cfg, eps_list, out_dir);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid model or grid: " << e.what() << "\n";
        return kExitAssumptions;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNoConverge;
    }
    return kExitConfig;
}
