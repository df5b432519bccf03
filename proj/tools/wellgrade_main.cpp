// wellgrade_main.cpp — Command-line front end

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wellgrade/lz.hpp"
#include "wellgrade/phasespace.hpp"
#include "wellgrade/runner.hpp"

namespace {

using namespace wellgrade;

std::vector<double> parse_list(const std::string& csv, const char* what) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw runner::ConfigError(what, std::string(what) + ": cannot parse '" + item + "'");
        }
    }
    return out;
}

int cmd_simulate(const std::string& config_path, const std::string& out_dir) {
    runner::RunConfig cfg = runner::load_config_file(config_path);
    runner::ScenarioResult res = runner::run_scenario(cfg, out_dir);
    std::printf("omega      %.6g\n", res.omega);
    std::printf("tau        %.6g\n", res.tau);
    std::printf("sigma_ir   %.6g\n", res.grading.sigma_ir);
    std::printf("transfer   %.4f\n", res.grading.transfer_pct);
    std::printf("g_s %.4f  g_q %.4f  g_t %.4f  G %.4f\n", res.grading.g_s, res.grading.g_q,
                res.grading.g_t, res.grading.grading);
    return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& tau_list,
              const std::string& temp_list, const std::string& out_dir) {
    runner::RunConfig cfg = runner::load_config_file(config_path);
    std::vector<double> taus =
        tau_list.empty() ? runner::default_tau_omega_grid() : parse_list(tau_list, "tau-omega");
    std::vector<double> temps = parse_list(temp_list, "temps");
    auto rows = runner::sweep(cfg, taus, temps);
    const std::string path = out_dir + "/sweep.csv";
    runner::write_sweep_csv(rows, path);
    int failed = 0;
    for (const auto& r : rows) {
        if (!r.reason.empty()) ++failed;
    }
    std::printf("wrote %s (%zu rows, %d failed)\n", path.c_str(), rows.size(), failed);
    return 0;
}

int cmd_table1(const std::string& overrides_path, const std::string& out_dir) {
    nlohmann::json overrides = nlohmann::json::object();
    if (!overrides_path.empty()) {
        std::ifstream in(overrides_path);
        if (!in) throw runner::ConfigError("", "config: cannot open file " + overrides_path);
        overrides = nlohmann::json::parse(in, nullptr, true, true);
    }
    runner::Table1Result table = runner::table1(overrides);
    runner::write_table1(table, out_dir);
    std::printf("%-12s %6s %10s %10s %8s %6s %6s %6s %8s\n", "protocol", "T", "hs_ratio",
                "sigma_ir", "P(x<=0)", "g_s", "g_q", "g_t", "G");
    for (const auto& c : table.cells) {
        std::printf("%-12s %6.1f %10.4g %10.4g %8.4f %6.3f %6.3f %6.3f %8.4g\n",
                    model::to_string(c.kind), c.temperature, c.hs_ratio, c.sigma_ir,
                    c.transfer_pct, c.g_s, c.g_q, c.g_t, c.grading);
    }
    std::printf("wrote %s/table1.csv and table1.json\n", out_dir.c_str());
    return 0;
}

int cmd_lz_demo(double delta, double tau, bool with_cd) {
    lz::LZSpec spec;
    spec.delta = delta;
    spec.tau = tau;
    spec.with_cd = with_cd;
    lz::LZResult res = lz::lz_run(spec);
    std::printf("Landau-Zener sweep  Delta=%g  g: %g -> %g  tau=%g  cd=%s\n", spec.delta,
                spec.g0, spec.g1, spec.tau, with_cd ? "on" : "off");
    std::printf("final ground-state fidelity  %.6f\n", res.final_fidelity);
    std::printf("min instantaneous fidelity   %.6f\n", res.min_fidelity);
    std::printf("final <sigma_x>              %.6f\n", res.final_sigma_x);
    return 0;
}

int cmd_validate() {
    int failures = 0;
    auto report = [&](const char* name, bool ok, const std::string& detail) {
        std::printf("[%s] %s  %s\n", ok ? "ok" : "FAIL", name, detail.c_str());
        if (!ok) ++failures;
    };

    {
        spin::SpinBasis basis = spin::build_basis(60, 60);
        model::SystemSpec system;
        model::ProtocolSpec protocol;
        protocol.kind = model::ProtocolKind::Classical1;
        protocol.tau = 1.0;
        auto levels = model::benchmark_discretization(basis, system, protocol, 0.0,
                                                      {-12.0, 12.0, 4000}, 15);
        double worst = 0.0;
        for (const auto& l : levels) worst = std::max(worst, l.rel_err);
        std::ostringstream detail;
        detail << "max rel err over first 15 levels: " << worst;
        report("discretization vs continuum", worst < 0.01, detail.str());
    }
    {
        const double err = phasespace::verify_decomposition(32, 100);
        std::ostringstream detail;
        detail << "max entrywise deviation: " << err;
        report("dissipator decomposition identity", err < 1e-10, detail.str());
    }
    {
        spin::SpinBasis basis = spin::build_basis(60, 60);
        auto grid = phasespace::sphere_grid(basis.dim);
        auto grid2 = phasespace::sphere_grid(basis.dim, 2 * grid.n_theta, 2 * grid.n_phi);
        Matrix rho = Matrix::Identity(basis.dim, basis.dim) / double(basis.dim);
        auto f1 = phasespace::husimi_field(rho, grid, basis);
        auto f2 = phasespace::husimi_field(rho, grid2, basis);
        const double s1 = phasespace::wehrl_entropy(f1, basis.dim);
        const double s2 = phasespace::wehrl_entropy(f2, basis.dim);
        std::ostringstream detail;
        detail << "norm " << f1.normalization << ", S_Q " << s1 << " vs ln N "
               << std::log(basis.dim) << ", refined " << s2;
        const bool ok = std::abs(f1.normalization - 1.0) < 1e-10 &&
                        std::abs(s1 - std::log(basis.dim)) < 1e-6 &&
                        std::abs(s1 - s2) < 1e-6;
        report("sphere grid refinement", ok, detail.str());
    }
    return failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"wellgrade: double-well state-transfer simulation and protocol grading"};
    app.require_subcommand(1);

    std::string config_path, out_dir = "out", tau_list, temp_list, overrides_path;

    auto* simulate = app.add_subcommand("simulate", "run one scenario from a config file");
    simulate->add_option("--config", config_path, "JSON config file")->required();
    simulate->add_option("--out", out_dir, "output directory (default: config output.directory)")
        ->default_val("");

    auto* sweep = app.add_subcommand("sweep", "grade all four protocols over a grid");
    sweep->add_option("--config", config_path, "JSON config file")->required();
    sweep->add_option("--tau-omega", tau_list, "comma-separated tau*omega list");
    sweep->add_option("--temps", temp_list, "comma-separated temperature list")->required();
    sweep->add_option("--out", out_dir, "output directory")->default_val("out");

    auto* table = app.add_subcommand("table1", "recompute the eight reference scenarios");
    table->add_option("--config", overrides_path, "JSON overrides applied to every scenario");
    table->add_option("--out", out_dir, "output directory")->default_val("out");

    double lz_delta = 0.05, lz_tau = 1.0;
    bool lz_cd = true;
    auto* lzdemo = app.add_subcommand("lz-demo", "two-level Landau-Zener demonstration");
    lzdemo->add_option("--delta", lz_delta, "gap parameter");
    lzdemo->add_option("--tau", lz_tau, "sweep duration");
    lzdemo->add_flag("--cd,!--no-cd", lz_cd, "counter-diabatic assistance");

    auto* validate = app.add_subcommand("validate", "discretization, decomposition and grid checks");

    try {
        app.parse(argc, argv);
        if (simulate->parsed()) return cmd_simulate(config_path, out_dir);
        if (sweep->parsed()) return cmd_sweep(config_path, tau_list, temp_list, out_dir);
        if (table->parsed()) return cmd_table1(overrides_path, out_dir);
        if (lzdemo->parsed()) return cmd_lz_demo(lz_delta, lz_tau, lz_cd);
        if (validate->parsed()) return cmd_validate();
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const wellgrade::runner::ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 0;
}
