// runner.hpp — Experiment orchestration: configs, scenarios, sweeps, table regeneration

#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "wellgrade/metrics.hpp"

namespace wellgrade::runner {

inline constexpr const char* kVersion = "0.1.0";

// Raised when a config document fails validation; `field` names the
// offending entry (e.g. "system.c2").
struct ConfigError : std::runtime_error {
    std::string field;
    ConfigError(std::string field_, const std::string& what)
        : std::runtime_error(what), field(std::move(field_)) {}
};

struct RunConfig {
    model::SystemSpec system;
    int basis_n = 60;
    int basis_kappa = 60;
    model::ProtocolKind kind = model::ProtocolKind::Quantum1;
    double delta = 1e-3;
    double amplitude = 5.0;
    double tau_omega = 10.0;
    double ramp_fraction = 1.0 / 6.0;
    double gamma_over_omega = 1e-2;
    double lambda_over_omega = 1e-3;
    double temperature = 1.0;
    dynamics::NumericsSpec numerics;
    std::string out_dir = "out";
    std::vector<std::string> formats = {"csv", "json"};

    void validate() const; // rethrows spec violations as ConfigError
};

// Parses a config document; missing or ill-typed required fields raise
// ConfigError naming the field. Unknown keys are rejected (they are almost
// always typos).
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config_file(const std::string& path);

// Canonical snapshot used for hashing and the manifest.
nlohmann::json config_to_json(const RunConfig& config);

// FNV-1a 64-bit over the canonical serialization.
std::string content_hash(const nlohmann::json& doc);

struct ScenarioResult {
    double omega = 0.0;
    double tau = 0.0;
    double gamma = 0.0;
    double lambda = 0.0;
    dynamics::TrajectoryRecord trajectory;
    metrics::GradingReport grading;
};

ScenarioResult run_scenario_in_memory(const RunConfig& config);

// Propagates, grades, and writes trajectory.csv, grading.json, manifest.json
// into config.out_dir (or `out_dir` if nonempty).
ScenarioResult run_scenario(const RunConfig& config, const std::string& out_dir = "");

struct SweepRow {
    model::ProtocolKind kind;
    double temperature = 0.0;
    double tau_omega = 0.0;
    double hs_ratio = 0.0;
    double sigma_ir = 0.0;
    double transfer_pct = 0.0;
    double g_s = 0.0, g_q = 0.0, g_t = 0.0, grading = 0.0;
    std::string reason; // nonempty if the cell failed (values are NaN)
};

// One row per (protocol, tau_omega, T), all four protocols, in deterministic
// order. Cells run on a worker pool capped by WELLGRADE_THREADS; failures are
// recorded per row and do not stop the sweep.
std::vector<SweepRow> sweep(const RunConfig& base, const std::vector<double>& tau_omegas,
                            const std::vector<double>& temperatures);

void write_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path);

// Log-spaced default grid for the sweep subcommand.
std::vector<double> default_tau_omega_grid();

struct Table1Cell {
    model::ProtocolKind kind;
    double temperature = 0.0;
    double tau_omega = 0.0;
    double hs_ratio = 0.0;
    double sigma_ir = 0.0;
    double transfer_pct = 0.0;
    double g_s = 0.0, g_q = 0.0, g_t = 0.0, grading = 0.0;
};

// Reference values as printed in the source table, same cell order as
// table1() output: (classical1, classical2, quantum1, quantum2) x (1 K, 10 K).
extern const Table1Cell kTable1Printed[8];

struct Table1Result {
    std::vector<Table1Cell> cells;    // computed
    std::vector<Table1Cell> printed;  // reference
};

// Recomputes the eight scenario columns with the embedded defaults;
// `overrides` may replace any config field (same schema as parse_config).
Table1Result table1(const nlohmann::json& overrides = nlohmann::json::object());

void write_table1(const Table1Result& table, const std::string& directory);

// Worker-pool width: WELLGRADE_THREADS if set, hardware concurrency otherwise.
int worker_count(int cells);

} // namespace wellgrade::runner
