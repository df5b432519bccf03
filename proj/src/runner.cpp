// runner.cpp — Config parsing, scenario execution, sweeps, and artifacts

#include "wellgrade/runner.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <thread>

namespace wellgrade::runner {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string format_g9(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

double json_finite(double v) { return std::isfinite(v) ? v : kNaN; }

const json* find_member(const json& obj, const std::string& key) {
    auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

double require_number(const json& obj, const std::string& section, const std::string& key) {
    const std::string path = section.empty() ? key : section + "." + key;
    const json* v = find_member(obj, key);
    if (!v) throw ConfigError(path, "config: missing required field " + path);
    if (!v->is_number()) throw ConfigError(path, "config: field " + path + " must be a number");
    return v->get<double>();
}

double optional_number(const json& obj, const std::string& section, const std::string& key,
                       double fallback) {
    const json* v = find_member(obj, key);
    if (!v) return fallback;
    if (!v->is_number()) {
        throw ConfigError(section + "." + key, "config: field " + section + "." + key +
                                                   " must be a number");
    }
    return v->get<double>();
}

int optional_int(const json& obj, const std::string& section, const std::string& key,
                 int fallback) {
    const json* v = find_member(obj, key);
    if (!v) return fallback;
    if (!v->is_number_integer()) {
        throw ConfigError(section + "." + key, "config: field " + section + "." + key +
                                                   " must be an integer");
    }
    return v->get<int>();
}

void reject_unknown(const json& obj, const std::string& section,
                    const std::set<std::string>& allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!allowed.count(it.key())) {
            throw ConfigError(section + "." + it.key(),
                              "config: unknown field " + section + "." + it.key());
        }
    }
}

std::string utc_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&tt, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hash_string(const std::string& bytes) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "fnv1a:%016llx",
                  static_cast<unsigned long long>(fnv1a(bytes)));
    return buf;
}

void write_file(const fs::path& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << body;
}

void merge_patch(json& base, const json& overlay) {
    if (!overlay.is_object()) {
        base = overlay;
        return;
    }
    if (!base.is_object()) base = json::object();
    for (auto it = overlay.begin(); it != overlay.end(); ++it) {
        if (it->is_object() && base.contains(it.key())) {
            merge_patch(base[it.key()], *it);
        } else {
            base[it.key()] = *it;
        }
    }
}

void run_pool(int jobs, int workers, const std::function<void(int)>& job) {
    std::atomic<int> next{0};
    auto work = [&] {
        for (int i = next.fetch_add(1); i < jobs; i = next.fetch_add(1)) job(i);
    };
    workers = std::max(1, std::min(workers, jobs));
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
}

} // namespace

int worker_count(int cells) {
    if (const char* env = std::getenv("WELLGRADE_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return std::min(n, cells);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return std::min<int>(cells, hw > 0 ? static_cast<int>(hw) : 1);
}

void RunConfig::validate() const {
    try {
        system.validate();
    } catch (const std::exception& e) {
        throw ConfigError("system", std::string("config: ") + e.what());
    }
    if (basis_n < 2) throw ConfigError("basis.N", "config: basis.N must be >= 2");
    if (basis_kappa < 0) throw ConfigError("basis.kappa", "config: basis.kappa must be >= 0");
    if (!(delta > 0.0)) throw ConfigError("protocol.delta", "config: protocol.delta must be > 0");
    if (!(tau_omega > 0.0)) {
        throw ConfigError("protocol.tau_omega", "config: protocol.tau_omega must be > 0");
    }
    if (!model::is_quantum(kind) && !(amplitude > delta)) {
        throw ConfigError("protocol.amplitude",
                          "config: protocol.amplitude must exceed delta for classical kinds");
    }
    if (!(ramp_fraction > 0.0 && ramp_fraction <= 0.5)) {
        throw ConfigError("protocol.ramp_fraction",
                          "config: protocol.ramp_fraction must lie in (0, 1/2]");
    }
    if (gamma_over_omega < 0.0) {
        throw ConfigError("environment.gamma_over_omega",
                          "config: environment.gamma_over_omega must be >= 0");
    }
    if (lambda_over_omega < 0.0) {
        throw ConfigError("environment.lambda_over_omega",
                          "config: environment.lambda_over_omega must be >= 0");
    }
    if (!(temperature > 0.0)) {
        throw ConfigError("environment.T", "config: environment.T must be > 0");
    }
    try {
        numerics.validate();
    } catch (const std::exception& e) {
        throw ConfigError("numerics", std::string("config: ") + e.what());
    }
}

RunConfig parse_config(const json& doc) {
    if (!doc.is_object()) throw ConfigError("", "config: document must be a JSON object");
    reject_unknown(doc, "",
                   {"system", "basis", "protocol", "environment", "numerics", "output"});

    RunConfig cfg;

    const json* system = find_member(doc, "system");
    if (!system) throw ConfigError("system", "config: missing required section system");
    reject_unknown(*system, "system", {"c1", "c2", "m"});
    cfg.system.c1 = require_number(*system, "system", "c1");
    cfg.system.c2 = require_number(*system, "system", "c2");
    cfg.system.mass = optional_number(*system, "system", "m", 1.0);

    const json* basis = find_member(doc, "basis");
    if (!basis) throw ConfigError("basis", "config: missing required section basis");
    reject_unknown(*basis, "basis", {"N", "kappa"});
    cfg.basis_n = static_cast<int>(require_number(*basis, "basis", "N"));
    cfg.basis_kappa = static_cast<int>(require_number(*basis, "basis", "kappa"));

    const json* protocol = find_member(doc, "protocol");
    if (!protocol) throw ConfigError("protocol", "config: missing required section protocol");
    reject_unknown(*protocol, "protocol",
                   {"kind", "delta", "amplitude", "tau_omega", "ramp_fraction"});
    const json* kind = find_member(*protocol, "kind");
    if (!kind || !kind->is_string()) {
        throw ConfigError("protocol.kind", "config: protocol.kind must be a string");
    }
    try {
        cfg.kind = model::protocol_kind_from_string(kind->get<std::string>());
    } catch (const std::exception& e) {
        throw ConfigError("protocol.kind", std::string("config: ") + e.what());
    }
    cfg.delta = require_number(*protocol, "protocol", "delta");
    cfg.tau_omega = require_number(*protocol, "protocol", "tau_omega");
    const double default_amp = (cfg.kind == model::ProtocolKind::Classical2) ? 1.0 : 5.0;
    cfg.amplitude = optional_number(*protocol, "protocol", "amplitude", default_amp);
    cfg.ramp_fraction = optional_number(*protocol, "protocol", "ramp_fraction", 1.0 / 6.0);

    const json* env = find_member(doc, "environment");
    if (!env) throw ConfigError("environment", "config: missing required section environment");
    reject_unknown(*env, "environment", {"gamma_over_omega", "lambda_over_omega", "T"});
    cfg.gamma_over_omega = require_number(*env, "environment", "gamma_over_omega");
    cfg.lambda_over_omega = require_number(*env, "environment", "lambda_over_omega");
    cfg.temperature = require_number(*env, "environment", "T");

    if (const json* num = find_member(doc, "numerics")) {
        reject_unknown(*num, "numerics",
                       {"abs_tol", "rel_tol", "max_step", "min_step", "sample_stride",
                        "max_sample_dt", "hermitize_every", "n_theta", "n_phi", "q_floor",
                        "store_states", "cd_scan_points"});
        auto& n = cfg.numerics;
        n.abs_tol = optional_number(*num, "numerics", "abs_tol", n.abs_tol);
        n.rel_tol = optional_number(*num, "numerics", "rel_tol", n.rel_tol);
        n.max_step = optional_number(*num, "numerics", "max_step", n.max_step);
        n.min_step = optional_number(*num, "numerics", "min_step", n.min_step);
        n.sample_stride = optional_int(*num, "numerics", "sample_stride", n.sample_stride);
        n.max_sample_dt = optional_number(*num, "numerics", "max_sample_dt", n.max_sample_dt);
        n.hermitize_every = optional_int(*num, "numerics", "hermitize_every", n.hermitize_every);
        n.n_theta = optional_int(*num, "numerics", "n_theta", n.n_theta);
        n.n_phi = optional_int(*num, "numerics", "n_phi", n.n_phi);
        n.q_floor = optional_number(*num, "numerics", "q_floor", n.q_floor);
        n.cd_scan_points = optional_int(*num, "numerics", "cd_scan_points", n.cd_scan_points);
        if (const json* ss = find_member(*num, "store_states")) {
            if (!ss->is_boolean()) {
                throw ConfigError("numerics.store_states",
                                  "config: numerics.store_states must be a boolean");
            }
            n.store_states = ss->get<bool>();
        }
    }

    if (const json* out = find_member(doc, "output")) {
        reject_unknown(*out, "output", {"directory", "formats"});
        if (const json* dir = find_member(*out, "directory")) {
            if (!dir->is_string()) {
                throw ConfigError("output.directory", "config: output.directory must be a string");
            }
            cfg.out_dir = dir->get<std::string>();
        }
        if (const json* fmts = find_member(*out, "formats")) {
            if (!fmts->is_array()) {
                throw ConfigError("output.formats", "config: output.formats must be an array");
            }
            cfg.formats.clear();
            for (const auto& f : *fmts) {
                if (!f.is_string() || (f != "csv" && f != "json")) {
                    throw ConfigError("output.formats",
                                      "config: output.formats entries must be 'csv' or 'json'");
                }
                cfg.formats.push_back(f.get<std::string>());
            }
        }
    }

    cfg.validate();
    return cfg;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("", "config: cannot open file " + path);
    json doc;
    try {
        doc = json::parse(in, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        throw ConfigError("", std::string("config: JSON parse error: ") + e.what());
    }
    return parse_config(doc);
}

json config_to_json(const RunConfig& c) {
    json doc;
    doc["system"] = {{"c1", c.system.c1}, {"c2", c.system.c2}, {"m", c.system.mass}};
    doc["basis"] = {{"N", c.basis_n}, {"kappa", c.basis_kappa}};
    doc["protocol"] = {{"kind", model::to_string(c.kind)},
                       {"delta", c.delta},
                       {"amplitude", c.amplitude},
                       {"tau_omega", c.tau_omega},
                       {"ramp_fraction", c.ramp_fraction}};
    doc["environment"] = {{"gamma_over_omega", c.gamma_over_omega},
                          {"lambda_over_omega", c.lambda_over_omega},
                          {"T", c.temperature}};
    doc["numerics"] = {{"abs_tol", c.numerics.abs_tol},
                       {"rel_tol", c.numerics.rel_tol},
                       {"max_step", c.numerics.max_step},
                       {"min_step", c.numerics.min_step},
                       {"sample_stride", c.numerics.sample_stride},
                       {"max_sample_dt", c.numerics.max_sample_dt},
                       {"hermitize_every", c.numerics.hermitize_every},
                       {"n_theta", c.numerics.n_theta},
                       {"n_phi", c.numerics.n_phi},
                       {"q_floor", c.numerics.q_floor},
                       {"store_states", c.numerics.store_states},
                       {"cd_scan_points", c.numerics.cd_scan_points}};
    doc["output"] = {{"directory", c.out_dir}, {"formats", c.formats}};
    return doc;
}

std::string content_hash(const json& doc) { return hash_string(doc.dump()); }

ScenarioResult run_scenario_in_memory(const RunConfig& config) {
    config.validate();
    const spin::SpinBasis basis = spin::build_basis(config.basis_n, config.basis_kappa);

    model::ProtocolSpec protocol;
    protocol.kind = config.kind;
    protocol.delta = config.delta;
    protocol.amplitude = config.amplitude;
    protocol.ramp_fraction = config.ramp_fraction;
    protocol.tau = 1.0; // placeholder until omega is known; t = 0 controls ignore tau

    ScenarioResult res;
    res.omega = model::well_frequency(basis, config.system, protocol);
    res.tau = config.tau_omega / res.omega;
    protocol.tau = res.tau;

    dynamics::EnvironmentSpec env;
    env.gamma = config.gamma_over_omega * res.omega;
    env.lambda = config.lambda_over_omega * res.omega;
    env.temperature = config.temperature;
    env.mass = config.system.mass;
    res.gamma = env.gamma;
    res.lambda = env.lambda;

    const Matrix rho0 = model::initial_state(basis, config.system, protocol);
    const Matrix target = model::target_state(basis, config.system, protocol, res.tau);

    res.trajectory =
        dynamics::propagate(rho0, config.system, protocol, env, basis, config.numerics,
                            model::is_quantum(config.kind));
    res.grading = metrics::grade(res.trajectory, target, basis);
    return res;
}

namespace {

std::string trajectory_csv(const dynamics::TrajectoryRecord& t) {
    std::ostringstream out;
    out << "t,energy_h0,energy_sys,energy_sys_var,transfer_pct,wehrl,entropy_vn,pi,phi,"
           "coherence_l1,gen_norm_hs,gen_norm_op,gen_norm_tr,sta_norm,purity,"
           "min_eigenvalue,husimi_norm\n";
    const size_t n = t.times.size();
    auto at = [](const std::vector<double>& v, size_t i) {
        return i < v.size() ? v[i] : kNaN;
    };
    for (size_t i = 0; i < n; ++i) {
        out << format_g9(t.times[i]) << ',' << format_g9(at(t.energy_h0, i)) << ','
            << format_g9(at(t.energy_sys, i)) << ',' << format_g9(at(t.energy_sys_var, i))
            << ',' << format_g9(at(t.transfer, i)) << ',' << format_g9(at(t.wehrl, i)) << ','
            << format_g9(at(t.entropy_vn, i)) << ',' << format_g9(at(t.pi_rate, i)) << ','
            << format_g9(at(t.phi_rate, i)) << ',' << format_g9(at(t.coherence_l1, i)) << ','
            << format_g9(at(t.gen_norm_hs, i)) << ',' << format_g9(at(t.gen_norm_op, i))
            << ',' << format_g9(at(t.gen_norm_tr, i)) << ',' << format_g9(at(t.sta_norm, i))
            << ',' << format_g9(at(t.purity, i)) << ','
            << format_g9(at(t.min_eigenvalue, i)) << ',' << format_g9(at(t.husimi_norm, i))
            << '\n';
    }
    return out.str();
}

json grading_json(const ScenarioResult& res, const RunConfig& config) {
    const metrics::GradingReport& g = res.grading;
    json doc;
    doc["g_s"] = g.g_s;
    doc["g_q"] = g.g_q;
    doc["g_t"] = g.g_t;
    doc["G"] = g.grading;
    doc["sigma_ir"] = g.sigma_ir;
    doc["tau"] = g.tau;
    doc["tau_omega"] = config.tau_omega;
    doc["omega"] = res.omega;
    doc["gamma"] = res.gamma;
    doc["lambda"] = res.lambda;
    doc["tau_qsl"] = json_finite(g.tau_qsl);
    doc["hs_ratio"] = json_finite(g.hs_ratio);
    doc["transfer_pct"] = g.transfer_pct;
    doc["lambda_hs"] = json_finite(g.lambda_hs);
    doc["lambda_op"] = json_finite(g.lambda_op);
    doc["lambda_tr"] = json_finite(g.lambda_tr);
    doc["mt_bound"] = json_finite(g.closed_bounds.mandelstam_tamm);
    doc["ml_bound"] = json_finite(g.closed_bounds.margolus_levitin);
    doc["mean_energy_avg"] = g.mean_energy_avg;
    doc["energy_var_avg"] = g.energy_var_avg;
    doc["degenerate_endpoints"] = g.degenerate_endpoints;
    doc["accepted_steps"] = res.trajectory.accepted_steps;
    doc["rejected_steps"] = res.trajectory.rejected_steps;
    doc["max_trace_drift"] = res.trajectory.max_trace_drift;
    doc["min_eigenvalue_seen"] = res.trajectory.min_eigenvalue_seen;
    doc["version"] = kVersion;
    return doc;
}

} // namespace

ScenarioResult run_scenario(const RunConfig& config, const std::string& out_dir) {
    ScenarioResult res = run_scenario_in_memory(config);

    const fs::path dir = out_dir.empty() ? fs::path(config.out_dir) : fs::path(out_dir);
    fs::create_directories(dir);

    json manifest;
    manifest["version"] = kVersion;
    manifest["created_utc"] = utc_now();
    const json snapshot = config_to_json(config);
    manifest["config"] = snapshot;
    manifest["content_hash"] = content_hash(snapshot);
    manifest["derived"] = {{"omega", res.omega},
                           {"tau", res.tau},
                           {"gamma", res.gamma},
                           {"lambda", res.lambda}};

    json files = json::object();
    const bool want_csv = std::count(config.formats.begin(), config.formats.end(), "csv");
    const bool want_json = std::count(config.formats.begin(), config.formats.end(), "json");
    if (want_csv) {
        const std::string body = trajectory_csv(res.trajectory);
        write_file(dir / "trajectory.csv", body);
        files["trajectory.csv"] = hash_string(body);
    }
    if (want_json) {
        const std::string body = grading_json(res, config).dump(2) + "\n";
        write_file(dir / "grading.json", body);
        files["grading.json"] = hash_string(body);
    }
    manifest["files"] = files;
    write_file(dir / "manifest.json", manifest.dump(2) + "\n");
    return res;
}

std::vector<double> default_tau_omega_grid() {
    // log-spaced 0.1 .. 300
    std::vector<double> grid;
    const int n = 14;
    for (int i = 0; i < n; ++i) {
        grid.push_back(0.1 * std::pow(300.0 / 0.1, static_cast<double>(i) / (n - 1)));
    }
    return grid;
}

std::vector<SweepRow> sweep(const RunConfig& base, const std::vector<double>& tau_omegas,
                            const std::vector<double>& temperatures) {
    if (tau_omegas.empty()) throw ConfigError("tau_omega", "sweep: tau_omega list is empty");
    if (temperatures.empty()) throw ConfigError("temps", "sweep: temperature list is empty");

    const model::ProtocolKind kinds[4] = {
        model::ProtocolKind::Classical1, model::ProtocolKind::Classical2,
        model::ProtocolKind::Quantum1, model::ProtocolKind::Quantum2};

    struct Cell {
        model::ProtocolKind kind;
        double tau_omega, temperature;
    };
    std::vector<Cell> cells;
    for (auto kind : kinds) {
        for (double tw : tau_omegas) {
            for (double temp : temperatures) cells.push_back({kind, tw, temp});
        }
    }

    std::vector<SweepRow> rows(cells.size());
    run_pool(static_cast<int>(cells.size()), worker_count(static_cast<int>(cells.size())),
             [&](int i) {
                 const Cell& cell = cells[i];
                 SweepRow& row = rows[i];
                 row.kind = cell.kind;
                 row.temperature = cell.temperature;
                 row.tau_omega = cell.tau_omega;
                 row.hs_ratio = row.sigma_ir = row.transfer_pct = kNaN;
                 row.g_s = row.g_q = row.g_t = row.grading = kNaN;
                 try {
                     RunConfig cfg = base;
                     cfg.kind = cell.kind;
                     cfg.tau_omega = cell.tau_omega;
                     cfg.temperature = cell.temperature;
                     cfg.amplitude = (cell.kind == model::ProtocolKind::Classical2) ? 1.0 : 5.0;
                     ScenarioResult res = run_scenario_in_memory(cfg);
                     row.hs_ratio = res.grading.hs_ratio;
                     row.sigma_ir = res.grading.sigma_ir;
                     row.transfer_pct = res.grading.transfer_pct;
                     row.g_s = res.grading.g_s;
                     row.g_q = res.grading.g_q;
                     row.g_t = res.grading.g_t;
                     row.grading = res.grading.grading;
                 } catch (const std::exception& e) {
                     row.reason = e.what();
                 }
             });
    return rows;
}

void write_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path) {
    std::ostringstream out;
    out << "protocol,T,tau_omega,hs_ratio,sigma_ir,transfer_pct,g_s,g_q,g_t,G,reason\n";
    for (const SweepRow& r : rows) {
        out << model::to_string(r.kind) << ',' << format_g9(r.temperature) << ','
            << format_g9(r.tau_omega) << ',' << format_g9(r.hs_ratio) << ','
            << format_g9(r.sigma_ir) << ',' << format_g9(r.transfer_pct) << ','
            << format_g9(r.g_s) << ',' << format_g9(r.g_q) << ',' << format_g9(r.g_t) << ','
            << format_g9(r.grading) << ',' << r.reason << '\n';
    }
    fs::path p(path);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    write_file(p, out.str());
}

const Table1Cell kTable1Printed[8] = {
    {model::ProtocolKind::Classical1, 1.0, 300.0, 0.13, 1.37, 0.8239, 0.88, 0.27, 0.25, 0.06},
    {model::ProtocolKind::Classical1, 10.0, 300.0, 0.08, 2.36, 0.5780, 0.90, 0.09, 0.09, 0.007},
    {model::ProtocolKind::Classical2, 1.0, 300.0, 0.20, 2.18, 0.9154, 0.86, 0.36, 0.11, 0.03},
    {model::ProtocolKind::Classical2, 10.0, 300.0, 0.07, 4.29, 0.5632, 0.90, 0.10, 0.01, 0.0009},
    {model::ProtocolKind::Quantum1, 1.0, 10.0, 2.20, 0.10, 0.9998, 0.90, 0.94, 0.90, 0.76},
    {model::ProtocolKind::Quantum1, 10.0, 10.0, 1.72, 0.47, 0.9610, 0.91, 0.59, 0.63, 0.34},
    {model::ProtocolKind::Quantum2, 1.0, 10.0, 2.06, 0.10, 0.9545, 0.90, 0.89, 0.90, 0.72},
    {model::ProtocolKind::Quantum2, 10.0, 10.0, 1.33, 0.46, 0.6828, 0.92, 0.40, 0.63, 0.23},
};

Table1Result table1(const json& overrides) {
    Table1Result result;
    result.cells.resize(8);
    result.printed.assign(kTable1Printed, kTable1Printed + 8);

    std::vector<RunConfig> configs(8);
    for (int i = 0; i < 8; ++i) {
        const Table1Cell& ref = kTable1Printed[i];
        json doc;
        doc["system"] = {{"c1", -1.5}, {"c2", 0.05}};
        doc["basis"] = {{"N", 60}, {"kappa", 60}};
        doc["protocol"] = {{"kind", model::to_string(ref.kind)},
                           {"delta", 1e-3},
                           {"tau_omega", ref.tau_omega}};
        doc["environment"] = {{"gamma_over_omega", 1e-2},
                              {"lambda_over_omega", 1e-3},
                              {"T", ref.temperature}};
        merge_patch(doc, overrides);
        configs[i] = parse_config(doc);
    }

    run_pool(8, worker_count(8), [&](int i) {
        ScenarioResult res = run_scenario_in_memory(configs[i]);
        Table1Cell& cell = result.cells[i];
        cell.kind = configs[i].kind;
        cell.temperature = configs[i].temperature;
        cell.tau_omega = configs[i].tau_omega;
        cell.hs_ratio = res.grading.hs_ratio;
        cell.sigma_ir = res.grading.sigma_ir;
        cell.transfer_pct = res.grading.transfer_pct;
        cell.g_s = res.grading.g_s;
        cell.g_q = res.grading.g_q;
        cell.g_t = res.grading.g_t;
        cell.grading = res.grading.grading;
    });
    return result;
}

void write_table1(const Table1Result& table, const std::string& directory) {
    fs::create_directories(directory);

    auto scenario_name = [](const Table1Cell& c) {
        std::ostringstream s;
        s << model::to_string(c.kind) << "_" << format_g9(c.temperature) << "K";
        return s.str();
    };

    struct RowSpec {
        const char* name;
        std::function<double(const Table1Cell&)> get;
    };
    const std::vector<RowSpec> rows = {
        {"tau_omega", [](const Table1Cell& c) { return c.tau_omega; }},
        {"hs_ratio", [](const Table1Cell& c) { return c.hs_ratio; }},
        {"sigma_ir", [](const Table1Cell& c) { return c.sigma_ir; }},
        {"transfer_pct", [](const Table1Cell& c) { return c.transfer_pct; }},
        {"g_s", [](const Table1Cell& c) { return c.g_s; }},
        {"g_q", [](const Table1Cell& c) { return c.g_q; }},
        {"g_t", [](const Table1Cell& c) { return c.g_t; }},
        {"G", [](const Table1Cell& c) { return c.grading; }},
    };

    std::ostringstream csv;
    csv << "quantity";
    for (const auto& c : table.cells) csv << ',' << scenario_name(c);
    for (const auto& c : table.cells) csv << ',' << scenario_name(c) << "_delta";
    csv << '\n';
    for (const RowSpec& row : rows) {
        csv << row.name;
        for (const auto& c : table.cells) csv << ',' << format_g9(row.get(c));
        for (size_t i = 0; i < table.cells.size(); ++i) {
            csv << ',' << format_g9(row.get(table.cells[i]) - row.get(table.printed[i]));
        }
        csv << '\n';
    }
    write_file(fs::path(directory) / "table1.csv", csv.str());

    json doc;
    doc["version"] = kVersion;
    doc["created_utc"] = utc_now();
    json cells = json::array();
    for (size_t i = 0; i < table.cells.size(); ++i) {
        const Table1Cell& c = table.cells[i];
        const Table1Cell& p = table.printed[i];
        json cell;
        cell["protocol"] = model::to_string(c.kind);
        cell["T"] = c.temperature;
        cell["tau_omega"] = c.tau_omega;
        for (const RowSpec& row : rows) {
            cell[row.name] = json_finite(row.get(c));
            cell[std::string(row.name) + "_printed"] = row.get(p);
        }
        cells.push_back(cell);
    }
    doc["cells"] = cells;
    write_file(fs::path(directory) / "table1.json", doc.dump(2) + "\n");
}

} // namespace wellgrade::runner
