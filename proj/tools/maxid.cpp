// maxid — exact computation and simulation toolkit for stationary
// max-infinitely divisible sequences: dependence coefficients, mixing and
// ergodicity diagnostics, Brown-Resnick and nearest-particle simulation.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "maxid/brown_resnick.hpp"
#include "maxid/diagnostics.hpp"
#include "maxid/estimators.hpp"
#include "maxid/ideal_gas.hpp"
#include "maxid/io.hpp"
#include "maxid/moving_maxima.hpp"
#include "maxid/numerics.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace maxid;

namespace {

constexpr const char* kVersion = "1.0.0";

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitFlagged = 3;

struct RunContext {
    std::string command;
    std::string config_path;
    json config;
    std::uint64_t seed = 0;
    std::int64_t replicates_override = 0;
    fs::path out_dir;
    std::string format = "csv";  // csv | json
    bool quiet = false;
    std::vector<std::string> artifacts;
    json checks = json::array();

    void note(const std::string& line) const {
        if (!quiet) std::cout << line << "\n";
    }
    void add_check(const std::string& metric, double value, double exact) {
        checks.push_back({{"metric", metric},
                          {"value", value},
                          {"exact", exact},
                          {"abs_diff", std::abs(value - exact)}});
    }
};

[[noreturn]] void config_error(const std::string& what) {
    throw std::invalid_argument("config schema: " + what);
}

json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) config_error("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    if (text.find_first_not_of(" \t\r\n") == std::string::npos)
        config_error("config file is empty");
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        config_error(std::string("not valid JSON: ") + e.what());
    }
}

double require_number(const json& j, const std::string& key) {
    if (!j.contains(key) || !j[key].is_number())
        config_error("missing or non-numeric field '" + key + "'");
    return j[key].get<double>();
}

double optional_number(const json& j, const std::string& key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number()) config_error("field '" + key + "' must be a number");
    return j[key].get<double>();
}

std::string optional_string(const json& j, const std::string& key,
                            const std::string& fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_string()) config_error("field '" + key + "' must be a string");
    return j[key].get<std::string>();
}

std::vector<double> require_number_list(const json& j, const std::string& key) {
    if (!j.contains(key) || !j[key].is_array() || j[key].empty())
        config_error("missing or empty array field '" + key + "'");
    std::vector<double> out;
    for (const json& v : j[key]) {
        if (!v.is_number()) config_error("array '" + key + "' must hold numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

Exec exec_policy(const json& cfg) {
    const std::string name = optional_string(cfg, "execution", "openmp");
    if (name == "openmp") return Exec::openmp;
    if (name == "serial") return Exec::serial;
    config_error("field 'execution' must be \"openmp\" or \"serial\"");
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

void write_summary(RunContext& ctx, json summary) {
    summary["command"] = ctx.command;
    summary["seed"] = ctx.seed;
    summary["checks"] = ctx.checks;
    const fs::path path = ctx.out_dir / "summary.json";
    write_text(path, summary.dump(2) + "\n");
    ctx.artifacts.push_back("summary.json");
    ctx.note("wrote " + path.string());
}

void write_csv(RunContext& ctx, const std::string& name,
               const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    const fs::path path = ctx.out_dir / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    for (std::size_t i = 0; i < header.size(); ++i)
        out << header[i] << (i + 1 < header.size() ? "," : "\n");
    char buf[64];
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "%.17g", row[i]);
            out << buf << (i + 1 < row.size() ? "," : "\n");
        }
    }
    ctx.artifacts.push_back(name);
    ctx.note("wrote " + path.string());
}

void write_manifest(const RunContext& ctx, double wall_seconds, int exit_code) {
    json manifest;
    manifest["command"] = ctx.command;
    manifest["config_path"] = ctx.config_path;
    manifest["config"] = ctx.config;
    manifest["seed"] = ctx.seed;
    manifest["format"] = ctx.format;
    manifest["versions"] = {{"maxid", kVersion}, {"compiler", __VERSION__}};
    manifest["wall_time_seconds"] = wall_seconds;
    manifest["artifacts"] = ctx.artifacts;
    manifest["exit_code"] = exit_code;
    write_text(ctx.out_dir / "manifest.json", manifest.dump(2) + "\n");
}

json classification_to_json(const ClassificationReport& rep) {
    return {{"mixing_verdict", verdict_name(rep.mixing_verdict)},
            {"ergodic_verdict", verdict_name(rep.ergodic_verdict)},
            {"tail_sup", rep.tail_sup},
            {"cesaro_tail", rep.cesaro_tail},
            {"exceptional_density_estimate", rep.exceptional_density_estimate},
            {"tol", rep.tol},
            {"tail_fraction", rep.tail_fraction},
            {"ergodic_upgraded", rep.ergodic_upgraded}};
}

// ---------------------------------------------------------------- exact ----

MovingMaximaModel model_from_config(const RunContext& ctx) {
    if (!ctx.config.contains("model")) config_error("missing field 'model'");
    const json& jm = ctx.config["model"];
    if (jm.is_string()) {
        fs::path path = jm.get<std::string>();
        if (path.is_relative() && !ctx.config_path.empty())
            path = fs::path(ctx.config_path).parent_path() / path;
        return load_model_file(path.string());
    }
    if (jm.is_object()) return parse_model(jm.dump());
    config_error("field 'model' must be a file path or an inline object");
}

int run_exact(RunContext& ctx) {
    const MovingMaximaModel model = model_from_config(ctx);
    const std::vector<double> levels = require_number_list(ctx.config, "levels");
    const std::int64_t t_max =
        static_cast<std::int64_t>(optional_number(ctx.config, "t_max", 100000));
    if (t_max < 10) config_error("'t_max' must be at least 10");
    const double tol = optional_number(ctx.config, "tol", 1e-3);
    const double tail_fraction = optional_number(ctx.config, "tail_fraction", 0.2);

    json per_level = json::array();
    for (std::size_t li = 0; li < levels.size(); ++li) {
        const double a = levels[li];
        const double bound = model.level_exceedance_rate(a);
        std::vector<double> values(static_cast<std::size_t>(t_max));
        for (std::int64_t t = 1; t <= t_max; ++t)
            values[static_cast<std::size_t>(t - 1)] =
                model.tau_exact(a, static_cast<int>(t));

        double diag_mass_above = 0.0;
        for (const DiagonalAtom& d : model.diagonal())
            if (d.level > a) diag_mass_above += d.mass;

        // the probability route must reproduce the quadrant-mass route
        double max_gap = 0.0;
        for (std::int64_t t = 0; t <= std::min<std::int64_t>(t_max, 64); ++t)
            max_gap = std::max(
                max_gap, std::abs(model.tau_exact(a, static_cast<int>(t)) -
                                  model.tau_from_definition(a, static_cast<int>(t))));

        const ClassificationReport rep = classify_values(values, tol, tail_fraction);
        json entry;
        entry["a"] = a;
        entry["bound"] = bound;
        entry["diagonal_mass_above"] = diag_mass_above;
        entry["tau_definition_max_gap"] = max_gap;
        entry["classification"] = classification_to_json(rep);
        const std::string seq_name = "tau_seq_" + std::to_string(li) + ".csv";
        write_sequence_csv((ctx.out_dir / seq_name).string(), values);
        ctx.artifacts.push_back(seq_name);
        entry["sequence_csv"] = seq_name;
        per_level.push_back(entry);

        ctx.add_check("tau_definition_max_gap[a=" + std::to_string(a) + "]", max_gap,
                      0.0);
        if (!model.diagonal().empty() && model.max_profile_width() == 0) {
            // single-lag profiles contribute nothing off lag zero, so the
            // Cesaro statistic equals the diagonal mass above the level
            ctx.add_check("cesaro_tail[a=" + std::to_string(a) + "]", rep.cesaro_tail,
                          diag_mass_above);
        }
    }

    json summary;
    summary["model"] = json::parse(model_to_json(model));
    summary["t_max"] = t_max;
    summary["levels"] = per_level;
    summary["profile_width"] = model.max_profile_width();
    write_summary(ctx, summary);
    return kExitOk;
}

// ----------------------------------------------------------------- diag ----

int run_diag(RunContext& ctx) {
    const double tol = optional_number(ctx.config, "tol", 1e-3);
    const double tail_fraction = optional_number(ctx.config, "tail_fraction", 0.2);
    const double delta = optional_number(ctx.config, "delta", tol);

    json summary;
    std::vector<double> values;
    double bound = 1.0;
    if (ctx.config.contains("sequence")) {
        fs::path path = ctx.config["sequence"].get<std::string>();
        if (path.is_relative() && !ctx.config_path.empty())
            path = fs::path(ctx.config_path).parent_path() / path;
        values = read_sequence_csv(path.string());
        bound = require_number(ctx.config, "bound");
        const std::string kind = optional_string(ctx.config, "kind", "tau");
        if (kind != "tau" && kind != "r")
            config_error("field 'kind' must be \"tau\" or \"r\"");
        // construction validates the [0, bound] invariant
        const DependenceSequence seq(
            values, bound, kind == "tau" ? SequenceKind::tau : SequenceKind::r);
        summary["kind"] = kind;
        summary["cesaro_full"] = cesaro_average(seq, seq.size());
    } else if (ctx.config.contains("spectral")) {
        const json& js = ctx.config["spectral"];
        if (!js.contains("atoms") || !js["atoms"].is_array())
            config_error("'spectral' needs an 'atoms' array of [location, weight]");
        std::vector<std::pair<double, double>> atoms;
        for (const json& ja : js["atoms"]) {
            if (!ja.is_array() || ja.size() != 2)
                config_error("spectral atoms must be [location, weight] pairs");
            atoms.emplace_back(ja[0].get<double>(), ja[1].get<double>());
        }
        const SpectralMeasure mu(atoms);
        const std::int64_t t_max =
            static_cast<std::int64_t>(optional_number(js, "t_max", 10000));
        if (t_max < 10) config_error("'spectral.t_max' must be at least 10");
        values.resize(static_cast<std::size_t>(t_max));
        for (std::int64_t t = 1; t <= t_max; ++t)
            values[static_cast<std::size_t>(t - 1)] = mu.r(t);
        bound = mu.total_weight();
        const double mean = pairwise_sum(values) / static_cast<double>(t_max);
        summary["kind"] = "r(spectral)";
        summary["weight_at_zero"] = mu.weight_at_zero();
        summary["cesaro_full"] = mean;
        summary["cesaro_error_bound"] = mu.cesaro_error_bound(t_max);
        ctx.add_check("spectral_cesaro_vs_weight_at_zero", mean, mu.weight_at_zero());
    } else {
        config_error("need either 'sequence' (with 'bound') or 'spectral'");
    }

    const ClassificationReport rep = classify_values(values, tol, tail_fraction);
    const DensityDecomposition dec = density_zero_decomposition_values(values, delta);
    summary["bound"] = bound;
    summary["length"] = values.size();
    summary["classification"] = classification_to_json(rep);
    summary["density"] = {{"delta", delta},
                          {"exception_count", dec.exception_set.size()},
                          {"upper_density_estimate", dec.upper_density_estimate}};
    write_summary(ctx, summary);
    return kExitOk;
}

// ------------------------------------------------------------------- br ----

Variogram variogram_from_config(const json& cfg) {
    if (!cfg.contains("variogram") || !cfg["variogram"].is_object())
        config_error("missing object field 'variogram'");
    const json& jv = cfg["variogram"];
    const std::string variant = optional_string(jv, "variant", "");
    if (variant == "power")
        return Variogram::power(require_number(jv, "theta"),
                                require_number(jv, "alpha"));
    if (variant == "dyadic_cosine") {
        if (jv.contains("order"))
            return Variogram::dyadic_cosine(
                static_cast<int>(require_number(jv, "order")));
        const double tol = optional_number(jv, "auto_order_tol", 1e-8);
        double t_max = 1.0;
        if (cfg.contains("grid"))
            for (const json& g : cfg["grid"]) t_max = std::max(t_max, g.get<double>());
        return Variogram::dyadic_cosine(Variogram::dyadic_order_for(t_max, tol));
    }
    if (variant == "table")
        return Variogram::table(require_number_list(jv, "t"),
                                require_number_list(jv, "value"));
    config_error("variogram variant must be \"power\", \"dyadic_cosine\" or \"table\"");
}

RFormula formula_from_name(const std::string& name) {
    if (name == "paper") return RFormula::paper;
    if (name == "continuity") return RFormula::continuity;
    config_error("r_formula must be \"paper\", \"continuity\" or \"auto\"");
}

int run_br_simulate(RunContext& ctx, const Variogram& vario, Exec exec) {
    BrSimConfig cfg;
    cfg.grid = require_number_list(ctx.config, "grid");
    cfg.replicates =
        static_cast<std::int64_t>(optional_number(ctx.config, "replicates", 10000));
    if (ctx.replicates_override > 0) cfg.replicates = ctx.replicates_override;
    cfg.margin = optional_number(ctx.config, "margin", 12.0);
    cfg.max_points =
        static_cast<std::int64_t>(optional_number(ctx.config, "max_points", 2000000));
    cfg.seed = ctx.seed;
    cfg.validate();

    ctx.note("simulating " + std::to_string(cfg.replicates) + " replicates on " +
             std::to_string(cfg.grid.size()) + " grid points");
    const BrSimResult sim = simulate_br_path(vario, cfg, exec);

    json summary;
    summary["replicates"] = cfg.replicates;
    summary["grid"] = cfg.grid;
    summary["margin"] = cfg.margin;
    summary["jitter_used"] = sim.jitter_used;
    summary["truncated_replicates"] = sim.truncated_replicates;
    double mean_points = 0.0;
    for (std::int32_t p : sim.points_used) mean_points += p;
    mean_points /= static_cast<double>(cfg.replicates);
    summary["mean_points_per_replicate"] = mean_points;

    // marginal goodness of fit at every grid point
    json ks = json::array();
    for (std::size_t g = 0; g < cfg.grid.size(); ++g) {
        const double d = ks_statistic(sim.column(g), [](double y) {
            return y > 0.0 ? std::exp(-1.0 / y) : 0.0;
        });
        ks.push_back({{"t", cfg.grid[g]},
                      {"statistic", d},
                      {"pvalue", ks_pvalue(d, cfg.replicates)}});
    }
    summary["marginal_ks"] = ks;

    // dependence function estimates and the formula selection; the estimators
    // need a minimum sample size, so tiny path-only runs skip this block
    const std::string formula_name = optional_string(ctx.config, "r_formula", "auto");
    if (cfg.replicates < 1000) {
        summary["r_rows"] = json::array();
        summary["r_formula"] = {{"requested", formula_name},
                                {"selected", nullptr},
                                {"note", "skipped: needs at least 1000 replicates"}};
        write_summary(ctx, summary);
        return sim.truncated_replicates > 0 ? kExitFlagged : kExitOk;
    }
    RFormula formula = RFormula::continuity;
    if (formula_name == "auto") {
        const RFormulaResolution res = resolve_r_formula(sim, vario);
        formula = res.selected;
        summary["r_formula"] = {
            {"requested", "auto"},
            {"selected", res.selected == RFormula::continuity ? "continuity" : "paper"},
            {"chi2_paper", res.chi2_paper},
            {"chi2_continuity", res.chi2_continuity}};
    } else {
        formula = formula_from_name(formula_name);
        summary["r_formula"] = {{"requested", formula_name}, {"selected", formula_name}};
    }

    const std::vector<double> x0 = sim.column(0);
    std::vector<std::vector<double>> rows;
    json jrows = json::array();
    for (std::size_t g = 1; g < cfg.grid.size(); ++g) {
        const double t = cfg.grid[g];
        const McEstimate r = estimate_r_mc(x0, sim.column(g));
        const double expected = theoretical_r(vario, t, formula);
        rows.push_back({t, r.value, r.se, expected, std::abs(r.value - expected)});
        jrows.push_back({{"t", t},
                         {"r_hat", r.value},
                         {"se", r.se},
                         {"r_formula", expected},
                         {"abs_diff", std::abs(r.value - expected)},
                         {"valid", r.valid}});
        if (r.valid)
            ctx.add_check("r_hat[t=" + std::to_string(t) + "]", r.value, expected);
    }
    if (ctx.format == "csv")
        write_csv(ctx, "rhat.csv", {"t", "r_hat", "se", "r_formula", "abs_diff"}, rows);
    summary["r_rows"] = jrows;

    // scaling identity a tau_a = r on the same samples
    if (ctx.config.contains("tau_levels")) {
        json scaling = json::array();
        for (const json& ja : ctx.config["tau_levels"]) {
            const double a = ja.get<double>();
            for (std::size_t g = 1; g < cfg.grid.size(); ++g) {
                const McEstimate gap = estimate_scaling_gap_mc(x0, sim.column(g), a);
                scaling.push_back({{"a", a},
                                   {"t", cfg.grid[g]},
                                   {"gap", gap.value},
                                   {"se", gap.se},
                                   {"valid", gap.valid}});
            }
        }
        summary["scaling_gap"] = scaling;
    }

    write_summary(ctx, summary);
    return sim.truncated_replicates > 0 ? kExitFlagged : kExitOk;
}

int run_br_exceptional(RunContext& ctx, Exec exec) {
    const double epsilon = require_number(ctx.config, "epsilon");
    const int n_max = static_cast<int>(require_number(ctx.config, "n_max"));
    const double grid_step = require_number(ctx.config, "grid_step");
    const ExceptionalSetReport rep =
        exceptional_set_analysis(epsilon, n_max, grid_step, exec);

    json summary;
    summary["epsilon"] = rep.epsilon;
    summary["grid_step"] = rep.grid_step;
    summary["n_max"] = rep.n_max;
    summary["density_estimate"] = rep.density_estimate;
    summary["density_bound"] = rep.density_bound;
    summary["density_resolution"] = rep.density_resolution;
    summary["empirical_log_growth"] = rep.empirical_log_growth;
    summary["all_bounds_hold"] = rep.all_bounds_hold;
    ctx.add_check("exceptional_density_excess",
                  std::max(0.0, rep.density_estimate - rep.density_bound), 0.0);

    std::vector<std::vector<double>> rows;
    json jrows = json::array();
    for (const ExceptionalSetRow& r : rep.rows) {
        rows.push_back({static_cast<double>(r.n), r.lambda_measured, r.lambda_bound,
                        r.resolution, r.s_riemann, r.s_expected, r.min_sigma2_off,
                        r.min_sigma2_required});
        jrows.push_back({{"n", r.n},
                         {"lambda_measured", r.lambda_measured},
                         {"lambda_bound", r.lambda_bound},
                         {"resolution", r.resolution},
                         {"s_riemann", r.s_riemann},
                         {"s_expected", r.s_expected},
                         {"min_sigma2_off", r.min_sigma2_off},
                         {"min_sigma2_required", r.min_sigma2_required}});
    }
    if (ctx.format == "csv")
        write_csv(ctx, "exceptional.csv",
                  {"n", "lambda_measured", "lambda_bound", "resolution", "s_riemann",
                   "s_expected", "min_sigma2_off", "min_sigma2_required"},
                  rows);
    summary["rows"] = jrows;
    write_summary(ctx, summary);
    return rep.all_bounds_hold ? kExitOk : kExitFlagged;
}

int run_br(RunContext& ctx) {
    const Exec exec = exec_policy(ctx.config);
    const std::string mode = optional_string(ctx.config, "mode", "simulate");
    if (mode == "exceptional") return run_br_exceptional(ctx, exec);
    if (mode != "simulate") config_error("mode must be \"simulate\" or \"exceptional\"");
    return run_br_simulate(ctx, variogram_from_config(ctx.config), exec);
}

// ------------------------------------------------------------------ gas ----

int run_gas(RunContext& ctx) {
    GasConfig cfg;
    cfg.dimension = static_cast<int>(optional_number(ctx.config, "dimension", 1));
    cfg.radius = optional_number(ctx.config, "radius", 1.0);
    cfg.box_halfwidth = optional_number(ctx.config, "box_halfwidth", 0.0);
    cfg.time_grid = require_number_list(ctx.config, "time_grid");
    cfg.replicates =
        static_cast<std::int64_t>(optional_number(ctx.config, "replicates", 10000));
    if (ctx.replicates_override > 0) cfg.replicates = ctx.replicates_override;
    cfg.seed = ctx.seed;
    cfg.validate();

    ctx.note("simulating " + std::to_string(cfg.replicates) + " gas replicates");
    const GasEstimate est = simulate_gas(cfg, exec_policy(ctx.config));

    json summary;
    summary["dimension"] = cfg.dimension;
    summary["radius"] = cfg.radius;
    summary["box_halfwidth"] = est.box_halfwidth;
    summary["replicates"] = est.replicates;
    summary["survival"] = {
        {"estimate", est.survival_hat},
        {"se", est.survival_se},
        {"exact", est.survival_exact_value},
        {"abs_diff", std::abs(est.survival_hat - est.survival_exact_value)}};
    ctx.add_check("survival_hat", est.survival_hat, est.survival_exact_value);
    summary["truncation_bias_bound"] = est.truncation_bias_bound;
    summary["bias_flagged"] = est.bias_flagged;
    summary["prob_flagged"] = est.prob_flagged;

    std::vector<std::vector<double>> rows;
    json jrows = json::array();
    for (const GasTimeEstimate& te : est.tau) {
        rows.push_back({te.t, te.tau_hat, te.se, te.exact, te.upper_bound});
        jrows.push_back({{"t", te.t},
                         {"tau_hat", te.tau_hat},
                         {"se", te.se},
                         {"exact", te.exact},
                         {"upper_bound", te.upper_bound},
                         {"valid", te.valid}});
        if (te.valid)
            ctx.add_check("tau_hat[t=" + std::to_string(te.t) + "]", te.tau_hat,
                          te.exact);
    }
    if (ctx.format == "csv")
        write_csv(ctx, "gas.csv", {"t", "tau_hat", "se", "exact", "upper_bound"}, rows);
    summary["tau_rows"] = jrows;

    if (ctx.config.contains("classify")) {
        const json& jc = ctx.config["classify"];
        const double dt = optional_number(jc, "dt", 1.0);
        const std::int64_t n = static_cast<std::int64_t>(optional_number(jc, "n", 400));
        const double tol = optional_number(jc, "tol", 1e-3);
        const DependenceSequence seq = gas_tau_sequence(cfg.dimension, cfg.radius, dt, n);
        json jcls = classification_to_json(classify(seq, tol, 0.2));
        jcls["dt"] = dt;
        jcls["n"] = n;
        summary["classification"] = jcls;
    }

    write_summary(ctx, summary);
    return (est.bias_flagged || est.prob_flagged) ? kExitFlagged : kExitOk;
}

// --------------------------------------------------------------- report ----

int run_report(RunContext& ctx) {
    if (!ctx.config.contains("inputs") || !ctx.config["inputs"].is_array())
        config_error("report needs an 'inputs' array of summary.json paths");
    json entries = json::array();
    std::vector<std::vector<double>> rows;
    double max_diff = 0.0;
    for (const json& ji : ctx.config["inputs"]) {
        fs::path path = ji.get<std::string>();
        if (path.is_relative() && !ctx.config_path.empty())
            path = fs::path(ctx.config_path).parent_path() / path;
        std::ifstream in(path);
        if (!in) config_error("cannot open input summary: " + path.string());
        json summary;
        try {
            in >> summary;
        } catch (const json::parse_error&) {
            config_error("input is not valid JSON: " + path.string());
        }
        if (!summary.contains("checks")) continue;
        for (const json& check : summary["checks"]) {
            json entry = check;
            entry["source"] = path.filename().string();
            entry["source_command"] = summary.value("command", "");
            entries.push_back(entry);
            const double diff = check.value("abs_diff", 0.0);
            max_diff = std::max(max_diff, diff);
            rows.push_back({check.value("value", 0.0), check.value("exact", 0.0), diff});
        }
    }
    json summary;
    summary["entries"] = entries;
    summary["entry_count"] = entries.size();
    summary["max_abs_diff"] = max_diff;
    if (ctx.format == "csv" && !rows.empty())
        write_csv(ctx, "report.csv", {"value", "exact", "abs_diff"}, rows);
    write_summary(ctx, summary);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"maxid: dependence, mixing and ergodicity toolkit for "
                 "max-infinitely divisible sequences"};
    app.require_subcommand(1);

    RunContext ctx;
    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    std::int64_t replicates = 0;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON run configuration")->required();
        sub->add_option("--seed", seed, "random seed (overrides the config)");
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--format", ctx.format, "tabular output format: csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--replicates", replicates,
                        "override the replicate count in the config");
        sub->add_flag("--quiet", ctx.quiet, "suppress progress output");
    };

    add_common(app.add_subcommand(
        "exact", "exact dependence sequence and classification of a model"));
    add_common(
        app.add_subcommand("diag", "classify a dependence sequence or spectral measure"));
    add_common(app.add_subcommand("br", "Brown-Resnick simulation and analysis"));
    add_common(app.add_subcommand("gas", "nearest-particle gas simulation"));
    add_common(app.add_subcommand("report", "aggregate checks from summaries"));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitValidation;
    }

    const auto started = std::chrono::steady_clock::now();
    int code = kExitOk;
    try {
        CLI::App* sub = app.get_subcommands().front();
        ctx.command = sub->get_name();
        ctx.config_path = config_path;
        ctx.config = load_config(config_path);
        ctx.seed = sub->count("--seed") > 0
                       ? seed
                       : static_cast<std::uint64_t>(
                             optional_number(ctx.config, "seed", 0));
        ctx.replicates_override = replicates;

        if (!out_dir.empty()) {
            ctx.out_dir = out_dir;
        } else {
            const char* root = std::getenv("MAXID_OUT_ROOT");
            ctx.out_dir = fs::path(root != nullptr ? root : "out") / ctx.command;
        }
        fs::create_directories(ctx.out_dir);

        if (ctx.command == "exact") code = run_exact(ctx);
        else if (ctx.command == "diag") code = run_diag(ctx);
        else if (ctx.command == "br") code = run_br(ctx);
        else if (ctx.command == "gas") code = run_gas(ctx);
        else code = run_report(ctx);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        code = kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "numerical diagnostic: " << e.what() << "\n";
        code = kExitFlagged;
    }

    if (!ctx.out_dir.empty() && fs::exists(ctx.out_dir)) {
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
                .count();
        try {
            write_manifest(ctx, wall, code);
        } catch (const std::exception& e) {
            std::cerr << "error writing manifest: " << e.what() << "\n";
            if (code == kExitOk) code = kExitFlagged;
        }
    }
    return code;
}
