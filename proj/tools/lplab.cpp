#include "lplab/dyadic.hpp"
#include "lplab/family.hpp"
#include "lplab/harness.hpp"
#include "lplab/norms.hpp"
#include "lplab/realspace.hpp"
#include "lplab/report_io.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using namespace lplab;
using nlohmann::json;

namespace {

enum Exit { kPass = 0, kFail = 1, kInconclusive = 2, kError = 3 };

struct GridFlags {
    std::optional<int> n;
    std::optional<int> N;
    std::optional<double> L;

    void add(CLI::App* app) {
        app->add_option("--grid-n", n, "Spatial dimension");
        app->add_option("--grid-N", N, "Samples per axis");
        app->add_option("--grid-L", L, "Half-width of the box [-L, L)^n");
    }
};

struct RunOptions {
    std::vector<std::string> suites;
    std::string config;
    std::string out = "lplab-out";
    std::vector<std::string> sets;
    std::optional<std::uint64_t> seed;
    GridFlags grid;
    int verbose = 0;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigFileError(path + ": cannot open config file", 0);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<SweepConfig> resolve_configs(const RunOptions& o) {
    std::vector<std::string> overrides = o.sets;
    if (o.grid.n) overrides.push_back("grid.n=" + std::to_string(*o.grid.n));
    if (o.grid.N) overrides.push_back("grid.N=" + std::to_string(*o.grid.N));
    if (o.grid.L) overrides.push_back("grid.L=" + json(*o.grid.L).dump());
    if (o.seed) overrides.push_back("seed=" + std::to_string(*o.seed));

    std::vector<std::string> suites;
    for (const auto& s : o.suites) {
        if (s == "all") {
            for (const auto& info : suite_catalog()) suites.push_back(info.name);
        } else {
            try {
                suites.push_back(to_string(parse_suite(s)));
            } catch (const std::invalid_argument& e) {
                throw ConfigFileError(std::string("--suite: ") + e.what(), 0);
            }
        }
    }

    if (!o.config.empty()) {
        if (suites.size() > 1) throw ConfigFileError("--config applies to a single suite", 0);
        const std::string text = read_file(o.config);
        if (suites.size() == 1) {
            // --suite must agree with the file, or fill it in when the file has none
            const json doc = json::parse(text, nullptr, false);
            if (doc.is_object() && doc.contains("suite") && doc["suite"].is_string() && doc["suite"] != suites[0]) {
                throw ConfigFileError(o.config + ": suite '" + doc["suite"].get<std::string>() + "' differs from --suite " + suites[0], 0);
            }
            overrides.insert(overrides.begin(), "suite=\"" + suites[0] + "\"");
        }
        return {parse_config_text(text, o.config, overrides)};
    }
    if (suites.empty()) throw ConfigFileError("give --suite or --config", 0);
    std::vector<SweepConfig> out;
    for (const auto& s : suites) out.push_back(parse_config_text(json{{"suite", s}}.dump(), "--suite " + s, overrides));
    return out;
}

int run(const RunOptions& o, bool verdict_exit) {
    std::vector<SweepConfig> configs;
    try {
        configs = resolve_configs(o);
    } catch (const ConfigFileError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kError;
    }
    bool any_fail = false, any_inconclusive = false;
    for (const auto& config : configs) {
        const std::string name = to_string(config.suite);
        ProgressFn progress;
        if (o.verbose > 0) progress = [&](const std::string& msg) { std::cerr << name << " " << msg << "\n"; };
        try {
            const auto report = run_suite(config, progress);
            const auto dir = configs.size() > 1 ? std::filesystem::path(o.out) / name : std::filesystem::path(o.out);
            write_report(report, dir);
            std::printf("%-18s %-12s %s\n", name.c_str(), to_string(report.verdict), dir.string().c_str());
            if (o.verbose > 0) std::cerr << summary_text(report);
            any_fail |= report.verdict == Verdict::Fail;
            any_inconclusive |= report.verdict == Verdict::Inconclusive;
        } catch (const ConfigError& e) {
            std::cerr << "config error: " << name << ": " << e.what() << "\n";
            return kError;
        } catch (const std::exception& e) {
            std::cerr << "error: " << name << ": " << e.what() << "\n";
            return kError;
        }
    }
    if (!verdict_exit) return kPass;
    if (any_fail) return kFail;
    return any_inconclusive ? kInconclusive : kPass;
}

void add_run_options(CLI::App* app, RunOptions& o) {
    app->add_option("--suite", o.suites, "Suite id, repeatable; 'all' runs every suite");
    app->add_option("--config", o.config, "JSON config (suite, grid, params, family, tolerances, seed)");
    app->add_option("--out", o.out, "Output directory")->capture_default_str();
    app->add_option("--set", o.sets, "Override a config field, e.g. params.s=[0.5] or grid.N=2048");
    app->add_option("--seed", o.seed, "Seed for the random family members and pair sampling");
    o.grid.add(app);
    app->add_flag("-v,--verbose", o.verbose, "Progress and summary on stderr");
}

struct NormOptions {
    std::string field;
    std::string generator = "gaussian";
    double center = 0.0, width = 1.0, modulation = 0.0, radius = 1.0;
    int k_lo = -1, k_hi = 1, degree = 2;
    std::uint64_t seed = 1;
    bool mean_free = false;
    double s = 0.5, gamma = 0.0, d = 1.0;
    GridFlags grid;
};

int norms(const NormOptions& o) {
    try {
        SampledField f = SampledField::zeros(GridSpec(1, 16, 1.0));
        if (!o.field.empty()) {
            f = load_field(o.field);
        } else {
            const GridSpec spec(o.grid.n.value_or(1), o.grid.N.value_or(o.grid.n.value_or(1) == 1 ? 1024 : 256),
                                o.grid.L.value_or(o.grid.n.value_or(1) == 1 ? 16.0 : 12.0));
            MemberSpec m;
            m.kind = parse_generator_kind(o.generator);
            m.name = o.generator;
            m.center = o.center;
            m.width = o.width;
            m.modulation = o.modulation;
            m.radius = o.radius;
            m.k_lo = o.k_lo;
            m.k_hi = o.k_hi;
            m.degree = o.degree;
            m.seed = o.seed;
            f = generate_member(m, spec, {1.0, o.mean_free});
        }
        const auto& spec = f.spec();
        const auto y = y_norm(f, o.gamma, o.d);
        const auto w = weighted_sobolev_sum(f, o.gamma, o.d);
        const json out = {
            {"grid", {{"n", spec.dimension()}, {"N", spec.samples()}, {"L", spec.half_width()}}},
            {"L1", lp_norm(f, 1.0)},
            {"L2", lp_norm(f, 2.0)},
            {"Linf", lp_norm(f, kInfinity)},
            {"s", o.s},
            {"Ds_L2", lp_norm(fractional_derivative(f, o.s), 2.0)},
            {"lip_s", lip_s_norm(f, o.s)},
            {"holder_seminorm", holder_seminorm(f, o.s)},
            {"holder_ratio", holder_ratio(f, o.s)},
            {"gamma", o.gamma},
            {"d", o.d},
            {"Y", {{"value", y.value}, {"tail", y.tail}}},
            {"Y_dual", y_dual_norm(f, o.gamma, o.d)},
            {"weighted_sobolev_sum", {{"value", w.value}, {"tail", w.tail}}},
        };
        std::cout << out.dump(2) << "\n";
        return kPass;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kError;
    }
}

struct KernelOptions {
    std::string kernel = "lp";
    double s = 0.5;
    double eps = 0.5;
    double slope_tolerance = 0.0;
    GridFlags grid;
};

int kernel_check(const KernelOptions& o) {
    try {
        const GridSpec spec(o.grid.n.value_or(1), o.grid.N.value_or(4096), o.grid.L.value_or(64.0));
        const auto r = verify_kernel_hypothesis(build_kernel(o.kernel, spec), o.s, o.eps, o.slope_tolerance);
        json annuli = json::array();
        for (const auto& a : r.annuli) annuli.push_back({{"j", a.j}, {"mass", a.mass}, {"weighted", a.weighted}});
        const json out = {{"kernel", o.kernel},
                          {"s", o.s},
                          {"eps", o.eps},
                          {"unit_ball_mass", r.unit_ball_mass},
                          {"annuli", annuli},
                          {"omitted", r.omitted},
                          {"constant", r.constant},
                          {"tail_slope", r.tail_slope},
                          {"tail_points", r.tail_points},
                          {"decayed_to_floor", r.decayed_to_floor},
                          {"expected", kernel_expected_to_pass(o.kernel, o.s, o.eps)},
                          {"verdict", r.pass ? "PASS" : "FAIL"}};
        std::cout << out.dump(2) << "\n";
        return r.pass ? kPass : kFail;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kError;
    }
}

int list_suites() {
    for (const auto& s : suite_catalog()) {
        const char* stat = s.statistic == Statistic::Envelope ? "envelope" : s.statistic == Statistic::Family ? "family" : "hypothesis";
        std::printf("%-18s %-10s n>=%d  %s\n", s.name, stat, s.min_dimension, s.statement);
    }
    return kPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Littlewood-Paley commutator and weighted-norm laboratory"};
    app.require_subcommand(1);

    RunOptions verify_opts, sweep_opts;
    auto* verify = app.add_subcommand("verify", "Run suites and exit with their verdict (0 pass, 1 fail, 2 inconclusive, 3 error)");
    add_run_options(verify, verify_opts);
    auto* sweep = app.add_subcommand("sweep", "Run suites and write the data; the exit status ignores the verdict");
    add_run_options(sweep, sweep_opts);

    NormOptions norm_opts;
    auto* norm = app.add_subcommand("norms", "Print the norms of a generated or saved field as JSON");
    norm->add_option("--field", norm_opts.field, "Field saved with save_field");
    norm->add_option("--generator", norm_opts.generator, "gaussian, bump, random or hermite")->capture_default_str();
    norm->add_option("--center", norm_opts.center);
    norm->add_option("--width", norm_opts.width);
    norm->add_option("--modulation", norm_opts.modulation);
    norm->add_option("--radius", norm_opts.radius);
    norm->add_option("--k-lo", norm_opts.k_lo);
    norm->add_option("--k-hi", norm_opts.k_hi);
    norm->add_option("--degree", norm_opts.degree);
    norm->add_option("--member-seed", norm_opts.seed);
    norm->add_flag("--mean-free", norm_opts.mean_free);
    norm->add_option("--s", norm_opts.s)->capture_default_str();
    norm->add_option("--gamma", norm_opts.gamma)->capture_default_str();
    norm->add_option("--d", norm_opts.d)->capture_default_str();
    norm_opts.grid.add(norm);

    KernelOptions kernel_opts;
    auto* kernel = app.add_subcommand("kernel-check", "Annulus-mass hypothesis for a test kernel");
    kernel->add_option("--kernel", kernel_opts.kernel, "lp, gaussian, ball or power")->capture_default_str();
    kernel->add_option("--s", kernel_opts.s)->capture_default_str();
    kernel->add_option("--eps", kernel_opts.eps)->capture_default_str();
    kernel->add_option("--slope-tolerance", kernel_opts.slope_tolerance)->capture_default_str();
    kernel_opts.grid.add(kernel);

    auto* list = app.add_subcommand("list-suites", "List suite ids with the inequality each one measures");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kPass : kError;
    }
    if (verify->parsed()) return run(verify_opts, true);
    if (sweep->parsed()) return run(sweep_opts, false);
    if (norm->parsed()) return norms(norm_opts);
    if (kernel->parsed()) return kernel_check(kernel_opts);
    if (list->parsed()) return list_suites();
    return kError;
}
