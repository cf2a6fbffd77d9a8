#include "lplab/harness.hpp"

#include "lplab/dyadic.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

namespace lplab {

const std::vector<SuiteInfo>& suite_catalog() {
    static const std::vector<SuiteInfo> catalog{
        {SuiteId::Thm11, "thm-1.1",
         "|int P_k(y)(f(x)-f(x-y))g(x-y)dy|_r <= C 2^{-sk} ||D|^s f|_p |g|_q for a kernel with decaying annulus masses",
         Statistic::Envelope, true, 1},
        {SuiteId::Cor12, "cor-1.2", "|[P_k,f]g|_r <= C 2^{-sk} ||D|^s f|_p |g|_q, 1/r = 1/p + 1/q",
         Statistic::Envelope, true, 1},
        {SuiteId::Lem31, "lem-3.1", "|f(x)-f(y)| <= C |x-y|^s (M|D|^s f(x) + M|D|^s f(y))",
         Statistic::Family, false, 1},
        {SuiteId::Lem32, "lem-3.2",
         "|int h(y)(f(x)-f(x-y))g(x-y)dy|_r <= C R^s |h|_1 ||D|^s f|_p |g|_q, supp h in B_R",
         Statistic::Envelope, false, 1},
        {SuiteId::Lem41, "lem-4.1", "sum_m 2^{am} |[P_k, phi(2^-m .)]f|_2 <= C ||D|^{-a} f|_2 for f band-limited to 2^k",
         Statistic::Envelope, false, 1},
        {SuiteId::Thm13, "thm-1.3", "|f|_{Y^{gamma,d}} <= C sum_m 2^{m/2} |phi(2^-m .) |D|^{gamma-d/2} f|_2",
         Statistic::Family, false, 2},
        {SuiteId::Cor14, "cor-1.4", "sup_m 2^{-m/2} |phi(2^-m .) |D|^{gamma+d/2} f|_2 <= C |f|_{Ybar^{gamma,d}}",
         Statistic::Family, false, 2},
        {SuiteId::Bernstein, "bernstein", "|f|_q <= C K^{n(1/p-1/q)} |f|_p for f = P_{<=K} f",
         Statistic::Envelope, false, 1},
        {SuiteId::Eq971, "eq-971", "||D|^{-1/2} g|_2 <= C sum_m 2^{m/2} |phi(2^-m .) g|_2",
         Statistic::Family, false, 2},
        {SuiteId::KernelHypothesis, "kernel-hypothesis",
         "int_{|x|<=1}|P| <= C and int_{2^{j-1}<=|x|<=2^j}|P| <= C 2^{-j(eps+s)}",
         Statistic::Hypothesis, false, 1},
    };
    return catalog;
}

const SuiteInfo& suite_info(SuiteId id) {
    for (const auto& s : suite_catalog()) {
        if (s.id == id) return s;
    }
    throw std::logic_error("suite missing from catalog");
}

const char* to_string(SuiteId id) noexcept {
    for (const auto& s : suite_catalog()) {
        if (s.id == id) return s.name;
    }
    return "?";
}

SuiteId parse_suite(const std::string& name) {
    std::string known;
    for (const auto& s : suite_catalog()) {
        if (name == s.name) return s.id;
        known += known.empty() ? "" : ", ";
        known += s.name;
    }
    throw std::invalid_argument("unknown suite '" + name + "' (known: " + known + ")");
}

const char* to_string(Verdict v) noexcept {
    switch (v) {
        case Verdict::Pass: return "PASS";
        case Verdict::Fail: return "FAIL";
        case Verdict::Inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

Verdict parse_verdict(const std::string& name) {
    for (auto v : {Verdict::Pass, Verdict::Fail, Verdict::Inconclusive}) {
        if (name == to_string(v)) return v;
    }
    throw std::invalid_argument("unknown verdict '" + name + "'");
}

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

std::vector<int> int_range(int lo, int hi) {
    std::vector<int> v;
    for (int i = lo; i <= hi; ++i) v.push_back(i);
    return v;
}

std::vector<MemberSpec> compact_family() {
    std::vector<MemberSpec> f(6);
    f[0] = {.kind = GeneratorKind::Gaussian, .name = "gauss-w1", .width = 1.0};
    f[1] = {.kind = GeneratorKind::Gaussian, .name = "gauss-w0.8", .center = 0.25, .width = 0.8};
    f[2] = {.kind = GeneratorKind::Bump, .name = "bump-r1.5", .center = -0.25, .radius = 1.5};
    f[3] = {.kind = GeneratorKind::Gaussian, .name = "modulated", .width = 1.0, .modulation = 1.0};
    f[4] = {.kind = GeneratorKind::Random, .name = "random-1", .width = 1.0, .k_lo = -1, .k_hi = 0, .seed = 1};
    f[5] = {.kind = GeneratorKind::Random, .name = "random-2", .center = 0.25, .width = 1.0, .k_lo = -1, .k_hi = 0, .seed = 2};
    return f;
}

std::vector<MemberSpec> gaussian_ladder() {
    std::vector<MemberSpec> f;
    for (int j = -1; j <= 2; ++j) {
        const double w = std::exp2(j);
        std::ostringstream name;
        name << "gauss-w" << w;
        f.push_back({.kind = GeneratorKind::Gaussian, .name = name.str(), .width = w});
    }
    return f;
}

const std::vector<Exponents> kBilinearExponents{{2, 2, 1}, {inf, 2, 2}, {2, inf, 2}, {4, 4, 2}};

bool is_power_of_two(double K) {
    if (!(K >= 1.0)) return false;
    int e = 0;
    return std::frexp(K, &e) == 0.5;
}

std::string at(const char* field, std::size_t i) {
    return std::string("/params/") + field + "/" + std::to_string(i);
}

void require_nonempty(bool empty, const char* field) {
    if (empty) throw ConfigError(std::string("/params/") + field, "this suite needs a non-empty grid");
}

}  // namespace

SweepConfig default_config(SuiteId suite, int dimension) {
    SweepConfig c;
    c.suite = suite;
    c.family = default_family();
    auto& p = c.params;
    auto& t = c.tolerances;
    switch (suite) {
        case SuiteId::Thm11:
            c.grid = {1, 32768, 16.0};
            p.k = int_range(0, 5);
            p.s = {0.5};
            p.eps = {0.5};
            p.pqr = kBilinearExponents;
            p.kernels = {"lp"};
            p.orbit = true;
            t.max_over_median = 2.5;
            break;
        case SuiteId::Cor12:
            c.grid = {1, 32768, 16.0};
            p.k = int_range(0, 6);
            p.s = {0.25, 0.5, 0.75};
            p.pqr = kBilinearExponents;
            p.orbit = true;
            t.max_over_median = 2.5;
            break;
        case SuiteId::Lem31:
            c.grid = dimension == 2 ? GridConfig{2, 256, 12.0} : GridConfig{1, 1024, 16.0};
            p.s = {0.25, 0.5, 0.75};
            p.refine = true;
            break;
        case SuiteId::Lem32:
            c.grid = {1, 1024, 16.0};
            p.R = {0.5, 1.0, 2.0};
            p.s = {0.25, 0.5, 0.75};
            p.pqr = {{2, 2, 1}, {1, inf, 1}, {inf, 2, 2}, {2, inf, 2}};
            t.max_over_median = 2.5;
            break;
        case SuiteId::Lem41:
            if (dimension == 2) {
                c.grid = {2, 1024, 2.0};
                p.a = {-0.75, 0.0, 0.5};
                c.family = compact_family();
            } else {
                c.grid = {1, 8192, 16.0};
                p.a = {-0.25, 0.0, 0.5};
            }
            p.k = int_range(1, 5);
            p.orbit = true;
            p.mean_free = true;
            break;
        case SuiteId::Thm13:
        case SuiteId::Cor14:
            c.grid = {2, 256, 12.0};
            p.gamma = {0.0, 0.5, 1.0};
            p.d = {0.0, 0.5, 1.0};
            p.mean_free = true;
            break;
        case SuiteId::Bernstein:
            c.grid = {1, 8192, 16.0};
            p.K = {1, 2, 4, 8, 16, 32};
            p.pq = {{1, 2}, {2, inf}, {1, inf}};
            p.orbit = true;
            break;
        case SuiteId::Eq971:
            c.grid = {2, 256, 16.0};
            c.family = gaussian_ladder();
            p.mean_free = true;
            break;
        case SuiteId::KernelHypothesis:
            c.grid = {1, 4096, 64.0};
            p.kernels = {"lp", "gaussian", "ball", "power"};
            p.s = {0.5};
            p.eps = {0.5};
            c.family.clear();
            break;
    }
    return c;
}

void validate(const SweepConfig& c) {
    const auto& info = suite_info(c.suite);
    const auto& g = c.grid;
    try {
        (void)g.spec();
    } catch (const std::invalid_argument& e) {
        throw ConfigError("/grid", e.what());
    }
    if (g.n < info.min_dimension) {
        throw ConfigError("/grid/n", std::string(info.name) + " needs n >= " + std::to_string(info.min_dimension));
    }
    const auto& p = c.params;
    const bool uses_s = c.suite == SuiteId::Thm11 || c.suite == SuiteId::Cor12 || c.suite == SuiteId::Lem31 ||
                        c.suite == SuiteId::Lem32 || c.suite == SuiteId::KernelHypothesis;
    if (uses_s) {
        require_nonempty(p.s.empty(), "s");
        for (std::size_t i = 0; i < p.s.size(); ++i) {
            if (!(p.s[i] > 0.0 && p.s[i] < 1.0)) throw ConfigError(at("s", i), "s must lie in (0, 1)");
        }
    }
    const bool bilinear = c.suite == SuiteId::Thm11 || c.suite == SuiteId::Cor12 || c.suite == SuiteId::Lem32;
    if (bilinear) {
        require_nonempty(p.pqr.empty(), "pqr");
        for (std::size_t i = 0; i < p.pqr.size(); ++i) {
            const auto& e = p.pqr[i];
            if (!(e.p >= 1.0 && e.q >= 1.0 && e.r >= 1.0)) throw ConfigError(at("pqr", i), "exponents must be >= 1");
            if (std::abs(1.0 / e.p + 1.0 / e.q - 1.0 / e.r) > 1e-12) {
                throw ConfigError(at("pqr", i), "exponents must satisfy 1/p + 1/q = 1/r");
            }
        }
        if (c.family.size() < 2) throw ConfigError("/family", "bilinear suites need at least two members");
    }
    const GridSpec spec = g.spec();
    if (c.suite == SuiteId::Thm11 || c.suite == SuiteId::Cor12 || c.suite == SuiteId::Lem41) {
        require_nonempty(p.k.empty(), "k");
        const auto range = resolvable_range(spec);
        for (std::size_t i = 0; i < p.k.size(); ++i) {
            if (!range.contains(p.k[i])) {
                throw ConfigError(at("k", i), "k = " + std::to_string(p.k[i]) + " outside the resolvable range " +
                                                  std::to_string(range.k_min) + ".." + std::to_string(range.k_max));
            }
            if (c.suite == SuiteId::Thm11 && p.k[i] < 0) throw ConfigError(at("k", i), "kernel dilation needs k >= 0");
        }
    }
    if (c.suite == SuiteId::Lem32) {
        require_nonempty(p.R.empty(), "R");
        for (std::size_t i = 0; i < p.R.size(); ++i) {
            if (!(p.R[i] >= spec.spacing() && p.R[i] < spec.half_width() / 2.0)) {
                throw ConfigError(at("R", i), "support radius must lie in [dx, L/2): h would leave the box");
            }
        }
    }
    if (c.suite == SuiteId::Lem41) {
        require_nonempty(p.a.empty(), "a");
        for (std::size_t i = 0; i < p.a.size(); ++i) {
            if (!(p.a[i] > -g.n / 2.0 && p.a[i] < 1.0)) throw ConfigError(at("a", i), "a must lie in (-n/2, 1)");
        }
    }
    if (c.suite == SuiteId::Thm13 || c.suite == SuiteId::Cor14) {
        require_nonempty(p.gamma.empty(), "gamma");
        require_nonempty(p.d.empty(), "d");
        for (std::size_t i = 0; i < p.gamma.size(); ++i) {
            if (!(p.gamma[i] >= 0.0)) throw ConfigError(at("gamma", i), "gamma must be >= 0");
        }
        for (std::size_t i = 0; i < p.d.size(); ++i) {
            if (!(p.d[i] >= 0.0)) throw ConfigError(at("d", i), "d must be >= 0");
        }
    }
    if (c.suite == SuiteId::Bernstein) {
        require_nonempty(p.K.empty(), "K");
        require_nonempty(p.pq.empty(), "pq");
        const auto range = resolvable_range(spec);
        for (std::size_t i = 0; i < p.K.size(); ++i) {
            if (!is_power_of_two(p.K[i])) throw ConfigError(at("K", i), "K must be a power of two >= 1");
            if (!range.contains(static_cast<int>(std::log2(p.K[i])))) {
                throw ConfigError(at("K", i), "log2 K outside the resolvable range");
            }
        }
        for (std::size_t i = 0; i < p.pq.size(); ++i) {
            if (!(p.pq[i][0] >= 1.0 && p.pq[i][1] >= p.pq[i][0])) throw ConfigError(at("pq", i), "need 1 <= p <= q");
        }
    }
    if (c.suite == SuiteId::KernelHypothesis || c.suite == SuiteId::Thm11) {
        require_nonempty(p.eps.empty(), "eps");
        require_nonempty(p.kernels.empty(), "kernels");
        for (std::size_t i = 0; i < p.eps.size(); ++i) {
            if (!(p.eps[i] > 0.0)) throw ConfigError(at("eps", i), "eps must be positive");
        }
        for (std::size_t i = 0; i < p.kernels.size(); ++i) {
            const auto& k = p.kernels[i];
            if (k != "lp" && k != "gaussian" && k != "ball" && k != "power") {
                throw ConfigError(at("kernels", i), "unknown kernel '" + k + "' (lp, gaussian, ball, power)");
            }
        }
    }
    if (c.suite != SuiteId::KernelHypothesis && c.family.empty()) throw ConfigError("/family", "family is empty");
    for (std::size_t i = 0; i < c.family.size(); ++i) {
        const auto& m = c.family[i];
        const std::string ptr = "/family/" + std::to_string(i);
        if (!(m.width > 0.0)) throw ConfigError(ptr + "/width", "must be positive");
        if (m.kind == GeneratorKind::Bump && !(m.radius > 0.0)) throw ConfigError(ptr + "/radius", "must be positive");
        if (m.kind == GeneratorKind::Random && m.k_hi < m.k_lo) throw ConfigError(ptr + "/k_hi", "must be >= k_lo");
        if (m.kind == GeneratorKind::Hermite && (m.degree < 0 || m.degree > 4)) {
            throw ConfigError(ptr + "/degree", "must lie in 0..4");
        }
    }
    const auto& t = c.tolerances;
    if (!(t.max_over_median >= 1.0)) throw ConfigError("/tolerances/max_over_median", "must be >= 1");
    if (!(t.slope >= 0.0)) throw ConfigError("/tolerances/slope", "must be >= 0");
    if (!(t.skip_fraction >= 0.0 && t.skip_fraction <= 1.0)) throw ConfigError("/tolerances/skip_fraction", "must lie in [0, 1]");
    if (!(t.refinement >= 0.0)) throw ConfigError("/tolerances/refinement", "must be >= 0");
    if (!(t.aliasing > 0.0 && t.aliasing < 1.0)) throw ConfigError("/tolerances/aliasing", "must lie in (0, 1)");
    if (p.pairs == 0 && c.suite == SuiteId::Lem31) throw ConfigError("/params/pairs", "must be positive");
}

Regression slope_regression(const std::vector<std::pair<double, double>>& series) {
    if (series.size() < 3) throw std::invalid_argument("slope_regression needs at least 3 points");
    double sx = 0.0, sy = 0.0;
    for (const auto& [x, v] : series) {
        if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument("slope_regression needs positive finite values");
        sx += x;
        sy += std::log2(v);
    }
    const double n = static_cast<double>(series.size());
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (const auto& [x, v] : series) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (std::log2(v) - my);
    }
    if (!(sxx > 0.0)) throw std::invalid_argument("slope_regression needs at least two distinct x");
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;
    double rss = 0.0;
    for (const auto& [x, v] : series) {
        const double e = std::log2(v) - (intercept + slope * x);
        rss += e * e;
    }
    return {slope, intercept, std::sqrt(rss / (n - 2.0) / sxx)};
}

unsigned worker_threads() {
    if (const char* env = std::getenv("LPLAB_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
    const unsigned threads = static_cast<unsigned>(std::min<std::size_t>(worker_threads(), count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next = count;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

namespace {

double median(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t h = v.size() / 2;
    return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

// Ordered by first appearance so the report follows the sweep order.
template <class T>
std::vector<std::pair<std::string, std::vector<T>>> group(const std::vector<Record>& records,
                                                          const std::function<bool(const Record&)>& keep,
                                                          const std::function<T(const Record&)>& value) {
    std::vector<std::pair<std::string, std::vector<T>>> out;
    for (const auto& r : records) {
        if (!keep(r)) continue;
        auto it = std::find_if(out.begin(), out.end(), [&](const auto& g) { return g.first == r.series; });
        if (it == out.end()) {
            out.push_back({r.series, {}});
            it = std::prev(out.end());
        }
        it->second.push_back(value(r));
    }
    return out;
}

}  // namespace

void evaluate(VerificationReport& report) {
    const auto& info = suite_info(report.config.suite);
    const auto& tol = report.config.tolerances;
    auto& agg = report.aggregates;
    agg = {};
    report.curves.clear();
    report.checks.clear();

    std::vector<double> ratios;
    for (const auto& r : report.records) {
        ++agg.records;
        if (r.skipped) {
            ++agg.skipped;
            continue;
        }
        if (r.kind == "ratio" && !r.refined && r.ratio > 0.0) ratios.push_back(r.ratio);
    }
    if (!ratios.empty()) {
        agg.max = *std::max_element(ratios.begin(), ratios.end());
        agg.median = median(ratios);
        agg.max_over_median = agg.max / agg.median;
    }

    auto live = [](const Record& r) { return !r.skipped && r.kind == "ratio" && !r.refined; };

    if (info.statistic == Statistic::Envelope) {
        using Pt = std::pair<double, double>;
        const auto series = group<Pt>(report.records, live, [](const Record& r) { return Pt{r.x, r.ratio}; });
        double worst_mom = 0.0, worst_slope = -1.0;
        std::string worst_mom_series;
        for (const auto& [name, pts] : series) {
            std::vector<Pt> env;
            for (const auto& [x, y] : pts) {
                auto it = std::find_if(env.begin(), env.end(), [&](const Pt& e) { return e.first == x; });
                if (it == env.end()) env.push_back({x, y});
                else it->second = std::max(it->second, y);
            }
            std::sort(env.begin(), env.end());
            std::vector<double> ys;
            for (const auto& [x, y] : env) {
                report.curves.push_back({name, x, y});
                if (y > 0.0) ys.push_back(y);
            }
            if (ys.empty()) continue;
            const double mom = *std::max_element(ys.begin(), ys.end()) / median(ys);
            if (mom > worst_mom) {
                worst_mom = mom;
                worst_mom_series = name;
            }
            if (info.slope_law && ys.size() >= 3 && ys.size() == env.size()) {
                const auto fit = slope_regression(env);
                if (std::abs(fit.slope) > worst_slope) {
                    worst_slope = std::abs(fit.slope);
                    agg.slope = fit.slope;
                    agg.slope_stderr = fit.stderr_slope;
                    agg.slope_series = name;
                }
            }
        }
        if (!worst_mom_series.empty()) {
            report.checks.push_back({"envelope max/median across x (worst: " + worst_mom_series + ")", worst_mom,
                                     tol.max_over_median, worst_mom <= tol.max_over_median});
        }
        if (info.slope_law && agg.slope) {
            report.checks.push_back({"|slope of log2 envelope| (worst: " + agg.slope_series + ")", std::abs(*agg.slope),
                                     tol.slope, std::abs(*agg.slope) <= tol.slope});
        }
    } else if (info.statistic == Statistic::Family) {
        const auto series = group<Record>(report.records, live, [](const Record& r) { return r; });
        double worst = 0.0;
        std::string worst_series;
        for (const auto& [name, recs] : series) {
            std::vector<double> ys;
            for (const auto& r : recs) {
                report.curves.push_back({name, r.x, r.ratio});
                if (r.ratio > 0.0) ys.push_back(r.ratio);
            }
            if (ys.empty()) continue;
            const double mom = *std::max_element(ys.begin(), ys.end()) / median(ys);
            if (mom > worst) {
                worst = mom;
                worst_series = name;
            }
        }
        if (!worst_series.empty()) {
            report.checks.push_back({"family max/median (worst: " + worst_series + ")", worst, tol.max_over_median,
                                     worst <= tol.max_over_median});
        }
        // refinement: family max on 2N against N, per series
        auto refined = [](const Record& r) { return !r.skipped && r.kind == "ratio" && r.refined; };
        const auto fine = group<double>(report.records, refined, [](const Record& r) { return r.ratio; });
        if (!fine.empty()) {
            double change = 0.0;
            std::string where;
            for (const auto& [name, ys] : fine) {
                auto coarse = std::find_if(series.begin(), series.end(), [&](const auto& s) { return s.first == name; });
                if (coarse == series.end() || ys.empty()) continue;
                double cmax = 0.0, fmax = *std::max_element(ys.begin(), ys.end());
                for (const auto& r : coarse->second) cmax = std::max(cmax, r.ratio);
                if (!(cmax > 0.0)) continue;
                const double c = std::abs(fmax / cmax - 1.0);
                if (c >= change) {
                    change = c;
                    where = name;
                }
            }
            if (!where.empty()) {
                report.checks.push_back({"refinement N->2N change of family max (worst: " + where + ")", change,
                                         tol.refinement, change <= tol.refinement});
            }
        }
    }

    // hypothesis records may appear in any suite
    std::size_t hyp = 0, mismatches = 0;
    for (const auto& r : report.records) {
        if (r.skipped || r.kind != "hypothesis") continue;
        ++hyp;
        const bool expect = r.params.count("expect") && r.params.at("expect") != 0.0;
        const bool pass = r.params.count("pass") && r.params.at("pass") != 0.0;
        if (expect != pass) ++mismatches;
        report.curves.push_back({r.series, r.x, r.ratio});
    }
    if (hyp > 0) {
        report.checks.push_back({"kernel hypothesis outcomes differing from expectation", static_cast<double>(mismatches),
                                 0.0, mismatches == 0});
    }

    const double skip_fraction = agg.records ? static_cast<double>(agg.skipped) / agg.records : 1.0;
    if (agg.records == agg.skipped || skip_fraction > tol.skip_fraction || report.checks.empty()) {
        report.verdict = Verdict::Inconclusive;
    } else {
        const bool ok = std::all_of(report.checks.begin(), report.checks.end(), [](const Check& c) { return c.pass; });
        report.verdict = ok ? Verdict::Pass : Verdict::Fail;
    }
}

}  // namespace lplab
