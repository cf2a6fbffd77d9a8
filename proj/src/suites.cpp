#include "lplab/commutator.hpp"
#include "lplab/harness.hpp"
#include "lplab/norms.hpp"
#include "lplab/realspace.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <numbers>
#include <mutex>
#include <sstream>

namespace lplab {

namespace {

std::string num(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::ostringstream os;
    os << v;
    return os.str();
}

std::string exponents_label(const Exponents& e) {
    return "p=" + num(e.p) + " q=" + num(e.q) + " r=" + num(e.r);
}

// A sweep is a list of independent tasks; each returns its records and results are
// concatenated in task order, so the output does not depend on the thread count.
using Task = std::function<std::vector<Record>()>;

class Sweep {
public:
    Sweep(const SweepConfig& config, const ProgressFn& progress) : config_(config), progress_(progress) {}

    void add(std::string label, Task task) { tasks_.push_back({std::move(label), std::move(task)}); }

    std::vector<Record> run() {
        std::vector<std::vector<Record>> results(tasks_.size());
        std::mutex mutex;
        std::size_t done = 0;
        parallel_for(tasks_.size(), [&](std::size_t i) {
            try {
                results[i] = tasks_[i].second();
            } catch (const std::exception& e) {
                throw std::runtime_error(std::string(to_string(config_.suite)) + " at " + tasks_[i].first + ": " + e.what());
            }
            if (progress_) {
                std::lock_guard lock(mutex);
                ++done;
                progress_("[" + std::to_string(done) + "/" + std::to_string(tasks_.size()) + "] " + tasks_[i].first);
            }
        });
        std::vector<Record> out;
        for (auto& r : results) out.insert(out.end(), std::make_move_iterator(r.begin()), std::make_move_iterator(r.end()));
        return out;
    }

private:
    const SweepConfig& config_;
    const ProgressFn& progress_;
    std::vector<std::pair<std::string, Task>> tasks_;
};

MemberSpec seeded(MemberSpec m, std::uint64_t seed) {
    if (seed != 0) m.seed ^= seed * 0x9E3779B97F4A7C15ull;
    return m;
}

double orbit_dilation(const SweepParams& p, double x) { return p.orbit ? std::exp2(x - p.orbit_anchor) : 1.0; }

Record skipped_record(std::string series, std::string member, double x, bool refined, const std::string& reason) {
    Record r;
    r.series = std::move(series);
    r.member = std::move(member);
    r.x = x;
    r.refined = refined;
    r.skipped = true;
    r.reason = reason;
    return r;
}

Record ratio_record(std::string series, std::string member, double x, double lhs, double rhs) {
    Record r;
    r.series = std::move(series);
    r.member = std::move(member);
    r.x = x;
    r.lhs = lhs;
    r.rhs = rhs;
    if (rhs > 0.0) {
        r.ratio = lhs / rhs;
    } else {
        r.skipped = true;
        r.reason = "zero denominator";
    }
    return r;
}

constexpr double kPowerDecay = 0.5;  // control kernel (1 + |x|)^{-(n + 0.5)}

}  // namespace

SampledField build_kernel(const std::string& name, const GridSpec& spec) {
    const int n = spec.dimension();
    if (name == "lp") return lp_kernel(0, spec);
    auto radial = [&](auto profile) {
        return SampledField::from_function(spec, [&](const Point& p) {
            return cplx(profile(std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2])));
        });
    };
    if (name == "gaussian") return radial([](double r) { return std::exp(-std::numbers::pi * r * r); });
    if (name == "ball") {
        auto h = radial([](double r) { return r <= 1.0 ? 1.0 : 0.0; });
        return cplx(1.0 / quadrature_integral(h).real()) * h;
    }
    if (name == "power") return radial([n](double r) { return std::pow(1.0 + r, -(n + kPowerDecay)); });
    throw std::invalid_argument("unknown kernel '" + name + "'");
}

bool kernel_expected_to_pass(const std::string& name, double s, double eps) {
    return name != "power" || kPowerDecay > s + eps;
}

namespace {

Record hypothesis_record(const std::string& kernel, const GridSpec& spec, double s, double eps) {
    const auto h = verify_kernel_hypothesis(build_kernel(kernel, spec), s, eps);
    Record r;
    r.kind = "hypothesis";
    r.series = kernel;
    r.member = kernel;
    r.x = s + eps;
    r.params = {{"s", s},
                {"eps", eps},
                {"unit_ball_mass", h.unit_ball_mass},
                {"tail_slope", h.tail_slope},
                {"tail_points", h.tail_points},
                {"decayed_to_floor", h.decayed_to_floor ? 1.0 : 0.0},
                {"pass", h.pass ? 1.0 : 0.0},
                {"expect", kernel_expected_to_pass(kernel, s, eps) ? 1.0 : 0.0}};
    r.lhs = h.constant;
    r.rhs = 1.0;
    r.ratio = h.constant;
    return r;
}

// thm-1.1 (kernel route) and cor-1.2 (projection route) share the sweep over pairs and k.
std::vector<Record> bilinear_commutator(const SweepConfig& c, const ProgressFn& progress, bool kernel_route) {
    const GridSpec spec = c.grid.spec();
    const auto& p = c.params;
    const AliasingGuard guard{c.tolerances.aliasing};
    std::vector<std::pair<std::string, SampledField>> kernels;
    if (kernel_route) {
        for (const auto& name : p.kernels) kernels.emplace_back(name, build_kernel(name, spec));
    } else {
        kernels.emplace_back("", SampledField::zeros(spec));
    }
    auto series = [&](const std::string& kernel, double s, const Exponents& e) {
        std::string out = (kernel.empty() ? "" : "kernel=" + kernel + " ") + "s=" + num(s) + " " + exponents_label(e);
        return out;
    };

    Sweep sweep(c, progress);
    const std::size_t F = c.family.size();
    for (std::size_t i = 0; i < F; ++i) {
        const auto mf = seeded(c.family[i], c.seed);
        const auto mg = seeded(c.family[(i + 1) % F], c.seed);
        const std::string pair = mf.name + " x " + mg.name;
        for (int k : p.k) {
            sweep.add(pair + " k=" + std::to_string(k), [&, mf, mg, pair, k] {
                std::vector<Record> out;
                const FamilyOptions opt{orbit_dilation(p, k), p.mean_free};
                try {
                    const auto f = generate_member(mf, spec, opt);
                    const auto g = generate_member(mg, spec, opt);
                    std::vector<double> Dsf, normg;
                    for (double s : p.s) {
                        const auto Ds = fractional_derivative(f, s);
                        for (const auto& e : p.pqr) Dsf.push_back(lp_norm(Ds, e.p)), normg.push_back(lp_norm(g, e.q));
                    }
                    for (const auto& [name, P] : kernels) {
                        const auto H = kernel_route ? kernel_commutator(dilate_kernel(P, k), f, g, guard)
                                                    : lp_commutator(f, g, k, guard);
                        std::size_t idx = 0;
                        for (double s : p.s) {
                            for (const auto& e : p.pqr) {
                                auto r = ratio_record(series(name, s, e), pair, k, std::exp2(s * k) * lp_norm(H, e.r),
                                                      Dsf[idx] * normg[idx]);
                                r.params = {{"k", k}, {"s", s}, {"p", e.p}, {"q", e.q},
                                            {"r", e.r}, {"dilation", opt.dilation}};
                                out.push_back(std::move(r));
                                ++idx;
                            }
                        }
                    }
                } catch (const std::domain_error& err) {
                    out.clear();
                    for (const auto& kn : kernels) {
                        for (double s : p.s) {
                            for (const auto& e : p.pqr) out.push_back(skipped_record(series(kn.first, s, e), pair, k, false, err.what()));
                        }
                    }
                }
                return out;
            });
        }
    }
    auto records = sweep.run();
    if (kernel_route) {
        for (const auto& name : p.kernels) {
            for (double s : p.s) {
                for (double eps : p.eps) records.push_back(hypothesis_record(name, spec, s, eps));
            }
        }
    }
    return records;
}

std::vector<Record> pointwise_holder(const SweepConfig& c, const ProgressFn& progress) {
    const auto& p = c.params;
    Sweep sweep(c, progress);
    for (int level = 0; level <= (p.refine ? 1 : 0); ++level) {
        const GridSpec spec = level ? c.grid.spec().refined() : c.grid.spec();
        for (std::size_t i = 0; i < c.family.size(); ++i) {
            const auto m = seeded(c.family[i], c.seed);
            sweep.add(m.name + (level ? " (2N)" : ""), [&, spec, m, i, level] {
                std::vector<Record> out;
                PairSampling sampling;
                sampling.random_pairs = p.pairs;
                sampling.seed ^= c.seed;
                try {
                    const auto f = generate_member(m, spec, {1.0, p.mean_free});
                    for (double s : p.s) {
                        auto r = ratio_record("s=" + num(s), m.name, static_cast<double>(i), holder_ratio(f, s, sampling), 1.0);
                        r.refined = level == 1;
                        r.params = {{"s", s}, {"N", spec.samples()}};
                        out.push_back(std::move(r));
                    }
                } catch (const std::domain_error& err) {
                    out.clear();
                    for (double s : p.s) out.push_back(skipped_record("s=" + num(s), m.name, static_cast<double>(i), level == 1, err.what()));
                }
                return out;
            });
        }
    }
    return sweep.run();
}

std::vector<Record> truncated_kernel(const SweepConfig& c, const ProgressFn& progress) {
    const GridSpec spec = c.grid.spec();
    const auto& p = c.params;
    const AliasingGuard guard{c.tolerances.aliasing};
    auto series = [](double s, const Exponents& e) { return "s=" + num(s) + " " + exponents_label(e); };
    Sweep sweep(c, progress);
    const std::size_t F = c.family.size();
    for (std::size_t i = 0; i < F; ++i) {
        const auto mf = seeded(c.family[i], c.seed);
        const auto mg = seeded(c.family[(i + 1) % F], c.seed);
        const std::string pair = mf.name + " x " + mg.name;
        sweep.add(pair, [&, mf, mg, pair] {
            std::vector<Record> out;
            for (double R : p.R) {
                try {
                    const auto f = generate_member(mf, spec, {1.0, p.mean_free});
                    const auto g = generate_member(mg, spec, {1.0, p.mean_free});
                    const auto h = SampledField::from_function(spec, [R](const Point& x) {
                        return cplx(x[0] * x[0] + x[1] * x[1] + x[2] * x[2] <= R * R ? 1.0 : 0.0);
                    });
                    const auto H = kernel_commutator(h, f, g, guard);
                    const double h1 = lp_norm(h, 1.0);
                    for (double s : p.s) {
                        const auto Ds = fractional_derivative(f, s);
                        for (const auto& e : p.pqr) {
                            auto r = ratio_record(series(s, e), pair, R, lp_norm(H, e.r),
                                                  std::pow(R, s) * h1 * lp_norm(Ds, e.p) * lp_norm(g, e.q));
                            r.params = {{"R", R}, {"s", s}, {"p", e.p}, {"q", e.q},
                                        {"r", e.r}};
                            out.push_back(std::move(r));
                        }
                    }
                } catch (const std::domain_error& err) {
                    for (double s : p.s) {
                        for (const auto& e : p.pqr) out.push_back(skipped_record(series(s, e), pair, R, false, err.what()));
                    }
                }
            }
            return out;
        });
    }
    return sweep.run();
}

std::vector<Record> localized_commutator(const SweepConfig& c, const ProgressFn& progress) {
    const GridSpec spec = c.grid.spec();
    const auto& p = c.params;
    const int n = spec.dimension();
    const DyadicAnnulusDecomposition ann(spec);
    std::vector<SampledField> masks;
    for (int j = ann.m_min(); j <= ann.m_max(); ++j) masks.push_back(ann.mask_field(j));
    Sweep sweep(c, progress);
    for (const auto& member : c.family) {
        const auto m = seeded(member, c.seed);
        for (int k : p.k) {
            sweep.add(m.name + " k=" + std::to_string(k), [&, m, k] {
                std::vector<Record> out;
                try {
                    const auto f = project_below(generate_member(m, spec, {orbit_dilation(p, k), p.mean_free}), k);
                    const auto Pkf = project_band(f, k);
                    std::vector<double> cm;
                    for (const auto& chi : masks) {
                        cm.push_back(lp_norm(project_band(pointwise_product(chi, f), k) - pointwise_product(chi, Pkf), 2.0));
                    }
                    for (double a : p.a) {
                        double lhs = 0.0;
                        for (int j = ann.m_min(); j <= ann.m_max(); ++j) lhs += std::exp2(a * j) * cm[j - ann.m_min()];
                        // inner annuli below the grid scale behave like 2^{(a + n/2) m}: complete geometrically
                        const double tail = std::exp2(a * ann.m_min()) * cm.front() / (std::exp2(a + n / 2.0) - 1.0);
                        auto r = ratio_record("a=" + num(a), m.name, k, lhs + tail, lp_norm(fractional_derivative(f, -a), 2.0));
                        r.tail = tail;
                        r.params = {{"k", k}, {"a", a}, {"m_min", ann.m_min()}, {"m_max", ann.m_max()}};
                        out.push_back(std::move(r));
                    }
                } catch (const std::domain_error& err) {
                    out.clear();
                    for (double a : p.a) out.push_back(skipped_record("a=" + num(a), m.name, k, false, err.what()));
                }
                return out;
            });
        }
    }
    return sweep.run();
}

std::vector<Record> embeddings(const SweepConfig& c, const ProgressFn& progress, bool dual) {
    const GridSpec spec = c.grid.spec();
    const auto& p = c.params;
    const DyadicAnnulusDecomposition ann(spec);
    auto series = [](double g, double d) { return "gamma=" + num(g) + " d=" + num(d); };
    Sweep sweep(c, progress);
    for (std::size_t i = 0; i < c.family.size(); ++i) {
        const auto m = seeded(c.family[i], c.seed);
        sweep.add(m.name, [&, m, i] {
            std::vector<Record> out;
            try {
                const auto f = generate_member(m, spec, {1.0, p.mean_free});
                for (double g : p.gamma) {
                    for (double d : p.d) {
                        Record r;
                        if (dual) {
                            r = ratio_record(series(g, d), m.name, static_cast<double>(i),
                                             ann.weighted_sup(fractional_derivative(f, g + d / 2.0), -0.5), y_dual_norm(f, g, d));
                        } else {
                            const auto y = y_norm(f, g, d);
                            const auto w = weighted_sobolev_sum(f, g, d);
                            r = ratio_record(series(g, d), m.name, static_cast<double>(i), y.value, w.value);
                            r.tail = w.tail;
                            r.params["y_tail"] = y.tail;
                        }
                        r.params["gamma"] = g;
                        r.params["d"] = d;
                        out.push_back(std::move(r));
                    }
                }
            } catch (const std::domain_error& err) {
                out.clear();
                for (double g : p.gamma) {
                    for (double d : p.d) out.push_back(skipped_record(series(g, d), m.name, static_cast<double>(i), false, err.what()));
                }
            }
            return out;
        });
    }
    return sweep.run();
}

std::vector<Record> bernstein(const SweepConfig& c, const ProgressFn& progress) {
    const GridSpec spec = c.grid.spec();
    const auto& p = c.params;
    const int n = spec.dimension();
    auto series = [](const std::array<double, 2>& e) { return "p=" + num(e[0]) + " q=" + num(e[1]); };
    Sweep sweep(c, progress);
    for (const auto& member : c.family) {
        const auto m = seeded(member, c.seed);
        for (double K : p.K) {
            sweep.add(m.name + " K=" + num(K), [&, m, K] {
                std::vector<Record> out;
                const int j = static_cast<int>(std::lround(std::log2(K)));
                try {
                    const auto f = project_below(generate_member(m, spec, {orbit_dilation(p, j), p.mean_free}), j);
                    for (const auto& e : p.pq) {
                        auto r = ratio_record(series(e), m.name, K, lp_norm(f, e[1]),
                                              std::pow(K, n * (1.0 / e[0] - 1.0 / e[1])) * lp_norm(f, e[0]));
                        r.params = {{"K", K}, {"p", e[0]}, {"q", e[1]}};
                        out.push_back(std::move(r));
                    }
                } catch (const std::domain_error& err) {
                    out.clear();
                    for (const auto& e : p.pq) out.push_back(skipped_record(series(e), m.name, K, false, err.what()));
                }
                return out;
            });
        }
    }
    return sweep.run();
}

std::vector<Record> negative_sobolev(const SweepConfig& c, const ProgressFn& progress) {
    const GridSpec spec = c.grid.spec();
    const DyadicAnnulusDecomposition ann(spec);
    Sweep sweep(c, progress);
    for (std::size_t i = 0; i < c.family.size(); ++i) {
        const auto m = seeded(c.family[i], c.seed);
        sweep.add(m.name, [&, m, i] {
            try {
                const auto g = generate_member(m, spec, {1.0, c.params.mean_free});
                const auto w = ann.weighted_sum(g, 0.5);
                auto r = ratio_record("half-derivative", m.name, static_cast<double>(i),
                                      lp_norm(fractional_derivative(g, -0.5), 2.0), w.value);
                r.tail = w.tail;
                return std::vector<Record>{r};
            } catch (const std::domain_error& err) {
                return std::vector<Record>{skipped_record("half-derivative", m.name, static_cast<double>(i), false, err.what())};
            }
        });
    }
    return sweep.run();
}

std::vector<Record> kernel_hypothesis(const SweepConfig& c, const ProgressFn& progress) {
    const GridSpec spec = c.grid.spec();
    const auto& p = c.params;
    Sweep sweep(c, progress);
    for (const auto& kernel : p.kernels) {
        sweep.add(kernel, [&, kernel] {
            std::vector<Record> out;
            for (double s : p.s) {
                for (double eps : p.eps) out.push_back(hypothesis_record(kernel, spec, s, eps));
            }
            return out;
        });
    }
    return sweep.run();
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

VerificationReport run_suite(const SweepConfig& config, const ProgressFn& progress) {
    validate(config);
    const auto start = std::chrono::steady_clock::now();
    VerificationReport report;
    report.config = config;
    report.timestamp = utc_timestamp();
    const auto& p = config.params;
    switch (config.suite) {
        case SuiteId::Thm11: report.records = bilinear_commutator(config, progress, true); break;
        case SuiteId::Cor12: report.records = bilinear_commutator(config, progress, false); break;
        case SuiteId::Lem31: report.records = pointwise_holder(config, progress); break;
        case SuiteId::Lem32: report.records = truncated_kernel(config, progress); break;
        case SuiteId::Lem41: report.records = localized_commutator(config, progress); break;
        case SuiteId::Thm13: report.records = embeddings(config, progress, false); break;
        case SuiteId::Cor14: report.records = embeddings(config, progress, true); break;
        case SuiteId::Bernstein: report.records = bernstein(config, progress); break;
        case SuiteId::Eq971: report.records = negative_sobolev(config, progress); break;
        case SuiteId::KernelHypothesis: report.records = kernel_hypothesis(config, progress); break;
    }
    if (p.orbit) {
        report.notes.push_back("members evaluated on the dilation orbit f(2^(x - " + std::to_string(p.orbit_anchor) + ") .)");
    }
    if (p.mean_free) report.notes.push_back("members made mean-free by subtracting a unit-mass Gaussian");
    if (config.suite == SuiteId::Lem41) report.notes.push_back("inner annuli below the grid scale completed as a geometric tail");
    if (config.suite == SuiteId::KernelHypothesis || config.suite == SuiteId::Thm11) {
        report.notes.push_back("kernel 'power' is (1 + |x|)^-(n + 0.5); it satisfies the hypothesis only when s + eps < 0.5");
    }
    evaluate(report);
    report.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

}  // namespace lplab
