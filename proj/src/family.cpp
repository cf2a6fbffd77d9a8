#include "lplab/family.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace lplab {

namespace {

constexpr int kRandomWaves = 16;

struct Wave {
    Point xi;
    double amplitude;
    double phase;
};

std::vector<Wave> random_waves(const MemberSpec& m, int dimension) {
    std::mt19937_64 rng(m.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> normal;
    std::vector<Wave> waves(kRandomWaves);
    for (auto& w : waves) {
        const double magnitude = std::exp2(m.k_lo + (m.k_hi + 1 - m.k_lo) * unit(rng));
        Point dir{0.0, 0.0, 0.0};
        double norm = 0.0;
        do {
            norm = 0.0;
            for (int a = 0; a < dimension; ++a) {
                dir[a] = normal(rng);
                norm += dir[a] * dir[a];
            }
        } while (norm < 1e-12);
        norm = std::sqrt(norm);
        for (int a = 0; a < dimension; ++a) w.xi[a] = magnitude * dir[a] / norm;
        w.amplitude = normal(rng);
        w.phase = 2.0 * std::numbers::pi * unit(rng);
    }
    return waves;
}

// Separable evaluation of the wave sum: per-axis phase tables instead of a cosine per point
// and wave.
SampledField random_field(const MemberSpec& m, const std::vector<Wave>& waves, const GridSpec& spec,
                          double lambda) {
    const int n = spec.dimension();
    const int N = spec.samples();
    const double pi = std::numbers::pi;
    const std::size_t W = waves.size();
    std::vector<std::vector<cplx>> phase(static_cast<std::size_t>(n), std::vector<cplx>(W * N));
    std::vector<std::vector<double>> taper(static_cast<std::size_t>(n), std::vector<double>(N));
    for (int a = 0; a < n; ++a) {
        for (int i = 0; i < N; ++i) {
            const double y = lambda * (-spec.half_width() + i * spec.spacing()) - (a == 0 ? m.center : 0.0);
            taper[a][i] = std::exp(-pi * y * y / (m.width * m.width));
            for (std::size_t w = 0; w < W; ++w) phase[a][w * N + i] = std::polar(1.0, 2.0 * pi * waves[w].xi[a] * y);
        }
    }
    std::vector<cplx> weight(W);
    for (std::size_t w = 0; w < W; ++w) weight[w] = std::polar(waves[w].amplitude, waves[w].phase);

    std::vector<cplx> v(spec.size());
    for (std::size_t flat = 0; flat < v.size(); ++flat) {
        const auto idx = spec.unflatten(flat);
        double env = 1.0;
        for (int a = 0; a < n; ++a) env *= taper[a][idx[a]];
        double acc = 0.0;
        for (std::size_t w = 0; w < W; ++w) {
            cplx z = weight[w];
            for (int a = 0; a < n; ++a) z *= phase[a][w * N + idx[a]];
            acc += z.real();
        }
        v[flat] = acc * env;
    }
    return SampledField(spec, std::move(v));
}

double hermite(int degree, double t) {
    switch (degree) {
        case 0: return 1.0;
        case 1: return 2.0 * t;
        case 2: return 4.0 * t * t - 2.0;
        case 3: return 8.0 * t * t * t - 12.0 * t;
        default: return 16.0 * t * t * t * t - 48.0 * t * t + 12.0;
    }
}

void validate(const MemberSpec& m) {
    if (!(m.width > 0.0)) throw std::invalid_argument("generator width must be positive");
    if (m.kind == GeneratorKind::Bump && !(m.radius > 0.0)) {
        throw std::invalid_argument("bump radius must be positive");
    }
    if (m.kind == GeneratorKind::Random && m.k_hi < m.k_lo) {
        throw std::invalid_argument("random generator needs k_lo <= k_hi");
    }
    if (m.kind == GeneratorKind::Hermite && (m.degree < 0 || m.degree > 4)) {
        throw std::invalid_argument("hermite degree must lie in 0..4");
    }
}

}  // namespace

double MemberSpec::scale() const noexcept {
    return kind == GeneratorKind::Bump ? radius / 2.0 : width;
}

const char* to_string(GeneratorKind kind) noexcept {
    switch (kind) {
        case GeneratorKind::Gaussian: return "gaussian";
        case GeneratorKind::Bump: return "bump";
        case GeneratorKind::Random: return "random";
        case GeneratorKind::Hermite: return "hermite";
    }
    return "?";
}

GeneratorKind parse_generator_kind(const std::string& name) {
    for (auto k : {GeneratorKind::Gaussian, GeneratorKind::Bump, GeneratorKind::Random,
                   GeneratorKind::Hermite}) {
        if (name == to_string(k)) return k;
    }
    throw std::invalid_argument("unknown generator kind '" + name + "'");
}

SampledField generate_member(const MemberSpec& m, const GridSpec& spec,
                             const FamilyOptions& options) {
    validate(m);
    if (!(options.dilation > 0.0)) throw std::invalid_argument("dilation must be positive");
    const int n = spec.dimension();
    const double lambda = options.dilation;
    const double pi = std::numbers::pi;
    const auto waves = m.kind == GeneratorKind::Random ? random_waves(m, n) : std::vector<Wave>{};

    auto eval = [&](const Point& p) {
        Point y{0.0, 0.0, 0.0};
        for (int a = 0; a < n; ++a) y[a] = lambda * p[a];
        Point c = y;
        c[0] -= m.center;
        const double r2 = c[0] * c[0] + c[1] * c[1] + c[2] * c[2];
        switch (m.kind) {
            case GeneratorKind::Gaussian:
                return std::exp(-pi * r2 / (m.width * m.width)) * std::cos(2.0 * pi * m.modulation * y[0]);
            case GeneratorKind::Bump: {
                const double t = r2 / (m.radius * m.radius);
                return t < 1.0 ? std::exp(-1.0 / (1.0 - t)) : 0.0;
            }
            case GeneratorKind::Random:
                break;  // evaluated by random_field
            case GeneratorKind::Hermite:
                return hermite(m.degree, std::sqrt(2.0 * pi) * c[0] / m.width) *
                       std::exp(-pi * r2 / (m.width * m.width));
        }
        return 0.0;
    };
    auto f = m.kind == GeneratorKind::Random ? random_field(m, waves, spec, lambda)
                                              : SampledField::from_function(spec, [&](const Point& p) { return cplx(eval(p)); });

    if (options.mean_free) {
        // a wider Gaussian, so that a Gaussian member does not cancel to zero
        const double w = 1.25 * m.scale() / lambda;
        const double c = m.center / lambda;
        const auto g = SampledField::from_function(spec, [&](const Point& p) {
            const double r2 = (p[0] - c) * (p[0] - c) + p[1] * p[1] + p[2] * p[2];
            return cplx(std::exp(-pi * r2 / (w * w)) / std::pow(w, n));
        });
        f = f - quadrature_integral(f) * g;
    }
    require_boundary_decay(f);
    return f;
}

std::vector<FamilyMember> generate_family(const std::vector<MemberSpec>& members,
                                          const GridSpec& spec, const FamilyOptions& options) {
    std::vector<FamilyMember> out;
    out.reserve(members.size());
    for (const auto& m : members) out.push_back({m.name, generate_member(m, spec, options)});
    return out;
}

std::vector<MemberSpec> default_family() {
    std::vector<MemberSpec> f(6);
    f[0] = {.kind = GeneratorKind::Gaussian, .name = "gauss-w1", .center = 0.0, .width = 1.0};
    f[1] = {.kind = GeneratorKind::Gaussian, .name = "gauss-w0.6", .center = 1.5, .width = 0.6};
    f[2] = {.kind = GeneratorKind::Bump, .name = "bump-r3", .center = -1.0, .radius = 3.0};
    f[3] = {.kind = GeneratorKind::Gaussian, .name = "modulated", .center = 0.5, .width = 1.2, .modulation = 1.5};
    f[4] = {.kind = GeneratorKind::Random, .name = "random-1", .width = 2.0, .k_lo = -2, .k_hi = 0, .seed = 1};
    f[5] = {.kind = GeneratorKind::Random, .name = "random-2", .center = 1.0, .width = 2.0, .k_lo = -2, .k_hi = 0, .seed = 2};
    return f;
}

}  // namespace lplab
