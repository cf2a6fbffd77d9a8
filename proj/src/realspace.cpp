#include "lplab/realspace.hpp"

#include "lplab/dyadic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace lplab {

namespace {

double unit_ball_volume(int n) {
    switch (n) {
        case 1: return 2.0;
        case 2: return std::numbers::pi;
        default: return 4.0 * std::numbers::pi / 3.0;
    }
}

double unit_sphere_area(int n) { return n * unit_ball_volume(n); }

// Origin-cell value: average of |z|^{-alpha} over the ball of volume dx^n.
double singular_cell_average(const GridSpec& spec, double alpha) {
    const int n = spec.dimension();
    const double rho = std::pow(spec.cell_volume() / unit_ball_volume(n), 1.0 / n);
    return n * std::pow(rho, -alpha) / (n - alpha);
}

std::size_t origin_index(const GridSpec& spec) {
    const int h = spec.samples() / 2;
    return spec.flatten({h, h, h});
}

// Origin weight that makes the punctured lattice sum of |z|^{-alpha} G exact for a
// resolved Gaussian G = exp(-pi |z|^2 / w^2), w = 8 dx. This absorbs the lattice
// zeta-function correction of the singularity in any dimension.
double moment_matched_weight(const GridSpec& spec, double alpha) {
    const int n = spec.dimension();
    const double w = 8.0 * spec.spacing();
    const double exact = unit_sphere_area(n) * 0.5 * std::tgamma((n - alpha) / 2.0) *
                         std::pow(w * w / std::numbers::pi, (n - alpha) / 2.0);
    // sum over a cube of half-width 6 w; the Gaussian is below 1e-49 beyond it
    const int reach = 48;
    const double dx = spec.spacing();
    double acc = 0.0;
    for (int a = -reach; a <= reach; ++a) {
        for (int b = (n > 1 ? -reach : 0); b <= (n > 1 ? reach : 0); ++b) {
            for (int c = (n > 2 ? -reach : 0); c <= (n > 2 ? reach : 0); ++c) {
                if (a == 0 && b == 0 && c == 0) continue;
                const double r2 = (static_cast<double>(a) * a + static_cast<double>(b) * b +
                                   static_cast<double>(c) * c) * dx * dx;
                acc += std::pow(r2, -alpha / 2.0) * std::exp(-std::numbers::pi * r2 / (w * w));
            }
        }
    }
    return (exact - acc * spec.cell_volume()) / spec.cell_volume();
}

double lp_sum(const SampledField& f, double p) {
    if (std::isinf(p)) return f.max_abs();
    double acc = 0.0;
    for (const auto& v : f.values()) acc += std::pow(std::abs(v), p);
    return std::pow(acc * f.spec().cell_volume(), 1.0 / p);
}

}  // namespace

std::vector<double> RadiiPolicy::radii(const GridSpec& spec) const {
    if (!(ratio > 1.0)) throw std::invalid_argument("radius ladder ratio must exceed 1");
    std::vector<double> out;
    const double cap = spec.half_width() / 2.0;
    for (double r = spec.spacing(); r <= cap * (1.0 + 1e-12); r *= ratio) out.push_back(r);
    return out;
}

SampledField ball_average(const SampledField& f, double radius) {
    const auto& spec = f.spec();
    std::vector<cplx> ball(spec.size(), cplx{});
    std::size_t count = 0;
    const double limit = radius * (1.0 + 1e-12);
    for (std::size_t i = 0; i < ball.size(); ++i) {
        if (spec.radius(i) <= limit) {
            ball[i] = 1.0;
            ++count;
        }
    }
    const double weight = 1.0 / (static_cast<double>(count) * spec.cell_volume());
    for (auto& b : ball) b *= weight;
    return convolve(SampledField(spec, std::move(ball)), abs(f));
}

SampledField maximal_function(const SampledField& f, const RadiiPolicy& policy) {
    const auto& spec = f.spec();
    const auto magnitude = abs(f);
    const auto F = forward_transform(magnitude);
    std::vector<double> best(spec.size());
    for (std::size_t i = 0; i < best.size(); ++i) best[i] = magnitude[i].real();

    for (double r : policy.radii(spec)) {
        std::vector<cplx> ball(spec.size(), cplx{});
        std::size_t count = 0;
        const double limit = r * (1.0 + 1e-12);
        for (std::size_t i = 0; i < ball.size(); ++i) {
            if (spec.radius(i) <= limit) {
                ball[i] = 1.0;
                ++count;
            }
        }
        const double weight = 1.0 / (static_cast<double>(count) * spec.cell_volume());
        for (auto& b : ball) b *= weight;
        auto B = std::move(forward_transform(SampledField(spec, std::move(ball)))).release();
        for (std::size_t i = 0; i < B.size(); ++i) B[i] *= F[i];
        const auto avg = inverse_transform(SpectralField(spec, std::move(B)));
        for (std::size_t i = 0; i < best.size(); ++i) best[i] = std::max(best[i], avg[i].real());
    }
    std::vector<cplx> out(best.begin(), best.end());
    return SampledField(spec, std::move(out));
}

SampledField riesz_potential_spectral(const SampledField& g, double s) {
    const int n = g.spec().dimension();
    if (!(s > 0.0 && s < n)) {
        std::ostringstream os;
        os << "Riesz potential order s=" << s << " outside (0, " << n << ")";
        throw std::invalid_argument(os.str());
    }
    return fractional_derivative(g, -s);
}

double riesz_constant(double s, int dimension) {
    const double n = dimension;
    return std::pow(std::numbers::pi, s - n / 2.0) * std::tgamma((n - s) / 2.0) /
           std::tgamma(s / 2.0);
}

SampledField riesz_kernel(const GridSpec& spec, double s, SingularCell cell) {
    const int n = spec.dimension();
    const double alpha = n - s;
    std::vector<cplx> k(spec.size());
    for (std::size_t i = 0; i < k.size(); ++i) {
        const double r = spec.radius(i);
        k[i] = r > 0.0 ? std::pow(r, -alpha) : 0.0;
    }
    k[origin_index(spec)] = cell == SingularCell::CellAverage ? singular_cell_average(spec, alpha)
                                                              : moment_matched_weight(spec, alpha);
    return SampledField(spec, std::move(k));
}

SampledField riesz_potential_kernel(const SampledField& g, double s, SingularCell cell) {
    const int n = g.spec().dimension();
    if (!(s > 0.0 && s < n)) {
        std::ostringstream os;
        os << "Riesz potential order s=" << s << " outside (0, " << n << ")";
        throw std::invalid_argument(os.str());
    }
    return riesz_constant(s, n) * convolve(riesz_kernel(g.spec(), s, cell), g);
}

double fit_riesz_constant(const SampledField& g, double s, SingularCell cell) {
    const auto spectral = riesz_potential_spectral(g, s);
    const auto raw = convolve(riesz_kernel(g.spec(), s, cell), g);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        num += (std::conj(raw[i]) * spectral[i]).real();
        den += std::norm(raw[i]);
    }
    if (den == 0.0) throw std::domain_error("fit_riesz_constant: kernel route vanished");
    return num / den;
}

// ---------------------------------------------------------------------------

double TruncatedKernelPair::inner_scaled() const { return inner_mass * std::pow(R, -s); }
double TruncatedKernelPair::outer_scaled() const { return outer_mass * std::pow(R, 1.0 - s); }

TruncatedKernelPair build_truncated_kernels(double R, double s, const GridSpec& spec) {
    if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("truncated kernels need 0 < s < 1");
    if (!(R > 0.0)) throw std::invalid_argument("truncated kernels need R > 0");
    const double L = spec.half_width();
    if (4.0 * R > L / 2.0 * (1.0 + 1e-12)) {
        std::ostringstream os;
        os << "truncated kernels: 4R = " << 4.0 * R << " exceeds L/2 = " << L / 2.0;
        throw std::domain_error(os.str());
    }
    const int n = spec.dimension();
    const double cut = 4.0 * R * (1.0 + 1e-12);
    std::vector<cplx> inner(spec.size(), cplx{});
    std::vector<cplx> outer(spec.size(), cplx{});
    for (std::size_t i = 0; i < spec.size(); ++i) {
        const double r = spec.radius(i);
        if (r == 0.0) continue;
        if (r <= cut) {
            inner[i] = std::pow(r, s - n);
        } else if (r < L) {
            outer[i] = std::pow(r, s - n - 1.0);
        }
    }
    inner[origin_index(spec)] = moment_matched_weight(spec, n - s);

    const double dv = spec.cell_volume();
    double m1 = 0.0;
    double m2 = 0.0;
    for (std::size_t i = 0; i < spec.size(); ++i) {
        m1 += inner[i].real() * dv;
        m2 += outer[i].real() * dv;
    }
    const double tail = unit_sphere_area(n) * std::pow(L, s - 1.0) / (1.0 - s);
    return TruncatedKernelPair{R,
                               s,
                               SampledField(spec, std::move(inner)),
                               SampledField(spec, std::move(outer)),
                               m1,
                               m2 + tail,
                               tail};
}

double radial_majorant_check(const SampledField& Phi, const SampledField& g,
                             const RadiiPolicy& policy) {
    require_same_grid(Phi.spec(), g.spec(), "radial_majorant_check");
    const auto& spec = Phi.spec();
    const double peak = Phi.max_abs();
    const double tol = 1e-9 * peak;

    std::vector<std::size_t> order(spec.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<long long> r2(spec.size());
    const int half = spec.samples() / 2;
    for (std::size_t i = 0; i < spec.size(); ++i) {
        const auto idx = spec.unflatten(i);
        long long acc = 0;
        for (int a = 0; a < spec.dimension(); ++a) {
            const long long d = idx[a] - half;
            acc += d * d;
        }
        r2[i] = acc;
    }
    // Ties sorted by increasing value so that any non-radial spread shows up as a rise.
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (r2[a] != r2[b]) return r2[a] < r2[b];
        return Phi[a].real() < Phi[b].real();
    });
    double previous = Phi[order.front()].real();
    for (std::size_t i : order) {
        const double v = Phi[i].real();
        if (std::abs(Phi[i].imag()) > tol || v < -tol) {
            throw std::invalid_argument("radial_majorant_check: kernel must be real and nonnegative");
        }
        if (v > previous + tol) {
            throw std::invalid_argument(
                "radial_majorant_check: kernel is not radial and nonincreasing");
        }
        previous = std::min(previous, v);
    }

    double mass = 0.0;
    for (const auto& v : Phi.values()) mass += v.real();
    mass *= spec.cell_volume();

    const auto smoothed = convolve(Phi, g);
    const auto Mg = maximal_function(g, policy);
    double den_peak = 0.0;
    for (const auto& v : Mg.values()) den_peak = std::max(den_peak, mass * v.real());
    double worst = 0.0;
    for (std::size_t i = 0; i < spec.size(); ++i) {
        const double den = mass * Mg[i].real();
        if (den <= 1e-10 * den_peak) continue;
        worst = std::max(worst, std::abs(smoothed[i]) / den);
    }
    return worst;
}

std::vector<IndexPair> sample_pairs(const GridSpec& spec, const PairSampling& sampling) {
    std::vector<IndexPair> pairs;
    const std::size_t size = spec.size();
    const int N = spec.samples();

    auto shifted = [&](std::size_t i, int axis, int steps) {
        auto idx = spec.unflatten(i);
        idx[axis] += steps;
        return spec.flatten(idx);
    };

    if (sampling.nearest_neighbors) {
        for (std::size_t i = 0; i < size; ++i) {
            for (int a = 0; a < spec.dimension(); ++a) pairs.push_back({i, shifted(i, a, 1)});
        }
    }
    if (sampling.dyadic_offsets) {
        for (int step = 2; step < N / 2; step *= 2) {
            for (std::size_t i = 0; i < size; ++i) {
                for (int a = 0; a < spec.dimension(); ++a) pairs.push_back({i, shifted(i, a, step)});
            }
        }
    }
    std::mt19937_64 rng(sampling.seed);
    std::uniform_int_distribution<std::size_t> pick(0, size - 1);
    for (std::size_t drawn = 0; drawn < sampling.random_pairs;) {
        const std::size_t a = pick(rng);
        const std::size_t b = pick(rng);
        if (a == b) continue;
        pairs.push_back({a, b});
        ++drawn;
    }
    return pairs;
}

double holder_ratio(const SampledField& f, double s, const PairSampling& sampling,
                    const RadiiPolicy& policy) {
    if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("holder_ratio needs 0 < s < 1");
    const auto& spec = f.spec();
    const auto h = fractional_derivative(f, s);
    const auto Mh = maximal_function(h, policy);
    double worst = 0.0;
    for (const auto& [a, b] : sample_pairs(spec, sampling)) {
        const double num = std::abs(f[a] - f[b]);
        if (num == 0.0) continue;
        const double den = std::pow(spec.periodic_distance(a, b), s) * (Mh[a].real() + Mh[b].real());
        if (den <= 0.0) continue;
        worst = std::max(worst, num / den);
    }
    return worst;
}

double lebesgue_holder_profile(const SampledField& f, double s, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("lebesgue_holder_profile needs p >= 1");
    const auto& spec = f.spec();
    double worst = 0.0;
    for (int step = 1; step < spec.samples() / 2; step *= 2) {
        for (int a = 0; a < spec.dimension(); ++a) {
            std::vector<cplx> diff(spec.size());
            for (std::size_t i = 0; i < spec.size(); ++i) {
                auto idx = spec.unflatten(i);
                idx[a] -= step;
                diff[i] = f[i] - f[spec.flatten(idx)];
            }
            const double dist = step * spec.spacing();
            worst = std::max(worst, lp_sum(SampledField(spec, std::move(diff)), p) /
                                        std::pow(dist, s));
        }
    }
    return worst;
}

}  // namespace lplab
