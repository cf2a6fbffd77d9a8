#pragma once

#include "lplab/dyadic.hpp"
#include "lplab/grid.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace lplab::testing {

inline SampledField gaussian(const GridSpec& spec, double width = 1.0, double center = 0.0,
                             double modulation = 0.0) {
    return SampledField::from_function(spec, [=](const Point& p) {
        double r2 = 0.0;
        for (int a = 0; a < spec.dimension(); ++a) {
            const double y = p[a] - (a == 0 ? center : 0.0);
            r2 += y * y;
        }
        const double phase = 2.0 * std::numbers::pi * modulation * p[0];
        return cplx(std::exp(-std::numbers::pi * r2 / (width * width)) * std::cos(phase));
    });
}

/// Smooth random field: white noise in frequency under a Gaussian envelope, real part.
inline SampledField random_smooth(const GridSpec& spec, unsigned seed, double bandwidth = 2.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    std::vector<cplx> c(spec.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        const double r = spec.frequency_radius(i);
        c[i] = cplx(normal(rng), normal(rng)) * std::exp(-r * r / (bandwidth * bandwidth));
    }
    auto f = inverse_transform(SpectralField(spec, std::move(c)));
    std::vector<cplx> re(f.size());
    for (std::size_t i = 0; i < re.size(); ++i) re[i] = f[i].real();
    // taper so the field is negligible at the seam
    const double L = spec.half_width();
    auto taper = SampledField::from_function(spec, [=](const Point& p) {
        double r2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
        return cplx(std::exp(-std::numbers::pi * r2 / (0.04 * L * L)));
    });
    return pointwise_product(SampledField(spec, std::move(re)), taper);
}

inline double max_diff(const SampledField& a, const SampledField& b) { return (a - b).max_abs(); }

inline double l2(const SampledField& f) {
    double acc = 0.0;
    for (const auto& v : f.values()) acc += std::norm(v);
    return std::sqrt(acc * f.spec().cell_volume());
}

}  // namespace lplab::testing
