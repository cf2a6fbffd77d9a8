#include "support.hpp"

#include "lplab/norms.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/zeta.hpp>
#include <doctest.h>

using namespace lplab;
using namespace lplab::testing;

namespace {

// Sum of lattice-aligned plane waves with random amplitudes at the given frequency indices.
SampledField plane_waves(const GridSpec& spec, const std::vector<int>& modes, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    std::vector<cplx> c(spec.size());
    for (int j : modes) c[spec.flatten({j, 0, 0})] = cplx(normal(rng), normal(rng));
    return inverse_transform(SpectralField(spec, std::move(c)));
}

}  // namespace

TEST_CASE("cutoff profile") {
    const auto& c = default_cutoff();
    CHECK(c.psi(0.0) == 1.0);
    CHECK(c.psi(0.5) == 1.0);
    CHECK(c.psi(1.0) == 1.0);
    CHECK(c.psi(2.0) == 0.0);
    CHECK(c.psi(7.0) == 0.0);
    CHECK(c.phi(1.0) == 1.0);
    CHECK(c.phi(0.49) == 0.0);
    CHECK(c.phi(2.01) == 0.0);
    double prev = 1.0;
    for (double t = 1.05; t < 1.96; t += 0.01) {  // closer to the ends S rounds to 0 or 1
        CHECK(c.psi(t) < prev);
        prev = c.psi(t);
    }
    for (double t : {1.3, 0.017, 123.4, 1e-4}) {
        double sum = 0.0;
        for (int k = -20; k <= 20; ++k) sum += c.phi(std::ldexp(t, -k));
        CHECK(std::abs(sum - 1.0) < 1e-12);
    }
    CHECK_THROWS_AS(build_cutoff(0.0), std::invalid_argument);
    CHECK_THROWS_AS(build_cutoff(-1.0), std::invalid_argument);
    CHECK(build_cutoff(0.5).psi(1.3) != c.psi(1.3));
}

TEST_CASE("resolvable range") {
    const GridSpec spec(1, 1024, 16.0);
    const auto r = resolvable_range(spec);
    CHECK(r.k_min == -3);  // 4 dxi = 1/8
    CHECK(r.k_max == 2);   // Nyquist/4 = 4
    CHECK_THROWS_AS(project_band(gaussian(spec), 3), std::out_of_range);
    CHECK_THROWS_AS(project_band(gaussian(spec), -4), std::out_of_range);
}

TEST_CASE("partition of unity on the frequency lattice") {
    for (const auto& spec : {GridSpec(1, 1024, 16.0), GridSpec(2, 256, 12.0)}) {
        const auto r = resolvable_range(spec);
        const auto& c = default_cutoff();
        for (std::size_t i = 0; i < spec.size(); ++i) {
            const double xi = spec.frequency_radius(i);
            // the finite sum telescopes to psi(2^-k_max xi) - psi(2^-(k_min-1) xi)
            if (xi < std::ldexp(1.0, r.k_min) || xi > std::ldexp(1.0, r.k_max)) continue;
            double sum = 0.0;
            for (int k = r.k_min; k <= r.k_max; ++k) sum += c.phi(std::ldexp(xi, -k));
            CHECK(std::abs(sum - 1.0) < 1e-10);
        }
    }
}

TEST_CASE("projections on simple inputs") {
    const GridSpec spec(1, 1024, 16.0);
    const auto one = SampledField::constant(spec, 1.0);
    for (int k = -3; k <= 2; ++k) {
        CHECK(project_band(one, k).max_abs() < 1e-14);
        CHECK(max_diff(project_below(one, k), one) < 1e-14);
        CHECK(project_tilde(one, k, 0.5).max_abs() < 1e-14);
        // exp(2 pi i 2^k x) sits on the lattice since 2^k is a multiple of dxi
        const int j = static_cast<int>(std::ldexp(32.0, k));
        const auto wave = plane_waves(spec, {j}, 1);
        CHECK(relative_l2_error(project_band(wave, k), wave) < 1e-12);
        CHECK(relative_l2_error(project_tilde(wave, k, 0.0), project_band(wave, k)) < 1e-14);
    }
}

TEST_CASE("band sum reconstructs mean-free fields") {
    const GridSpec spec(1, 1024, 16.0);
    // |xi| from 2^{k_min} = 4 dxi to 2^{k_max} = 128 dxi
    std::vector<int> modes;
    for (int j = 4; j <= 128; j += 3) modes.push_back(j);
    const auto f = plane_waves(spec, modes, 2);
    auto sum = SampledField::zeros(spec);
    for (int k = -3; k <= 2; ++k) sum = sum + project_band(f, k);
    CHECK(relative_l2_error(sum, f) < 1e-10);
}

TEST_CASE("project_below against a direct multiplier sum") {
    const GridSpec spec(1, 1024, 16.0);
    const auto f = random_smooth(spec, 11, 3.0);
    const auto& c = default_cutoff();
    for (int k = -3; k <= 2; ++k) {
        // psi(2^-k t) = phi(2^-k t) + ... + phi(2^-l0 t) + psi(2^-(l0-1) t), l0 = -10 leaves
        // only the zero mode in the last term on this lattice
        const auto oracle = apply_radial_multiplier(f, [&](double t) {
            double m = c.psi(std::ldexp(t, 11));
            for (int l = -10; l <= k; ++l) m += c.phi(std::ldexp(t, -l));
            return m;
        });
        CHECK(relative_l2_error(project_below(f, k), oracle) < 1e-10);
    }
}

TEST_CASE("adjacent-band orthogonality") {
    const GridSpec spec(2, 128, 6.0);
    const auto f = random_smooth(spec, 4, 4.0);
    const auto r = resolvable_range(spec);
    for (int k = r.k_min; k <= r.k_max; ++k) {
        for (int l = r.k_min; l <= r.k_max; ++l) {
            if (std::abs(k - l) < 2) continue;
            CHECK(project_band(project_band(f, l), k).max_abs() < 1e-12 * f.max_abs());
        }
    }
}

TEST_CASE("scaling identity D^s P_k = 2^{ks} P~_k") {
    for (const auto& spec : {GridSpec(1, 1024, 16.0), GridSpec(2, 256, 12.0)}) {
        const auto f = random_smooth(spec, 5, 3.0);
        const auto r = resolvable_range(spec);
        for (double s : {0.25, 0.5, 0.75, 1.0}) {
            for (int k = r.k_min; k <= r.k_max; ++k) {
                const auto lhs = fractional_derivative(project_band(f, k), s);
                const auto rhs = cplx(std::exp2(k * s)) * project_tilde(f, k, s);
                CHECK(relative_l2_error(lhs, rhs) < 1e-12);
            }
        }
    }
}

TEST_CASE("fractional derivative") {
    const GridSpec spec(1, 1024, 16.0);
    const int j = 40;
    const double xi0 = j * spec.frequency_step();
    const auto wave = plane_waves(spec, {j}, 3);
    CHECK(relative_l2_error(fractional_derivative(wave, 0.7), cplx(std::pow(xi0, 0.7)) * wave) < 1e-13);
    CHECK(relative_l2_error(fractional_derivative(wave, -0.4), cplx(std::pow(xi0, -0.4)) * wave) <
          1e-13);

    // (|D|^s e^{-pi x^2})(0) = 2 int_0^inf xi^s e^{-pi xi^2} dxi. The lattice sum over
    // xi = j h differs from the integral by the generalized Euler-Maclaurin terms
    // 2 zeta(-s) h^{1+s} - 2 pi zeta(-s-2) h^{3+s} + O(h^{5+s}) of the |xi|^s cusp.
    const double s = 0.5;
    boost::math::quadrature::exp_sinh<double> integrator;
    const double integral =
        2.0 * integrator.integrate([&](double t) { return std::pow(t, s) * std::exp(-M_PI * t * t); });
    const double h = spec.frequency_step();
    const double cusp = 2.0 * boost::math::zeta(-s) * std::pow(h, 1.0 + s) -
                        2.0 * M_PI * boost::math::zeta(-s - 2.0) * std::pow(h, 3.0 + s);
    const auto d = fractional_derivative(gaussian(spec), s);
    const double at_origin = d[spec.flatten({512, 0, 0})].real();
    CHECK(std::abs(at_origin - integral) < 3e-3);
    CHECK(std::abs(at_origin - (integral + cusp)) < 1e-9);
    const GridSpec wide(1, 8192, 128.0);
    const double h_wide = wide.frequency_step();
    CHECK(std::abs(fractional_derivative(gaussian(wide), s)[wide.flatten({4096, 0, 0})].real() - integral) <
          1.1 * 2.0 * std::abs(boost::math::zeta(-s)) * std::pow(h_wide, 1.0 + s));

    const auto g = gaussian(spec);
    CHECK_NOTHROW(fractional_derivative(g, -0.5));
    CHECK_THROWS_AS(fractional_derivative(g, -0.5, MeanPolicy::Strict), std::domain_error);
    CHECK_NOTHROW(fractional_derivative(project_band(g, 0), -0.5, MeanPolicy::Strict));
    CHECK(relative_l2_error(fractional_derivative(g, 0.0), g) < 1e-14);
}

TEST_CASE("band windows") {
    const GridSpec spec(1, 1024, 16.0);
    const auto f = plane_waves(spec, {28, 30, 33, 40}, 9);  // |xi| in [0.875, 1.25]
    CHECK(relative_l2_error(project_range(f, {0, 2}), f) < 1e-10);
    const auto far = plane_waves(spec, {250}, 9);  // |xi| ~ 7.8
    CHECK(project_range(far, {-2, 1}).max_abs() < 1e-12 * far.max_abs());

    const auto g = random_smooth(spec, 8, 3.0);
    const auto whole = project_range(g, {0, 12});
    const auto mean_free = apply_radial_multiplier(g, [](double t) { return t == 0.0 ? 0.0 : 1.0; });
    CHECK(relative_l2_error(whole, mean_free) < 1e-10);
    CHECK_THROWS_AS(project_range(g, {0, 0}), std::invalid_argument);
}

TEST_CASE("multipliers commute") {
    const GridSpec spec(1, 512, 8.0);
    const auto f = random_smooth(spec, 12, 3.0);
    const auto a = fractional_derivative(project_band(project_below(f, 1), 0), 0.3);
    const auto b = project_below(project_band(fractional_derivative(f, 0.3), 0), 1);
    CHECK(relative_l2_error(a, b) < 1e-12);
}

TEST_CASE("Littlewood-Paley kernel") {
    const GridSpec spec(1, 1024, 16.0);
    const auto K = lp_kernel(0, spec);
    CHECK(std::abs(quadrature_integral(K)) < 1e-10);
    double asym = 0.0;
    const int N = spec.samples();
    for (int i = 1; i < N; ++i) {
        asym = std::max(asym, std::abs(K[static_cast<std::size_t>(i)] - K[static_cast<std::size_t>(N - i)]));
    }
    CHECK(asym <= 1e-12 * K.max_abs());
    const auto g = random_smooth(spec, 6, 3.0);
    CHECK(relative_l2_error(convolve(K, g), project_band(g, 0)) < 1e-10);

    // coarse box cannot hold the kernel tail
    CHECK_THROWS_AS(lp_kernel(-3, GridSpec(1, 64, 16.0)), std::domain_error);
}

TEST_CASE("dilated kernels") {
    const GridSpec spec(1, 8192, 16.0);
    const auto K0 = lp_kernel(0, spec);
    for (int k = 1; k <= 3; ++k) {
        // the two differ only by how the slowly decaying tail wraps around the box
        CHECK(relative_l2_error(dilate_kernel(K0, k), lp_kernel(k, spec)) < 1e-4);
    }
    CHECK_THROWS_AS(dilate_kernel(K0, -1), std::invalid_argument);
}

TEST_CASE("kernel hypothesis") {
    const GridSpec spec(1, 8192, 256.0);
    SUBCASE("Schwartz kernel") {
        const auto K = lp_kernel(0, spec);
        for (double s : {0.25, 0.5, 0.75}) {
            for (double eps : {0.1, 0.5, 1.0}) {
                const auto res = verify_kernel_hypothesis(K, s, eps);
                CHECK(res.pass);
                CHECK(std::isfinite(res.constant));
            }
        }
    }
    SUBCASE("compact support") {
        const auto P = SampledField::from_function(spec, [](const Point& p) {
            const double r = std::abs(p[0]);
            return cplx(r <= 1.0 && r > 0.0 ? std::pow(r, -0.9) : 0.0);
        });
        const auto res = verify_kernel_hypothesis(P, 0.5, 0.5);
        CHECK(res.pass);
        for (const auto& a : res.annuli) CHECK(a.mass == 0.0);
        CHECK(res.unit_ball_mass > 0.0);
    }
    SUBCASE("power tail") {
        const auto P = SampledField::from_function(
            spec, [](const Point& p) { return cplx(std::pow(1.0 + std::abs(p[0]), -1.3)); });
        const auto ok = verify_kernel_hypothesis(P, 0.2, 0.05);
        const auto bad = verify_kernel_hypothesis(P, 0.2, 0.2);
        CHECK(ok.pass);
        CHECK_FALSE(bad.pass);
        CHECK(bad.tail_slope > 0.0);
        // two half-line pieces of int (1+r)^{-1.3} over (2^{j-1}, 2^j]
        for (const auto& a : ok.annuli) {
            const double exact = (2.0 / 0.3) * (std::pow(1.0 + std::ldexp(1.0, a.j - 1), -0.3) -
                                                std::pow(1.0 + std::ldexp(1.0, a.j), -0.3));
            CHECK(std::abs(a.mass - exact) / exact < 0.05);
        }
        CHECK(ok.omitted.empty());
        CHECK_FALSE(verify_kernel_hypothesis(P, 0.2, 0.2).pass);
    }
    CHECK_THROWS_AS(verify_kernel_hypothesis(lp_kernel(0, spec), 1.2, 0.5), std::invalid_argument);
}
