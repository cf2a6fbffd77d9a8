#include "support.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <doctest.h>

#include <filesystem>

using namespace lplab;
using namespace lplab::testing;

TEST_CASE("grid spec invariants") {
    const GridSpec spec(1, 1024, 16.0);
    CHECK(spec.spacing() == doctest::Approx(1.0 / 32));
    CHECK(spec.frequency_step() == doctest::Approx(1.0 / 32));
    CHECK(spec.nyquist() == doctest::Approx(16.0));
    CHECK(spec.size() == 1024);
    CHECK(GridSpec(2, 256, 12.0).size() == 65536);

    CHECK_THROWS_AS(GridSpec(0, 64, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(GridSpec(4, 16, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(GridSpec(1, 8, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(GridSpec(1, 96, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(GridSpec(1, 64, -1.0), std::invalid_argument);
}

TEST_CASE("sampled field validation") {
    const GridSpec spec(1, 16, 1.0);
    CHECK_THROWS_AS(SampledField(spec, std::vector<cplx>(15)), std::invalid_argument);
    std::vector<cplx> v(16);
    v[3] = std::nan("");
    CHECK_THROWS_AS(SampledField(spec, v), std::domain_error);
    v[3] = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(SampledField(spec, v), std::domain_error);
}

TEST_CASE("lattice coordinates") {
    const GridSpec spec(2, 16, 2.0);
    const auto p = spec.point(spec.flatten({8, 3, 0}));
    CHECK(p[0] == doctest::Approx(0.0));
    CHECK(p[1] == doctest::Approx(-2.0 + 3 * 0.25));
    CHECK(spec.frequency_index(spec.flatten({-1, 2, 0}))[0] == -1);
    CHECK(spec.is_nyquist(spec.flatten({8, 0, 0})));
    CHECK(spec.periodic_distance(spec.flatten({0, 0, 0}), spec.flatten({15, 0, 0})) ==
          doctest::Approx(0.25));
}

TEST_CASE("round trip and Parseval") {
    for (const auto& spec : {GridSpec(1, 1024, 16.0), GridSpec(2, 128, 6.0), GridSpec(3, 32, 4.0)}) {
        const auto f = random_smooth(spec, 7);
        const auto F = forward_transform(f);
        CHECK(relative_l2_error(inverse_transform(F), f) < 1e-12);

        double phys = 0.0, freq = 0.0;
        for (const auto& v : f.values()) phys += std::norm(v);
        for (const auto& c : F.coefficients()) freq += std::norm(c);
        phys *= spec.cell_volume();
        freq *= std::pow(spec.frequency_step(), spec.dimension());
        CHECK(std::abs(phys - freq) / phys < 1e-12);
    }
}

TEST_CASE("Gaussian transform matches quadrature of the defining integral") {
    const GridSpec spec(1, 512, 8.0);
    const double w = 1.3;
    const auto F = forward_transform(gaussian(spec, w, 0.5));
    using integrator = boost::math::quadrature::gauss_kronrod<double, 61>;
    for (int j : {0, 1, 3, 7, 20}) {
        const double xi = j * spec.frequency_step();
        auto re = [&](double x) {
            return std::exp(-std::numbers::pi * (x - 0.5) * (x - 0.5) / (w * w)) *
                   std::cos(2 * std::numbers::pi * x * xi);
        };
        auto im = [&](double x) {
            return -std::exp(-std::numbers::pi * (x - 0.5) * (x - 0.5) / (w * w)) *
                   std::sin(2 * std::numbers::pi * x * xi);
        };
        const cplx expect(integrator::integrate(re, -12.0, 12.0, 15, 1e-15),
                          integrator::integrate(im, -12.0, 12.0, 15, 1e-15));
        CHECK(std::abs(F.at({j, 0, 0}) - expect) < 1e-12);
    }
}

TEST_CASE("translation becomes a phase") {
    const GridSpec spec(1, 256, 8.0);
    const int shift = 5;
    const double a = shift * spec.spacing();
    const auto f = gaussian(spec, 1.0);
    const auto g = gaussian(spec, 1.0, a);
    const auto F = forward_transform(f);
    const auto G = forward_transform(g);
    for (std::size_t i = 0; i < F.size(); ++i) {
        const double xi = spec.frequency_index(i)[0] * spec.frequency_step();
        CHECK(std::abs(G[i] - F[i] * std::polar(1.0, -2 * std::numbers::pi * a * xi)) < 1e-12);
    }
}

TEST_CASE("quadrature of a Gaussian") {
    const GridSpec spec(2, 128, 6.0);
    CHECK(std::abs(quadrature_integral(gaussian(spec, 1.5)) - cplx(2.25)) < 1e-12);
}

TEST_CASE("spectral convolution equals the direct lattice sum") {
    const GridSpec spec(1, 128, 8.0);
    const auto h = gaussian(spec, 0.7, 0.3);
    const auto g = gaussian(spec, 1.1, -0.4, 0.5);
    const auto c = convolve(h, g);
    const int N = spec.samples();
    for (int i = 0; i < N; i += 5) {
        cplx acc = 0.0;
        for (int j = 0; j < N; ++j) {
            // x_i - x_j + (-L) indexes the kernel at lattice offset i - j + N/2
            const int idx = ((i - j + N / 2) % N + N) % N;
            acc += h[static_cast<std::size_t>(idx)] * g[static_cast<std::size_t>(j)];
        }
        acc *= spec.spacing();
        CHECK(std::abs(c[static_cast<std::size_t>(i)] - acc) < 1e-12);
    }
}

TEST_CASE("boundary decay validation") {
    const GridSpec spec(1, 256, 4.0);
    CHECK_NOTHROW(require_boundary_decay(gaussian(spec, 1.0)));
    CHECK_THROWS_AS(require_boundary_decay(gaussian(spec, 3.0)), std::domain_error);
    CHECK(boundary_ratio(SampledField::constant(spec, 1.0)) == doctest::Approx(1.0));
}

TEST_CASE("grid mismatch is rejected") {
    const auto f = gaussian(GridSpec(1, 64, 4.0));
    CHECK_THROWS_AS(inverse_transform(forward_transform(f), GridSpec(1, 128, 4.0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(f + gaussian(GridSpec(1, 64, 5.0)), std::invalid_argument);
}

TEST_CASE("field serialization is bit exact") {
    const auto dir = std::filesystem::temp_directory_path() / "lplab_grid_test";
    std::filesystem::create_directories(dir);
    const auto f = random_smooth(GridSpec(2, 32, 3.0), 3) + cplx(0, 1) * gaussian(GridSpec(2, 32, 3.0));
    for (auto fmt : {FieldFormat::Binary, FieldFormat::Csv}) {
        const auto path = dir / (fmt == FieldFormat::Binary ? "f.bin" : "f.csv");
        save_field(f, path, fmt);
        const auto g = load_field(path);
        CHECK(g.spec() == f.spec());
        bool same = true;
        for (std::size_t i = 0; i < f.size(); ++i) same = same && f[i] == g[i];
        CHECK(same);
    }
    std::filesystem::remove_all(dir);
}
