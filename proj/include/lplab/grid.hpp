#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <span>
#include <vector>

namespace lplab {

using cplx = std::complex<double>;
using Point = std::array<double, 3>;
using LatticeIndex = std::array<int, 3>;

/**
 * Periodic box [-L, L)^n sampled with N points per axis.
 *
 * Spacing dx = 2L/N, frequency step dxi = 1/(2L), Nyquist frequency N/(4L).
 */
class GridSpec {
public:
    GridSpec(int dimension, int samples_per_axis, double half_width);

    int dimension() const noexcept { return n_; }
    int samples() const noexcept { return N_; }
    double half_width() const noexcept { return L_; }
    double spacing() const noexcept { return 2.0 * L_ / N_; }
    double frequency_step() const noexcept { return 1.0 / (2.0 * L_); }
    double nyquist() const noexcept { return N_ / (4.0 * L_); }
    double box_length() const noexcept { return 2.0 * L_; }
    /// dx^n, the lattice quadrature weight.
    double cell_volume() const noexcept;
    std::size_t size() const noexcept { return size_; }

    /// Same box with twice the samples per axis.
    GridSpec refined() const { return GridSpec(n_, 2 * N_, L_); }

    LatticeIndex unflatten(std::size_t flat) const noexcept;
    std::size_t flatten(const LatticeIndex& idx) const noexcept;

    /// Physical coordinate of the lattice point (unused axes are 0).
    Point point(std::size_t flat) const noexcept;
    /// Signed integer frequency vector j of coefficient slot `flat` (FFT order).
    LatticeIndex frequency_index(std::size_t flat) const noexcept;
    /// True if any axis sits on the Nyquist index N/2.
    bool is_nyquist(std::size_t flat) const noexcept;
    /// |xi| of coefficient slot `flat`.
    double frequency_radius(std::size_t flat) const noexcept;
    /// Euclidean distance of lattice point `flat` to the origin.
    double radius(std::size_t flat) const noexcept;
    /// Minimum-image distance between two lattice points.
    double periodic_distance(std::size_t a, std::size_t b) const noexcept;

    bool operator==(const GridSpec& other) const noexcept = default;

private:
    int n_;
    int N_;
    double L_;
    std::size_t size_;
};

/// Complex function sampled on a GridSpec lattice. Immutable; all entries finite.
class SampledField {
public:
    SampledField(GridSpec spec, std::vector<cplx> values);

    static SampledField zeros(const GridSpec& spec);
    static SampledField constant(const GridSpec& spec, cplx value);
    static SampledField from_function(const GridSpec& spec,
                                      const std::function<cplx(const Point&)>& fn);

    const GridSpec& spec() const noexcept { return spec_; }
    std::span<const cplx> values() const noexcept { return values_; }
    const cplx& operator[](std::size_t i) const noexcept { return values_[i]; }
    std::size_t size() const noexcept { return values_.size(); }

    /// Moves the samples out; the field is left empty.
    std::vector<cplx> release() && { return std::move(values_); }

    double max_abs() const noexcept;

private:
    GridSpec spec_;
    std::vector<cplx> values_;
};

/// Fourier coefficients on the integer frequency lattice (FFT storage order).
class SpectralField {
public:
    SpectralField(GridSpec spec, std::vector<cplx> coefficients);

    const GridSpec& spec() const noexcept { return spec_; }
    std::span<const cplx> coefficients() const noexcept { return coeffs_; }
    const cplx& operator[](std::size_t i) const noexcept { return coeffs_[i]; }
    std::size_t size() const noexcept { return coeffs_.size(); }

    /// Coefficient at signed frequency vector j (|j_a| <= N/2).
    cplx at(const LatticeIndex& j) const;

    std::vector<cplx> release() && { return std::move(coeffs_); }

private:
    GridSpec spec_;
    std::vector<cplx> coeffs_;
};

/// f^(xi) = integral f(x) exp(-2 pi i x.xi) dx with lattice quadrature weight dx^n.
SpectralField forward_transform(const SampledField& f);
/// Exact lattice inverse of forward_transform.
SampledField inverse_transform(const SpectralField& F);
/// Inverse transform whose target grid must match `expected`.
SampledField inverse_transform(const SpectralField& F, const GridSpec& expected);

/// Sum of samples times dx^n.
cplx quadrature_integral(const SampledField& f);

/// Largest |f| on the periodic seam (any axis index 0 or N-1) relative to max |f|.
/// A positive `shell` widens the seam to the outer shell * L of every axis.
double boundary_ratio(const SampledField& f, double shell = 0.0);
/// Throws std::domain_error if boundary_ratio(f) >= tolerance.
void require_boundary_decay(const SampledField& f, double tolerance = 1e-12);

// Pointwise algebra. Operands must share the same GridSpec.
SampledField operator+(const SampledField& a, const SampledField& b);
SampledField operator-(const SampledField& a, const SampledField& b);
SampledField operator*(cplx scale, const SampledField& a);
/// Collocation product a(x_i) * b(x_i).
SampledField pointwise_product(const SampledField& a, const SampledField& b);
SampledField abs(const SampledField& a);

/// Relative L2 lattice distance |a - b| / |b| (or |a - b| when b vanishes).
double relative_l2_error(const SampledField& a, const SampledField& b);

/// Periodic convolution (h * g)(x) = integral h(y) g(x - y) dy via the transform.
SampledField convolve(const SampledField& h, const SampledField& g);

void require_same_grid(const GridSpec& a, const GridSpec& b, const char* context);

// Field cache files: one JSON header line {"n","N","L","format"} then the samples.
enum class FieldFormat { Binary, Csv };
void save_field(const SampledField& f, const std::filesystem::path& path,
                FieldFormat format = FieldFormat::Binary);
SampledField load_field(const std::filesystem::path& path);

}  // namespace lplab
