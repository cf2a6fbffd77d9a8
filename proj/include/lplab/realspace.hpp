#pragma once

#include "lplab/grid.hpp"

#include <cstdint>
#include <vector>

namespace lplab {

/// Geometric ladder r_i = dx * ratio^i, capped at L/2, standing in for sup over r > 0.
struct RadiiPolicy {
    double ratio = 1.4142135623730951;

    std::vector<double> radii(const GridSpec& spec) const;
};

/// Hardy-Littlewood maximal function over the ladder, clamped below by |f|.
SampledField maximal_function(const SampledField& f, const RadiiPolicy& policy = {});

/// Average of |f| over the lattice ball of radius r around every point.
SampledField ball_average(const SampledField& f, double radius);

/// I_s g with multiplier |xi|^{-s}; 0 < s < n.
SampledField riesz_potential_spectral(const SampledField& g, double s);

/// c_{s,n} in |xi|^{-s} = c_{s,n} (|x|^{s-n})^ for the exp(-2 pi i x.xi) convention.
double riesz_constant(double s, int dimension);

/// Value given to the singular origin cell of |z|^{s-n}.
enum class SingularCell {
    /// Average of the kernel over the ball of volume dx^n (first order).
    CellAverage,
    /// Chosen so the lattice sum against a resolved Gaussian is exact; carries the
    /// lattice zeta correction and converges like a smooth quadrature.
    MomentMatched,
};

/// |z|^{s-n} on the lattice with the origin cell set by `cell`.
SampledField riesz_kernel(const GridSpec& spec, double s,
                          SingularCell cell = SingularCell::MomentMatched);

/// c_{s,n} (|z|^{s-n} * g) by direct kernel convolution.
SampledField riesz_potential_kernel(const SampledField& g, double s,
                                    SingularCell cell = SingularCell::MomentMatched);

/// Least-squares c with riesz_potential_spectral(g) ~ c * (|z|^{s-n} * g).
double fit_riesz_constant(const SampledField& g, double s,
                          SingularCell cell = SingularCell::MomentMatched);

/// Phi1 = |z|^{s-n} 1{|z| <= 4R}, Phi2 = |z|^{s-n-1} 1{|z| > 4R}.
struct TruncatedKernelPair {
    double R;
    double s;
    SampledField inner;
    SampledField outer;  // sampled inside |z| < L; the rest of the tail is added analytically
    double inner_mass;
    double outer_mass;
    double outer_tail_mass;  // analytic part of outer_mass beyond |z| = L

    double inner_scaled() const;  // inner_mass * R^{-s}
    double outer_scaled() const;  // outer_mass * R^{1-s}
};

TruncatedKernelPair build_truncated_kernels(double R, double s, const GridSpec& spec);

/**
 * max over the lattice of |Phi * g| / (|Phi|_1 Mg).
 *
 * Phi must be nonnegative and radially nonincreasing (std::invalid_argument
 * otherwise). Points where |Phi|_1 Mg is below 1e-10 of its peak are skipped.
 */
double radial_majorant_check(const SampledField& Phi, const SampledField& g,
                             const RadiiPolicy& policy = {});

/// Pairs (x, y) probed when estimating Hölder-type suprema.
struct PairSampling {
    std::size_t random_pairs = 100000;
    std::uint64_t seed = 0x5eed;
    bool nearest_neighbors = true;
    /// Axis offsets of 2^q lattice steps for every point (q >= 1, 2^q < N/2).
    bool dyadic_offsets = true;
};

struct IndexPair {
    std::size_t a;
    std::size_t b;
};

std::vector<IndexPair> sample_pairs(const GridSpec& spec, const PairSampling& sampling);

/**
 * sup over sampled pairs of |f(x) - f(y)| / (|x - y|^s (Mh(x) + Mh(y))),
 * h = |D|^s f, with periodic distances. A constant field gives 0.
 */
double holder_ratio(const SampledField& f, double s, const PairSampling& sampling = {},
                    const RadiiPolicy& policy = {});

/// sup over offsets y = 2^q dx e_a of |(f - f(. - y)) / |y|^s|_{L^p}.
double lebesgue_holder_profile(const SampledField& f, double s, double p);

}  // namespace lplab
