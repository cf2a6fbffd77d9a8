#pragma once

#include "lplab/grid.hpp"

#include <functional>
#include <string>
#include <vector>

namespace lplab {

/**
 * Smooth dyadic cutoff pair.
 *
 * psi(t) = 1 on [0, 1], 0 on [2, inf), and S(2 - t) in between, where
 * S(u) = B(u) / (B(u) + B(1 - u)) with B(u) = exp(-sharpness / u) for u > 0.
 * phi(t) = psi(t) - psi(2t) is supported in [1/2, 2] and the dilates
 * phi(2^-k t) telescope to 1 for every t > 0.
 */
class CutoffProfile {
public:
    explicit CutoffProfile(double sharpness = 1.0);

    double sharpness() const noexcept { return sharpness_; }
    double psi(double t) const noexcept;
    double phi(double t) const noexcept;

private:
    double sharpness_;
};

CutoffProfile build_cutoff(double sharpness);
/// The profile used when callers do not pass one.
const CutoffProfile& default_cutoff();

/// Dyadic scales whose bands stay clear of xi = 0 and the Nyquist frequency.
struct ResolvableRange {
    int k_min;
    int k_max;
    bool contains(int k) const noexcept { return k >= k_min && k <= k_max; }
};

ResolvableRange resolvable_range(const GridSpec& spec);

/// Scale k with an optional half-width for windows f_{k-N<.<k+N}.
struct BandIndex {
    int k = 0;
    int width = 1;
};

/// Throws std::out_of_range with the grid's range when k is not resolvable.
void require_resolvable(const GridSpec& spec, int k, const char* context);

/// Multiplies the spectrum by m(|xi|); Nyquist modes are zeroed.
SampledField apply_radial_multiplier(const SampledField& f,
                                     const std::function<double(double)>& multiplier);

// Littlewood-Paley family. All take the cutoff by reference, default_cutoff() otherwise.
SampledField project_band(const SampledField& f, int k,
                          const CutoffProfile& cutoff = default_cutoff());
SampledField project_below(const SampledField& f, int k,
                           const CutoffProfile& cutoff = default_cutoff());
/// phi(2^-k xi) |2^-k xi|^s, so that |D|^s P_k = 2^{ks} tilde-P_k.
SampledField project_tilde(const SampledField& f, int k, double s,
                           const CutoffProfile& cutoff = default_cutoff());
/// psi(2^-(k+N-1) xi) - psi(2^-(k-N) xi), i.e. P_{<k+N} - P_{<=k-N}.
SampledField project_range(const SampledField& f, BandIndex band,
                           const CutoffProfile& cutoff = default_cutoff());

enum class MeanPolicy { Excise, Strict };

/// |D|^s with multiplier |xi|^s. For s < 0 the zero mode is dropped (Excise) or,
/// under Strict, must already be negligible.
SampledField fractional_derivative(const SampledField& f, double s,
                                   MeanPolicy policy = MeanPolicy::Excise);

/// Real kernel 2^{nk} phi^(2^k y) of P_k sampled on the grid. Rejected when its
/// largest value in the outer eighth of the box exceeds boundary_tolerance * peak.
SampledField lp_kernel(int k, const GridSpec& spec, const CutoffProfile& cutoff = default_cutoff(),
                       double boundary_tolerance = 1e-4);

/// 2^{nk} P(2^k x) for k >= 0, by lattice lookup (exact: 2^k x_i is a lattice point).
SampledField dilate_kernel(const SampledField& P, int k);

struct AnnulusMass {
    int j;
    double mass;      // integral of |P| over 2^{j-1} <= |x| <= 2^j
    double weighted;  // mass * 2^{j(eps+s)}
};

struct KernelHypothesisResult {
    double unit_ball_mass = 0.0;
    std::vector<AnnulusMass> annuli;
    std::vector<int> omitted;  // annuli leaving the box
    double constant = 0.0;     // C0 = max(m0, max_j weighted_j)
    double tail_slope = 0.0;   // least-squares slope of log2(weighted_j) over the tail
    int tail_points = 0;
    bool decayed_to_floor = false;  // masses reached round-off before the box edge
    bool pass = false;
};

/**
 * Annulus-mass test for kernels that should satisfy
 *   int_{2^{j-1} <= |x| <= 2^j} |P| <= C 2^{-j(eps + s)},  int_{|x| <= 1} |P| <= C.
 *
 * The weighted masses must not grow across the outer half of the available
 * annuli (tail slope <= slope_tolerance); masses below a round-off floor count
 * as decayed.
 */
KernelHypothesisResult verify_kernel_hypothesis(const SampledField& P, double s, double eps,
                                                double slope_tolerance = 0.0);

}  // namespace lplab
