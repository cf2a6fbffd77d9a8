#pragma once

#include "lplab/dyadic.hpp"
#include "lplab/grid.hpp"

#include <vector>

namespace lplab {

/// Relative spectral energy a product may leave outside the grid before the
/// de-aliased product is refused.
struct AliasingGuard {
    double tolerance = 1e-20;
};

/**
 * f * g formed on a 2x zero-padded spectrum and truncated back to the grid.
 * Throws std::domain_error, with the product's spectral extent, when more than
 * `guard.tolerance` of the product energy falls beyond the grid's Nyquist box.
 */
SampledField dealiased_product(const SampledField& f, const SampledField& g,
                               const AliasingGuard& guard = {});

/// Share of the de-aliased product's energy beyond the grid (0 for band-safe pairs).
double aliasing_fraction(const SampledField& f, const SampledField& g);

/// [P_k, f] g = P_k(f g) - f P_k g.
SampledField lp_commutator(const SampledField& f, const SampledField& g, int k,
                           const AliasingGuard& guard = {});

/// f (h * g) - h * (f g), i.e. integral h(y) (f(x) - f(x - y)) g(x - y) dy.
SampledField kernel_commutator(const SampledField& h, const SampledField& f,
                               const SampledField& g, const AliasingGuard& guard = {});

/// Radius of the smallest origin-centred ball outside which |h| <= threshold * max|h|.
double support_radius(const SampledField& h, double threshold = 1e-14);

/// Q_j = P chi_j with chi_0 = psi(|x|), chi_j = phi(2^-j |x|); enough j to cover the box.
std::vector<SampledField> annulus_decompose_kernel(const SampledField& P,
                                                   const CutoffProfile& cutoff = default_cutoff());

/**
 * [P~_k, chi_m] g split by the frequency of g relative to 2^k:
 * high_low  from P_{<=k-N} g (mean included),
 * mid       from g_{k-N<.<k+N},
 * high_high from the remainder, whose frequencies start at 2^{k+N-1}.
 */
struct InteractionSplit {
    int k;
    int m;
    int band_width;
    double s;
    SampledField high_low;
    SampledField mid;
    SampledField high_high;

    SampledField total() const { return high_low + mid + high_high; }
};

/// [P~_k, chi] g with a pointwise mask chi.
SampledField mask_commutator(const SampledField& g, const SampledField& mask, int k, double s,
                             const CutoffProfile& cutoff = default_cutoff());

InteractionSplit interaction_split(const SampledField& g, int k, int m, int band_width = 3,
                                   double s = 0.0, const CutoffProfile& cutoff = default_cutoff());

}  // namespace lplab
