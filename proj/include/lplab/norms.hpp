#pragma once

#include "lplab/dyadic.hpp"
#include "lplab/grid.hpp"
#include "lplab/realspace.hpp"

#include <limits>
#include <vector>

namespace lplab {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// (integral |f|^p)^{1/p} by lattice quadrature; p = inf gives the lattice max.
double lp_norm(const SampledField& f, double p);

/// Value of a truncated dyadic sum together with an estimate of what was cut off.
struct TruncatedSum {
    double value = 0.0;
    double tail = 0.0;
};

/**
 * Physical-space dyadic masks chi_m(x) = phi(2^-m |x|) for m in [m_min, m_max],
 * with m_min = ceil(log2(2 dx)) and m_max = floor(log2(L/2)).
 */
class DyadicAnnulusDecomposition {
public:
    explicit DyadicAnnulusDecomposition(const GridSpec& spec,
                                        const CutoffProfile& cutoff = default_cutoff());

    const GridSpec& spec() const noexcept { return spec_; }
    int m_min() const noexcept { return m_min_; }
    int m_max() const noexcept { return m_max_; }
    bool contains(int m) const noexcept { return m >= m_min_ && m <= m_max_; }

    /// Mask samples for annulus m (must lie in range).
    const std::vector<double>& mask(int m) const;
    SampledField mask_field(int m) const;

    /// Weight of each lattice point not covered by the masks (1 - sum_m chi_m),
    /// split into the part inside 2^{m_min} and the part outside 2^{m_max}.
    const std::vector<double>& uncovered_inner() const noexcept { return inner_; }
    const std::vector<double>& uncovered_outer() const noexcept { return outer_; }

    /// |chi_m f|_2.
    double annulus_l2(const SampledField& f, int m) const;
    /// sum_m 2^{m w} |chi_m f|_2 with the uncovered-region tail.
    TruncatedSum weighted_sum(const SampledField& f, double w) const;
    /// sup_m 2^{m w} |chi_m f|_2.
    double weighted_sup(const SampledField& f, double w) const;

private:
    GridSpec spec_;
    CutoffProfile cutoff_;
    int m_min_;
    int m_max_;
    std::vector<std::vector<double>> masks_;
    std::vector<double> inner_;
    std::vector<double> outer_;
};

/// Physical masks chi_0 = psi(|x|), chi_j = phi(2^-j |x|) for j = 1..count-1.
std::vector<SampledField> physical_partition(const GridSpec& spec, int count,
                                             const CutoffProfile& cutoff = default_cutoff());
/// Enough physical masks to cover the whole box including its corners.
int physical_partition_size(const GridSpec& spec);

double annulus_l2(const SampledField& f, int m);

/// |f|_{Y_{d,k}} = 2^{-dk/2} sum_m 2^{m/2} |chi_m P_k f|_2 (not a faithful norm).
TruncatedSum y_seminorm(const SampledField& f, double d, int k);
/// (sum_k 2^{2 gamma k} |f|_{Y_{d,k}}^2)^{1/2} over the resolvable k range.
TruncatedSum y_norm(const SampledField& f, double gamma, double d);
/// Same number as y_norm, evaluated from one band decomposition as a double sum.
double y_norm_direct(const SampledField& f, double gamma, double d);

/// 2^{dk/2} sup_m 2^{-m/2} |chi_m P_k f|_2.
double y_dual_seminorm(const SampledField& f, double d, int k);
/// (sum_k 2^{2 gamma k} |f|_{Y'_{d,k}}^2)^{1/2}.
double y_dual_norm(const SampledField& f, double gamma, double d);

/// sum_m 2^{m/2} |chi_m D^{gamma - d/2} f|_2.
TruncatedSum weighted_sobolev_sum(const SampledField& f, double gamma, double d);

/// sup_k 2^{sk} |P_k f|_inf over the resolvable range.
double lip_s_norm(const SampledField& f, double s);

/// Sampled sup of |f(x) - f(y)| / |x - y|^s.
double holder_seminorm(const SampledField& f, double s, const PairSampling& sampling = {});

/// All P_k f for the resolvable range from a single forward transform.
struct BandDecomposition {
    ResolvableRange range;
    std::vector<SampledField> bands;  // bands[k - range.k_min]

    const SampledField& band(int k) const { return bands.at(static_cast<std::size_t>(k - range.k_min)); }
};

BandDecomposition decompose_bands(const SampledField& f, const CutoffProfile& cutoff = default_cutoff());

}  // namespace lplab
