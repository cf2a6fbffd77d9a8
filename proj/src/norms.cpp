#include "lplab/norms.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace lplab {

double lp_norm(const SampledField& f, double p) {
    if (!(p >= 1.0)) {
        std::ostringstream os;
        os << "lp_norm: exponent p=" << p << " must be >= 1";
        throw std::invalid_argument(os.str());
    }
    if (std::isinf(p)) return f.max_abs();
    double acc = 0.0;
    if (p == 2.0) {
        for (const auto& v : f.values()) acc += std::norm(v);
        return std::sqrt(acc * f.spec().cell_volume());
    }
    for (const auto& v : f.values()) acc += std::pow(std::abs(v), p);
    return std::pow(acc * f.spec().cell_volume(), 1.0 / p);
}

namespace {

double masked_l2(const SampledField& f, const std::vector<double>& mask) {
    double acc = 0.0;
    for (std::size_t i = 0; i < mask.size(); ++i) {
        if (mask[i] != 0.0) acc += mask[i] * mask[i] * std::norm(f[i]);
    }
    return std::sqrt(acc * f.spec().cell_volume());
}

}  // namespace

DyadicAnnulusDecomposition::DyadicAnnulusDecomposition(const GridSpec& spec,
                                                       const CutoffProfile& cutoff)
    : spec_(spec), cutoff_(cutoff) {
    constexpr double slack = 1e-12;
    m_min_ = static_cast<int>(std::ceil(std::log2(2.0 * spec.spacing()) - slack));
    m_max_ = static_cast<int>(std::floor(std::log2(spec.half_width() / 2.0) + slack));
    if (m_max_ < m_min_) throw std::domain_error("grid too coarse for any dyadic annulus");

    std::vector<double> radius(spec.size());
    for (std::size_t i = 0; i < radius.size(); ++i) radius[i] = spec.radius(i);
    for (int m = m_min_; m <= m_max_; ++m) {
        const double scale = std::ldexp(1.0, -m);
        std::vector<double> mask(spec.size());
        for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = cutoff_.phi(scale * radius[i]);
        masks_.push_back(std::move(mask));
    }
    inner_.assign(spec.size(), 0.0);
    outer_.assign(spec.size(), 0.0);
    const double r_lo = std::ldexp(1.0, m_min_);
    for (std::size_t i = 0; i < radius.size(); ++i) {
        double covered = 0.0;
        for (const auto& mask : masks_) covered += mask[i];
        const double rest = std::max(0.0, 1.0 - covered);
        (radius[i] < r_lo ? inner_ : outer_)[i] = rest;
    }
}

const std::vector<double>& DyadicAnnulusDecomposition::mask(int m) const {
    if (!contains(m)) {
        std::ostringstream os;
        os << "annulus m=" << m << " outside [" << m_min_ << ", " << m_max_
           << "] for this box (L=" << spec_.half_width() << ", dx=" << spec_.spacing() << ")";
        throw std::out_of_range(os.str());
    }
    return masks_[static_cast<std::size_t>(m - m_min_)];
}

SampledField DyadicAnnulusDecomposition::mask_field(int m) const {
    const auto& mk = mask(m);
    return SampledField(spec_, std::vector<cplx>(mk.begin(), mk.end()));
}

double DyadicAnnulusDecomposition::annulus_l2(const SampledField& f, int m) const {
    require_same_grid(f.spec(), spec_, "annulus_l2");
    return masked_l2(f, mask(m));
}

TruncatedSum DyadicAnnulusDecomposition::weighted_sum(const SampledField& f, double w) const {
    require_same_grid(f.spec(), spec_, "weighted annulus sum");
    TruncatedSum out;
    for (int m = m_min_; m <= m_max_; ++m) out.value += std::exp2(m * w) * annulus_l2(f, m);
    out.tail = std::exp2((m_min_ - 1) * w) * masked_l2(f, inner_) +
               std::exp2((m_max_ + 1) * w) * masked_l2(f, outer_);
    return out;
}

double DyadicAnnulusDecomposition::weighted_sup(const SampledField& f, double w) const {
    double best = 0.0;
    for (int m = m_min_; m <= m_max_; ++m) best = std::max(best, std::exp2(m * w) * annulus_l2(f, m));
    return best;
}

int physical_partition_size(const GridSpec& spec) {
    const double corner = spec.half_width() * std::sqrt(static_cast<double>(spec.dimension()));
    int j = 1;
    while (std::ldexp(1.0, j - 1) <= corner) ++j;
    return j + 1;
}

std::vector<SampledField> physical_partition(const GridSpec& spec, int count,
                                             const CutoffProfile& cutoff) {
    if (count < 1) throw std::invalid_argument("physical_partition needs at least one mask");
    std::vector<SampledField> masks;
    for (int j = 0; j < count; ++j) {
        const double scale = std::ldexp(1.0, -j);
        masks.push_back(SampledField::from_function(spec, [&](const Point& p) {
            const double r = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
            return cplx(j == 0 ? cutoff.psi(r) : cutoff.phi(scale * r));
        }));
    }
    return masks;
}

double annulus_l2(const SampledField& f, int m) {
    return DyadicAnnulusDecomposition(f.spec()).annulus_l2(f, m);
}

TruncatedSum y_seminorm(const SampledField& f, double d, int k) {
    const DyadicAnnulusDecomposition annuli(f.spec());
    const auto fk = project_band(f, k);
    auto sum = annuli.weighted_sum(fk, 0.5);
    const double pre = std::exp2(-d * k / 2.0);
    return {pre * sum.value, pre * sum.tail};
}

TruncatedSum y_norm(const SampledField& f, double gamma, double d) {
    const auto range = resolvable_range(f.spec());
    double acc = 0.0;
    double tail = 0.0;
    for (int k = range.k_min; k <= range.k_max; ++k) {
        const auto term = y_seminorm(f, d, k);
        const double w = std::exp2(gamma * k);
        acc += w * w * term.value * term.value;
        tail += w * term.tail;
    }
    return {std::sqrt(acc), tail};
}

BandDecomposition decompose_bands(const SampledField& f, const CutoffProfile& cutoff) {
    const auto& spec = f.spec();
    BandDecomposition out{resolvable_range(spec), {}};
    const auto F = forward_transform(f);
    std::vector<double> radius(spec.size());
    for (std::size_t i = 0; i < radius.size(); ++i) radius[i] = spec.frequency_radius(i);
    for (int k = out.range.k_min; k <= out.range.k_max; ++k) {
        const double scale = std::ldexp(1.0, -k);
        std::vector<cplx> c(spec.size());
        for (std::size_t i = 0; i < c.size(); ++i) {
            c[i] = spec.is_nyquist(i) ? cplx{} : F[i] * cutoff.phi(scale * radius[i]);
        }
        out.bands.push_back(inverse_transform(SpectralField(spec, std::move(c))));
    }
    return out;
}

double y_norm_direct(const SampledField& f, double gamma, double d) {
    const DyadicAnnulusDecomposition annuli(f.spec());
    const auto bands = decompose_bands(f);
    double acc = 0.0;
    for (int k = bands.range.k_min; k <= bands.range.k_max; ++k) {
        const auto& fk = bands.band(k);
        double inner = 0.0;
        for (int m = annuli.m_min(); m <= annuli.m_max(); ++m) {
            inner += std::exp2(gamma * k - d * k / 2.0 + m / 2.0) * annuli.annulus_l2(fk, m);
        }
        acc += inner * inner;
    }
    return std::sqrt(acc);
}

double y_dual_seminorm(const SampledField& f, double d, int k) {
    const DyadicAnnulusDecomposition annuli(f.spec());
    return std::exp2(d * k / 2.0) * annuli.weighted_sup(project_band(f, k), -0.5);
}

double y_dual_norm(const SampledField& f, double gamma, double d) {
    const DyadicAnnulusDecomposition annuli(f.spec());
    const auto bands = decompose_bands(f);
    double acc = 0.0;
    for (int k = bands.range.k_min; k <= bands.range.k_max; ++k) {
        const double term =
            std::exp2(gamma * k + d * k / 2.0) * annuli.weighted_sup(bands.band(k), -0.5);
        acc += term * term;
    }
    return std::sqrt(acc);
}

TruncatedSum weighted_sobolev_sum(const SampledField& f, double gamma, double d) {
    const DyadicAnnulusDecomposition annuli(f.spec());
    return annuli.weighted_sum(fractional_derivative(f, gamma - d / 2.0), 0.5);
}

double lip_s_norm(const SampledField& f, double s) {
    if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("lip_s_norm needs 0 < s < 1");
    const auto bands = decompose_bands(f);
    double best = 0.0;
    for (int k = bands.range.k_min; k <= bands.range.k_max; ++k) {
        best = std::max(best, std::exp2(s * k) * bands.band(k).max_abs());
    }
    return best;
}

double holder_seminorm(const SampledField& f, double s, const PairSampling& sampling) {
    if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("holder_seminorm needs 0 < s < 1");
    const auto& spec = f.spec();
    double best = 0.0;
    for (const auto& [a, b] : sample_pairs(spec, sampling)) {
        const double num = std::abs(f[a] - f[b]);
        if (num == 0.0) continue;
        best = std::max(best, num / std::pow(spec.periodic_distance(a, b), s));
    }
    return best;
}

}  // namespace lplab
