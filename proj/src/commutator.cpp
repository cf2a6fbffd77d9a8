#include "lplab/commutator.hpp"

#include "lplab/norms.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace lplab {

namespace {

struct PaddedProduct {
    SpectralField spectrum;  // truncated to the original grid
    double outside_fraction;
    double extent;  // largest |xi| carrying energy above the guard level
};

// Copies coefficients of `F` into the spectrum of the padded grid, dropping the
// Nyquist slots (every multiplier zeroes them anyway).
SampledField pad(const SpectralField& F, const GridSpec& big) {
    const auto& spec = F.spec();
    std::vector<cplx> c(big.size());
    for (std::size_t i = 0; i < F.size(); ++i) {
        if (spec.is_nyquist(i)) continue;
        c[big.flatten(spec.frequency_index(i))] = F[i];
    }
    return inverse_transform(SpectralField(big, std::move(c)));
}

PaddedProduct padded_product(const SampledField& f, const SampledField& g, double level) {
    require_same_grid(f.spec(), g.spec(), "dealiased product");
    const auto& spec = f.spec();
    const GridSpec big = spec.refined();
    const auto fb = pad(forward_transform(f), big);
    const auto gb = pad(forward_transform(g), big);
    const auto P = forward_transform(pointwise_product(fb, gb));

    const int half = spec.samples() / 2;
    double total = 0.0;
    double outside = 0.0;
    for (std::size_t i = 0; i < P.size(); ++i) total += std::norm(P[i]);
    std::vector<cplx> c(spec.size());
    double extent = 0.0;
    for (std::size_t i = 0; i < P.size(); ++i) {
        const auto j = big.frequency_index(i);
        bool inside = true;
        for (int a = 0; a < spec.dimension(); ++a) inside = inside && std::abs(j[a]) < half;
        const double e = std::norm(P[i]);
        if (!inside) outside += e;
        if (total > 0.0 && e > level * total) extent = std::max(extent, big.frequency_radius(i));
        if (inside) c[spec.flatten(j)] = P[i];
    }
    return {SpectralField(spec, std::move(c)), total > 0.0 ? outside / total : 0.0, extent};
}

}  // namespace

SampledField dealiased_product(const SampledField& f, const SampledField& g,
                               const AliasingGuard& guard) {
    auto p = padded_product(f, g, guard.tolerance);
    if (p.outside_fraction > guard.tolerance) {
        std::ostringstream os;
        os << "product is not band-safe: " << p.outside_fraction
           << " of its spectral energy lies beyond the grid; spectral extent " << p.extent
           << " vs Nyquist " << f.spec().nyquist() << " (refine N or widen the inputs)";
        throw std::domain_error(os.str());
    }
    return inverse_transform(p.spectrum);
}

double aliasing_fraction(const SampledField& f, const SampledField& g) {
    return padded_product(f, g, 0.0).outside_fraction;
}

SampledField lp_commutator(const SampledField& f, const SampledField& g, int k,
                           const AliasingGuard& guard) {
    require_resolvable(f.spec(), k, "lp_commutator");
    const auto fg = dealiased_product(f, g, guard);
    return project_band(fg, k) - dealiased_product(f, project_band(g, k), guard);
}

SampledField kernel_commutator(const SampledField& h, const SampledField& f,
                               const SampledField& g, const AliasingGuard& guard) {
    require_same_grid(h.spec(), f.spec(), "kernel_commutator");
    return dealiased_product(f, convolve(h, g), guard) - convolve(h, dealiased_product(f, g, guard));
}

double support_radius(const SampledField& h, double threshold) {
    const double cut = threshold * h.max_abs();
    double r = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (std::abs(h[i]) > cut) r = std::max(r, h.spec().radius(i));
    }
    return r;
}

std::vector<SampledField> annulus_decompose_kernel(const SampledField& P,
                                                   const CutoffProfile& cutoff) {
    const auto masks = physical_partition(P.spec(), physical_partition_size(P.spec()), cutoff);
    std::vector<SampledField> out;
    out.reserve(masks.size());
    for (const auto& chi : masks) out.push_back(pointwise_product(P, chi));
    return out;
}

SampledField mask_commutator(const SampledField& g, const SampledField& mask, int k, double s,
                             const CutoffProfile& cutoff) {
    return project_tilde(pointwise_product(mask, g), k, s, cutoff) -
           pointwise_product(mask, project_tilde(g, k, s, cutoff));
}

InteractionSplit interaction_split(const SampledField& g, int k, int m, int band_width, double s,
                                   const CutoffProfile& cutoff) {
    const auto& spec = g.spec();
    if (band_width < 3) throw std::invalid_argument("interaction_split needs a band width N >= 3");
    require_resolvable(spec, k, "interaction_split");
    if (std::ldexp(1.0, m + 1) > spec.half_width()) {
        std::ostringstream os;
        os << "mask phi(2^-m |x|) with m=" << m << " leaves the box (L=" << spec.half_width() << ")";
        throw std::out_of_range(os.str());
    }
    const double lo_scale = std::ldexp(1.0, -(k - band_width));
    const double hi_scale = std::ldexp(1.0, -(k + band_width - 1));
    const auto low = apply_radial_multiplier(g, [&](double r) { return cutoff.psi(lo_scale * r); });
    const auto window = apply_radial_multiplier(
        g, [&](double r) { return cutoff.psi(hi_scale * r) - cutoff.psi(lo_scale * r); });
    // Nyquist modes are dropped by every multiplier, so the remainder keeps them.
    const auto rest = g - low - window;

    const double mscale = std::ldexp(1.0, -m);
    const auto mask = SampledField::from_function(spec, [&](const Point& p) {
        return cplx(cutoff.phi(mscale * std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2])));
    });
    return {k,
            m,
            band_width,
            s,
            mask_commutator(low, mask, k, s, cutoff),
            mask_commutator(window, mask, k, s, cutoff),
            mask_commutator(rest, mask, k, s, cutoff)};
}

}  // namespace lplab
