#include "lplab/dyadic.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace lplab {

namespace {

double smooth_step(double u, double sharpness) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    const double a = std::exp(-sharpness / u);
    const double b = std::exp(-sharpness / (1.0 - u));
    return a / (a + b);
}

// Shared least-squares slope; the harness has its own public regression.
double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    return sxy / sxx;
}

// |xi| per flat index, -1 on Nyquist planes. Built from per-axis tables and cached,
// since every multiplier on a grid needs the same table.
std::shared_ptr<const std::vector<double>> frequency_radii(const GridSpec& spec) {
    struct Entry {
        int n, N;
        double L;
        std::shared_ptr<const std::vector<double>> radii;
    };
    static std::mutex mutex;
    static std::vector<Entry> cache;
    const int n = spec.dimension();
    const int N = spec.samples();
    const double L = spec.half_width();
    std::lock_guard lock(mutex);
    for (const auto& e : cache) {
        if (e.n == n && e.N == N && e.L == L) return e.radii;
    }
    std::vector<double> sq(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i) {
        const int j = i > N / 2 ? i - N : i;
        sq[static_cast<std::size_t>(i)] = i == N / 2 ? -1.0 : static_cast<double>(j) * j;
    }
    auto radii = std::make_shared<std::vector<double>>(spec.size());
    const double step = spec.frequency_step();
    for (std::size_t flat = 0; flat < radii->size(); ++flat) {
        std::size_t rest = flat;
        double acc = 0.0;
        bool nyquist = false;
        for (int a = 0; a < n; ++a) {
            const double v = sq[rest % static_cast<std::size_t>(N)];
            rest /= static_cast<std::size_t>(N);
            nyquist |= v < 0.0;
            acc += v;
        }
        (*radii)[flat] = nyquist ? -1.0 : std::sqrt(acc) * step;
    }
    if (cache.size() >= 8) cache.erase(cache.begin());
    cache.push_back({n, N, L, radii});
    return radii;
}

}  // namespace

CutoffProfile::CutoffProfile(double sharpness) : sharpness_(sharpness) {
    if (!(sharpness > 0.0) || !std::isfinite(sharpness)) {
        throw std::invalid_argument("cutoff sharpness must be positive");
    }
}

double CutoffProfile::psi(double t) const noexcept {
    t = std::abs(t);
    if (t <= 1.0) return 1.0;
    if (t >= 2.0) return 0.0;
    return smooth_step(2.0 - t, sharpness_);
}

double CutoffProfile::phi(double t) const noexcept { return psi(t) - psi(2.0 * t); }

CutoffProfile build_cutoff(double sharpness) { return CutoffProfile(sharpness); }

const CutoffProfile& default_cutoff() {
    static const CutoffProfile profile(1.0);
    return profile;
}

ResolvableRange resolvable_range(const GridSpec& spec) {
    constexpr double slack = 1e-12;
    const int k_min = static_cast<int>(std::ceil(std::log2(4.0 * spec.frequency_step()) - slack));
    const int k_max = static_cast<int>(std::floor(std::log2(spec.nyquist() / 4.0) + slack));
    return {k_min, k_max};
}

void require_resolvable(const GridSpec& spec, int k, const char* context) {
    const auto range = resolvable_range(spec);
    if (!range.contains(k)) {
        std::ostringstream os;
        os << context << ": scale k=" << k << " outside resolvable range [" << range.k_min << ", "
           << range.k_max << "] for N=" << spec.samples() << ", L=" << spec.half_width();
        throw std::out_of_range(os.str());
    }
}

namespace {

template <class Multiplier>
SampledField radial_apply(const SampledField& f, const Multiplier& multiplier) {
    const auto& spec = f.spec();
    const auto radii = frequency_radii(spec);
    auto coeffs = std::move(forward_transform(f)).release();
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        const double r = (*radii)[i];
        coeffs[i] *= r < 0.0 ? 0.0 : multiplier(r);
    }
    return inverse_transform(SpectralField(spec, std::move(coeffs)));
}

}  // namespace

SampledField apply_radial_multiplier(const SampledField& f,
                                     const std::function<double(double)>& multiplier) {
    return radial_apply(f, multiplier);
}

SampledField project_band(const SampledField& f, int k, const CutoffProfile& cutoff) {
    require_resolvable(f.spec(), k, "project_band");
    const double scale = std::ldexp(1.0, -k);
    return radial_apply(f, [&](double r) { return cutoff.phi(scale * r); });
}

SampledField project_below(const SampledField& f, int k, const CutoffProfile& cutoff) {
    require_resolvable(f.spec(), k, "project_below");
    const double scale = std::ldexp(1.0, -k);
    return radial_apply(f, [&](double r) { return cutoff.psi(scale * r); });
}

SampledField project_tilde(const SampledField& f, int k, double s, const CutoffProfile& cutoff) {
    require_resolvable(f.spec(), k, "project_tilde");
    const double scale = std::ldexp(1.0, -k);
    return radial_apply(f, [&](double r) {
        const double t = scale * r;
        return t > 0.0 ? cutoff.phi(t) * std::pow(t, s) : 0.0;
    });
}

SampledField project_range(const SampledField& f, BandIndex band, const CutoffProfile& cutoff) {
    if (band.width < 1) throw std::invalid_argument("project_range: band width must be >= 1");
    require_resolvable(f.spec(), band.k, "project_range");
    const double upper = std::ldexp(1.0, -(band.k + band.width - 1));
    const double lower = std::ldexp(1.0, -(band.k - band.width));
    return radial_apply(
        f, [&](double r) { return cutoff.psi(upper * r) - cutoff.psi(lower * r); });
}

SampledField fractional_derivative(const SampledField& f, double s, MeanPolicy policy) {
    if (!std::isfinite(s)) throw std::invalid_argument("fractional order must be finite");
    const auto& spec = f.spec();
    auto coeffs = std::move(forward_transform(f)).release();
    if (s < 0.0 && policy == MeanPolicy::Strict) {
        double peak = 0.0;
        for (const auto& c : coeffs) peak = std::max(peak, std::abs(c));
        if (std::abs(coeffs[0]) > 1e-10 * peak) {
            std::ostringstream os;
            os << "fractional_derivative(s=" << s << "): field mean " << std::abs(coeffs[0])
               << " is not negligible (peak coefficient " << peak << ")";
            throw std::domain_error(os.str());
        }
    }
    const auto radii = frequency_radii(spec);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        const double r = (*radii)[i];
        if (r < 0.0) {
            coeffs[i] = 0.0;
            continue;
        }
        if (r == 0.0) {
            coeffs[i] *= (s == 0.0) ? 1.0 : 0.0;
        } else {
            coeffs[i] *= std::pow(r, s);
        }
    }
    return inverse_transform(SpectralField(spec, std::move(coeffs)));
}

SampledField lp_kernel(int k, const GridSpec& spec, const CutoffProfile& cutoff,
                       double boundary_tolerance) {
    require_resolvable(spec, k, "lp_kernel");
    const double scale = std::ldexp(1.0, -k);
    std::vector<cplx> coeffs(spec.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        coeffs[i] = spec.is_nyquist(i) ? 0.0 : cutoff.phi(scale * spec.frequency_radius(i));
    }
    auto values = std::move(inverse_transform(SpectralField(spec, std::move(coeffs)))).release();
    for (auto& v : values) v = v.real();
    SampledField kernel(spec, std::move(values));
    // oscillating kernels can vanish exactly on the seam, so look at a shell
    const double ratio = boundary_ratio(kernel, 0.125);
    if (!(ratio < boundary_tolerance)) {
        std::ostringstream os;
        os << "lp_kernel(k=" << k << "): kernel tail " << ratio << " exceeds boundary tolerance "
           << boundary_tolerance << "; the box (L=" << spec.half_width()
           << ") is too small for this scale";
        throw std::domain_error(os.str());
    }
    return kernel;
}

SampledField dilate_kernel(const SampledField& P, int k) {
    if (k < 0) throw std::invalid_argument("dilate_kernel: only k >= 0 maps lattice to lattice");
    const auto& spec = P.spec();
    const long long N = spec.samples();
    const long long factor = 1LL << k;
    const long long shift = (factor - 1) * N / 2;
    const double amplitude = std::pow(static_cast<double>(factor), spec.dimension());
    std::vector<cplx> out(P.size(), cplx{});
    for (std::size_t i = 0; i < out.size(); ++i) {
        const auto idx = spec.unflatten(i);
        LatticeIndex src{0, 0, 0};
        bool inside = true;
        for (int a = 0; a < spec.dimension(); ++a) {
            const long long j = factor * idx[a] - shift;
            if (j < 0 || j >= N) {
                inside = false;
                break;
            }
            src[a] = static_cast<int>(j);
        }
        if (inside) out[i] = amplitude * P[spec.flatten(src)];
    }
    return SampledField(spec, std::move(out));
}

KernelHypothesisResult verify_kernel_hypothesis(const SampledField& P, double s, double eps,
                                                double slope_tolerance) {
    if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("kernel hypothesis needs 0 < s < 1");
    if (!(eps > 0.0)) throw std::invalid_argument("kernel hypothesis needs eps > 0");

    const auto& spec = P.spec();
    const double L = spec.half_width();
    const double corner = L * std::sqrt(static_cast<double>(spec.dimension()));
    const double dv = spec.cell_volume();

    int j_inside = 0;
    while (std::ldexp(1.0, j_inside + 1) <= L * (1.0 + 1e-12)) ++j_inside;
    int j_partial = j_inside;
    while (std::ldexp(1.0, j_partial) < corner) ++j_partial;

    KernelHypothesisResult result;
    std::vector<double> masses(static_cast<std::size_t>(j_inside) + 1, 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < P.size(); ++i) {
        const double r = spec.radius(i);
        const double a = std::abs(P[i]) * dv;
        total += a;
        if (r <= 1.0) {
            masses[0] += a;
            continue;
        }
        const int j = static_cast<int>(std::ceil(std::log2(r) - 1e-12));
        if (j >= 1 && j <= j_inside) masses[static_cast<std::size_t>(j)] += a;
    }
    result.unit_ball_mass = masses[0];
    for (int j = j_inside + 1; j <= j_partial; ++j) result.omitted.push_back(j);

    const double floor = 1e-12 * total;
    const double rate = eps + s;
    result.constant = result.unit_ball_mass;
    std::vector<double> xs;
    std::vector<double> ys;
    int last_positive = 0;
    for (int j = 1; j <= j_inside; ++j) {
        const double m = masses[static_cast<std::size_t>(j)];
        const double w = m * std::exp2(j * rate);
        result.annuli.push_back({j, m, w});
        if (m > floor) {
            result.constant = std::max(result.constant, w);
            xs.push_back(j);
            ys.push_back(std::log2(w));
            last_positive = j;
        }
    }

    result.decayed_to_floor = last_positive < j_inside;
    if (result.decayed_to_floor || xs.size() < 2) {
        result.pass = std::isfinite(result.constant);
        return result;
    }
    const std::size_t tail = std::min(
        xs.size(), std::max<std::size_t>(3, (static_cast<std::size_t>(j_inside) + 1) / 2));
    std::vector<double> tx(xs.end() - static_cast<std::ptrdiff_t>(tail), xs.end());
    std::vector<double> ty(ys.end() - static_cast<std::ptrdiff_t>(tail), ys.end());
    result.tail_points = static_cast<int>(tail);
    result.tail_slope = ls_slope(tx, ty);
    result.pass = std::isfinite(result.constant) && result.tail_slope <= slope_tolerance;
    return result;
}

}  // namespace lplab
