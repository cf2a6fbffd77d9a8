#include "lplab/grid.hpp"

#include "fft.hpp"

#include <json.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace lplab {

GridSpec::GridSpec(int dimension, int samples_per_axis, double half_width)
    : n_(dimension), N_(samples_per_axis), L_(half_width), size_(1) {
    if (dimension < 1 || dimension > 3) {
        throw std::invalid_argument("grid dimension must be 1, 2 or 3 (got " +
                                    std::to_string(dimension) + ")");
    }
    if (samples_per_axis < 16 || !std::has_single_bit(static_cast<unsigned>(samples_per_axis))) {
        throw std::invalid_argument("samples per axis must be a power of two >= 16 (got " +
                                    std::to_string(samples_per_axis) + ")");
    }
    if (!(half_width > 0.0) || !std::isfinite(half_width)) {
        throw std::invalid_argument("half width must be positive and finite");
    }
    for (int a = 0; a < n_; ++a) size_ *= static_cast<std::size_t>(N_);
}

double GridSpec::cell_volume() const noexcept { return std::pow(spacing(), n_); }

LatticeIndex GridSpec::unflatten(std::size_t flat) const noexcept {
    LatticeIndex idx{0, 0, 0};
    for (int a = n_ - 1; a >= 0; --a) {
        idx[a] = static_cast<int>(flat % static_cast<std::size_t>(N_));
        flat /= static_cast<std::size_t>(N_);
    }
    return idx;
}

std::size_t GridSpec::flatten(const LatticeIndex& idx) const noexcept {
    std::size_t flat = 0;
    for (int a = 0; a < n_; ++a) {
        const int wrapped = ((idx[a] % N_) + N_) % N_;
        flat = flat * static_cast<std::size_t>(N_) + static_cast<std::size_t>(wrapped);
    }
    return flat;
}

Point GridSpec::point(std::size_t flat) const noexcept {
    const auto idx = unflatten(flat);
    Point p{0.0, 0.0, 0.0};
    const double dx = spacing();
    for (int a = 0; a < n_; ++a) p[a] = -L_ + idx[a] * dx;
    return p;
}

LatticeIndex GridSpec::frequency_index(std::size_t flat) const noexcept {
    auto idx = unflatten(flat);
    for (int a = 0; a < n_; ++a) {
        if (idx[a] > N_ / 2) idx[a] -= N_;
    }
    return idx;
}

bool GridSpec::is_nyquist(std::size_t flat) const noexcept {
    const auto idx = unflatten(flat);
    for (int a = 0; a < n_; ++a) {
        if (idx[a] == N_ / 2) return true;
    }
    return false;
}

double GridSpec::frequency_radius(std::size_t flat) const noexcept {
    const auto j = frequency_index(flat);
    double sq = 0.0;
    for (int a = 0; a < n_; ++a) sq += static_cast<double>(j[a]) * j[a];
    return std::sqrt(sq) * frequency_step();
}

double GridSpec::radius(std::size_t flat) const noexcept {
    const auto p = point(flat);
    return std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
}

double GridSpec::periodic_distance(std::size_t a, std::size_t b) const noexcept {
    const auto ia = unflatten(a);
    const auto ib = unflatten(b);
    double sq = 0.0;
    for (int ax = 0; ax < n_; ++ax) {
        int d = std::abs(ia[ax] - ib[ax]);
        d = std::min(d, N_ - d);
        sq += static_cast<double>(d) * d;
    }
    return std::sqrt(sq) * spacing();
}

// ---------------------------------------------------------------------------

SampledField::SampledField(GridSpec spec, std::vector<cplx> values)
    : spec_(spec), values_(std::move(values)) {
    if (values_.size() != spec_.size()) {
        throw std::invalid_argument("sample count " + std::to_string(values_.size()) +
                                    " does not match grid size " + std::to_string(spec_.size()));
    }
    for (const auto& v : values_) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw std::domain_error("sampled field contains non-finite values");
        }
    }
}

SampledField SampledField::zeros(const GridSpec& spec) {
    return SampledField(spec, std::vector<cplx>(spec.size(), cplx{}));
}

SampledField SampledField::constant(const GridSpec& spec, cplx value) {
    return SampledField(spec, std::vector<cplx>(spec.size(), value));
}

SampledField SampledField::from_function(const GridSpec& spec,
                                         const std::function<cplx(const Point&)>& fn) {
    std::vector<cplx> v(spec.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = fn(spec.point(i));
    return SampledField(spec, std::move(v));
}

double SampledField::max_abs() const noexcept {
    double m = 0.0;
    for (const auto& v : values_) m = std::max(m, std::abs(v));
    return m;
}

SpectralField::SpectralField(GridSpec spec, std::vector<cplx> coefficients)
    : spec_(spec), coeffs_(std::move(coefficients)) {
    if (coeffs_.size() != spec_.size()) {
        throw std::invalid_argument("coefficient count does not match grid size");
    }
}

cplx SpectralField::at(const LatticeIndex& j) const {
    const int half = spec_.samples() / 2;
    for (int a = 0; a < spec_.dimension(); ++a) {
        if (std::abs(j[a]) > half) throw std::out_of_range("frequency index beyond Nyquist");
    }
    return coeffs_[spec_.flatten(j)];
}

// ---------------------------------------------------------------------------

namespace {

// (-1)^(j_1+...+j_n): the phase from placing x_0 at -L.
void apply_checkerboard(const GridSpec& spec, std::vector<cplx>& data, double scale) {
    const int N = spec.samples();
    const int n = spec.dimension();
    std::array<int, 3> idx{0, 0, 0};
    bool odd = false;
    for (auto& v : data) {
        v *= odd ? -scale : scale;
        // odometer over the lattice, last axis fastest
        for (int a = n - 1; a >= 0; --a) {
            odd = !odd;
            if (++idx[a] < N) break;
            idx[a] = 0;
            if (N % 2) odd = !odd;  // N steps flipped parity N times, the wrap resets to 0
        }
    }
}

}  // namespace

SpectralField forward_transform(const SampledField& f) {
    const auto& spec = f.spec();
    std::vector<cplx> data(f.values().begin(), f.values().end());
    detail::fft_inplace(spec.dimension(), spec.samples(), data, detail::FftDirection::Forward);
    apply_checkerboard(spec, data, spec.cell_volume());
    return SpectralField(spec, std::move(data));
}

SampledField inverse_transform(const SpectralField& F) {
    const auto& spec = F.spec();
    std::vector<cplx> data(F.coefficients().begin(), F.coefficients().end());
    apply_checkerboard(spec, data, std::pow(spec.frequency_step(), spec.dimension()));
    detail::fft_inplace(spec.dimension(), spec.samples(), data, detail::FftDirection::Backward);
    return SampledField(spec, std::move(data));
}

SampledField inverse_transform(const SpectralField& F, const GridSpec& expected) {
    require_same_grid(F.spec(), expected, "inverse_transform");
    return inverse_transform(F);
}

cplx quadrature_integral(const SampledField& f) {
    cplx sum{};
    for (const auto& v : f.values()) sum += v;
    return sum * f.spec().cell_volume();
}

double boundary_ratio(const SampledField& f, double shell) {
    const double peak = f.max_abs();
    if (peak == 0.0) return 0.0;
    const auto& spec = f.spec();
    const int width = static_cast<int>(shell * spec.samples() / 2);
    const int last = spec.samples() - 1;
    double edge = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const auto idx = spec.unflatten(i);
        bool on_seam = false;
        for (int a = 0; a < spec.dimension(); ++a) {
            on_seam |= (idx[a] <= width || idx[a] >= last - width);
        }
        if (on_seam) edge = std::max(edge, std::abs(f[i]));
    }
    return edge / peak;
}

void require_boundary_decay(const SampledField& f, double tolerance) {
    const double ratio = boundary_ratio(f);
    if (!(ratio < tolerance)) {
        std::ostringstream os;
        os << "field does not decay at the box boundary: |f|_seam/|f|_max = " << ratio
           << " (tolerance " << tolerance << ", L = " << f.spec().half_width() << ")";
        throw std::domain_error(os.str());
    }
}

void require_same_grid(const GridSpec& a, const GridSpec& b, const char* context) {
    if (!(a == b)) {
        std::ostringstream os;
        os << context << ": grid mismatch (n=" << a.dimension() << ", N=" << a.samples()
           << ", L=" << a.half_width() << ") vs (n=" << b.dimension() << ", N=" << b.samples()
           << ", L=" << b.half_width() << ")";
        throw std::invalid_argument(os.str());
    }
}

namespace {

template <typename Op>
SampledField zip(const SampledField& a, const SampledField& b, const char* context, Op op) {
    require_same_grid(a.spec(), b.spec(), context);
    std::vector<cplx> out(a.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = op(a[i], b[i]);
    return SampledField(a.spec(), std::move(out));
}

}  // namespace

SampledField operator+(const SampledField& a, const SampledField& b) {
    return zip(a, b, "field sum", [](cplx x, cplx y) { return x + y; });
}

SampledField operator-(const SampledField& a, const SampledField& b) {
    return zip(a, b, "field difference", [](cplx x, cplx y) { return x - y; });
}

SampledField operator*(cplx scale, const SampledField& a) {
    std::vector<cplx> out(a.values().begin(), a.values().end());
    for (auto& v : out) v *= scale;
    return SampledField(a.spec(), std::move(out));
}

SampledField pointwise_product(const SampledField& a, const SampledField& b) {
    return zip(a, b, "pointwise product", [](cplx x, cplx y) { return x * y; });
}

SampledField abs(const SampledField& a) {
    std::vector<cplx> out(a.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::abs(a[i]);
    return SampledField(a.spec(), std::move(out));
}

double relative_l2_error(const SampledField& a, const SampledField& b) {
    require_same_grid(a.spec(), b.spec(), "relative_l2_error");
    double diff = 0.0;
    double ref = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        diff += std::norm(a[i] - b[i]);
        ref += std::norm(b[i]);
    }
    return ref > 0.0 ? std::sqrt(diff / ref) : std::sqrt(diff);
}

SampledField convolve(const SampledField& h, const SampledField& g) {
    require_same_grid(h.spec(), g.spec(), "convolve");
    auto H = forward_transform(h);
    auto G = forward_transform(g);
    std::vector<cplx> prod = std::move(H).release();
    for (std::size_t i = 0; i < prod.size(); ++i) prod[i] *= G[i];
    return inverse_transform(SpectralField(h.spec(), std::move(prod)));
}

// ---------------------------------------------------------------------------

void save_field(const SampledField& f, const std::filesystem::path& path, FieldFormat format) {
    const auto& spec = f.spec();
    nlohmann::json header = {{"n", spec.dimension()},
                             {"N", spec.samples()},
                             {"L", spec.half_width()},
                             {"format", format == FieldFormat::Binary ? "binary" : "csv"}};
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    if (format == FieldFormat::Binary) {
        out << header.dump() << '\n';
        out.write(reinterpret_cast<const char*>(f.values().data()),
                  static_cast<std::streamsize>(f.size() * sizeof(cplx)));
    } else {
        out << "# " << header.dump() << '\n' << "index,re,im\n";
        char line[96];
        for (std::size_t i = 0; i < f.size(); ++i) {
            std::snprintf(line, sizeof line, "%zu,%.17g,%.17g\n", i, f[i].real(), f[i].imag());
            out << line;
        }
    }
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

SampledField load_field(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::string first;
    std::getline(in, first);
    const bool csv = first.rfind("# ", 0) == 0;
    const auto header = nlohmann::json::parse(csv ? first.substr(2) : first);
    const GridSpec spec(header.at("n").get<int>(), header.at("N").get<int>(),
                        header.at("L").get<double>());
    std::vector<cplx> values(spec.size());
    if (!csv) {
        in.read(reinterpret_cast<char*>(values.data()),
                static_cast<std::streamsize>(values.size() * sizeof(cplx)));
        if (static_cast<std::size_t>(in.gcount()) != values.size() * sizeof(cplx)) {
            throw std::runtime_error(path.string() + ": truncated field payload");
        }
    } else {
        std::string line;
        std::getline(in, line);  // column names
        std::size_t rows = 0;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            std::size_t idx = 0;
            double re = 0.0;
            double im = 0.0;
            if (std::sscanf(line.c_str(), "%zu,%lf,%lf", &idx, &re, &im) != 3 ||
                idx >= values.size()) {
                throw std::runtime_error(path.string() + ": malformed row '" + line + "'");
            }
            values[idx] = {re, im};
            ++rows;
        }
        if (rows != values.size()) throw std::runtime_error(path.string() + ": missing rows");
    }
    return SampledField(spec, std::move(values));
}

}  // namespace lplab
