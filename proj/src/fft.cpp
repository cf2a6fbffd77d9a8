#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace lplab::detail {

namespace {

// fftw planning is not thread-safe; execution with the new-array interface is.
class PlanCache {
public:
    ~PlanCache() {
        for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    }

    fftw_plan get(int dimension, int samples, FftDirection direction) {
        const auto key = std::make_tuple(dimension, samples, direction == FftDirection::Forward);
        std::lock_guard lock(mutex_);
        if (auto it = plans_.find(key); it != plans_.end()) return it->second;

        std::size_t total = 1;
        int dims[3];
        for (int a = 0; a < dimension; ++a) {
            dims[a] = samples;
            total *= static_cast<std::size_t>(samples);
        }
        auto* scratch = fftw_alloc_complex(total);
        const int sign = direction == FftDirection::Forward ? FFTW_FORWARD : FFTW_BACKWARD;
        fftw_plan plan = fftw_plan_dft(dimension, dims, scratch, scratch, sign,
                                       FFTW_ESTIMATE | FFTW_UNALIGNED);
        fftw_free(scratch);
        if (plan == nullptr) throw std::runtime_error("fftw could not build a plan");
        plans_.emplace(key, plan);
        return plan;
    }

private:
    std::mutex mutex_;
    std::map<std::tuple<int, int, bool>, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache instance;
    return instance;
}

}  // namespace

void fft_inplace(int dimension, int samples, std::vector<std::complex<double>>& data,
                 FftDirection direction) {
    fftw_plan plan = cache().get(dimension, samples, direction);
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plan, buf, buf);
}

}  // namespace lplab::detail
