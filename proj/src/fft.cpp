#include "rodflow/detail/fft.hpp"

#include <fftw3.h>
#include <malloc.h>

#include <cstring>
#include <memory>
#include <mutex>
#include <unordered_map>

namespace rodflow::detail {
namespace {

// Work buffers here run to a few MB; with the default glibc mmap threshold
// every allocation round-trips through mmap and faults its pages in. Keep
// large blocks on the heap so they are reused.
[[maybe_unused]] const bool allocator_tuned = [] {
    mallopt(M_MMAP_THRESHOLD, 64 * 1024 * 1024);
    mallopt(M_TRIM_THRESHOLD, 128 * 1024 * 1024);
    return true;
}();

struct FftwDeleter {
    void operator()(void* p) const { fftw_free(p); }
};

using RealBuf = std::unique_ptr<double[], FftwDeleter>;
using ComplexBuf = std::unique_ptr<fftw_complex[], FftwDeleter>;

RealBuf alloc_real(std::size_t n) {
    return RealBuf(static_cast<double*>(fftw_malloc(sizeof(double) * n)));
}

ComplexBuf alloc_complex(std::size_t n) {
    return ComplexBuf(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n)));
}

struct PlanPair {
    fftw_plan r2c = nullptr;
    fftw_plan c2r = nullptr;
};

// One r2c/c2r plan pair per transform size. The FFTW planner is not
// thread-safe, so creation is serialized; plan execution through the
// new-array interface is safe as long as each call brings its own
// buffers (which rfft/irfft below do).
class PlanCache {
public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    PlanPair get(std::size_t n) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = plans_.find(n);
        if (it != plans_.end()) return it->second;
        auto re = alloc_real(n);
        auto co = alloc_complex(n / 2 + 1);
        PlanPair pair;
        pair.r2c = fftw_plan_dft_r2c_1d(static_cast<int>(n), re.get(), co.get(),
                                        FFTW_ESTIMATE);
        pair.c2r = fftw_plan_dft_c2r_1d(static_cast<int>(n), co.get(), re.get(),
                                        FFTW_ESTIMATE);
        plans_.emplace(n, pair);
        return pair;
    }

private:
    PlanCache() = default;
    std::mutex mutex_;
    std::unordered_map<std::size_t, PlanPair> plans_;
};

} // namespace

std::vector<std::complex<double>> rfft(const std::vector<double>& in) {
    const std::size_t n = in.size();
    PlanPair plans = PlanCache::instance().get(n);
    auto re = alloc_real(n);
    auto co = alloc_complex(n / 2 + 1);
    std::memcpy(re.get(), in.data(), sizeof(double) * n);
    fftw_execute_dft_r2c(plans.r2c, re.get(), co.get());
    std::vector<std::complex<double>> out(n / 2 + 1);
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] = {co[k][0], co[k][1]};
    return out;
}

std::vector<double> irfft(const std::vector<std::complex<double>>& in,
                          std::size_t n) {
    PlanPair plans = PlanCache::instance().get(n);
    auto co = alloc_complex(n / 2 + 1);
    auto re = alloc_real(n);
    for (std::size_t k = 0; k < n / 2 + 1; ++k) {
        co[k][0] = in[k].real();
        co[k][1] = in[k].imag();
    }
    fftw_execute_dft_c2r(plans.c2r, co.get(), re.get());
    return std::vector<double>(re.get(), re.get() + n);
}

} // namespace rodflow::detail
