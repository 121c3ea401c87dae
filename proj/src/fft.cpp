#include "nlcauchy/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace nlcauchy {

namespace {

struct PlanKey {
    int dim;
    int n;
    int sign;
    auto operator<=>(const PlanKey&) const = default;
};

// Plans are created unaligned so they can execute on any std::vector buffer.
class PlanCache {
public:
    static fftw_plan get(int dim, int n, int sign) {
        static PlanCache cache;
        std::lock_guard lock(cache.mutex_);
        PlanKey key{dim, n, sign};
        auto it = cache.plans_.find(key);
        if (it != cache.plans_.end()) return it->second;

        size_t total = (dim == 1) ? size_t(n) : size_t(n) * n;
        std::vector<cdouble> buf(total);
        auto* ptr = reinterpret_cast<fftw_complex*>(buf.data());
        fftw_plan plan = (dim == 1)
            ? fftw_plan_dft_1d(n, ptr, ptr, sign, FFTW_ESTIMATE | FFTW_UNALIGNED)
            : fftw_plan_dft_2d(n, n, ptr, ptr, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (!plan) throw std::runtime_error("fftw plan creation failed");
        cache.plans_.emplace(key, plan);
        return plan;
    }

private:
    std::mutex mutex_;
    std::map<PlanKey, fftw_plan> plans_;
};

void execute(int dim, int n, int sign, const std::vector<cdouble>& in, std::vector<cdouble>& out) {
    size_t total = (dim == 1) ? size_t(n) : size_t(n) * n;
    if (in.size() != total) throw std::runtime_error("fft: input size mismatch");
    out = in;
    fftw_plan plan = PlanCache::get(dim, n, sign);
    auto* ptr = reinterpret_cast<fftw_complex*>(out.data());
    fftw_execute_dft(plan, ptr, ptr);
}

}  // namespace

void fft_forward(int dim, int n, const std::vector<cdouble>& in, std::vector<cdouble>& out) {
    execute(dim, n, FFTW_FORWARD, in, out);
    double scale = (dim == 1) ? 1.0 / n : 1.0 / (double(n) * n);
    for (auto& v : out) v *= scale;
}

void fft_inverse(int dim, int n, const std::vector<cdouble>& in, std::vector<cdouble>& out) {
    execute(dim, n, FFTW_BACKWARD, in, out);
}

}  // namespace nlcauchy
