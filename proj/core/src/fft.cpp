#include "fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <string>
#include <tuple>

#include "nlslab/version.hpp"

namespace nlslab::detail {
namespace {

// The FFTW planner is not reentrant; execution with new arrays is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

class PlanCache {
 public:
  PlanCache() = default;
  PlanCache(const PlanCache&) = delete;
  PlanCache& operator=(const PlanCache&) = delete;

  ~PlanCache() {
    std::lock_guard lock(planner_mutex());
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(int dim, int n, bool forward) {
    const auto key = std::make_tuple(dim, n, forward);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;

    int dims[3] = {n, n, n};
    std::size_t size = 1;
    for (int d = 0; d < dim; ++d) size *= static_cast<std::size_t>(n);

    std::lock_guard lock(planner_mutex());
    auto* scratch = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * size));
    fftw_plan plan = fftw_plan_dft(dim, dims, scratch, scratch, forward ? FFTW_FORWARD : FFTW_BACKWARD,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(scratch);
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::map<std::tuple<int, int, bool>, fftw_plan> plans_;
};

PlanCache& cache() {
  thread_local PlanCache c;
  return c;
}

}  // namespace

void fft_inplace(const Grid& grid, std::span<cplx> data, bool forward) {
  fftw_plan plan = cache().get(grid.dim(), grid.n(), forward);
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, p, p);
  const double scale = 1.0 / std::sqrt(static_cast<double>(data.size()));
  for (auto& v : data) v *= scale;
}

}  // namespace nlslab::detail

namespace nlslab {

std::string version() { return NLSLAB_VERSION_STRING; }

std::string fft_library_version() { return fftw_version; }

}  // namespace nlslab
