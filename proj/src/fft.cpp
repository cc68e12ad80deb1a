#include "smap/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>
#include <vector>

namespace smap::fft {
namespace {

// The FFTW planner is not thread-safe; execution through the new-array
// interface is. Plans are created once per (shape, sign) and live for the
// lifetime of the process.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(const std::vector<int>& dims, int sign) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto key = std::make_pair(dims, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;

    std::size_t total = 1;
    for (int d : dims) total *= static_cast<std::size_t>(d);
    fftw_complex* scratch = fftw_alloc_complex(total);
    fftw_plan plan = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), scratch, scratch,
                                   sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(scratch);
    plans_.emplace(std::move(key), plan);
    return plan;
  }

  PlanCache(const PlanCache&) = delete;
  PlanCache& operator=(const PlanCache&) = delete;

 private:
  PlanCache() = default;
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  std::mutex mutex_;
  std::map<std::pair<std::vector<int>, int>, fftw_plan> plans_;
};

void execute(const std::vector<int>& dims, int sign, std::span<Complex> data) {
  fftw_plan plan = PlanCache::instance().get(dims, sign);
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, ptr, ptr);
}

std::vector<int> grid_dims(const Grid& grid) { return std::vector<int>(grid.dim(), grid.n()); }

}  // namespace

void forward(const Grid& grid, std::span<Complex> data) {
  execute(grid_dims(grid), FFTW_FORWARD, data);
}

void inverse(const Grid& grid, std::span<Complex> data) {
  execute(grid_dims(grid), FFTW_BACKWARD, data);
  const double scale = 1.0 / static_cast<double>(data.size());
  for (auto& c : data) c *= scale;
}

void forward_1d(std::span<Complex> data) {
  execute({static_cast<int>(data.size())}, FFTW_FORWARD, data);
}

void inverse_1d(std::span<Complex> data) {
  execute({static_cast<int>(data.size())}, FFTW_BACKWARD, data);
  const double scale = 1.0 / static_cast<double>(data.size());
  for (auto& c : data) c *= scale;
}

}  // namespace smap::fft
