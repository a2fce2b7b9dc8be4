#include "fracmax/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace fracmax::fft {
namespace {

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(const std::vector<int>& dims, int sign) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto key = std::make_pair(dims, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    const std::size_t total = std::accumulate(dims.begin(), dims.end(), std::size_t{1},
                                              [](std::size_t a, int b) { return a * static_cast<std::size_t>(b); });
    // Planning scratch only; FFTW_ESTIMATE leaves it untouched and keeps plans deterministic.
    std::vector<Complex> scratch(total);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_plan plan = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), buf, buf, sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (plan == nullptr) throw std::runtime_error("fftw: failed to create plan");
    plans_.emplace(std::move(key), plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<std::vector<int>, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

void execute(std::vector<Complex>& data, const std::vector<int>& dims, int sign) {
  std::size_t total = 1;
  for (int d : dims) total *= static_cast<std::size_t>(d);
  if (data.size() != total) throw std::invalid_argument("fft: buffer size does not match dims");
  fftw_plan plan = cache().get(dims, sign);
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, buf, buf);
}

std::vector<int> cube_dims(const Grid3& g) { return {g.n(), g.n(), g.n()}; }

}  // namespace

void forward_inplace(std::vector<Complex>& data, const std::vector<int>& dims) {
  execute(data, dims, FFTW_FORWARD);
}

void inverse_inplace(std::vector<Complex>& data, const std::vector<int>& dims) {
  execute(data, dims, FFTW_BACKWARD);
  const double scale = 1.0 / static_cast<double>(data.size());
  for (auto& v : data) v *= scale;
}

std::vector<Complex> forward(const ScalarField& u) {
  std::vector<Complex> data = u.values();
  forward_inplace(data, cube_dims(u.grid()));
  return data;
}

ScalarField inverse(const Grid3& grid, std::vector<Complex> spectrum) {
  inverse_inplace(spectrum, cube_dims(grid));
  return ScalarField(grid, std::move(spectrum));
}

}  // namespace fracmax::fft
