#include "gtsim/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace gt::fft {

namespace {

using Key = std::tuple<std::vector<int>, int, bool>;

struct PlanCache {
  std::mutex mu;
  std::map<Key, fftw_plan> plans;

  fftw_plan get(std::span<const std::size_t> shape, int sign, bool aligned) {
    std::vector<int> dims(shape.begin(), shape.end());
    Key key{dims, sign, aligned};
    std::lock_guard<std::mutex> lock(mu);
    auto it = plans.find(key);
    if (it != plans.end()) return it->second;
    std::size_t total = 1;
    for (int v : dims) total *= static_cast<std::size_t>(v);
    // plan on scratch storage; FFTW_ESTIMATE keeps the choice deterministic
    auto* scratch = fftw_alloc_complex(total);
    fftw_plan p = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), scratch, scratch,
                                sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                                FFTW_ESTIMATE | (aligned ? 0u : FFTW_UNALIGNED));
    fftw_free(scratch);
    if (p == nullptr) throw std::runtime_error("fftw: plan creation failed");
    plans.emplace(std::move(key), p);
    return p;
  }
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

}  // namespace

void transform(std::span<cplx> data, std::span<const std::size_t> shape, int sign) {
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  const bool aligned = fftw_alignment_of(reinterpret_cast<double*>(ptr)) == 0;
  fftw_plan p = cache().get(shape, sign, aligned);
  fftw_execute_dft(p, ptr, ptr);
}

}  // namespace gt::fft
