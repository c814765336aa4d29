#include "hnls/spectral_backend.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace hnls::backend {

namespace {

// FFTW planning is not thread-safe; execution of an existing plan on new
// arrays is. Plans are created once per (kind, size) and never destroyed.
class PlanCache {
public:
  fftw_plan get(fftw_r2r_kind kind, int n) {
    std::lock_guard<std::mutex> lock(mutex_);
    const auto key = std::make_pair(static_cast<int>(kind), n);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    std::vector<double> scratch_in(2 * static_cast<std::size_t>(n));
    std::vector<double> scratch_out(2 * static_cast<std::size_t>(n));
    // Two interleaved real transforms (stride 2, distance 1).
    fftw_plan plan = fftw_plan_many_r2r(1, &n, 2, scratch_in.data(), nullptr, 2, 1,
                                        scratch_out.data(), nullptr, 2, 1, &kind,
                                        FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (plan == nullptr) throw std::runtime_error("FFTW failed to create a plan");
    plans_.emplace(key, plan);
    return plan;
  }

private:
  std::mutex mutex_;
  std::map<std::pair<int, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

double* as_doubles(cplx* p) { return reinterpret_cast<double*>(p); }

}  // namespace

void dst1(std::span<const cplx> in, std::span<cplx> out) {
  const int n = static_cast<int>(in.size());
  if (out.size() != in.size()) throw std::invalid_argument("dst1: size mismatch");
  std::vector<cplx> work(in.begin(), in.end());  // FFTW may not preserve the input
  fftw_plan plan = cache().get(FFTW_RODFT00, n);
  fftw_execute_r2r(plan, as_doubles(work.data()), as_doubles(out.data()));
}

void dct1_from_interior(std::span<const cplx> coeffs, std::span<cplx> out) {
  const int n = static_cast<int>(coeffs.size());
  if (out.size() != coeffs.size() + 2) throw std::invalid_argument("dct1: size mismatch");
  std::vector<cplx> work(coeffs.size() + 2, cplx{0.0, 0.0});
  std::copy(coeffs.begin(), coeffs.end(), work.begin() + 1);
  fftw_plan plan = cache().get(FFTW_REDFT00, n + 2);
  fftw_execute_r2r(plan, as_doubles(work.data()), as_doubles(out.data()));
}

}  // namespace hnls::backend
