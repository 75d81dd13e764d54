#include "fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cassert>
#include <memory>
#include <mutex>
#include <unordered_map>

namespace lowreg::detail {
namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

class Plan {
 public:
  explicit Plan(int n) : n_(n) {
    std::lock_guard lock(planner_mutex());
    in_ = fftw_alloc_complex(n);
    out_ = fftw_alloc_complex(n);
    // FFTW_ESTIMATE keeps the chosen algorithm independent of timing, so
    // repeated runs are bit-identical.
    fwd_ = fftw_plan_dft_1d(n, in_, out_, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd_ = fftw_plan_dft_1d(n, in_, out_, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~Plan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(bwd_);
    fftw_free(in_);
    fftw_free(out_);
  }
  Plan(const Plan&) = delete;
  Plan& operator=(const Plan&) = delete;

  void run(bool forward, std::span<const std::complex<double>> in,
           std::span<std::complex<double>> out) {
    assert(static_cast<int>(in.size()) == n_ && static_cast<int>(out.size()) == n_);
    std::copy(in.begin(), in.end(), reinterpret_cast<std::complex<double>*>(in_));
    fftw_execute(forward ? fwd_ : bwd_);
    const auto* res = reinterpret_cast<const std::complex<double>*>(out_);
    std::copy(res, res + n_, out.begin());
  }

 private:
  int n_;
  fftw_complex* in_ = nullptr;
  fftw_complex* out_ = nullptr;
  fftw_plan fwd_ = nullptr;
  fftw_plan bwd_ = nullptr;
};

Plan& plan_for(int n) {
  thread_local std::unordered_map<int, std::unique_ptr<Plan>> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, std::make_unique<Plan>(n)).first;
  return *it->second;
}

}  // namespace

void fft_backward(std::span<const std::complex<double>> in,
                  std::span<std::complex<double>> out) {
  plan_for(static_cast<int>(in.size())).run(false, in, out);
}

void fft_forward(std::span<const std::complex<double>> in,
                 std::span<std::complex<double>> out) {
  plan_for(static_cast<int>(in.size())).run(true, in, out);
}

}  // namespace lowreg::detail
