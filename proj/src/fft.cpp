#include "mzs/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace mzs {
namespace {

struct PlanPair {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
};

std::mutex plan_mutex;
std::map<Index, PlanPair>& plan_cache() {
  static std::map<Index, PlanPair> cache;
  return cache;
}

thread_local std::uint64_t call_count = 0;

// FFTW planning is not thread-safe and (except in ESTIMATE mode) touches the
// input arrays, so plans are built once per size on dummy buffers and then
// executed through the new-array interface. FFTW_UNALIGNED lets us execute
// on whatever buffers Eigen hands us.
const PlanPair& plans_for(Index n) {
  std::lock_guard<std::mutex> lock(plan_mutex);
  auto& cache = plan_cache();
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  ArrayXcd dummy_in(n), dummy_out(n);
  auto* in = reinterpret_cast<fftw_complex*>(dummy_in.data());
  auto* out = reinterpret_cast<fftw_complex*>(dummy_out.data());
  unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  PlanPair p;
  p.fwd = fftw_plan_dft_1d(static_cast<int>(n), in, out, FFTW_FORWARD, flags);
  p.bwd = fftw_plan_dft_1d(static_cast<int>(n), in, out, FFTW_BACKWARD, flags);
  require(p.fwd && p.bwd, "fftw plan creation failed");
  return cache.emplace(n, p).first->second;
}

} // namespace

ArrayXcd fft_forward(const ArrayXcd& u) {
  const PlanPair& p = plans_for(u.size());
  ArrayXcd out(u.size());
  fftw_execute_dft(p.fwd,
                   reinterpret_cast<fftw_complex*>(const_cast<cplx*>(u.data())),
                   reinterpret_cast<fftw_complex*>(out.data()));
  ++call_count;
  return out;
}

ArrayXcd fft_inverse(const ArrayXcd& U) {
  const PlanPair& p = plans_for(U.size());
  ArrayXcd out(U.size());
  fftw_execute_dft(p.bwd,
                   reinterpret_cast<fftw_complex*>(const_cast<cplx*>(U.data())),
                   reinterpret_cast<fftw_complex*>(out.data()));
  ++call_count;
  return out / static_cast<double>(U.size());
}

std::uint64_t fft_call_count() { return call_count; }

} // namespace mzs
