#include "zk/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

namespace zk {
namespace {

std::mutex plan_mu;

fftw_plan get_plan(int n0, int n1, int sign) {
  static std::map<std::tuple<int, int, int>, fftw_plan> cache;
  std::lock_guard lk(plan_mu);
  auto key = std::make_tuple(n0, n1, sign);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  // FFTW_ESTIMATE leaves the scratch buffer untouched
  std::vector<std::complex<double>> scratch(static_cast<size_t>(n0) * n1);
  auto* p = reinterpret_cast<fftw_complex*>(scratch.data());
  unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  fftw_plan plan = n1 > 0 ? fftw_plan_dft_2d(n0, n1, p, p, sign, flags)
                          : fftw_plan_dft_1d(n0, p, p, sign, flags);
  cache.emplace(key, plan);
  return plan;
}

}  // namespace

void fft_2d(std::complex<double>* data, int n0, int n1, int sign) {
  auto* p = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(get_plan(n0, n1, sign), p, p);
}

void fft_1d(std::complex<double>* data, int n, int sign) {
  auto* p = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(get_plan(n, 0, sign), p, p);
}

int fft_size_at_least(int n) {
  for (int m = n;; ++m) {
    int r = m;
    for (int f : {2, 3, 5})
      while (r % f == 0) r /= f;
    if (r == 1) return m;
  }
}

}  // namespace zk
