#include "maskbench/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>

#include "maskbench/errors.hpp"

namespace maskbench {

namespace {

// FFTW planning is not thread-safe; executing a plan on fresh arrays via the
// new-array interface is. Plans are created FFTW_UNALIGNED so they accept
// std::vector storage, and cached per transform size.
std::mutex plan_mutex;
std::map<int, fftw_plan> fwd_plans;
std::map<int, fftw_plan> inv_plans;

fftw_plan forward_plan(int n) {
  std::lock_guard<std::mutex> lock(plan_mutex);
  auto it = fwd_plans.find(n);
  if (it != fwd_plans.end()) return it->second;
  std::vector<double> in(static_cast<std::size_t>(n));
  std::vector<fftw_complex> out(static_cast<std::size_t>(n) / 2 + 1);
  fftw_plan p = fftw_plan_dft_r2c_1d(n, in.data(), out.data(),
                                     FFTW_ESTIMATE | FFTW_UNALIGNED);
  fwd_plans.emplace(n, p);
  return p;
}

fftw_plan inverse_plan(int n) {
  std::lock_guard<std::mutex> lock(plan_mutex);
  auto it = inv_plans.find(n);
  if (it != inv_plans.end()) return it->second;
  std::vector<fftw_complex> in(static_cast<std::size_t>(n) / 2 + 1);
  std::vector<double> out(static_cast<std::size_t>(n));
  fftw_plan p = fftw_plan_dft_c2r_1d(n, in.data(), out.data(),
                                     FFTW_ESTIMATE | FFTW_UNALIGNED);
  inv_plans.emplace(n, p);
  return p;
}

}  // namespace

std::vector<std::complex<double>> rfft(const std::vector<double>& input, int n) {
  if (n <= 0) throw InputError("rfft size must be positive");
  std::vector<double> in(static_cast<std::size_t>(n), 0.0);
  std::size_t copy = std::min(input.size(), static_cast<std::size_t>(n));
  std::memcpy(in.data(), input.data(), copy * sizeof(double));

  std::vector<std::complex<double>> out(static_cast<std::size_t>(n) / 2 + 1);
  fftw_plan p = forward_plan(n);
  fftw_execute_dft_r2c(p, in.data(), reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

std::vector<double> irfft(const std::vector<std::complex<double>>& bins, int n) {
  if (n <= 0) throw InputError("irfft size must be positive");
  if (bins.size() != static_cast<std::size_t>(n) / 2 + 1) {
    throw InputError("irfft bin count does not match transform size");
  }
  // c2r destroys its input, so work on a copy.
  std::vector<std::complex<double>> in(bins);
  std::vector<double> out(static_cast<std::size_t>(n));
  fftw_plan p = inverse_plan(n);
  fftw_execute_dft_c2r(p, reinterpret_cast<fftw_complex*>(in.data()), out.data());
  const double scale = 1.0 / n;
  for (double& v : out) v *= scale;
  return out;
}

}  // namespace maskbench
