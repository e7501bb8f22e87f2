#pragma once

#include <complex>
#include <vector>

namespace maskbench {

/// Real-to-complex FFT of size n (input zero-padded or truncated to n);
/// returns n/2 + 1 bins. Backed by FFTW3 with plans cached per size; safe to
/// call concurrently.
std::vector<std::complex<double>> rfft(const std::vector<double>& input, int n);

/// Inverse of rfft: n/2 + 1 bins back to n real samples, scaled so that
/// irfft(rfft(x, n), n) == x.
std::vector<double> irfft(const std::vector<std::complex<double>>& bins, int n);

}  // namespace maskbench
