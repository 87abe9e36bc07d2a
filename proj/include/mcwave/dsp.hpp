#pragma once

#include <span>
#include <vector>

#include "mcwave/types.hpp"

namespace mcwave {

/// Unitary discrete Fourier transform (1/sqrt(N) scaling both directions),
/// any length >= 1. Power-of-two lengths use an iterative radix-2 kernel,
/// everything else goes through Bluestein's chirp convolution, so lengths
/// like 1152 and 1184 are exact to machine precision.
std::vector<cplx> dft(std::span<const cplx> input, bool inverse);

inline ComplexSignal dft(const ComplexSignal& signal, bool inverse) {
  return ComplexSignal(dft(std::span<const cplx>(signal.samples), inverse),
                       signal.sample_rate);
}

/// Raw (unscaled) forward/inverse DFT: forward multiplies by sqrt(N)
/// relative to the unitary convention.
std::vector<cplx> dft_raw(std::span<const cplx> input, bool inverse);

/// output[i] = input[(i - shift) mod N]; shift may be negative or wrap.
template <typename T>
std::vector<T> circular_shift(const std::vector<T>& input, long shift) {
  const long n = static_cast<long>(input.size());
  if (n == 0) return {};
  long s = shift % n;
  if (s < 0) s += n;
  std::vector<T> out(input.size());
  for (long i = 0; i < n; ++i) {
    long j = i - s;
    if (j < 0) j += n;
    out[static_cast<std::size_t>(i)] = input[static_cast<std::size_t>(j)];
  }
  return out;
}

/// Gaussian tail probability Q(x) = P(N(0,1) > x).
double qfunc(double x);

}  // namespace mcwave
