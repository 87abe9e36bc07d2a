#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace mcwave {

using cplx = std::complex<double>;

/// A finite block of complex baseband samples. `sample_rate` is expressed
/// relative to the nominal rate: 1.0 for critically sampled frames, 6.0
/// after sixfold interpolation.
struct ComplexSignal {
  std::vector<cplx> samples;
  double sample_rate = 1.0;

  ComplexSignal() = default;
  explicit ComplexSignal(std::vector<cplx> s, double rate = 1.0)
      : samples(std::move(s)), sample_rate(rate) {}

  std::size_t size() const { return samples.size(); }

  double energy() const {
    double e = 0.0;
    for (const cplx& v : samples) e += std::norm(v);
    return e;
  }
};

/// Thrown when Zak-domain orthogonalization hits a coefficient pair with
/// zero magnitude (the pulse cannot be orthogonalized).
class degenerate_pulse_error : public std::runtime_error {
 public:
  explicit degenerate_pulse_error(const std::string& what)
      : std::runtime_error(what) {}
};

/// Thrown when a matrix inversion or a per-bin channel division meets a
/// (numerically) singular operator.
class singular_matrix_error : public std::runtime_error {
 public:
  explicit singular_matrix_error(const std::string& what)
      : std::runtime_error(what) {}
};

/// File/stream error while writing experiment results.
class io_error : public std::runtime_error {
 public:
  explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mcwave
