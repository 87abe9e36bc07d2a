// Brute-force reference implementations used as independent oracles. These
// evaluate the defining sums term by term with no shared code paths with the
// library kernels they check.
#pragma once

#include <cmath>
#include <complex>
#include <vector>

namespace oracles {

using cplx = std::complex<double>;

inline std::vector<cplx> direct_dft(const std::vector<cplx>& x, bool inverse) {
  const std::size_t n = x.size();
  const double sign = inverse ? 1.0 : -1.0;
  std::vector<cplx> out(n, cplx(0.0, 0.0));
  for (std::size_t k = 0; k < n; ++k) {
    cplx acc(0.0, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double a = sign * 2.0 * M_PI * static_cast<double>(k) * i / n;
      acc += x[i] * cplx(std::cos(a), std::sin(a));
    }
    out[k] = acc / std::sqrt(static_cast<double>(n));
  }
  return out;
}

// Term-by-term circular multicarrier synthesis over all (k, m).
inline std::vector<cplx> gfdm_direct(const std::vector<cplx>& grid_kmajor,
                                     const std::vector<double>& pulse, int k_total,
                                     int m_total) {
  const int n = k_total * m_total;
  std::vector<cplx> x(n, cplx(0.0, 0.0));
  for (int i = 0; i < n; ++i) {
    cplx acc(0.0, 0.0);
    for (int k = 0; k < k_total; ++k) {
      for (int m = 0; m < m_total; ++m) {
        const int idx = ((i - m * k_total) % n + n) % n;
        const double a = -2.0 * M_PI * k * i / static_cast<double>(k_total);
        acc += grid_kmajor[static_cast<std::size_t>(k) * m_total + m] * pulse[idx] *
               cplx(std::cos(a), std::sin(a));
      }
    }
    x[i] = acc;
  }
  return x;
}

// Offset-QAM atom with the pulse-center modulation reference.
inline std::vector<cplx> coqam_atom(const std::vector<double>& pulse, int k_total,
                                    int m_total, int k, int m) {
  const int n = k_total * m_total;
  std::vector<cplx> g(n);
  for (int i = 0; i < n; ++i) {
    const int idx = ((i - m * (k_total / 2)) % n + n) % n;
    const double a = 2.0 * M_PI * k * (i - n / 2.0) / k_total + M_PI_2 * (k + m);
    g[i] = pulse[idx] * cplx(std::cos(a), std::sin(a));
  }
  return g;
}

inline std::vector<cplx> coqam_direct(const std::vector<double>& grid_kmajor,
                                      const std::vector<double>& pulse, int k_total,
                                      int m_total) {
  const int n = k_total * m_total;
  std::vector<cplx> x(n, cplx(0.0, 0.0));
  for (int k = 0; k < k_total; ++k) {
    for (int m = 0; m < 2 * m_total; ++m) {
      const double d = grid_kmajor[static_cast<std::size_t>(k) * 2 * m_total + m];
      if (d == 0.0) continue;
      const std::vector<cplx> g = coqam_atom(pulse, k_total, m_total, k, m);
      for (int i = 0; i < n; ++i) x[i] += d * g[i];
    }
  }
  return x;
}

// Real-field Gram deviation max |Re<g_i, g_j> - delta_ij| over all atom pairs.
inline double coqam_gram_deviation(const std::vector<double>& pulse, int k_total,
                                   int m_total) {
  std::vector<std::vector<cplx>> atoms;
  for (int k = 0; k < k_total; ++k) {
    for (int m = 0; m < 2 * m_total; ++m) {
      atoms.push_back(coqam_atom(pulse, k_total, m_total, k, m));
    }
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    for (std::size_t j = i; j < atoms.size(); ++j) {
      cplx acc(0.0, 0.0);
      for (std::size_t s = 0; s < atoms[i].size(); ++s) {
        acc += atoms[i][s] * std::conj(atoms[j][s]);
      }
      const double want = i == j ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(acc.real() - want));
    }
  }
  return worst;
}

// Time-domain raised cosine evaluated straight from the closed form.
inline double rc_reference(double t, double a) {
  const double sinc = std::abs(t) < 1e-12 ? 1.0 : std::sin(M_PI * t) / (M_PI * t);
  const double denom = 1.0 - (2.0 * a * t) * (2.0 * a * t);
  if (std::abs(denom) < 1e-9) {
    return (M_PI / 4.0) * (std::sin(M_PI / (2.0 * a)) / (M_PI / (2.0 * a)));
  }
  return sinc * std::cos(M_PI * a * t) / denom;
}

// Squared-sinc superposition evaluated term by term.
inline double psd_sum_reference(double freq, int carriers, double spacing, double block_len) {
  double acc = 0.0;
  const double lo = -0.5 * (carriers - 1) * spacing;
  for (int j = 0; j < carriers; ++j) {
    const double u = (freq - (lo + j * spacing)) * block_len;
    const double s = std::abs(u) < 1e-12 ? 1.0 : std::sin(M_PI * u) / (M_PI * u);
    acc += s * s;
  }
  return acc;
}

}  // namespace oracles
