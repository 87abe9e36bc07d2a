#include "mcwave/pulse.hpp"

#include <algorithm>
#include <cmath>

#include "mcwave/dsp.hpp"
#include "mcwave/spectral.hpp"

namespace mcwave {
namespace {

double sinc(double x) {
  if (std::abs(x) < 1e-12) return 1.0;
  return std::sin(M_PI * x) / (M_PI * x);
}

// Raised-cosine impulse response, t in symbol periods.
double raised_cosine(double t, double a) {
  if (a > 0.0 && std::abs(std::abs(2.0 * a * t) - 1.0) < 1e-9) {
    return (M_PI / 4.0) * sinc(1.0 / (2.0 * a));
  }
  return sinc(t) * std::cos(M_PI * a * t) / (1.0 - (2.0 * a * t) * (2.0 * a * t));
}

double root_raised_cosine(double t, double a) {
  if (std::abs(t) < 1e-12) return 1.0 - a + 4.0 * a / M_PI;
  if (a > 0.0 && std::abs(std::abs(4.0 * a * t) - 1.0) < 1e-9) {
    const double s = M_PI / (4.0 * a);
    return (a / std::sqrt(2.0)) *
           ((1.0 + 2.0 / M_PI) * std::sin(s) + (1.0 - 2.0 / M_PI) * std::cos(s));
  }
  const double num = std::sin(M_PI * t * (1.0 - a)) +
                     4.0 * a * t * std::cos(M_PI * t * (1.0 + a));
  const double den = M_PI * t * (1.0 - (4.0 * a * t) * (4.0 * a * t));
  return num / den;
}

void normalize_energy(std::vector<double>& taps) {
  double e = 0.0;
  for (double v : taps) e += v * v;
  const double s = 1.0 / std::sqrt(e);
  for (double& v : taps) v *= s;
}

}  // namespace

double PulsePrototype::energy() const {
  double e = 0.0;
  for (double v : taps) e += v * v;
  return e;
}

PulsePrototype build_prototype(PulseKind kind, int subcarriers, int timeslots,
                               double rolloff, double gauss_bt) {
  if (subcarriers < 2 || timeslots < 1) {
    throw std::invalid_argument("build_prototype: need subcarriers >= 2, timeslots >= 1");
  }
  if ((kind == PulseKind::RaisedCosine || kind == PulseKind::RootRaisedCosine) &&
      (rolloff < 0.0 || rolloff > 1.0)) {
    throw std::invalid_argument("build_prototype: rolloff must be in [0, 1]");
  }
  const int n = subcarriers * timeslots;
  PulsePrototype p;
  p.kind = kind;
  p.rolloff = rolloff;
  p.subcarriers = subcarriers;
  p.timeslots = timeslots;
  p.taps.assign(static_cast<std::size_t>(n), 0.0);

  switch (kind) {
    case PulseKind::Rectangular:
      for (int i = 0; i < subcarriers; ++i) p.taps[i] = 1.0;
      break;
    case PulseKind::RaisedCosine:
      for (int i = 0; i < n; ++i) {
        const double t = (i - n / 2.0) / subcarriers;
        p.taps[i] = raised_cosine(t, rolloff);
      }
      break;
    case PulseKind::RootRaisedCosine:
      for (int i = 0; i < n; ++i) {
        const double t = (i - n / 2.0) / subcarriers;
        p.taps[i] = root_raised_cosine(t, rolloff);
      }
      break;
    case PulseKind::Dirichlet:
      // Periodic sinc: flat over `timeslots` frequency bins, zero at every
      // nonzero multiple of the subcarrier period.
      for (int i = 0; i < n; ++i) {
        const double x = (i - n / 2.0) / n;
        p.taps[i] = aliased_sinc(x, timeslots);
      }
      break;
    case PulseKind::Gaussian: {
      const double a = 2.0 * M_PI * M_PI * gauss_bt * gauss_bt / std::log(2.0);
      for (int i = 0; i < n; ++i) {
        const double t = (i - n / 2.0) / subcarriers;
        p.taps[i] = std::exp(-a * t * t);
      }
      break;
    }
  }
  normalize_energy(p.taps);
  return p;
}

PulsePrototype dzt_orthogonalize(const PulsePrototype& p) {
  const int k = p.subcarriers;
  const int m = p.timeslots;
  if (k % 2 != 0) throw std::invalid_argument("dzt_orthogonalize: subcarriers must be even");
  if (static_cast<int>(p.taps.size()) != k * m) {
    throw std::invalid_argument("dzt_orthogonalize: tap length mismatch");
  }
  const int step = k / 2;    // time step of the offset lattice
  const int blocks = 2 * m;  // taps split into `blocks` rows of `step` samples

  // Zak transform: for each offset u, DFT across the strided samples.
  std::vector<std::vector<cplx>> zak(static_cast<std::size_t>(step));
  for (int u = 0; u < step; ++u) {
    std::vector<cplx> col(static_cast<std::size_t>(blocks));
    for (int l = 0; l < blocks; ++l) col[l] = p.taps[u + l * step];
    zak[u] = dft_raw(col, false);
  }

  const double tol = 1e-12;
  for (int u = 0; u < step; ++u) {
    std::vector<cplx>& z = zak[u];
    std::vector<double> pair_mag(static_cast<std::size_t>(blocks));
    for (int w = 0; w < blocks; ++w) {
      pair_mag[w] = std::norm(z[w]) + std::norm(z[(w + m) % blocks]);
    }
    for (int w = 0; w < blocks; ++w) {
      if (pair_mag[w] < tol) {
        throw degenerate_pulse_error("dzt_orthogonalize: zero Zak coefficient pair");
      }
      z[w] /= std::sqrt(pair_mag[w]);
    }
  }

  PulsePrototype q = p;
  for (int u = 0; u < step; ++u) {
    std::vector<cplx> col = dft_raw(zak[u], true);
    for (int l = 0; l < blocks; ++l) {
      q.taps[u + l * step] = col[l].real() / blocks;
    }
  }
  normalize_energy(q.taps);
  q.orthogonalized = true;
  return q;
}

WindowTaps edge_window(int total_len, int ramp_len) {
  if (ramp_len < 0 || total_len < 0 || 2 * ramp_len > total_len) {
    throw std::invalid_argument("edge_window: ramp does not fit");
  }
  WindowTaps w;
  w.ramp_len = ramp_len;
  w.taps.assign(static_cast<std::size_t>(total_len), 1.0);
  for (int i = 0; i < ramp_len; ++i) {
    const double v = 0.5 * (1.0 - std::cos(M_PI * (i + 1) / (ramp_len + 1)));
    w.taps[i] = v;
    w.taps[total_len - 1 - i] = v;
  }
  return w;
}

}  // namespace mcwave
