#include "mcwave/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "mcwave/dsp.hpp"

namespace mcwave {
namespace {

double sinc(double x) {
  if (std::abs(x) < 1e-12) return 1.0;
  return std::sin(M_PI * x) / (M_PI * x);
}

double raised_cosine(double t, double a) {
  if (a > 0.0 && std::abs(std::abs(2.0 * a * t) - 1.0) < 1e-9) {
    return (M_PI / 4.0) * sinc(1.0 / (2.0 * a));
  }
  return sinc(t) * std::cos(M_PI * a * t) / (1.0 - (2.0 * a * t) * (2.0 * a * t));
}

constexpr double kDbFloor = 1e-300;

}  // namespace

double aliased_sinc(double x, long order) {
  if (order < 1) throw std::invalid_argument("aliased_sinc: order must be >= 1");
  const double r = std::round(x);
  if (std::abs(x - r) < 1e-10) {
    const long xi = static_cast<long>(r);
    return (xi * (order - 1)) % 2 == 0 ? 1.0 : -1.0;
  }
  return std::sin(M_PI * order * x) / (order * std::sin(M_PI * x));
}

PsdEstimate analytic_psd(const AnalyticPsdConfig& cfg, const std::vector<double>& freqs,
                         bool equal_bandwidth_packing, bool normalize, ExecMode exec) {
  if (freqs.empty()) throw std::invalid_argument("analytic_psd: empty frequency grid");
  if (cfg.carriers_used < 1 || cfg.carriers_total < cfg.carriers_used ||
      cfg.total_samples <= cfg.guard_samples || cfg.guard_samples < 0 || cfg.slot_factor < 1) {
    throw std::invalid_argument("analytic_psd: bad config");
  }

  int count = cfg.carriers_used;
  double spacing = 1.0 / cfg.carriers_total;
  long block = cfg.total_samples;
  if (equal_bandwidth_packing) {
    count = cfg.slot_factor * cfg.carriers_used;
    spacing /= cfg.slot_factor;
    block = cfg.slot_factor * (cfg.total_samples - cfg.guard_samples) + cfg.guard_samples;
  }
  const double lo = -0.5 * (count - 1) * spacing;
  const double len = static_cast<double>(block);

  auto sum_at = [&](double f) {
    double acc = 0.0;
    for (int j = 0; j < count; ++j) {
      const double s = sinc((f - (lo + j * spacing)) * len);
      acc += s * s;
    }
    return acc;
  };

  PsdEstimate psd;
  psd.freqs = freqs;
  psd.values_db.resize(freqs.size());
  const long n = static_cast<long>(freqs.size());
#pragma omp parallel for schedule(static) num_threads(exec_threads(exec))
  for (long i = 0; i < n; ++i) {
    psd.values_db[i] = 10.0 * std::log10(std::max(sum_at(freqs[i]), kDbFloor));
  }

  if (normalize) {
    // The true maximum sits at a carrier center; scan them.
    double peak = 0.0;
    for (int j = 0; j < count; ++j) peak = std::max(peak, sum_at(lo + j * spacing));
    const double peak_db = 10.0 * std::log10(peak);
    for (double& v : psd.values_db) v -= peak_db;
    // guard against rounding: pin the max to exactly 0
    const double mx = *std::max_element(psd.values_db.begin(), psd.values_db.end());
    if (mx > 0.0) {
      for (double& v : psd.values_db) v -= mx;
    }
    psd.peak_normalized = true;
  }
  return psd;
}

std::vector<double> interp_filter_taps(int factor, int filter_span, double rolloff) {
  const int len = filter_span * factor + 1;
  std::vector<double> taps(static_cast<std::size_t>(len));
  double sum = 0.0;
  for (int i = 0; i < len; ++i) {
    const double t = (i - (len - 1) / 2.0) / factor;
    taps[i] = raised_cosine(t, rolloff);
    sum += taps[i];
  }
  const double scale = factor / sum;  // DC gain = factor preserves amplitude
  for (double& v : taps) v *= scale;
  return taps;
}

ComplexSignal oversample_truncate(const ComplexSignal& signal, int factor,
                                  int filter_span, double rolloff) {
  if (factor < 1) throw std::invalid_argument("oversample_truncate: factor must be >= 1");
  if (signal.size() == 0) throw std::invalid_argument("oversample_truncate: empty signal");
  if (factor == 1) return signal;
  if (filter_span % 2 == 0) {
    throw std::invalid_argument("oversample_truncate: filter span must be odd");
  }
  const long n_in = static_cast<long>(signal.size());
  const long n_out = n_in * factor;
  const long flen = static_cast<long>(filter_span) * factor + 1;
  if (n_out < flen) {
    throw std::invalid_argument("oversample_truncate: signal shorter than the filter");
  }
  const std::vector<double> taps = interp_filter_taps(factor, filter_span, rolloff);
  const long delay = (flen - 1) / 2;

  // Polyphase gather: output sample i of the trimmed convolution touches only
  // the input samples l with h[i + delay - factor*l] inside the filter.
  ComplexSignal out;
  out.samples.assign(static_cast<std::size_t>(n_out), cplx(0.0, 0.0));
  out.sample_rate = signal.sample_rate * factor;
  for (long i = 0; i < n_out; ++i) {
    const long shifted = i + delay;
    long l_min = (shifted - (flen - 1) + factor - 1) / factor;  // ceil
    long l_max = shifted / factor;
    l_min = std::max(l_min, 0L);
    l_max = std::min(l_max, n_in - 1);
    cplx acc(0.0, 0.0);
    for (long l = l_min; l <= l_max; ++l) {
      acc += signal.samples[l] * taps[shifted - factor * l];
    }
    out.samples[i] = acc;
  }
  return out;
}

std::vector<double> periodogram_linear(const std::vector<ComplexSignal>& frames,
                                       ExecMode exec) {
  if (frames.empty()) throw std::invalid_argument("periodogram: no frames");
  const std::size_t n = frames[0].size();
  if (n == 0) throw std::invalid_argument("periodogram: empty frame");
  for (const auto& f : frames) {
    if (f.size() != n) throw std::invalid_argument("periodogram: frame length mismatch");
  }

  const long count = static_cast<long>(frames.size());
  std::vector<double> acc(n, 0.0);
  if (exec == ExecMode::Serial) {
    for (long f = 0; f < count; ++f) {
      std::vector<cplx> spec = dft(frames[f].samples, false);
      for (std::size_t b = 0; b < n; ++b) acc[b] += std::norm(spec[b]);
    }
  } else {
    std::vector<std::vector<double>> per_frame(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(dynamic) num_threads(exec_threads(exec))
    for (long f = 0; f < count; ++f) {
      std::vector<cplx> spec = dft(frames[f].samples, false);
      std::vector<double> p(n);
      for (std::size_t b = 0; b < n; ++b) p[b] = std::norm(spec[b]);
      per_frame[f] = std::move(p);
    }
    const long nb = static_cast<long>(n);
#pragma omp parallel for schedule(static) num_threads(exec_threads(exec))
    for (long b = 0; b < nb; ++b) {
      double s = 0.0;
      for (long f = 0; f < count; ++f) s += per_frame[f][b];  // fixed order
      acc[b] = s;
    }
  }
  const double inv = 1.0 / static_cast<double>(count);
  for (double& v : acc) v *= inv;
  return acc;
}

PsdEstimate periodogram_psd(const std::vector<ComplexSignal>& frames, ExecMode exec) {
  std::vector<double> lin = periodogram_linear(frames, exec);
  const long n = static_cast<long>(lin.size());
  const double rate = frames[0].sample_rate;

  PsdEstimate psd;
  const bool even = (n % 2 == 0);
  const long start = even ? 1 : 0;  // drop the unmatched -Nyquist bin
  const long half = n / 2;
  psd.freqs.reserve(n - start);
  psd.values_db.reserve(n - start);
  for (long s = start; s < n; ++s) {
    const long bin = (s + n - half) % n;  // fft-shift
    const double f = rate * static_cast<double>(s - half) / static_cast<double>(n);
    psd.freqs.push_back(f);
    psd.values_db.push_back(10.0 * std::log10(std::max(lin[bin], kDbFloor)));
  }
  peak_normalize(psd);
  return psd;
}

void peak_normalize(PsdEstimate& psd) {
  if (psd.values_db.empty()) return;
  const double mx = *std::max_element(psd.values_db.begin(), psd.values_db.end());
  for (double& v : psd.values_db) v -= mx;
  psd.peak_normalized = true;
}

double psd_band_average_db(const PsdEstimate& psd, double center, double half_width) {
  double acc = 0.0;
  long count = 0;
  for (std::size_t i = 0; i < psd.freqs.size(); ++i) {
    if (std::abs(psd.freqs[i] - center) <= half_width) {
      acc += std::pow(10.0, psd.values_db[i] / 10.0);
      ++count;
    }
  }
  if (count == 0) throw std::invalid_argument("psd_band_average_db: empty band");
  return 10.0 * std::log10(acc / count);
}

}  // namespace mcwave
