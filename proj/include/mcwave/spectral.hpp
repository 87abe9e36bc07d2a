#pragma once

#include <vector>

#include "mcwave/parallel.hpp"
#include "mcwave/types.hpp"

namespace mcwave {

/// PSD samples on a normalized-frequency grid (f / Fs). When
/// `peak_normalized` the maximum of values_db is exactly 0.
struct PsdEstimate {
  std::vector<double> freqs;
  std::vector<double> values_db;
  bool peak_normalized = false;
};

/// Closed-form PSD model of a CP block transform: a superposition of squared
/// sinc kernels, one per subcarrier.
///   carriers_used     carriers actually summed (guards excluded)
///   carriers_total    defines the subcarrier spacing 1/(K_total)
///   total_samples     block length including the guard interval (L)
///   guard_samples     guard-interval part of L
///   slot_factor       M: the equal-bandwidth variant packs M*K carriers at
///                     spacing 1/(M*K) with block length M*(L-guard)+guard
struct AnalyticPsdConfig {
  int carriers_used = 0;
  int carriers_total = 0;
  long total_samples = 0;
  long guard_samples = 0;
  int slot_factor = 1;
  double symbol_variance = 1.0;
};

/// Periodic (aliased) sinc, the Dirichlet kernel of order L:
/// sin(pi L x) / (L sin(pi x)), continued to (-1)^(x(L-1)) at integer x.
double aliased_sinc(double x, long order);

/// Evaluates the closed-form PSD on `freqs` (units of Fs). Carriers form a
/// symmetric block centered on f = 0. The per-carrier kernel is the
/// non-periodic sinc((f - f_k) * L): the block transform seen behind an
/// interpolating front end, which is what out-of-band levels beyond the
/// critical rate measure. With `normalize` each curve is referenced to its
/// own peak (0 dB); without it, curves share the leading multiplier so two
/// configurations can be compared directly.
PsdEstimate analytic_psd(const AnalyticPsdConfig& cfg, const std::vector<double>& freqs,
                         bool equal_bandwidth_packing, bool normalize = true,
                         ExecMode exec = ExecMode::Parallel);

/// Zero-stuff by `factor` and convolve with a raised-cosine interpolation
/// filter spanning `filter_span` input samples (span*factor+1 taps, DC gain
/// = factor so amplitudes are preserved), then trim the transient
/// symmetrically so the output has exactly factor * input length samples.
ComplexSignal oversample_truncate(const ComplexSignal& signal, int factor,
                                  int filter_span, double rolloff);

/// Raised-cosine interpolation filter taps used by oversample_truncate.
std::vector<double> interp_filter_taps(int factor, int filter_span, double rolloff);

/// Mean periodogram across frames, unshifted bins, linear scale:
/// mean_f |DFT_unitary(frame_f)|^2 per bin. Parseval: the bin sum equals the
/// mean frame energy. Serial and Parallel paths accumulate frames in the
/// same order and match bit for bit.
std::vector<double> periodogram_linear(const std::vector<ComplexSignal>& frames,
                                       ExecMode exec = ExecMode::Parallel);

/// Periodogram as a peak-normalized dB PSD on a symmetric frequency grid
/// spanning +-(rate/2). For even frame lengths the unmatched -Nyquist bin is
/// dropped so the grid is exactly symmetric about 0.
PsdEstimate periodogram_psd(const std::vector<ComplexSignal>& frames,
                            ExecMode exec = ExecMode::Parallel);

/// Rescales values_db so the maximum is exactly 0 dB. Idempotent.
void peak_normalize(PsdEstimate& psd);

/// Mean of the linear-scale PSD over |f - center| <= half_width, in dB.
double psd_band_average_db(const PsdEstimate& psd, double center, double half_width);

}  // namespace mcwave
