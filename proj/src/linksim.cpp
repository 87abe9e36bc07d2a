#include "mcwave/linksim.hpp"

#include <algorithm>
#include <cmath>

#include "mcwave/dsp.hpp"
#include "mcwave/parallel.hpp"

namespace mcwave {
namespace {

constexpr double kSingularTol = 1e-12;

std::vector<cplx> strip_cp(const ComplexSignal& rx, const ModemConfig& cfg) {
  const std::size_t need = static_cast<std::size_t>(cfg.frame_len());
  if (rx.size() < need) {
    throw std::invalid_argument("receive: frame shorter than config frame length");
  }
  return {rx.samples.begin() + cfg.cp_len, rx.samples.begin() + cfg.frame_len()};
}

// Per-bin zero-forcing over the full block, back to time domain.
std::vector<cplx> fde_equalize(std::vector<cplx> block, const std::vector<cplx>& ch_freq) {
  if (ch_freq.size() != block.size()) {
    throw std::invalid_argument("receive: channel response length mismatch");
  }
  std::vector<cplx> spec = dft(block, false);
  for (std::size_t b = 0; b < spec.size(); ++b) {
    if (std::abs(ch_freq[b]) < kSingularTol) {
      throw singular_matrix_error("receive: channel response has a null bin");
    }
    spec[b] /= ch_freq[b];
  }
  return dft(spec, true);
}

}  // namespace

int ChannelSpec::memory() const {
  int mem = 0;
  for (const auto& t : taps) mem = std::max(mem, t.delay);
  return mem;
}

double ChannelSpec::tap_power() const {
  double p = 0.0;
  for (const auto& t : taps) p += std::norm(t.gain);
  return p;
}

std::vector<ChannelTap> cost207_hilly_terrain(std::uint64_t seed, double sample_rate_hz) {
  static constexpr double delays_us[6] = {0.0, 0.1, 0.3, 0.5, 15.0, 17.2};
  static constexpr double powers_db[6] = {0.0, -1.5, -4.5, -7.5, -8.0, -17.7};
  Rng rng(seed, 0xC057207ULL);
  std::vector<ChannelTap> taps(6);
  double total = 0.0;
  for (int i = 0; i < 6; ++i) {
    taps[i].delay = static_cast<int>(std::lround(delays_us[i] * 1e-6 * sample_rate_hz));
    const double p = std::pow(10.0, powers_db[i] / 10.0);
    taps[i].gain = std::sqrt(p) * rng.complex_gaussian();
    total += std::norm(taps[i].gain);
  }
  const double scale = 1.0 / std::sqrt(total);
  for (auto& t : taps) t.gain *= scale;
  return taps;
}

ComplexSignal apply_channel(const ComplexSignal& signal, const ChannelSpec& ch, Rng& rng) {
  if (signal.size() == 0) throw std::invalid_argument("apply_channel: empty signal");
  const int mem = ch.memory();
  if (static_cast<int>(signal.size()) <= mem) {
    throw std::invalid_argument("apply_channel: signal shorter than channel memory");
  }
  const std::size_t n_out = signal.size() + static_cast<std::size_t>(mem);
  std::vector<cplx> out(n_out, cplx(0.0, 0.0));
  for (const auto& tap : ch.taps) {
    for (std::size_t i = 0; i < signal.size(); ++i) {
      out[i + tap.delay] += tap.gain * signal.samples[i];
    }
  }
  if (ch.cfo_frac != 0.0) {
    const double step = 2.0 * M_PI * ch.cfo_frac / ch.cfo_ref_len;
    for (std::size_t i = 0; i < n_out; ++i) {
      out[i] *= cplx(std::cos(step * i), std::sin(step * i));
    }
  }
  if (ch.noise_var > 0.0) {
    const double s = std::sqrt(ch.noise_var);
    for (auto& v : out) v += s * rng.complex_gaussian();
  }
  return ComplexSignal(std::move(out), signal.sample_rate);
}

std::vector<cplx> channel_freq_response(const std::vector<ChannelTap>& taps, int nbins) {
  std::vector<cplx> h(static_cast<std::size_t>(nbins), cplx(0.0, 0.0));
  for (int b = 0; b < nbins; ++b) {
    cplx acc(0.0, 0.0);
    for (const auto& t : taps) {
      const double a = -2.0 * M_PI * static_cast<double>(b) * t.delay / nbins;
      acc += t.gain * cplx(std::cos(a), std::sin(a));
    }
    h[b] = acc;
  }
  return h;
}

SymbolGrid ofdm_receive(const ComplexSignal& rx, const ModemConfig& cfg,
                        const std::vector<cplx>& ch_freq) {
  if (cfg.timeslots != 1) {
    throw std::invalid_argument("ofdm_receive: single-slot config expected");
  }
  std::vector<cplx> block = strip_cp(rx, cfg);
  std::vector<cplx> spec = dft(block, false);
  const int k_total = cfg.subcarriers;
  if (static_cast<int>(ch_freq.size()) != k_total) {
    throw std::invalid_argument("ofdm_receive: channel response length mismatch");
  }
  SymbolGrid grid(k_total, 1);
  for (int k : cfg.occupied) {
    // tone k of the e^{-j2pi kn/K} synthesis lands in DFT bin (-k) mod K
    const int bin = (k_total - k) % k_total;
    if (std::abs(ch_freq[bin]) < kSingularTol) {
      throw singular_matrix_error("ofdm_receive: channel null on an occupied bin");
    }
    grid.at(k, 0) = spec[bin] / ch_freq[bin];
  }
  return grid;
}

GfdmDemodulator::GfdmDemodulator(const ModemConfig& cfg) : cfg_(cfg) {
  cfg_.validate();
  const int k_total = cfg_.subcarriers;
  const int m_total = cfg_.timeslots;
  const int n = cfg_.block_len();
  columns_ = CMatrix(n, n);  // row = column index (column-major storage)
  const long cols = n;
#pragma omp parallel for schedule(static)
  for (long col = 0; col < cols; ++col) {
    const int k = static_cast<int>(col) / m_total;
    const int m = static_cast<int>(col) % m_total;
    cplx* dst = &columns_.at(static_cast<int>(col), 0);
    const double step = -2.0 * M_PI * k / k_total;
    for (int i = 0; i < n; ++i) {
      const int pi_idx = (i - m * k_total % n + n) % n;
      dst[i] = cfg_.pulse.taps[pi_idx] * cplx(std::cos(step * i), std::sin(step * i));
    }
  }
  occupied_cols_.reserve(cfg_.occupied.size() * m_total);
  for (int k : cfg_.occupied) {
    for (int m = 0; m < m_total; ++m) occupied_cols_.push_back(k * m_total + m);
  }
}

void GfdmDemodulator::prepare(GfdmRxMode mode) const {
  if (mode == GfdmRxMode::Zf) ensure_zf();
  if (mode == GfdmRxMode::MfDsic) ensure_gram();
}

void GfdmDemodulator::ensure_zf() const {
  std::call_once(zf_once_, [this] {
    const int n = cfg_.block_len();
    CMatrix a(n, n);
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) a.at(r, c) = columns_.at(c, r);
    }
    lu_ = std::make_shared<const LuDecomposition>(std::move(a));
  });
}

void GfdmDemodulator::ensure_gram() const {
  std::call_once(gram_once_, [this] { build_gram(); });
}

void GfdmDemodulator::build_gram() const {
  const int n = cfg_.block_len();
  const long occ = static_cast<long>(occupied_cols_.size());
  auto gram = std::make_shared<CMatrix>(static_cast<int>(occ), static_cast<int>(occ));
#pragma omp parallel for schedule(static)
  for (long j = 0; j < occ; ++j) {
    const cplx* aj = &columns_.at(occupied_cols_[j], 0);
    for (long i = 0; i < occ; ++i) {
      const cplx* ai = &columns_.at(occupied_cols_[i], 0);
      cplx acc(0.0, 0.0);
      for (int s = 0; s < n; ++s) acc += std::conj(aj[s]) * ai[s];
      gram->at(static_cast<int>(j), static_cast<int>(i)) = acc;
    }
  }
  gram_occ_ = std::move(gram);
}

std::vector<cplx> GfdmDemodulator::equalize(const ComplexSignal& rx,
                                            const std::vector<cplx>& ch_freq) const {
  return fde_equalize(strip_cp(rx, cfg_), ch_freq);
}

SymbolGrid GfdmDemodulator::receive(const ComplexSignal& rx,
                                    const std::vector<cplx>& ch_freq, GfdmRxMode mode,
                                    int dsic_iters) const {
  const int n = cfg_.block_len();
  const int m_total = cfg_.timeslots;
  std::vector<cplx> y = equalize(rx, ch_freq);

  SymbolGrid grid(cfg_.subcarriers, m_total);
  if (mode == GfdmRxMode::Zf) {
    ensure_zf();
    std::vector<cplx> d = lu_->solve(y);
    for (int k : cfg_.occupied) {
      for (int m = 0; m < m_total; ++m) grid.at(k, m) = d[k * m_total + m];
    }
    return grid;
  }

  // matched filter: per occupied column inner product
  const long occ = static_cast<long>(occupied_cols_.size());
  std::vector<cplx> mf(occ);
#pragma omp parallel for schedule(static)
  for (long j = 0; j < occ; ++j) {
    const cplx* aj = &columns_.at(occupied_cols_[j], 0);
    cplx acc(0.0, 0.0);
    for (int s = 0; s < n; ++s) acc += std::conj(aj[s]) * y[s];
    mf[j] = acc;
  }

  std::vector<cplx> est(mf);
  if (mode == GfdmRxMode::MfDsic && dsic_iters > 0) {
    ensure_gram();
    const CMatrix& g = *gram_occ_;
    std::vector<cplx> dec(occ);
    for (long j = 0; j < occ; ++j) dec[j] = qam4_decide(mf[j]);
    for (int it = 0; it < dsic_iters; ++it) {
      for (long j = 0; j < occ; ++j) {
        const cplx* grow = &g.at(static_cast<int>(j), 0);
        cplx interf(0.0, 0.0);
        for (long i = 0; i < occ; ++i) interf += grow[i] * dec[i];
        interf -= grow[j] * dec[j];
        est[j] = mf[j] - interf;
        dec[j] = qam4_decide(est[j]);
      }
    }
  }
  for (long j = 0; j < occ; ++j) {
    const int col = occupied_cols_[j];
    grid.at(col / m_total, col % m_total) = est[j];
  }
  return grid;
}

SymbolGrid gfdm_receive(const ComplexSignal& rx, const ModemConfig& cfg,
                        const std::vector<cplx>& ch_freq, GfdmRxMode mode, int dsic_iters) {
  return GfdmDemodulator(cfg).receive(rx, ch_freq, mode, dsic_iters);
}

RealSymbolGrid coqam_receive(const ComplexSignal& rx, const ModemConfig& cfg,
                             const std::vector<cplx>& ch_freq) {
  if (!cfg.pulse.orthogonalized) {
    throw std::invalid_argument("coqam_receive: pulse must be orthogonalized");
  }
  const int k_total = cfg.subcarriers;
  const int m_total = cfg.timeslots;
  const int n = cfg.block_len();
  const int half = k_total / 2;
  std::vector<cplx> y = fde_equalize(strip_cp(rx, cfg), ch_freq);

  RealSymbolGrid grid(k_total, 2 * m_total);
  std::vector<cplx> folded(static_cast<std::size_t>(k_total));
  for (int m = 0; m < 2 * m_total; ++m) {
    std::fill(folded.begin(), folded.end(), cplx(0.0, 0.0));
    const int shift = m * half;
    for (int i = 0; i < n; ++i) {
      const int qi_idx = (i - shift + n) % n;
      folded[i % k_total] += y[i] * cfg.pulse.taps[qi_idx];
    }
    // raw forward DFT gives sum_n y q e^{-j 2 pi k n / K}
    std::vector<cplx> proj = dft_raw(folded, false);
    for (int k = 0; k < k_total; ++k) {
      // undo the modulation reference e^{-j2pi k (N/2)/K} and the symbol
      // phase e^{j(pi/2)(k+m)}
      cplx v = proj[k];
      if ((static_cast<long>(k) * m_total) % 2 != 0) v = -v;
      const int quarter = (k + m) % 4;
      const cplx ph = quarter == 0 ? cplx(1, 0)
                      : quarter == 1 ? cplx(0, -1)
                      : quarter == 2 ? cplx(-1, 0)
                                     : cplx(0, 1);
      grid.at(k, m) = (v * ph).real();
    }
  }
  return grid;
}

std::string receiver_name(Receiver r) {
  switch (r) {
    case Receiver::OfdmFde: return "OFDM-FDE";
    case Receiver::GfdmZf: return "GFDM-ZF";
    case Receiver::GfdmMf: return "GFDM-MF";
    case Receiver::GfdmMfDsic: return "GFDM-MF-DSIC";
    case Receiver::CoqamAnalysis: return "WCP-COQAM";
    case Receiver::OfdmAwgnRef: return "OFDM-AWGN";
  }
  return "?";
}

double awgn_ser_4qam(double snr_db) {
  const double q = qfunc(std::sqrt(std::pow(10.0, snr_db / 10.0)));
  return 2.0 * q - q * q;
}

SerCurve awgn_ser_4qam_reference(const std::vector<double>& snr_db_grid) {
  SerCurve curve;
  curve.points.reserve(snr_db_grid.size());
  for (double snr : snr_db_grid) {
    if (!std::isfinite(snr)) {
      throw std::invalid_argument("awgn_ser_4qam_reference: non-finite SNR");
    }
    SerPoint p;
    p.receiver = Receiver::OfdmAwgnRef;
    p.snr_db = snr;
    p.analytic_ser = awgn_ser_4qam(snr);
    curve.points.push_back(p);
  }
  return curve;
}

std::pair<long long, long long> ser_count(const SymbolGrid& tx, const SymbolGrid& rx,
                                          const std::vector<int>& occupied) {
  if (tx.subcarriers != rx.subcarriers || tx.slots != rx.slots) {
    throw std::invalid_argument("ser_count: grid shape mismatch");
  }
  long long errors = 0;
  long long total = 0;
  for (int k : occupied) {
    for (int m = 0; m < tx.slots; ++m) {
      if (qam4_decide(rx.at(k, m)) != qam4_decide(tx.at(k, m))) ++errors;
      ++total;
    }
  }
  return {errors, total};
}

std::pair<long long, long long> ser_count(const RealSymbolGrid& tx, const RealSymbolGrid& rx,
                                          const std::vector<int>& occupied) {
  if (tx.subcarriers != rx.subcarriers || tx.slots != rx.slots || tx.slots % 2 != 0) {
    throw std::invalid_argument("ser_count: grid shape mismatch");
  }
  long long errors = 0;
  long long total = 0;
  for (int k : occupied) {
    for (int m = 0; m < tx.slots / 2; ++m) {
      const cplx t(tx.at(k, 2 * m), tx.at(k, 2 * m + 1));
      const cplx r(rx.at(k, 2 * m), rx.at(k, 2 * m + 1));
      if (qam4_decide(r) != qam4_decide(t)) ++errors;
      ++total;
    }
  }
  return {errors, total};
}

}  // namespace mcwave
