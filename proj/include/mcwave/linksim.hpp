#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "mcwave/linalg.hpp"
#include "mcwave/modem.hpp"
#include "mcwave/rng.hpp"
#include "mcwave/types.hpp"

namespace mcwave {

struct ChannelTap {
  int delay = 0;  // samples
  cplx gain{1.0, 0.0};
};

/// Static multipath channel plus carrier frequency offset and AWGN level.
/// cfo_frac is a fraction of the reference subcarrier spacing Fs/cfo_ref_len;
/// the received phase ramp is exp(j 2 pi cfo_frac n / cfo_ref_len).
struct ChannelSpec {
  std::vector<ChannelTap> taps{{0, {1.0, 0.0}}};
  double cfo_frac = 0.0;
  double noise_var = 0.0;  // total variance per complex sample
  int cfo_ref_len = 1;
  std::uint64_t seed = 0;

  int memory() const;
  double tap_power() const;
};

/// COST-207 hilly-terrain reduced 6-tap profile (delays 0..17.2 us, powers
/// 0..-17.7 dB), one fixed complex-Gaussian draw per seed, delays mapped to
/// samples at 1.6 MHz so the longest echo (28 samples) stays inside a
/// 32-sample CP. Realized taps are renormalized to exactly unit total power.
std::vector<ChannelTap> cost207_hilly_terrain(std::uint64_t seed,
                                              double sample_rate_hz = 1.6e6);

/// r[n] = (h * s)[n] e^{j 2 pi cfo_frac n / cfo_ref_len} + w[n]; the output
/// keeps the convolution tail (length + memory samples). w is circular
/// complex Gaussian with total variance noise_var per sample.
ComplexSignal apply_channel(const ComplexSignal& signal, const ChannelSpec& ch, Rng& rng);

/// H[b] = sum_i g_i e^{-j 2 pi b d_i / nbins}.
std::vector<cplx> channel_freq_response(const std::vector<ChannelTap>& taps, int nbins);

/// CP-OFDM receiver: strip CP, unitary DFT, per-bin zero-forcing division by
/// the true channel response, occupied carriers back onto a grid.
SymbolGrid ofdm_receive(const ComplexSignal& rx, const ModemConfig& cfg,
                        const std::vector<cplx>& ch_freq);

enum class GfdmRxMode { Zf, Mf, MfDsic };

/// GFDM receiver bank around the full MK x MK modulation matrix A (columns
/// are the circular pulse-shaped tones). ZF solves A d = y, MF applies A^H,
/// MF-DSIC refines MF decisions by serially cancelling the interference of
/// all other occupied symbols through A^H A, with immediate decision
/// feedback, for a fixed number of iterations.
class GfdmDemodulator {
 public:
  explicit GfdmDemodulator(const ModemConfig& cfg);

  /// Builds the factorization (Zf) or the occupied Gram block (MfDsic) ahead
  /// of time; receive() does it lazily otherwise. Thread-safe.
  void prepare(GfdmRxMode mode) const;

  SymbolGrid receive(const ComplexSignal& rx, const std::vector<cplx>& ch_freq,
                     GfdmRxMode mode, int dsic_iters = 3) const;

  /// Equalized time-domain block (CP stripped, per-bin ZF).
  std::vector<cplx> equalize(const ComplexSignal& rx,
                             const std::vector<cplx>& ch_freq) const;

 private:
  void ensure_zf() const;
  void ensure_gram() const;
  void build_gram() const;

  ModemConfig cfg_;
  CMatrix columns_;  // column-major: columns_.at(col, n) holds atom col at sample n
  std::vector<int> occupied_cols_;
  mutable std::once_flag zf_once_;
  mutable std::once_flag gram_once_;
  mutable std::shared_ptr<const LuDecomposition> lu_;
  mutable std::shared_ptr<const CMatrix> gram_occ_;  // occupied x occupied block of A^H A
};

/// One-call convenience wrapper (experiments keep a GfdmDemodulator instead).
SymbolGrid gfdm_receive(const ComplexSignal& rx, const ModemConfig& cfg,
                        const std::vector<cplx>& ch_freq, GfdmRxMode mode,
                        int dsic_iters = 3);

/// Offset-QAM analysis receiver: strip CP, per-bin ZF, then real projections
/// onto the staggered atom set (unity gain for an orthogonalized pulse).
RealSymbolGrid coqam_receive(const ComplexSignal& rx, const ModemConfig& cfg,
                             const std::vector<cplx>& ch_freq);

enum class Receiver { OfdmFde, GfdmZf, GfdmMf, GfdmMfDsic, CoqamAnalysis, OfdmAwgnRef };

std::string receiver_name(Receiver r);

/// SER bookkeeping: one point per (snr, cfo, receiver).
struct SerPoint {
  Scheme scheme = Scheme::Ofdm;
  Receiver receiver = Receiver::OfdmFde;
  double cfo_frac = 0.0;
  double snr_db = 0.0;
  long long errors = 0;
  long long trials = 0;         // frames
  long long total_symbols = 0;  // trials * symbols per frame
  double analytic_ser = -1.0;   // >= 0 only for the closed-form reference row

  double ser() const {
    if (analytic_ser >= 0.0) return analytic_ser;
    return total_symbols > 0 ? static_cast<double>(errors) / total_symbols : 0.0;
  }
};

struct SerCurve {
  std::vector<SerPoint> points;
};

/// Uncoded 4-QAM symbol error rate over AWGN: 2 Q(sqrt(g)) - Q(sqrt(g))^2
/// with g the per-symbol SNR in linear scale.
double awgn_ser_4qam(double snr_db);

SerCurve awgn_ser_4qam_reference(const std::vector<double>& snr_db_grid);

/// Hard-decision symbol mismatches over the occupied carriers.
std::pair<long long, long long> ser_count(const SymbolGrid& tx, const SymbolGrid& rx,
                                          const std::vector<int>& occupied);

/// Offset-QAM grids: real pairs are recombined into complex symbols first.
std::pair<long long, long long> ser_count(const RealSymbolGrid& tx, const RealSymbolGrid& rx,
                                          const std::vector<int>& occupied);

}  // namespace mcwave
