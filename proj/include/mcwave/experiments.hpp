#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mcwave/linksim.hpp"
#include "mcwave/modem.hpp"
#include "mcwave/parallel.hpp"
#include "mcwave/spectral.hpp"

namespace mcwave {

/// Baseline numerology shared by the experiments: a 128-subcarrier, 9-slot
/// frame with a 32-sample CP, 76 occupied carriers, RC(0.1) pulse, Hanning
/// edge ramps of 18 samples, sixfold oversampling through an 81-sample RC
/// interpolator, 300 Monte-Carlo runs. The equal-bandwidth OFDM variant
/// packs 1152 subcarriers (684 occupied) into one block of the same span.
namespace baseline {
constexpr int kSubcarriers = 128;
constexpr int kTimeslots = 9;
constexpr int kCpLen = 32;
constexpr int kOccupied = 76;
constexpr int kWindowRamp = 18;
constexpr double kRolloff = 0.1;
constexpr int kOversample = 6;
constexpr int kFilterSpan = 81;
constexpr int kEqualSeSubcarriers = 1152;
constexpr int kEqualSeOccupied = 684;
constexpr int kMcRuns = 300;
constexpr int kCfoRefLen = kSubcarriers * kTimeslots;  // spacing Fs/(MK)
}  // namespace baseline

enum class Variant { Plain, Guard, Window, GuardWindow };

enum class ExperimentKind { Psd, Ser, AnalyticPsd };

std::string scheme_name(Scheme s);
std::string variant_name(Variant v);
Scheme parse_scheme(const std::string& name);
Variant parse_variant(const std::string& name);

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::Psd;
  std::vector<Scheme> schemes{Scheme::Ofdm, Scheme::Gfdm, Scheme::WcpCoqam};
  std::vector<Variant> variants{Variant::Plain};
  bool equal_se = false;
  int mc_runs = baseline::kMcRuns;
  std::uint64_t seed = 1;
  std::vector<double> cfo_sweep{0.0, 0.05, 0.10, 0.15};
  std::vector<double> snr_grid_db{0, 5, 10, 15, 20, 25, 30};
  std::string output_path;
  ExecMode exec = ExecMode::Parallel;
  bool identity_channel = false;  // override the multipath model (calibration)
  int dsic_iters = 3;

  void validate() const;
};

/// Frame parameters for one (scheme, variant) cell. Windowing follows the
/// variant; guards follow the variant; equal_se switches OFDM to the
/// 1152-subcarrier block.
ModemConfig make_modem_config(Scheme scheme, Variant variant, bool equal_se);

struct PsdRow {
  std::string scheme;
  std::string variant;
  bool equal_se = false;
  double freq_over_fs = 0.0;
  double psd_db = 0.0;
};

struct PsdTable {
  std::vector<PsdRow> rows;
};

struct SerTable {
  std::vector<SerPoint> points;
  long long symbols_per_frame = 0;
};

/// Monte-Carlo PSD estimate per (scheme, variant): random frames are
/// modulated, CP-extended, windowed when the variant says so, sixfold
/// oversampled with symmetric truncation, and averaged into one peak
/// normalized periodogram. Frames are back to back: each run is one frame
/// and the estimate is the per-frame average.
PsdTable run_psd_experiment(const ExperimentSpec& spec);

/// Closed-form PSD rows for the 128-carrier block and for the
/// equal-bandwidth 1152-carrier block.
PsdTable run_analytic_psd_experiment(const ExperimentSpec& spec);

/// SER sweep over (receiver, cfo, snr) through the static multipath channel
/// with per-trial deterministic random streams; includes the closed-form
/// AWGN reference rows.
SerTable run_ser_experiment(const ExperimentSpec& spec);

void write_psd_csv(const PsdTable& table, const std::string& path);
void write_ser_csv(const SerTable& table, const std::string& path);

std::string psd_csv_string(const PsdTable& table);
std::string ser_csv_string(const SerTable& table);

/// Builds a PsdEstimate for one (scheme, variant) cell; the table runner
/// loops over cells with this.
PsdEstimate simulate_psd(Scheme scheme, Variant variant, bool equal_se, int mc_runs,
                         std::uint64_t seed, ExecMode exec);

}  // namespace mcwave
