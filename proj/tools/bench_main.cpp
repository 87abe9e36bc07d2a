// Timing harness comparing the serial reference kernels against the
// OpenMP-parallel ones, and checking that both produce identical output.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>

#include "mcwave/dsp.hpp"
#include "mcwave/experiments.hpp"
#include "mcwave/rng.hpp"

using namespace mcwave;

namespace {

double time_ms(const std::function<void()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void report(const char* name, double serial_ms, double parallel_ms, bool identical) {
  std::printf("%-28s serial %9.1f ms   parallel %9.1f ms   speedup %5.2fx   %s\n", name,
              serial_ms, parallel_ms, serial_ms / parallel_ms,
              identical ? "outputs identical" : "OUTPUT MISMATCH");
}

}  // namespace

int main() {
  std::printf("threads available: %d\n\n", exec_threads(ExecMode::Parallel));

  {  // averaged periodogram over oversampled frames
    Rng rng(42);
    std::vector<ComplexSignal> frames(64);
    for (auto& f : frames) {
      f.samples.resize(7104);
      f.sample_rate = 6.0;
      for (auto& v : f.samples) v = rng.complex_gaussian();
    }
    std::vector<double> a, b;
    const double ts = time_ms([&] { a = periodogram_linear(frames, ExecMode::Serial); });
    const double tp = time_ms([&] { b = periodogram_linear(frames, ExecMode::Parallel); });
    report("periodogram (64x7104)", ts, tp, a == b);
  }

  {  // closed-form PSD on a dense grid
    AnalyticPsdConfig cfg;
    cfg.carriers_used = cfg.carriers_total = baseline::kSubcarriers;
    cfg.total_samples = baseline::kSubcarriers + baseline::kCpLen;
    cfg.guard_samples = baseline::kCpLen;
    cfg.slot_factor = baseline::kTimeslots;
    std::vector<double> freqs;
    for (double f = -3.5; f <= 3.5; f += 1e-4) freqs.push_back(f);
    PsdEstimate a, b;
    const double ts =
        time_ms([&] { a = analytic_psd(cfg, freqs, true, true, ExecMode::Serial); });
    const double tp =
        time_ms([&] { b = analytic_psd(cfg, freqs, true, true, ExecMode::Parallel); });
    report("analytic PSD (70k points)", ts, tp, a.values_db == b.values_db);
  }

  {  // PSD experiment cell (modulate + oversample + accumulate)
    PsdEstimate a, b;
    const double ts = time_ms(
        [&] { a = simulate_psd(Scheme::Gfdm, Variant::Plain, false, 32, 7, ExecMode::Serial); });
    const double tp = time_ms([&] {
      b = simulate_psd(Scheme::Gfdm, Variant::Plain, false, 32, 7, ExecMode::Parallel);
    });
    report("GFDM PSD cell (32 frames)", ts, tp, a.values_db == b.values_db);
  }

  {  // SER trial block, dominated by the GFDM matrix receivers
    ExperimentSpec spec;
    spec.kind = ExperimentKind::Ser;
    spec.schemes = {Scheme::Gfdm};
    spec.equal_se = true;
    spec.mc_runs = 8;
    spec.seed = 3;
    spec.cfo_sweep = {0.1};
    spec.snr_grid_db = {25.0};
    std::string a, b;
    spec.exec = ExecMode::Serial;
    const double ts = time_ms([&] { a = ser_csv_string(run_ser_experiment(spec)); });
    spec.exec = ExecMode::Parallel;
    const double tp = time_ms([&] { b = ser_csv_string(run_ser_experiment(spec)); });
    report("GFDM SER block (8 trials)", ts, tp, a == b);
  }

  return 0;
}
