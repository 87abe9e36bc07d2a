#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mcwave/experiments.hpp"

namespace {

using mcwave::ExperimentKind;
using mcwave::ExperimentSpec;

struct CliOptions {
  std::string config_path;
  std::uint64_t seed = 1;
  int mc_runs = mcwave::baseline::kMcRuns;
  bool equal_se = false;
  std::string out;
  std::vector<std::string> schemes{"OFDM", "GFDM", "WCP-COQAM"};
  std::vector<std::string> variants{"plain"};
  std::vector<double> cfo_sweep{0.0, 0.05, 0.10, 0.15};
  std::vector<double> snr_grid{0, 5, 10, 15, 20, 25, 30};
  bool serial = false;
  bool identity_channel = false;
  int dsic_iters = 3;
};

void add_common_options(CLI::App* cmd, CliOptions& opt) {
  cmd->add_option("--seed", opt.seed, "master random seed");
  cmd->add_option("--mc-runs", opt.mc_runs, "Monte-Carlo runs (frames/trials)");
  cmd->add_flag("--equal-se,!--no-equal-se", opt.equal_se,
                "equal spectral efficiency: OFDM packs M*K subcarriers");
  cmd->add_option("--out", opt.out, "output CSV path")->required();
  cmd->add_option("--schemes", opt.schemes, "schemes: OFDM, GFDM, WCP-COQAM")
      ->delimiter(',');
  cmd->add_option("--variants", opt.variants, "variants: plain, G, W, GW")->delimiter(',');
  cmd->add_flag("--serial", opt.serial, "run the serial reference kernels");
  cmd->set_config("--config", "", "flat key = value config file; flags override");
}

ExperimentSpec build_spec(const CliOptions& opt, ExperimentKind kind) {
  ExperimentSpec spec;
  spec.kind = kind;
  spec.seed = opt.seed;
  spec.mc_runs = opt.mc_runs;
  spec.equal_se = opt.equal_se;
  spec.output_path = opt.out;
  spec.schemes.clear();
  for (const auto& s : opt.schemes) spec.schemes.push_back(mcwave::parse_scheme(s));
  spec.variants.clear();
  for (const auto& v : opt.variants) spec.variants.push_back(mcwave::parse_variant(v));
  spec.cfo_sweep = opt.cfo_sweep;
  spec.snr_grid_db = opt.snr_grid;
  spec.exec = opt.serial ? mcwave::ExecMode::Serial : mcwave::ExecMode::Parallel;
  spec.identity_channel = opt.identity_channel;
  spec.dsic_iters = opt.dsic_iters;
  return spec;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multicarrier waveform simulator: OOB emission and SER experiments"};
  app.require_subcommand(1);

  CliOptions psd_opt, ser_opt, ana_opt;

  CLI::App* psd = app.add_subcommand("psd", "Monte-Carlo PSD estimate per scheme/variant");
  add_common_options(psd, psd_opt);

  CLI::App* ser = app.add_subcommand("ser", "SER vs SNR under CFO and multipath");
  add_common_options(ser, ser_opt);
  ser_opt.equal_se = true;  // the SER comparison runs at equal spectral efficiency
  ser->add_option("--cfo-sweep", ser_opt.cfo_sweep,
                  "CFO values as fractions of the subcarrier spacing Fs/(M*K)")
      ->delimiter(',');
  ser->add_option("--snr-grid-db", ser_opt.snr_grid, "SNR grid in dB")->delimiter(',');
  ser->add_flag("--identity-channel", ser_opt.identity_channel,
                "replace the multipath model with a single unit tap");
  ser->add_option("--dsic-iters", ser_opt.dsic_iters, "interference-cancellation rounds");

  CLI::App* ana = app.add_subcommand("analytic-psd", "closed-form PSD curves");
  add_common_options(ana, ana_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (psd->parsed()) {
      const ExperimentSpec spec = build_spec(psd_opt, ExperimentKind::Psd);
      mcwave::write_psd_csv(mcwave::run_psd_experiment(spec), spec.output_path);
    } else if (ser->parsed()) {
      const ExperimentSpec spec = build_spec(ser_opt, ExperimentKind::Ser);
      mcwave::write_ser_csv(mcwave::run_ser_experiment(spec), spec.output_path);
    } else if (ana->parsed()) {
      const ExperimentSpec spec = build_spec(ana_opt, ExperimentKind::AnalyticPsd);
      mcwave::write_psd_csv(mcwave::run_analytic_psd_experiment(spec), spec.output_path);
    }
  } catch (const mcwave::io_error& e) {
    std::fprintf(stderr, "I/O error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
