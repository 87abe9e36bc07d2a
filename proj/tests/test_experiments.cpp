#include <cstdio>
#include <filesystem>

#include "doctest.h"
#include "mcwave/experiments.hpp"

using namespace mcwave;

TEST_CASE("make_modem_config covers the experiment grid") {
  auto ofdm = make_modem_config(Scheme::Ofdm, Variant::GuardWindow, true);
  CHECK(ofdm.subcarriers == 1152);
  CHECK(ofdm.occupied.size() == 684);
  CHECK(ofdm.window_ramp == 18);
  CHECK(ofdm.frame_len() == 1184);

  auto ofdm_plain = make_modem_config(Scheme::Ofdm, Variant::Plain, false);
  CHECK(ofdm_plain.subcarriers == 128);
  CHECK(ofdm_plain.occupied.size() == 128);
  CHECK(ofdm_plain.window_ramp == 0);
  CHECK(ofdm_plain.frame_len() == 160);

  auto gfdm = make_modem_config(Scheme::Gfdm, Variant::Guard, true);
  CHECK(gfdm.subcarriers == 128);
  CHECK(gfdm.timeslots == 9);
  CHECK(gfdm.occupied.size() == 76);
  CHECK(gfdm.frame_len() == 1184);

  auto coqam = make_modem_config(Scheme::WcpCoqam, Variant::Window, false);
  CHECK(coqam.pulse.orthogonalized);
  CHECK(coqam.window_ramp == 18);
}

TEST_CASE("scheme and variant parsing") {
  CHECK(parse_scheme("ofdm") == Scheme::Ofdm);
  CHECK(parse_scheme("WCP-COQAM") == Scheme::WcpCoqam);
  CHECK_THROWS_AS(parse_scheme("FBMC"), std::invalid_argument);
  CHECK(parse_variant("gw") == Variant::GuardWindow);
  CHECK_THROWS_AS(parse_variant("windowed"), std::invalid_argument);
}

TEST_CASE("psd experiment: deterministic and schedule-independent") {
  ExperimentSpec spec;
  spec.kind = ExperimentKind::Psd;
  spec.schemes = {Scheme::Ofdm};
  spec.variants = {Variant::Plain};
  spec.mc_runs = 6;
  spec.seed = 77;

  spec.exec = ExecMode::Parallel;
  const std::string a = psd_csv_string(run_psd_experiment(spec));
  const std::string b = psd_csv_string(run_psd_experiment(spec));
  CHECK(a == b);
  spec.exec = ExecMode::Serial;
  const std::string c = psd_csv_string(run_psd_experiment(spec));
  CHECK(a == c);

  spec.seed = 78;
  CHECK(psd_csv_string(run_psd_experiment(spec)) != a);
}

TEST_CASE("psd experiment rows carry the full parameter tuple") {
  ExperimentSpec spec;
  spec.kind = ExperimentKind::Psd;
  spec.schemes = {Scheme::Gfdm};
  spec.variants = {Variant::Window};
  spec.mc_runs = 3;
  spec.seed = 5;
  auto table = run_psd_experiment(spec);
  REQUIRE(!table.rows.empty());
  for (const auto& row : table.rows) {
    CHECK(row.scheme == "GFDM");
    CHECK(row.variant == "W");
    CHECK(row.equal_se == false);
  }
  // symmetric frequency grid
  CHECK(table.rows.front().freq_over_fs == doctest::Approx(-table.rows.back().freq_over_fs));
}

TEST_CASE("ser experiment: deterministic, complete rows, analytic reference present") {
  ExperimentSpec spec;
  spec.kind = ExperimentKind::Ser;
  spec.schemes = {Scheme::Ofdm, Scheme::Gfdm};
  spec.equal_se = false;  // small frames keep this test quick
  spec.mc_runs = 2;
  spec.seed = 9;
  spec.cfo_sweep = {0.0, 0.1};
  spec.snr_grid_db = {10.0, 20.0};
  spec.identity_channel = true;

  spec.exec = ExecMode::Parallel;
  const std::string a = ser_csv_string(run_ser_experiment(spec));
  spec.exec = ExecMode::Serial;
  const std::string b = ser_csv_string(run_ser_experiment(spec));
  CHECK(a == b);

  auto table = run_ser_experiment(spec);
  int analytic_rows = 0;
  int counted_rows = 0;
  for (const auto& p : table.points) {
    if (p.receiver == Receiver::OfdmAwgnRef) {
      ++analytic_rows;
      CHECK(p.analytic_ser >= 0.0);
    } else {
      ++counted_rows;
      CHECK(p.trials == 2);
      CHECK(p.total_symbols > 0);
      CHECK(p.errors <= p.total_symbols);
    }
  }
  CHECK(analytic_rows == 2);
  // OFDM-FDE + GFDM-{ZF, MF, MF-DSIC} over 2 cfo x 2 snr
  CHECK(counted_rows == 4 * 2 * 2);
}

TEST_CASE("csv writers produce the documented headers") {
  PsdTable pt;
  pt.rows.push_back({"OFDM", "plain", false, -1.5, -42.25});
  const std::string psd = psd_csv_string(pt);
  CHECK(psd.rfind("scheme,variant,equal_se,freq_over_fs,psd_db\n", 0) == 0);
  CHECK(psd.find("OFDM,plain,0,-1.5,-42.25\n") != std::string::npos);

  SerTable st;
  SerPoint p;
  p.scheme = Scheme::Gfdm;
  p.receiver = Receiver::GfdmZf;
  p.cfo_frac = 0.05;
  p.snr_db = 15.0;
  p.errors = 3;
  p.trials = 10;
  p.total_symbols = 6840;
  st.points.push_back(p);
  const std::string ser = ser_csv_string(st);
  CHECK(ser.rfind("scheme,receiver,cfo_frac,snr_db,errors,trials,ser\n", 0) == 0);
  CHECK(ser.find("GFDM,GFDM-ZF,0.05,15,3,10,") != std::string::npos);
}

TEST_CASE("analytic experiment emits both packings") {
  ExperimentSpec spec;
  spec.kind = ExperimentKind::AnalyticPsd;
  auto table = run_analytic_psd_experiment(spec);
  bool has_narrow = false, has_packed = false;
  for (const auto& row : table.rows) {
    CHECK(row.scheme == "OFDM");
    CHECK(row.variant == "analytic");
    has_narrow |= !row.equal_se;
    has_packed |= row.equal_se;
  }
  CHECK(has_narrow);
  CHECK(has_packed);
}

TEST_CASE("output file errors surface as io_error") {
  PsdTable pt;
  pt.rows.push_back({"OFDM", "plain", false, 0.0, 0.0});
  CHECK_THROWS_AS(write_psd_csv(pt, "/nonexistent-dir/psd.csv"), io_error);
}

TEST_CASE("experiment validation") {
  ExperimentSpec spec;
  spec.mc_runs = 0;
  CHECK_THROWS_AS(run_psd_experiment(spec), std::invalid_argument);
  spec.mc_runs = 1;
  spec.schemes.clear();
  CHECK_THROWS_AS(run_psd_experiment(spec), std::invalid_argument);
}
