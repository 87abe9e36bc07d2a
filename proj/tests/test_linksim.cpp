#include <cmath>

#include "doctest.h"
#include "mcwave/dsp.hpp"
#include "mcwave/linksim.hpp"
#include "mcwave/rng.hpp"

using namespace mcwave;

namespace {

ModemConfig small_gfdm(int k = 8, int m = 3, int cp = 4) {
  ModemConfig cfg;
  cfg.scheme = Scheme::Gfdm;
  cfg.subcarriers = k;
  cfg.timeslots = m;
  cfg.cp_len = cp;
  cfg.occupied = centered_occupied(k, k);
  cfg.pulse = build_prototype(PulseKind::RaisedCosine, k, m, 0.1);
  return cfg;
}

std::vector<cplx> random_symbols(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::uint8_t> bits(2 * n);
  for (auto& b : bits) b = rng.bit();
  return map_qam4(bits);
}

double max_grid_diff(const SymbolGrid& a, const SymbolGrid& b, const std::vector<int>& occ) {
  double worst = 0.0;
  for (int k : occ) {
    for (int m = 0; m < a.slots; ++m) {
      worst = std::max(worst, std::abs(a.at(k, m) - b.at(k, m)));
    }
  }
  return worst;
}

}  // namespace

TEST_CASE("apply_channel: identity, rotation, noise statistics") {
  Rng rng(1);
  ComplexSignal s(std::vector<cplx>(64));
  for (auto& v : s.samples) v = rng.complex_gaussian();

  ChannelSpec identity;
  Rng noise(2);
  auto out = apply_channel(s, identity, noise);
  REQUIRE(out.size() == s.size());
  for (std::size_t i = 0; i < s.size(); ++i) CHECK(std::abs(out.samples[i] - s.samples[i]) == 0.0);

  ChannelSpec rot;
  rot.cfo_frac = 0.37;
  rot.cfo_ref_len = 1152;
  auto rotated = apply_channel(s, rot, noise);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double a = 2.0 * M_PI * 0.37 * static_cast<double>(i) / 1152.0;
    CHECK(std::abs(rotated.samples[i] - s.samples[i] * cplx(std::cos(a), std::sin(a))) < 1e-12);
  }

  ChannelSpec noisy;
  noisy.noise_var = 1.0;
  ComplexSignal zeros(std::vector<cplx>(100000, cplx(0.0, 0.0)));
  Rng noise2(3);
  auto w = apply_channel(zeros, noisy, noise2);
  double var = 0.0;
  for (const cplx& v : w.samples) var += std::norm(v);
  var /= static_cast<double>(w.size());
  CHECK(var == doctest::Approx(1.0).epsilon(0.02));

  CHECK_THROWS_AS(apply_channel(ComplexSignal{}, identity, noise), std::invalid_argument);
}

TEST_CASE("cost207 profile: unit power, fixed by seed, fits inside the CP") {
  auto taps = cost207_hilly_terrain(42);
  double p = 0.0;
  int mem = 0;
  for (const auto& t : taps) {
    p += std::norm(t.gain);
    mem = std::max(mem, t.delay);
  }
  CHECK(std::abs(p - 1.0) < 1e-12);
  CHECK(mem <= 31);
  CHECK(mem >= 20);  // the long echoes must stay resolvable

  auto again = cost207_hilly_terrain(42);
  for (std::size_t i = 0; i < taps.size(); ++i) {
    CHECK(taps[i].delay == again[i].delay);
    CHECK(taps[i].gain == again[i].gain);
  }
  auto other = cost207_hilly_terrain(43);
  CHECK(taps[0].gain != other[0].gain);
}

TEST_CASE("ofdm_receive: exact recovery through identity and 2-tap channels") {
  ModemConfig cfg;
  cfg.scheme = Scheme::Ofdm;
  cfg.subcarriers = 64;
  cfg.timeslots = 1;
  cfg.cp_len = 8;
  cfg.occupied = centered_occupied(64, 40);
  cfg.pulse = build_prototype(PulseKind::Rectangular, 64, 1);

  auto tx_grid = build_symbol_grid(random_symbols(40, 7), cfg);
  auto tx = add_cp(gfdm_modulate(tx_grid, cfg), cfg.cp_len);

  ChannelSpec identity;
  Rng rng(1);
  auto rx0 = apply_channel(tx, identity, rng);
  auto h0 = channel_freq_response(identity.taps, 64);
  CHECK(max_grid_diff(ofdm_receive(rx0, cfg, h0), tx_grid, cfg.occupied) < 1e-10);

  ChannelSpec two_tap;
  two_tap.taps = {{0, {0.8, 0.1}}, {5, {-0.3, 0.4}}};
  auto rx1 = apply_channel(tx, two_tap, rng);
  auto h1 = channel_freq_response(two_tap.taps, 64);
  CHECK(max_grid_diff(ofdm_receive(rx1, cfg, h1), tx_grid, cfg.occupied) < 1e-10);

  ComplexSignal silent(std::vector<cplx>(tx.size(), cplx(0.0, 0.0)));
  auto zero_grid = ofdm_receive(silent, cfg, h0);
  for (const cplx& v : zero_grid.values) CHECK(std::abs(v) == 0.0);
}

TEST_CASE("ofdm_receive flags a channel null on an occupied bin") {
  ModemConfig cfg;
  cfg.scheme = Scheme::Ofdm;
  cfg.subcarriers = 16;
  cfg.timeslots = 1;
  cfg.cp_len = 4;
  cfg.occupied = centered_occupied(16, 16);
  cfg.pulse = build_prototype(PulseKind::Rectangular, 16, 1);
  auto tx = add_cp(gfdm_modulate(build_symbol_grid(random_symbols(16, 9), cfg), cfg), 4);

  // two equal opposite taps null the DC bin
  std::vector<ChannelTap> taps{{0, {1.0, 0.0}}, {1, {-1.0, 0.0}}};
  auto h = channel_freq_response(taps, 16);
  CHECK_THROWS_AS(ofdm_receive(tx, cfg, h), singular_matrix_error);
}

TEST_CASE("gfdm_receive ZF: exact noiseless recovery") {
  auto cfg = small_gfdm();
  auto tx_grid = build_symbol_grid(random_symbols(24, 13), cfg);
  auto tx = add_cp(gfdm_modulate(tx_grid, cfg), cfg.cp_len);
  ChannelSpec identity;
  Rng rng(2);
  auto rx = apply_channel(tx, identity, rng);
  auto h = channel_freq_response(identity.taps, cfg.block_len());
  auto hat = gfdm_receive(rx, cfg, h, GfdmRxMode::Zf);
  CHECK(max_grid_diff(hat, tx_grid, cfg.occupied) < 1e-10);
}

TEST_CASE("gfdm_receive MF with a single-slot rectangular pulse equals the OFDM receiver") {
  ModemConfig cfg;
  cfg.scheme = Scheme::Ofdm;
  cfg.subcarriers = 32;
  cfg.timeslots = 1;
  cfg.cp_len = 4;
  cfg.occupied = centered_occupied(32, 20);
  cfg.pulse = build_prototype(PulseKind::Rectangular, 32, 1);

  auto tx_grid = build_symbol_grid(random_symbols(20, 17), cfg);
  auto tx = add_cp(gfdm_modulate(tx_grid, cfg), cfg.cp_len);
  ChannelSpec awgn;
  awgn.noise_var = 0.05;
  Rng rng(3);
  auto rx = apply_channel(tx, awgn, rng);
  auto h = channel_freq_response(awgn.taps, 32);

  auto mf = gfdm_receive(rx, cfg, h, GfdmRxMode::Mf);
  auto fde = ofdm_receive(rx, cfg, h);
  CHECK(max_grid_diff(mf, fde, cfg.occupied) < 1e-12);
}

TEST_CASE("gfdm_receive: zero cancellation rounds reduce to plain MF") {
  auto cfg = small_gfdm();
  auto tx = add_cp(gfdm_modulate(build_symbol_grid(random_symbols(24, 19), cfg), cfg), cfg.cp_len);
  ChannelSpec awgn;
  awgn.noise_var = 0.1;
  Rng rng(4);
  auto rx = apply_channel(tx, awgn, rng);
  auto h = channel_freq_response(awgn.taps, cfg.block_len());

  GfdmDemodulator demod(cfg);
  auto mf = demod.receive(rx, h, GfdmRxMode::Mf);
  auto dsic0 = demod.receive(rx, h, GfdmRxMode::MfDsic, 0);
  CHECK(max_grid_diff(mf, dsic0, cfg.occupied) == 0.0);
}

TEST_CASE("gfdm_receive: cancellation beats plain MF at 20 dB") {
  auto cfg = small_gfdm();
  GfdmDemodulator demod(cfg);
  auto h = channel_freq_response({{0, {1.0, 0.0}}}, cfg.block_len());
  const double noise_var = std::pow(10.0, -2.0);

  double mse_mf = 0.0, mse_dsic = 0.0;
  for (int t = 0; t < 100; ++t) {
    auto tx_grid = build_symbol_grid(random_symbols(24, 100 + t), cfg);
    auto tx = add_cp(gfdm_modulate(tx_grid, cfg), cfg.cp_len);
    ChannelSpec ch;
    ch.noise_var = noise_var;
    Rng rng(200 + t);
    auto rx = apply_channel(tx, ch, rng);
    auto mf = demod.receive(rx, h, GfdmRxMode::Mf);
    auto ic = demod.receive(rx, h, GfdmRxMode::MfDsic, 3);
    for (int k = 0; k < cfg.subcarriers; ++k) {
      for (int m = 0; m < cfg.timeslots; ++m) {
        mse_mf += std::norm(mf.at(k, m) - tx_grid.at(k, m));
        mse_dsic += std::norm(ic.at(k, m) - tx_grid.at(k, m));
      }
    }
  }
  CHECK(mse_dsic < mse_mf);
}

TEST_CASE("gfdm_receive ZF rejects a singular synthesis matrix") {
  auto cfg = small_gfdm(4, 2);
  // a K-periodic pulse makes every slot column identical
  cfg.pulse.taps = {0.5, 0.5, 0.0, 0.0, 0.5, 0.5, 0.0, 0.0};
  auto tx = add_cp(gfdm_modulate(build_symbol_grid(random_symbols(8, 23), cfg), cfg), cfg.cp_len);
  auto h = channel_freq_response({{0, {1.0, 0.0}}}, cfg.block_len());
  CHECK_THROWS_AS(gfdm_receive(tx, cfg, h, GfdmRxMode::Zf), singular_matrix_error);
}

TEST_CASE("coqam_receive: noiseless recovery, silence, multipath") {
  auto cfg = small_gfdm();
  cfg.scheme = Scheme::WcpCoqam;
  cfg.pulse = dzt_orthogonalize(cfg.pulse);
  cfg.occupied = centered_occupied(8, 6);

  auto symbols = random_symbols(6 * 3, 29);
  auto tx_rgrid = build_oqam_grid(symbols, cfg);
  auto tx = add_cp(wcp_coqam_modulate(tx_rgrid, cfg), cfg.cp_len);

  ChannelSpec identity;
  Rng rng(5);
  auto h0 = channel_freq_response(identity.taps, cfg.block_len());
  auto hat = coqam_receive(apply_channel(tx, identity, rng), cfg, h0);
  double worst = 0.0;
  for (int k : cfg.occupied) {
    for (int m = 0; m < 2 * cfg.timeslots; ++m) {
      worst = std::max(worst, std::abs(hat.at(k, m) - tx_rgrid.at(k, m)));
    }
  }
  CHECK(worst < 1e-10);

  ComplexSignal silent(std::vector<cplx>(tx.size(), cplx(0.0, 0.0)));
  auto zero = coqam_receive(silent, cfg, h0);
  for (double v : zero.values) CHECK(v == 0.0);

  ChannelSpec two_tap;
  two_tap.taps = {{0, {0.9, -0.2}}, {3, {0.2, 0.3}}};
  auto h1 = channel_freq_response(two_tap.taps, cfg.block_len());
  auto hat1 = coqam_receive(apply_channel(tx, two_tap, rng), cfg, h1);
  worst = 0.0;
  for (int k : cfg.occupied) {
    for (int m = 0; m < 2 * cfg.timeslots; ++m) {
      worst = std::max(worst, std::abs(hat1.at(k, m) - tx_rgrid.at(k, m)));
    }
  }
  CHECK(worst < 1e-8);

  cfg.pulse.orthogonalized = false;
  CHECK_THROWS_AS(coqam_receive(tx, cfg, h0), std::invalid_argument);
}

TEST_CASE("awgn 4-QAM reference") {
  CHECK(awgn_ser_4qam(-60.0) == doctest::Approx(0.75).epsilon(1e-3));
  CHECK(awgn_ser_4qam(40.0) < 1e-20);
  // evaluated through the Gaussian-tail oracle: 2 Q(sqrt(10)) - Q(sqrt(10))^2
  const double q = qfunc(std::sqrt(10.0));
  CHECK(awgn_ser_4qam(10.0) == doctest::Approx(2.0 * q - q * q).epsilon(1e-12));
  CHECK(std::abs(awgn_ser_4qam(10.0) - 1.565e-3) < 5e-5);

  auto curve = awgn_ser_4qam_reference({0.0, 10.0});
  REQUIRE(curve.points.size() == 2);
  CHECK(curve.points[1].analytic_ser == awgn_ser_4qam(10.0));
  CHECK(curve.points[1].ser() == awgn_ser_4qam(10.0));
}

TEST_CASE("ser_count on complex and staggered grids") {
  auto cfg = small_gfdm();
  cfg.occupied = centered_occupied(8, 4);
  auto tx = build_symbol_grid(random_symbols(12, 31), cfg);

  auto same = ser_count(tx, tx, cfg.occupied);
  CHECK(same.first == 0);
  CHECK(same.second == 12);

  SymbolGrid flipped = tx;
  for (auto& v : flipped.values) v = -v;
  auto all = ser_count(tx, flipped, cfg.occupied);
  CHECK(all.first == 12);

  SymbolGrid one = tx;
  one.at(cfg.occupied[0], 1) = -one.at(cfg.occupied[0], 1);
  auto single = ser_count(tx, one, cfg.occupied);
  CHECK(single.first == 1);
  CHECK(single.second == 12);

  RealSymbolGrid ra(8, 6), rb(8, 6);
  ra.at(2, 0) = 0.7;
  ra.at(2, 1) = -0.7;
  rb.at(2, 0) = 0.6;  // same quadrant
  rb.at(2, 1) = -0.8;
  auto rc = ser_count(ra, rb, {2});
  CHECK(rc.first == 0);
  CHECK(rc.second == 3);

  SymbolGrid wrong(4, 3);
  CHECK_THROWS_AS(ser_count(tx, wrong, cfg.occupied), std::invalid_argument);
}

TEST_CASE("all receivers are exact through a channel no longer than the CP") {
  // small frames, memory-3 channel, CP 4
  ChannelSpec ch;
  ch.taps = {{0, {0.75, 0.05}}, {1, {0.3, -0.2}}, {3, {-0.1, 0.15}}};
  Rng rng(6);

  auto gfdm_cfg = small_gfdm(8, 3, 4);
  auto tx_grid = build_symbol_grid(random_symbols(24, 41), gfdm_cfg);
  auto tx = add_cp(gfdm_modulate(tx_grid, gfdm_cfg), 4);
  auto h = channel_freq_response(ch.taps, 24);
  auto zf = gfdm_receive(apply_channel(tx, ch, rng), gfdm_cfg, h, GfdmRxMode::Zf);
  CHECK(max_grid_diff(zf, tx_grid, gfdm_cfg.occupied) < 1e-8);

  ModemConfig ofdm_cfg;
  ofdm_cfg.scheme = Scheme::Ofdm;
  ofdm_cfg.subcarriers = 24;
  ofdm_cfg.timeslots = 1;
  ofdm_cfg.cp_len = 4;
  ofdm_cfg.occupied = centered_occupied(24, 16);
  ofdm_cfg.pulse = build_prototype(PulseKind::Rectangular, 24, 1);
  auto ofdm_grid = build_symbol_grid(random_symbols(16, 43), ofdm_cfg);
  auto ofdm_tx = add_cp(gfdm_modulate(ofdm_grid, ofdm_cfg), 4);
  auto ofdm_h = channel_freq_response(ch.taps, 24);
  auto fde = ofdm_receive(apply_channel(ofdm_tx, ch, rng), ofdm_cfg, ofdm_h);
  CHECK(max_grid_diff(fde, ofdm_grid, ofdm_cfg.occupied) < 1e-8);
}
