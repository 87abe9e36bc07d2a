#include "mcwave/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "mcwave/dsp.hpp"
#include "mcwave/rng.hpp"

namespace mcwave {
namespace {

std::uint64_t stream_id(unsigned scheme, unsigned variant, unsigned purpose,
                        std::uint64_t trial) {
  return (static_cast<std::uint64_t>(scheme) << 56) |
         (static_cast<std::uint64_t>(variant) << 48) |
         (static_cast<std::uint64_t>(purpose) << 40) | trial;
}

std::vector<std::uint8_t> random_bits(Rng& rng, std::size_t count) {
  std::vector<std::uint8_t> bits(count);
  for (auto& b : bits) b = rng.bit() ? 1 : 0;
  return bits;
}

std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

ComplexSignal modulate_frame(const ModemConfig& cfg, const std::vector<cplx>& symbols) {
  ComplexSignal frame;
  if (cfg.scheme == Scheme::WcpCoqam) {
    frame = wcp_coqam_modulate(build_oqam_grid(symbols, cfg), cfg);
  } else {
    frame = gfdm_modulate(build_symbol_grid(symbols, cfg), cfg);
  }
  frame = add_cp(frame, cfg.cp_len);
  if (cfg.window_ramp > 0) {
    frame = apply_edge_window(
        frame, edge_window(static_cast<int>(frame.size()), cfg.window_ramp));
  }
  return frame;
}

}  // namespace

std::string scheme_name(Scheme s) {
  switch (s) {
    case Scheme::Ofdm: return "OFDM";
    case Scheme::Gfdm: return "GFDM";
    case Scheme::WcpCoqam: return "WCP-COQAM";
  }
  return "?";
}

std::string variant_name(Variant v) {
  switch (v) {
    case Variant::Plain: return "plain";
    case Variant::Guard: return "G";
    case Variant::Window: return "W";
    case Variant::GuardWindow: return "GW";
  }
  return "?";
}

Scheme parse_scheme(const std::string& name) {
  std::string up;
  for (char c : name) up.push_back(static_cast<char>(std::toupper(c)));
  if (up == "OFDM") return Scheme::Ofdm;
  if (up == "GFDM") return Scheme::Gfdm;
  if (up == "WCP-COQAM" || up == "WCPCOQAM" || up == "COQAM") return Scheme::WcpCoqam;
  throw std::invalid_argument("unknown scheme: " + name);
}

Variant parse_variant(const std::string& name) {
  std::string up;
  for (char c : name) up.push_back(static_cast<char>(std::toupper(c)));
  if (up == "PLAIN") return Variant::Plain;
  if (up == "G") return Variant::Guard;
  if (up == "W") return Variant::Window;
  if (up == "GW") return Variant::GuardWindow;
  throw std::invalid_argument("unknown variant: " + name);
}

void ExperimentSpec::validate() const {
  if (mc_runs < 1) throw std::invalid_argument("mc_runs must be >= 1");
  if (schemes.empty()) throw std::invalid_argument("no schemes selected");
  if (variants.empty()) throw std::invalid_argument("no variants selected");
  if (kind == ExperimentKind::Ser) {
    if (snr_grid_db.empty()) throw std::invalid_argument("empty SNR grid");
    if (cfo_sweep.empty()) throw std::invalid_argument("empty CFO sweep");
  }
}

ModemConfig make_modem_config(Scheme scheme, Variant variant, bool equal_se) {
  using namespace baseline;
  const bool guards = variant == Variant::Guard || variant == Variant::GuardWindow;
  const bool window = variant == Variant::Window || variant == Variant::GuardWindow;

  ModemConfig cfg;
  cfg.scheme = scheme;
  cfg.cp_len = kCpLen;
  cfg.window_ramp = window ? kWindowRamp : 0;
  if (scheme == Scheme::Ofdm) {
    cfg.subcarriers = equal_se ? kEqualSeSubcarriers : kSubcarriers;
    cfg.timeslots = 1;
    const int occ = equal_se ? kEqualSeOccupied : kOccupied;
    cfg.occupied = guards ? centered_occupied(cfg.subcarriers, occ)
                          : centered_occupied(cfg.subcarriers, cfg.subcarriers);
    cfg.pulse = build_prototype(PulseKind::Rectangular, cfg.subcarriers, 1);
  } else {
    cfg.subcarriers = kSubcarriers;
    cfg.timeslots = kTimeslots;
    cfg.occupied = guards ? centered_occupied(kSubcarriers, kOccupied)
                          : centered_occupied(kSubcarriers, kSubcarriers);
    cfg.pulse = build_prototype(PulseKind::RaisedCosine, kSubcarriers, kTimeslots, kRolloff);
    if (scheme == Scheme::WcpCoqam) cfg.pulse = dzt_orthogonalize(cfg.pulse);
  }
  cfg.validate();
  return cfg;
}

PsdEstimate simulate_psd(Scheme scheme, Variant variant, bool equal_se, int mc_runs,
                         std::uint64_t seed, ExecMode exec) {
  const ModemConfig cfg = make_modem_config(scheme, variant, equal_se);
  const std::size_t n_bits = 2 * static_cast<std::size_t>(cfg.data_symbols());
  const unsigned sid = static_cast<unsigned>(scheme);
  const unsigned vid = static_cast<unsigned>(variant);

  std::vector<ComplexSignal> frames(static_cast<std::size_t>(mc_runs));
  const long runs = mc_runs;
#pragma omp parallel for schedule(dynamic) num_threads(exec_threads(exec))
  for (long t = 0; t < runs; ++t) {
    Rng rng(seed, stream_id(sid, vid, 0, static_cast<std::uint64_t>(t)));
    const std::vector<cplx> symbols = map_qam4(random_bits(rng, n_bits));
    ComplexSignal frame = modulate_frame(cfg, symbols);
    frames[t] = oversample_truncate(frame, baseline::kOversample, baseline::kFilterSpan,
                                    baseline::kRolloff);
  }
  return periodogram_psd(frames, exec);
}

PsdTable run_psd_experiment(const ExperimentSpec& spec) {
  spec.validate();
  PsdTable table;
  for (Scheme scheme : spec.schemes) {
    for (Variant variant : spec.variants) {
      PsdEstimate psd = simulate_psd(scheme, variant, spec.equal_se, spec.mc_runs,
                                     spec.seed, spec.exec);
      const std::string sname = scheme_name(scheme);
      const std::string vname = variant_name(variant);
      for (std::size_t i = 0; i < psd.freqs.size(); ++i) {
        table.rows.push_back({sname, vname, spec.equal_se, psd.freqs[i], psd.values_db[i]});
      }
    }
  }
  return table;
}

PsdTable run_analytic_psd_experiment(const ExperimentSpec& spec) {
  spec.validate();
  using namespace baseline;
  std::vector<double> freqs;
  for (double f = -3.5; f <= 3.5 + 1e-12; f += 1.0 / 256.0) freqs.push_back(f);

  AnalyticPsdConfig cfg;
  cfg.carriers_used = kSubcarriers;
  cfg.carriers_total = kSubcarriers;
  cfg.total_samples = kSubcarriers + kCpLen;
  cfg.guard_samples = kCpLen;
  cfg.slot_factor = kTimeslots;

  PsdTable table;
  for (bool equal_se : {false, true}) {
    PsdEstimate psd = analytic_psd(cfg, freqs, equal_se, true, spec.exec);
    for (std::size_t i = 0; i < psd.freqs.size(); ++i) {
      table.rows.push_back({"OFDM", "analytic", equal_se, psd.freqs[i], psd.values_db[i]});
    }
  }
  return table;
}

namespace {

struct ReceiverChain {
  Scheme scheme;
  Receiver receiver;
};

struct SerAccum {
  long long errors = 0;
  long long frames = 0;
  long long symbols = 0;
};

}  // namespace

SerTable run_ser_experiment(const ExperimentSpec& spec) {
  spec.validate();
  using namespace baseline;

  std::vector<ChannelTap> taps = spec.identity_channel
                                     ? std::vector<ChannelTap>{{0, {1.0, 0.0}}}
                                     : cost207_hilly_terrain(spec.seed);

  std::vector<ReceiverChain> chains;
  for (Scheme s : spec.schemes) {
    switch (s) {
      case Scheme::Ofdm:
        chains.push_back({s, Receiver::OfdmFde});
        break;
      case Scheme::Gfdm:
        chains.push_back({s, Receiver::GfdmZf});
        chains.push_back({s, Receiver::GfdmMf});
        chains.push_back({s, Receiver::GfdmMfDsic});
        break;
      case Scheme::WcpCoqam:
        chains.push_back({s, Receiver::CoqamAnalysis});
        break;
    }
  }

  // Per-scheme state shared by every trial.
  struct SchemeState {
    ModemConfig cfg;
    std::vector<cplx> ch_freq;
    std::shared_ptr<GfdmDemodulator> demod;  // GFDM only
  };
  std::vector<SchemeState> states;
  std::vector<Scheme> unique_schemes;
  for (const auto& chain : chains) {
    if (std::find(unique_schemes.begin(), unique_schemes.end(), chain.scheme) !=
        unique_schemes.end()) {
      continue;
    }
    unique_schemes.push_back(chain.scheme);
    SchemeState st;
    st.cfg = make_modem_config(chain.scheme, Variant::Guard, spec.equal_se);
    st.cfg.window_ramp = 0;  // the SER chain runs unwindowed frames
    st.ch_freq = channel_freq_response(taps, st.cfg.block_len());
    if (chain.scheme == Scheme::Gfdm) {
      st.demod = std::make_shared<GfdmDemodulator>(st.cfg);
      st.demod->prepare(GfdmRxMode::Zf);
      st.demod->prepare(GfdmRxMode::MfDsic);
    }
    states.push_back(std::move(st));
  }
  auto state_of = [&](Scheme s) -> const SchemeState& {
    for (std::size_t i = 0; i < unique_schemes.size(); ++i) {
      if (unique_schemes[i] == s) return states[i];
    }
    throw std::logic_error("scheme state missing");
  };

  const std::size_t n_cfo = spec.cfo_sweep.size();
  const std::size_t n_snr = spec.snr_grid_db.size();
  const std::size_t cells = chains.size() * n_cfo * n_snr;
  std::vector<SerAccum> accum(cells);
  auto cell_index = [&](std::size_t chain, std::size_t c, std::size_t s) {
    return (chain * n_cfo + c) * n_snr + s;
  };

  const long runs = spec.mc_runs;
  const int threads = exec_threads(spec.exec);
#pragma omp parallel num_threads(threads)
  {
    std::vector<SerAccum> local(cells);
#pragma omp for schedule(dynamic)
    for (long t = 0; t < runs; ++t) {
      for (std::size_t ci = 0; ci < chains.size(); ++ci) {
        const ReceiverChain& chain = chains[ci];
        const SchemeState& st = state_of(chain.scheme);
        const ModemConfig& cfg = st.cfg;

        Rng data_rng(spec.seed, stream_id(static_cast<unsigned>(chain.scheme), 0, 1,
                                          static_cast<std::uint64_t>(t)));
        const std::vector<cplx> symbols =
            map_qam4(random_bits(data_rng, 2 * static_cast<std::size_t>(cfg.data_symbols())));

        SymbolGrid tx_grid;
        RealSymbolGrid tx_rgrid;
        ComplexSignal tx;
        if (chain.scheme == Scheme::WcpCoqam) {
          tx_rgrid = build_oqam_grid(symbols, cfg);
          tx = add_cp(wcp_coqam_modulate(tx_rgrid, cfg), cfg.cp_len);
        } else {
          tx_grid = build_symbol_grid(symbols, cfg);
          tx = add_cp(gfdm_modulate(tx_grid, cfg), cfg.cp_len);
        }

        for (std::size_t c = 0; c < n_cfo; ++c) {
          for (std::size_t s = 0; s < n_snr; ++s) {
            ChannelSpec ch;
            ch.taps = taps;
            ch.cfo_frac = spec.cfo_sweep[c];
            ch.noise_var = std::pow(10.0, -spec.snr_grid_db[s] / 10.0);
            ch.cfo_ref_len = kCfoRefLen;
            ch.seed = spec.seed;
            // same noise stream for every (cfo, snr): common random numbers
            Rng noise_rng(spec.seed, stream_id(static_cast<unsigned>(chain.scheme), 1, 2,
                                               static_cast<std::uint64_t>(t)));
            const ComplexSignal rx = apply_channel(tx, ch, noise_rng);

            std::pair<long long, long long> counted{0, 0};
            switch (chain.receiver) {
              case Receiver::OfdmFde:
                counted = ser_count(tx_grid, ofdm_receive(rx, cfg, st.ch_freq), cfg.occupied);
                break;
              case Receiver::GfdmZf:
                counted = ser_count(
                    tx_grid, st.demod->receive(rx, st.ch_freq, GfdmRxMode::Zf), cfg.occupied);
                break;
              case Receiver::GfdmMf:
                counted = ser_count(
                    tx_grid, st.demod->receive(rx, st.ch_freq, GfdmRxMode::Mf), cfg.occupied);
                break;
              case Receiver::GfdmMfDsic:
                counted = ser_count(
                    tx_grid,
                    st.demod->receive(rx, st.ch_freq, GfdmRxMode::MfDsic, spec.dsic_iters),
                    cfg.occupied);
                break;
              case Receiver::CoqamAnalysis:
                counted = ser_count(tx_rgrid, coqam_receive(rx, cfg, st.ch_freq), cfg.occupied);
                break;
              case Receiver::OfdmAwgnRef:
                break;
            }
            SerAccum& cell = local[cell_index(ci, c, s)];
            cell.errors += counted.first;
            cell.frames += 1;
            cell.symbols += counted.second;
          }
        }
      }
    }
#pragma omp critical
    for (std::size_t i = 0; i < cells; ++i) {
      accum[i].errors += local[i].errors;
      accum[i].frames += local[i].frames;
      accum[i].symbols += local[i].symbols;
    }
  }

  SerTable table;
  table.symbols_per_frame = states.empty() ? 0 : states.front().cfg.data_symbols();
  for (std::size_t ci = 0; ci < chains.size(); ++ci) {
    for (std::size_t c = 0; c < n_cfo; ++c) {
      for (std::size_t s = 0; s < n_snr; ++s) {
        const SerAccum& cell = accum[cell_index(ci, c, s)];
        SerPoint p;
        p.scheme = chains[ci].scheme;
        p.receiver = chains[ci].receiver;
        p.cfo_frac = spec.cfo_sweep[c];
        p.snr_db = spec.snr_grid_db[s];
        p.errors = cell.errors;
        p.trials = cell.frames;
        p.total_symbols = cell.symbols;
        table.points.push_back(p);
      }
    }
  }
  // closed-form AWGN reference rows
  for (const SerPoint& ref : awgn_ser_4qam_reference(spec.snr_grid_db).points) {
    SerPoint p = ref;
    p.scheme = Scheme::Ofdm;
    table.points.push_back(p);
  }

  std::sort(table.points.begin(), table.points.end(), [](const SerPoint& a, const SerPoint& b) {
    const auto ka = std::make_tuple(scheme_name(a.scheme), receiver_name(a.receiver),
                                    a.cfo_frac, a.snr_db);
    const auto kb = std::make_tuple(scheme_name(b.scheme), receiver_name(b.receiver),
                                    b.cfo_frac, b.snr_db);
    return ka < kb;
  });
  return table;
}

std::string psd_csv_string(const PsdTable& table) {
  std::string out = "scheme,variant,equal_se,freq_over_fs,psd_db\n";
  for (const PsdRow& r : table.rows) {
    out += r.scheme;
    out += ',';
    out += r.variant;
    out += ',';
    out += r.equal_se ? '1' : '0';
    out += ',';
    out += format_double(r.freq_over_fs);
    out += ',';
    out += format_double(r.psd_db);
    out += '\n';
  }
  return out;
}

std::string ser_csv_string(const SerTable& table) {
  std::string out = "scheme,receiver,cfo_frac,snr_db,errors,trials,ser\n";
  for (const SerPoint& p : table.points) {
    out += scheme_name(p.scheme);
    out += ',';
    out += receiver_name(p.receiver);
    out += ',';
    out += format_double(p.cfo_frac);
    out += ',';
    out += format_double(p.snr_db);
    out += ',';
    out += std::to_string(p.errors);
    out += ',';
    out += std::to_string(p.trials);
    out += ',';
    out += format_double(p.ser());
    out += '\n';
  }
  return out;
}

namespace {
void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw io_error("cannot open output file: " + path);
  f << content;
  if (!f) throw io_error("write failed: " + path);
}
}  // namespace

void write_psd_csv(const PsdTable& table, const std::string& path) {
  write_file(path, psd_csv_string(table));
}

void write_ser_csv(const SerTable& table, const std::string& path) {
  write_file(path, ser_csv_string(table));
}

}  // namespace mcwave
