#include "mcwave/modem.hpp"

#include <algorithm>
#include <cmath>

#include "mcwave/dsp.hpp"

namespace mcwave {

void ModemConfig::validate() const {
  if (subcarriers < 2 || timeslots < 1 || cp_len < 0) {
    throw std::invalid_argument("ModemConfig: bad dimensions");
  }
  if (scheme == Scheme::Ofdm && timeslots != 1) {
    throw std::invalid_argument("ModemConfig: OFDM uses a single time slot");
  }
  if (static_cast<int>(occupied.size()) > subcarriers) {
    throw std::invalid_argument("ModemConfig: more occupied carriers than subcarriers");
  }
  for (int k : occupied) {
    if (k < 0 || k >= subcarriers) {
      throw std::invalid_argument("ModemConfig: occupied index out of range");
    }
  }
  if (pulse.length() != block_len()) {
    throw std::invalid_argument("ModemConfig: pulse length must equal K*M");
  }
  if (scheme == Scheme::WcpCoqam) {
    if (!pulse.orthogonalized) {
      throw std::invalid_argument("ModemConfig: WCP-COQAM needs an orthogonalized pulse");
    }
    if (subcarriers % 2 != 0) {
      throw std::invalid_argument("ModemConfig: WCP-COQAM needs even K");
    }
  }
}

std::vector<int> centered_occupied(int total, int count) {
  if (count < 0 || count > total) {
    throw std::invalid_argument("centered_occupied: bad count");
  }
  std::vector<int> occ(static_cast<std::size_t>(count));
  const int lo = -(count / 2);
  for (int i = 0; i < count; ++i) {
    occ[i] = ((lo + i) % total + total) % total;
  }
  std::sort(occ.begin(), occ.end());
  return occ;
}

std::vector<cplx> map_qam4(const std::vector<std::uint8_t>& bits) {
  if (bits.size() % 2 != 0) throw std::invalid_argument("map_qam4: odd bit count");
  const double s = 1.0 / std::sqrt(2.0);
  std::vector<cplx> out(bits.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = {s * (1 - 2 * bits[2 * i]), s * (1 - 2 * bits[2 * i + 1])};
  }
  return out;
}

std::vector<std::uint8_t> demap_qam4(const std::vector<cplx>& symbols) {
  std::vector<std::uint8_t> bits(symbols.size() * 2);
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    bits[2 * i] = symbols[i].real() < 0.0 ? 1 : 0;
    bits[2 * i + 1] = symbols[i].imag() < 0.0 ? 1 : 0;
  }
  return bits;
}

cplx qam4_decide(cplx z) {
  const double s = 1.0 / std::sqrt(2.0);
  return {z.real() < 0.0 ? -s : s, z.imag() < 0.0 ? -s : s};
}

SymbolGrid build_symbol_grid(const std::vector<cplx>& symbols, const ModemConfig& cfg) {
  if (symbols.size() != cfg.occupied.size() * static_cast<std::size_t>(cfg.timeslots)) {
    throw std::invalid_argument("build_symbol_grid: symbol count mismatch");
  }
  SymbolGrid grid(cfg.subcarriers, cfg.timeslots);
  std::size_t idx = 0;
  for (int k : cfg.occupied) {
    for (int m = 0; m < cfg.timeslots; ++m) grid.at(k, m) = symbols[idx++];
  }
  return grid;
}

RealSymbolGrid build_oqam_grid(const std::vector<cplx>& symbols, const ModemConfig& cfg) {
  if (symbols.size() != cfg.occupied.size() * static_cast<std::size_t>(cfg.timeslots)) {
    throw std::invalid_argument("build_oqam_grid: symbol count mismatch");
  }
  RealSymbolGrid grid(cfg.subcarriers, 2 * cfg.timeslots);
  std::size_t idx = 0;
  for (int k : cfg.occupied) {
    for (int m = 0; m < cfg.timeslots; ++m) {
      grid.at(k, 2 * m) = symbols[idx].real();
      grid.at(k, 2 * m + 1) = symbols[idx].imag();
      ++idx;
    }
  }
  return grid;
}

ComplexSignal gfdm_modulate(const SymbolGrid& grid, const ModemConfig& cfg) {
  if (cfg.scheme == Scheme::WcpCoqam) {
    throw std::invalid_argument("gfdm_modulate: wrong scheme");
  }
  const int k_total = cfg.subcarriers;
  const int m_total = cfg.timeslots;
  const int n = k_total * m_total;
  if (cfg.pulse.length() != n || grid.subcarriers != k_total || grid.slots != m_total) {
    throw std::invalid_argument("gfdm_modulate: pulse/grid/config size mismatch");
  }
  std::vector<cplx> x(static_cast<std::size_t>(n), cplx(0.0, 0.0));
  std::vector<cplx> col(static_cast<std::size_t>(k_total));
  for (int m = 0; m < m_total; ++m) {
    for (int k = 0; k < k_total; ++k) col[k] = grid.at(k, m);
    // per-slot tone sum: raw forward DFT gives sum_k d_k e^{-j2pi k r / K}
    std::vector<cplx> tones = dft_raw(col, false);
    const int shift = m * k_total;
    for (int i = 0; i < n; ++i) {
      const int pi_idx = (i - shift + n) % n;
      x[i] += cfg.pulse.taps[pi_idx] * tones[i % k_total];
    }
  }
  return ComplexSignal(std::move(x), 1.0);
}

ComplexSignal wcp_coqam_modulate(const RealSymbolGrid& grid, const ModemConfig& cfg) {
  if (cfg.scheme != Scheme::WcpCoqam) {
    throw std::invalid_argument("wcp_coqam_modulate: wrong scheme");
  }
  if (!cfg.pulse.orthogonalized) {
    throw std::invalid_argument("wcp_coqam_modulate: pulse must be orthogonalized");
  }
  const int k_total = cfg.subcarriers;
  const int m_total = cfg.timeslots;
  const int n = k_total * m_total;
  const int half = k_total / 2;
  if (cfg.pulse.length() != n || grid.subcarriers != k_total || grid.slots != 2 * m_total) {
    throw std::invalid_argument("wcp_coqam_modulate: pulse/grid/config size mismatch");
  }
  std::vector<cplx> x(static_cast<std::size_t>(n), cplx(0.0, 0.0));
  std::vector<cplx> col(static_cast<std::size_t>(k_total));
  for (int m = 0; m < 2 * m_total; ++m) {
    for (int k = 0; k < k_total; ++k) {
      // (pi/2)(k+m) symbol phase plus the pulse-center reference
      // e^{-j 2 pi k (N/2) / K} = e^{-j pi k M}.
      cplx w = cplx(0.0, 1.0);
      int quarter = (k + m) % 4;
      cplx phase = quarter == 0 ? cplx(1, 0)
                  : quarter == 1 ? w
                  : quarter == 2 ? cplx(-1, 0)
                                 : -w;
      if ((static_cast<long>(k) * m_total) % 2 != 0) phase = -phase;
      col[k] = grid.at(k, m) * phase;
    }
    // sum_k col_k e^{+j 2 pi k r / K}: raw inverse DFT scaled by K
    std::vector<cplx> tones = dft_raw(col, true);
    const int shift = m * half;
    for (int i = 0; i < n; ++i) {
      const int qi_idx = (i - shift + n) % n;
      x[i] += cfg.pulse.taps[qi_idx] * tones[i % k_total];
    }
  }
  return ComplexSignal(std::move(x), 1.0);
}

ComplexSignal add_cp(const ComplexSignal& signal, int cp_len) {
  const int n = static_cast<int>(signal.size());
  if (cp_len < 0 || cp_len >= n) {
    throw std::invalid_argument("add_cp: cp_len must be in [0, length)");
  }
  std::vector<cplx> out;
  out.reserve(signal.size() + cp_len);
  out.insert(out.end(), signal.samples.end() - cp_len, signal.samples.end());
  out.insert(out.end(), signal.samples.begin(), signal.samples.end());
  return ComplexSignal(std::move(out), signal.sample_rate);
}

ComplexSignal apply_edge_window(const ComplexSignal& signal, const WindowTaps& window) {
  if (signal.size() != window.taps.size()) {
    throw std::invalid_argument("apply_edge_window: length mismatch");
  }
  ComplexSignal out = signal;
  for (std::size_t i = 0; i < out.samples.size(); ++i) out.samples[i] *= window.taps[i];
  return out;
}

}  // namespace mcwave
