#pragma once

#include <cstdint>
#include <vector>

#include "mcwave/pulse.hpp"
#include "mcwave/types.hpp"

namespace mcwave {

enum class Scheme { Ofdm, Gfdm, WcpCoqam };

/// Static description of one transmit frame: K subcarriers x M time slots,
/// cyclic prefix, the set of data-bearing subcarriers (everything else is a
/// guard and stays zero) and the edge-window ramp length (0 = unwindowed).
struct ModemConfig {
  Scheme scheme = Scheme::Ofdm;
  int subcarriers = 0;  // K
  int timeslots = 1;    // M, 1 for OFDM
  int cp_len = 0;
  std::vector<int> occupied;  // ascending indices in [0, K)
  int window_ramp = 0;
  PulsePrototype pulse;

  int block_len() const { return subcarriers * timeslots; }
  int frame_len() const { return block_len() + cp_len; }
  int data_symbols() const {
    return static_cast<int>(occupied.size()) * timeslots;
  }
  void validate() const;
};

/// Contiguous block of `count` subcarriers centered on DC (DC included),
/// guards split evenly between the band edges. Returned as ascending
/// unshifted indices in [0, total).
std::vector<int> centered_occupied(int total, int count);

/// K x M complex data symbols, k-major storage; guards hold zero.
struct SymbolGrid {
  int subcarriers = 0;
  int slots = 0;
  std::vector<cplx> values;
  double symbol_variance = 1.0;

  SymbolGrid() = default;
  SymbolGrid(int k, int m)
      : subcarriers(k), slots(m),
        values(static_cast<std::size_t>(k) * m, cplx(0.0, 0.0)) {}
  cplx& at(int k, int m) { return values[static_cast<std::size_t>(k) * slots + m]; }
  const cplx& at(int k, int m) const {
    return values[static_cast<std::size_t>(k) * slots + m];
  }
};

/// K x 2M real data symbols for the offset-QAM scheme.
struct RealSymbolGrid {
  int subcarriers = 0;
  int slots = 0;  // 2M
  std::vector<double> values;

  RealSymbolGrid() = default;
  RealSymbolGrid(int k, int m2)
      : subcarriers(k), slots(m2),
        values(static_cast<std::size_t>(k) * m2, 0.0) {}
  double& at(int k, int m) { return values[static_cast<std::size_t>(k) * slots + m]; }
  const double& at(int k, int m) const {
    return values[static_cast<std::size_t>(k) * slots + m];
  }
};

/// Gray-mapped unit-energy 4-QAM: bit pair (b0, b1) -> ((1-2*b0) + j(1-2*b1))/sqrt(2).
std::vector<cplx> map_qam4(const std::vector<std::uint8_t>& bits);

/// Minimum-distance decisions, ties rounded toward the (0,0) quadrant.
std::vector<std::uint8_t> demap_qam4(const std::vector<cplx>& symbols);

cplx qam4_decide(cplx z);

/// Places |occupied| * M symbols row-major (per occupied subcarrier, slot by
/// slot) onto the grid; guard rows stay zero.
SymbolGrid build_symbol_grid(const std::vector<cplx>& symbols, const ModemConfig& cfg);

/// Offset-QAM staggering: complex symbol at slot m becomes two real symbols,
/// Re at slot 2m and Im at slot 2m+1.
RealSymbolGrid build_oqam_grid(const std::vector<cplx>& symbols, const ModemConfig& cfg);

/// Circular multicarrier synthesis:
///   x[n] = sum_k sum_m d(k,m) p[(n - m K) mod MK] e^{-j 2 pi k n / K}.
/// OFDM is the M=1 rectangular special case.
ComplexSignal gfdm_modulate(const SymbolGrid& grid, const ModemConfig& cfg);

/// Offset-QAM synthesis with K/2-sample staggering:
///   x[n] = sum_k sum_{m<2M} d(k,m) q[(n - m K/2) mod N]
///          e^{j 2 pi (k/K) (n - N/2)} e^{j (pi/2)(k + m)}.
/// The modulation phase is referenced to the pulse center so that the real
/// part of the atom Gram matrix is exactly the identity for an
/// orthogonalized pulse. Requires cfg.pulse.orthogonalized.
ComplexSignal wcp_coqam_modulate(const RealSymbolGrid& grid, const ModemConfig& cfg);

/// Prepends the last cp_len samples.
ComplexSignal add_cp(const ComplexSignal& signal, int cp_len);

/// Pointwise product with the window taps (same length).
ComplexSignal apply_edge_window(const ComplexSignal& signal, const WindowTaps& window);

}  // namespace mcwave
