#pragma once

#include <vector>

#include "mcwave/types.hpp"

namespace mcwave {

enum class PulseKind { Rectangular, RaisedCosine, RootRaisedCosine, Dirichlet, Gaussian };

/// Prototype transmit pulse of length subcarriers*timeslots, unit energy.
/// The circular GFDM/OQAM synthesis shifts it by multiples of the subcarrier
/// period (or half of it), so the taps are laid out circularly with the main
/// lobe at index N/2.
struct PulsePrototype {
  std::vector<double> taps;
  PulseKind kind = PulseKind::Rectangular;
  double rolloff = 0.0;
  int subcarriers = 0;  // samples per symbol period
  int timeslots = 0;    // symbol periods covered by the taps
  bool orthogonalized = false;

  int length() const { return subcarriers * timeslots; }
  double energy() const;
};

/// Builds the requested pulse family on the grid t = (n - N/2)/K symbol
/// periods, truncated to M periods and normalized to unit energy.
/// Rectangular is constant over the first K samples (the CP-OFDM case).
/// `gauss_bt` is the Gaussian bandwidth-time product, used only by that kind.
PulsePrototype build_prototype(PulseKind kind, int subcarriers, int timeslots,
                               double rolloff = 0.0, double gauss_bt = 0.3);

/// Orthogonalizes a prototype for offset-QAM use: discrete Zak transform with
/// time step K/2 (2M blocks), each coefficient divided by the root of the
/// summed squared magnitudes of itself and its half-period partner (offset M
/// of 2M in the block-frequency axis), then inverse transform and energy
/// renormalization. The result makes the staggered real-symbol system
/// perfectly reconstructing: the real part of the atom Gram matrix is the
/// identity. Idempotent. Throws degenerate_pulse_error when a coefficient
/// pair vanishes.
PulsePrototype dzt_orthogonalize(const PulsePrototype& p);

/// Edge taper: half-cosine ramps of `ramp_len` samples at both ends with an
/// all-ones interior. Ramp values avoid exact zeros (phase offset by
/// 1/(ramp_len+1)).
struct WindowTaps {
  std::vector<double> taps;
  int ramp_len = 0;
};

WindowTaps edge_window(int total_len, int ramp_len);

}  // namespace mcwave
