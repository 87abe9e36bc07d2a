#include "mcwave/dsp.hpp"

#include <cmath>
#include <cstdint>
#include <memory>
#include <mutex>
#include <unordered_map>

namespace mcwave {
namespace {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

struct FftPlan {
  std::size_t n = 0;
  std::vector<cplx> twiddle;  // forward twiddles for the radix-2 kernel
  // Bluestein state (empty for power-of-two sizes).
  std::size_t conv_n = 0;
  std::vector<cplx> chirp;       // e^{-j pi q^2 / n}
  std::vector<cplx> chirp_spec;  // forward FFT of the padded chirp filter
  std::shared_ptr<const FftPlan> conv_plan;
};

// In-place forward radix-2 transform, unscaled.
void fft_pow2(std::vector<cplx>& data, const FftPlan& plan) {
  const std::size_t n = data.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t step = n / len;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < len / 2; ++k) {
        const cplx w = plan.twiddle[k * step];
        const cplx u = data[i + k];
        const cplx v = data[i + k + len / 2] * w;
        data[i + k] = u + v;
        data[i + k + len / 2] = u - v;
      }
    }
  }
}

std::shared_ptr<const FftPlan> plan_for(std::size_t n);

std::shared_ptr<const FftPlan> make_plan(std::size_t n) {
  auto plan = std::make_shared<FftPlan>();
  plan->n = n;
  if (is_pow2(n)) {
    plan->twiddle.resize(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k) {
      const double a = -2.0 * M_PI * static_cast<double>(k) / static_cast<double>(n);
      plan->twiddle[k] = {std::cos(a), std::sin(a)};
    }
    return plan;
  }
  // Bluestein: chirp angles reduced mod 2n in integers so large q^2 does not
  // lose precision.
  plan->conv_n = next_pow2(2 * n - 1);
  plan->conv_plan = plan_for(plan->conv_n);
  plan->chirp.resize(n);
  for (std::size_t q = 0; q < n; ++q) {
    const std::uint64_t q2 = (static_cast<std::uint64_t>(q) * q) % (2 * n);
    const double a = -M_PI * static_cast<double>(q2) / static_cast<double>(n);
    plan->chirp[q] = {std::cos(a), std::sin(a)};
  }
  std::vector<cplx> filt(plan->conv_n, cplx(0.0, 0.0));
  for (std::size_t q = 0; q < n; ++q) {
    const cplx c = std::conj(plan->chirp[q]);
    filt[q] = c;
    if (q != 0) filt[plan->conv_n - q] = c;
  }
  fft_pow2(filt, *plan->conv_plan);
  plan->chirp_spec = std::move(filt);
  return plan;
}

std::mutex plan_mutex;
std::unordered_map<std::size_t, std::shared_ptr<const FftPlan>> plan_cache;

std::shared_ptr<const FftPlan> plan_for(std::size_t n) {
  {
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto it = plan_cache.find(n);
    if (it != plan_cache.end()) return it->second;
  }
  // Built outside the lock: make_plan recurses into plan_for for the
  // Bluestein convolution size.
  auto plan = make_plan(n);
  std::lock_guard<std::mutex> lock(plan_mutex);
  return plan_cache.emplace(n, std::move(plan)).first->second;
}

std::vector<cplx> fft_forward_raw(std::span<const cplx> input) {
  const std::size_t n = input.size();
  auto plan = plan_for(n);
  if (is_pow2(n)) {
    std::vector<cplx> data(input.begin(), input.end());
    fft_pow2(data, *plan);
    return data;
  }
  std::vector<cplx> a(plan->conv_n, cplx(0.0, 0.0));
  for (std::size_t q = 0; q < n; ++q) a[q] = input[q] * plan->chirp[q];
  fft_pow2(a, *plan->conv_plan);
  for (std::size_t q = 0; q < plan->conv_n; ++q) a[q] *= plan->chirp_spec[q];
  // inverse of the convolution FFT via conjugation
  for (auto& v : a) v = std::conj(v);
  fft_pow2(a, *plan->conv_plan);
  const double scale = 1.0 / static_cast<double>(plan->conv_n);
  std::vector<cplx> out(n);
  for (std::size_t k = 0; k < n; ++k)
    out[k] = std::conj(a[k]) * scale * plan->chirp[k];
  return out;
}

}  // namespace

std::vector<cplx> dft_raw(std::span<const cplx> input, bool inverse) {
  if (input.empty()) throw std::invalid_argument("dft: empty input");
  if (!inverse) return fft_forward_raw(input);
  std::vector<cplx> conj_in(input.size());
  for (std::size_t i = 0; i < input.size(); ++i) conj_in[i] = std::conj(input[i]);
  std::vector<cplx> out = fft_forward_raw(conj_in);
  for (auto& v : out) v = std::conj(v);
  return out;
}

std::vector<cplx> dft(std::span<const cplx> input, bool inverse) {
  std::vector<cplx> out = dft_raw(input, inverse);
  const double scale = 1.0 / std::sqrt(static_cast<double>(input.size()));
  for (auto& v : out) v *= scale;
  return out;
}

double qfunc(double x) {
  if (std::isnan(x)) throw std::invalid_argument("qfunc: NaN input");
  return 0.5 * std::erfc(x / std::sqrt(2.0));
}

}  // namespace mcwave
