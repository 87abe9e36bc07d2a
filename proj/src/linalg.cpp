#include "mcwave/linalg.hpp"

#include <cmath>

#include "mcwave/parallel.hpp"

namespace mcwave {

LuDecomposition::LuDecomposition(CMatrix m) : lu_(std::move(m)) {
  if (lu_.rows != lu_.cols || lu_.rows == 0) {
    throw std::invalid_argument("LuDecomposition: square matrix required");
  }
  const int n = lu_.rows;
  piv_.resize(static_cast<std::size_t>(n));

  double max_abs = 0.0;
  for (const cplx& v : lu_.a) max_abs = std::max(max_abs, std::abs(v));
  const double tol = max_abs * 1e-13 + 1e-300;

  for (int col = 0; col < n; ++col) {
    int pivot = col;
    double best = std::abs(lu_.at(col, col));
    for (int r = col + 1; r < n; ++r) {
      const double v = std::abs(lu_.at(r, col));
      if (v > best) {
        best = v;
        pivot = r;
      }
    }
    if (best <= tol) {
      throw singular_matrix_error("LuDecomposition: singular matrix");
    }
    piv_[col] = pivot;
    if (pivot != col) {
      for (int c = 0; c < n; ++c) std::swap(lu_.at(col, c), lu_.at(pivot, c));
    }
    const cplx inv_piv = 1.0 / lu_.at(col, col);
    // Row updates are independent; the parallel schedule cannot change the
    // arithmetic of any single row.
    const long last = n;
#pragma omp parallel for schedule(static)
    for (long r = col + 1; r < last; ++r) {
      cplx* row = &lu_.at(static_cast<int>(r), 0);
      const cplx* prow = &lu_.at(col, 0);
      const cplx f = row[col] * inv_piv;
      row[col] = f;
      for (int c = col + 1; c < n; ++c) row[c] -= f * prow[c];
    }
  }
}

std::vector<cplx> LuDecomposition::solve(const std::vector<cplx>& b) const {
  const int n = lu_.rows;
  if (static_cast<int>(b.size()) != n) {
    throw std::invalid_argument("LuDecomposition::solve: size mismatch");
  }
  std::vector<cplx> x = b;
  for (int i = 0; i < n; ++i) {
    if (piv_[i] != i) std::swap(x[i], x[piv_[i]]);
    const cplx* row = &lu_.at(i, 0);
    cplx acc = x[i];
    for (int c = 0; c < i; ++c) acc -= row[c] * x[c];
    x[i] = acc;
  }
  for (int i = n - 1; i >= 0; --i) {
    const cplx* row = &lu_.at(i, 0);
    cplx acc = x[i];
    for (int c = i + 1; c < n; ++c) acc -= row[c] * x[c];
    x[i] = acc / row[i];
  }
  return x;
}

}  // namespace mcwave
