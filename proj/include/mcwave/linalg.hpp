#pragma once

#include <vector>

#include "mcwave/types.hpp"

namespace mcwave {

/// Dense complex matrix, row-major.
struct CMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<cplx> a;

  CMatrix() = default;
  CMatrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}
  cplx& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
  const cplx& at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }
};

/// LU factorization with partial pivoting, kept for repeated solves.
/// Throws singular_matrix_error when a pivot collapses.
class LuDecomposition {
 public:
  explicit LuDecomposition(CMatrix m);

  /// Solves A x = b.
  std::vector<cplx> solve(const std::vector<cplx>& b) const;

 private:
  CMatrix lu_;
  std::vector<int> piv_;
};

}  // namespace mcwave
