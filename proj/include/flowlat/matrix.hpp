#pragma once

#include <vector>

#include "flowlat/bigint.hpp"
#include "flowlat/flow.hpp"

namespace flowlat {

// Dense matrix of arbitrary-precision integers, row-major.
struct IntMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<BigInt> a;

  IntMatrix() = default;
  IntMatrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}

  BigInt& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
  const BigInt& at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }

  static IntMatrix identity(int n);
  static IntMatrix from_vertex_matrix(const VertexMatrix& vm);
};

IntMatrix transpose(const IntMatrix& m);

// Vertical concatenation: ker(stack(A, B)) = ker A ∩ ker B.
IntMatrix stack(const IntMatrix& top, const IntMatrix& bottom);

// Rank over the rationals, fraction-free (Bareiss) elimination.
int rank(const IntMatrix& m);

inline int kernel_dimension(const IntMatrix& m) { return m.cols - rank(m); }

// Integer basis of the rational kernel, one basis vector per row.
IntMatrix kernel_basis(const IntMatrix& m);

// Reduced integer basis of the row space, one vector per row.
IntMatrix row_basis(const IntMatrix& m);

// Basis of row_space(a) ∩ row_space(b).
IntMatrix row_space_intersection(const IntMatrix& a, const IntMatrix& b);

}  // namespace flowlat
