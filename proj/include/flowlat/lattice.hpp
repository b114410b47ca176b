#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "flowlat/bigint.hpp"
#include "flowlat/matrix.hpp"

namespace flowlat {

// Triangular integer basis of the lattice spanned by a matrix's columns,
// built by gcd column reduction. Membership is decided by successive exact
// elimination against the pivots.
class LatticeBasis {
 public:
  explicit LatticeBasis(const IntMatrix& columns);

  int ambient_dimension() const { return dim_; }
  int rank() const { return static_cast<int>(basis_.size()); }

  bool contains(const std::vector<BigInt>& x) const;
  // Fast path for small vectors; falls back to exact big-integer reduction
  // when intermediate values could overflow.
  bool contains(const std::vector<std::int64_t>& x) const;

 private:
  int dim_;
  std::vector<std::vector<BigInt>> basis_;  // echelon columns
  std::vector<int> pivot_rows_;
  // int64 mirror, usable only when all entries are small.
  bool small_ok_ = false;
  std::vector<std::vector<std::int64_t>> basis_i64_;
};

LatticeBasis lattice_basis(const IntMatrix& columns);
bool lattice_member(const LatticeBasis& basis, const std::vector<BigInt>& x);

// Exact rational feasibility of { A λ = b, λ >= 0 }, phase-1 simplex with
// Bland's smallest-index anti-cycling rule. A floating-point run proposes a
// basis first and its verdict is verified exactly; any doubt falls back to
// the all-rational tableau.
bool feasible_nonneg(const IntMatrix& a, const std::vector<BigInt>& b);

// True iff x lies in the n-th dilation of the convex hull of the columns of
// v: exists rational λ >= 0 with Vλ = x and Σλ = n.
bool dilation_member(const std::vector<BigInt>& x, const IntMatrix& v, const BigInt& n);
bool dilation_member(const std::vector<std::int64_t>& x, const IntMatrix& v, std::int64_t n);

// Membership of x in the cone spanned by the columns of v.
bool cone_member(const std::vector<BigInt>& x, const IntMatrix& v);

// A rational functional w with w · column_j >= 1 for every column, if one
// exists (used to bound semigroup decomposition searches).
std::optional<std::vector<BigRat>> strictly_positive_functional(const IntMatrix& v);

}  // namespace flowlat
