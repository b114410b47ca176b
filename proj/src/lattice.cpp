#include "flowlat/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

#include "flowlat/errors.hpp"

namespace flowlat {

namespace {
constexpr std::int64_t kSmallLimit = std::int64_t{1} << 42;
}

LatticeBasis::LatticeBasis(const IntMatrix& columns) : dim_(columns.rows) {
  std::vector<std::vector<BigInt>> active;
  active.reserve(columns.cols);
  for (int c = 0; c < columns.cols; ++c) {
    std::vector<BigInt> col(columns.rows);
    bool nonzero = false;
    for (int r = 0; r < columns.rows; ++r) {
      col[r] = columns.at(r, c);
      nonzero |= col[r] != 0;
    }
    if (nonzero) active.push_back(std::move(col));
  }
  for (int r = 0; r < dim_; ++r) {
    // Gather columns with a nonzero entry in row r and gcd-reduce them down
    // to a single pivot column.
    while (true) {
      int best = -1;
      int count = 0;
      for (int j = 0; j < static_cast<int>(active.size()); ++j) {
        if (active[j][r] == 0) continue;
        ++count;
        if (best < 0 || boost::multiprecision::abs(active[j][r]) <
                            boost::multiprecision::abs(active[best][r])) {
          best = j;
        }
      }
      if (count == 0) break;
      if (count == 1) {
        if (active[best][r] < 0) {
          for (auto& v : active[best]) v = -v;
        }
        pivot_rows_.push_back(r);
        basis_.push_back(std::move(active[best]));
        active.erase(active.begin() + best);
        break;
      }
      for (int j = 0; j < static_cast<int>(active.size()); ++j) {
        if (j == best || active[j][r] == 0) continue;
        const BigInt q = active[j][r] / active[best][r];
        if (q != 0) {
          for (int i = 0; i < dim_; ++i) active[j][i] -= q * active[best][i];
        }
      }
    }
  }
  // Everything left is fully reduced to zero.
  for (const auto& col : active) {
    for (const auto& v : col) {
      if (v != 0) throw std::logic_error("lattice reduction left a nonzero column");
    }
  }
  small_ok_ = true;
  basis_i64_.reserve(basis_.size());
  for (const auto& col : basis_) {
    std::vector<std::int64_t> small(col.size());
    for (std::size_t i = 0; i < col.size(); ++i) {
      if (boost::multiprecision::abs(col[i]) > (std::int64_t{1} << 20)) {
        small_ok_ = false;
        break;
      }
      small[i] = col[i].convert_to<std::int64_t>();
    }
    if (!small_ok_) break;
    basis_i64_.push_back(std::move(small));
  }
  if (!small_ok_) basis_i64_.clear();
}

bool LatticeBasis::contains(const std::vector<BigInt>& x) const {
  if (static_cast<int>(x.size()) != dim_) throw input_error("lattice member: dimension mismatch");
  std::vector<BigInt> y = x;
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    const int p = pivot_rows_[k];
    if (y[p] == 0) continue;
    if (y[p] % basis_[k][p] != 0) return false;
    const BigInt q = y[p] / basis_[k][p];
    for (int i = 0; i < dim_; ++i) y[i] -= q * basis_[k][i];
  }
  for (const auto& v : y) {
    if (v != 0) return false;
  }
  return true;
}

bool LatticeBasis::contains(const std::vector<std::int64_t>& x) const {
  if (static_cast<int>(x.size()) != dim_) throw input_error("lattice member: dimension mismatch");
  if (small_ok_) {
    std::vector<std::int64_t> y = x;
    bool overflow = false;
    for (std::size_t k = 0; k < basis_i64_.size() && !overflow; ++k) {
      const int p = pivot_rows_[k];
      if (y[p] == 0) continue;
      if (y[p] % basis_i64_[k][p] != 0) return false;
      const std::int64_t q = y[p] / basis_i64_[k][p];
      for (int i = 0; i < dim_; ++i) {
        y[i] -= q * basis_i64_[k][i];
        if (std::llabs(y[i]) > kSmallLimit) {
          overflow = true;
          break;
        }
      }
    }
    if (!overflow) {
      for (const auto& v : y) {
        if (v != 0) return false;
      }
      return true;
    }
  }
  std::vector<BigInt> big(x.begin(), x.end());
  return contains(big);
}

LatticeBasis lattice_basis(const IntMatrix& columns) { return LatticeBasis(columns); }

bool lattice_member(const LatticeBasis& basis, const std::vector<BigInt>& x) {
  return basis.contains(x);
}

namespace {

// ---------------------------------------------------------------------------
// Exact phase-1 simplex (reference path). Minimizes the sum of artificial
// variables; Bland's rule on both the entering and leaving choices.
// ---------------------------------------------------------------------------
class ExactPhaseOne {
 public:
  ExactPhaseOne(const IntMatrix& a, const std::vector<BigInt>& b)
      : rows_(a.rows), structural_(a.cols), width_(a.cols + a.rows + 1) {
    t_.assign(static_cast<std::size_t>(rows_) * width_, BigRat(0));
    basis_.resize(rows_);
    for (int i = 0; i < rows_; ++i) {
      const bool flip = b[i] < 0;
      for (int j = 0; j < structural_; ++j) {
        const BigInt& v = a.at(i, j);
        if (v != 0) at(i, j) = flip ? BigRat(-v) : BigRat(v);
      }
      at(i, structural_ + i) = 1;
      rhs(i) = flip ? BigRat(-b[i]) : BigRat(b[i]);
      basis_[i] = structural_ + i;
    }
    w_.assign(width_, BigRat(0));
    for (int i = 0; i < rows_; ++i) {
      for (int j = 0; j < structural_; ++j) w_[j] += at(i, j);
      w_[width_ - 1] += rhs(i);
    }
  }

  bool feasible() {
    while (true) {
      int enter = -1;
      for (int j = 0; j < width_ - 1; ++j) {
        if (w_[j] > 0) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return w_[width_ - 1] == 0;
      int leave = -1;
      BigRat best;
      for (int i = 0; i < rows_; ++i) {
        if (at(i, enter) <= 0) continue;
        BigRat ratio = rhs(i) / at(i, enter);
        if (leave < 0 || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          best = ratio;
          leave = i;
        }
      }
      if (leave < 0) throw std::logic_error("phase-1 objective unbounded");
      pivot(leave, enter);
    }
  }

  // Structural solution after a feasible() run.
  std::vector<BigRat> structural_solution() {
    std::vector<BigRat> x(structural_, BigRat(0));
    for (int i = 0; i < rows_; ++i) {
      if (basis_[i] < structural_) x[basis_[i]] = rhs(i);
    }
    return x;
  }

 private:
  BigRat& at(int i, int j) { return t_[static_cast<std::size_t>(i) * width_ + j]; }
  BigRat& rhs(int i) { return t_[static_cast<std::size_t>(i) * width_ + width_ - 1]; }

  void pivot(int r, int c) {
    const BigRat inv = at(r, c);
    for (int j = 0; j < width_; ++j) at(r, j) /= inv;
    for (int i = 0; i < rows_; ++i) {
      if (i == r || at(i, c) == 0) continue;
      const BigRat f = at(i, c);
      for (int j = 0; j < width_; ++j) at(i, j) -= f * at(r, j);
    }
    if (w_[c] != 0) {
      const BigRat f = w_[c];
      for (int j = 0; j < width_; ++j) w_[j] -= f * at(r, j);
    }
    basis_[r] = c;
  }

  int rows_;
  int structural_;
  int width_;
  std::vector<BigRat> t_;
  std::vector<BigRat> w_;
  std::vector<int> basis_;
};

// ---------------------------------------------------------------------------
// Floating-point phase-1 used as a basis oracle; every verdict is verified
// exactly before being trusted.
// ---------------------------------------------------------------------------
struct FloatOutcome {
  bool converged = false;
  bool feasible = false;
  std::vector<int> basis;
};

FloatOutcome float_phase_one(const IntMatrix& a, const std::vector<BigInt>& b) {
  FloatOutcome out;
  const int rows = a.rows;
  const int structural = a.cols;
  const int width = structural + rows + 1;
  std::vector<double> t(static_cast<std::size_t>(rows) * width, 0.0);
  std::vector<int> basis(rows);
  auto at = [&](int i, int j) -> double& { return t[static_cast<std::size_t>(i) * width + j]; };
  for (int i = 0; i < rows; ++i) {
    const bool flip = b[i] < 0;
    for (int j = 0; j < structural; ++j) {
      const double v = a.at(i, j).convert_to<double>();
      at(i, j) = flip ? -v : v;
    }
    at(i, structural + i) = 1.0;
    const double rv = b[i].convert_to<double>();
    at(i, width - 1) = flip ? -rv : rv;
    basis[i] = structural + i;
  }
  std::vector<double> w(width, 0.0);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < width; ++j) w[j] += at(i, j);
  }
  for (int i = 0; i < rows; ++i) w[structural + i] = 0.0;

  const double eps = 1e-9;
  const int max_iters = 40 * (rows + structural) + 200;
  for (int iter = 0; iter < max_iters; ++iter) {
    // Dantzig-style entering choice keeps the iteration count low; exactness
    // comes from the verification step, not from this run.
    int enter = -1;
    double best_w = eps;
    for (int j = 0; j < width - 1; ++j) {
      if (w[j] > best_w) {
        best_w = w[j];
        enter = j;
      }
    }
    if (enter < 0) {
      out.converged = true;
      out.feasible = std::fabs(w[width - 1]) < 1e-7;
      out.basis = basis;
      return out;
    }
    int leave = -1;
    double best_ratio = 0.0;
    for (int i = 0; i < rows; ++i) {
      if (at(i, enter) <= eps) continue;
      const double ratio = at(i, width - 1) / at(i, enter);
      if (leave < 0 || ratio < best_ratio - eps ||
          (ratio < best_ratio + eps && basis[i] < basis[leave])) {
        best_ratio = ratio;
        leave = i;
      }
    }
    if (leave < 0) return out;  // numerically unbounded: bail
    const double inv = at(leave, enter);
    for (int j = 0; j < width; ++j) at(leave, j) /= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == leave) continue;
      const double f = at(i, enter);
      if (std::fabs(f) < 1e-13) continue;
      for (int j = 0; j < width; ++j) at(i, j) -= f * at(leave, j);
    }
    const double fw = w[enter];
    if (std::fabs(fw) > 1e-13) {
      for (int j = 0; j < width; ++j) w[j] -= fw * at(leave, j);
    }
    basis[leave] = enter;
  }
  return out;
}

// Solves square · x = rhs exactly; empty on singular.
std::optional<std::vector<BigRat>> solve_square(std::vector<std::vector<BigRat>> m,
                                                std::vector<BigRat> rhs) {
  const int n = static_cast<int>(m.size());
  std::vector<int> perm(n);
  for (int c = 0; c < n; ++c) {
    int pivot = -1;
    for (int r = c; r < n; ++r) {
      if (m[r][c] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) return std::nullopt;
    std::swap(m[c], m[pivot]);
    std::swap(rhs[c], rhs[pivot]);
    const BigRat inv = m[c][c];
    for (int j = c; j < n; ++j) m[c][j] /= inv;
    rhs[c] /= inv;
    for (int r = 0; r < n; ++r) {
      if (r == c || m[r][c] == 0) continue;
      const BigRat f = m[r][c];
      for (int j = c; j < n; ++j) m[r][j] -= f * m[c][j];
      rhs[r] -= f * rhs[c];
    }
  }
  return rhs;
}

// Certifies a basis proposed by the float run. Returns nothing when the
// certificate does not check out.
std::optional<bool> verify_basis(const IntMatrix& a, const std::vector<BigInt>& b,
                                 const FloatOutcome& out) {
  const int rows = a.rows;
  const int structural = a.cols;
  std::vector<std::vector<BigRat>> bm(rows, std::vector<BigRat>(rows));
  for (int i = 0; i < rows; ++i) {
    for (int k = 0; k < rows; ++k) {
      const int col = out.basis[k];
      bm[i][k] = col < structural ? BigRat(a.at(i, col)) : BigRat(col - structural == i ? 1 : 0);
    }
  }
  if (out.feasible) {
    // Exact basic solution must be nonnegative and free of artificial mass.
    std::vector<BigRat> rhs(rows);
    for (int i = 0; i < rows; ++i) rhs[i] = BigRat(b[i]);
    auto x = solve_square(bm, rhs);
    if (!x) return std::nullopt;
    for (int k = 0; k < rows; ++k) {
      if ((*x)[k] < 0) return std::nullopt;
      if (out.basis[k] >= structural && (*x)[k] != 0) return std::nullopt;
    }
    return true;
  }
  // Farkas certificate: y = cB B^{-T}, check yᵀ A_j <= 0 for all structural
  // j and yᵀ b > 0.
  std::vector<std::vector<BigRat>> bt(rows, std::vector<BigRat>(rows));
  for (int i = 0; i < rows; ++i) {
    for (int k = 0; k < rows; ++k) bt[i][k] = bm[k][i];
  }
  std::vector<BigRat> cb(rows);
  for (int k = 0; k < rows; ++k) cb[k] = out.basis[k] >= structural ? 1 : 0;
  auto y = solve_square(bt, cb);
  if (!y) return std::nullopt;
  BigRat yb = 0;
  for (int i = 0; i < rows; ++i) yb += (*y)[i] * BigRat(b[i]);
  if (yb <= 0) return std::nullopt;
  for (int j = 0; j < structural; ++j) {
    BigRat dot = 0;
    for (int i = 0; i < rows; ++i) {
      if (a.at(i, j) != 0) dot += (*y)[i] * BigRat(a.at(i, j));
    }
    if (dot > 0) return std::nullopt;
  }
  return false;
}

}  // namespace

bool feasible_nonneg(const IntMatrix& a, const std::vector<BigInt>& b) {
  if (static_cast<int>(b.size()) != a.rows) throw input_error("feasibility: dimension mismatch");
  bool all_zero = true;
  for (const auto& v : b) all_zero &= v == 0;
  if (all_zero) return true;

  const FloatOutcome out = float_phase_one(a, b);
  if (out.converged) {
    if (auto verdict = verify_basis(a, b, out)) return *verdict;
  }
  ExactPhaseOne exact(a, b);
  return exact.feasible();
}

bool dilation_member(const std::vector<BigInt>& x, const IntMatrix& v, const BigInt& n) {
  if (static_cast<int>(x.size()) != v.rows) throw input_error("dilation member: dimension mismatch");
  if (n < 0) throw input_error("dilation must be nonnegative");
  IntMatrix a(v.rows + 1, v.cols);
  std::copy(v.a.begin(), v.a.end(), a.a.begin());
  for (int c = 0; c < v.cols; ++c) a.at(v.rows, c) = 1;
  std::vector<BigInt> b = x;
  b.push_back(n);
  return feasible_nonneg(a, b);
}

bool dilation_member(const std::vector<std::int64_t>& x, const IntMatrix& v, std::int64_t n) {
  std::vector<BigInt> big(x.begin(), x.end());
  return dilation_member(big, v, BigInt(n));
}

bool cone_member(const std::vector<BigInt>& x, const IntMatrix& v) {
  if (static_cast<int>(x.size()) != v.rows) throw input_error("cone member: dimension mismatch");
  return feasible_nonneg(v, x);
}

std::optional<std::vector<BigRat>> strictly_positive_functional(const IntMatrix& v) {
  // w · col_j >= 1 for all j; split w = w+ - w- and add surplus variables:
  // [Vᵀ | -Vᵀ | -I] (w+; w-; s) = 1.
  IntMatrix a(v.cols, 2 * v.rows + v.cols);
  for (int j = 0; j < v.cols; ++j) {
    for (int i = 0; i < v.rows; ++i) {
      a.at(j, i) = v.at(i, j);
      a.at(j, v.rows + i) = -v.at(i, j);
    }
    a.at(j, 2 * v.rows + j) = -1;
  }
  std::vector<BigInt> b(v.cols, BigInt(1));
  ExactPhaseOne exact(a, b);
  if (!exact.feasible()) return std::nullopt;
  const std::vector<BigRat> sol = exact.structural_solution();
  std::vector<BigRat> w(v.rows);
  for (int i = 0; i < v.rows; ++i) w[i] = sol[i] - sol[v.rows + i];
  return w;
}

}  // namespace flowlat
