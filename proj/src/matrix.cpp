#include "flowlat/matrix.hpp"

#include <numeric>

#include "flowlat/errors.hpp"

namespace flowlat {

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_vertex_matrix(const VertexMatrix& vm) {
  IntMatrix m(vm.rows, vm.cols);
  for (int c = 0; c < vm.cols; ++c) {
    for (int r = 0; r < vm.rows; ++r) {
      if (vm.at(r, c)) m.at(r, c) = 1;
    }
  }
  return m;
}

IntMatrix transpose(const IntMatrix& m) {
  IntMatrix t(m.cols, m.rows);
  for (int r = 0; r < m.rows; ++r) {
    for (int c = 0; c < m.cols; ++c) t.at(c, r) = m.at(r, c);
  }
  return t;
}

IntMatrix stack(const IntMatrix& top, const IntMatrix& bottom) {
  if (top.cols != bottom.cols) throw input_error("stack requires equal column counts");
  IntMatrix m(top.rows + bottom.rows, top.cols);
  std::copy(top.a.begin(), top.a.end(), m.a.begin());
  std::copy(bottom.a.begin(), bottom.a.end(), m.a.begin() + top.a.size());
  return m;
}

int rank(const IntMatrix& input) {
  IntMatrix m = input;
  int r = 0;
  BigInt prev = 1;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int pivot = -1;
    for (int i = r; i < m.rows; ++i) {
      if (m.at(i, c) != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != r) {
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(r, j), m.at(pivot, j));
    }
    for (int i = r + 1; i < m.rows; ++i) {
      for (int j = c + 1; j < m.cols; ++j) {
        m.at(i, j) = (m.at(r, c) * m.at(i, j) - m.at(i, c) * m.at(r, j)) / prev;
      }
      m.at(i, c) = 0;
    }
    prev = m.at(r, c);
    ++r;
  }
  return r;
}

namespace {

struct RatMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<BigRat> a;
  RatMatrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}
  BigRat& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
};

// Gauss-Jordan to reduced row echelon form; returns pivot column per pivot
// row (in order).
std::vector<int> rref(RatMatrix& m) {
  std::vector<int> pivot_cols;
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int pivot = -1;
    for (int i = r; i < m.rows; ++i) {
      if (m.at(i, c) != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != r) {
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(r, j), m.at(pivot, j));
    }
    const BigRat inv = m.at(r, c);
    for (int j = c; j < m.cols; ++j) m.at(r, j) /= inv;
    for (int i = 0; i < m.rows; ++i) {
      if (i == r || m.at(i, c) == 0) continue;
      const BigRat f = m.at(i, c);
      for (int j = c; j < m.cols; ++j) m.at(i, j) -= f * m.at(r, j);
    }
    pivot_cols.push_back(c);
    ++r;
  }
  return pivot_cols;
}

// Scales a rational row to a primitive integer vector.
std::vector<BigInt> to_primitive(const std::vector<BigRat>& row) {
  BigInt lcm = 1;
  for (const auto& v : row) {
    const BigInt den = boost::multiprecision::denominator(v);
    lcm = boost::multiprecision::lcm(lcm, den);
  }
  std::vector<BigInt> out(row.size());
  BigInt g = 0;
  for (std::size_t i = 0; i < row.size(); ++i) {
    out[i] = boost::multiprecision::numerator(row[i]) *
             (lcm / boost::multiprecision::denominator(row[i]));
    g = boost::multiprecision::gcd(g, out[i]);
  }
  if (g > 1) {
    for (auto& v : out) v /= g;
  }
  return out;
}

}  // namespace

IntMatrix kernel_basis(const IntMatrix& input) {
  RatMatrix m(input.rows, input.cols);
  for (std::size_t i = 0; i < input.a.size(); ++i) m.a[i] = BigRat(input.a[i]);
  const std::vector<int> pivots = rref(m);
  std::vector<char> is_pivot(input.cols, 0);
  for (int c : pivots) is_pivot[c] = 1;
  const int dim = input.cols - static_cast<int>(pivots.size());
  IntMatrix basis(dim, input.cols);
  int k = 0;
  for (int c = 0; c < input.cols; ++c) {
    if (is_pivot[c]) continue;
    std::vector<BigRat> vec(input.cols);
    vec[c] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) vec[pivots[r]] = -m.at(static_cast<int>(r), c);
    const auto prim = to_primitive(vec);
    for (int j = 0; j < input.cols; ++j) basis.at(k, j) = prim[j];
    ++k;
  }
  return basis;
}

IntMatrix row_basis(const IntMatrix& input) {
  RatMatrix m(input.rows, input.cols);
  for (std::size_t i = 0; i < input.a.size(); ++i) m.a[i] = BigRat(input.a[i]);
  const std::vector<int> pivots = rref(m);
  IntMatrix basis(static_cast<int>(pivots.size()), input.cols);
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    std::vector<BigRat> row(input.cols);
    for (int j = 0; j < input.cols; ++j) row[j] = m.at(static_cast<int>(r), j);
    const auto prim = to_primitive(row);
    for (int j = 0; j < input.cols; ++j) basis.at(static_cast<int>(r), j) = prim[j];
  }
  return basis;
}

IntMatrix row_space_intersection(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols != b.cols) throw input_error("row-space intersection requires equal widths");
  // Solve x a = y b: kernel of [aᵀ | -bᵀ]; the intersection is spanned by
  // the x-parts applied to a.
  IntMatrix d(a.cols, a.rows + b.rows);
  for (int r = 0; r < a.cols; ++r) {
    for (int c = 0; c < a.rows; ++c) d.at(r, c) = a.at(c, r);
    for (int c = 0; c < b.rows; ++c) d.at(r, a.rows + c) = -b.at(c, r);
  }
  const IntMatrix ker = kernel_basis(d);
  IntMatrix combos(ker.rows, a.cols);
  for (int k = 0; k < ker.rows; ++k) {
    for (int j = 0; j < a.cols; ++j) {
      BigInt sum = 0;
      for (int i = 0; i < a.rows; ++i) sum += ker.at(k, i) * a.at(i, j);
      combos.at(k, j) = sum;
    }
  }
  return row_basis(combos);
}

}  // namespace flowlat
