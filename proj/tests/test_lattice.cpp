#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "flowlat/errors.hpp"
#include "flowlat/flow.hpp"
#include "flowlat/lattice.hpp"
#include "flowlat/matrix.hpp"
#include "support/oracles.hpp"

using namespace flowlat;

namespace {

IntMatrix tripod_z2_vertices() {
  return IntMatrix::from_vertex_matrix(vertex_matrix(builtin_tree("tripod"), parse_group("Z2")));
}

std::vector<BigInt> column_of(const IntMatrix& m, int c) {
  std::vector<BigInt> x(m.rows);
  for (int r = 0; r < m.rows; ++r) x[r] = m.at(r, c);
  return x;
}

}  // namespace

TEST_CASE("rank basics") {
  CHECK(rank(IntMatrix::identity(3)) == 3);
  const IntMatrix v = tripod_z2_vertices();
  CHECK(rank(v) == 4);
  CHECK(rank(v) == oracles::rational_rank(v));

  const IntMatrix claw4 =
      IntMatrix::from_vertex_matrix(vertex_matrix(builtin_tree("claw", 4), parse_group("Z2")));
  CHECK(rank(claw4) == 5);
  CHECK(oracles::rational_rank(claw4) == 5);
}

TEST_CASE("rank is transpose- and order-invariant") {
  std::mt19937 rng(20240817);
  std::uniform_int_distribution<int> entry(-3, 3);
  for (int trial = 0; trial < 25; ++trial) {
    IntMatrix m(6, 5);
    for (auto& v : m.a) v = entry(rng);
    const int r = rank(m);
    CHECK(r == oracles::rational_rank(m));
    CHECK(r == rank(transpose(m)));

    // Shuffle rows and columns; the rank must not move.
    IntMatrix shuffled = m;
    std::vector<int> rows(m.rows), cols(m.cols);
    for (int i = 0; i < m.rows; ++i) rows[i] = i;
    for (int j = 0; j < m.cols; ++j) cols[j] = j;
    std::shuffle(rows.begin(), rows.end(), rng);
    std::shuffle(cols.begin(), cols.end(), rng);
    for (int i = 0; i < m.rows; ++i) {
      for (int j = 0; j < m.cols; ++j) shuffled.at(i, j) = m.at(rows[i], cols[j]);
    }
    CHECK(rank(shuffled) == r);
  }
}

TEST_CASE("stacking") {
  const IntMatrix i2 = IntMatrix::identity(2);
  const IntMatrix s = stack(i2, i2);
  CHECK(s.rows == 4);
  CHECK(rank(s) == 2);

  const IntMatrix v = tripod_z2_vertices();
  IntMatrix neg = v;
  for (auto& x : neg.a) x = -x;
  CHECK(rank(stack(v, neg)) == rank(v));
  CHECK(rank(stack(v, v)) == rank(v));

  CHECK_THROWS_AS(stack(i2, IntMatrix::identity(3)), input_error);
}

TEST_CASE("kernel dimensions and the stack identity") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> entry(-2, 2);
  for (int trial = 0; trial < 20; ++trial) {
    IntMatrix a(4, 6), b(3, 6);
    for (auto& v : a.a) v = entry(rng);
    for (auto& v : b.a) v = entry(rng);
    // dim(ker a + ker b) = dim ker a + dim ker b - dim ker(stack(a, b))
    const int lhs_direct = [&] {
      const IntMatrix ka = kernel_basis(a);
      const IntMatrix kb = kernel_basis(b);
      if (ka.rows == 0 && kb.rows == 0) return 0;
      if (ka.rows == 0) return kb.rows;
      if (kb.rows == 0) return ka.rows;
      return rank(stack(ka, kb));
    }();
    const int rhs = kernel_dimension(a) + kernel_dimension(b) - kernel_dimension(stack(a, b));
    CHECK(lhs_direct == rhs);
  }
}

TEST_CASE("kernel basis spans the kernel") {
  const IntMatrix v = tripod_z2_vertices();
  const IntMatrix k = kernel_basis(v);
  CHECK(k.rows == v.cols - rank(v));
  for (int i = 0; i < k.rows; ++i) {
    for (int r = 0; r < v.rows; ++r) {
      BigInt dot = 0;
      for (int c = 0; c < v.cols; ++c) dot += v.at(r, c) * k.at(i, c);
      CHECK(dot == 0);
    }
  }
}

TEST_CASE("row space intersection") {
  // row(a) ∩ row(a) = row(a); intersection with a full space returns a.
  const IntMatrix v = transpose(tripod_z2_vertices());
  const IntMatrix self = row_space_intersection(v, v);
  CHECK(self.rows == rank(v));
  const IntMatrix full = IntMatrix::identity(v.cols);
  CHECK(row_space_intersection(v, full).rows == rank(v));
}

TEST_CASE("lattice membership for the binary tripod") {
  const IntMatrix v = tripod_z2_vertices();
  const LatticeBasis basis(v);
  CHECK(basis.rank() == 4);

  for (int c = 0; c < v.cols; ++c) CHECK(basis.contains(column_of(v, c)));

  std::vector<BigInt> sum = column_of(v, 0);
  const auto c1 = column_of(v, 1);
  for (int r = 0; r < v.rows; ++r) sum[r] += c1[r];
  CHECK(basis.contains(sum));

  // Unequal block sums can never lie in the lattice.
  std::vector<BigInt> unit(6, BigInt(0));
  unit[0] = 1;
  CHECK_FALSE(basis.contains(unit));

  CHECK_THROWS_AS(basis.contains(std::vector<BigInt>(5)), input_error);
}

TEST_CASE("lattice membership agrees with the unique-solve oracle") {
  // The binary tripod's four vertices are linearly independent, so exact
  // rational solving decides membership independently of the reduction.
  const IntMatrix v = tripod_z2_vertices();
  const LatticeBasis basis(v);
  for (int a = -2; a <= 2; ++a) {
    for (int b = -2; b <= 2; ++b) {
      for (int c = -2; c <= 2; ++c) {
        for (int d = -2; d <= 2; ++d) {
          for (int e = -2; e <= 2; ++e) {
            for (int f = -2; f <= 2; ++f) {
              const std::vector<BigInt> x{a, b, c, d, e, f};
              CHECK(basis.contains(x) == oracles::simplex_lattice_member(v, x));
            }
          }
        }
      }
    }
  }
}

TEST_CASE("dilation membership") {
  const IntMatrix v = tripod_z2_vertices();

  for (int c = 0; c < v.cols; ++c) {
    std::vector<BigInt> x = column_of(v, c);
    CHECK(dilation_member(x, v, BigInt(1)));
    for (auto& value : x) value *= 3;
    CHECK(dilation_member(x, v, BigInt(3)));
  }

  std::vector<BigInt> sum = column_of(v, 0);
  const auto c1 = column_of(v, 1);
  for (int r = 0; r < v.rows; ++r) sum[r] += c1[r];
  CHECK(dilation_member(sum, v, BigInt(2)));

  // An edge block summing to n-1 violates the necessary block-sum condition.
  std::vector<BigInt> bad = sum;
  bad[0] -= 1;
  CHECK_FALSE(dilation_member(bad, v, BigInt(2)));

  CHECK_THROWS_AS(dilation_member(std::vector<BigInt>(5), v, BigInt(1)), input_error);
}

TEST_CASE("dilation membership agrees with the unique-solve oracle on 2P") {
  const IntMatrix v = tripod_z2_vertices();
  int members = 0;
  // All candidates whose three blocks each sum to 2.
  for (int a = 0; a <= 2; ++a) {
    for (int b = 0; b <= 2; ++b) {
      for (int c = 0; c <= 2; ++c) {
        const std::vector<BigInt> x{a, 2 - a, b, 2 - b, c, 2 - c};
        const bool expected = oracles::simplex_dilation_member(v, x, 2);
        CHECK(dilation_member(x, v, BigInt(2)) == expected);
        if (expected && oracles::simplex_lattice_member(v, x)) ++members;
      }
    }
  }
  CHECK(members == 10);  // the ten lattice points of 2P
}

TEST_CASE("feasibility verdicts on constructed instances") {
  // Instances whose answer is known by construction: b = Aλ with λ >= 0 is
  // feasible; a Farkas pair (yᵀA <= 0, yᵀb > 0) is infeasible.
  std::mt19937 rng(424242);
  std::uniform_int_distribution<int> entry(-4, 4);
  std::uniform_int_distribution<int> coeff(0, 3);
  for (int trial = 0; trial < 120; ++trial) {
    const int rows = 3 + trial % 4;
    const int cols = 2 + trial % 6;
    IntMatrix a(rows, cols);
    for (auto& v : a.a) v = entry(rng);

    std::vector<BigInt> lambda(cols);
    for (auto& v : lambda) v = coeff(rng);
    std::vector<BigInt> b(rows, BigInt(0));
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) b[r] += a.at(r, c) * lambda[c];
    }
    CHECK(feasible_nonneg(a, b));
  }
  for (int trial = 0; trial < 120; ++trial) {
    const int rows = 3 + trial % 4;
    const int cols = 2 + trial % 6;
    std::vector<BigInt> y(rows);
    bool nonzero = false;
    for (auto& v : y) {
      v = entry(rng);
      nonzero |= v != 0;
    }
    if (!nonzero) y[0] = 1;
    // Build columns with yᵀA_j <= 0 by flipping the sign of bad draws.
    IntMatrix a(rows, cols);
    for (int c = 0; c < cols; ++c) {
      std::vector<BigInt> col(rows);
      BigInt dot = 0;
      for (int r = 0; r < rows; ++r) {
        col[r] = entry(rng);
        dot += y[r] * col[r];
      }
      const bool flip = dot > 0;
      for (int r = 0; r < rows; ++r) a.at(r, c) = flip ? -col[r] : col[r];
    }
    // And a right-hand side with yᵀb > 0.
    std::vector<BigInt> b(rows);
    while (true) {
      BigInt dot = 0;
      for (int r = 0; r < rows; ++r) {
        b[r] = entry(rng);
        dot += y[r] * b[r];
      }
      if (dot > 0) break;
    }
    CHECK_FALSE(feasible_nonneg(a, b));
  }
}

TEST_CASE("cone membership and positive functionals") {
  const IntMatrix v =
      IntMatrix::from_vertex_matrix(vertex_matrix(builtin_tree("tripod"), parse_group("Z3")));
  // Shift by vertex 0 and examine the cone generated by the others.
  IntMatrix shifted(v.rows, v.cols - 1);
  for (int c = 1; c < v.cols; ++c) {
    for (int r = 0; r < v.rows; ++r) shifted.at(r, c - 1) = v.at(r, c) - v.at(r, 0);
  }
  const auto w = strictly_positive_functional(shifted);
  REQUIRE(w.has_value());
  for (int c = 0; c < shifted.cols; ++c) {
    BigRat dot = 0;
    for (int r = 0; r < shifted.rows; ++r) dot += (*w)[r] * BigRat(shifted.at(r, c));
    CHECK(dot >= 1);
  }

  std::vector<BigInt> gen = column_of(shifted, 2);
  CHECK(cone_member(gen, shifted));
  for (auto& value : gen) value *= 5;
  CHECK(cone_member(gen, shifted));
  std::vector<BigInt> outside(v.rows, BigInt(0));
  outside[0] = 1;  // positive on the support of vertex 0: impossible in the cone
  CHECK_FALSE(cone_member(outside, shifted));
}
