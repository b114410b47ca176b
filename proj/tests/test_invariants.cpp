#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "flowlat/errors.hpp"
#include "flowlat/flow.hpp"
#include "flowlat/invariants.hpp"
#include "support/oracles.hpp"

using namespace flowlat;

namespace {

// The degree-two relation on the five-leaf tree with six edges: two leaves
// at the first inner vertex, the inner edge third, three leaves below.
BinomialPair five_leaf_example() {
  Tree tree = parse_tree("(1,2,(3,4,5));");
  Group z2 = parse_group("Z2");
  std::vector<std::vector<int>> a1{{1, 0}, {0, 1}, {1, 1}, {1, 0}, {0, 1}, {0, 0}};
  std::vector<std::vector<int>> a2{{0, 1}, {1, 0}, {1, 1}, {1, 0}, {0, 1}, {0, 0}};
  return BinomialPair(std::move(tree), std::move(z2), 2, std::move(a1), std::move(a2));
}

BinomialPair claw4_example() {
  Tree tree = builtin_tree("claw", 4);
  Group z2 = parse_group("Z2");
  // Columns of A1 are the flows (1,1,0,0) and (0,0,1,1); of A2, (1,0,1,0)
  // and (0,1,0,1).
  std::vector<std::vector<int>> a1{{1, 0}, {1, 0}, {0, 1}, {0, 1}};
  std::vector<std::vector<int>> a2{{1, 0}, {0, 1}, {1, 0}, {0, 1}};
  return BinomialPair(std::move(tree), std::move(z2), 2, std::move(a1), std::move(a2));
}

}  // namespace

TEST_CASE("verify binomial") {
  CHECK(verify_binomial(five_leaf_example()));
  CHECK(verify_binomial(claw4_example()));

  // Flipping one entry of A2 breaks the row multiset equality.
  auto flipped = five_leaf_example();
  flipped.a2[3][0] = 0;
  CHECK_FALSE(verify_binomial(flipped));

  // A pair of equal matrices is trivially a relation.
  auto trivial = five_leaf_example();
  trivial.a2 = trivial.a1;
  CHECK(verify_binomial(trivial));

  // Columns must be flows: transplant entries within a row pair so the row
  // multisets survive but a column becomes unbalanced.
  auto unbalanced = claw4_example();
  unbalanced.a1 = {{1, 0}, {1, 0}, {1, 0}, {0, 1}};
  unbalanced.a2 = unbalanced.a1;
  CHECK_FALSE(verify_binomial(unbalanced));
}

TEST_CASE("binomial shape errors") {
  auto pair = claw4_example();
  pair.a1[0][0] = 7;
  CHECK_THROWS_AS(verify_binomial(pair), input_error);
  auto short_pair = claw4_example();
  short_pair.a1.pop_back();
  CHECK_THROWS_AS(verify_binomial(short_pair), input_error);
}

TEST_CASE("subdivision witness for the claw example") {
  const auto pair = claw4_example();
  const auto witness = find_subdivision(pair);
  REQUIRE(witness.has_value());
  // {1,2} and {1,3} fail the column-sum test; {1,4} is the first success.
  const Group z2 = pair.group;
  for (const std::vector<int>& s : {std::vector<int>{1, 2}, std::vector<int>{1, 3}}) {
    bool all_zero = true;
    for (int c = 0; c < pair.degree; ++c) {
      int sum = z2.zero();
      for (int l : s) {
        sum = z2.add(sum, z2.add(pair.a1[l - 1][c], z2.neg(pair.a2[l - 1][c])));
      }
      all_zero &= sum == z2.zero();
    }
    CHECK_FALSE(all_zero);
  }
  CHECK(witness->rows == std::vector<int>{1, 4});
  CHECK(witness->prolongation.inner_count() == 2);

  // The witness column-sum condition re-verifies.
  for (int c = 0; c < pair.degree; ++c) {
    int sum = z2.zero();
    for (int l : witness->rows) {
      sum = z2.add(sum, z2.add(pair.a1[l - 1][c], z2.neg(pair.a2[l - 1][c])));
    }
    CHECK(sum == z2.zero());
  }
}

TEST_CASE("trivial binomials subdivide at the first split") {
  auto pair = claw4_example();
  pair.a2 = pair.a1;
  const auto witness = find_subdivision(pair);
  REQUIRE(witness.has_value());
  CHECK(witness->rows == std::vector<int>{1, 2});

  // Degree-1: a single repeated column.
  Tree claw = builtin_tree("claw", 4);
  Group z2 = parse_group("Z2");
  std::vector<std::vector<int>> col{{1}, {1}, {1}, {1}};
  const BinomialPair degree1(std::move(claw), std::move(z2), 1, col, col);
  const auto w1 = find_subdivision(degree1);
  REQUIRE(w1.has_value());
  CHECK(w1->rows == std::vector<int>{1, 2});
}

TEST_CASE("subdivision preconditions") {
  auto bad = claw4_example();
  bad.a2[0][0] = bad.a2[0][0] ^ 1;
  CHECK_THROWS_AS(find_subdivision(bad), input_error);  // unverified pair

  Tree tripod = builtin_tree("tripod");
  Group z2 = parse_group("Z2");
  std::vector<std::vector<int>> rows{{0}, {0}, {0}};
  const BinomialPair on_tripod(std::move(tripod), std::move(z2), 1, rows, rows);
  CHECK_THROWS_AS(find_subdivision(on_tripod), input_error);  // needs n >= 4
}

TEST_CASE("witness extension lands in the prolongation ideal") {
  const auto pair = claw4_example();
  const auto witness = find_subdivision(pair);
  REQUIRE(witness.has_value());
  const auto extended = extend_by_witness(pair, *witness);
  CHECK(extended.tree.edge_count() == 5);
  CHECK(verify_binomial(extended));

  // Also through a witness that does not contain leaf 1.
  auto pair2 = claw4_example();
  const SubdivisionWitness alt{{2, 3}, prolongation_tree(4, {2, 3})};
  const auto extended2 = extend_by_witness(pair2, alt);
  CHECK(verify_binomial(extended2));
}

TEST_CASE("quadric cover for the binary model") {
  CHECK_THROWS_AS(jc_quadric_cover(3), guard_error);

  const auto r4 = jc_quadric_cover(4);
  CHECK(r4.all_covered);
  CHECK(r4.three_splits_sufficient);
  CHECK(r4.binomial_count > 0);

  const auto r5 = jc_quadric_cover(5);
  CHECK(r5.all_covered);
  CHECK(r5.three_splits_sufficient);
}

TEST_CASE("quadric cover agrees with explicit pair enumeration at n = 4") {
  // Rebuild the claw(4) enumeration explicitly: pairs of flows plus an even
  // swap set, then run the generic witness search on each.
  const Group z2 = parse_group("Z2");
  const Tree claw = builtin_tree("claw", 4);
  std::vector<std::uint32_t> flows;
  for (std::uint32_t mask = 0; mask < 16; ++mask) {
    if (__builtin_popcount(mask) % 2 == 0) flows.push_back(mask);
  }
  std::uint64_t count = 0;
  for (std::size_t i = 0; i < flows.size(); ++i) {
    for (std::size_t j = i + 1; j < flows.size(); ++j) {
      const std::uint32_t d = flows[i] ^ flows[j];
      for (std::uint32_t t = (d - 1) & d; t != 0; t = (t - 1) & d) {
        if (t == d || __builtin_popcount(t) % 2 != 0) continue;
        if (t > (d ^ t)) continue;
        const std::uint32_t g1 = flows[i] ^ t;
        const std::uint32_t g2 = flows[j] ^ t;
        if (std::min(g1, g2) < flows[i]) continue;
        ++count;
        std::vector<std::vector<int>> a1(4), a2(4);
        for (int row = 0; row < 4; ++row) {
          a1[row] = {static_cast<int>((flows[i] >> row) & 1u),
                     static_cast<int>((flows[j] >> row) & 1u)};
          a2[row] = {static_cast<int>((g1 >> row) & 1u), static_cast<int>((g2 >> row) & 1u)};
        }
        const BinomialPair pair(claw, z2, 2, std::move(a1), std::move(a2));
        REQUIRE(verify_binomial(pair));
        CHECK(find_subdivision(pair).has_value());
      }
    }
  }
  CHECK(count == jc_quadric_cover(4).binomial_count);
}

TEST_CASE("prolongation socket matrices") {
  const Group z2 = parse_group("Z2");
  // Same matrix content as the prolongation tree's vertex matrix, up to row
  // and column permutations: the ranks agree.
  for (const auto& [spec, tree] : prolongations(4)) {
    const IntMatrix a = prolongation_socket_matrix(4, z2, spec.side_with_first);
    CHECK(a.rows == 10);
    CHECK(a.cols == 8);
    const IntMatrix direct = IntMatrix::from_vertex_matrix(vertex_matrix(tree, z2));
    CHECK(rank(a) == rank(direct));
    CHECK(oracles::rational_rank(a) == rank(a));
    // Column block sums: exactly one entry per edge block.
    for (int c = 0; c < a.cols; ++c) {
      for (int block = 0; block < 5; ++block) {
        BigInt ones = 0;
        for (int g = 0; g < 2; ++g) ones += a.at(block * 2 + g, c);
        CHECK(ones == 1);
      }
    }
  }
}

TEST_CASE("kernel sums through stacking and through row intersections agree") {
  const Group z2 = parse_group("Z2");
  const auto splits = prolongations(4);
  const IntMatrix a1 = prolongation_socket_matrix(4, z2, splits[0].first.side_with_first);
  const IntMatrix a2 = prolongation_socket_matrix(4, z2, splits[1].first.side_with_first);

  const int c = a1.cols;
  const int by_stack = (c - rank(a1)) + (c - rank(a2)) - (c - rank(stack(a1, a2)));
  const IntMatrix common = row_space_intersection(row_basis(a1), a2);
  const int by_rows = c - common.rows;
  CHECK(by_stack == by_rows);

  // Frozen values from the independent elimination oracle: each prolongation
  // matrix has rank 6, their stack rank 7, so the two kernels together span
  // the claw matrix's full 3-dimensional kernel.
  CHECK(oracles::rational_rank(a1) == 6);
  CHECK(oracles::rational_rank(stack(a1, a2)) == 7);
  CHECK(rank(stack(a1, a2)) == 7);
  CHECK(by_stack == 3);
}

TEST_CASE("toric intersection matches the claw dimension") {
  const Group z2 = parse_group("Z2");
  CHECK(compare_claw_dimension(4, z2));
  CHECK(compare_claw_dimension(5, z2));

  const Group klein = parse_group("Z2xZ2");
  CHECK(compare_claw_dimension(4, klein));
  CHECK(intersect_claw(4, klein, 2).equals_claw);  // two prolongations suffice

  // A single prolongation is not enough: its torus is strictly larger.
  const auto single = intersect_claw(4, z2, 1);
  CHECK_FALSE(single.equals_claw);
  CHECK(single.torus_dimension > single.claw_rank);

  CHECK_THROWS_AS(intersect_claw(3, z2), input_error);
}

TEST_CASE("intersection dimension is monotone and bounded") {
  const Group z2 = parse_group("Z2");
  int previous = 1 << 20;
  const int claw_rank = intersect_claw(4, z2).claw_rank;
  for (int k = 1; k <= 3; ++k) {
    const auto report = intersect_claw(4, z2, k);
    CHECK(report.torus_dimension <= previous);
    CHECK(report.torus_dimension >= claw_rank);
    previous = report.torus_dimension;
  }
}

TEST_CASE("binomial file round trip") {
  const std::string text =
      "degree 2 leaves 4 group Z2\n"
      "1 0\n1 0\n0 1\n0 1\n"
      "1 0\n0 1\n1 0\n0 1\n";
  std::istringstream in(text);
  const BinomialPair pair = read_binomial(in);
  CHECK(pair.degree == 2);
  CHECK(pair.group.spec() == "Z2");
  CHECK(pair.tree.edge_count() == 4);
  CHECK(verify_binomial(pair));
  CHECK(pair.a1 == claw4_example().a1);
  CHECK(pair.a2 == claw4_example().a2);

  std::ostringstream out;
  write_binomial(out, pair);
  std::istringstream in2(out.str());
  const BinomialPair again = read_binomial(in2);
  CHECK(again.a1 == pair.a1);
  CHECK(again.a2 == pair.a2);

  std::istringstream bad("degree 2 leaves 4\n");
  CHECK_THROWS_AS(read_binomial(bad), input_error);
  std::istringstream truncated("degree 2 leaves 4 group Z2\n1 0\n");
  CHECK_THROWS_AS(read_binomial(truncated), input_error);
}

TEST_CASE("multi-factor groups in binomial files") {
  const std::string text =
      "degree 1 leaves 3 group Z2xZ2\n"
      "1,0\n0,1\n1,1\n"
      "1,0\n0,1\n1,1\n";
  std::istringstream in(text);
  const BinomialPair pair = read_binomial(in);
  CHECK(pair.group.order() == 4);
  CHECK(verify_binomial(pair));
}
