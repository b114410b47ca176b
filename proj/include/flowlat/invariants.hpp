#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "flowlat/group.hpp"
#include "flowlat/matrix.hpp"
#include "flowlat/tree.hpp"

namespace flowlat {

// A candidate degree-d binomial on a tree: a pair of matrices of group
// elements (by index) with one row per edge and one column per degree unit.
// The pair lies in the toric ideal iff every column is a flow and each row
// of the first matrix equals the corresponding row of the second up to a
// permutation of its entries.
struct BinomialPair {
  Tree tree;
  Group group;
  int degree;
  std::vector<std::vector<int>> a1;  // [edge][column]
  std::vector<std::vector<int>> a2;

  BinomialPair(Tree t, Group g, int d, std::vector<std::vector<int>> m1,
               std::vector<std::vector<int>> m2)
      : tree(std::move(t)), group(std::move(g)), degree(d), a1(std::move(m1)), a2(std::move(m2)) {}
};

// True iff the pair is a relation (columns are flows, row multisets match).
// Shape or element-range problems are input errors, not `false`.
bool verify_binomial(const BinomialPair& pair);

struct SubdivisionWitness {
  std::vector<int> rows;  // leaf labels, sorted
  Tree prolongation;
};

// For a verified pair on claw(n), finds the first subset S of leaves (by
// cardinality, then lexicographic) with 2 <= |S| <= n-2 such that every
// column of A1 - A2 sums to the identity over S. A witness certifies the
// binomial lies in the ideal of the induced prolongation.
std::optional<SubdivisionWitness> find_subdivision(const BinomialPair& pair);

// Extends both matrices by the S-sum row, giving the pair on the
// prolongation tree (the witness row becomes the inner edge).
BinomialPair extend_by_witness(const BinomialPair& pair, const SubdivisionWitness& witness);

struct JcQuadricCoverReport {
  int claw_size = 0;
  std::uint64_t binomial_count = 0;
  bool all_covered = false;
  bool three_splits_sufficient = false;
};

// Enumerates all degree-2 relations on claw(n) over Z2 up to column and pair
// swaps, confirms each admits a subdivision witness, and reports whether the
// three splits anchored at leaf pairs {1,2}, {1,3}, {2,3} already suffice.
JcQuadricCoverReport jc_quadric_cover(int n);

struct IntersectionReport {
  int claw_size = 0;
  int sockets = 0;
  int claw_rank = 0;
  int kernel_sum_dimension = 0;  // dim Σ_i ker A_i
  int torus_dimension = 0;       // sockets - kernel_sum_dimension
  int prolongations_used = 0;
  int prolongations_available = 0;
  bool equals_claw = false;
};

// Rank-based check that the toric intersection of the prolongation tori has
// the dimension of the claw torus. A_i is the full vertex matrix of the
// i-th prolongation with columns indexed by the shared sockets; kernel sums
// are accumulated through row-space intersections with early exit once the
// claw dimension is reached. first_k = 0 uses every prolongation;
// pairs_only keeps the splits whose smaller side has exactly two leaves.
IntersectionReport intersect_claw(int n, const Group& group, int first_k = 0,
                                  bool pairs_only = false);

int intersection_dimension(int n, const Group& group, int first_k = 0, bool pairs_only = false);
bool compare_claw_dimension(int n, const Group& group);

// Full vertex matrix of one prolongation, columns in claw socket order:
// n·|G| leaf rows (label-major) followed by |G| inner-edge rows.
IntMatrix prolongation_socket_matrix(int n, const Group& group, const std::vector<int>& side);

// Binomial file format: header "degree <d> leaves <n> group <spec>", then
// 2n lines of d elements each (A1 rows then A2 rows), elements written as
// comma-joined residues.
BinomialPair read_binomial(std::istream& in);
void write_binomial(std::ostream& out, const BinomialPair& pair);

}  // namespace flowlat
