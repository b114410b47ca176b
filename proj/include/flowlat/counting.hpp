#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "flowlat/bigint.hpp"
#include "flowlat/fiber.hpp"
#include "flowlat/group.hpp"
#include "flowlat/tree.hpp"

namespace flowlat {

// One tripod of the join decomposition of a trivalent tree: an inner vertex
// together with its three incident edges. Steps are ordered so that a step's
// parent (the neighboring tripod toward the decomposition root) always comes
// earlier.
struct TripodJoinStep {
  int inner_vertex = -1;
  std::array<int, 3> edges{};          // ascending edge indices
  std::array<bool, 3> incoming{};      // edge oriented into the vertex
  int parent_step = -1;                // -1 for the root step
  int parent_slot = -1;                // index into edges[] of the shared edge
};

// Gluing sequence reconstructing a trivalent tree from tripods, rooted at
// the lowest-index inner vertex.
std::vector<TripodJoinStep> decompose_into_tripods(const Tree& tree);

// Exact number of integer points of nP lying in the lattice generated by the
// vertices, by direct enumeration over per-edge degree-n compositions pruned
// by flow-balance necessary conditions. Guarded: |G|·|E| must be at most 24;
// larger models go through the fiber method.
BigInt ehrhart_count(const Tree& tree, const Group& group, int dilation);

// The corresponding point set, lexicographic in the edge-major coordinates.
std::vector<std::vector<std::int32_t>> ehrhart_points_direct(const Tree& tree, const Group& group,
                                                             int dilation);

// Number of distinct sums of exactly n vertex columns (degree-n graded
// semigroup elements), by iterated sum-and-dedupe.
BigInt hilbert_count(const Tree& tree, const Group& group, int dilation);

std::vector<std::vector<std::int32_t>> semigroup_points_direct(const Tree& tree,
                                                               const Group& group, int dilation);

// Ehrhart/Hilbert counts for trivalent trees through the tripod fiber
// product dynamic program.
BigInt ehrhart_via_fibers(const Tree& tree, const Group& group, int dilation, int threads = 1);
BigInt hilbert_via_fibers(const Tree& tree, const Group& group, int dilation, int threads = 1);

// Tripod fiber counts; `a` and `b` are multiplicity vectors over the group's
// canonical element order. f(a) counts lattice points of |a|·P(tripod) whose
// third-edge block equals a; g(a, b) additionally fixes the second block.
class FiberCalculator {
 public:
  explicit FiberCalculator(Group group, int threads = 1);
  BigInt f(const std::vector<int>& a);
  BigInt g(const std::vector<int>& a, const std::vector<int>& b);

 private:
  int intern(const std::vector<int>& v, int expected_degree);
  const std::vector<BigInt>& f_table(int degree);
  const std::map<std::pair<int, int>, BigInt>& g_table(int degree);
  TripodEngine engine_;
  std::map<int, std::vector<BigInt>> f_tables_;
  std::map<int, std::map<std::pair<int, int>, BigInt>> g_tables_;
};

BigInt tripod_fiber_f(const Group& group, const std::vector<int>& a);
BigInt tripod_fiber_g(const Group& group, const std::vector<int>& a, const std::vector<int>& b);

// All multiplicity vectors of the given degree, in lexicographic order.
std::vector<std::vector<int>> fiber_vectors(const Group& group, int degree);

}  // namespace flowlat
