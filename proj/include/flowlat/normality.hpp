#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "flowlat/group.hpp"
#include "flowlat/tree.hpp"

namespace flowlat {

struct NormalityWitness {
  int dilation = 0;
  // Edge-major coordinates of a point of nP in the vertex lattice that is
  // not a sum of n vertices.
  std::vector<std::int32_t> point;
};

struct NormalityReport {
  bool normal = true;  // up to `bound` only; never a claim for all dilations
  int bound = 0;
  std::optional<NormalityWitness> witness;
};

// Compares, for each n = 2..max_dilation, the lattice points of nP against
// the degree-n semigroup sums. The first discrepancy (lexicographic candidate
// order) is returned as a witness.
NormalityReport normality_check(const Tree& tree, const Group& group, int max_dilation);

struct VeryAmpleWitness {
  int vertex = 0;    // flow-order index of the vertex v whose cone fails
  int dilation = 0;  // y was found in dilation·(P - v)
  // Coordinates of y: a lattice point of the cone over P - v that is not a
  // nonnegative integer combination of the shifted vertices.
  std::vector<std::int32_t> point;
};

struct VeryAmpleReport {
  int bound = 0;
  std::optional<VeryAmpleWitness> witness;  // absent: inconclusive up to bound
};

// One-sided check: searches the dilations n <= max_degree of every vertex
// cone for a lattice point outside the semigroup generated by P - v. The
// decomposition search is exhaustive (it is depth-bounded by an exact
// strictly positive functional), so a returned witness is a certificate.
VeryAmpleReport very_ample_check(const Tree& tree, const Group& group, int max_degree);

// Maps a non-normality witness along a group embedding (coordinates indexed
// by elements outside the image become zero) and re-verifies all witness
// conditions against the target polytope. Failure to re-verify is an
// internal error, not a mathematical outcome.
NormalityReport transfer_witness(const NormalityReport& report, const Embedding& embedding,
                                 const Tree& tree);

// True when x (edge-major coordinates) is a sum of exactly n vertex columns;
// exhaustive multiset search over flows in enumeration order.
bool is_vertex_sum(const Tree& tree, const Group& group, const std::vector<std::int32_t>& x,
                   int n);

}  // namespace flowlat
