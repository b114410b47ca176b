#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "flowlat/bigint.hpp"
#include "flowlat/group.hpp"
#include "flowlat/lattice.hpp"
#include "flowlat/matrix.hpp"

namespace flowlat {

// Interned multiplicity vectors: all ways to distribute `degree` units over
// the |G| canonical elements, in lexicographic order.
class FiberSpace {
 public:
  FiberSpace(const Group& group, int degree);

  int degree() const { return degree_; }
  int parts() const { return parts_; }
  int size() const { return static_cast<int>(comps_.size()); }
  const std::vector<std::int32_t>& composition(int id) const { return comps_[id]; }
  int id_of(const std::vector<std::int32_t>& comp) const;  // -1 when absent

  // Weighted group sum Σ_g comp[g]·g, as an element index. Every edge block
  // of a lattice point has balanced gammas around each inner vertex.
  int gamma(int id) const { return gamma_[id]; }
  const std::vector<std::int32_t>& ids_with_gamma(int g) const { return by_gamma_[g]; }

  int negated(int id) const { return neg_[id]; }          // comp ∘ (g ↦ -g)
  int shifted(int h, int id) const { return shift_[h][id]; }  // comp ∘ (g ↦ g-h)

  // id valid for degree+1: composition incremented at element g (built lazily
  // against the next space by TripodEngine, not here).

 private:
  int degree_;
  int parts_;
  std::vector<std::vector<std::int32_t>> comps_;
  std::vector<std::int32_t> gamma_;
  std::vector<std::vector<std::int32_t>> by_gamma_;
  std::vector<std::int32_t> neg_;
  std::vector<std::vector<std::int32_t>> shift_;
};

// One lattice point of a dilation of the standard tripod polytope, as the
// triple of per-edge composition ids.
using TripodPoint = std::array<std::int32_t, 3>;

struct TripodSet {
  const FiberSpace* space = nullptr;
  std::vector<TripodPoint> points;  // lex sorted
};

// Per-group cache of vertex data and tripod point sets. The standard tripod
// is the claw with three leaves rooted at its center (flow condition
// g1+g2+g3 = 0). Dilation membership is decided by exact LP, deduplicated
// across the 6·|G|² symmetries (block permutations and flow translations).
class TripodEngine {
 public:
  explicit TripodEngine(Group group, int threads = 1);

  const Group& group() const { return group_; }
  const FiberSpace& space(int degree);
  const IntMatrix& vertices() const { return vertices_; }
  const LatticeBasis& lattice() const { return lattice_; }

  // Points of nP in the lattice generated by the vertices.
  const TripodSet& ehrhart_points(int degree);
  // Sums of exactly n vertices (degree-n graded semigroup elements).
  const TripodSet& semigroup_points(int degree);

 private:
  TripodSet compute_ehrhart(int degree);
  TripodSet compute_semigroup(int degree);

  Group group_;
  int threads_;
  IntMatrix vertices_;
  LatticeBasis lattice_;
  std::map<int, std::unique_ptr<FiberSpace>> spaces_;
  std::map<int, TripodSet> ehrhart_;
  std::map<int, TripodSet> semigroup_;
};

// The vertex matrix of the standard tripod over G (3|G| rows, |G|² columns),
// columns in flow enumeration order.
IntMatrix standard_tripod_vertices(const Group& group);

}  // namespace flowlat
