#include "flowlat/normality.hpp"

#include <algorithm>
#include <unordered_set>

#include "flowlat/counting.hpp"
#include "flowlat/errors.hpp"
#include "flowlat/flow.hpp"
#include "flowlat/guard.hpp"
#include "flowlat/lattice.hpp"

namespace flowlat {

namespace {

std::string pack_signed(const std::vector<std::int32_t>& v) {
  std::string s(v.size(), '\0');
  for (std::size_t i = 0; i < v.size(); ++i) s[i] = static_cast<char>(v[i] + 120);
  return s;
}

bool vertex_sum_search(const VertexMatrix& vm, std::vector<std::int32_t>& remaining, int depth,
                       int min_col) {
  if (depth == 0) {
    return std::all_of(remaining.begin(), remaining.end(),
                       [](std::int32_t v) { return v == 0; });
  }
  for (int c = min_col; c < vm.cols; ++c) {
    bool ok = true;
    for (int e = 0; e < vm.edge_count && ok; ++e) {
      ok = remaining[static_cast<std::size_t>(e) * vm.group_order + vm.flow_value(c, e)] > 0;
    }
    if (!ok) continue;
    for (int e = 0; e < vm.edge_count; ++e) {
      --remaining[static_cast<std::size_t>(e) * vm.group_order + vm.flow_value(c, e)];
    }
    if (vertex_sum_search(vm, remaining, depth - 1, c)) return true;
    for (int e = 0; e < vm.edge_count; ++e) {
      ++remaining[static_cast<std::size_t>(e) * vm.group_order + vm.flow_value(c, e)];
    }
  }
  return false;
}

}  // namespace

bool is_vertex_sum(const Tree& tree, const Group& group, const std::vector<std::int32_t>& x,
                   int n) {
  const VertexMatrix vm = vertex_matrix(tree, group);
  if (static_cast<int>(x.size()) != vm.rows) throw input_error("point dimension mismatch");
  std::vector<std::int32_t> remaining = x;
  return vertex_sum_search(vm, remaining, n, 0);
}

NormalityReport normality_check(const Tree& tree, const Group& group, int max_dilation) {
  if (max_dilation < 2) throw input_error("normality bound must be at least 2");
  NormalityReport report;
  report.bound = max_dilation;
  for (int n = 2; n <= max_dilation; ++n) {
    const auto lattice_points = ehrhart_points_direct(tree, group, n);
    const auto semigroup = [&] {
      if (tree.is_center_rooted_claw() && tree.edge_count() == 3) {
        TripodEngine engine(group);
        const TripodSet& set = engine.semigroup_points(n);
        std::vector<std::vector<std::int32_t>> out;
        out.reserve(set.points.size());
        const int m = group.order();
        for (const auto& p : set.points) {
          std::vector<std::int32_t> v;
          v.reserve(3 * m);
          for (int k = 0; k < 3; ++k) {
            const auto& c = set.space->composition(p[k]);
            v.insert(v.end(), c.begin(), c.end());
          }
          out.push_back(std::move(v));
        }
        return out;
      }
      return semigroup_points_direct(tree, group, n);
    }();
    std::unordered_set<std::string> sums;
    sums.reserve(semigroup.size() * 2);
    for (const auto& p : semigroup) sums.insert(pack_signed(p));
    if (semigroup.size() > lattice_points.size()) {
      throw std::logic_error("semigroup exceeded the dilation's lattice points");
    }
    for (const auto& p : lattice_points) {
      if (!sums.count(pack_signed(p))) {
        report.normal = false;
        report.witness = NormalityWitness{n, p};
        return report;
      }
    }
  }
  return report;
}

namespace {

struct ConeSearch {
  const std::vector<std::vector<std::int32_t>>* generators;  // shifted vertices
  const std::vector<std::int64_t>* weight;                   // integer functional
  std::int64_t min_weight = 0;
  const std::vector<char>* support;  // rows where v has a 1
  std::unordered_set<std::string> failed;

  bool decompose(std::vector<std::int32_t>& y, std::int64_t wy, int min_gen) {
    if (std::all_of(y.begin(), y.end(), [](std::int32_t v) { return v == 0; })) return true;
    if (wy < min_weight) return false;
    std::string key = pack_signed(y);
    key.push_back(static_cast<char>(min_gen & 0xff));
    key.push_back(static_cast<char>((min_gen >> 8) & 0xff));
    if (failed.count(key)) return false;
    const auto& gens = *generators;
    for (int j = min_gen; j < static_cast<int>(gens.size()); ++j) {
      const auto& g = gens[j];
      bool ok = true;
      for (std::size_t i = 0; i < y.size() && ok; ++i) {
        const std::int32_t next = y[i] - g[i];
        // The cone is nonpositive on the support of v and nonnegative off
        // it; anything outside that box cannot be completed.
        ok = (*support)[i] ? next <= 0 : next >= 0;
      }
      if (!ok) continue;
      for (std::size_t i = 0; i < y.size(); ++i) y[i] -= g[i];
      const std::int64_t w = wy - weight_of(g);
      if (decompose(y, w, j)) return true;
      for (std::size_t i = 0; i < y.size(); ++i) y[i] += g[i];
    }
    failed.insert(key);
    return false;
  }

  std::int64_t weight_of(const std::vector<std::int32_t>& g) const {
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < g.size(); ++i) sum += (*weight)[i] * g[i];
    return sum;
  }
};

}  // namespace

VeryAmpleReport very_ample_check(const Tree& tree, const Group& group, int max_degree) {
  if (max_degree < 1) throw input_error("very-ampleness bound must be at least 1");
  VeryAmpleReport report;
  report.bound = max_degree;
  const VertexMatrix vm = vertex_matrix(tree, group);

  // Dilation point sets are shared across the per-vertex scans.
  std::vector<std::vector<std::vector<std::int32_t>>> dilation_points;
  for (int n = 1; n <= max_degree; ++n) {
    dilation_points.push_back(ehrhart_points_direct(tree, group, n));
  }

  for (int v = 0; v < vm.cols; ++v) {
    std::vector<char> support(vm.rows, 0);
    for (int r = 0; r < vm.rows; ++r) support[r] = vm.at(r, v);

    std::vector<std::vector<std::int32_t>> generators;
    IntMatrix shifted(vm.rows, vm.cols - 1);
    int col = 0;
    for (int u = 0; u < vm.cols; ++u) {
      if (u == v) continue;
      std::vector<std::int32_t> g(vm.rows);
      for (int r = 0; r < vm.rows; ++r) {
        g[r] = static_cast<std::int32_t>(vm.at(r, u)) - static_cast<std::int32_t>(vm.at(r, v));
        shifted.at(r, col) = g[r];
      }
      generators.push_back(std::move(g));
      ++col;
    }
    const auto functional = strictly_positive_functional(shifted);
    if (!functional) throw std::logic_error("polytope vertex admits no separating functional");
    // Scale to integers.
    BigInt lcm = 1;
    for (const auto& w : *functional) {
      lcm = boost::multiprecision::lcm(lcm, boost::multiprecision::denominator(w));
    }
    std::vector<std::int64_t> weight(vm.rows);
    for (int r = 0; r < vm.rows; ++r) {
      const BigInt scaled = boost::multiprecision::numerator((*functional)[r]) *
                            (lcm / boost::multiprecision::denominator((*functional)[r]));
      if (boost::multiprecision::abs(scaled) > (BigInt(1) << 40)) {
        throw std::logic_error("separating functional has unreasonable magnitude");
      }
      weight[r] = scaled.convert_to<std::int64_t>();
    }

    ConeSearch search;
    search.generators = &generators;
    search.weight = &weight;
    search.support = &support;
    std::int64_t min_w = 0;
    for (const auto& g : generators) {
      const std::int64_t w = search.weight_of(g);
      if (w <= 0) throw std::logic_error("functional is not strictly positive");
      if (min_w == 0 || w < min_w) min_w = w;
    }
    search.min_weight = min_w;

    for (int n = 1; n <= max_degree; ++n) {
      for (const auto& x : dilation_points[n - 1]) {
        std::vector<std::int32_t> y(vm.rows);
        for (int r = 0; r < vm.rows; ++r) {
          y[r] = x[r] - n * static_cast<std::int32_t>(vm.at(r, v));
        }
        std::int64_t wy = 0;
        for (int r = 0; r < vm.rows; ++r) wy += weight[r] * y[r];
        std::vector<std::int32_t> scratch = y;
        if (!search.decompose(scratch, wy, 0)) {
          report.witness = VeryAmpleWitness{v, n, y};
          return report;
        }
      }
    }
  }
  return report;
}

NormalityReport transfer_witness(const NormalityReport& report, const Embedding& embedding,
                                 const Tree& tree) {
  if (report.normal || !report.witness) {
    throw input_error("transfer requires a non-normality witness");
  }
  const Group& g1 = embedding.source();
  const Group& g2 = embedding.target();
  const int m1 = g1.order();
  const int m2 = g2.order();
  const auto& x = report.witness->point;
  if (static_cast<int>(x.size()) % m1 != 0) throw input_error("witness dimension mismatch");
  const int edges = static_cast<int>(x.size()) / m1;
  if (edges != tree.edge_count()) throw input_error("witness does not match the tree");

  std::vector<std::int32_t> y(static_cast<std::size_t>(edges) * m2, 0);
  for (int e = 0; e < edges; ++e) {
    for (int a = 0; a < m1; ++a) {
      y[static_cast<std::size_t>(e) * m2 + embedding.map(a)] = x[static_cast<std::size_t>(e) * m1 + a];
    }
  }

  const int n = report.witness->dilation;
  const VertexMatrix vm2 = vertex_matrix(tree, g2);
  const IntMatrix vi2 = IntMatrix::from_vertex_matrix(vm2);
  std::vector<BigInt> by(y.begin(), y.end());
  if (!LatticeBasis(vi2).contains(by)) {
    throw std::logic_error("transferred witness left the vertex lattice");
  }
  if (!dilation_member(by, vi2, BigInt(n))) {
    throw std::logic_error("transferred witness left the dilated polytope");
  }
  if (is_vertex_sum(tree, g2, y, n)) {
    throw std::logic_error("transferred witness decomposed into vertices");
  }
  NormalityReport out;
  out.normal = false;
  out.bound = report.bound;
  out.witness = NormalityWitness{n, y};
  return out;
}

}  // namespace flowlat
