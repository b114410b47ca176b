#include "flowlat/counting.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <unordered_set>

#include "flowlat/errors.hpp"
#include "flowlat/flow.hpp"
#include "flowlat/guard.hpp"
#include "flowlat/lattice.hpp"

namespace flowlat {

std::vector<TripodJoinStep> decompose_into_tripods(const Tree& tree) {
  if (!tree.is_trivalent()) throw input_error("tree is not trivalent");
  // Nodes of the decomposition are the inner vertices, adjacent through the
  // edges with two inner endpoints.
  std::vector<TripodJoinStep> steps;
  std::vector<int> step_of_vertex(tree.vertex_count(), -1);
  const int start = tree.inner_vertices().front();

  auto incident_edges = [&](int v) {
    std::vector<int> edges;
    if (tree.incoming_edge(v) >= 0) edges.push_back(tree.incoming_edge(v));
    for (int e : tree.outgoing_edges(v)) edges.push_back(e);
    std::sort(edges.begin(), edges.end());
    return edges;
  };

  // DFS over inner vertices, children in ascending edge order, so parents
  // precede children in `steps`.
  std::function<void(int, int, int)> visit = [&](int v, int parent_step, int shared_edge) {
    TripodJoinStep step;
    step.inner_vertex = v;
    const auto edges = incident_edges(v);
    for (int k = 0; k < 3; ++k) {
      step.edges[k] = edges[k];
      step.incoming[k] = tree.edges()[edges[k]].child == v;
      if (edges[k] == shared_edge) step.parent_slot = k;
    }
    step.parent_step = parent_step;
    const int index = static_cast<int>(steps.size());
    step_of_vertex[v] = index;
    steps.push_back(step);
    for (int k = 0; k < 3; ++k) {
      const int e = step.edges[k];
      if (e == shared_edge) continue;
      const auto& [p, c] = tree.edges()[e];
      const int other = p == v ? c : p;
      if (tree.is_inner_vertex(other) && step_of_vertex[other] < 0) {
        visit(other, index, e);
      }
    }
  };
  visit(start, -1, -1);
  if (static_cast<int>(steps.size()) != tree.inner_count()) {
    throw std::logic_error("tripod decomposition did not reach every inner vertex");
  }
  return steps;
}

namespace {

BigInt count_via_fibers(const Tree& tree, const Group& group, int dilation, int threads,
                        bool semigroup) {
  if (dilation < 0) throw input_error("dilation must be nonnegative");
  const auto steps = decompose_into_tripods(tree);
  TripodEngine engine(group, threads);
  const TripodSet& set =
      semigroup ? engine.semigroup_points(dilation) : engine.ehrhart_points(dilation);
  const FiberSpace& sp = *set.space;

  // children[s] lists (slot in step s, child step index).
  std::vector<std::vector<std::pair<int, int>>> children(steps.size());
  for (int t = 1; t < static_cast<int>(steps.size()); ++t) {
    const int s = steps[t].parent_step;
    const int shared = steps[t].edges[steps[t].parent_slot];
    int slot = -1;
    for (int k = 0; k < 3; ++k) {
      if (steps[s].edges[k] == shared) slot = k;
    }
    children[s].push_back({slot, t});
  }

  // Leaf-to-root sweep: each step sends its parent a table over the shared
  // edge's block. Incoming edges see the standard tripod through the
  // inversion permutation (their flow value enters the balance negatively).
  std::vector<std::vector<BigInt>> messages(steps.size());
  BigInt total = 0;
  for (int s = static_cast<int>(steps.size()) - 1; s >= 0; --s) {
    const auto& step = steps[s];
    std::array<std::int32_t, 3> actual{};
    std::vector<BigInt> msg;
    const bool is_root = step.parent_step < 0;
    if (!is_root) msg.assign(sp.size(), BigInt(0));
    for (const auto& p : set.points) {
      for (int k = 0; k < 3; ++k) {
        actual[k] = step.incoming[k] ? sp.negated(p[k]) : p[k];
      }
      BigInt term = 1;
      bool zero = false;
      for (const auto& [slot, child] : children[s]) {
        const BigInt& m = messages[child][actual[slot]];
        if (m == 0) {
          zero = true;
          break;
        }
        term *= m;
      }
      if (zero) continue;
      if (is_root) {
        total += term;
      } else {
        msg[actual[step.parent_slot]] += term;
      }
    }
    if (!is_root) messages[s] = std::move(msg);
    for (const auto& [slot, child] : children[s]) messages[child].clear();
  }
  return total;
}

}  // namespace

BigInt ehrhart_via_fibers(const Tree& tree, const Group& group, int dilation, int threads) {
  return count_via_fibers(tree, group, dilation, threads, /*semigroup=*/false);
}

BigInt hilbert_via_fibers(const Tree& tree, const Group& group, int dilation, int threads) {
  return count_via_fibers(tree, group, dilation, threads, /*semigroup=*/true);
}

namespace {

void check_direct_guard(const Tree& tree, const Group& group) {
  if (group.order() * tree.edge_count() > 24) {
    throw guard_error("direct enumeration guard: |G|·|E| = " +
                      std::to_string(group.order() * tree.edge_count()) +
                      " exceeds 24; use the fiber method");
  }
}

}  // namespace

std::vector<std::vector<std::int32_t>> ehrhart_points_direct(const Tree& tree, const Group& group,
                                                             int dilation) {
  if (dilation < 0) throw input_error("dilation must be nonnegative");
  check_direct_guard(tree, group);
  const int m = group.order();
  const int ecount = tree.edge_count();

  // Tripods are served from the symmetry-cached engine; it is the same
  // computation with membership LPs deduplicated across the flow symmetries.
  if (tree.is_center_rooted_claw() && ecount == 3) {
    TripodEngine engine(group);
    const TripodSet& set = engine.ehrhart_points(dilation);
    std::vector<std::vector<std::int32_t>> points;
    points.reserve(set.points.size());
    for (const auto& p : set.points) {
      std::vector<std::int32_t> x;
      x.reserve(3 * m);
      for (int k = 0; k < 3; ++k) {
        const auto& c = set.space->composition(p[k]);
        x.insert(x.end(), c.begin(), c.end());
      }
      points.push_back(std::move(x));
    }
    std::sort(points.begin(), points.end());
    return points;
  }

  const FiberSpace sp(group, dilation);
  double estimate = 1;
  for (int e = 0; e < ecount; ++e) estimate *= sp.size();
  require_work(estimate > 1e18 ? ~std::uint64_t{0} >> 1 : static_cast<std::uint64_t>(estimate),
               "direct dilation enumeration");

  const VertexMatrix vm = vertex_matrix(tree, group);
  const IntMatrix vi = IntMatrix::from_vertex_matrix(vm);
  const LatticeBasis basis(vi);

  // A vertex's balance is checkable once its last incident edge is assigned.
  std::vector<std::vector<int>> complete_at(ecount);
  for (int v = 0; v < tree.vertex_count(); ++v) {
    if (!tree.is_inner_vertex(v)) continue;
    int last = tree.incoming_edge(v);
    for (int e : tree.outgoing_edges(v)) last = std::max(last, e);
    complete_at[last].push_back(v);
  }

  std::vector<std::vector<std::int32_t>> points;
  std::vector<int> assign(ecount, -1);
  std::vector<std::int64_t> x(static_cast<std::size_t>(ecount) * m);
  std::vector<BigInt> bx(x.size());

  std::function<void(int)> rec = [&](int e) {
    if (e == ecount) {
      if (!basis.contains(x)) return;
      for (std::size_t i = 0; i < x.size(); ++i) bx[i] = x[i];
      if (!dilation_member(bx, vi, BigInt(dilation))) return;
      points.emplace_back(x.begin(), x.end());
      return;
    }
    for (int id = 0; id < sp.size(); ++id) {
      assign[e] = id;
      const auto& c = sp.composition(id);
      for (int i = 0; i < m; ++i) x[static_cast<std::size_t>(e) * m + i] = c[i];
      bool ok = true;
      for (int v : complete_at[e]) {
        const int in = tree.incoming_edge(v);
        int expect = in >= 0 ? sp.gamma(assign[in]) : group.zero();
        int sum = group.zero();
        for (int oe : tree.outgoing_edges(v)) sum = group.add(sum, sp.gamma(assign[oe]));
        if (sum != expect) {
          ok = false;
          break;
        }
      }
      if (ok) rec(e + 1);
    }
    assign[e] = -1;
  };
  rec(0);
  return points;  // DFS over lexicographic compositions: already sorted
}

BigInt ehrhart_count(const Tree& tree, const Group& group, int dilation) {
  return BigInt(ehrhart_points_direct(tree, group, dilation).size());
}

namespace {

std::string pack_point(const std::vector<std::int32_t>& v) {
  std::string s(v.size(), '\0');
  for (std::size_t i = 0; i < v.size(); ++i) s[i] = static_cast<char>(v[i]);
  return s;
}

}  // namespace

std::vector<std::vector<std::int32_t>> semigroup_points_direct(const Tree& tree,
                                                               const Group& group, int dilation) {
  if (dilation < 0) throw input_error("dilation must be nonnegative");
  if (dilation > 120) throw guard_error("semigroup enumeration: dilation too large");
  const VertexMatrix vm = vertex_matrix(tree, group);
  const std::size_t dim = static_cast<std::size_t>(vm.rows);
  std::vector<std::vector<std::int32_t>> current{std::vector<std::int32_t>(dim, 0)};
  for (int step = 0; step < dilation; ++step) {
    require_memory(static_cast<std::uint64_t>(current.size()) * vm.cols * (dim + 48),
                   "semigroup sum-and-dedupe");
    std::unordered_set<std::string> seen;
    std::vector<std::vector<std::int32_t>> next;
    for (const auto& point : current) {
      for (int c = 0; c < vm.cols; ++c) {
        std::vector<std::int32_t> sum = point;
        for (int e = 0; e < vm.edge_count; ++e) {
          ++sum[static_cast<std::size_t>(e) * vm.group_order + vm.flow_value(c, e)];
        }
        if (seen.insert(pack_point(sum)).second) next.push_back(std::move(sum));
      }
    }
    current = std::move(next);
  }
  std::sort(current.begin(), current.end());
  return current;
}

BigInt hilbert_count(const Tree& tree, const Group& group, int dilation) {
  if (tree.is_center_rooted_claw() && tree.edge_count() == 3) {
    TripodEngine engine(group);
    return BigInt(engine.semigroup_points(dilation).points.size());
  }
  return BigInt(semigroup_points_direct(tree, group, dilation).size());
}

FiberCalculator::FiberCalculator(Group group, int threads)
    : engine_(std::move(group), threads) {}

int FiberCalculator::intern(const std::vector<int>& v, int expected_degree) {
  if (static_cast<int>(v.size()) != engine_.group().order()) {
    throw input_error("fiber vector must have one entry per group element");
  }
  int degree = 0;
  for (int value : v) {
    if (value < 0) throw input_error("fiber vector entries must be nonnegative");
    degree += value;
  }
  if (expected_degree >= 0 && degree != expected_degree) {
    throw input_error("fiber vectors must have equal degree");
  }
  const std::vector<std::int32_t> comp(v.begin(), v.end());
  const int id = engine_.space(degree).id_of(comp);
  if (id < 0) throw std::logic_error("fiber vector interning failed");
  return id;
}

const std::vector<BigInt>& FiberCalculator::f_table(int degree) {
  auto it = f_tables_.find(degree);
  if (it == f_tables_.end()) {
    const TripodSet& set = engine_.ehrhart_points(degree);
    std::vector<BigInt> table(set.space->size(), BigInt(0));
    for (const auto& p : set.points) ++table[p[2]];
    it = f_tables_.emplace(degree, std::move(table)).first;
  }
  return it->second;
}

const std::map<std::pair<int, int>, BigInt>& FiberCalculator::g_table(int degree) {
  auto it = g_tables_.find(degree);
  if (it == g_tables_.end()) {
    const TripodSet& set = engine_.ehrhart_points(degree);
    std::map<std::pair<int, int>, BigInt> table;
    for (const auto& p : set.points) ++table[{p[2], p[1]}];
    it = g_tables_.emplace(degree, std::move(table)).first;
  }
  return it->second;
}

BigInt FiberCalculator::f(const std::vector<int>& a) {
  int degree = 0;
  for (int value : a) degree += value;
  const int ia = intern(a, -1);
  return f_table(degree)[ia];
}

BigInt FiberCalculator::g(const std::vector<int>& a, const std::vector<int>& b) {
  int degree = 0;
  for (int value : a) degree += value;
  const int ia = intern(a, -1);
  const int ib = intern(b, degree);
  const auto& table = g_table(degree);
  const auto it = table.find({ia, ib});
  return it == table.end() ? BigInt(0) : it->second;
}

BigInt tripod_fiber_f(const Group& group, const std::vector<int>& a) {
  FiberCalculator calc(group);
  return calc.f(a);
}

BigInt tripod_fiber_g(const Group& group, const std::vector<int>& a, const std::vector<int>& b) {
  FiberCalculator calc(group);
  return calc.g(a, b);
}

std::vector<std::vector<int>> fiber_vectors(const Group& group, int degree) {
  const FiberSpace sp(group, degree);
  std::vector<std::vector<int>> out;
  out.reserve(sp.size());
  for (int id = 0; id < sp.size(); ++id) {
    const auto& c = sp.composition(id);
    out.emplace_back(c.begin(), c.end());
  }
  return out;
}

}  // namespace flowlat
