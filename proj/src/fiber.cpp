#include "flowlat/fiber.hpp"

#include <algorithm>
#include <functional>
#include <thread>
#include <unordered_map>

#include "flowlat/errors.hpp"
#include "flowlat/flow.hpp"
#include "flowlat/guard.hpp"
#include "flowlat/tree.hpp"

namespace flowlat {

FiberSpace::FiberSpace(const Group& group, int degree) : degree_(degree), parts_(group.order()) {
  if (degree < 0) throw input_error("fiber degree must be nonnegative");
  // Lexicographic enumeration of compositions of `degree` into `parts_`.
  std::vector<std::int32_t> comp(parts_, 0);
  std::function<void(int, int)> rec = [&](int pos, int remaining) {
    if (pos == parts_ - 1) {
      comp[pos] = remaining;
      comps_.push_back(comp);
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      comp[pos] = v;
      rec(pos + 1, remaining - v);
    }
  };
  rec(0, degree);

  gamma_.resize(comps_.size());
  by_gamma_.resize(parts_);
  for (std::size_t id = 0; id < comps_.size(); ++id) {
    int g = group.zero();
    for (int e = 0; e < parts_; ++e) {
      for (int k = 0; k < comps_[id][e]; ++k) g = group.add(g, e);
    }
    gamma_[id] = g;
    by_gamma_[g].push_back(static_cast<std::int32_t>(id));
  }

  neg_.resize(comps_.size());
  shift_.assign(parts_, std::vector<std::int32_t>(comps_.size()));
  std::vector<std::int32_t> scratch(parts_);
  for (std::size_t id = 0; id < comps_.size(); ++id) {
    for (int e = 0; e < parts_; ++e) scratch[group.neg(e)] = comps_[id][e];
    neg_[id] = id_of(scratch);
    for (int h = 0; h < parts_; ++h) {
      for (int e = 0; e < parts_; ++e) scratch[group.add(e, h)] = comps_[id][e];
      shift_[h][id] = id_of(scratch);
    }
  }
}

int FiberSpace::id_of(const std::vector<std::int32_t>& comp) const {
  const auto it = std::lower_bound(comps_.begin(), comps_.end(), comp);
  if (it == comps_.end() || *it != comp) return -1;
  return static_cast<int>(it - comps_.begin());
}

IntMatrix standard_tripod_vertices(const Group& group) {
  const int m = group.order();
  IntMatrix v(3 * m, m * m);
  int col = 0;
  for (int g1 = 0; g1 < m; ++g1) {
    for (int g2 = 0; g2 < m; ++g2) {
      const int g3 = group.neg(group.add(g1, g2));
      v.at(g1, col) = 1;
      v.at(m + g2, col) = 1;
      v.at(2 * m + g3, col) = 1;
      ++col;
    }
  }
  return v;
}

TripodEngine::TripodEngine(Group group, int threads)
    : group_(std::move(group)),
      threads_(std::max(1, threads)),
      vertices_(standard_tripod_vertices(group_)),
      lattice_(vertices_) {}

const FiberSpace& TripodEngine::space(int degree) {
  auto it = spaces_.find(degree);
  if (it == spaces_.end()) {
    it = spaces_.emplace(degree, std::make_unique<FiberSpace>(group_, degree)).first;
  }
  return *it->second;
}

const TripodSet& TripodEngine::ehrhart_points(int degree) {
  auto it = ehrhart_.find(degree);
  if (it == ehrhart_.end()) it = ehrhart_.emplace(degree, compute_ehrhart(degree)).first;
  return it->second;
}

const TripodSet& TripodEngine::semigroup_points(int degree) {
  auto it = semigroup_.find(degree);
  if (it == semigroup_.end()) it = semigroup_.emplace(degree, compute_semigroup(degree)).first;
  return it->second;
}

namespace {

inline std::uint64_t pack3(std::int32_t a, std::int32_t b, std::int32_t c) {
  return (static_cast<std::uint64_t>(a) << 42) | (static_cast<std::uint64_t>(b) << 21) |
         static_cast<std::uint64_t>(c);
}

// Lexicographically smallest image under block permutations and flow
// translations; dilation membership is constant on these orbits.
std::uint64_t canonical_key(const FiberSpace& space, const Group& g, std::int32_t i1,
                            std::int32_t i2, std::int32_t i3) {
  std::uint64_t best = ~std::uint64_t{0};
  const int m = g.order();
  for (int h1 = 0; h1 < m; ++h1) {
    for (int h2 = 0; h2 < m; ++h2) {
      const int h3 = g.neg(g.add(h1, h2));
      const std::int32_t t1 = space.shifted(h1, i1);
      const std::int32_t t2 = space.shifted(h2, i2);
      const std::int32_t t3 = space.shifted(h3, i3);
      const std::int32_t lo = std::min({t1, t2, t3});
      const std::int32_t hi = std::max({t1, t2, t3});
      const std::int32_t mid = static_cast<std::int32_t>(
          static_cast<std::int64_t>(t1) + t2 + t3 - lo - hi);
      const std::uint64_t key = pack3(lo, mid, hi);
      if (key < best) best = key;
    }
  }
  return best;
}

}  // namespace

TripodSet TripodEngine::compute_ehrhart(int degree) {
  const FiberSpace& sp = space(degree);
  const int m = group_.order();
  TripodSet set;
  set.space = &sp;

  require_work(static_cast<std::uint64_t>(sp.size()) * sp.size() *
                   std::max<std::uint64_t>(1, sp.size() / std::max(1, m)),
               "tripod dilation enumeration");

  const int n_threads =
      std::min<int>(threads_, std::max(1, sp.size() / 8));
  std::vector<std::vector<TripodPoint>> results(n_threads);
  auto worker = [&](int tid) {
    std::unordered_map<std::uint64_t, bool> cache;
    std::vector<std::int64_t> x(3 * m);
    std::vector<BigInt> cx(3 * m);
    auto& out = results[tid];
    for (std::int32_t i1 = tid; i1 < sp.size(); i1 += n_threads) {
      const auto& c1 = sp.composition(i1);
      for (int e = 0; e < m; ++e) x[e] = c1[e];
      for (std::int32_t i2 = 0; i2 < sp.size(); ++i2) {
        const auto& c2 = sp.composition(i2);
        for (int e = 0; e < m; ++e) x[m + e] = c2[e];
        const int g3 = group_.neg(group_.add(sp.gamma(i1), sp.gamma(i2)));
        for (std::int32_t i3 : sp.ids_with_gamma(g3)) {
          const auto& c3 = sp.composition(i3);
          for (int e = 0; e < m; ++e) x[2 * m + e] = c3[e];
          if (!lattice_.contains(x)) continue;
          const std::uint64_t key = canonical_key(sp, group_, i1, i2, i3);
          auto it = cache.find(key);
          bool member;
          if (it != cache.end()) {
            member = it->second;
          } else {
            for (int e = 0; e < 3 * m; ++e) cx[e] = x[e];
            member = dilation_member(cx, vertices_, BigInt(degree));
            cache.emplace(key, member);
          }
          if (member) out.push_back({i1, i2, i3});
        }
      }
    }
  };
  if (n_threads == 1) {
    worker(0);
    set.points = std::move(results[0]);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
    std::size_t total = 0;
    for (const auto& r : results) total += r.size();
    set.points.reserve(total);
    for (auto& r : results) set.points.insert(set.points.end(), r.begin(), r.end());
    std::sort(set.points.begin(), set.points.end());
  }
  return set;
}

TripodSet TripodEngine::compute_semigroup(int degree) {
  const FiberSpace& sp = space(degree);
  TripodSet set;
  set.space = &sp;
  const int m = group_.order();
  if (degree == 0) {
    set.points.push_back({0, 0, 0});
    return set;
  }
  // Unit compositions in the degree-1 space.
  const FiberSpace& sp1 = space(1);
  std::vector<std::int32_t> unit1(m);
  std::vector<std::int32_t> scratch(m, 0);
  for (int e = 0; e < m; ++e) {
    scratch[e] = 1;
    unit1[e] = sp1.id_of(scratch);
    scratch[e] = 0;
  }
  if (degree == 1) {
    for (int g1 = 0; g1 < m; ++g1) {
      for (int g2 = 0; g2 < m; ++g2) {
        const int g3 = group_.neg(group_.add(g1, g2));
        set.points.push_back({unit1[g1], unit1[g2], unit1[g3]});
      }
    }
    std::sort(set.points.begin(), set.points.end());
    return set;
  }
  const TripodSet& prev = semigroup_points(degree - 1);
  const FiberSpace& spp = space(degree - 1);
  // bump[g][id in degree-1] = id in degree of the composition +1 at g.
  std::vector<std::vector<std::int32_t>> bump(m, std::vector<std::int32_t>(spp.size()));
  for (int id = 0; id < spp.size(); ++id) {
    std::vector<std::int32_t> c = spp.composition(id);
    for (int e = 0; e < m; ++e) {
      ++c[e];
      bump[e][id] = sp.id_of(c);
      --c[e];
    }
  }
  require_memory(static_cast<std::uint64_t>(prev.points.size()) * m * m * sizeof(TripodPoint),
                 "tripod semigroup enumeration");
  std::vector<TripodPoint> sums;
  sums.reserve(prev.points.size() * m * m);
  for (const auto& p : prev.points) {
    for (int g1 = 0; g1 < m; ++g1) {
      for (int g2 = 0; g2 < m; ++g2) {
        const int g3 = group_.neg(group_.add(g1, g2));
        sums.push_back({bump[g1][p[0]], bump[g2][p[1]], bump[g3][p[2]]});
      }
    }
  }
  std::sort(sums.begin(), sums.end());
  sums.erase(std::unique(sums.begin(), sums.end()), sums.end());
  set.points = std::move(sums);
  return set;
}

}  // namespace flowlat
