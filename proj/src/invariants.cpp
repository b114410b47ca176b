#include "flowlat/invariants.hpp"

#include <algorithm>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>

#include "flowlat/errors.hpp"
#include "flowlat/flow.hpp"
#include "flowlat/guard.hpp"

namespace flowlat {

namespace {

void check_shape(const BinomialPair& pair) {
  const int e = pair.tree.edge_count();
  if (pair.degree < 1) throw input_error("binomial degree must be positive");
  if (static_cast<int>(pair.a1.size()) != e || static_cast<int>(pair.a2.size()) != e) {
    throw input_error("binomial matrices must have one row per edge");
  }
  for (const auto* m : {&pair.a1, &pair.a2}) {
    for (const auto& row : *m) {
      if (static_cast<int>(row.size()) != pair.degree) {
        throw input_error("binomial matrix row width must equal the degree");
      }
      for (int v : row) {
        if (v < 0 || v >= pair.group.order()) throw input_error("element outside the group");
      }
    }
  }
}

}  // namespace

bool verify_binomial(const BinomialPair& pair) {
  check_shape(pair);
  for (const auto* m : {&pair.a1, &pair.a2}) {
    for (int c = 0; c < pair.degree; ++c) {
      Flow flow;
      flow.values.reserve(m->size());
      for (const auto& row : *m) flow.values.push_back(row[c]);
      if (!is_flow(pair.tree, pair.group, flow)) return false;
    }
  }
  for (std::size_t r = 0; r < pair.a1.size(); ++r) {
    std::vector<int> left = pair.a1[r];
    std::vector<int> right = pair.a2[r];
    std::sort(left.begin(), left.end());
    std::sort(right.begin(), right.end());
    if (left != right) return false;
  }
  return true;
}

std::optional<SubdivisionWitness> find_subdivision(const BinomialPair& pair) {
  if (!verify_binomial(pair)) throw input_error("subdivision search requires a verified pair");
  if (!pair.tree.is_center_rooted_claw()) {
    throw input_error("subdivision search is defined on claw trees");
  }
  const int n = pair.tree.edge_count();
  if (n < 4) throw input_error("claw must have at least four leaves");
  const Group& g = pair.group;

  // Difference matrix, rows indexed by leaf label - 1 (edges are in label
  // order for builtin claws).
  std::vector<std::vector<int>> diff(n, std::vector<int>(pair.degree));
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < pair.degree; ++c) {
      diff[r][c] = g.add(pair.a1[r][c], g.neg(pair.a2[r][c]));
    }
  }

  std::vector<int> subset;
  std::function<bool(int, int)> search = [&](int start, int remaining) -> bool {
    if (remaining == 0) {
      for (int c = 0; c < pair.degree; ++c) {
        int sum = g.zero();
        for (int r : subset) sum = g.add(sum, diff[r][c]);
        if (sum != g.zero()) return false;
      }
      return true;
    }
    for (int r = start; r <= n - remaining; ++r) {
      subset.push_back(r);
      if (search(r + 1, remaining - 1)) return true;
      subset.pop_back();
    }
    return false;
  };

  for (int size = 2; size <= n - 2; ++size) {
    subset.clear();
    if (search(0, size)) {
      std::vector<int> labels;
      labels.reserve(subset.size());
      for (int r : subset) labels.push_back(r + 1);
      Tree prol = prolongation_tree(n, labels);
      return SubdivisionWitness{std::move(labels), std::move(prol)};
    }
  }
  return std::nullopt;
}

BinomialPair extend_by_witness(const BinomialPair& pair, const SubdivisionWitness& witness) {
  const int n = pair.tree.edge_count();
  const Group& g = pair.group;

  // The prolongation's edges are: side-with-1 leaves, the inner edge, then
  // the complement leaves. The inner row is the S-sum of each column.
  std::vector<char> in_s(n + 1, 0);
  for (int l : witness.rows) in_s[l] = 1;
  std::vector<int> side1, side2;
  for (int l = 1; l <= n; ++l) (in_s[l] == in_s[1] ? side1 : side2).push_back(l);

  auto sum_over = [&](const std::vector<std::vector<int>>& m, const std::vector<int>& side,
                      int c) {
    int sum = g.zero();
    for (int l : side) sum = g.add(sum, m[l - 1][c]);
    return sum;
  };
  std::vector<std::vector<int>> out1, out2;
  for (const auto* src : {&pair.a1, &pair.a2}) {
    std::vector<std::vector<int>> rows;
    for (int l : side1) rows.push_back((*src)[l - 1]);
    std::vector<int> inner(pair.degree);
    for (int c = 0; c < pair.degree; ++c) inner[c] = sum_over(*src, side2, c);
    rows.push_back(std::move(inner));
    for (int l : side2) rows.push_back((*src)[l - 1]);
    (src == &pair.a1 ? out1 : out2) = std::move(rows);
  }
  return BinomialPair(witness.prolongation, g, pair.degree, std::move(out1), std::move(out2));
}

JcQuadricCoverReport jc_quadric_cover(int n) {
  if (n < 4 || n > 10) throw guard_error("jc-quadrics supports 4 <= n <= 10");
  JcQuadricCoverReport report;
  report.claw_size = n;
  report.all_covered = true;
  report.three_splits_sufficient = true;

  // Flows of claw(n) over Z2 are the even-weight bitmasks.
  std::vector<std::uint32_t> flows;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) % 2 == 0) flows.push_back(mask);
  }

  // A degree-2 relation, up to column and pair swaps, is a base pair of
  // flows {f1, f2} together with an even swap set 0 < T < D = f1^f2 (T and
  // D\T give the same partner pair). With columns aligned this way the
  // difference matrix has both columns equal to T.
  auto has_pair_witness = [&](std::uint32_t t) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const int ones = ((t >> i) & 1u) + ((t >> j) & 1u);
        if (ones % 2 == 0) return true;  // S = {i+1, j+1}, n-2 >= 2
      }
    }
    return false;
  };

  for (std::size_t i = 0; i < flows.size(); ++i) {
    for (std::size_t j = i + 1; j < flows.size(); ++j) {
      const std::uint32_t f1 = flows[i];
      const std::uint32_t f2 = flows[j];
      const std::uint32_t d = f1 ^ f2;
      // Even subsets T of D, excluding the trivial 0 and D.
      for (std::uint32_t t = (d - 1) & d; t != 0; t = (t - 1) & d) {
        if (t == d || __builtin_popcount(t) % 2 != 0) continue;
        if (t > (d ^ t)) continue;              // T ~ D\T
        const std::uint32_t g1 = f1 ^ t;
        const std::uint32_t g2 = f2 ^ t;
        if (std::min(g1, g2) < f1) continue;    // pair swap canonicalization
        ++report.binomial_count;
        if (!has_pair_witness(t)) report.all_covered = false;
        // Splits anchored at rows {1,2}, {1,3}, {2,3}.
        const int b1 = t & 1u ? 1 : 0;
        const int b2 = t & 2u ? 1 : 0;
        const int b3 = t & 4u ? 1 : 0;
        if ((b1 + b2) % 2 != 0 && (b1 + b3) % 2 != 0 && (b2 + b3) % 2 != 0) {
          report.three_splits_sufficient = false;
        }
      }
    }
  }
  return report;
}

IntMatrix prolongation_socket_matrix(int n, const Group& group, const std::vector<int>& side) {
  const int m = group.order();
  std::vector<char> in_s(n + 1, 0);
  for (int l : side) in_s[l] = 1;
  std::vector<int> side2;
  for (int l = 1; l <= n; ++l) {
    if (in_s[l] != in_s[1]) side2.push_back(l);
  }

  const Tree claw = builtin_tree("claw", n);
  const VertexMatrix sockets = vertex_matrix(claw, group);
  IntMatrix a((n + 1) * m, sockets.cols);
  for (int c = 0; c < sockets.cols; ++c) {
    int inner = group.zero();
    for (int l = 0; l < n; ++l) {
      const int value = sockets.flow_value(c, l);  // claw edge l <-> leaf l+1
      a.at(l * m + value, c) = 1;
      if (in_s[l + 1] != in_s[1]) inner = group.add(inner, value);
    }
    a.at(n * m + inner, c) = 1;
  }
  return a;
}

IntersectionReport intersect_claw(int n, const Group& group, int first_k, bool pairs_only) {
  if (n < 4) throw input_error("intersection check requires a claw with n >= 4");
  IntersectionReport report;
  report.claw_size = n;

  const Tree claw = builtin_tree("claw", n);
  const VertexMatrix vm = vertex_matrix(claw, group);
  const IntMatrix vclaw = IntMatrix::from_vertex_matrix(vm);
  report.sockets = vm.cols;
  report.claw_rank = rank(vclaw);

  auto all = prolongations(n);
  std::vector<std::vector<int>> sides;
  for (auto& [spec, tree] : all) {
    const int small_side =
        std::min(static_cast<int>(spec.side_with_first.size()),
                 n - static_cast<int>(spec.side_with_first.size()));
    if (pairs_only && small_side != 2) continue;
    sides.push_back(spec.side_with_first);
  }
  if (first_k > 0 && first_k < static_cast<int>(sides.size())) sides.resize(first_k);
  if (sides.empty()) throw input_error("prolongation selection is empty");
  report.prolongations_available = static_cast<int>(sides.size());

  // dim Σ ker A_i = sockets - dim ∩ row(A_i); the row-space intersection is
  // accumulated incrementally and stops early once it reaches the claw's
  // row space (it can never get below it).
  IntMatrix common;
  for (const auto& side : sides) {
    const IntMatrix a = prolongation_socket_matrix(n, group, side);
    common = report.prolongations_used == 0 ? row_basis(a) : row_space_intersection(common, a);
    ++report.prolongations_used;
    if (common.rows < report.claw_rank) {
      throw std::logic_error("row-space intersection fell below the claw rank");
    }
    if (common.rows == report.claw_rank) break;
  }
  report.torus_dimension = common.rows;
  report.kernel_sum_dimension = report.sockets - common.rows;
  report.equals_claw = report.torus_dimension == report.claw_rank;
  return report;
}

int intersection_dimension(int n, const Group& group, int first_k, bool pairs_only) {
  return intersect_claw(n, group, first_k, pairs_only).kernel_sum_dimension;
}

bool compare_claw_dimension(int n, const Group& group) {
  return intersect_claw(n, group).equals_claw;
}

BinomialPair read_binomial(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw input_error("empty binomial file");
  std::istringstream hs(header);
  std::string kw_degree, kw_leaves, kw_group, group_spec;
  int degree = 0;
  int leaves = 0;
  hs >> kw_degree >> degree >> kw_leaves >> leaves >> kw_group >> group_spec;
  if (kw_degree != "degree" || kw_leaves != "leaves" || kw_group != "group" || hs.fail()) {
    throw input_error("binomial header must be 'degree <d> leaves <n> group <spec>'");
  }
  if (degree < 1 || leaves < 3) throw input_error("binomial header out of range");

  Group group = parse_group(group_spec);
  Tree tree = builtin_tree("claw", leaves);

  auto read_rows = [&](std::vector<std::vector<int>>& rows) {
    for (int r = 0; r < leaves; ++r) {
      std::string line;
      if (!std::getline(in, line)) throw input_error("binomial file truncated");
      std::istringstream ls(line);
      std::vector<int> row;
      std::string token;
      while (ls >> token) {
        GroupElement element;
        std::size_t pos = 0;
        while (pos <= token.size()) {
          const std::size_t comma = token.find(',', pos);
          const std::string part = token.substr(pos, comma == std::string::npos ? std::string::npos
                                                                                : comma - pos);
          try {
            element.push_back(std::stoi(part));
          } catch (const std::exception&) {
            throw input_error("bad element '" + token + "' in binomial file");
          }
          if (comma == std::string::npos) break;
          pos = comma + 1;
        }
        row.push_back(group.index_of(element));
      }
      if (static_cast<int>(row.size()) != degree) {
        throw input_error("binomial row has wrong number of columns");
      }
      rows.push_back(std::move(row));
    }
  };
  std::vector<std::vector<int>> a1, a2;
  read_rows(a1);
  read_rows(a2);
  return BinomialPair(std::move(tree), std::move(group), degree, std::move(a1), std::move(a2));
}

void write_binomial(std::ostream& out, const BinomialPair& pair) {
  out << "degree " << pair.degree << " leaves " << pair.tree.edge_count() << " group "
      << pair.group.spec() << "\n";
  auto write_rows = [&](const std::vector<std::vector<int>>& rows) {
    for (const auto& row : rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c) out << ' ';
        const GroupElement e = pair.group.element(row[c]);
        for (std::size_t i = 0; i < e.size(); ++i) {
          if (i) out << ',';
          out << e[i];
        }
      }
      out << "\n";
    }
  };
  write_rows(pair.a1);
  write_rows(pair.a2);
}

}  // namespace flowlat
