#include "flowlat/flow.hpp"

#include <algorithm>

#include "flowlat/errors.hpp"
#include "flowlat/guard.hpp"

namespace flowlat {

bool is_flow(const Tree& tree, const Group& group, const Flow& flow) {
  if (static_cast<int>(flow.values.size()) != tree.edge_count()) return false;
  for (int v : flow.values) {
    if (v < 0 || v >= group.order()) return false;
  }
  for (int v : tree.inner_vertices()) {
    int sum_out = group.zero();
    for (int e : tree.outgoing_edges(v)) sum_out = group.add(sum_out, flow.values[e]);
    const int in = tree.incoming_edge(v);
    const int expected = in >= 0 ? flow.values[in] : group.zero();
    if (sum_out != expected) return false;
  }
  return true;
}

BigInt flow_count(const Tree& tree, const Group& group) {
  BigInt count = 1;
  const int free_edges = tree.edge_count() - tree.inner_count();
  for (int i = 0; i < free_edges; ++i) count *= group.order();
  return count;
}

namespace {

struct EnumerationPlan {
  std::vector<int> free_edges;       // ascending
  std::vector<int> solve_vertices;   // inner vertices, parents before children
  std::vector<int> dependent_edge;   // per solve vertex
};

EnumerationPlan make_plan(const Tree& tree) {
  EnumerationPlan plan;
  std::vector<char> dependent(tree.edge_count(), 0);
  // Preorder over vertices so each dependent edge is solvable from values
  // already known.
  std::vector<int> order;
  std::vector<int> stack{tree.root()};
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    order.push_back(v);
    const auto& out = tree.outgoing_edges(v);
    for (auto it = out.rbegin(); it != out.rend(); ++it) stack.push_back(tree.edges()[*it].child);
  }
  for (int v : order) {
    if (!tree.is_inner_vertex(v)) continue;
    const auto& out = tree.outgoing_edges(v);
    const int dep = *std::min_element(out.begin(), out.end());
    dependent[dep] = 1;
    plan.solve_vertices.push_back(v);
    plan.dependent_edge.push_back(dep);
  }
  for (int e = 0; e < tree.edge_count(); ++e) {
    if (!dependent[e]) plan.free_edges.push_back(e);
  }
  return plan;
}

void solve_dependents(const Tree& tree, const Group& group, const EnumerationPlan& plan,
                      Flow& flow) {
  for (std::size_t i = 0; i < plan.solve_vertices.size(); ++i) {
    const int v = plan.solve_vertices[i];
    const int dep = plan.dependent_edge[i];
    const int in = tree.incoming_edge(v);
    int value = in >= 0 ? flow.values[in] : group.zero();
    for (int e : tree.outgoing_edges(v)) {
      if (e != dep) value = group.add(value, group.neg(flow.values[e]));
    }
    flow.values[dep] = value;
  }
}

}  // namespace

void for_each_flow(const Tree& tree, const Group& group,
                   const std::function<void(const Flow&)>& visit) {
  const EnumerationPlan plan = make_plan(tree);
  Flow flow;
  flow.values.assign(tree.edge_count(), 0);
  std::vector<int> odometer(plan.free_edges.size(), 0);
  while (true) {
    for (std::size_t i = 0; i < plan.free_edges.size(); ++i) {
      flow.values[plan.free_edges[i]] = odometer[i];
    }
    solve_dependents(tree, group, plan, flow);
    visit(flow);
    // Lexicographic increment: last free edge changes fastest.
    std::size_t i = odometer.size();
    while (i > 0) {
      --i;
      if (++odometer[i] < group.order()) break;
      odometer[i] = 0;
      if (i == 0) return;
    }
    if (odometer.empty()) return;
  }
}

std::vector<Flow> enumerate_flows(const Tree& tree, const Group& group) {
  const BigInt count = flow_count(tree, group);
  require_memory(BigInt(count * tree.edge_count() * sizeof(int) + count * sizeof(Flow))
                     .convert_to<std::uint64_t>(),
                 "flow enumeration");
  std::vector<Flow> flows;
  flows.reserve(count.convert_to<std::size_t>());
  for_each_flow(tree, group, [&](const Flow& f) { flows.push_back(f); });
  return flows;
}

VertexMatrix vertex_matrix(const Tree& tree, const Group& group) {
  const BigInt count = flow_count(tree, group);
  const BigInt bytes = count * tree.edge_count() * (group.order() + sizeof(int));
  require_memory(bytes.convert_to<std::uint64_t>(), "vertex matrix");

  VertexMatrix vm;
  vm.group_order = group.order();
  vm.edge_count = tree.edge_count();
  vm.rows = tree.edge_count() * group.order();
  vm.cols = count.convert_to<int>();
  vm.col_major.assign(static_cast<std::size_t>(vm.rows) * vm.cols, 0);
  vm.flows.reserve(static_cast<std::size_t>(vm.cols) * vm.edge_count);
  int col = 0;
  for_each_flow(tree, group, [&](const Flow& f) {
    std::uint8_t* column = vm.col_major.data() + static_cast<std::size_t>(col) * vm.rows;
    for (int e = 0; e < vm.edge_count; ++e) {
      column[e * vm.group_order + f.values[e]] = 1;
      vm.flows.push_back(f.values[e]);
    }
    ++col;
  });
  return vm;
}

Socket socket_of_flow(const Tree& tree, const Flow& flow) {
  if (static_cast<int>(flow.values.size()) != tree.edge_count()) {
    throw input_error("flow has wrong number of edges");
  }
  Socket s;
  s.values.reserve(tree.leaf_edges().size());
  for (int e : tree.leaf_edges()) s.values.push_back(flow.values[e]);
  return s;
}

Flow flow_of_socket(const Tree& tree, const Group& group, const Socket& socket) {
  if (socket.values.size() != tree.leaf_edges().size()) {
    throw input_error("socket leaf set does not match the tree");
  }
  Flow flow;
  flow.values.assign(tree.edge_count(), -1);
  for (std::size_t i = 0; i < socket.values.size(); ++i) {
    const int v = socket.values[i];
    if (v < 0 || v >= group.order()) throw input_error("socket value outside the group");
    flow.values[tree.leaf_edges()[i]] = v;
  }
  // Deepest-first vertex order so that all outgoing values are known when a
  // vertex is processed.
  std::vector<int> order;
  std::vector<int> stack{tree.root()};
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (int e : tree.outgoing_edges(v)) stack.push_back(tree.edges()[e].child);
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int v = *it;
    if (!tree.is_inner_vertex(v)) continue;
    int sum_out = group.zero();
    for (int e : tree.outgoing_edges(v)) sum_out = group.add(sum_out, flow.values[e]);
    const int in = tree.incoming_edge(v);
    if (in < 0) {
      if (sum_out != group.zero()) {
        throw input_error("socket does not sum to the identity");
      }
    } else if (flow.values[in] >= 0) {
      // Incoming edge is a leaf edge (the tree is rooted at a leaf).
      if (flow.values[in] != sum_out) {
        throw input_error("socket does not sum to the identity");
      }
    } else {
      flow.values[in] = sum_out;
    }
  }
  return flow;
}

}  // namespace flowlat
