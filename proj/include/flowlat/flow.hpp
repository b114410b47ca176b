#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "flowlat/bigint.hpp"
#include "flowlat/group.hpp"
#include "flowlat/tree.hpp"

namespace flowlat {

// Assignment of a group element (by index) to every edge, balanced at each
// inner vertex: the incoming element equals the sum of the outgoing ones,
// with the missing incoming edge at the root read as the identity.
struct Flow {
  std::vector<int> values;  // element index per edge, in edge order
};

// Assignment to the leaf edges only, in leaf_edges() order.
struct Socket {
  std::vector<int> values;
};

bool is_flow(const Tree& tree, const Group& group, const Flow& flow);

// |G|^(|E|-|N|)
BigInt flow_count(const Tree& tree, const Group& group);

// Visits all flows in lexicographic order of the free-edge assignments. One
// outgoing edge per inner vertex (the lowest-index one) is dependent and
// solved from the balance condition; the remaining edges are free.
void for_each_flow(const Tree& tree, const Group& group,
                   const std::function<void(const Flow&)>& visit);

std::vector<Flow> enumerate_flows(const Tree& tree, const Group& group);

// 0/1 matrix whose columns are the polytope vertices: rows indexed by
// (edge, group element) pairs, edge-major with elements in canonical group
// order; column j is the indicator vector of flow j.
struct VertexMatrix {
  int rows = 0;
  int cols = 0;
  int group_order = 0;
  int edge_count = 0;
  std::vector<std::uint8_t> col_major;
  std::vector<int> flows;  // flattened: flows[c * edge_count + e] = element index

  std::uint8_t at(int r, int c) const { return col_major[static_cast<std::size_t>(c) * rows + r]; }
  int flow_value(int c, int e) const { return flows[static_cast<std::size_t>(c) * edge_count + e]; }
};

VertexMatrix vertex_matrix(const Tree& tree, const Group& group);

Socket socket_of_flow(const Tree& tree, const Flow& flow);

// Reconstructs the inner-edge values by propagating balance from the leaves
// inward; rejects sockets that do not extend to a flow.
Flow flow_of_socket(const Tree& tree, const Group& group, const Socket& socket);

}  // namespace flowlat
