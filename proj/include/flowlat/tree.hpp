#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace flowlat {

// Rooted tree with labeled leaves and edges directed away from the root.
//
// Edge indices are assigned at construction (parse order / builder order) and
// are stable: polytope coordinates depend on them. Leaf edges are the edges
// incident to a degree-one vertex; inner vertices are the vertices of degree
// at least two. A degree-one root is allowed (it arises from rerooting at a
// leaf) and its edge still counts as a leaf edge.
class Tree {
 public:
  struct Edge {
    int parent;
    int child;
  };

  Tree(int vertex_count, int root, std::vector<Edge> edges, std::vector<int> labels);

  int vertex_count() const { return vertex_count_; }
  int root() const { return root_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }

  int degree(int v) const { return degree_[v]; }
  bool is_inner_vertex(int v) const { return degree_[v] >= 2; }
  const std::vector<int>& inner_vertices() const { return inner_vertices_; }
  int inner_count() const { return static_cast<int>(inner_vertices_.size()); }

  // Edge indices incident to a degree-one vertex, ascending.
  const std::vector<int>& leaf_edges() const { return leaf_edges_; }
  int leaf_count() const { return static_cast<int>(leaf_edges_.size()); }
  bool is_leaf_edge(int e) const { return leaf_edge_flag_[e]; }
  // Label of the degree-one endpoint of a leaf edge.
  int leaf_label_of_edge(int e) const;
  int label_of_vertex(int v) const { return labels_[v]; }

  int incoming_edge(int v) const { return incoming_[v]; }  // -1 at the root
  const std::vector<int>& outgoing_edges(int v) const { return outgoing_[v]; }

  // Every inner vertex has degree exactly three.
  bool is_trivalent() const;

  // True when the tree is a claw K_{n,1} rooted at its center.
  bool is_center_rooted_claw() const;

  std::string to_newick() const;

 private:
  int vertex_count_;
  int root_;
  std::vector<Edge> edges_;
  std::vector<int> labels_;

  std::vector<int> degree_;
  std::vector<int> incoming_;
  std::vector<std::vector<int>> outgoing_;
  std::vector<int> inner_vertices_;
  std::vector<int> leaf_edges_;
  std::vector<char> leaf_edge_flag_;
};

// Newick subset: nested parentheses, integer leaf labels, no branch lengths,
// ";" terminator. The root is the outermost node; a two-child root whose
// children are both internal is normalized by merging it into its first
// child (the usual unrooted-binary convention), so "((1,2),(3,4));" yields
// the quartet with two inner vertices. An optional trailing label
// "(...)7;" roots the tree at leaf 7.
Tree parse_tree(std::string_view text);

// tripod | claw (param = n >= 3) | snowflake | caterpillar (param = k >= 1).
// caterpillar(k) is the trivalent caterpillar with k+1 inner vertices and
// k+3 leaves; caterpillar(3) is the 3-caterpillar with six leaves.
Tree builtin_tree(const std::string& name, int param = 0);

// Accepts either "builtin:<name>" (e.g. "builtin:claw4") or a Newick string.
Tree tree_from_source(const std::string& source);

// Unordered split of the claw's leaves defining a two-inner-vertex
// prolongation; `side_with_first` is the side containing leaf 1, sorted.
struct ProlongationSpec {
  int claw_size;
  std::vector<int> side_with_first;
};

// All prolongations of claw(n) with both inner vertices of valency >= 3,
// ordered by (size, lex) of the side containing leaf 1; there are
// (2^n - 2 - 2n)/2 of them.
std::vector<std::pair<ProlongationSpec, Tree>> prolongations(int n);

// Builds the prolongation tree for an arbitrary split side (the complement
// is derived); used by subdivision witnesses.
Tree prolongation_tree(int n, const std::vector<int>& side);

Tree contract_edge(const Tree& tree, int edge);
Tree reroot(const Tree& tree, int vertex);

// Leaf-labeled topology equality (children order ignored).
bool leaf_labeled_equal(const Tree& a, const Tree& b);

}  // namespace flowlat
