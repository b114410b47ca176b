#include "flowlat/tree.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <memory>
#include <set>

#include "flowlat/errors.hpp"

namespace flowlat {

Tree::Tree(int vertex_count, int root, std::vector<Edge> edges, std::vector<int> labels)
    : vertex_count_(vertex_count), root_(root), edges_(std::move(edges)), labels_(std::move(labels)) {
  if (vertex_count_ < 2) throw input_error("tree must have at least two vertices");
  if (static_cast<int>(edges_.size()) != vertex_count_ - 1) {
    throw input_error("edge count must be vertex count minus one");
  }
  if (static_cast<int>(labels_.size()) != vertex_count_) {
    throw input_error("label vector size mismatch");
  }
  degree_.assign(vertex_count_, 0);
  incoming_.assign(vertex_count_, -1);
  outgoing_.assign(vertex_count_, {});
  for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
    const auto& [p, c] = edges_[e];
    if (p < 0 || p >= vertex_count_ || c < 0 || c >= vertex_count_ || p == c) {
      throw input_error("edge endpoints out of range");
    }
    if (incoming_[c] != -1) throw input_error("vertex has two incoming edges");
    incoming_[c] = e;
    outgoing_[p].push_back(e);
    ++degree_[p];
    ++degree_[c];
  }
  if (incoming_[root_] != -1) throw input_error("root must have no incoming edge");
  // Connectivity: every non-root vertex has an incoming edge and the parent
  // chain reaches the root (acyclicity follows from the unique-incoming rule).
  for (int v = 0; v < vertex_count_; ++v) {
    if (v != root_ && incoming_[v] == -1) throw input_error("tree is not connected");
  }
  std::vector<char> reach(vertex_count_, 0);
  reach[root_] = 1;
  std::vector<int> stack{root_};
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int e : outgoing_[v]) {
      const int c = edges_[e].child;
      if (reach[c]) throw input_error("tree contains a cycle");
      reach[c] = 1;
      stack.push_back(c);
    }
  }
  for (char r : reach) {
    if (!r) throw input_error("tree is not connected");
  }

  leaf_edge_flag_.assign(edges_.size(), 0);
  std::set<int> seen_labels;
  for (int v = 0; v < vertex_count_; ++v) {
    if (degree_[v] == 1) {
      if (labels_[v] <= 0) throw input_error("degree-one vertex without a positive leaf label");
      if (!seen_labels.insert(labels_[v]).second) {
        throw input_error("duplicate leaf label " + std::to_string(labels_[v]));
      }
      const int e = (v == root_) ? outgoing_[v].front() : incoming_[v];
      leaf_edge_flag_[e] = 1;
    } else {
      if (labels_[v] != 0) throw input_error("inner vertex must not carry a leaf label");
      inner_vertices_.push_back(v);
    }
  }
  for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
    if (leaf_edge_flag_[e]) leaf_edges_.push_back(e);
  }
  if (inner_vertices_.empty()) throw input_error("tree has no inner vertex");
}

int Tree::leaf_label_of_edge(int e) const {
  if (!leaf_edge_flag_[e]) throw input_error("edge is not a leaf edge");
  const auto& [p, c] = edges_[e];
  return degree_[c] == 1 ? labels_[c] : labels_[p];
}

bool Tree::is_trivalent() const {
  for (int v : inner_vertices_) {
    if (degree_[v] != 3) return false;
  }
  return true;
}

bool Tree::is_center_rooted_claw() const {
  return degree_[root_] == edge_count() && edge_count() >= 3;
}

namespace {

struct ParseNode {
  int label = 0;  // >0 for leaves
  std::vector<std::unique_ptr<ParseNode>> children;
};

class NewickParser {
 public:
  explicit NewickParser(std::string_view text) : text_(text) {}

  std::unique_ptr<ParseNode> run(int* root_label) {
    skip_space();
    auto node = parse_node();
    skip_space();
    *root_label = 0;
    if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      *root_label = parse_int();
      skip_space();
    }
    if (pos_ >= text_.size() || text_[pos_] != ';') {
      throw input_error("tree text must end with ';'");
    }
    ++pos_;
    skip_space();
    if (pos_ != text_.size()) throw input_error("trailing characters after ';'");
    return node;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  int parse_int() {
    std::size_t start = pos_;
    long value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + (text_[pos_] - '0');
      if (value > 1000000) throw input_error("leaf label too large");
      ++pos_;
    }
    if (pos_ == start) throw input_error("expected an integer leaf label");
    if (value == 0) throw input_error("leaf labels must be positive");
    return static_cast<int>(value);
  }

  std::unique_ptr<ParseNode> parse_node() {
    if (pos_ >= text_.size() || text_[pos_] != '(') {
      throw input_error("expected '(' at position " + std::to_string(pos_));
    }
    ++pos_;
    auto node = std::make_unique<ParseNode>();
    while (true) {
      skip_space();
      if (pos_ >= text_.size()) throw input_error("unbalanced parentheses");
      if (text_[pos_] == '(') {
        node->children.push_back(parse_node());
      } else if (std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        auto leaf = std::make_unique<ParseNode>();
        leaf->label = parse_int();
        node->children.push_back(std::move(leaf));
      } else {
        throw input_error(std::string("unexpected character '") + text_[pos_] + "'");
      }
      skip_space();
      if (pos_ >= text_.size()) throw input_error("unbalanced parentheses");
      if (text_[pos_] == ',') {
        ++pos_;
        continue;
      }
      if (text_[pos_] == ')') {
        ++pos_;
        return node;
      }
      throw input_error(std::string("unexpected character '") + text_[pos_] + "'");
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void emit(const ParseNode& node, int parent, std::vector<Tree::Edge>& edges,
          std::vector<int>& labels, int* next_id) {
  const int id = (*next_id)++;
  labels.push_back(node.label);
  if (parent >= 0) edges.push_back({parent, id});
  if (node.label == 0) {
    if (node.children.size() < 2) {
      throw input_error("inner node must have at least two children");
    }
    for (const auto& child : node.children) emit(*child, id, edges, labels, next_id);
  }
}

}  // namespace

Tree parse_tree(std::string_view text) {
  int root_label = 0;
  NewickParser parser(text);
  auto root = parser.run(&root_label);
  if (root->children.empty()) throw input_error("empty tree");

  if (root_label == 0 && root->children.size() == 1) {
    throw input_error("a tree with a single leaf has no inner vertex");
  }
  // Unrooted-binary convention: a bare two-child root with both children
  // internal collapses into its first child.
  if (root_label == 0 && root->children.size() == 2 && root->children[0]->label == 0 &&
      root->children[1]->label == 0) {
    auto second = std::move(root->children[1]);
    root = std::move(root->children[0]);
    root->children.push_back(std::move(second));
  }

  std::vector<Tree::Edge> edges;
  std::vector<int> labels;
  int next_id = 0;
  if (root_label > 0) {
    // Tree rooted at a labeled leaf vertex.
    labels.push_back(root_label);
    ++next_id;
    if (root->children.size() == 1 && root->children[0]->label == 0) {
      emit(*root->children[0], 0, edges, labels, &next_id);
    } else if (root->children.size() >= 2) {
      ParseNode inner;
      inner.children = std::move(root->children);
      emit(inner, 0, edges, labels, &next_id);
    } else {
      throw input_error("a tree with a single leaf has no inner vertex");
    }
  } else {
    emit(*root, -1, edges, labels, &next_id);
  }
  return Tree(next_id, 0, std::move(edges), std::move(labels));
}

Tree builtin_tree(const std::string& name, int param) {
  if (name == "tripod") return builtin_tree("claw", 3);
  if (name == "claw") {
    if (param < 3) throw input_error("claw requires n >= 3");
    std::string s = "(";
    for (int i = 1; i <= param; ++i) {
      if (i > 1) s += ',';
      s += std::to_string(i);
    }
    s += ");";
    return parse_tree(s);
  }
  if (name == "snowflake") return parse_tree("((1,2),(3,4),(5,6));");
  if (name == "caterpillar") {
    if (param < 1) throw input_error("caterpillar requires k >= 1");
    std::string inner = "(" + std::to_string(param + 2) + "," + std::to_string(param + 3) + ")";
    for (int i = param; i >= 2; --i) {
      inner = "(" + std::to_string(i + 1) + "," + inner + ")";
    }
    return parse_tree("(1,2," + inner + ");");
  }
  throw input_error("unknown builtin tree '" + name + "'");
}

Tree tree_from_source(const std::string& source) {
  constexpr std::string_view prefix = "builtin:";
  if (source.rfind(prefix, 0) == 0) {
    std::string rest = source.substr(prefix.size());
    std::size_t digits = rest.size();
    while (digits > 0 && std::isdigit(static_cast<unsigned char>(rest[digits - 1]))) --digits;
    const std::string name = rest.substr(0, digits);
    const int param = digits < rest.size() ? std::stoi(rest.substr(digits)) : 0;
    return builtin_tree(name, param);
  }
  return parse_tree(source);
}

Tree prolongation_tree(int n, const std::vector<int>& side) {
  std::vector<char> in_side(n + 1, 0);
  for (int l : side) {
    if (l < 1 || l > n) throw input_error("split leaf out of range");
    in_side[l] = 1;
  }
  std::vector<int> s1, s2;
  for (int l = 1; l <= n; ++l) (in_side[l] == in_side[1] ? s1 : s2).push_back(l);
  if (static_cast<int>(s1.size()) < 2 || static_cast<int>(s2.size()) < 2) {
    throw input_error("both split sides need at least two leaves");
  }
  std::string text = "(";
  for (std::size_t i = 0; i < s1.size(); ++i) {
    if (i) text += ',';
    text += std::to_string(s1[i]);
  }
  text += ",(";
  for (std::size_t i = 0; i < s2.size(); ++i) {
    if (i) text += ',';
    text += std::to_string(s2[i]);
  }
  text += "));";
  return parse_tree(text);
}

std::vector<std::pair<ProlongationSpec, Tree>> prolongations(int n) {
  if (n < 4) throw input_error("prolongations need a claw with n >= 4");
  if (n > 24) throw input_error("claw size too large for prolongation enumeration");
  std::vector<std::vector<int>> sides;
  // Enumerate the side containing leaf 1 by (size, lex).
  for (int size = 2; size <= n - 2; ++size) {
    std::vector<int> pick(size - 1);
    // Combinations from {2..n} of size-1 elements, lexicographic.
    std::function<void(int, int)> rec = [&](int start, int depth) {
      if (depth == size - 1) {
        std::vector<int> side{1};
        side.insert(side.end(), pick.begin(), pick.end());
        sides.push_back(std::move(side));
        return;
      }
      for (int v = start; v <= n; ++v) {
        pick[depth] = v;
        rec(v + 1, depth + 1);
      }
    };
    rec(2, 0);
  }
  std::vector<std::pair<ProlongationSpec, Tree>> result;
  result.reserve(sides.size());
  for (auto& side : sides) {
    Tree t = prolongation_tree(n, side);
    result.emplace_back(ProlongationSpec{n, side}, std::move(t));
  }
  return result;
}

Tree contract_edge(const Tree& tree, int edge) {
  if (edge < 0 || edge >= tree.edge_count()) throw input_error("edge index out of range");
  if (tree.is_leaf_edge(edge)) throw input_error("cannot contract a leaf edge");
  const int keep = tree.edges()[edge].parent;
  const int drop = tree.edges()[edge].child;
  std::vector<Tree::Edge> edges;
  edges.reserve(tree.edge_count() - 1);
  auto remap = [&](int v) {
    if (v == drop) v = keep;
    return v > drop ? v - 1 : v;
  };
  for (int e = 0; e < tree.edge_count(); ++e) {
    if (e == edge) continue;
    edges.push_back({remap(tree.edges()[e].parent), remap(tree.edges()[e].child)});
  }
  std::vector<int> labels;
  labels.reserve(tree.vertex_count() - 1);
  for (int v = 0; v < tree.vertex_count(); ++v) {
    if (v != drop) labels.push_back(tree.label_of_vertex(v));
  }
  return Tree(tree.vertex_count() - 1, remap(tree.root()), std::move(edges), std::move(labels));
}

Tree reroot(const Tree& tree, int vertex) {
  if (vertex < 0 || vertex >= tree.vertex_count()) throw input_error("unknown vertex");
  if (vertex == tree.root()) return tree;
  // Re-orient each edge away from the new root, keeping edge order.
  std::vector<std::vector<std::pair<int, int>>> adj(tree.vertex_count());  // (other, edge)
  for (int e = 0; e < tree.edge_count(); ++e) {
    adj[tree.edges()[e].parent].push_back({tree.edges()[e].child, e});
    adj[tree.edges()[e].child].push_back({tree.edges()[e].parent, e});
  }
  std::vector<int> parent(tree.vertex_count(), -1);
  std::vector<char> visited(tree.vertex_count(), 0);
  std::vector<int> stack{vertex};
  visited[vertex] = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (auto [w, e] : adj[v]) {
      if (!visited[w]) {
        visited[w] = 1;
        parent[w] = v;
        stack.push_back(w);
      }
    }
  }
  std::vector<Tree::Edge> edges;
  edges.reserve(tree.edge_count());
  for (int e = 0; e < tree.edge_count(); ++e) {
    auto [p, c] = tree.edges()[e];
    if (parent[p] == c) std::swap(p, c);
    edges.push_back({p, c});
  }
  std::vector<int> labels(tree.vertex_count());
  for (int v = 0; v < tree.vertex_count(); ++v) labels[v] = tree.label_of_vertex(v);
  return Tree(tree.vertex_count(), vertex, std::move(edges), std::move(labels));
}

std::string Tree::to_newick() const {
  std::function<std::string(int)> render = [&](int v) -> std::string {
    if (degree_[v] == 1 && v != root_) return std::to_string(labels_[v]);
    std::string s = "(";
    bool first = true;
    for (int e : outgoing_[v]) {
      if (!first) s += ',';
      first = false;
      s += render(edges_[e].child);
    }
    s += ')';
    return s;
  };
  std::string s = render(root_);
  if (degree_[root_] == 1) s += std::to_string(labels_[root_]);
  return s + ";";
}

namespace {
std::string canonical_shape(const Tree& t, int v) {
  if (t.degree(v) == 1 && v != t.root()) return std::to_string(t.label_of_vertex(v));
  std::vector<std::string> parts;
  for (int e : t.outgoing_edges(v)) parts.push_back(canonical_shape(t, t.edges()[e].child));
  if (v == t.root() && t.degree(v) == 1) parts.push_back(std::to_string(t.label_of_vertex(v)));
  std::sort(parts.begin(), parts.end());
  std::string s = "(";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s += ',';
    s += parts[i];
  }
  return s + ")";
}
}  // namespace

bool leaf_labeled_equal(const Tree& a, const Tree& b) {
  // Compare as unrooted leaf-labeled topologies: canonicalize from a fixed
  // reference leaf (the smallest label) to ignore the rooting.
  auto smallest_leaf_vertex = [](const Tree& t) {
    int best_vertex = -1;
    int best_label = 1 << 30;
    for (int v = 0; v < t.vertex_count(); ++v) {
      const int l = t.label_of_vertex(v);
      if (l > 0 && l < best_label) {
        best_label = l;
        best_vertex = v;
      }
    }
    return best_vertex;
  };
  const Tree ra = reroot(a, smallest_leaf_vertex(a));
  const Tree rb = reroot(b, smallest_leaf_vertex(b));
  return canonical_shape(ra, ra.root()) == canonical_shape(rb, rb.root());
}

}  // namespace flowlat
