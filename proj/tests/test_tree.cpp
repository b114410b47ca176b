#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "flowlat/errors.hpp"
#include "flowlat/tree.hpp"

using namespace flowlat;

TEST_CASE("parsing basic trees") {
  const Tree tripod = parse_tree("(1,2,3);");
  CHECK(tripod.edge_count() == 3);
  CHECK(tripod.inner_count() == 1);
  CHECK(tripod.leaf_count() == 3);
  CHECK(tripod.is_center_rooted_claw());

  // Two-child root with both children internal collapses to the quartet
  // with two inner vertices.
  const Tree quartet = parse_tree("((1,2),(3,4));");
  CHECK(quartet.edge_count() == 5);
  CHECK(quartet.inner_count() == 2);
  CHECK(quartet.leaf_count() == 4);
  CHECK(quartet.is_trivalent());

  // A leaf child keeps the degree-two root (the five-edge example shape).
  const Tree fiveedge = parse_tree("((1,2,3),4);");
  CHECK(fiveedge.edge_count() == 5);
  CHECK(fiveedge.inner_count() == 2);
  CHECK(fiveedge.leaf_count() == 4);
  CHECK_FALSE(fiveedge.is_trivalent());

  const Tree fiveleaf = parse_tree("(1,2,(3,4,5));");
  CHECK(fiveleaf.edge_count() == 6);
  CHECK(fiveleaf.inner_count() == 2);
  CHECK(fiveleaf.leaf_count() == 5);
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_tree("(1);"), input_error);
  CHECK_THROWS_AS(parse_tree("(1,2,3)"), input_error);
  CHECK_THROWS_AS(parse_tree("((1,2);"), input_error);
  CHECK_THROWS_AS(parse_tree("(1,1);"), input_error);
  CHECK_THROWS_AS(parse_tree("(1,(2),3);"), input_error);
  CHECK_THROWS_AS(parse_tree(";"), input_error);
  CHECK_THROWS_AS(parse_tree("(1,2);x"), input_error);
  CHECK_THROWS_AS(parse_tree("(1,0);"), input_error);
}

TEST_CASE("builtin trees") {
  const Tree claw4 = builtin_tree("claw", 4);
  CHECK(claw4.edge_count() == 4);
  CHECK(claw4.inner_count() == 1);
  CHECK(claw4.is_center_rooted_claw());

  const Tree snowflake = builtin_tree("snowflake");
  CHECK(snowflake.leaf_count() == 6);
  CHECK(snowflake.edge_count() == 9);
  CHECK(snowflake.inner_count() == 4);
  CHECK(snowflake.is_trivalent());

  const Tree cat3 = builtin_tree("caterpillar", 3);
  CHECK(cat3.leaf_count() == 6);
  CHECK(cat3.edge_count() == 9);
  CHECK(cat3.inner_count() == 4);
  CHECK(cat3.is_trivalent());
  CHECK_FALSE(leaf_labeled_equal(snowflake, cat3));

  CHECK(leaf_labeled_equal(builtin_tree("caterpillar", 1), parse_tree("((1,2),(3,4));")));
  CHECK(leaf_labeled_equal(builtin_tree("tripod"), parse_tree("(1,2,3);")));

  CHECK_THROWS_AS(builtin_tree("claw", 2), input_error);
  CHECK_THROWS_AS(builtin_tree("caterpillar", 0), input_error);
  CHECK_THROWS_AS(builtin_tree("wheel"), input_error);

  CHECK(tree_from_source("builtin:claw4").edge_count() == 4);
  CHECK(tree_from_source("builtin:snowflake").edge_count() == 9);
  CHECK(tree_from_source("(1,2,3);").edge_count() == 3);
}

TEST_CASE("prolongations") {
  CHECK_THROWS_AS(prolongations(3), input_error);

  const auto p4 = prolongations(4);
  REQUIRE(p4.size() == 3);  // (2^4 - 2 - 8)/2
  CHECK(p4[0].first.side_with_first == std::vector<int>{1, 2});
  CHECK(p4[1].first.side_with_first == std::vector<int>{1, 3});
  CHECK(p4[2].first.side_with_first == std::vector<int>{1, 4});

  const auto p5 = prolongations(5);
  CHECK(p5.size() == 10);  // (2^5 - 2 - 10)/2, cross-checked by enumeration
  std::set<std::vector<int>> seen;
  for (const auto& [spec, tree] : p5) {
    CHECK(seen.insert(spec.side_with_first).second);  // pairwise distinct splits
    CHECK(tree.inner_count() == 2);
    CHECK(tree.leaf_count() == 5);
    for (int v : tree.inner_vertices()) CHECK(tree.degree(v) >= 3);
  }

  for (int n : {4, 5, 6}) {
    const auto all = prolongations(n);
    CHECK(static_cast<int>(all.size()) == ((1 << n) - 2 - 2 * n) / 2);
  }
}

TEST_CASE("contraction") {
  // Contracting any prolongation's inner edge returns the base claw.
  for (int n : {4, 5}) {
    for (const auto& [spec, tree] : prolongations(n)) {
      int inner_edge = -1;
      for (int e = 0; e < tree.edge_count(); ++e) {
        if (!tree.is_leaf_edge(e)) inner_edge = e;
      }
      REQUIRE(inner_edge >= 0);
      const Tree contracted = contract_edge(tree, inner_edge);
      CHECK(leaf_labeled_equal(contracted, builtin_tree("claw", n)));
    }
  }

  const Tree quartet = parse_tree("((1,2),(3,4));");
  int inner_edge = -1;
  for (int e = 0; e < quartet.edge_count(); ++e) {
    if (!quartet.is_leaf_edge(e)) inner_edge = e;
  }
  CHECK(leaf_labeled_equal(contract_edge(quartet, inner_edge), builtin_tree("claw", 4)));
  CHECK_THROWS_AS(contract_edge(quartet, 0), input_error);  // leaf edge

  // Snowflake with one center-adjacent edge contracted: a 4-valent vertex.
  const Tree snowflake = builtin_tree("snowflake");
  int center_edge = -1;
  for (int e = 0; e < snowflake.edge_count(); ++e) {
    if (!snowflake.is_leaf_edge(e)) {
      center_edge = e;
      break;
    }
  }
  const Tree merged = contract_edge(snowflake, center_edge);
  CHECK(merged.leaf_count() == 6);
  CHECK(merged.edge_count() == 8);
  int max_degree = 0;
  for (int v = 0; v < merged.vertex_count(); ++v) max_degree = std::max(max_degree, merged.degree(v));
  CHECK(max_degree == 4);
}

TEST_CASE("rerooting") {
  const Tree tripod = builtin_tree("tripod");
  const Tree same = reroot(tripod, tripod.root());
  CHECK(same.to_newick() == tripod.to_newick());

  auto undirected = [](const Tree& t) {
    std::multiset<std::pair<int, int>> s;
    for (const auto& [p, c] : t.edges()) s.insert({std::min(p, c), std::max(p, c)});
    return s;
  };

  const Tree quartet = parse_tree("((1,2),(3,4));");
  const int other_inner = quartet.inner_vertices()[1];
  const Tree re = reroot(quartet, other_inner);
  CHECK(undirected(re) == undirected(quartet));
  CHECK(re.root() == other_inner);

  // Rerooting at a leaf vertex keeps the leaf set as a set of edges.
  int leaf_vertex = -1;
  for (int v = 0; v < quartet.vertex_count(); ++v) {
    if (quartet.degree(v) == 1) leaf_vertex = v;
  }
  const Tree leaf_rooted = reroot(quartet, leaf_vertex);
  CHECK(leaf_rooted.leaf_count() == 4);
  std::multiset<std::pair<int, int>> before, after;
  for (int e : quartet.leaf_edges()) {
    const auto& [p, c] = quartet.edges()[e];
    before.insert({std::min(p, c), std::max(p, c)});
  }
  for (int e : leaf_rooted.leaf_edges()) {
    const auto& [p, c] = leaf_rooted.edges()[e];
    after.insert({std::min(p, c), std::max(p, c)});
  }
  CHECK(before == after);

  CHECK_THROWS_AS(reroot(quartet, 99), input_error);
}

TEST_CASE("serialization round trip is a fixed point") {
  for (const char* text : {"(1,2,3);", "((1,2),(3,4));", "(1,2,(3,4,5));", "((1,2,3),4);",
                           "(1,2,(3,(4,(5,6))));"}) {
    const Tree t = parse_tree(text);
    const std::string once = t.to_newick();
    const std::string twice = parse_tree(once).to_newick();
    CHECK(once == twice);
  }
  // Leaf-rooted trees survive the round trip too.
  const Tree tripod = builtin_tree("tripod");
  const Tree leaf_rooted = reroot(tripod, 1);
  const std::string s = leaf_rooted.to_newick();
  CHECK(parse_tree(s).to_newick() == s);
}
