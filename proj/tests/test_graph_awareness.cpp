#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "gnekit/awareness.hpp"
#include "gnekit/graph.hpp"

using gnekit::AwarenessLevel;
using gnekit::AwarenessOrder;
using gnekit::NetworkGraph;

TEST_CASE("awareness levels sort, dedupe, and compare by inclusion") {
  AwarenessLevel a(std::vector<int>{3, 1, 3, 2});
  CHECK(a.members() == std::vector<int>{1, 2, 3});
  CHECK(a.size() == 3);
  CHECK(a.contains(2));
  CHECK(!a.contains(4));
  CHECK(a.max_member() == 3);

  AwarenessLevel b(std::vector<int>{1, 2});
  AwarenessLevel c(std::vector<int>{2, 4});

  CHECK(compare_awareness(b, a) == AwarenessOrder::Less);
  CHECK(compare_awareness(a, b) == AwarenessOrder::Greater);
  CHECK(compare_awareness(a, a) == AwarenessOrder::Equal);
  CHECK(compare_awareness(a, c) == AwarenessOrder::Incomparable);

  CHECK(more_aware(a, b));
  CHECK(!more_aware(b, a));
  CHECK(more_aware(a, a));
  CHECK(!more_aware(a, c));

  AwarenessLevel empty;
  CHECK(empty.empty());
  CHECK(empty.max_member() == 0);
  CHECK(more_aware(a, empty));
  CHECK(compare_awareness(empty, a) == AwarenessOrder::Less);
}

TEST_CASE("union is commutative, associative, and monotone in the order") {
  AwarenessLevel a(std::vector<int>{1, 3});
  AwarenessLevel b(std::vector<int>{2});
  AwarenessLevel c(std::vector<int>{3, 4});

  CHECK(a.unite(b) == b.unite(a));
  CHECK(a.unite(b).unite(c) == a.unite(b.unite(c)));
  CHECK(more_aware(a.unite(b), a));
  CHECK(more_aware(a.unite(b), b));
  CHECK(a.unite(a) == a);

  AwarenessLevel full = AwarenessLevel::full(4);
  CHECK(full.members() == std::vector<int>{1, 2, 3, 4});
  CHECK(full.unite(a) == full);
  CHECK(a.subset_of(full));
}

TEST_CASE("closed neighborhoods contain the node and respect edges") {
  NetworkGraph g(4, {{1, 2}, {2, 3}});

  CHECK(g.node_count() == 4);
  CHECK(g.has_edge(1, 2));
  CHECK(g.has_edge(2, 1));
  CHECK(!g.has_edge(1, 3));

  CHECK(g.neighborhood(1) == std::vector<int>{1, 2});
  CHECK(g.neighborhood(2) == std::vector<int>{1, 2, 3});
  CHECK(g.neighborhood(3) == std::vector<int>{2, 3});
  CHECK(g.neighborhood(4) == std::vector<int>{4});  // isolated node

  CHECK(!g.connected());
  NetworkGraph h = g.with_extra_edges({{3, 4}});
  CHECK(h.connected());
  CHECK(h.neighborhood(4) == std::vector<int>{3, 4});
  // duplicates are ignored
  NetworkGraph dup = g.with_extra_edges({{1, 2}, {2, 1}});
  CHECK(dup.edges().size() == g.edges().size());
}

TEST_CASE("edge normalization rejects self-loops and out-of-range nodes") {
  CHECK_THROWS_AS(NetworkGraph(3, {{1, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(NetworkGraph(3, {{0, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(NetworkGraph(3, {{2, 4}}), std::invalid_argument);
}
