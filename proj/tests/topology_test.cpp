#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "core/rng.hpp"
#include "core/topology.hpp"

using namespace ccngram;

namespace {

// Independent distance oracle: Floyd-Warshall over the adjacency lists.
std::vector<std::vector<int>> all_pairs_hops(const Topology& topo) {
  const int n = topo.node_count();
  const int inf = 1 << 20;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
  for (int i = 0; i < n; ++i) {
    d[i][i] = 0;
    for (int j : topo.adjacency[i]) {
      d[i][j] = 1;
    }
  }
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
      }
    }
  }
  return d;
}

} // namespace

TEST_CASE("pinned three-node line yields exactly the in-radius links") {
  Topology topo = make_topology({{0, 0}, {10, 0}, {20, 0}}, 15.0, 15'000);
  REQUIRE(topo.links.size() == 2);
  CHECK(topo.has_link(0, 1));
  CHECK(topo.has_link(1, 2));
  CHECK_FALSE(topo.has_link(0, 2));
  CHECK(topo.link_delay(0, 1) == 15'000);
}

TEST_CASE("single node has no links and counts as connected") {
  auto topo = generate_random_geometric(1, 100, 15, 15'000, 7);
  REQUIRE(topo.has_value());
  CHECK(topo->links.empty());
  CHECK(topo->connected());
}

TEST_CASE("generator is deterministic and honors the radius rule") {
  auto a = generate_random_geometric(60, 100, 30, 15'000, 42);
  auto b = generate_random_geometric(60, 100, 30, 15'000, 42);
  REQUIRE(a.has_value());
  REQUIRE(b.has_value());
  CHECK(topology_to_text(*a) == topology_to_text(*b));

  const double r2 = 30.0 * 30.0;
  for (int i = 0; i < a->node_count(); ++i) {
    CHECK_FALSE(a->has_link(i, i));
    for (int j = i + 1; j < a->node_count(); ++j) {
      const double dx = a->positions[i].x - a->positions[j].x;
      const double dy = a->positions[i].y - a->positions[j].y;
      CHECK(a->has_link(i, j) == (dx * dx + dy * dy <= r2));
    }
  }
  std::set<std::pair<int, int>> unique_links;
  for (const Link& l : a->links) {
    CHECK(l.a < l.b);
    CHECK(unique_links.insert({l.a, l.b}).second);
  }
}

TEST_CASE("disconnected graphs are reported, retries find a connected seed") {
  auto sparse = generate_random_geometric(2, 100, 0.001, 15'000, 1);
  CHECK_FALSE(sparse.has_value());
  CHECK_THROWS(generate_connected(2, 100, 0.001, 15'000, 1, 3, nullptr));

  std::uint64_t used_seed = 0;
  Topology topo = generate_connected(40, 100, 30, 15'000, 5, 64, &used_seed);
  CHECK(topo.connected());
  CHECK(used_seed >= 5);
}

TEST_CASE("fib distances on the three-node chain match the BFS oracle") {
  // Chain A(0) - B(1) - C(2), anchor at C.
  Topology topo = make_chain(3, 15'000);
  std::vector<FibTable> fibs = compute_fibs(topo, {2});

  auto at_a = fibs[0].next_hops(0);
  REQUIRE(at_a.size() == 1);
  CHECK(at_a[0].neighbor == 1);
  CHECK(at_a[0].distance == 2);

  auto at_b = fibs[1].next_hops(0);
  REQUIRE(at_b.size() == 2);
  CHECK(at_b[0].neighbor == 2); // ranked first: distance 1
  CHECK(at_b[0].distance == 1);
  CHECK(at_b[1].neighbor == 0);
  CHECK(at_b[1].distance == 3);
  CHECK(fibs[1].min_distance(0).value() == 1);
  CHECK(fibs[1].successor(0).value() == 2);

  // The anchor's own prefix is present so the source branch can fire.
  CHECK(fibs[2].has_route(0));
}

TEST_CASE("fib triangle property and ranking on random graphs") {
  for (std::uint64_t seed : {3u, 11u, 29u}) {
    Topology topo = generate_connected(30, 100, 30, 15'000, seed, 16, nullptr);
    auto pairs = all_pairs_hops(topo);
    AnchorSet anchors = {0, 7, 13};
    auto fibs = compute_fibs(topo, anchors);
    for (int i = 0; i < topo.node_count(); ++i) {
      for (GroupId g = 0; g < 3; ++g) {
        auto hops = fibs[i].next_hops(g);
        REQUIRE(!hops.empty());
        // Every neighbor appears, with D(i,p,q) = 1 + dist(q, anchor).
        CHECK(hops.size() == topo.adjacency[i].size());
        for (const FibNextHop& h : hops) {
          CHECK(h.distance == 1 + pairs[h.neighbor][anchors[g]]);
        }
        for (std::size_t k = 1; k < hops.size(); ++k) {
          CHECK(std::pair{hops[k - 1].distance, hops[k - 1].neighbor} <
                std::pair{hops[k].distance, hops[k].neighbor});
        }
        CHECK(fibs[i].min_distance(g).value() == hops.front().distance);
        CHECK(fibs[i].successor(g).value() == hops.front().neighbor);
      }
    }
  }
}

TEST_CASE("min distance handles ties, absent prefixes and empty entries") {
  FibTable fib(2);
  fib.set_entry(0, {{1, 2}, {3, 2}, {4, 4}}); // tie at the minimum
  CHECK(fib.min_distance(0).value() == 2);
  CHECK(fib.successor(0).value() == 1); // first at the minimum
  CHECK_FALSE(fib.has_route(1));
  CHECK_FALSE(fib.min_distance(1).has_value());

  FibTable single(1);
  single.set_entry(0, {{5, 4}});
  CHECK(single.successor(0).value() == 5);

  FibTable empty(1);
  empty.set_entry(0, {});
  CHECK(empty.has_route(0));
  CHECK_FALSE(empty.min_distance(0).has_value());
  CHECK_FALSE(empty.successor(0).has_value());
}

TEST_CASE("exported text matches the committed golden format") {
  Topology topo = make_topology({{0, 0}, {10, 0}, {20, 0}}, 15.0, 15'000);
  std::ifstream in(std::string(GOLDEN_DIR) + "/line3.topo", std::ios::binary);
  REQUIRE(in.good());
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(topology_to_text(topo) == buf.str());
}

TEST_CASE("topology text round-trips") {
  Topology topo = generate_connected(25, 50, 20, 15'000, 9, 16, nullptr);
  std::string text = topology_to_text(topo);
  Topology back = topology_from_text(text);
  CHECK(back.node_count() == topo.node_count());
  REQUIRE(back.links.size() == topo.links.size());
  for (std::size_t i = 0; i < topo.links.size(); ++i) {
    CHECK(back.links[i].a == topo.links[i].a);
    CHECK(back.links[i].b == topo.links[i].b);
    CHECK(back.links[i].delay == topo.links[i].delay);
  }
  CHECK(topology_to_text(back) == text);
}
