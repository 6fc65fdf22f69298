#ifndef CCNGRAM_CORE_TOPOLOGY_HPP
#define CCNGRAM_CORE_TOPOLOGY_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "core/messages.hpp"

namespace ccngram {

struct Position {
  double x = 0;
  double y = 0;
};

struct Link {
  int a = 0; // a < b
  int b = 0;
  TimeUs delay = 0;
};

// Undirected connectivity graph. Links exist exactly for node pairs within
// the connectivity radius used at construction time.
struct Topology {
  std::vector<Position> positions;
  std::vector<Link> links; // sorted by (a, b)
  std::vector<std::vector<int>> adjacency; // per node, ascending neighbor ids

  int node_count() const { return static_cast<int>(positions.size()); }
  bool has_link(int a, int b) const;
  TimeUs link_delay(int a, int b) const; // throws if no such link
  bool connected() const;
};

// Applies the radius rule to fixed positions (used by generated and pinned
// topologies alike).
Topology make_topology(const std::vector<Position>& positions,
                       double radius_m, TimeUs link_delay);

// Convenience: n routers on a line with unit spacing well inside the radius,
// so the links form a chain 0-1-...-(n-1).
Topology make_chain(int n, TimeUs link_delay);

// Positions drawn i.i.d. uniform over the square. Returns nullopt when the
// resulting graph is disconnected; the caller decides how to retry.
std::optional<Topology> generate_random_geometric(int n, double side_m,
                                                  double radius_m,
                                                  TimeUs link_delay,
                                                  std::uint64_t seed);

// Retries seed, seed+1, ... until connected; reports the seed that was used.
Topology generate_connected(int n, double side_m, double radius_m,
                            TimeUs link_delay, std::uint64_t seed,
                            int max_retries, std::uint64_t* final_seed);

// Group id -> the single router advertising (originating) that prefix.
using AnchorSet = std::vector<int>;

struct FibNextHop {
  int neighbor = 0;
  std::int32_t distance = 0;
};

// Per-prefix next hops with distances, held in rank order: ascending
// distance, ties broken by ascending neighbor id. An absent prefix means
// "no route"; the anchor's own prefix is present even when it has no
// neighbors so the local-source branch of the forwarding algorithms fires.
class FibTable {
public:
  FibTable() = default;
  explicit FibTable(int prefix_count)
      : entries_(prefix_count), present_(prefix_count, false) {}

  void set_entry(GroupId prefix, std::vector<FibNextHop> ranked);

  bool has_route(GroupId prefix) const {
    return prefix >= 0 && prefix < static_cast<GroupId>(present_.size()) &&
           present_[prefix];
  }
  std::span<const FibNextHop> next_hops(GroupId prefix) const;
  // Minimum distance over the prefix entry; nullopt when absent or empty.
  std::optional<std::int32_t> min_distance(GroupId prefix) const;
  // First neighbor in rank order at the minimum distance.
  std::optional<int> successor(GroupId prefix) const;

private:
  std::vector<std::vector<FibNextHop>> entries_;
  std::vector<bool> present_;
};

// Hop-count shortest paths from every node to each anchor; each node's entry
// for a prefix lists all of its neighbors q with D = 1 + dist(q, anchor).
std::vector<FibTable> compute_fibs(const Topology& topo,
                                   const AnchorSet& anchors);

// BFS hop distances from a start node; -1 for unreachable.
std::vector<int> hop_distances(const Topology& topo, int start);

// Line-oriented text format: "node <id> <x> <y>" then "link <a> <b> <delay_ms>".
std::string topology_to_text(const Topology& topo);
Topology topology_from_text(const std::string& text);

} // namespace ccngram

#endif // CCNGRAM_CORE_TOPOLOGY_HPP
