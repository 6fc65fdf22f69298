#include "core/topology.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <sstream>
#include <stdexcept>

#include "core/rng.hpp"

namespace ccngram {

bool Topology::has_link(int a, int b) const {
  if (a < 0 || a >= node_count()) {
    return false;
  }
  return std::binary_search(adjacency[a].begin(), adjacency[a].end(), b);
}

TimeUs Topology::link_delay(int a, int b) const {
  if (a > b) {
    std::swap(a, b);
  }
  auto it = std::lower_bound(links.begin(), links.end(), std::pair{a, b},
                             [](const Link& l, const std::pair<int, int>& k) {
                               return std::pair{l.a, l.b} < k;
                             });
  if (it == links.end() || it->a != a || it->b != b) {
    throw std::invalid_argument("no link between nodes " + std::to_string(a) +
                                " and " + std::to_string(b));
  }
  return it->delay;
}

bool Topology::connected() const {
  if (node_count() == 0) {
    return false;
  }
  std::vector<int> dist = hop_distances(*this, 0);
  return std::none_of(dist.begin(), dist.end(),
                      [](int d) { return d < 0; });
}

Topology make_topology(const std::vector<Position>& positions,
                       double radius_m, TimeUs link_delay) {
  Topology topo;
  topo.positions = positions;
  const int n = topo.node_count();
  topo.adjacency.assign(n, {});
  const double r2 = radius_m * radius_m;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      const double dx = positions[a].x - positions[b].x;
      const double dy = positions[a].y - positions[b].y;
      if (dx * dx + dy * dy <= r2) {
        topo.links.push_back({a, b, link_delay});
        topo.adjacency[a].push_back(b);
        topo.adjacency[b].push_back(a);
      }
    }
  }
  return topo;
}

Topology make_chain(int n, TimeUs link_delay) {
  std::vector<Position> pos(n);
  for (int i = 0; i < n; ++i) {
    pos[i] = {static_cast<double>(i), 0.0};
  }
  return make_topology(pos, 1.5, link_delay);
}

std::optional<Topology> generate_random_geometric(int n, double side_m,
                                                  double radius_m,
                                                  TimeUs link_delay,
                                                  std::uint64_t seed) {
  if (n < 1 || side_m <= 0 || radius_m <= 0) {
    throw std::invalid_argument("bad topology parameters");
  }
  Rng rng(seed);
  std::vector<Position> pos(n);
  for (int i = 0; i < n; ++i) {
    pos[i].x = rng.next_double() * side_m;
    pos[i].y = rng.next_double() * side_m;
  }
  Topology topo = make_topology(pos, radius_m, link_delay);
  if (!topo.connected()) {
    return std::nullopt;
  }
  return topo;
}

Topology generate_connected(int n, double side_m, double radius_m,
                            TimeUs link_delay, std::uint64_t seed,
                            int max_retries, std::uint64_t* final_seed) {
  for (int attempt = 0; attempt <= max_retries; ++attempt) {
    std::uint64_t s = seed + static_cast<std::uint64_t>(attempt);
    auto topo = generate_random_geometric(n, side_m, radius_m, link_delay, s);
    if (topo) {
      if (final_seed) {
        *final_seed = s;
      }
      return std::move(*topo);
    }
  }
  throw std::runtime_error("no connected topology within " +
                           std::to_string(max_retries + 1) + " attempts from seed " +
                           std::to_string(seed));
}

void FibTable::set_entry(GroupId prefix, std::vector<FibNextHop> ranked) {
  entries_.at(prefix) = std::move(ranked);
  present_.at(prefix) = true;
}

std::span<const FibNextHop> FibTable::next_hops(GroupId prefix) const {
  if (!has_route(prefix)) {
    return {};
  }
  return entries_[prefix];
}

std::optional<std::int32_t> FibTable::min_distance(GroupId prefix) const {
  auto hops = next_hops(prefix);
  if (hops.empty()) {
    return std::nullopt;
  }
  return hops.front().distance; // rank order puts a minimum first
}

std::optional<int> FibTable::successor(GroupId prefix) const {
  auto hops = next_hops(prefix);
  if (hops.empty()) {
    return std::nullopt;
  }
  return hops.front().neighbor;
}

std::vector<int> hop_distances(const Topology& topo, int start) {
  std::vector<int> dist(topo.node_count(), -1);
  std::deque<int> queue;
  dist[start] = 0;
  queue.push_back(start);
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (int v : topo.adjacency[u]) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

std::vector<FibTable> compute_fibs(const Topology& topo,
                                   const AnchorSet& anchors) {
  const int n = topo.node_count();
  const auto prefix_count = static_cast<GroupId>(anchors.size());
  std::vector<FibTable> fibs(n, FibTable(prefix_count));

  // Groups may share an anchor router; one BFS per distinct anchor.
  std::vector<std::vector<int>> dist_cache(n);
  for (GroupId g = 0; g < prefix_count; ++g) {
    const int anchor = anchors[g];
    if (anchor < 0 || anchor >= n) {
      throw std::invalid_argument("anchor id out of range");
    }
    if (dist_cache[anchor].empty()) {
      dist_cache[anchor] = hop_distances(topo, anchor);
    }
    const auto& dist = dist_cache[anchor];
    for (int i = 0; i < n; ++i) {
      std::vector<FibNextHop> ranked;
      for (int q : topo.adjacency[i]) {
        if (dist[q] >= 0) {
          ranked.push_back({q, dist[q] + 1});
        }
      }
      if (ranked.empty() && i != anchor) {
        continue; // unreachable anchor: no route at this node
      }
      std::sort(ranked.begin(), ranked.end(),
                [](const FibNextHop& a, const FibNextHop& b) {
                  return std::pair{a.distance, a.neighbor} <
                         std::pair{b.distance, b.neighbor};
                });
      fibs[i].set_entry(g, std::move(ranked));
    }
  }
  return fibs;
}

std::string topology_to_text(const Topology& topo) {
  std::string out;
  char buf[96];
  for (int i = 0; i < topo.node_count(); ++i) {
    std::snprintf(buf, sizeof(buf), "node %d %.6f %.6f\n", i,
                  topo.positions[i].x, topo.positions[i].y);
    out += buf;
  }
  for (const Link& l : topo.links) {
    std::snprintf(buf, sizeof(buf), "link %d %d %s\n", l.a, l.b,
                  format_time_ms(l.delay).c_str());
    out += buf;
  }
  return out;
}

Topology topology_from_text(const std::string& text) {
  Topology topo;
  std::istringstream in(text);
  std::string kind;
  while (in >> kind) {
    if (kind == "node") {
      int id;
      double x, y;
      if (!(in >> id >> x >> y)) {
        throw std::runtime_error("malformed node line");
      }
      if (id != topo.node_count()) {
        throw std::runtime_error("node ids must be dense and in order");
      }
      topo.positions.push_back({x, y});
    } else if (kind == "link") {
      int a, b;
      double delay_ms;
      if (!(in >> a >> b >> delay_ms)) {
        throw std::runtime_error("malformed link line");
      }
      if (a > b) {
        std::swap(a, b);
      }
      topo.links.push_back(
          {a, b, static_cast<TimeUs>(delay_ms * 1000.0 + 0.5)});
    } else {
      throw std::runtime_error("unknown topology line kind: " + kind);
    }
  }
  std::sort(topo.links.begin(), topo.links.end(), [](const Link& x, const Link& y) {
    return std::pair{x.a, x.b} < std::pair{y.a, y.b};
  });
  topo.adjacency.assign(topo.node_count(), {});
  for (const Link& l : topo.links) {
    if (l.a == l.b || l.b >= topo.node_count() || l.a < 0) {
      throw std::runtime_error("bad link endpoints");
    }
    topo.adjacency[l.a].push_back(l.b);
    topo.adjacency[l.b].push_back(l.a);
  }
  for (auto& adj : topo.adjacency) {
    std::sort(adj.begin(), adj.end());
  }
  return topo;
}

} // namespace ccngram
