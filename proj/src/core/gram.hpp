#ifndef CCNGRAM_CORE_GRAM_HPP
#define CCNGRAM_CORE_GRAM_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "core/content_store.hpp"
#include "core/messages.hpp"
#include "core/topology.hpp"

namespace ccngram::gram {

// Deterministic synthetic content object for (group, counter): a fixed
// 4096-byte payload plus a placeholder digest standing in for sp(j).
ContentObject make_content(GroupId group, std::uint64_t counter);
constexpr std::size_t kContentObjectSize = 4096;

// Loop-Free Forwarding Rule: accept an Interest whose sender reports a
// strictly larger distance than our best next hop; a missing sender distance
// denotes a local consumer (infinitely far).
inline bool lfr_check(std::optional<std::int32_t> sender_distance,
                      std::int32_t own_min_distance) {
  return !sender_distance || *sender_distance > own_min_distance;
}

struct Emission {
  EntityId to = 0;
  Message msg;
};
using Emitter = std::vector<Emission>;

struct MartEntry {
  std::uint64_t mc = 0;
  std::set<EntityId> next_hops; // may include the router itself
  TimeUs last_activity = 0;
};

// Per-router CCN-GRAM state machine: MART + GMT + optional cache, driven by
// local-consumer Interests, neighbor Interests, data packets and replies.
// Handlers are pure with respect to (state, event, now): all side effects are
// the state mutation and the emitted messages.
class Router {
public:
  Router(EntityId id, const FibTable* fib, int group_count,
         std::size_t cache_capacity)
      : id_(id), fib_(fib), mart_(group_count), gmt_(group_count),
        source_(group_count, false), last_upstream_(group_count, 0),
        cache_(cache_capacity) {}

  EntityId id() const { return id_; }
  void mark_source(GroupId g) { source_[g] = true; }
  bool is_source(GroupId g) const { return source_[g]; }

  void handle_local_interest(EntityId consumer, const MulticastInterest& mi,
                             TimeUs now, Emitter& out);
  void handle_neighbor_interest(EntityId prev_hop, const MulticastInterest& mi,
                                TimeUs now, Emitter& out);
  void handle_data_packet(EntityId from, const MulticastDataPacket& mp,
                          TimeUs now, Emitter& out);
  // Replies from upstream are handed to the local receivers of the group.
  void handle_reply(EntityId from, const MulticastReply& mr, TimeUs now,
                    Emitter& out);

  // Drops MART (and GMT) entries with no Interest activity since
  // now - timeout.
  void gc(TimeUs now, TimeUs timeout);

  std::size_t mart_size() const;
  const MartEntry* mart_entry(GroupId g) const;
  const std::set<EntityId>& local_receivers(GroupId g) const { return gmt_[g]; }
  ContentStore& cache() { return cache_; }

private:
  MartEntry& ensure_entry(GroupId g, TimeUs now);
  std::uint64_t counter_or_zero(GroupId g) const;
  void reply(EntityId to, GroupId g, ReplyCode code, std::uint64_t counter,
             Emitter& out) const;
  void multicast_round(GroupId g, const ContentObject& co,
                       std::uint64_t counter, Emitter& out) const;
  // Shared tail of Algorithms 1 and 2: counter bookkeeping, the source
  // branch, and upstream forwarding. A sender distance gates forwarding by
  // the LFR; local consumers pass unconditionally.
  void process_interest(EntityId requester, bool local,
                        const MulticastInterest& mi, TimeUs now, Emitter& out);

  EntityId id_;
  const FibTable* fib_;
  std::vector<std::optional<MartEntry>> mart_;
  std::vector<std::set<EntityId>> gmt_;
  std::vector<bool> source_;
  std::vector<std::uint64_t> last_upstream_; // pacing assertion only
  ContentStore cache_;
};

// Consumer endpoint: joins with counter 1, then requests round m+1 one
// request interval after round m is resolved by a data packet or a
// resynchronizing reply. At most one request is outstanding or scheduled at
// any time; stale timers are invalidated by a generation counter.
class Consumer {
public:
  struct DelaySample {
    std::uint64_t counter = 0;
    TimeUs delay = 0;
  };

  struct Actions {
    std::optional<MulticastInterest> send;    // emit to the attached router now
    std::optional<TimeUs> schedule_at;        // ask engine for a timer
    std::uint64_t schedule_generation = 0;
    std::optional<DelaySample> sample;
    bool failed = false; // no-route: consumer stops
  };

  Consumer(EntityId id, EntityId router, GroupId group, TimeUs interval)
      : id_(id), router_(router), group_(group), interval_(interval) {}

  EntityId id() const { return id_; }
  EntityId router() const { return router_; }
  GroupId group() const { return group_; }
  bool stopped() const { return stopped_; }
  std::uint64_t last_counter() const { return last_; }

  Actions on_join(TimeUs now);
  Actions on_data(const MulticastDataPacket& mp, TimeUs now);
  Actions on_reply(const MulticastReply& mr, TimeUs now);
  Actions on_timer(std::uint64_t generation, TimeUs now);

private:
  Actions schedule_next(TimeUs now);
  Actions retry_if_idle(TimeUs now);

  EntityId id_;
  EntityId router_;
  GroupId group_;
  TimeUs interval_;
  std::uint64_t last_ = 0;     // highest content round seen/synced
  std::uint64_t inflight_ = 0; // counter of the unanswered Interest, 0 = none
  TimeUs sent_at_ = 0;
  std::uint64_t generation_ = 0; // invalidates superseded timers
  bool timer_armed_ = false;
  bool stopped_ = false;
};

} // namespace ccngram::gram

#endif // CCNGRAM_CORE_GRAM_HPP
