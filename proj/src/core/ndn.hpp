#ifndef CCNGRAM_CORE_NDN_HPP
#define CCNGRAM_CORE_NDN_HPP

#include <cstdint>
#include <map>
#include <set>
#include <unordered_map>
#include <vector>

#include "core/content_store.hpp"
#include "core/gram.hpp" // Emission/Emitter and make_content
#include "core/messages.hpp"
#include "core/topology.hpp"

namespace ccngram::ndn {

using gram::Emission;
using gram::Emitter;

struct PitEntry {
  std::set<EntityId> in_faces;
  EntityId out_face = 0;
  TimeUs expiry = 0;
};

// NDN-style forwarding for the multicast comparison: exact-match names
// (group, counter), per-Interest PIT state with aggregation, FIB forwarding
// toward the group source, reverse-path data fan-out and an LRU content
// store.
class Router {
public:
  Router(EntityId id, const FibTable* fib, std::size_t cs_capacity,
         TimeUs interest_lifetime)
      : id_(id), fib_(fib), cs_(cs_capacity), lifetime_(interest_lifetime) {}

  EntityId id() const { return id_; }
  void mark_source(GroupId g) { sources_.insert(g); }
  bool is_source(GroupId g) const { return sources_.count(g) != 0; }

  void on_interest(EntityId face, GroupId group, std::uint64_t counter,
                   TimeUs now, Emitter& out);
  void on_data(EntityId face, const NdnData& data, TimeUs now, Emitter& out);
  // A nack consumes the PIT entry and propagates to the waiting faces.
  void on_nack(EntityId face, const NdnNack& nack, TimeUs now, Emitter& out);

  // Removes entries past their lifetime; consumers retransmit on their own
  // schedule, so no nack is sent.
  void expire(TimeUs now);

  std::size_t pit_size(TimeUs now) const;
  ContentStore& content_store() { return cs_; }

private:
  static std::uint64_t name_key(GroupId g, std::uint64_t counter) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(g)) << 40) ^
           counter;
  }

  EntityId id_;
  const FibTable* fib_;
  ContentStore cs_;
  TimeUs lifetime_;
  std::set<GroupId> sources_;
  std::unordered_map<std::uint64_t, PitEntry> pit_;
};

// Constant-rate requester: Interest k goes out at join_time + (k-1)/rate
// regardless of data arrivals, which is what makes PIT occupancy track the
// rate-delay product. Counters still advance one at a time so both protocols
// request the same names.
class Consumer {
public:
  struct DelaySample {
    std::uint64_t counter = 0;
    TimeUs delay = 0;
  };

  struct Actions {
    std::optional<NdnInterest> send;
    std::optional<TimeUs> schedule_at;
    std::optional<DelaySample> sample;
    bool failed = false;
  };

  Consumer(EntityId id, EntityId router, GroupId group, TimeUs interval)
      : id_(id), router_(router), group_(group), interval_(interval) {}

  EntityId id() const { return id_; }
  EntityId router() const { return router_; }
  GroupId group() const { return group_; }
  bool stopped() const { return stopped_; }
  std::size_t outstanding() const { return sent_.size(); }

  Actions on_join(TimeUs now);
  Actions on_timer(TimeUs now);
  Actions on_data(const NdnData& data, TimeUs now);
  Actions on_nack(const NdnNack& nack, TimeUs now);

private:
  EntityId id_;
  EntityId router_;
  GroupId group_;
  TimeUs interval_;
  std::uint64_t next_counter_ = 1;
  std::map<std::uint64_t, TimeUs> sent_; // counter -> send time
  bool stopped_ = false;
};

} // namespace ccngram::ndn

#endif // CCNGRAM_CORE_NDN_HPP
