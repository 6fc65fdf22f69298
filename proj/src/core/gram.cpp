#include "core/gram.hpp"

#include <cassert>
#include <cstring>
#include <stdexcept>

#include "core/rng.hpp"

namespace ccngram::gram {

ContentObject make_content(GroupId group, std::uint64_t counter) {
  ContentObject co;
  std::uint64_t state = 0x6d756c7469ULL ^
                        (static_cast<std::uint64_t>(group) << 32) ^ counter;
  auto bytes = std::make_shared<std::vector<std::uint8_t>>(kContentObjectSize);
  for (std::size_t i = 0; i < kContentObjectSize; i += 8) {
    std::uint64_t word = splitmix64(state);
    std::memcpy(bytes->data() + i, &word, 8);
  }
  for (auto& b : co.sp) {
    b = static_cast<std::uint8_t>(splitmix64(state));
  }
  co.payload = std::move(bytes);
  return co;
}

MartEntry& Router::ensure_entry(GroupId g, TimeUs now) {
  auto& slot = mart_[g];
  if (!slot) {
    slot.emplace();
    slot->last_activity = now;
  }
  return *slot;
}

std::uint64_t Router::counter_or_zero(GroupId g) const {
  const auto& slot = mart_[g];
  return slot ? slot->mc : 0;
}

void Router::reply(EntityId to, GroupId g, ReplyCode code,
                   std::uint64_t counter, Emitter& out) const {
  out.push_back({to, MulticastReply{g, code, counter}});
}

void Router::multicast_round(GroupId g, const ContentObject& co,
                             std::uint64_t counter, Emitter& out) const {
  MulticastDataPacket mp{g, co.sp, counter, co.payload};
  for (EntityId c : gmt_[g]) {
    out.push_back({c, mp});
  }
  for (EntityId h : mart_[g]->next_hops) {
    if (h != id_) {
      out.push_back({h, mp});
    }
  }
}

void Router::process_interest(EntityId requester, bool local,
                              const MulticastInterest& mi, TimeUs now,
                              Emitter& out) {
  const GroupId g = mi.group;
  if (!fib_->has_route(g)) {
    reply(requester, g, ReplyCode::NoRoute, counter_or_zero(g), out);
    return;
  }
  MartEntry& e = ensure_entry(g, now);
  e.last_activity = now;
  if (local) {
    gmt_[g].insert(requester);
    e.next_hops.insert(id_);
  } else {
    e.next_hops.insert(requester);
  }

  if (mi.counter != e.mc + 1) {
    // Stale or ahead of this router: answer with the current round if it is
    // available locally, otherwise nack with the current counter so the
    // consumer resynchronizes.
    if (source_[g] && e.mc >= 1) {
      ContentObject co = make_content(g, e.mc);
      out.push_back({requester,
                     MulticastDataPacket{g, co.sp, e.mc, co.payload}});
    } else if (const ContentObject* co = cache_.find(g, e.mc)) {
      out.push_back({requester,
                     MulticastDataPacket{g, co->sp, e.mc, co->payload}});
    } else {
      reply(requester, g, ReplyCode::InterestError, e.mc, out);
    }
    return;
  }

  e.mc += 1;
  if (source_[g]) {
    ContentObject co = make_content(g, e.mc);
    multicast_round(g, co, e.mc, out);
    return;
  }

  const auto dmin = fib_->min_distance(g);
  if (!dmin) {
    reply(requester, g, ReplyCode::NoRoute, e.mc, out);
    return;
  }
  if (lfr_check(mi.distance, *dmin)) {
    // A round is requested upstream at most once: mc is strictly
    // monotone, so a repeated counter value cannot get here.
    assert(last_upstream_[g] < e.mc);
    last_upstream_[g] = e.mc;
    out.push_back({*fib_->successor(g),
                   MulticastInterest{g, *dmin, e.mc}});
  } else {
    reply(requester, g, ReplyCode::Loop, e.mc, out);
  }
}

void Router::handle_local_interest(EntityId consumer,
                                   const MulticastInterest& mi, TimeUs now,
                                   Emitter& out) {
  assert(!mi.distance);
  process_interest(consumer, true, mi, now, out);
}

void Router::handle_neighbor_interest(EntityId prev_hop,
                                      const MulticastInterest& mi, TimeUs now,
                                      Emitter& out) {
  assert(mi.distance.has_value());
  process_interest(prev_hop, false, mi, now, out);
}

void Router::handle_data_packet(EntityId from, const MulticastDataPacket& mp,
                                TimeUs now, Emitter& out) {
  (void)from;
  (void)now;
  const GroupId g = mp.group;
  auto& slot = mart_[g];
  if (!slot || slot->next_hops.empty()) {
    return; // no forwarding state for the group
  }
  MartEntry& e = *slot;
  if (e.mc < mp.counter) {
    e.mc = mp.counter;
  }
  for (EntityId c : gmt_[g]) {
    out.push_back({c, mp});
  }
  for (EntityId h : e.next_hops) {
    if (h != id_) {
      out.push_back({h, mp});
    }
  }
  cache_.insert(g, mp.counter, ContentObject{mp.sp, mp.payload});
}

void Router::handle_reply(EntityId from, const MulticastReply& mr, TimeUs now,
                          Emitter& out) {
  (void)from;
  (void)now;
  const GroupId g = mr.group;
  if (!mart_[g]) {
    return;
  }
  // Replies reach the local receivers; remote branches resynchronize from
  // the data fan-out and their own first-hop nacks. Relaying replies over
  // the next-hop sets would circulate forever once inconsistent FIBs graft
  // a next-hop cycle, so they stop here.
  for (EntityId c : gmt_[g]) {
    out.push_back({c, mr});
  }
}

void Router::gc(TimeUs now, TimeUs timeout) {
  for (GroupId g = 0; g < static_cast<GroupId>(mart_.size()); ++g) {
    auto& slot = mart_[g];
    if (slot && slot->last_activity < now - timeout) {
      slot.reset();
      gmt_[g].clear();
    }
  }
}

std::size_t Router::mart_size() const {
  std::size_t n = 0;
  for (const auto& slot : mart_) {
    if (slot) {
      ++n;
    }
  }
  return n;
}

const MartEntry* Router::mart_entry(GroupId g) const {
  const auto& slot = mart_[g];
  return slot ? &*slot : nullptr;
}

Consumer::Actions Consumer::schedule_next(TimeUs now) {
  Actions a;
  ++generation_;
  timer_armed_ = true;
  a.schedule_at = now + interval_;
  a.schedule_generation = generation_;
  return a;
}

// A consumer is always either waiting on a request or holding a timer.
// Stale data and stale nacks normally change nothing, but if they find the
// consumer idle (possible only when a router fell behind, e.g. after state
// expiry with caching off) they re-arm the request loop.
Consumer::Actions Consumer::retry_if_idle(TimeUs now) {
  if (inflight_ == 0 && !timer_armed_) {
    return schedule_next(now);
  }
  return {};
}

Consumer::Actions Consumer::on_join(TimeUs now) {
  Actions a;
  last_ = 0;
  inflight_ = 1;
  sent_at_ = now;
  a.send = MulticastInterest{group_, std::nullopt, 1};
  return a;
}

Consumer::Actions Consumer::on_data(const MulticastDataPacket& mp,
                                    TimeUs now) {
  if (stopped_) {
    return {};
  }
  if (mp.counter <= last_) {
    return retry_if_idle(now); // duplicate or stale round
  }
  Actions a = schedule_next(now);
  if (inflight_ != 0 && mp.counter >= inflight_) {
    a.sample = DelaySample{mp.counter, now - sent_at_};
  }
  last_ = mp.counter;
  inflight_ = 0;
  return a;
}

Consumer::Actions Consumer::on_reply(const MulticastReply& mr, TimeUs now) {
  if (stopped_) {
    return {};
  }
  Actions a;
  if (mr.code == ReplyCode::NoRoute) {
    stopped_ = true;
    ++generation_;
    a.failed = true;
    return a;
  }
  // loop / interest-error: adopt the responder's counter and retry after one
  // request interval.
  if (mr.counter < last_) {
    return retry_if_idle(now);
  }
  a = schedule_next(now);
  last_ = mr.counter;
  inflight_ = 0;
  return a;
}

Consumer::Actions Consumer::on_timer(std::uint64_t generation, TimeUs now) {
  if (stopped_ || generation != generation_) {
    return {}; // superseded schedule
  }
  timer_armed_ = false;
  Actions a;
  inflight_ = last_ + 1;
  sent_at_ = now;
  a.send = MulticastInterest{group_, std::nullopt, inflight_};
  return a;
}

} // namespace ccngram::gram
