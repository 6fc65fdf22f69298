#include "core/ndn.hpp"

namespace ccngram::ndn {

void Router::on_interest(EntityId face, GroupId group, std::uint64_t counter,
                         TimeUs now, Emitter& out) {
  if (is_source(group)) {
    // The producer holds every content object of its prefix.
    ContentObject co = gram::make_content(group, counter);
    out.push_back({face, NdnData{group, counter, co.sp, co.payload}});
    return;
  }
  if (const ContentObject* co = cs_.find(group, counter)) {
    out.push_back({face, NdnData{group, counter, co->sp, co->payload}});
    return;
  }
  const std::uint64_t key = name_key(group, counter);
  auto it = pit_.find(key);
  if (it != pit_.end()) {
    if (it->second.expiry > now) {
      it->second.in_faces.insert(face); // aggregation: nothing forwarded
      return;
    }
    pit_.erase(it); // expired leftover; treat as a fresh Interest
  }
  const auto next = fib_->successor(group);
  if (!next) {
    out.push_back({face, NdnNack{group, counter, ReplyCode::NoRoute}});
    return;
  }
  PitEntry entry;
  entry.in_faces.insert(face);
  entry.out_face = *next;
  entry.expiry = now + lifetime_;
  pit_.emplace(key, std::move(entry));
  out.push_back({*next, NdnInterest{group, counter}});
}

void Router::on_data(EntityId face, const NdnData& data, TimeUs now,
                     Emitter& out) {
  (void)face;
  const std::uint64_t key = name_key(data.group, data.counter);
  auto it = pit_.find(key);
  if (it == pit_.end() || it->second.expiry <= now) {
    if (it != pit_.end()) {
      pit_.erase(it);
    }
    return; // unsolicited data
  }
  for (EntityId f : it->second.in_faces) {
    out.push_back({f, data});
  }
  pit_.erase(it);
  cs_.insert(data.group, data.counter, ContentObject{data.sp, data.payload});
}

void Router::on_nack(EntityId face, const NdnNack& nack, TimeUs now,
                     Emitter& out) {
  (void)face;
  (void)now;
  auto it = pit_.find(name_key(nack.group, nack.counter));
  if (it == pit_.end()) {
    return;
  }
  for (EntityId f : it->second.in_faces) {
    out.push_back({f, nack});
  }
  pit_.erase(it);
}

void Router::expire(TimeUs now) {
  for (auto it = pit_.begin(); it != pit_.end();) {
    if (it->second.expiry <= now) {
      it = pit_.erase(it);
    } else {
      ++it;
    }
  }
}

std::size_t Router::pit_size(TimeUs now) const {
  std::size_t n = 0;
  for (const auto& [key, entry] : pit_) {
    (void)key;
    if (entry.expiry > now) {
      ++n;
    }
  }
  return n;
}

Consumer::Actions Consumer::on_join(TimeUs now) {
  Actions a;
  a.send = NdnInterest{group_, next_counter_};
  sent_.emplace(next_counter_, now);
  ++next_counter_;
  a.schedule_at = now + interval_;
  return a;
}

Consumer::Actions Consumer::on_timer(TimeUs now) {
  if (stopped_) {
    return {};
  }
  Actions a;
  a.send = NdnInterest{group_, next_counter_};
  sent_.emplace(next_counter_, now);
  ++next_counter_;
  a.schedule_at = now + interval_;
  return a;
}

Consumer::Actions Consumer::on_data(const NdnData& data, TimeUs now) {
  Actions a;
  auto it = sent_.find(data.counter);
  if (it != sent_.end()) {
    a.sample = DelaySample{data.counter, now - it->second};
    sent_.erase(it);
  }
  return a;
}

Consumer::Actions Consumer::on_nack(const NdnNack& nack, TimeUs now) {
  (void)now;
  Actions a;
  sent_.erase(nack.counter);
  if (nack.code == ReplyCode::NoRoute) {
    stopped_ = true;
    a.failed = true;
  }
  return a;
}

} // namespace ccngram::ndn
