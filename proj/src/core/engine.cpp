#include "core/engine.hpp"

#include <algorithm>
#include <cassert>
#include <queue>
#include <stdexcept>
#include <tuple>

#include "core/gram.hpp"
#include "core/ndn.hpp"

namespace ccngram::sim {

namespace {

enum class EventKind : std::uint8_t {
  Join,
  Delivery,
  ConsumerTimer,
  SampleTick,
  GcTick,
};

struct Event {
  TimeUs time = 0;
  std::uint64_t seq = 0;
  EventKind kind = EventKind::Delivery;
  EntityId target = -1;
  EntityId from = -1;
  std::uint64_t generation = 0;
  Message msg;
};

struct LaterEvent {
  bool operator()(const Event& a, const Event& b) const {
    return std::tie(a.time, a.seq) > std::tie(b.time, b.seq);
  }
};

class Engine {
public:
  Engine(const ScenarioConfig& cfg, const Scenario& scn)
      : cfg_(cfg), scn_(scn), gram_mode_(cfg.protocol == "gram"),
        interval_(cfg.request_interval_us()) {
    fibs_ = compute_fibs(scn_.topo, scn_.anchors);
    const int n = scn_.topo.node_count();
    if (gram_mode_) {
      gram_routers_.reserve(n);
      for (int i = 0; i < n; ++i) {
        gram_routers_.emplace_back(i, &fibs_[i], cfg_.groups,
                                   cfg_.cache_capacity);
      }
      for (GroupId g = 0; g < cfg_.groups; ++g) {
        gram_routers_[scn_.anchors[g]].mark_source(g);
      }
      for (const ConsumerSpec& c : scn_.consumers) {
        assert(c.id == n + static_cast<EntityId>(gram_consumers_.size()));
        gram_consumers_.emplace_back(c.id, c.router, c.group, interval_);
      }
    } else {
      ndn_routers_.reserve(n);
      for (int i = 0; i < n; ++i) {
        ndn_routers_.emplace_back(i, &fibs_[i], cfg_.cache_capacity,
                                  cfg_.pit_lifetime_us);
      }
      for (GroupId g = 0; g < cfg_.groups; ++g) {
        ndn_routers_[scn_.anchors[g]].mark_source(g);
      }
      for (const ConsumerSpec& c : scn_.consumers) {
        assert(c.id == n + static_cast<EntityId>(ndn_consumers_.size()));
        ndn_consumers_.emplace_back(c.id, c.router, c.group, interval_);
      }
    }
  }

  RunReport run() {
    report_.config = cfg_;
    report_.topology_seed = scn_.topology_seed;
    report_.topology_text = topology_to_text(scn_.topo);

    for (const ConsumerSpec& c : scn_.consumers) {
      if (c.join_at < cfg_.duration_us) {
        push_plain(c.join_at, EventKind::Join, c.id);
      }
    }
    if (cfg_.sample_period_us <= cfg_.duration_us) {
      push_plain(cfg_.sample_period_us, EventKind::SampleTick, -1);
    }
    if (gram_mode_ && cfg_.gc_period_us <= cfg_.duration_us) {
      push_plain(cfg_.gc_period_us, EventKind::GcTick, -1);
    }

    while (!queue_.empty()) {
      Event e = queue_.top();
      queue_.pop();
      assert(e.time >= now_);
      now_ = e.time;
      dispatch(e);
    }

    finalize();
    return std::move(report_);
  }

private:
  void push(Event e) {
    e.seq = next_seq_++;
    queue_.push(std::move(e));
  }

  void push_plain(TimeUs time, EventKind kind, EntityId target) {
    Event e;
    e.time = time;
    e.kind = kind;
    e.target = target;
    push(std::move(e));
  }

  bool is_consumer(EntityId id) const {
    return id >= scn_.topo.node_count();
  }

  TimeUs wire_delay(EntityId from, EntityId to) const {
    if (is_consumer(from)) {
      const ConsumerSpec& c = scn_.consumers[from - scn_.topo.node_count()];
      if (to != c.router) {
        throw std::logic_error("consumer sending off its access link");
      }
      return cfg_.consumer_link_delay_us;
    }
    if (is_consumer(to)) {
      const ConsumerSpec& c = scn_.consumers[to - scn_.topo.node_count()];
      if (from != c.router) {
        throw std::logic_error("router sending to a non-attached consumer");
      }
      return cfg_.consumer_link_delay_us;
    }
    return scn_.topo.link_delay(from, to);
  }

  void send(EntityId from, EntityId to, const Message& msg) {
    ++report_.tx_counts[message_type_tag(msg)];
    if (cfg_.trace) {
      append_trace_line(report_.trace, now_, from, true, msg, to);
    }
    Event e;
    e.time = now_ + wire_delay(from, to);
    e.kind = EventKind::Delivery;
    e.target = to;
    e.from = from;
    e.msg = msg;
    push(std::move(e));
  }

  void flush_emissions(EntityId sender) {
    for (const auto& em : scratch_) {
      send(sender, em.to, em.msg);
    }
    scratch_.clear();
  }

  void apply_gram_actions(gram::Consumer& c, const gram::Consumer::Actions& a) {
    if (a.send) {
      send(c.id(), c.router(), *a.send);
    }
    if (a.schedule_at && *a.schedule_at < cfg_.duration_us) {
      Event e;
      e.time = *a.schedule_at;
      e.kind = EventKind::ConsumerTimer;
      e.target = c.id();
      e.generation = a.schedule_generation;
      push(std::move(e));
    }
    if (a.sample) {
      report_.delays.push_back(
          {c.group(), c.id(), a.sample->counter, a.sample->delay, now_});
    }
    if (a.failed) {
      ++report_.consumer_failures;
    }
  }

  void apply_ndn_actions(ndn::Consumer& c, const ndn::Consumer::Actions& a) {
    if (a.send) {
      send(c.id(), c.router(), Message{*a.send});
    }
    if (a.schedule_at && *a.schedule_at < cfg_.duration_us) {
      Event e;
      e.time = *a.schedule_at;
      e.kind = EventKind::ConsumerTimer;
      e.target = c.id();
      push(std::move(e));
    }
    if (a.sample) {
      report_.delays.push_back(
          {c.group(), c.id(), a.sample->counter, a.sample->delay, now_});
    }
    if (a.failed) {
      ++report_.consumer_failures;
    }
  }

  void dispatch(const Event& e) {
    switch (e.kind) {
    case EventKind::Join: {
      const int idx = e.target - scn_.topo.node_count();
      if (gram_mode_) {
        apply_gram_actions(gram_consumers_[idx],
                           gram_consumers_[idx].on_join(now_));
      } else {
        apply_ndn_actions(ndn_consumers_[idx],
                          ndn_consumers_[idx].on_join(now_));
      }
      break;
    }
    case EventKind::ConsumerTimer: {
      const int idx = e.target - scn_.topo.node_count();
      if (gram_mode_) {
        apply_gram_actions(gram_consumers_[idx],
                           gram_consumers_[idx].on_timer(e.generation, now_));
      } else {
        apply_ndn_actions(ndn_consumers_[idx],
                          ndn_consumers_[idx].on_timer(now_));
      }
      break;
    }
    case EventKind::Delivery:
      if (cfg_.trace) {
        append_trace_line(report_.trace, now_, e.target, false, e.msg, e.from);
      }
      deliver(e);
      break;
    case EventKind::SampleTick:
      sample_tables();
      if (now_ + cfg_.sample_period_us <= cfg_.duration_us) {
        push_plain(now_ + cfg_.sample_period_us, EventKind::SampleTick, -1);
      }
      break;
    case EventKind::GcTick:
      for (auto& r : gram_routers_) {
        r.gc(now_, cfg_.mart_timeout_us);
      }
      if (now_ + cfg_.gc_period_us <= cfg_.duration_us) {
        push_plain(now_ + cfg_.gc_period_us, EventKind::GcTick, -1);
      }
      break;
    }
  }

  void deliver(const Event& e) {
    if (!is_consumer(e.target)) {
      if (gram_mode_) {
        gram::Router& r = gram_routers_[e.target];
        if (const auto* mi = std::get_if<MulticastInterest>(&e.msg)) {
          if (is_consumer(e.from)) {
            r.handle_local_interest(e.from, *mi, now_, scratch_);
          } else {
            r.handle_neighbor_interest(e.from, *mi, now_, scratch_);
          }
        } else if (const auto* mp =
                       std::get_if<MulticastDataPacket>(&e.msg)) {
          r.handle_data_packet(e.from, *mp, now_, scratch_);
        } else if (const auto* mr = std::get_if<MulticastReply>(&e.msg)) {
          r.handle_reply(e.from, *mr, now_, scratch_);
        } else {
          throw std::logic_error("ndn message delivered to gram router");
        }
      } else {
        ndn::Router& r = ndn_routers_[e.target];
        if (const auto* ni = std::get_if<NdnInterest>(&e.msg)) {
          r.on_interest(e.from, ni->group, ni->counter, now_, scratch_);
        } else if (const auto* nd = std::get_if<NdnData>(&e.msg)) {
          r.on_data(e.from, *nd, now_, scratch_);
        } else if (const auto* nn = std::get_if<NdnNack>(&e.msg)) {
          r.on_nack(e.from, *nn, now_, scratch_);
        } else {
          throw std::logic_error("gram message delivered to ndn router");
        }
      }
      flush_emissions(e.target);
      return;
    }

    const int idx = e.target - scn_.topo.node_count();
    if (gram_mode_) {
      gram::Consumer& c = gram_consumers_[idx];
      if (const auto* mp = std::get_if<MulticastDataPacket>(&e.msg)) {
        apply_gram_actions(c, c.on_data(*mp, now_));
      } else if (const auto* mr = std::get_if<MulticastReply>(&e.msg)) {
        apply_gram_actions(c, c.on_reply(*mr, now_));
      } else {
        throw std::logic_error("unexpected message at gram consumer");
      }
    } else {
      ndn::Consumer& c = ndn_consumers_[idx];
      if (const auto* nd = std::get_if<NdnData>(&e.msg)) {
        apply_ndn_actions(c, c.on_data(*nd, now_));
      } else if (const auto* nn = std::get_if<NdnNack>(&e.msg)) {
        apply_ndn_actions(c, c.on_nack(*nn, now_));
      } else {
        throw std::logic_error("unexpected message at ndn consumer");
      }
    }
  }

  void sample_tables() {
    const int n = scn_.topo.node_count();
    for (int i = 0; i < n; ++i) {
      std::uint32_t entries;
      if (gram_mode_) {
        entries = static_cast<std::uint32_t>(gram_routers_[i].mart_size());
      } else {
        ndn_routers_[i].expire(now_);
        entries = static_cast<std::uint32_t>(ndn_routers_[i].pit_size(now_));
      }
      report_.table_samples.push_back({now_, i, entries});
    }
  }

  // The run has quiesced: record final forwarding state and check that
  // every router on each group's active tree agrees with the source's
  // multicast counter.
  void finalize() {
    if (!gram_mode_) {
      return;
    }
    const int n = scn_.topo.node_count();
    for (int i = 0; i < n; ++i) {
      for (GroupId g = 0; g < cfg_.groups; ++g) {
        const gram::MartEntry* e = gram_routers_[i].mart_entry(g);
        if (!e) {
          continue;
        }
        MartRecord rec;
        rec.node = i;
        rec.group = g;
        rec.mc = e->mc;
        rec.next_hops.assign(e->next_hops.begin(), e->next_hops.end());
        const auto& gmt = gram_routers_[i].local_receivers(g);
        rec.receivers.assign(gmt.begin(), gmt.end());
        report_.final_mart.push_back(std::move(rec));
      }
    }
    report_.source_counters.assign(cfg_.groups, 0);
    for (GroupId g = 0; g < cfg_.groups; ++g) {
      const int anchor = scn_.anchors[g];
      const gram::MartEntry* src = gram_routers_[anchor].mart_entry(g);
      if (!src) {
        continue;
      }
      report_.source_counters[g] = src->mc;
      std::vector<int> stack{anchor};
      std::vector<bool> seen(n, false);
      seen[anchor] = true;
      while (!stack.empty()) {
        const int r = stack.back();
        stack.pop_back();
        const gram::MartEntry* e = gram_routers_[r].mart_entry(g);
        if (!e) {
          continue;
        }
        if (e->mc != src->mc) {
          throw std::runtime_error(
              "counter desynchronized at quiescence: node " +
              std::to_string(r) + " group " + group_name(g) + " holds " +
              std::to_string(e->mc) + ", source holds " +
              std::to_string(src->mc));
        }
        for (EntityId h : e->next_hops) {
          if (h != r && !is_consumer(h) && !seen[h]) {
            seen[h] = true;
            stack.push_back(h);
          }
        }
      }
    }
  }

  const ScenarioConfig& cfg_;
  const Scenario& scn_;
  bool gram_mode_;
  TimeUs interval_;
  std::vector<FibTable> fibs_;
  std::vector<gram::Router> gram_routers_;
  std::vector<gram::Consumer> gram_consumers_;
  std::vector<ndn::Router> ndn_routers_;
  std::vector<ndn::Consumer> ndn_consumers_;
  std::priority_queue<Event, std::vector<Event>, LaterEvent> queue_;
  std::uint64_t next_seq_ = 0;
  TimeUs now_ = 0;
  gram::Emitter scratch_;
  RunReport report_;
};

} // namespace

RunReport run_with_scenario(const ScenarioConfig& cfg, const Scenario& scn) {
  cfg.validate();
  Engine engine(cfg, scn);
  return engine.run();
}

RunReport run_scenario(const ScenarioConfig& cfg) {
  Scenario scn = build_scenario(cfg);
  return run_with_scenario(cfg, scn);
}

} // namespace ccngram::sim
