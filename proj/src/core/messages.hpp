#ifndef CCNGRAM_CORE_MESSAGES_HPP
#define CCNGRAM_CORE_MESSAGES_HPP

#include <array>
#include <cstdint>
#include <cstdio>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace ccngram {

// Virtual time in integer microseconds.
using TimeUs = std::int64_t;

// Routers occupy [0, n); consumer endpoints are assigned ids from n upward.
using EntityId = std::int32_t;

// One multicast group maps to one name prefix; exact matching throughout.
using GroupId = std::int32_t;

inline std::string group_name(GroupId g) { return "g" + std::to_string(g); }

using Payload = std::shared_ptr<const std::vector<std::uint8_t>>;

// Opaque security payload carried in data packets; never validated here.
using SecurityPayload = std::array<std::uint8_t, 32>;

struct ContentObject {
  SecurityPayload sp{};
  Payload payload;
};

enum class ReplyCode : std::uint8_t { Loop, NoRoute, InterestError };

inline const char* reply_code_name(ReplyCode c) {
  switch (c) {
  case ReplyCode::Loop:
    return "loop";
  case ReplyCode::NoRoute:
    return "no-route";
  case ReplyCode::InterestError:
    return "interest-error";
  }
  return "?";
}

// --- CCN-GRAM wire messages ---

struct MulticastInterest {
  GroupId group = 0;
  // Hop distance of the sending router to the group source; empty when the
  // sender is a local consumer (consumers count as infinitely far).
  std::optional<std::int32_t> distance;
  std::uint64_t counter = 0;
};

struct MulticastDataPacket {
  GroupId group = 0;
  SecurityPayload sp{};
  std::uint64_t counter = 0;
  Payload payload;
};

struct MulticastReply {
  GroupId group = 0;
  ReplyCode code = ReplyCode::NoRoute;
  std::uint64_t counter = 0;
};

// --- NDN baseline wire messages ---

struct NdnInterest {
  GroupId group = 0;
  std::uint64_t counter = 0;
};

struct NdnData {
  GroupId group = 0;
  std::uint64_t counter = 0;
  SecurityPayload sp{};
  Payload payload;
};

struct NdnNack {
  GroupId group = 0;
  std::uint64_t counter = 0;
  ReplyCode code = ReplyCode::NoRoute;
};

using Message = std::variant<MulticastInterest, MulticastDataPacket,
                             MulticastReply, NdnInterest, NdnData, NdnNack>;

inline const char* message_type_tag(const Message& m) {
  switch (m.index()) {
  case 0:
    return "MI";
  case 1:
    return "MP";
  case 2:
    return "MR";
  case 3:
    return "NI";
  case 4:
    return "ND";
  case 5:
    return "NN";
  }
  return "??";
}

inline GroupId message_group(const Message& m) {
  return std::visit([](const auto& v) { return v.group; }, m);
}

inline std::uint64_t message_counter(const Message& m) {
  return std::visit([](const auto& v) { return v.counter; }, m);
}

// Milliseconds with microsecond precision, trailing zeros trimmed: 15, 6.25.
inline std::string format_time_ms(TimeUs t) {
  std::string out = std::to_string(t / 1000);
  int frac = static_cast<int>(t % 1000);
  if (frac != 0) {
    char buf[8];
    std::snprintf(buf, sizeof(buf), "%03d", frac);
    std::string digits(buf);
    while (!digits.empty() && digits.back() == '0') {
      digits.pop_back();
    }
    out += "." + digits;
  }
  return out;
}

// One trace line per send/receive event, tab separated:
//   <time_ms> <node> <RX|TX> <type> <group> <counter> <peer> [<code>]
inline void append_trace_line(std::string& log, TimeUs t, EntityId node,
                              bool tx, const Message& m, EntityId peer) {
  log += format_time_ms(t);
  log += '\t';
  log += std::to_string(node);
  log += tx ? "\tTX\t" : "\tRX\t";
  log += message_type_tag(m);
  log += '\t';
  log += group_name(message_group(m));
  log += '\t';
  log += std::to_string(message_counter(m));
  log += '\t';
  log += std::to_string(peer);
  if (const auto* mr = std::get_if<MulticastReply>(&m)) {
    log += '\t';
    log += reply_code_name(mr->code);
  } else if (const auto* nn = std::get_if<NdnNack>(&m)) {
    log += '\t';
    log += reply_code_name(nn->code);
  }
  log += '\n';
}

} // namespace ccngram

#endif // CCNGRAM_CORE_MESSAGES_HPP
