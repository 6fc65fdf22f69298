#ifndef CCNGRAM_CORE_CONTENT_STORE_HPP
#define CCNGRAM_CORE_CONTENT_STORE_HPP

#include <cstdint>
#include <list>
#include <unordered_map>

#include "core/messages.hpp"

namespace ccngram {

// LRU cache of content objects keyed by (group, counter). Capacity 0
// disables caching entirely.
class ContentStore {
public:
  explicit ContentStore(std::size_t capacity = 0) : capacity_(capacity) {}

  std::size_t size() const { return map_.size(); }
  std::size_t capacity() const { return capacity_; }

  // Touches the entry (moves it to most-recently-used) on hit.
  const ContentObject* find(GroupId group, std::uint64_t counter) {
    auto it = map_.find(key(group, counter));
    if (it == map_.end()) {
      return nullptr;
    }
    lru_.splice(lru_.begin(), lru_, it->second.order);
    return &it->second.object;
  }

  void insert(GroupId group, std::uint64_t counter, ContentObject object) {
    if (capacity_ == 0) {
      return;
    }
    const std::uint64_t k = key(group, counter);
    auto it = map_.find(k);
    if (it != map_.end()) {
      it->second.object = std::move(object);
      lru_.splice(lru_.begin(), lru_, it->second.order);
      return;
    }
    if (map_.size() >= capacity_) {
      map_.erase(lru_.back());
      lru_.pop_back();
    }
    lru_.push_front(k);
    map_.emplace(k, Entry{std::move(object), lru_.begin()});
  }

private:
  static std::uint64_t key(GroupId group, std::uint64_t counter) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(group))
            << 40) ^
           counter;
  }

  struct Entry {
    ContentObject object;
    std::list<std::uint64_t>::iterator order;
  };

  std::size_t capacity_;
  std::list<std::uint64_t> lru_; // front = most recent
  std::unordered_map<std::uint64_t, Entry> map_;
};

} // namespace ccngram

#endif // CCNGRAM_CORE_CONTENT_STORE_HPP
